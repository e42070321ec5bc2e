//! Exhaustive reference solvers for small graphs.

use crate::error::SolveError;
use crate::graph::Graph;

pub const ORACLE_SUBSET_LIMIT: usize = 20;
pub const ORACLE_COLOR_LIMIT: usize = 18;

fn guard(g: &Graph, limit: usize) -> Result<(), SolveError> {
    if g.n() > limit {
        return Err(SolveError::TooLarge { n: g.n(), limit });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u32> {
    (1..=g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << (w - 1)))
        .collect()
}

/// Smallest `k` such that some `k`-subset satisfies `ok`, subsets in Gosper order.
fn smallest_subset<F: Fn(u32) -> bool>(n: usize, ok: F) -> u32 {
    if n == 0 {
        return 0;
    }
    let limit = 1u64 << n;
    for k in 0..=n as u32 {
        if k == 0 {
            if ok(0) {
                return 0;
            }
            continue;
        }
        let mut s: u64 = (1 << k) - 1;
        while s < limit {
            if ok(s as u32) {
                return k;
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    n as u32
}

/// Domination number by enumerating subsets in increasing size.
pub fn oracle_domset(g: &Graph) -> Result<u32, SolveError> {
    guard(g, ORACLE_SUBSET_LIMIT)?;
    let n = g.n();
    let closed: Vec<u32> = masks(g)
        .iter()
        .enumerate()
        .map(|(i, m)| m | 1 << i)
        .collect();
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(smallest_subset(n, |s| {
        let mut cov = 0;
        let mut bits = s;
        while bits != 0 {
            cov |= closed[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        cov == all
    }))
}

/// Vertex cover number by enumerating subsets in increasing size.
pub fn oracle_vc(g: &Graph) -> Result<u32, SolveError> {
    guard(g, ORACLE_SUBSET_LIMIT)?;
    let adj = masks(g);
    Ok(smallest_subset(g.n(), |s| {
        adj.iter()
            .enumerate()
            .all(|(i, &m)| s >> i & 1 == 1 || m & !s == 0)
    }))
}

/// 3-colourability by backtracking in vertex order.
pub fn oracle_3col(g: &Graph) -> Result<bool, SolveError> {
    guard(g, ORACLE_COLOR_LIMIT)?;
    fn go(g: &Graph, v: usize, colors: &mut [u8]) -> bool {
        if v > g.n() {
            return true;
        }
        for c in 1..=3u8 {
            if g.neighbors(v).iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if go(g, v + 1, colors) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    let mut colors = vec![0u8; g.n() + 1];
    Ok(go(g, 1, &mut colors))
}
