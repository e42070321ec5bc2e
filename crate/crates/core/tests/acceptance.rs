//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use tdsolve_core::gadgets::{
    coloring_family, coloring_family_instance, ds_family, ds_family_instance, vc_family,
    vc_family_instance,
};
use tdsolve_core::generate::{
    clique_chain, planted, random_connected, random_monotone_table, random_tree_like,
    random_universe, rng,
};
use tdsolve_core::stats::Answer;
use tdsolve_core::table::{convolve_fast, convolve_naive};
use tdsolve_core::*;

const C1_GRAPHS: usize = 500;
const C1_MAX_N: usize = 18;
const C1_LIMIT: Duration = Duration::from_secs(120);
const C2_GRAPHS: usize = 100;
const C2_MAX_N: usize = 60;
const C2_MAX_DEPTH: usize = 16;
const C2_LIMIT: Duration = Duration::from_secs(600);
const C3_LIMIT: Duration = Duration::from_secs(60);
const C4_LIMIT: Duration = Duration::from_secs(300);
const C5_LIMIT: Duration = Duration::from_secs(600);
const C8_PAIRS: usize = 1000;
const C8_MAX_UNIVERSE: u32 = 12;
const C8_LIMIT: Duration = Duration::from_secs(60);
const C9_T: std::ops::RangeInclusive<usize> = 6..=14;
const C9_CLASSIC_MIN_SLOPE: f64 = 1.45;
const C9_HYBRID_MAX_SLOPE: f64 = 1.15;
const C9_LIMIT: Duration = Duration::from_secs(300);
const C10_N: usize = 10_000;
const C10_DEPTH: usize = 14;
const C10_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Audits gathered from solves that later criteria inspect.
#[derive(Default)]
struct Audits {
    hybrid: BoundAudit,
    hybrid_solves: usize,
    hybrid_depth_excess: usize,
    branch: BoundAudit,
    branch_solves: usize,
}

impl Audits {
    fn hybrid(&mut self, r: &SolveReport, depth: usize) {
        self.hybrid.merge(&r.audit);
        self.hybrid_solves += 1;
        if r.stats.peak_recursion_depth as usize > depth + 1 {
            self.hybrid_depth_excess += 1;
        }
    }

    fn branch(&mut self, r: &SolveReport) {
        self.branch.merge(&r.audit);
        self.branch_solves += 1;
    }
}

fn four_solvers(g: &Graph, t: &TreedepthDecomposition, audits: &mut Audits) -> [u32; 4] {
    let b = solve_branch_report(g, t).unwrap();
    let hn = solve_hybrid_report(g, t, ConvMode::Naive).unwrap();
    let hf = solve_hybrid_report(g, t, ConvMode::Fast).unwrap();
    let c = domset_classic_dp(g, t).unwrap();
    audits.branch(&b);
    audits.hybrid(&hn, t.depth());
    audits.hybrid(&hf, t.depth());
    [b.size(), hn.size(), hf.size(), c]
}

fn c1(audits: &mut Audits) -> Outcome {
    let start = Instant::now();
    let mut r = rng(0xC1);
    let mut bad = Vec::new();
    for i in 0..C1_GRAPHS {
        let n = r.gen_range(1..=C1_MAX_N);
        let p = r.gen_range(0.0..0.5);
        let g = random_connected(n, p, &mut r);
        let t = dfs_decomposition(&g).unwrap();
        let want = oracle_domset(&g).unwrap();
        let got = four_solvers(&g, &t, audits);
        if got != [want; 4] {
            bad.push(format!("graph {i}: oracle {want}, solvers {got:?}"));
        }
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && took < C1_LIMIT;
    Outcome::new(
        pass,
        format!(
            "{C1_GRAPHS} graphs n<={C1_MAX_N}, {} mismatches, {:.1}s {}",
            bad.len(),
            took.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

fn c2(audits: &mut Audits) -> Outcome {
    let start = Instant::now();
    let mut r = rng(0xC2);
    let mut bad = Vec::new();
    let mut depths = Vec::new();
    while depths.len() < C2_GRAPHS {
        let n = r.gen_range(20..=C2_MAX_N);
        let g = if depths.len() % 2 == 0 {
            random_tree_like(n, r.gen_range(n / 4..=n), &mut r)
        } else {
            random_connected(n, r.gen_range(0.0..0.06), &mut r)
        };
        let t = dfs_decomposition(&g).unwrap();
        if t.depth() > C2_MAX_DEPTH {
            continue;
        }
        depths.push(t.depth());
        let got = four_solvers(&g, &t, audits);
        if got.iter().any(|&v| v != got[0]) {
            bad.push(format!("n={n} depth={}: {got:?}", t.depth()));
        }
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && took < C2_LIMIT;
    Outcome::new(
        pass,
        format!(
            "{C2_GRAPHS} graphs n<={C2_MAX_N}, depth {}..{}, {} disagreements, {:.1}s {}",
            depths.iter().min().unwrap(),
            depths.iter().max().unwrap(),
            bad.len(),
            took.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

fn coloring_pairs(s: usize) -> (usize, Vec<String>) {
    let fam = coloring_family(s);
    let mut bad = Vec::new();
    let mut count = 0;
    for x in &fam {
        for y in &fam {
            let inst = coloring_family_instance(std::slice::from_ref(x), y).unwrap();
            let got = color3_branch(&inst.graph, &inst.decomposition).unwrap();
            let oracle = if inst.graph.n() <= oracle::ORACLE_COLOR_LIMIT {
                Some(oracle_3col(&inst.graph).unwrap())
            } else {
                None
            };
            count += 1;
            if got != (x != y) || oracle.is_some_and(|o| o != got) {
                bad.push(format!("X={x:?} X'={y:?}: branch {got}, oracle {oracle:?}"));
            }
        }
    }
    (count, bad)
}

fn c3() -> Outcome {
    let start = Instant::now();
    let (count, bad) = coloring_pairs(3);
    let took = start.elapsed();
    Outcome::new(
        bad.is_empty() && took < C3_LIMIT,
        format!(
            "s=3, {count} ordered pairs, {} wrong, {:.2}s {}",
            bad.len(),
            took.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

fn c4() -> Outcome {
    let start = Instant::now();
    let s = 3;
    let fam = vc_family(s);
    let mut bad = Vec::new();
    let mut count = 0;
    for mask in 0u32..1 << fam.len() {
        let subset: Vec<_> = (0..fam.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| fam[i].clone())
            .collect();
        for probe in &fam {
            let inst = vc_family_instance(s, &subset, probe).unwrap();
            let m = &inst.manifest;
            let want = m.p_i.unwrap() + s as u32 + subset.contains(probe) as u32;
            let got = vc_branch(&inst.graph, &inst.decomposition).unwrap();
            count += 1;
            if got != want || m.expected != Answer::Size(want) {
                bad.push(format!(
                    "I={subset:?} probe={probe:?}: got {got}, want {want}"
                ));
            }
        }
    }
    let took = start.elapsed();
    Outcome::new(
        bad.is_empty() && took < C4_LIMIT,
        format!(
            "s=3, {count} instances, {} wrong, {:.2}s {}",
            bad.len(),
            took.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

fn c5(audits: &mut Audits) -> Outcome {
    let start = Instant::now();
    let fam = ds_family(3).unwrap();
    let mut subsets: Vec<Vec<_>> = vec![vec![]];
    for i in 0..fam.len() {
        subsets.push(vec![fam[i].clone()]);
        for j in i + 1..fam.len() {
            subsets.push(vec![fam[i].clone(), fam[j].clone()]);
        }
    }
    let mut bad = Vec::new();
    let mut count = 0;
    for subset in &subsets {
        for probe in &fam {
            let inst = ds_family_instance(subset, probe).unwrap();
            let m = &inst.manifest;
            let base = 3 * m.alpha.unwrap() + 1 + 1;
            let want = base + subset.contains(probe) as u32;
            let r = solve_hybrid_report(&inst.graph, &inst.decomposition, ConvMode::Fast).unwrap();
            audits.hybrid(&r, inst.decomposition.depth());
            count += 1;
            if r.size() != want || m.expected != Answer::Size(want) {
                bad.push(format!(
                    "I={subset:?} probe={probe:?}: got {}, want {want}",
                    r.size()
                ));
            }
        }
    }
    let took = start.elapsed();
    Outcome::new(
        bad.is_empty() && took < C5_LIMIT,
        format!(
            "s=3, {count} instances, {} wrong, {:.2}s {}",
            bad.len(),
            took.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

fn c6(a: &Audits) -> Outcome {
    let h = &a.hybrid;
    let v = h.table_entry_violations
        + h.offset_violations
        + h.monotonicity_violations
        + h.depth_violations;
    Outcome::new(
        v == 0 && a.hybrid_depth_excess == 0 && h.tables_checked > 0,
        format!(
            "{} hybrid solves, {} tables; entry {}, offset {}, monotone {}, depth {}+{}",
            a.hybrid_solves,
            h.tables_checked,
            h.table_entry_violations,
            h.offset_violations,
            h.monotonicity_violations,
            h.depth_violations,
            a.hybrid_depth_excess
        ),
    )
}

fn c7(a: &Audits) -> Outcome {
    let b = &a.branch;
    let v = b.list_length_violations
        + b.extra_cost_violations
        + b.candidate_violations
        + b.depth_violations;
    Outcome::new(
        v == 0 && b.frames_checked > 0,
        format!(
            "{} branch solves, {} frames; list length {}, extra cost {}, candidates {}, depth {}",
            a.branch_solves,
            b.frames_checked,
            b.list_length_violations,
            b.extra_cost_violations,
            b.candidate_violations,
            b.depth_violations
        ),
    )
}

fn c8() -> Outcome {
    let start = Instant::now();
    let mut r = rng(0xC8);
    let mut bad = 0;
    for _ in 0..C8_PAIRS {
        let u = r.gen_range(0..=C8_MAX_UNIVERSE);
        let universe = random_universe(u, &mut r);
        let a = random_monotone_table(universe, &mut r);
        let b = random_monotone_table(universe, &mut r);
        if convolve_fast(&a, &b).unwrap() != convolve_naive(&a, &b).unwrap() {
            bad += 1;
        }
    }
    let took = start.elapsed();
    Outcome::new(
        bad == 0 && took < C8_LIMIT,
        format!(
            "{C8_PAIRS} pairs, universe <= {C8_MAX_UNIVERSE}, {bad} differ, {:.2}s",
            took.as_secs_f64()
        ),
    )
}

// Least-squares slope of log2(y) against x.
fn log2_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y.log2()));
    let (mx, my) = (sx / n, sy / n);
    let num: f64 = points
        .iter()
        .map(|&(x, y)| (x - mx) * (y.log2() - my))
        .sum();
    let den: f64 = points.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    num / den
}

fn c9() -> Outcome {
    let start = Instant::now();
    let mut classic = Vec::new();
    let mut hybrid = Vec::new();
    for t in C9_T {
        let (g, d) = clique_chain(t);
        let c = domset_classic_dp_report(&g, &d).unwrap();
        let h = solve_hybrid_report(&g, &d, ConvMode::Fast).unwrap();
        classic.push((t as f64, c.stats.peak_live_table_entries as f64));
        hybrid.push((t as f64, h.stats.peak_live_table_entries as f64));
    }
    let (sc, sh) = (log2_slope(&classic), log2_slope(&hybrid));
    let took = start.elapsed();
    Outcome::new(
        sc >= C9_CLASSIC_MIN_SLOPE && sh <= C9_HYBRID_MAX_SLOPE && took < C9_LIMIT,
        format!(
            "t=6..14 slopes classic {sc:.3} (>= {C9_CLASSIC_MIN_SLOPE}), hybrid {sh:.3} (<= {C9_HYBRID_MAX_SLOPE}), {:.1}s",
            took.as_secs_f64()
        ),
    )
}

fn c10() -> Outcome {
    let (g, t) = planted(C10_N, C10_DEPTH, 0.3, &mut rng(0xC10));
    let start = Instant::now();
    let r = solve_hybrid_report(&g, &t, ConvMode::Fast);
    let took = start.elapsed();
    match r {
        Ok(r) => Outcome::new(
            took < C10_LIMIT && t.depth() == C10_DEPTH,
            format!(
                "n={} m={} depth {} answer {} in {:.2}s (limit {}s)",
                g.n(),
                g.m(),
                t.depth(),
                r.size(),
                took.as_secs_f64(),
                C10_LIMIT.as_secs()
            ),
        ),
        Err(e) => Outcome::new(false, format!("solver error: {e}")),
    }
}

fn main() -> ExitCode {
    let mut audits = Audits::default();
    let mut failed = 0;
    let mut report = |k: usize, o: Outcome| {
        println!(
            "criterion {k}: {} {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail.trim_end()
        );
        failed += !o.pass as usize;
    };
    report(1, c1(&mut audits));
    report(2, c2(&mut audits));
    report(3, c3());
    report(4, c4());
    report(5, c5(&mut audits));
    report(6, c6(&audits));
    report(7, c7(&audits));
    report(8, c8());
    report(9, c9());
    report(10, c10());

    let start = Instant::now();
    let (count, bad) = coloring_pairs(4);
    println!(
        "info: 3-coloring family at s=4, {count} ordered pairs, {} wrong, {:.2}s",
        bad.len(),
        start.elapsed().as_secs_f64()
    );

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
