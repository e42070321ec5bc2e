//! Dense subset cost tables with offset-encoded values.
//!
//! A table maps every subset of its universe (a set of depth positions) to a
//! [`Cost`]. Entries are stored as `u8` offsets from `base`, the smallest
//! finite value; [`INF_CODE`] marks infinity. Subset `S` lives at the index
//! whose bit `k` says whether the `k`-th smallest universe position is in `S`.

use crate::cost::Cost;
use crate::error::TableError;

pub const INF_CODE: u8 = u8::MAX;
/// Largest universe a dense table may have.
pub const MAX_UNIVERSE: u32 = 28;
/// Largest universe handled by [`convolve_fast`].
pub const FAST_LIMIT: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CostTable {
    universe: u64,
    base: Cost,
    offsets: Vec<u8>,
}

fn check_universe(universe: u64) -> Result<usize, TableError> {
    let u = universe.count_ones();
    if u > MAX_UNIVERSE {
        return Err(TableError::UniverseTooLarge(u));
    }
    Ok(1usize << u)
}

fn same_universe(a: &CostTable, b: &CostTable) -> Result<(), TableError> {
    if a.universe != b.universe {
        return Err(TableError::UniverseMismatch {
            left: a.universe,
            right: b.universe,
        });
    }
    Ok(())
}

/// Bits of `sub`'s positions inside the index space of `universe`.
fn index_mask(universe: u64, sub: u64) -> usize {
    pext(sub, universe) as usize
}

fn pext(x: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let b = m & m.wrapping_neg();
        if x & b != 0 {
            out |= 1 << k;
        }
        k += 1;
        m &= m - 1;
    }
    out
}

fn pdep(x: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let b = m & m.wrapping_neg();
        if x >> k & 1 == 1 {
            out |= b;
        }
        k += 1;
        m &= m - 1;
    }
    out
}

impl CostTable {
    /// Builds a table from absolute values, indexed as described above.
    pub fn from_values(universe: u64, values: &[Cost]) -> Result<Self, TableError> {
        let len = check_universe(universe)?;
        assert_eq!(values.len(), len, "value count must be 2^|universe|");
        let base = values.iter().copied().min().unwrap_or(Cost::INF);
        let mut offsets = vec![INF_CODE; len];
        if base.is_finite() {
            for (i, v) in values.iter().enumerate() {
                if v.is_finite() {
                    let off = v.0 - base.0;
                    if off >= INF_CODE as u32 {
                        return Err(TableError::OffsetBound {
                            subset: pdep(i as u64, universe),
                            offset: off,
                            bound: INF_CODE as u32 - 1,
                        });
                    }
                    offsets[i] = off as u8;
                }
            }
        }
        Ok(CostTable {
            universe,
            base,
            offsets,
        })
    }

    /// Sparse construction; subsets not listed are infinite.
    pub fn from_entries(universe: u64, entries: &[(u64, Cost)]) -> Result<Self, TableError> {
        let len = check_universe(universe)?;
        let mut values = vec![Cost::INF; len];
        for &(s, c) in entries {
            if s & !universe != 0 {
                return Err(TableError::NotInUniverse((s & !universe).trailing_zeros()));
            }
            let i = index_mask(universe, s);
            values[i] = values[i].min(c);
        }
        Self::from_values(universe, &values)
    }

    pub fn infinite(universe: u64) -> Result<Self, TableError> {
        let len = check_universe(universe)?;
        Ok(CostTable {
            universe,
            base: Cost::INF,
            offsets: vec![INF_CODE; len],
        })
    }

    /// `{∅ ↦ 0}`, the neutral element of convolution.
    pub fn identity(universe: u64) -> Result<Self, TableError> {
        let mut t = Self::infinite(universe)?;
        t.base = Cost::ZERO;
        t.offsets[0] = 0;
        Ok(t)
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn dim(&self) -> u32 {
        self.universe.count_ones()
    }

    /// Number of stored entries (`2^dim`).
    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Smallest finite value, infinity for an all-infinite table.
    pub fn base(&self) -> Cost {
        self.base
    }

    pub fn offsets(&self) -> &[u8] {
        &self.offsets
    }

    pub fn value_at_index(&self, i: usize) -> Cost {
        match self.offsets[i] {
            INF_CODE => Cost::INF,
            off => self.base + off as u32,
        }
    }

    /// Value at the subset `s` (a position mask); infinity outside the universe.
    pub fn value(&self, s: u64) -> Cost {
        if s & !self.universe != 0 {
            return Cost::INF;
        }
        self.value_at_index(index_mask(self.universe, s))
    }

    /// Position mask of the subset stored at index `i`.
    pub fn subset_at(&self, i: usize) -> u64 {
        pdep(i as u64, self.universe)
    }

    pub fn values(&self) -> Vec<Cost> {
        (0..self.len()).map(|i| self.value_at_index(i)).collect()
    }

    /// Finite entries as `(subset mask, value)`, in index order.
    pub fn entries(&self) -> Vec<(u64, Cost)> {
        (0..self.len())
            .filter(|&i| self.offsets[i] != INF_CODE)
            .map(|i| (self.subset_at(i), self.value_at_index(i)))
            .collect()
    }

    pub fn finite_count(&self) -> usize {
        self.offsets.iter().filter(|&&o| o != INF_CODE).count()
    }

    pub fn add_constant(mut self, k: u32) -> Self {
        self.base = self.base + k;
        if self.base.is_inf() {
            self.offsets.iter_mut().for_each(|o| *o = INF_CODE);
        }
        self
    }

    // Builds from wide offsets relative to `base`, renormalising.
    fn from_wide(universe: u64, base: Cost, wide: &[u16]) -> Result<Self, TableError> {
        let min = wide.iter().copied().filter(|&w| w != u16::MAX).min();
        let Some(min) = min.filter(|_| base.is_finite()) else {
            return Self::infinite(universe);
        };
        let mut offsets = Vec::with_capacity(wide.len());
        for (i, &w) in wide.iter().enumerate() {
            if w == u16::MAX {
                offsets.push(INF_CODE);
            } else {
                let off = (w - min) as u32;
                if off >= INF_CODE as u32 {
                    return Err(TableError::OffsetBound {
                        subset: pdep(i as u64, universe),
                        offset: off,
                        bound: INF_CODE as u32 - 1,
                    });
                }
                offsets.push(off as u8);
            }
        }
        Ok(CostTable {
            universe,
            base: base + min as u32,
            offsets,
        })
    }

    /// First subset (by index) where superset-monotonicity fails.
    pub fn monotonicity_violation(&self) -> Option<u64> {
        let u = self.dim();
        for b in 0..u {
            let bit = 1usize << b;
            // INF_CODE is the largest code, so offsets compare like values.
            for i in 0..self.len() {
                if i & bit == 0 && self.offsets[i] > self.offsets[i | bit] {
                    return Some(self.subset_at(i));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    /// Checks `M[∅] <= M[S] <= M[∅] + |S|` for all finite entries.
    pub fn check_bounds(&self) -> Result<(), TableError> {
        let empty = self.value_at_index(0);
        for i in 1..self.len() {
            let v = self.value_at_index(i);
            if v.is_inf() {
                continue;
            }
            if empty.is_inf() || v < empty {
                return Err(TableError::BelowBase(self.subset_at(i)));
            }
            let off = v.0 - empty.0;
            let bound = i.count_ones();
            if off > bound {
                return Err(TableError::OffsetBound {
                    subset: self.subset_at(i),
                    offset: off,
                    bound,
                });
            }
        }
        Ok(())
    }

    /// Largest finite offset from `M[∅]`, if any entry is finite.
    pub fn max_offset(&self) -> Option<u32> {
        let empty = self.value_at_index(0);
        if empty.is_inf() {
            return None;
        }
        (0..self.len())
            .filter_map(|i| self.value_at_index(i).finite())
            .map(|v| v.saturating_sub(empty.0))
            .max()
    }
}

/// Min-plus subset convolution by direct enumeration of all `3^u` splits.
pub fn convolve_naive(a: &CostTable, b: &CostTable) -> Result<CostTable, TableError> {
    convolve_naive_counted(a, b, &mut 0)
}

pub fn convolve_naive_counted(
    a: &CostTable,
    b: &CostTable,
    ops: &mut u64,
) -> Result<CostTable, TableError> {
    same_universe(a, b)?;
    let n = a.len();
    let mut wide = vec![u16::MAX; n];
    let mut count = 0u64;
    for (x, out) in wide.iter_mut().enumerate() {
        let mut best = u16::MAX;
        let mut sub = x;
        loop {
            count += 1;
            let oa = a.offsets[sub];
            let ob = b.offsets[x ^ sub];
            if oa != INF_CODE && ob != INF_CODE {
                best = best.min(oa as u16 + ob as u16);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & x;
        }
        *out = best;
    }
    *ops += count;
    CostTable::from_wide(a.universe, a.base + b.base, &wide)
}

/// Subset convolution through the bounded-value cover product.
///
/// Values become polynomials `y^offset`; zeta transform, pointwise product
/// and Möbius inversion over `Z[y]` (mod 2^64) count the covering pairs per
/// degree, and the lowest non-zero degree is the minimum. For superset-monotone
/// tables the cover product equals the disjoint-split product, so both inputs
/// must be monotone with offsets at most `u`.
pub fn convolve_fast(a: &CostTable, b: &CostTable) -> Result<CostTable, TableError> {
    convolve_fast_counted(a, b, &mut 0)
}

pub fn convolve_fast_counted(
    a: &CostTable,
    b: &CostTable,
    ops: &mut u64,
) -> Result<CostTable, TableError> {
    same_universe(a, b)?;
    let u = a.dim();
    if u > FAST_LIMIT {
        return Err(TableError::UniverseTooLarge(u));
    }
    for t in [a, b] {
        if let Some(s) = t.monotonicity_violation() {
            return Err(TableError::NotMonotone(s));
        }
        for (i, &o) in t.offsets.iter().enumerate() {
            if o != INF_CODE && o as u32 > u {
                return Err(TableError::OffsetBound {
                    subset: t.subset_at(i),
                    offset: o as u32,
                    bound: u,
                });
            }
        }
    }
    if a.base.is_inf() || b.base.is_inf() {
        return CostTable::infinite(a.universe);
    }
    let n = a.len();
    let da = u as usize + 1;
    let dh = 2 * u as usize + 1;
    let poly = |t: &CostTable| {
        let mut f = vec![0u64; n * da];
        for (i, &o) in t.offsets.iter().enumerate() {
            if o != INF_CODE {
                f[i * da + o as usize] = 1;
            }
        }
        zeta(&mut f, u, da);
        f
    };
    let fa = poly(a);
    let fb = poly(b);
    let mut h = vec![0u64; n * dh];
    for i in 0..n {
        let pa = &fa[i * da..(i + 1) * da];
        let pb = &fb[i * da..(i + 1) * da];
        let ph = &mut h[i * dh..(i + 1) * dh];
        for (d1, &ca) in pa.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (d2, &cb) in pb.iter().enumerate() {
                ph[d1 + d2] = ph[d1 + d2].wrapping_add(ca.wrapping_mul(cb));
            }
        }
    }
    mobius(&mut h, u, dh);
    let wide: Vec<u16> = (0..n)
        .map(|i| {
            h[i * dh..(i + 1) * dh]
                .iter()
                .position(|&c| c != 0)
                .map_or(u16::MAX, |d| d as u16)
        })
        .collect();
    *ops += (n as u64) * (da as u64 * da as u64 + 2 * u as u64 * dh as u64);
    CostTable::from_wide(a.universe, a.base + b.base, &wide)
}

fn zeta(f: &mut [u64], u: u32, d: usize) {
    for b in 0..u {
        let bit = 1usize << b;
        for i in 0..f.len() / d {
            if i & bit != 0 {
                let (lo, hi) = f.split_at_mut(i * d);
                let src = &lo[(i ^ bit) * d..(i ^ bit) * d + d];
                for (x, y) in hi[..d].iter_mut().zip(src) {
                    *x = x.wrapping_add(*y);
                }
            }
        }
    }
}

fn mobius(f: &mut [u64], u: u32, d: usize) {
    for b in 0..u {
        let bit = 1usize << b;
        for i in 0..f.len() / d {
            if i & bit != 0 {
                let (lo, hi) = f.split_at_mut(i * d);
                let src = &lo[(i ^ bit) * d..(i ^ bit) * d + d];
                for (x, y) in hi[..d].iter_mut().zip(src) {
                    *x = x.wrapping_sub(*y);
                }
            }
        }
    }
}

/// Pointwise minimum.
pub fn combine_choice(a: &CostTable, b: &CostTable) -> Result<CostTable, TableError> {
    same_universe(a, b)?;
    if a.base.is_inf() {
        return Ok(b.clone());
    }
    if b.base.is_inf() {
        return Ok(a.clone());
    }
    let base = a.base.min(b.base);
    let sa = (a.base.0 - base.0) as u16;
    let sb = (b.base.0 - base.0) as u16;
    let wide: Vec<u16> = a
        .offsets
        .iter()
        .zip(&b.offsets)
        .map(|(&oa, &ob)| {
            let va = if oa == INF_CODE {
                u16::MAX
            } else {
                oa as u16 + sa
            };
            let vb = if ob == INF_CODE {
                u16::MAX
            } else {
                ob as u16 + sb
            };
            va.min(vb)
        })
        .collect();
    CostTable::from_wide(a.universe, base, &wide)
}

fn rank_of(m: &CostTable, pos: u32) -> Result<u32, TableError> {
    if pos >= 64 || m.universe >> pos & 1 == 0 {
        return Err(TableError::NotInUniverse(pos));
    }
    Ok((m.universe & ((1u64 << pos) - 1)).count_ones())
}

// Index of the old table for new index `i` with a zero inserted at bit `r`.
fn widen(i: usize, r: u32) -> usize {
    let lo = i & ((1 << r) - 1);
    ((i >> r) << (r + 1)) | lo
}

/// Removes `pos` from the universe: `new[S] = min(old[S], old[S ∪ {pos}])`.
pub fn forget_vertex(m: &CostTable, pos: u32) -> Result<CostTable, TableError> {
    let r = rank_of(m, pos)?;
    let n = m.len() / 2;
    let offsets = (0..n)
        .map(|i| {
            let j = widen(i, r);
            m.offsets[j].min(m.offsets[j | 1 << r])
        })
        .collect();
    Ok(CostTable {
        universe: m.universe & !(1 << pos),
        base: m.base,
        offsets,
    })
}

/// Removes `pos` from the universe keeping only subsets that contain it:
/// `new[S] = old[S ∪ {pos}]`.
pub fn require_vertex(m: &CostTable, pos: u32) -> Result<CostTable, TableError> {
    let r = rank_of(m, pos)?;
    let n = m.len() / 2;
    let wide: Vec<u16> = (0..n)
        .map(|i| match m.offsets[widen(i, r) | 1 << r] {
            INF_CODE => u16::MAX,
            o => o as u16,
        })
        .collect();
    CostTable::from_wide(m.universe & !(1 << pos), m.base, &wide)
}

/// Extends the universe; subsets touching new positions are infinite.
pub fn lift(m: &CostTable, universe: u64) -> Result<CostTable, TableError> {
    if m.universe & !universe != 0 {
        return Err(TableError::UniverseMismatch {
            left: m.universe,
            right: universe,
        });
    }
    if m.universe == universe {
        return Ok(m.clone());
    }
    let len = check_universe(universe)?;
    let mut offsets = vec![INF_CODE; len];
    let sub = index_mask(universe, m.universe);
    let mut j = 0usize;
    for &o in &m.offsets {
        offsets[j] = o;
        j = j.wrapping_sub(sub) & sub;
    }
    Ok(CostTable {
        universe,
        base: m.base,
        offsets,
    })
}

/// Shrinks the universe to `universe`, keeping the subsets that avoid the
/// dropped positions.
pub fn restrict(m: &CostTable, universe: u64) -> Result<CostTable, TableError> {
    if universe & !m.universe != 0 {
        return Err(TableError::UniverseMismatch {
            left: m.universe,
            right: universe,
        });
    }
    if m.universe == universe {
        return Ok(m.clone());
    }
    let sub = index_mask(m.universe, universe);
    let mut wide = Vec::with_capacity(1 << universe.count_ones());
    let mut j = 0usize;
    loop {
        wide.push(match m.offsets[j] {
            INF_CODE => u16::MAX,
            o => o as u16,
        });
        j = j.wrapping_sub(sub) & sub;
        if j == 0 {
            break;
        }
    }
    CostTable::from_wide(universe, m.base, &wide)
}

/// Adds the positions of `free` (disjoint from the universe) as positions
/// that cost nothing: `new[S] = old[S \ free]`.
pub fn absorb(m: &CostTable, free: u64) -> Result<CostTable, TableError> {
    if m.universe & free != 0 {
        return Err(TableError::UniverseMismatch {
            left: m.universe,
            right: free,
        });
    }
    if free == 0 {
        return Ok(m.clone());
    }
    let universe = m.universe | free;
    let len = check_universe(universe)?;
    let mut offsets = vec![INF_CODE; len];
    let umask = index_mask(universe, m.universe);
    let fmask = index_mask(universe, free);
    let mut j = 0usize;
    for &o in &m.offsets {
        let mut f = 0usize;
        loop {
            offsets[j | f] = o;
            f = f.wrapping_sub(fmask) & fmask;
            if f == 0 {
                break;
            }
        }
        j = j.wrapping_sub(umask) & umask;
    }
    Ok(CostTable {
        universe,
        base: m.base,
        offsets,
    })
}
