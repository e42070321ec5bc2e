/// Restricted growth strings of length `len` with at most `max_blocks` blocks,
/// in lexicographic order. Each string encodes one set partition: element `i`
/// belongs to block `a[i]`, blocks numbered by first appearance.
#[derive(Clone, Debug)]
pub struct Rgs {
    a: Vec<usize>,
    prefix_max: Vec<usize>,
    max_blocks: usize,
    started: bool,
    done: bool,
}

impl Rgs {
    pub fn new(len: usize, max_blocks: usize) -> Self {
        Rgs {
            a: vec![0; len],
            prefix_max: vec![0; len],
            max_blocks,
            started: false,
            done: len == 0 || max_blocks == 0,
        }
    }

    /// Advances to the next string; `None` when exhausted.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.a);
        }
        let n = self.a.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            let limit = (self.prefix_max[i - 1] + 1).min(self.max_blocks - 1);
            if self.a[i] < limit {
                self.a[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.a[i]);
                for j in i + 1..n {
                    self.a[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return Some(&self.a);
            }
        }
        self.done = true;
        None
    }

    pub fn blocks(&self) -> usize {
        self.prefix_max.last().map_or(0, |m| m + 1)
    }
}

/// Every set partition of `items`, each as a list of blocks.
pub fn enumerate_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let mut out = Vec::new();
    let mut rgs = Rgs::new(items.len(), items.len());
    while let Some(a) = rgs.advance() {
        let k = a.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (item, &b) in items.iter().zip(a) {
            blocks[b].push(item.clone());
        }
        out.push(blocks);
    }
    out
}

/// Block masks of the partitions of the set bits of `set`, with at most
/// `max_blocks` blocks. Calls `f` once per partition until it returns `false`.
pub fn for_each_mask_partition<F: FnMut(&[u64]) -> bool>(set: u64, max_blocks: usize, mut f: F) {
    let bits: Vec<u64> = (0..64)
        .filter(|b| set >> b & 1 == 1)
        .map(|b| 1u64 << b)
        .collect();
    let mut rgs = Rgs::new(bits.len(), max_blocks);
    let mut blocks = vec![0u64; max_blocks.min(bits.len())];
    while let Some(a) = rgs.advance() {
        blocks.iter_mut().for_each(|b| *b = 0);
        let mut k = 0;
        for (bit, &b) in bits.iter().zip(a) {
            blocks[b] |= bit;
            k = k.max(b + 1);
        }
        if !f(&blocks[..k]) {
            return;
        }
    }
}

/// Number of set partitions of an `n`-set (Bell number).
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_partitions(&[1]).len(), 1);
        assert_eq!(enumerate_partitions(&[1, 2, 3]).len(), 5);
        assert_eq!(enumerate_partitions(&[1, 2, 3, 4]).len(), 15);
        assert_eq!(bell(4), 15);
        assert_eq!(bell(10), 115_975);
    }

    #[test]
    fn order_is_restricted_growth() {
        let mut rgs = Rgs::new(3, 3);
        let mut seen = Vec::new();
        while let Some(a) = rgs.advance() {
            seen.push(a.to_vec());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn each_partition_once() {
        for n in 1..=7usize {
            let parts = enumerate_partitions(&(0..n).collect::<Vec<_>>());
            let canon: BTreeSet<Vec<Vec<usize>>> = parts.iter().cloned().collect();
            assert_eq!(canon.len() as u64, bell(n));
            for p in &parts {
                let mut all: Vec<usize> = p.iter().flatten().copied().collect();
                all.sort_unstable();
                assert_eq!(all, (0..n).collect::<Vec<_>>());
                assert!(p.iter().all(|b| !b.is_empty()));
            }
        }
    }

    #[test]
    fn capped_blocks() {
        let mut count = 0;
        for_each_mask_partition(0b1011_0000, 2, |blocks| {
            assert!(blocks.len() <= 2);
            assert_eq!(blocks.iter().fold(0, |a, b| a | b), 0b1011_0000);
            count += 1;
            true
        });
        // S(3,1) + S(3,2)
        assert_eq!(count, 1 + 3);
        let mut count = 0;
        for_each_mask_partition(0b111, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 5);
        let mut count = 0;
        for_each_mask_partition(0b1111, 4, |_| {
            count += 1;
            count < 3
        });
        assert_eq!(count, 3);
    }
}
