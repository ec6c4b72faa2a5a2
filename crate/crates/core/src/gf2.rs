//! Dense linear systems over `GF(2)`.

use alloc::vec::Vec;

/// A bit vector of fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec { words: alloc::vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Solution set `particular + span(kernel)` of `M x = b`.
#[derive(Debug, Clone)]
pub struct Solution {
    pub particular: BitVec,
    pub kernel: Vec<BitVec>,
}

/// Solves `M x = b` for `M` given by rows of length `cols`. `None` when inconsistent.
pub fn solve(rows: &[BitVec], rhs: &[bool], cols: usize) -> Option<Solution> {
    debug_assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<(BitVec, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i].0.get(c)) else { continue };
        m.swap(r, p);
        let (pivot_row, pivot_rhs) = m[r].clone();
        for (i, (row, b)) in m.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot_row);
                *b ^= pivot_rhs;
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    if m[r..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut particular = BitVec::zeros(cols);
    for (i, &c) in pivot_cols.iter().enumerate() {
        particular.set(c, m[i].1);
    }
    let mut is_pivot = alloc::vec![false; cols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let kernel = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut k = BitVec::zeros(cols);
            k.set(f, true);
            for (i, &c) in pivot_cols.iter().enumerate() {
                if m[i].0.get(f) {
                    k.set(c, true);
                }
            }
            k
        })
        .collect();
    Some(Solution { particular, kernel })
}

/// Rank of a set of vectors.
pub fn rank(rows: &[BitVec]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let zeros = alloc::vec![false; rows.len()];
    let sol = solve(rows, &zeros, cols).expect("homogeneous systems are consistent");
    cols - sol.kernel.len()
}
