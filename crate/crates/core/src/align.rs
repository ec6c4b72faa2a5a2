//! Coordinate alignment of free codes.
//!
//! Two free codes `[I | A]` and `[I | B]` are block equivalent when a
//! permutation of the information coordinates and one of the redundancy
//! coordinates carries one onto the other, i.e. `B[i][j] = A[s(i)][t(j)]`.
//! The search assigns rows one at a time and tracks, per column of `B`, the
//! columns of `A` still compatible with it.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::code::StandardForm;
use crate::error::{Error, Result};

fn tail(sf: &StandardForm) -> Result<Vec<Vec<u8>>> {
    if !sf.is_free() || !sf.is_identity_permutation() {
        return Err(Error::Precondition("alignment needs free codes in the form [I | A]".into()));
    }
    let h = sf.rows().len();
    Ok(sf.rows().iter().map(|r| r.coords()[h..].to_vec()).collect())
}

fn sorted(mut v: Vec<u8>) -> Vec<u8> {
    v.sort_unstable();
    v
}

/// Sorted row and column value multisets of `A`; equal for block-equivalent codes.
pub fn block_invariant(sf: &StandardForm) -> Result<(Vec<Vec<u8>>, Vec<Vec<u8>>)> {
    let a = tail(sf)?;
    let width = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u8>> = a.iter().map(|r| sorted(r.clone())).collect();
    let mut cols: Vec<Vec<u8>> = (0..width).map(|j| sorted(a.iter().map(|r| r[j]).collect())).collect();
    rows.sort();
    cols.sort();
    Ok((rows, cols))
}

struct Search<'a> {
    a: &'a [Vec<u8>],
    b: &'a [Vec<u8>],
    row_keys_a: Vec<Vec<u8>>,
    row_keys_b: Vec<Vec<u8>>,
    sigma: Vec<usize>,
    used: u64,
}

impl Search<'_> {
    fn run(&mut self, i: usize, allowed: &[u64]) -> Option<Vec<usize>> {
        if i == self.b.len() {
            return perfect_matching(allowed);
        }
        for s in 0..self.a.len() {
            if self.used >> s & 1 == 1 || self.row_keys_a[s] != self.row_keys_b[i] {
                continue;
            }
            let mut next = allowed.to_vec();
            let mut ok = true;
            for (j, mask) in next.iter_mut().enumerate() {
                let want = self.b[i][j];
                let mut m = *mask;
                let mut rest = m;
                while rest != 0 {
                    let c = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.a[s][c] != want {
                        m &= !(1 << c);
                    }
                }
                if m == 0 {
                    ok = false;
                    break;
                }
                *mask = m;
            }
            if !ok {
                continue;
            }
            self.used |= 1 << s;
            self.sigma[i] = s;
            if let Some(tau) = self.run(i + 1, &next) {
                return Some(tau);
            }
            self.used &= !(1 << s);
        }
        None
    }
}

/// Kuhn's algorithm on a bipartite graph given by adjacency masks.
fn perfect_matching(allowed: &[u64]) -> Option<Vec<usize>> {
    fn augment(j: usize, allowed: &[u64], seen: &mut u64, owner: &mut [Option<usize>]) -> bool {
        let mut rest = allowed[j] & !*seen;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            *seen |= 1 << c;
            if owner[c].is_none_or(|k| augment(k, allowed, seen, owner)) {
                owner[c] = Some(j);
                return true;
            }
        }
        false
    }
    let mut owner = alloc::vec![None; allowed.len()];
    for j in 0..allowed.len() {
        if !augment(j, allowed, &mut 0, &mut owner) {
            return None;
        }
    }
    let mut tau = alloc::vec![0; allowed.len()];
    for (c, o) in owner.iter().enumerate() {
        tau[o.expect("perfect matching covers every column")] = c;
    }
    Some(tau)
}

/// A 1-based column permutation `p` with `a.permute_columns(p) == b`, if the
/// codes are block equivalent.
pub fn align_free(a: &StandardForm, b: &StandardForm) -> Result<Option<Vec<usize>>> {
    if a.modulus() != b.modulus() || a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let (ta, tb) = (tail(a)?, tail(b)?);
    let h = ta.len();
    let width = a.len() - h;
    if h > 64 || width > 64 {
        return Err(Error::LengthTooLarge(a.len()));
    }
    if block_invariant(a)? != block_invariant(b)? {
        return Ok(None);
    }
    let full = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    let mut search = Search {
        a: &ta,
        b: &tb,
        row_keys_a: ta.iter().map(|r| sorted(r.clone())).collect(),
        row_keys_b: tb.iter().map(|r| sorted(r.clone())).collect(),
        sigma: alloc::vec![0; h],
        used: 0,
    };
    let Some(tau) = search.run(0, &alloc::vec![full; width]) else { return Ok(None) };
    let perm: Vec<usize> = search.sigma.iter().map(|&s| s + 1).chain(tau.iter().map(|&c| h + c + 1)).collect();
    debug_assert!(&a.permute_columns(&perm)? == b);
    Ok(Some(perm))
}

/// Pairs `(x, y, p)` with `x` from `left`, `y` from `right` and `x` carried onto `y` by `p`.
pub fn equivalent_pairs<'a, L, R>(left: L, right: R) -> Result<Vec<(StandardForm, StandardForm, Vec<usize>)>>
where
    L: IntoIterator<Item = &'a StandardForm>,
    R: IntoIterator<Item = &'a StandardForm>,
{
    let mut buckets: BTreeMap<_, Vec<&StandardForm>> = BTreeMap::new();
    for y in right {
        buckets.entry(block_invariant(y)?).or_default().push(y);
    }
    let mut out = Vec::new();
    for x in left {
        if let Some(ys) = buckets.get(&block_invariant(x)?) {
            for y in ys {
                if let Some(p) = align_free(x, y)? {
                    out.push((x.clone(), (*y).clone(), p));
                }
            }
        }
    }
    Ok(out)
}
