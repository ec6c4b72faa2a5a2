//! Weight distributions, minimum weights and exact-weight codeword collection.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::StandardForm;
use crate::enumerate::{check_budget, CodewordIter, GrayEnumerator, Slice};
use crate::error::Result;
use crate::packed::{PackedWord, Packing};
use crate::ring::{ZVector, MAX_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightKind {
    Euclidean,
    Hamming,
}

impl WeightKind {
    pub fn of(self, x: &ZVector) -> u64 {
        match self {
            WeightKind::Euclidean => x.euclidean_weight(),
            WeightKind::Hamming => x.hamming_weight(),
        }
    }

    #[inline(always)]
    fn of_packed(self, p: Packing, w: &PackedWord) -> u64 {
        match self {
            WeightKind::Euclidean => p.euclidean_weight(w),
            WeightKind::Hamming => p.hamming_weight(w),
        }
    }
}

/// Codeword counts by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub kind: WeightKind,
    pub counts: BTreeMap<u64, u128>,
}

impl WeightDistribution {
    pub fn new(kind: WeightKind) -> Self {
        WeightDistribution { kind, counts: BTreeMap::new() }
    }

    pub fn add(&mut self, weight: u64, count: u128) {
        if count > 0 {
            *self.counts.entry(weight).or_insert(0) += count;
        }
    }

    pub fn get(&self, weight: u64) -> u128 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// Smallest weight with a nonzero count other than weight 0.
    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn merge(&mut self, other: &WeightDistribution) {
        debug_assert_eq!(self.kind, other.kind);
        for (&w, &c) in &other.counts {
            self.add(w, c);
        }
    }
}

fn histogram_len(sf: &StandardForm) -> usize {
    let k = sf.modulus().k() as usize;
    MAX_LEN * k * k + 1
}

/// Exact distribution over one slice of the code.
pub fn weight_distribution_slice(
    sf: &StandardForm,
    kind: WeightKind,
    slice: Slice,
    budget: u128,
) -> Result<WeightDistribution> {
    let mut dist = WeightDistribution::new(kind);
    if let Ok(e) = GrayEnumerator::new(sf) {
        let range = e.slice_range(slice, budget)?;
        let p = e.packing();
        let mut hist = alloc::vec![0u64; histogram_len(sf)];
        e.scan(range, |w| hist[kind.of_packed(p, w) as usize] += 1);
        for (w, &c) in hist.iter().enumerate() {
            dist.add(w as u64, c as u128);
        }
    } else {
        let total = 1u128.checked_shl(sf.log2_size()).unwrap_or(u128::MAX);
        let range = slice.range(total);
        check_budget(range.end - range.start, budget)?;
        let iter = CodewordIter::new(sf, u128::MAX)?;
        for x in iter.skip(range.start as usize).take((range.end - range.start) as usize) {
            dist.add(kind.of(&x), 1);
        }
    }
    Ok(dist)
}

pub fn weight_distribution(sf: &StandardForm, kind: WeightKind, budget: u128) -> Result<WeightDistribution> {
    weight_distribution_slice(sf, kind, Slice::WHOLE, budget)
}

/// Result of a minimum Euclidean weight search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinWeight {
    /// Exhaustive minimum over nonzero codewords.
    Exact(u64),
    /// The scan stopped early at a nonzero codeword lighter than the cap.
    Below { cap: u64, found: u64 },
    /// The code has no nonzero codeword.
    NoNonzero,
}

impl MinWeight {
    /// Combines per-slice results.
    pub fn merge(self, other: MinWeight) -> MinWeight {
        use MinWeight::*;
        match (self, other) {
            (Below { cap, found: a }, Below { found: b, .. }) => Below { cap, found: a.min(b) },
            (b @ Below { .. }, _) | (_, b @ Below { .. }) => b,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (e @ Exact(_), NoNonzero) | (NoNonzero, e @ Exact(_)) => e,
            (NoNonzero, NoNonzero) => NoNonzero,
        }
    }
}

pub fn min_euclidean_weight_slice(sf: &StandardForm, cap: Option<u64>, slice: Slice, budget: u128) -> Result<MinWeight> {
    let mut best: Option<u64> = None;
    let mut early = false;
    if let Ok(e) = GrayEnumerator::new(sf) {
        let range = e.slice_range(slice, budget)?;
        let p = e.packing();
        e.scan_while(range, |w| {
            if w.planes == [0; 3] {
                return true;
            }
            let wt = p.euclidean_weight(w);
            if best.is_none_or(|b| wt < b) {
                best = Some(wt);
            }
            if cap.is_some_and(|c| wt < c) {
                early = true;
                return false;
            }
            true
        });
    } else {
        let total = 1u128.checked_shl(sf.log2_size()).unwrap_or(u128::MAX);
        let range = slice.range(total);
        check_budget(range.end - range.start, budget)?;
        let iter = CodewordIter::new(sf, u128::MAX)?;
        for x in iter.skip(range.start as usize).take((range.end - range.start) as usize) {
            if x.is_zero() {
                continue;
            }
            let wt = x.euclidean_weight();
            if best.is_none_or(|b| wt < b) {
                best = Some(wt);
            }
            if cap.is_some_and(|c| wt < c) {
                early = true;
                break;
            }
        }
    }
    Ok(match (best, early) {
        (Some(found), true) => MinWeight::Below { cap: cap.unwrap_or(0), found },
        (Some(w), false) => MinWeight::Exact(w),
        (None, _) => MinWeight::NoNonzero,
    })
}

/// Exhaustive minimum; with `cap`, stops at the first nonzero codeword lighter than `cap`.
pub fn min_euclidean_weight(sf: &StandardForm, cap: Option<u64>, budget: u128) -> Result<MinWeight> {
    min_euclidean_weight_slice(sf, cap, Slice::WHOLE, budget)
}

/// All codewords of exactly `target` weight in one slice.
pub fn low_weight_codewords_slice(
    sf: &StandardForm,
    target: u64,
    kind: WeightKind,
    slice: Slice,
    budget: u128,
) -> Result<BTreeSet<ZVector>> {
    let mut out = BTreeSet::new();
    if let Ok(e) = GrayEnumerator::new(sf) {
        let range = e.slice_range(slice, budget)?;
        let p = e.packing();
        e.scan(range, |w| {
            if kind.of_packed(p, w) == target {
                out.insert(p.unpack(w));
            }
        });
    } else {
        let total = 1u128.checked_shl(sf.log2_size()).unwrap_or(u128::MAX);
        let range = slice.range(total);
        check_budget(range.end - range.start, budget)?;
        let iter = CodewordIter::new(sf, u128::MAX)?;
        for x in iter.skip(range.start as usize).take((range.end - range.start) as usize) {
            if kind.of(&x) == target {
                out.insert(x);
            }
        }
    }
    Ok(out)
}

pub fn low_weight_codewords(sf: &StandardForm, target: u64, kind: WeightKind, budget: u128) -> Result<BTreeSet<ZVector>> {
    low_weight_codewords_slice(sf, target, kind, Slice::WHOLE, budget)
}

/// A uniformly random codeword: uniform coefficients below each row's order.
pub fn random_codeword<R: Rng>(sf: &StandardForm, rng: &mut R) -> ZVector {
    let coeffs: Vec<u32> = sf.row_orders().iter().map(|&o| rng.gen_range(0..o)).collect();
    sf.codeword(&coeffs).expect("coefficient count matches")
}

/// Weights of `trials` random codewords drawn from a ChaCha8 stream seeded with `seed`.
pub fn sample_weights(sf: &StandardForm, kind: WeightKind, trials: u64, seed: u64) -> WeightDistribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dist = WeightDistribution::new(kind);
    let orders = sf.row_orders();
    if let Some(p) = Packing::new(sf.modulus(), sf.len()) {
        let rows: Vec<PackedWord> = sf.rows().iter().map(|r| p.pack(r)).collect();
        let mut hist = alloc::vec![0u64; histogram_len(sf)];
        for _ in 0..trials {
            let mut w = PackedWord::default();
            for (row, &o) in rows.iter().zip(&orders) {
                let c = rng.gen_range(0..o);
                w = p.add(&w, &p.scale(row, c));
            }
            hist[kind.of_packed(p, &w) as usize] += 1;
        }
        for (w, &c) in hist.iter().enumerate() {
            dist.add(w as u64, c as u128);
        }
    } else {
        for _ in 0..trials {
            dist.add(kind.of(&random_codeword(sf, &mut rng)), 1);
        }
    }
    dist
}
