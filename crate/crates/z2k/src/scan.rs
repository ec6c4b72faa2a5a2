//! Slice-parallel scans.
//!
//! Work is split into `slices` contiguous parts of the Gray enumeration and
//! spread over the current rayon pool. Results are merged in slice order, so
//! output does not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;
use z2k_core::enumerate::Slice;
use z2k_core::packed::PackedWord;
use z2k_core::search::{AlgorithmC, ExclusionLedger, ScanSummary, SearchOptions};
use z2k_core::weight::{min_euclidean_weight_slice, weight_distribution_slice, MinWeight, WeightDistribution, WeightKind};
use z2k_core::{Result, StandardForm};

/// How a scan was partitioned; recorded in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SliceLayout {
    pub slices: u64,
    /// Budget per slice in codewords.
    pub budget: u128,
}

impl SliceLayout {
    pub fn new(slices: u64, budget: u128) -> SliceLayout {
        SliceLayout { slices: slices.max(1), budget }
    }

    fn each(self) -> impl IndexedParallelIterator<Item = Slice> {
        let count = self.slices;
        (0..count as usize).into_par_iter().map(move |i| Slice { index: i as u64, count })
    }
}

/// Runs `f` on a pool of `threads` workers, or on the global pool when `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
        None => f(),
    }
}

pub fn weight_distribution(sf: &StandardForm, kind: WeightKind, layout: SliceLayout) -> Result<WeightDistribution> {
    let parts: Vec<WeightDistribution> =
        layout.each().map(|s| weight_distribution_slice(sf, kind, s, layout.budget)).collect::<Result<_>>()?;
    let mut total = WeightDistribution::new(kind);
    for p in &parts {
        total.merge(p);
    }
    Ok(total)
}

pub fn min_euclidean_weight(sf: &StandardForm, cap: Option<u64>, layout: SliceLayout) -> Result<MinWeight> {
    let parts: Vec<MinWeight> =
        layout.each().map(|s| min_euclidean_weight_slice(sf, cap, s, layout.budget)).collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(MinWeight::NoNonzero, MinWeight::merge))
}

pub fn algorithm_c(sf: &StandardForm, options: SearchOptions, layout: SliceLayout) -> Result<(ExclusionLedger, ScanSummary)> {
    let alg = AlgorithmC::new(sf, options)?;
    let scans = layout.each().map(|s| alg.scan_slice(s, layout.budget)).collect::<Result<Vec<_>>>()?;
    alg.finish(scans)
}

/// Every weight-16 word of the `Z_4` residue, in scan order.
pub fn weight16_words(alg: &AlgorithmC, layout: SliceLayout) -> Result<Vec<PackedWord>> {
    let parts = layout.each().map(|s| alg.weight16_words_slice(s, layout.budget)).collect::<Result<Vec<_>>>()?;
    Ok(parts.concat())
}
