//! Recovery of the source codes behind the golden doubles.
//!
//! Undoubling one golden code gives tens of thousands of Type II sources. The
//! source of `C1..C8` is the only code shared by the sources of `C1`, `C3`
//! and `C4`. The printed matrices of the other goldens use other coordinates,
//! so each is matched to its source by a block permutation.

use std::collections::BTreeSet;

use rayon::prelude::*;
use z2k_core::align::equivalent_pairs;
use z2k_core::doubling::{common_sources, double_code, undouble_all, validate_doubling_vector};
use z2k_core::search::CandidateSet;
use z2k_core::{Error, Result, StandardForm, TypeProfile};

use crate::golden::GoldenRecord;

pub fn free_type() -> TypeProfile {
    TypeProfile::new(vec![16, 0, 0])
}

/// Every free Type II source of a golden, doubling by its last printed row.
pub fn golden_sources(g: &GoldenRecord) -> Result<BTreeSet<StandardForm>> {
    let sf = g.standard_form();
    let ku = g.file().matrix.rows().last().cloned().ok_or(Error::Internal("golden matrix has no rows"))?;
    undouble_all(&sf, &ku, &free_type())
}

/// Sources of several goldens, computed in parallel.
pub fn sources_of(goldens: &[&GoldenRecord]) -> Result<Vec<BTreeSet<StandardForm>>> {
    goldens.par_iter().map(|g| golden_sources(g)).collect()
}

/// The unique code in every source set.
pub fn unique_common_source(sets: &[BTreeSet<StandardForm>]) -> Result<StandardForm> {
    let common = common_sources(sets);
    match common.len() {
        1 => Ok(common.into_iter().next().expect("one element")),
        k => Err(Error::Precondition(format!("{k} common sources instead of one"))),
    }
}

/// Codes of `left` block equivalent to some code of `right`.
pub fn equivalent_sources(left: &BTreeSet<StandardForm>, right: &BTreeSet<StandardForm>) -> Result<Vec<StandardForm>> {
    let mut out: Vec<StandardForm> = equivalent_pairs(left, right)?.into_iter().map(|(x, _, _)| x).collect();
    out.dedup();
    Ok(out)
}

/// The coordinate change from `source` to the printed frame of a golden.
pub fn frame(source: &StandardForm, golden_sources: &BTreeSet<StandardForm>) -> Result<Vec<usize>> {
    let pairs = equivalent_pairs([source], golden_sources)?;
    match pairs.as_slice() {
        [(_, _, p)] => Ok(p.clone()),
        _ => Err(Error::Precondition(format!("{} aligned sources instead of one", pairs.len()))),
    }
}

/// Doubles `source` by the published support and moves the result into the golden's frame.
pub fn reconstruct(source: &StandardForm, s4: CandidateSet, frame: &[usize]) -> Result<StandardForm> {
    let dv = validate_doubling_vector(source, &s4.doubling_vector(), false)?;
    double_code(source, &dv, None)?.doubled.permute_columns(frame)
}
