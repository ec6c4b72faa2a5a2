//! The ten extremal Type II `Z_8` codes of length 32 and type `(15,1,1)`.
//!
//! Each record carries the printed generator matrix, the source code it was
//! doubled from, the support of `4u` as published, and the Hamming weight
//! distribution of its binary residue code.
//!
//! The published supports are given in the coordinates of the source code.
//! The printed matrices of `C7` and `C8` use different coordinates: the last
//! row of `C7` has support `{17, 24, 25, 27}` and that of `C8` has `{17, 20}`.
//! [`crate::reconstruct`] recovers the coordinate changes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use z2k_core::duality::{certify_type_ii, is_self_dual};
use z2k_core::search::CandidateSet;
use z2k_core::weight::{weight_distribution, WeightDistribution, WeightKind};
use z2k_core::{residue_code, standardize, Result, StandardForm};

use crate::codefile::{parse_code_file, CodeFile};

/// The free source codes of type `(16,0,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Source {
    #[serde(rename = "C_{8,32,1}")]
    First,
    #[serde(rename = "C_{8,32,2}")]
    Second,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::First => "C_{8,32,1}",
            Source::Second => "C_{8,32,2}",
        }
    }

    /// The recovered source, shipped as a code file.
    pub fn file(self) -> &'static str {
        match self {
            Source::First => include_str!("../data/c8_32_1.z2k"),
            Source::Second => include_str!("../data/c8_32_2.z2k"),
        }
    }

    /// Number of candidate supports left by the exclusion search.
    pub fn published_candidates(self) -> u64 {
        match self {
            Source::First => 23067,
            Source::Second => 22818,
        }
    }
}

/// Weights at which the binary residue distributions are tabulated.
pub const TABULATED_WEIGHTS: [u64; 7] = [0, 8, 12, 16, 20, 24, 32];

#[derive(Debug, Clone)]
pub struct GoldenRecord {
    pub name: &'static str,
    pub text: &'static str,
    pub source: Source,
    /// Support of `4u` as published, in source coordinates.
    pub s4: &'static [usize],
    /// Row of the distribution table, indexed like [`TABULATED_WEIGHTS`].
    pub published_counts: [u128; 7],
}

impl GoldenRecord {
    pub fn file(&self) -> CodeFile {
        parse_code_file(self.text).expect("shipped golden files parse")
    }

    pub fn standard_form(&self) -> StandardForm {
        standardize(&self.file().matrix).expect("shipped golden files standardize")
    }

    pub fn candidate_set(&self) -> CandidateSet {
        CandidateSet::from_positions(32, self.s4).expect("published supports lie in the tail")
    }

    /// Support of the value 4 in the last printed row.
    pub fn printed_s4(&self) -> BTreeSet<usize> {
        let file = self.file();
        let last = file.matrix.rows().last().expect("golden matrices have rows");
        last.support_of(4).expect("Z8 matrix")
    }

    pub fn expected_distribution(&self) -> WeightDistribution {
        let mut d = WeightDistribution::new(WeightKind::Hamming);
        for (&w, &c) in TABULATED_WEIGHTS.iter().zip(&self.published_counts) {
            if c != 0 {
                d.add(w, c);
            }
        }
        d
    }
}

macro_rules! golden {
    ($name:literal, $file:literal, $source:ident, [$($s:literal),*], [$($w:literal),*]) => {
        GoldenRecord {
            name: $name,
            text: include_str!(concat!("../data/", $file)),
            source: Source::$source,
            s4: &[$($s),*],
            published_counts: [$($w),*],
        }
    };
}

pub fn goldens() -> Vec<GoldenRecord> {
    vec![
        golden!("C1", "c1.z2k", First, [17, 19, 21, 22], [1, 316, 6912, 18310, 6912, 316, 1]),
        golden!("C2", "c2.z2k", First, [17, 18, 20, 21], [1, 332, 6848, 18406, 6848, 332, 1]),
        golden!("C3", "c3.z2k", First, [17, 19, 21], [1, 337, 6888, 18259, 7000, 283, 0]),
        golden!("C4", "c4.z2k", First, [17, 19, 20, 21, 22], [1, 305, 6952, 18259, 6936, 315, 0]),
        golden!("C5", "c5.z2k", First, [17, 18, 19, 20], [1, 308, 6944, 18262, 6944, 308, 1]),
        golden!("C6", "c6.z2k", First, [17, 18, 19, 20, 21, 22], [1, 300, 6976, 18214, 6976, 300, 1]),
        golden!("C7", "c7.z2k", First, [18, 24, 25, 27], [1, 364, 6720, 18598, 6720, 364, 1]),
        golden!("C8", "c8.z2k", First, [20, 25], [1, 380, 7168, 17670, 7168, 380, 1]),
        golden!("C9", "c9.z2k", Second, [17, 18, 19, 21], [1, 324, 6880, 18358, 6880, 324, 1]),
        golden!("C10", "c10.z2k", Second, [17, 21, 24, 25], [1, 340, 6816, 18454, 6816, 340, 1]),
    ]
}

pub fn golden(name: &str) -> Option<GoldenRecord> {
    goldens().into_iter().find(|g| g.name.eq_ignore_ascii_case(name))
}

/// Outcome of the checks on one golden code.
#[derive(Debug, Clone, Serialize)]
pub struct GoldenRow {
    pub name: &'static str,
    pub source: Source,
    pub s4: Vec<usize>,
    pub printed_s4: Vec<usize>,
    pub profile: String,
    pub self_dual: bool,
    pub type_ii: bool,
    pub certificate: String,
    pub residue_dimension: usize,
    pub residue_min_weight: Option<u64>,
    pub residue_distribution: BTreeMap<u64, u128>,
    pub distribution_match: bool,
    pub failures: Vec<String>,
}

impl GoldenRow {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenReport {
    pub codes: Vec<GoldenRow>,
    pub distinct_distributions: bool,
    pub pass: bool,
}

pub fn check_golden(g: &GoldenRecord) -> Result<GoldenRow> {
    let sf = g.standard_form();
    let cert = certify_type_ii(&sf);
    let self_dual = is_self_dual(&sf);
    let residue = residue_code(&sf, 1)?;
    let dist = weight_distribution(&residue, WeightKind::Hamming, 1 << 16)?;
    let mut failures = Vec::new();
    if sf.profile().ks != [15, 1, 1] {
        failures.push(format!("type {} instead of (15,1,1)", sf.profile()));
    }
    if !self_dual {
        failures.push("not self-dual".into());
    }
    if !cert.is_valid() {
        failures.push(format!("Type II certificate fails: {}", cert.describe()));
    }
    let dimension = residue.rows().len();
    if dimension != 15 {
        failures.push(format!("binary residue has dimension {dimension}"));
    }
    let min = dist.min_nonzero_weight();
    if min != Some(8) {
        failures.push(format!("binary residue minimum weight {min:?} instead of 8"));
    }
    let distribution_match = dist == g.expected_distribution();
    if !distribution_match {
        failures.push("binary residue distribution differs from the table".into());
    }
    Ok(GoldenRow {
        name: g.name,
        source: g.source,
        s4: g.s4.to_vec(),
        printed_s4: g.printed_s4().into_iter().collect(),
        profile: sf.profile().to_string(),
        self_dual,
        type_ii: cert.is_valid(),
        certificate: cert.describe(),
        residue_dimension: dimension,
        residue_min_weight: min,
        residue_distribution: dist.counts.clone(),
        distribution_match,
        failures,
    })
}

/// Certification, residue parameters and distributions of all ten goldens.
pub fn golden_check() -> Result<GoldenReport> {
    let codes = goldens().iter().map(check_golden).collect::<Result<Vec<_>>>()?;
    let distinct: BTreeSet<_> = codes.iter().map(|c| c.residue_distribution.clone()).collect();
    let distinct_distributions = distinct.len() == codes.len();
    let pass = distinct_distributions && codes.iter().all(GoldenRow::pass);
    Ok(GoldenReport { codes, distinct_distributions, pass })
}
