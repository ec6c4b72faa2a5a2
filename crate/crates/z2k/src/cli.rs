//! Command-line front end.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use z2k_core::doubling::{double_code, undouble, undouble_all, validate_doubling_vector};
use z2k_core::duality::{certify_type_ii, extremal_bound, is_self_dual};
use z2k_core::enumerate::{Slice, DEFAULT_BUDGET};
use z2k_core::search::{build_extremal_double, CandidateSet, SearchOptions, Witness};
use z2k_core::weight::{sample_weights, weight_distribution_slice, MinWeight, WeightDistribution, WeightKind};
use z2k_core::{residue_code, standardize, StandardForm, TypeProfile, ZVector};

use crate::codefile::{read_code_file, serialize_code_file, write_code_file, CodeFile, ParseError};
use crate::golden::{golden_check, goldens, Source};
use crate::reconstruct;
use crate::report::Report;
use crate::scan::{self, SliceLayout};

#[derive(Debug, Parser)]
#[command(name = "z2k", version, about = "Linear codes over Z_2k: standard forms, weights, doubling and the extremal Z8 search")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for slice-parallel scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Euclidean,
    Hamming,
}

impl From<Kind> for WeightKind {
    fn from(k: Kind) -> WeightKind {
        match k {
            Kind::Euclidean => WeightKind::Euclidean,
            Kind::Hamming => WeightKind::Hamming,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the standard form of a code.
    Standardize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Type, size, self-duality and the Type II certificate.
    Info { file: PathBuf },
    /// The residue code modulo 2 or 4.
    Residue {
        file: PathBuf,
        #[arg(long = "mod", value_parser = ["2", "4"])]
        modulus: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact weight distribution, optionally of a single slice.
    Weightdist {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "euclidean")]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        slices: u64,
        /// Scan only this slice (0-based).
        #[arg(long)]
        slice: Option<u64>,
    },
    /// Minimum Euclidean weight; with a cap, stops at the first lighter codeword.
    Minweight {
        file: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        slices: u64,
    },
    /// Double a Type II Z_2^m code by ku with the given support.
    Double {
        file: PathBuf,
        /// Support of ku, 1-based and comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<usize>,
        /// Subtract the codeword agreeing with ku on the pivot columns first.
        #[arg(long)]
        normalize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the Type II codes a doubled code can come from.
    Undouble {
        /// One or more doubled codes; with several, only common sources are kept.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Support of ku; defaults to the last generator row of each file.
        #[arg(long, value_delimiter = ',')]
        u: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', required = true)]
        target_type: Vec<usize>,
        /// Only use the subcode spanned by the standard-form rows other than the ku row.
        #[arg(long)]
        fixed_subcode: bool,
        /// Write the first source in canonical order.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Candidate supports of 4u left by the exclusion search.
    Candidates {
        file: PathBuf,
        /// Print every surviving set.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 64)]
        slices: u64,
        /// Skip the requirement that the Z4 residue has minimum Euclidean weight 16.
        #[arg(long)]
        allow_light_residue: bool,
        /// Also build the double for this support and report its binary residue.
        #[arg(long, value_delimiter = ',')]
        build: Option<Vec<usize>>,
    },
    /// Random-sample check of the extremal bound and of weight divisibility.
    VerifyExtremal {
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify the shipped golden codes against the distribution table.
    GoldenCheck,
    /// Recover the source codes of the goldens and reproduce every golden from them.
    RecoverSources {
        /// Write the recovered sources here.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Code(#[from] z2k_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Code(_) => 1,
        }
    }
}

/// Result of a command: whether its checks passed, plus both renderings.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub text: String,
    pub json: String,
}

fn outcome(command: &'static str, pass: bool, text: String, data: Value) -> Outcome {
    Outcome { pass, text, json: Report::new(command, pass, data).to_json() }
}

fn load(path: &PathBuf) -> Result<StandardForm, CliError> {
    Ok(standardize(&read_code_file(path)?.matrix)?)
}

fn code_file(sf: &StandardForm, comments: Vec<String>) -> CodeFile {
    CodeFile { comments, matrix: sf.generator_matrix() }
}

fn emit(sf: &StandardForm, comments: Vec<String>, output: &Option<PathBuf>) -> Result<String, CliError> {
    let file = code_file(sf, comments);
    match output {
        Some(path) => {
            write_code_file(path, &file)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(serialize_code_file(&file)),
    }
}

fn distribution_json(d: &WeightDistribution) -> Value {
    json!(d.counts.iter().map(|(w, c)| json!({"weight": w, "count": c})).collect::<Vec<_>>())
}

fn distribution_text(d: &WeightDistribution) -> String {
    d.counts.iter().map(|(w, c)| format!("{w} {c}\n")).collect()
}

fn vector_from_support(sf: &StandardForm, support: &[usize]) -> Result<ZVector, CliError> {
    Ok(ZVector::indicator(sf.modulus(), sf.len(), support, sf.modulus().k())?)
}

fn parse_profile(ks: &[usize]) -> TypeProfile {
    TypeProfile::new(ks.to_vec())
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    scan::with_threads(cli.threads, || dispatch(&cli.command))
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Standardize { file, output } => {
            let sf = load(file)?;
            let text = emit(&sf, vec![format!("standard form, type {}", sf.profile())], output)?;
            let data = json!({"profile": sf.profile().ks, "rows": sf.rows().iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>()});
            Ok(outcome("standardize", true, text, data))
        }
        Command::Info { file } => {
            let sf = load(file)?;
            let cert = certify_type_ii(&sf);
            let self_dual = is_self_dual(&sf);
            let size = sf.size().map(|s| s.to_string()).unwrap_or_else(|_| format!("2^{}", sf.log2_size()));
            let text = format!(
                "modulus: {}\nlength: {}\ntype: {}\nsize: {}\nfree: {}\nself-dual: {}\ntype II: {}\ncertificate: {}\n",
                sf.modulus().two_k(),
                sf.len(),
                sf.profile(),
                size,
                sf.is_free(),
                self_dual,
                if cert.is_valid() { "valid" } else { "invalid" },
                cert.describe()
            );
            let data = json!({
                "modulus": sf.modulus().two_k(), "length": sf.len(), "profile": sf.profile().ks,
                "log2_size": sf.log2_size(), "free": sf.is_free(), "self_dual": self_dual,
                "type_ii": cert.is_valid(), "certificate": cert.describe(),
            });
            Ok(outcome("info", true, text, data))
        }
        Command::Residue { file, modulus, output } => {
            let sf = load(file)?;
            let j = if modulus == "2" { 1 } else { 2 };
            let r = residue_code(&sf, j)?;
            let text = emit(&r, vec![format!("residue modulo {modulus}, type {}", r.profile())], output)?;
            Ok(outcome("residue", true, text, json!({"modulus": modulus, "profile": r.profile().ks})))
        }
        Command::Weightdist { file, kind, slices, slice } => {
            let sf = load(file)?;
            let layout = SliceLayout::new(*slices, DEFAULT_BUDGET);
            let dist = match slice {
                Some(i) => {
                    let s = Slice::new(*i, *slices).map_err(|e| CliError::Usage(format!("--slice: {e}")))?;
                    weight_distribution_slice(&sf, (*kind).into(), s, DEFAULT_BUDGET)?
                }
                None => scan::weight_distribution(&sf, (*kind).into(), layout)?,
            };
            let data = json!({"kind": format!("{kind:?}").to_lowercase(), "slices": slices, "slice": slice, "distribution": distribution_json(&dist)});
            Ok(outcome("weightdist", true, distribution_text(&dist), data))
        }
        Command::Minweight { file, cap, slices } => {
            let sf = load(file)?;
            let m = scan::min_euclidean_weight(&sf, *cap, SliceLayout::new(*slices, DEFAULT_BUDGET))?;
            let (text, data) = match m {
                MinWeight::Exact(w) => (format!("minimum Euclidean weight {w}\n"), json!({"exact": w})),
                MinWeight::Below { cap, found } => {
                    (format!("found weight {found} below cap {cap}\n"), json!({"below_cap": cap, "found": found}))
                }
                MinWeight::NoNonzero => ("no nonzero codeword\n".into(), json!({"exact": null})),
            };
            let pass = !matches!(m, MinWeight::Below { .. });
            Ok(outcome("minweight", pass, text, json!({"cap": cap, "slices": slices, "result": data})))
        }
        Command::Double { file, u, normalize, output } => {
            let sf = load(file)?;
            let ku = vector_from_support(&sf, u)?;
            let dv = validate_doubling_vector(&sf, &ku, *normalize)?;
            let res = double_code(&sf, &dv, None)?;
            let support: Vec<usize> = dv.half_support().iter().copied().collect();
            let text = emit(&res.doubled, vec![format!("double by ku with support {support:?}, type {}", res.doubled.profile())], output)?;
            let data = json!({"support": support, "profile": res.doubled.profile().ks, "log2_size": res.doubled.log2_size()});
            Ok(outcome("double", true, text, data))
        }
        Command::Undouble { files, u, target_type, fixed_subcode, output } => {
            let target = parse_profile(target_type);
            let mut sets = Vec::new();
            for f in files {
                let raw = read_code_file(f)?.matrix;
                let sf = standardize(&raw)?;
                let ku = match u {
                    Some(s) => vector_from_support(&sf, s)?,
                    None => raw.rows().last().cloned().ok_or_else(|| CliError::Usage(format!("{} has no rows", f.display())))?,
                };
                sets.push(if *fixed_subcode { undouble(&sf, &ku, &target)? } else { undouble_all(&sf, &ku, &target)? });
            }
            let counts: Vec<usize> = sets.iter().map(BTreeSet::len).collect();
            let common = z2k_core::doubling::common_sources(&sets);
            let mut text = format!("sources per file: {counts:?}\ncommon sources: {}\n", common.len());
            if let (Some(path), Some(first)) = (output, common.iter().next()) {
                text.push_str(&emit(first, vec![format!("source of type {}", first.profile())], &Some(path.clone()))?);
            }
            let data = json!({"target_type": target.ks, "fixed_subcode": fixed_subcode, "per_file": counts, "common": common.len()});
            Ok(outcome("undouble", !common.is_empty(), text, data))
        }
        Command::Candidates { file, list, slices, allow_light_residue, build } => {
            let sf = load(file)?;
            let layout = SliceLayout::new(*slices, DEFAULT_BUDGET);
            let options = SearchOptions { require_extremal_residue: !allow_light_residue };
            let (ledger, summary) = scan::algorithm_c(&sf, options, layout)?;
            let candidates = ledger.candidates();
            let (step1, step2) = ledger.step_counts();
            let mut text = format!("{}\n", candidates.len());
            if *list {
                for c in &candidates {
                    text.push_str(&format!("{:?}\n", c.positions()));
                }
            }
            let mut data = json!({
                "candidates": candidates.len(), "excluded": ledger.len(),
                "excluded_step_1": step1, "excluded_step_2": step2,
                "weight16_residue_words": summary.weight16_words,
                "slice_layout": layout,
            });
            if *list {
                data["sets"] = json!(candidates.iter().map(|c| c.positions()).collect::<Vec<_>>());
            }
            if let Some(b) = build {
                let s = CandidateSet::from_positions(sf.len(), b)?;
                match build_extremal_double(&sf, &ledger, s) {
                    Ok(d) => {
                        text.push_str(&format!("double type {}\n", d.double.doubled.profile()));
                        text.push_str(&distribution_text(&d.residue_distribution));
                        data["build"] = json!({"support": b, "profile": d.double.doubled.profile().ks, "residue_distribution": distribution_json(&d.residue_distribution)});
                    }
                    Err(e) => {
                        let witness = ledger.provenance(s.mask()).map(|p| witness_json(&p.witness));
                        text.push_str(&format!("{e}\n"));
                        data["build"] = json!({"support": b, "error": e.to_string(), "witness": witness});
                        return Ok(outcome("candidates", false, text, data));
                    }
                }
            }
            Ok(outcome("candidates", true, text, data))
        }
        Command::VerifyExtremal { file, samples, seed } => {
            let sf = load(file)?;
            let k = sf.modulus().k();
            let bound = extremal_bound(sf.len(), k)?;
            let dist = sample_weights(&sf, WeightKind::Euclidean, *samples, *seed);
            let four_k = 4 * k as u64;
            let below: u128 = dist.counts.iter().filter(|(&w, _)| w != 0 && w < bound).map(|(_, &c)| c).sum();
            let indivisible: u128 = dist.counts.iter().filter(|(&w, _)| w % four_k != 0).map(|(_, &c)| c).sum();
            let pass = below == 0 && indivisible == 0;
            let text = format!(
                "samples: {samples}\nseed: {seed}\nbound: {bound}\nbelow bound: {below}\nnot divisible by {four_k}: {indivisible}\n{}",
                if pass { "pass\n" } else { "FAIL\n" }
            );
            let data = json!({"samples": samples, "seed": seed, "rng": "ChaCha8", "bound": bound, "below_bound": below, "indivisible": indivisible, "distribution": distribution_json(&dist)});
            Ok(outcome("verify-extremal", pass, text, data))
        }
        Command::GoldenCheck => {
            let report = golden_check()?;
            let mut text = String::new();
            for row in &report.codes {
                let status = if row.pass() { "pass".to_string() } else { format!("FAIL: {}", row.failures.join("; ")) };
                let w: Vec<String> = row.residue_distribution.iter().map(|(w, c)| format!("{w}:{c}")).collect();
                text.push_str(&format!("{:<4} {} [{}] {}\n", row.name, row.profile, w.join(" "), status));
            }
            text.push_str(&format!("distinct distributions: {}\n", report.distinct_distributions));
            let pass = report.pass;
            Ok(outcome("golden-check", pass, text, serde_json::to_value(&report).expect("report serializes")))
        }
        Command::RecoverSources { output_dir } => recover_sources(output_dir.as_ref()),
    }
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Lift { residue, a, lifted } => {
            json!({"kind": "lift", "residue": residue.coords(), "a": a, "lifted": lifted.coords()})
        }
        Witness::Row(i) => json!({"kind": "row", "row": i}),
        Witness::Codeword(v) => json!({"kind": "codeword", "codeword": v.coords()}),
    }
}

fn recover_sources(output_dir: Option<&PathBuf>) -> Result<Outcome, CliError> {
    let all = goldens();
    let refs: Vec<_> = all.iter().collect();
    let sets = reconstruct::sources_of(&refs)?;
    let first = reconstruct::unique_common_source(&[sets[0].clone(), sets[2].clone(), sets[3].clone()])?;
    let second_options = reconstruct::equivalent_sources(&sets[8], &sets[9])?;
    let shipped_second = standardize(&crate::codefile::parse_code_file(Source::Second.file())?.matrix)?;
    let second = second_options
        .iter()
        .find(|c| **c == shipped_second)
        .cloned()
        .ok_or_else(|| CliError::Code(z2k_core::Error::Precondition("shipped C_{8,32,2} is not among the recovered options".into())))?;
    let mut text = format!("C_{{8,32,1}}: unique common source of C1, C3, C4\nC_{{8,32,2}}: {} options consistent with C9 and C10\n", second_options.len());
    let mut rows = Vec::new();
    let mut pass = true;
    for (g, set) in all.iter().zip(&sets) {
        let source = match g.source {
            Source::First => &first,
            Source::Second => &second,
        };
        let frame = reconstruct::frame(source, set)?;
        let rebuilt = reconstruct::reconstruct(source, g.candidate_set(), &frame)?;
        let equal = rebuilt == g.standard_form();
        pass &= equal;
        let moved: Vec<(usize, usize)> = frame.iter().enumerate().filter(|(i, &p)| p != i + 1).map(|(i, &p)| (i + 1, p)).collect();
        text.push_str(&format!("{:<4} sources {:>5}  frame {:?}  reproduced {}\n", g.name, set.len(), moved, equal));
        rows.push(json!({"name": g.name, "sources": set.len(), "frame": frame, "reproduced": equal}));
    }
    if let Some(dir) = output_dir {
        for (source, name) in [(&first, "c8_32_1.z2k"), (&second, "c8_32_2.z2k")] {
            let path = dir.join(name);
            write_code_file(&path, &code_file(source, vec!["recovered source, type (16,0,0)".into()]))?;
            text.push_str(&format!("wrote {}\n", path.display()));
        }
    }
    let shipped_first = standardize(&crate::codefile::parse_code_file(Source::First.file())?.matrix)?;
    let data = json!({"first_matches_shipped": first == shipped_first, "second_options": second_options.len(), "codes": rows});
    Ok(outcome("recover-sources", pass && first == shipped_first, text, data))
}

