//! Acceptance criteria, one line each.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use z2k::golden::{check_golden, golden_check, goldens, GoldenRecord, Source};
use z2k::reconstruct;
use z2k::scan::{self, SliceLayout};
use z2k_core::doubling::{double_code, validate_doubling_vector};
use z2k_core::duality::{certify_type_ii, is_self_dual};
use z2k_core::enumerate::{CodewordIter, DEFAULT_BUDGET};
use z2k_core::search::{brute_force_exclusions, AlgorithmC, SearchOptions};
use z2k_core::seeds::{golay_lift, k8};
use z2k_core::weight::{random_codeword, sample_weights, WeightKind};
use z2k_core::{standardize, GeneratorMatrix, Modulus, StandardForm, ZVector};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    check(t < limit, format!("{what} took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn shipped(source: Source) -> StandardForm {
    standardize(&z2k::codefile::parse_code_file(source.file()).unwrap().matrix).unwrap()
}

fn certification() -> Outcome {
    let forms: Vec<StandardForm> = goldens().iter().map(GoldenRecord::standard_form).collect();
    let start = Instant::now();
    for (g, sf) in goldens().iter().zip(&forms) {
        let cert = certify_type_ii(sf);
        check(cert.is_valid(), format!("{}: {}", g.name, cert.describe()))?;
        check(is_self_dual(sf), format!("{} is not self-dual", g.name))?;
        check(sf.profile().ks == [15, 1, 1], format!("{} has type {}", g.name, sf.profile()))?;
    }
    let t = within(start, Duration::from_secs(1), "certification")?;
    Ok(format!("10 codes, type (15,1,1), {t:.2?}"))
}

fn distributions() -> Outcome {
    let start = Instant::now();
    let report = golden_check().map_err(e)?;
    let t = within(start, Duration::from_secs(10), "residue distributions")?;
    for row in &report.codes {
        check(row.distribution_match, format!("{} residue distribution {:?}", row.name, row.residue_distribution))?;
    }
    check(report.distinct_distributions, "distributions are not pairwise distinct")?;
    Ok(format!("10 exact matches, pairwise distinct, {t:.2?}"))
}

fn residue_parameters() -> Outcome {
    for g in goldens() {
        let row = check_golden(&g).map_err(e)?;
        check(
            row.residue_dimension == 15 && row.residue_min_weight == Some(8),
            format!("{}: dimension {}, minimum weight {:?}", g.name, row.residue_dimension, row.residue_min_weight),
        )?;
    }
    Ok("all residues [32,15,8]".into())
}

fn weight_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for q in [4u32, 6, 8, 10] {
        let m = Modulus::new(q).map_err(e)?;
        let four_k = 2 * q as u64;
        for _ in 0..100_000 {
            let n = rng.gen_range(1..=48);
            let x = ZVector::new(m, (0..n).map(|_| rng.gen_range(0..q as i64))).map_err(e)?;
            let y = ZVector::new(m, (0..n).map(|_| rng.gen_range(0..q as i64))).map_err(e)?;
            let lhs = x.checked_add(&y).map_err(e)?.euclidean_weight() % four_k;
            let rhs = (x.euclidean_weight() + y.euclidean_weight() + 2 * x.inner_product(&y).map_err(e)? as u64) % four_k;
            check(lhs == rhs, format!("Z{q}: {x:?} + {y:?}"))?;
        }
    }
    let t = within(start, Duration::from_secs(5), "weight identity")?;
    Ok(format!("4 x 10^5 pairs over Z4, Z6, Z8, Z10, {t:.2?}"))
}

/// Random `Z_8` codes of several flavours, all with at most `2^20` codewords.
fn random_z8_code(i: usize, rng: &mut ChaCha8Rng) -> StandardForm {
    let z8 = Modulus::new(8).unwrap();
    loop {
        let rows: Vec<ZVector> = match i % 5 {
            0 | 2 => {
                let c = k8(rng.gen_range(0..16)).unwrap();
                (0..rng.gen_range(1..=4)).map(|_| random_codeword(&c, rng)).collect()
            }
            1 | 3 => {
                let c = golay_lift(rng.gen_range(0..16)).unwrap();
                (0..rng.gen_range(1..=5)).map(|_| random_codeword(&c, rng)).collect()
            }
            _ => {
                let n = 8 * rng.gen_range(1..=3);
                let scale = [1, 2, 4][rng.gen_range(0..3)];
                (0..rng.gen_range(1..=4))
                    .map(|_| ZVector::new(z8, (0..n).map(|_| scale * rng.gen_range(0..8 / scale))).unwrap())
                    .collect()
            }
        };
        let mut rows = rows;
        if i % 5 == 2 || i % 5 == 3 {
            let r = rng.gen_range(0..rows.len());
            let p = rng.gen_range(0..rows[r].len());
            let bump = ZVector::indicator(z8, rows[r].len(), &[p + 1], rng.gen_range(1..8)).unwrap();
            rows[r] = rows[r].checked_add(&bump).unwrap();
        }
        let n = rows[0].len();
        let sf = standardize(&GeneratorMatrix::new(z8, n, rows).unwrap()).unwrap();
        if sf.log2_size() <= 20 {
            return sf;
        }
    }
}

fn certificate_vs_enumeration() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut yes, mut no) = (0, 0);
    for i in 0..100 {
        let sf = random_z8_code(i, &mut rng);
        let claimed = certify_type_ii(&sf).weights_divisible();
        let actual = CodewordIter::new(&sf, 1 << 20).map_err(e)?.all(|v| v.euclidean_weight() % 16 == 0);
        check(claimed == actual, format!("code {i}: certificate {claimed}, enumeration {actual}"))?;
        if actual {
            yes += 1;
        } else {
            no += 1;
        }
    }
    check(yes > 0 && no > 0, format!("only one outcome seen ({yes} divisible, {no} not)"))?;
    let t = within(start, Duration::from_secs(120), "certificate comparison")?;
    Ok(format!("100 codes agree ({yes} divisible, {no} not), {t:.2?}"))
}

fn k8_doubling() -> Outcome {
    let start = Instant::now();
    let c = k8(7).map_err(e)?;
    let words: Vec<ZVector> = CodewordIter::new(&c, 1 << 20).map_err(e)?.collect();
    check(words.len() == 4096, format!("K8 has {} words", words.len()))?;
    let min = words.iter().filter(|v| !v.is_zero()).map(ZVector::euclidean_weight).min();
    check(min == Some(16), format!("K8 minimum weight {min:?}"))?;
    let z8 = c.modulus();
    let dv = (5..=8)
        .flat_map(|a| (a + 1..=8).map(move |b| [a, b]))
        .find_map(|s| validate_doubling_vector(&c, &ZVector::indicator(z8, 8, &s, 4).ok()?, false).ok())
        .ok_or("no doubling vector on the redundancy coordinates")?;
    let res = double_code(&c, &dv, None).map_err(e)?;
    let d = &res.doubled;
    check(d.profile().ks == [3, 1, 1], format!("double has type {}", d.profile()))?;
    check(d.size().map_err(e)? == 4096, "double size differs")?;
    let bad = CodewordIter::new(d, 1 << 20).map_err(e)?.filter(|v| v.euclidean_weight() % 16 != 0).count();
    check(bad == 0, format!("{bad} doubled words with weight not divisible by 16"))?;
    let odd: Vec<usize> = (0..c.rows().len()).filter(|&i| c.rows()[i].inner_product(dv.vector()).unwrap() != 0).collect();
    for &p in &odd {
        check(&double_code(&c, &dv, Some(p)).map_err(e)?.doubled == d, format!("pivot row {} gives another double", p + 1))?;
    }
    let t = within(start, Duration::from_secs(60), "K8 doubling")?;
    Ok(format!("type (3,1,1), 4096 words, weights 0 mod 16, {} pivots agree, K8 minimum 16, {t:.2?}", odd.len()))
}

fn exclusions_vs_brute_force() -> Outcome {
    let start = Instant::now();
    let options = SearchOptions { require_extremal_residue: false };
    let mut parts = Vec::new();
    for seed in [237, 100, 41] {
        let c = golay_lift(seed).map_err(e)?;
        let (fast, _) = AlgorithmC::new(&c, options).map_err(e)?.run(DEFAULT_BUDGET).map_err(e)?;
        let slow = brute_force_exclusions(&c, options, DEFAULT_BUDGET).map_err(e)?;
        check(fast.same_sets(&slow), format!("seed {seed}: {} vs {} exclusions", fast.len(), slow.len()))?;
        check(fast.step_counts() == slow.step_counts(), format!("seed {seed}: provenance {:?} vs {:?}", fast.step_counts(), slow.step_counts()))?;
        parts.push(format!("{} excluded", fast.len()));
    }
    let t = within(start, Duration::from_secs(30 * 60), "length-24 comparison")?;
    Ok(format!("3 codes, {}, {t:.1?}", parts.join(" / ")))
}

struct Recovered {
    first: StandardForm,
    second_options: Vec<StandardForm>,
    sets: Vec<BTreeSet<StandardForm>>,
}

fn recover() -> Result<Recovered, String> {
    let all = goldens();
    let refs: Vec<&GoldenRecord> = all.iter().collect();
    let sets = reconstruct::sources_of(&refs).map_err(e)?;
    let first = reconstruct::unique_common_source(&[sets[0].clone(), sets[2].clone(), sets[3].clone()]).map_err(e)?;
    let second_options = reconstruct::equivalent_sources(&sets[8], &sets[9]).map_err(e)?;
    Ok(Recovered { first, second_options, sets })
}

/// Candidate count, after checking that every published support for `source` survives.
fn candidate_count(sf: &StandardForm, source: Option<Source>) -> Result<u64, String> {
    let (ledger, _) = scan::algorithm_c(sf, SearchOptions::default(), SliceLayout::new(64, DEFAULT_BUDGET)).map_err(e)?;
    for g in goldens().iter().filter(|g| Some(g.source) == source) {
        check(!ledger.contains(g.candidate_set()), format!("{:?} of {} is excluded", g.s4, g.name))?;
    }
    Ok(ledger.candidate_count())
}

fn undoubled_candidates(rec: &Result<Recovered, String>, start: Instant) -> Outcome {
    let rec = rec.as_ref().map_err(Clone::clone)?;
    check(rec.first == shipped(Source::First), "source recovered from C1, C3, C4 differs from the shipped file")?;
    let first = candidate_count(&rec.first, Some(Source::First))?;
    check(first == 23067, format!("source of C1 gives {first} candidates"))?;
    let second = shipped(Source::Second);
    let at = rec.second_options.iter().position(|c| *c == second).ok_or("shipped source of C9 is not among the recovered ones")?;
    let counts: Vec<u64> = rec
        .second_options
        .iter()
        .enumerate()
        .map(|(i, c)| candidate_count(c, (i == at).then_some(Source::Second)))
        .collect::<Result<_, _>>()?;
    check(counts[at] == 22818, format!("source of C9 gives {} candidates", counts[at]))?;
    let t = within(start, Duration::from_secs(30 * 60), "undoubling and candidate counts")?;
    Ok(format!("23067 and 22818, published supports all survive, {t:.1?} (other sources of C9 and C10 give {:?})", counts))
}

fn redoubling(rec: &Result<Recovered, String>) -> Outcome {
    let rec = rec.as_ref().map_err(Clone::clone)?;
    let start = Instant::now();
    let second = shipped(Source::Second);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (g, set) in goldens().iter().zip(&rec.sets) {
        let source = match g.source {
            Source::First => &rec.first,
            Source::Second => &second,
        };
        let frame = reconstruct::frame(source, set).map_err(e)?;
        let rebuilt = reconstruct::reconstruct(source, g.candidate_set(), &frame).map_err(e)?;
        let printed = g.standard_form();
        check(rebuilt.size().map_err(e)? == printed.size().map_err(e)?, format!("{}: sizes differ", g.name))?;
        for _ in 0..10_000 {
            let x = random_codeword(&rebuilt, &mut rng);
            check(printed.contains(&x).map_err(e)?, format!("{}: rebuilt word {x:?} not in the printed code", g.name))?;
            let y = random_codeword(&printed, &mut rng);
            check(rebuilt.contains(&y).map_err(e)?, format!("{}: printed word {y:?} not in the rebuilt code", g.name))?;
        }
    }
    let t = within(start, Duration::from_secs(600), "redoubling")?;
    Ok(format!("C1..C10 reproduced, 10^4 samples each way, {t:.2?}"))
}

fn sampled_extremality() -> Outcome {
    let start = Instant::now();
    for (i, g) in goldens().iter().enumerate() {
        let dist = sample_weights(&g.standard_form(), WeightKind::Euclidean, 1_000_000, 1000 + i as u64);
        for (&w, &c) in &dist.counts {
            check(w == 0 || (w >= 32 && w % 16 == 0), format!("{}: {c} samples of weight {w}", g.name))?;
        }
    }
    let t = within(start, Duration::from_secs(120), "sampling")?;
    Ok(format!("10^7 samples, all weights >= 32 and 0 mod 16, {t:.1?}"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, r: Outcome| {
        match &r {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    };
    report(1, "golden certification", certification());
    report(2, "residue distributions", distributions());
    report(3, "residue parameters", residue_parameters());
    report(4, "weight identity", weight_identity());
    report(5, "certificate vs enumeration", certificate_vs_enumeration());
    report(6, "K8 doubling", k8_doubling());
    report(7, "exclusions vs brute force", exclusions_vs_brute_force());
    let start = Instant::now();
    let rec = recover();
    report(8, "undoubled candidate counts", undoubled_candidates(&rec, start));
    report(9, "redoubling", redoubling(&rec));
    report(10, "sampled extremality", sampled_extremality());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
