use std::collections::BTreeSet;

use z2k_core::doubling::{double_code, undouble_all, validate_doubling_vector};
use z2k_core::duality::{certify_type_ii, is_self_dual};
use z2k_core::enumerate::CodewordIter;
use z2k_core::seeds::{golay_lift, k8};
use z2k_core::weight::{weight_distribution, WeightKind};
use z2k_core::{dual, residue_code, standardize, GeneratorMatrix, Modulus, ZVector};

#[test]
fn dual_of_a_mixed_code() {
    let z8 = Modulus::new(8).unwrap();
    let g = GeneratorMatrix::from_rows(z8, 5, [[1i64, 2, 3, 0, 5], [0, 2, 4, 6, 2], [0, 0, 4, 0, 4]]).unwrap();
    let c = standardize(&g).unwrap();
    let d = dual(&c).unwrap();
    assert_eq!(c.log2_size() + d.log2_size(), 15);
    let words: Vec<ZVector> = CodewordIter::new(&c, 1 << 20).unwrap().collect();
    for y in CodewordIter::new(&d, 1 << 20).unwrap() {
        assert!(words.iter().all(|x| x.inner_product(&y).unwrap() == 0));
    }
    assert_eq!(dual(&d).unwrap(), c);
}

#[test]
fn golay_lift_residues() {
    let c = golay_lift(41).unwrap();
    assert!(is_self_dual(&c) && certify_type_ii(&c).is_valid());
    let binary = residue_code(&c, 1).unwrap();
    let dist = weight_distribution(&binary, WeightKind::Hamming, 1 << 20).unwrap();
    assert_eq!((dist.get(8), dist.get(12), dist.get(16)), (759, 2576, 759));
}

#[test]
fn doubles_and_sources_agree() {
    let c = k8(2).unwrap();
    let z8 = c.modulus();
    let ku = [[5, 6], [5, 7], [5, 8], [6, 7], [6, 8], [7, 8]]
        .iter()
        .map(|s| ZVector::indicator(z8, 8, s, 4).unwrap())
        .find(|v| validate_doubling_vector(&c, v, false).is_ok())
        .unwrap();
    let dv = validate_doubling_vector(&c, &ku, false).unwrap();
    let doubled = double_code(&c, &dv, None).unwrap().doubled;
    let sources = undouble_all(&doubled, &ku, c.profile()).unwrap();
    assert!(sources.contains(&c));
    let members: BTreeSet<ZVector> = CodewordIter::new(&doubled, 1 << 20).unwrap().collect();
    for s in &sources {
        let again = double_code(s, &validate_doubling_vector(s, &ku, false).unwrap(), None).unwrap().doubled;
        assert_eq!(CodewordIter::new(&again, 1 << 20).unwrap().collect::<BTreeSet<_>>(), members);
    }
}
