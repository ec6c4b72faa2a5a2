//! The doubling construction and its inverse.
//!
//! For a Type II code `C` and a vector `ku` with entries in `{0, k}` outside
//! `C`, the double is `C_0 + <ku>` with `C_0 = {v in C : <ku, v> = 0}`.
//! Over `Z_{2^m}` a generator matrix of the double comes straight from the
//! standard form of `C`: rows orthogonal to `ku` stay, the others are paired
//! with one fixed odd row.
//!
//! Undoubling runs the other way. Given the double `C~` and `ku`, every
//! index-2 subgroup `D` of `C~` missing `ku` is a possible `C_0`, and `D^⊥/D`
//! has four cosets `D`, `D + ku`, `D + w`, `D + w + ku`. Each `D + <w'>` with
//! `w'` in the last two cosets is tested for being Type II of the requested
//! type.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::code::{dual, standardize, GeneratorMatrix, StandardForm, TypeProfile};
use crate::duality::{certify_type_ii, is_self_dual_with_size};
use crate::error::{DoublingRejection, Error, Result};
use crate::gf2::{solve, BitVec};
use crate::ring::ZVector;

/// A validated `ku`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingVector {
    vec: ZVector,
    half_support: BTreeSet<usize>,
}

impl DoublingVector {
    pub fn vector(&self) -> &ZVector {
        &self.vec
    }

    /// `S_k(ku)`, 1-based.
    pub fn half_support(&self) -> &BTreeSet<usize> {
        &self.half_support
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleResult {
    pub subcode_c0: StandardForm,
    pub doubled: StandardForm,
    pub used_vector: DoublingVector,
}

/// Entry and parity checks that need no code.
fn check_shape(ku: &ZVector) -> Result<BTreeSet<usize>> {
    let k = ku.modulus().k();
    for (i, &c) in ku.coords().iter().enumerate() {
        if c as u32 != 0 && c as u32 != k {
            return Err(DoublingRejection::NotZeroOrK { position: i + 1, value: c as u32 }.into());
        }
    }
    let support = ku.support_of(k)?;
    let count = support.len();
    let parity_ok = match k % 4 {
        0 => true,
        2 => count % 2 == 0,
        _ if k % 2 == 1 => count % 4 == 0,
        _ => true,
    };
    if !parity_ok {
        return Err(DoublingRejection::Parity { k, count }.into());
    }
    if count == 0 {
        return Err(DoublingRejection::InCode.into());
    }
    Ok(support)
}

/// Validates `ku` against a Type II code over `Z_{2^m}`.
///
/// With `normalize`, the unique codeword agreeing with `ku` on the pivot
/// columns is subtracted, leaving a vector that vanishes there.
pub fn validate_doubling_vector(sf: &StandardForm, ku: &ZVector, normalize: bool) -> Result<DoublingVector> {
    if ku.modulus() != sf.modulus() || ku.len() != sf.len() {
        return Err(Error::DimensionMismatch { expected: sf.len(), found: ku.len() });
    }
    check_shape(ku)?;
    if sf.contains(ku)? {
        return Err(DoublingRejection::InCode.into());
    }
    let vec = if normalize {
        let q = sf.modulus().two_k();
        let mut rest = ku.clone();
        for (row, p) in sf.rows().iter().zip(sf.pivots()) {
            let a = (rest.coords()[p.col] >> p.level) as u32;
            rest.add_scaled_unchecked(row, q - a);
        }
        rest
    } else {
        ku.clone()
    };
    let half_support = check_shape(&vec)?;
    Ok(DoublingVector { vec, half_support })
}

/// Validates `ku` against a self-dual code over any `Z_2k`, given by generators.
///
/// Self-duality makes `ku` a codeword exactly when it is orthogonal to every generator.
pub fn validate_doubling_vector_general(g: &GeneratorMatrix, ku: &ZVector) -> Result<DoublingVector> {
    if ku.modulus() != g.modulus() || ku.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: g.len(), found: ku.len() });
    }
    let half_support = check_shape(ku)?;
    if g.rows().iter().all(|r| r.dot_unchecked(ku) == 0) {
        return Err(DoublingRejection::InCode.into());
    }
    Ok(DoublingVector { vec: ku.clone(), half_support })
}

/// The type of the double of a code of type `profile`.
pub fn expected_doubled_profile(profile: &TypeProfile) -> Result<TypeProfile> {
    let mut ks = profile.ks.clone();
    let m = ks.len();
    if m < 2 || ks[0] == 0 {
        return Err(Error::Domain(alloc::format!("no doubling for type {profile}")));
    }
    ks[0] -= 1;
    if m == 2 {
        ks[1] += 2;
    } else {
        ks[1] += 1;
        ks[m - 1] += 1;
    }
    Ok(TypeProfile::new(ks))
}

/// Generators of `C_0` from the rows of `C`, pairing odd rows with row `pivot`.
fn split_rows(rows: &[ZVector], ku: &ZVector, pivot: Option<usize>) -> Result<Vec<ZVector>> {
    let (odd, even): (Vec<usize>, Vec<usize>) = (0..rows.len()).partition(|&i| rows[i].dot_unchecked(ku) != 0);
    if odd.is_empty() {
        return Err(Error::Internal("no generator is odd against ku although ku lies outside the code"));
    }
    let p = match pivot {
        None => odd[0],
        Some(p) if odd.contains(&p) => p,
        Some(p) => return Err(Error::Domain(alloc::format!("row {} is not odd against ku", p + 1))),
    };
    let mut out: Vec<ZVector> = odd
        .iter()
        .map(|&j| {
            let mut r = rows[p].clone();
            r.add_assign_unchecked(&rows[j]);
            r
        })
        .collect();
    out.extend(even.iter().map(|&i| rows[i].clone()));
    Ok(out)
}

/// Doubling over `Z_{2^m}` from the standard form of `C`.
///
/// `pivot` is the 0-based index of the odd row paired with the others; the
/// first odd row when `None`.
pub fn double_code(sf: &StandardForm, dv: &DoublingVector, pivot: Option<usize>) -> Result<DoubleResult> {
    let m = sf.modulus().m().ok_or(Error::NotPowerOfTwo(sf.modulus().two_k()))?;
    if m < 2 {
        return Err(Error::Domain("doubling needs m >= 2".into()));
    }
    let ku = dv.vector();
    if ku.modulus() != sf.modulus() || ku.len() != sf.len() {
        return Err(Error::DimensionMismatch { expected: sf.len(), found: ku.len() });
    }
    if sf.pivots().iter().any(|p| ku.coords()[p.col] != 0) {
        return Err(DoublingRejection::NotNormalized.into());
    }
    let cert = certify_type_ii(sf);
    if !cert.is_valid() {
        return Err(Error::Precondition(alloc::format!("code is not Type II: {}", cert.describe())));
    }
    let c0_rows = split_rows(sf.rows(), ku, pivot)?;
    let subcode_c0 = standardize(&GeneratorMatrix::new(sf.modulus(), sf.len(), c0_rows.clone())?)?;
    let mut rows = c0_rows;
    rows.push(ku.clone());
    let doubled = standardize(&GeneratorMatrix::new(sf.modulus(), sf.len(), rows)?)?;
    if doubled.profile() != &expected_doubled_profile(sf.profile())? || doubled.log2_size() != sf.log2_size() {
        return Err(Error::Internal("doubled code has the wrong type"));
    }
    Ok(DoubleResult { subcode_c0, doubled, used_vector: dv.clone() })
}

/// Doubling over any `Z_2k` from generators of a self-dual code.
///
/// `C_0` is generated by the generators orthogonal to `ku`, the differences
/// `g_j - g_p` of the others with a fixed `g_p`, and `2 g_p`.
pub fn double_generators(g: &GeneratorMatrix, dv: &DoublingVector) -> Result<(GeneratorMatrix, GeneratorMatrix)> {
    let ku = dv.vector();
    let rows = g.rows();
    let (odd, even): (Vec<usize>, Vec<usize>) = (0..rows.len()).partition(|&i| rows[i].dot_unchecked(ku) != 0);
    let Some(&p) = odd.first() else {
        return Err(Error::Internal("no generator is odd against ku although ku lies outside the code"));
    };
    let mut c0: Vec<ZVector> = even.iter().map(|&i| rows[i].clone()).collect();
    for &j in &odd[1..] {
        c0.push(rows[j].checked_sub(&rows[p])?);
    }
    c0.push(rows[p].scale(2));
    let c0 = GeneratorMatrix::new(g.modulus(), g.len(), c0)?;
    let mut doubled = c0.rows().to_vec();
    doubled.push(ku.clone());
    Ok((c0, GeneratorMatrix::new(g.modulus(), g.len(), doubled)?))
}

/// `{v in C : <ku, v> = 0}` computed by filtering codewords; reference for small codes.
pub fn orthogonal_subcode_by_filter(sf: &StandardForm, ku: &ZVector, budget: u128) -> Result<BTreeSet<ZVector>> {
    Ok(crate::enumerate::CodewordIter::new(sf, budget)?.filter(|v| v.dot_unchecked(ku) == 0).collect())
}

/// Index-2 subgroups of a doubled code and the sources they lead to.
///
/// A homomorphism `phi: C~ -> Z_2` with `phi(ku) = 1` is stored as a bit mask
/// of its values on the standard-form rows. Its kernel `D` is generated by the
/// rows with `phi = 0` and `r_i + r_p` for the others, `p` the lowest set bit.
/// `y_i` with `<y_i, r_j> = 2^{m-1} delta_ij` give `w = sum_{phi_i = 1} y_i`,
/// which lies in `D^⊥` but neither in `D` nor in `D + ku`.
pub struct Undoubler {
    sf: StandardForm,
    ku: ZVector,
    ku_odd: u64,
    basis: Vec<ZVector>,
}

impl Undoubler {
    pub fn new(sf: &StandardForm, ku: &ZVector) -> Result<Undoubler> {
        let modulus = sf.modulus();
        let m = modulus.m().ok_or(Error::NotPowerOfTwo(modulus.two_k()))?;
        if m < 2 {
            return Err(Error::Domain("undoubling needs m >= 2".into()));
        }
        if ku.modulus() != modulus || ku.len() != sf.len() {
            return Err(Error::DimensionMismatch { expected: sf.len(), found: ku.len() });
        }
        check_shape(ku)?;
        let Some(ku_coeffs) = sf.coefficients(ku)? else {
            return Err(Error::Precondition("ku is not a codeword of the doubled code".into()));
        };
        let rows = sf.rows();
        let s = rows.len();
        if s > 63 {
            return Err(Error::Domain("too many generators to enumerate homomorphisms".into()));
        }
        let n = sf.len();
        let half = 1u32 << (m - 1);

        // the y_i live in (2 C~)^⊥, where every <y, r_j> is 0 or 2^{m-1}
        let twice = standardize(&GeneratorMatrix::new(modulus, n, rows.iter().map(|r| r.scale(2)).collect())?)?;
        let gens = dual(&twice)?.rows().to_vec();
        let mut system = alloc::vec![BitVec::zeros(gens.len()); s];
        for (t, y) in gens.iter().enumerate() {
            for (j, r) in rows.iter().enumerate() {
                let ip = y.dot_unchecked(r) as u32;
                debug_assert!(ip % half == 0);
                if ip != 0 {
                    system[j].set(t, true);
                }
            }
        }
        let mut basis = Vec::with_capacity(s);
        for i in 0..s {
            let rhs: Vec<bool> = (0..s).map(|j| j == i).collect();
            let sol = solve(&system, &rhs, gens.len()).ok_or(Error::Internal("dual basis of the doubled code not found"))?;
            let mut y = ZVector::zero(modulus, n)?;
            for t in sol.particular.ones() {
                y.add_assign_unchecked(&gens[t]);
            }
            basis.push(y);
        }
        let ku_odd = ku_coeffs.iter().enumerate().fold(0, |acc, (i, &c)| acc | ((c as u64 & 1) << i));
        Ok(Undoubler { sf: sf.clone(), ku: ku.clone(), ku_odd, basis })
    }

    /// Number of homomorphisms with `phi(ku) = 1`.
    pub fn subgroup_count(&self) -> u64 {
        1u64 << (self.sf.rows().len() - 1)
    }

    /// The homomorphism that vanishes on every row but the last one `ku` is odd on.
    pub fn default_phi(&self) -> u64 {
        1u64 << (63 - self.ku_odd.leading_zeros())
    }

    pub fn is_admissible(&self, phi: u64) -> bool {
        phi >> self.sf.rows().len() == 0 && (phi & self.ku_odd).count_ones() % 2 == 1
    }

    /// Generators of the kernel `D` of `phi`.
    pub fn subcode_rows(&self, phi: u64) -> Vec<ZVector> {
        let rows = self.sf.rows();
        let p = phi.trailing_zeros() as usize;
        rows.iter()
            .enumerate()
            .map(|(i, r)| {
                if phi >> i & 1 == 1 {
                    let mut x = rows[p].clone();
                    x.add_assign_unchecked(r);
                    x
                } else {
                    r.clone()
                }
            })
            .collect()
    }

    /// Type II codes `D + <w'>` of type `target`, `w'` in `{w, w + ku}`.
    pub fn sources(&self, phi: u64, target: &TypeProfile) -> Result<Vec<StandardForm>> {
        if !self.is_admissible(phi) {
            return Err(Error::Domain("homomorphism does not separate ku".into()));
        }
        let modulus = self.sf.modulus();
        let n = self.sf.len();
        let four_k = 2 * modulus.two_k() as u64;
        let d_rows = self.subcode_rows(phi);
        let mut w = ZVector::zero(modulus, n)?;
        for (i, y) in self.basis.iter().enumerate() {
            if phi >> i & 1 == 1 {
                w.add_assign_unchecked(y);
            }
        }
        let mut out = Vec::new();
        for candidate in [w.clone(), w.checked_add(&self.ku)?] {
            if candidate.dot_unchecked(&candidate) != 0 || candidate.euclidean_weight() % four_k != 0 {
                continue;
            }
            let mut c_rows = d_rows.clone();
            c_rows.push(candidate);
            let c = standardize(&GeneratorMatrix::new(modulus, n, c_rows)?)?;
            if c.profile() == target && certify_type_ii(&c).is_valid() {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Sources over every admissible homomorphism.
    pub fn all_sources(&self, target: &TypeProfile) -> Result<BTreeSet<StandardForm>> {
        let mut found = BTreeSet::new();
        for phi in 1u64..(1 << self.sf.rows().len()) {
            if self.is_admissible(phi) {
                found.extend(self.sources(phi, target)?);
            }
        }
        Ok(found)
    }
}

/// Sources of `sf` with `C_0` spanned by the standard-form rows other than the `ku` row.
pub fn undouble(sf: &StandardForm, ku: &ZVector, target: &TypeProfile) -> Result<BTreeSet<StandardForm>> {
    let u = Undoubler::new(sf, ku)?;
    Ok(u.sources(u.default_phi(), target)?.into_iter().collect())
}

/// Sources of `sf` over every index-2 subcode not containing `ku`.
pub fn undouble_all(sf: &StandardForm, ku: &ZVector, target: &TypeProfile) -> Result<BTreeSet<StandardForm>> {
    Undoubler::new(sf, ku)?.all_sources(target)
}

/// Codes in every set; used to single out a common source of several doubles.
pub fn common_sources(sets: &[BTreeSet<StandardForm>]) -> BTreeSet<StandardForm> {
    let Some((first, rest)) = sets.split_first() else { return BTreeSet::new() };
    first.iter().filter(|c| rest.iter().all(|s| s.contains(*c))).cloned().collect()
}

/// Whether generators over any `Z_2k` give a Type II code of the given size.
pub fn is_type_ii_general(g: &GeneratorMatrix, size: u128) -> bool {
    is_self_dual_with_size(g, size) && crate::duality::certify_type_ii_generators(g, size).is_valid()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Modulus;

    fn z(q: u32, c: &[i64]) -> ZVector {
        ZVector::new(Modulus::new(q).unwrap(), c.iter().copied()).unwrap()
    }

    #[test]
    fn shape_and_parity_rules() {
        assert!(matches!(check_shape(&z(6, &[3, 3, 0, 0])), Err(Error::Doubling(DoublingRejection::Parity { k: 3, count: 2 }))));
        assert!(check_shape(&z(6, &[3, 3, 3, 3])).is_ok());
        assert!(matches!(check_shape(&z(4, &[2, 0, 0])), Err(Error::Doubling(DoublingRejection::Parity { .. }))));
        assert!(check_shape(&z(8, &[4, 0, 0])).is_ok());
        assert!(matches!(
            check_shape(&z(8, &[4, 2, 0])),
            Err(Error::Doubling(DoublingRejection::NotZeroOrK { position: 2, value: 2 }))
        ));
        assert!(matches!(check_shape(&z(8, &[0, 0])), Err(Error::Doubling(DoublingRejection::InCode))));
    }

    fn k8_and_vector() -> (StandardForm, DoublingVector) {
        let c = crate::seeds::k8(7).unwrap();
        let z8 = c.modulus();
        for a in 5..=8 {
            for b in a + 1..=8 {
                let ku = ZVector::indicator(z8, 8, &[a, b], 4).unwrap();
                if let Ok(dv) = validate_doubling_vector(&c, &ku, false) {
                    return (c, dv);
                }
            }
        }
        panic!("no tail pair outside K8");
    }

    fn members(sf: &StandardForm) -> BTreeSet<ZVector> {
        crate::enumerate::CodewordIter::new(sf, 1 << 20).unwrap().collect()
    }

    #[test]
    fn k8_doubles_to_type_311() {
        let (c, dv) = k8_and_vector();
        let res = double_code(&c, &dv, None).unwrap();
        assert_eq!(res.doubled.profile().ks, [3, 1, 1]);
        assert_eq!(res.doubled.size().unwrap(), c.size().unwrap());
        assert!(members(&res.doubled).iter().all(|v| v.euclidean_weight() % 16 == 0));
        assert_eq!(members(&res.subcode_c0), orthogonal_subcode_by_filter(&c, dv.vector(), 1 << 20).unwrap());
    }

    #[test]
    fn pivot_choice_does_not_matter() {
        let (c, dv) = k8_and_vector();
        let odd: Vec<usize> = (0..c.rows().len()).filter(|&i| c.rows()[i].dot_unchecked(dv.vector()) != 0).collect();
        let first = double_code(&c, &dv, None).unwrap().doubled;
        for p in odd {
            assert_eq!(double_code(&c, &dv, Some(p)).unwrap().doubled, first);
        }
        let even = (0..c.rows().len()).find(|&i| c.rows()[i].dot_unchecked(dv.vector()) == 0);
        if let Some(p) = even {
            assert!(double_code(&c, &dv, Some(p)).is_err());
        }
    }

    #[test]
    fn undouble_recovers_k8() {
        let (c, dv) = k8_and_vector();
        let doubled = double_code(&c, &dv, None).unwrap().doubled;
        let found = undouble_all(&doubled, dv.vector(), c.profile()).unwrap();
        assert!(found.contains(&c));
        assert!(undouble(&doubled, dv.vector(), c.profile()).unwrap().is_subset(&found));
        for x in &found {
            assert_eq!(&double_code(x, &validate_doubling_vector(x, dv.vector(), false).unwrap(), None).unwrap().doubled, &doubled);
        }
    }

    #[test]
    fn normalization_clears_pivots() {
        let (c, dv) = k8_and_vector();
        let shifted = dv.vector().checked_add(&c.rows()[0].scale(4)).unwrap();
        assert!(matches!(
            double_code(&c, &validate_doubling_vector(&c, &shifted, false).unwrap(), None),
            Err(Error::Doubling(DoublingRejection::NotNormalized))
        ));
        let normalized = validate_doubling_vector(&c, &shifted, true).unwrap();
        assert!(normalized.vector().coords()[..4].iter().all(|&x| x == 0));
        let a = double_code(&c, &normalized, None).unwrap().doubled;
        assert_eq!(a.profile().ks, [3, 1, 1]);
    }

    #[test]
    fn rejects_codewords() {
        let (c, _) = k8_and_vector();
        let inside = c.rows()[1].scale(4);
        assert!(matches!(validate_doubling_vector(&c, &inside, false), Err(Error::Doubling(DoublingRejection::InCode))));
    }

    fn span(g: &GeneratorMatrix) -> BTreeSet<ZVector> {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![ZVector::zero(g.modulus(), g.len()).unwrap()];
        while let Some(v) = stack.pop() {
            if seen.insert(v.clone()) {
                stack.extend(g.rows().iter().map(|r| v.checked_add(r).unwrap()));
            }
        }
        seen
    }

    #[test]
    fn general_doubling_over_z6() {
        // 3 * (binary self-dual part) + 2 * (two tetracodes)
        let z6 = Modulus::new(6).unwrap();
        let mut rows = alloc::vec![];
        for i in 0..4 {
            let mut c = [0i64; 8];
            c[2 * i] = 3;
            c[2 * i + 1] = 3;
            rows.push(z(6, &c));
        }
        for off in [0, 4] {
            for t in [[1i64, 1, 1, 0], [0, 1, 2, 1]] {
                let mut c = [0i64; 8];
                for (j, x) in t.iter().enumerate() {
                    c[off + j] = 2 * x;
                }
                rows.push(z(6, &c));
            }
        }
        let g = GeneratorMatrix::new(z6, 8, rows).unwrap();
        let c = span(&g);
        assert_eq!(c.len(), 1296);
        assert!(is_self_dual_with_size(&g, 1296));

        assert!(matches!(
            validate_doubling_vector_general(&g, &z(6, &[3, 3, 0, 0, 0, 0, 0, 0])),
            Err(Error::Doubling(DoublingRejection::Parity { .. }))
        ));
        assert!(matches!(
            validate_doubling_vector_general(&g, &z(6, &[3, 3, 3, 3, 0, 0, 0, 0])),
            Err(Error::Doubling(DoublingRejection::InCode))
        ));
        let ku = z(6, &[3, 0, 3, 0, 3, 0, 3, 0]);
        let dv = validate_doubling_vector_general(&g, &ku).unwrap();
        let (c0, d) = double_generators(&g, &dv).unwrap();
        let c0_set = span(&c0);
        let filtered: BTreeSet<ZVector> = c.iter().filter(|v| v.dot_unchecked(&ku) == 0).cloned().collect();
        assert_eq!(c0_set, filtered);
        let doubled = span(&d);
        assert_eq!(doubled.len(), c.len());
        assert!(doubled.contains(&ku));
        assert!(is_self_dual_with_size(&d, 1296));
    }

    #[test]
    fn doubled_profiles() {
        assert_eq!(expected_doubled_profile(&TypeProfile::new(alloc::vec![4, 0, 0])).unwrap().ks, [3, 1, 1]);
        assert_eq!(expected_doubled_profile(&TypeProfile::new(alloc::vec![16, 0, 0])).unwrap().ks, [15, 1, 1]);
        assert_eq!(expected_doubled_profile(&TypeProfile::new(alloc::vec![4, 0])).unwrap().ks, [3, 2]);
        assert_eq!(expected_doubled_profile(&TypeProfile::new(alloc::vec![4, 0, 0, 0])).unwrap().ks, [3, 1, 0, 1]);
        assert!(expected_doubled_profile(&TypeProfile::new(alloc::vec![0, 2])).is_err());
    }
}
