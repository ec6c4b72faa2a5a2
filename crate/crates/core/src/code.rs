//! Codes given by generator matrices, and their standard forms over `Z_{2^m}`.
//!
//! A [`StandardForm`] keeps its rows in the original coordinates together with
//! the pivot of every row. Row `i` has the value `2^level` at its pivot column,
//! zeros at the pivot columns of all earlier rows, and every other entry a
//! multiple of `2^level`. Entries at the pivot column of a later row of level
//! `l` are reduced into `[0, 2^l)`. With leftmost-column, topmost-row pivot
//! choice this form is unique, so two codes are equal exactly when their
//! standard forms are equal.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ring::{Modulus, ZVector, MAX_LEN};

/// Rows spanning a code. Rows may be redundant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    modulus: Modulus,
    len: usize,
    rows: Vec<ZVector>,
}

impl GeneratorMatrix {
    pub fn new(modulus: Modulus, len: usize, rows: Vec<ZVector>) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::LengthTooLarge(len));
        }
        for r in &rows {
            if r.modulus() != modulus {
                return Err(Error::ModulusMismatch { expected: modulus.two_k(), found: r.modulus().two_k() });
            }
            if r.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: r.len() });
            }
        }
        Ok(GeneratorMatrix { modulus, len, rows })
    }

    /// Builds from integer rows; every row must have `len` entries.
    pub fn from_rows<R, I>(modulus: Modulus, len: usize, rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = I>,
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let rows = rows.into_iter().map(|r| ZVector::new(modulus, r)).collect::<Result<Vec<_>>>()?;
        GeneratorMatrix::new(modulus, len, rows)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> &[ZVector] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn into_rows(self) -> Vec<ZVector> {
        self.rows
    }
}

/// The type `(k_1, ..., k_m)` of a code over `Z_{2^m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeProfile {
    pub ks: Vec<usize>,
}

impl TypeProfile {
    pub fn new(ks: Vec<usize>) -> Self {
        TypeProfile { ks }
    }

    pub fn m(&self) -> u32 {
        self.ks.len() as u32
    }

    pub fn rank(&self) -> usize {
        self.ks.iter().sum()
    }

    /// `log2` of `prod_j (2^{m-j+1})^{k_j}`.
    pub fn log2_size(&self) -> u32 {
        let m = self.ks.len();
        self.ks.iter().enumerate().map(|(j, &k)| ((m - j) * k) as u32).sum()
    }
}

impl core::fmt::Display for TypeProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.ks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// Number of codewords of a code with this profile over `modulus`.
pub fn code_size(profile: &TypeProfile, modulus: Modulus) -> Result<u128> {
    let m = modulus.require_m()?;
    if profile.m() != m {
        return Err(Error::Domain(alloc::format!("profile {profile} does not have {m} entries")));
    }
    let bits = profile.log2_size();
    if bits >= 128 {
        return Err(Error::Capacity { words: u128::MAX, budget: u128::MAX });
    }
    Ok(1u128 << bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pivot {
    /// 0-based column.
    pub col: usize,
    /// The pivot entry is `2^level`.
    pub level: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardForm {
    modulus: Modulus,
    m: u32,
    len: usize,
    rows: Vec<ZVector>,
    pivots: Vec<Pivot>,
    profile: TypeProfile,
}

impl PartialOrd for StandardForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StandardForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.len, &self.pivots, &self.rows).cmp(&(other.modulus, other.len, &other.pivots, &other.rows))
    }
}

#[inline]
fn valuation(x: u8, m: u32) -> u32 {
    if x == 0 {
        m
    } else {
        x.trailing_zeros().min(m)
    }
}

/// Inverse of an odd residue modulo `2^m` (Newton iteration).
#[inline]
fn odd_inverse(u: u32, m: u32) -> u32 {
    debug_assert!(u % 2 == 1);
    let mask = (1u32 << m) - 1;
    let mut x = u;
    for _ in 0..4 {
        x = x.wrapping_mul(2u32.wrapping_sub(u.wrapping_mul(x)));
    }
    x & mask
}

/// Gaussian elimination over `Z_{2^m}`: unit pivots first, then pivots of
/// value 2, and so on; leftmost column, then topmost row.
pub fn standardize(g: &GeneratorMatrix) -> Result<StandardForm> {
    let modulus = g.modulus();
    let m = modulus.require_m()?;
    let q = modulus.two_k();
    let n = g.len();
    let mut remaining: Vec<ZVector> = g.rows().iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut rows: Vec<ZVector> = Vec::new();
    let mut pivots: Vec<Pivot> = Vec::new();
    let mut is_pivot = alloc::vec![false; n];
    let mut ks = alloc::vec![0usize; m as usize];

    for level in 0..m {
        loop {
            let mut found = None;
            'cols: for c in 0..n {
                if is_pivot[c] {
                    continue;
                }
                for (ri, r) in remaining.iter().enumerate() {
                    if valuation(r.coords()[c], m) == level {
                        found = Some((c, ri));
                        break 'cols;
                    }
                }
            }
            let Some((c, ri)) = found else { break };
            let mut row = remaining.remove(ri);
            let unit = (row.coords()[c] >> level) as u32;
            let inv = odd_inverse(unit, m);
            if inv != 1 {
                row = row.scale(inv as i64);
            }
            debug_assert_eq!(row.coords()[c] as u32, 1 << level);
            remaining.retain_mut(|s| {
                let qf = (s.coords()[c] >> level) as u32;
                if qf != 0 {
                    s.add_scaled_unchecked(&row, q - qf);
                }
                !s.is_zero()
            });
            for prev in rows.iter_mut() {
                let qf = (prev.coords()[c] >> level) as u32;
                if qf != 0 {
                    prev.add_scaled_unchecked(&row, q - qf);
                }
            }
            is_pivot[c] = true;
            pivots.push(Pivot { col: c, level });
            rows.push(row);
            ks[level as usize] += 1;
        }
    }
    debug_assert!(remaining.is_empty());
    Ok(StandardForm { modulus, m, len: n, rows, pivots, profile: TypeProfile::new(ks) })
}

impl StandardForm {
    /// The zero code of length `len` over `Z_{2^m}`.
    pub fn zero(modulus: Modulus, len: usize) -> Result<Self> {
        standardize(&GeneratorMatrix::new(modulus, len, Vec::new())?)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Rows in the original coordinates.
    pub fn rows(&self) -> &[ZVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    pub fn profile(&self) -> &TypeProfile {
        &self.profile
    }

    pub fn log2_size(&self) -> u32 {
        self.profile.log2_size()
    }

    pub fn size(&self) -> Result<u128> {
        code_size(&self.profile, self.modulus)
    }

    /// Additive order of each row, `2^{m - level}`.
    pub fn row_orders(&self) -> Vec<u32> {
        self.pivots.iter().map(|p| 1 << (self.m - p.level)).collect()
    }

    pub fn generator_matrix(&self) -> GeneratorMatrix {
        GeneratorMatrix { modulus: self.modulus, len: self.len, rows: self.rows.clone() }
    }

    /// 0-based column order of the block layout: pivot columns in row order,
    /// then the remaining columns ascending.
    fn column_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.pivots.iter().map(|p| p.col).collect();
        let mut seen = alloc::vec![false; self.len];
        for &c in &order {
            seen[c] = true;
        }
        order.extend((0..self.len).filter(|&c| !seen[c]));
        order
    }

    /// Standardized column `t` (1-based) comes from original column `perm[t-1]` (1-based).
    pub fn permutation(&self) -> Vec<usize> {
        self.column_order().into_iter().map(|c| c + 1).collect()
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.column_order().iter().enumerate().all(|(t, &c)| t == c)
    }

    /// The rows with columns rearranged into the block layout.
    pub fn standardized_rows(&self) -> Vec<ZVector> {
        let order = self.column_order();
        self.rows.iter().map(|r| r.permuted(&order)).collect()
    }

    /// Free code: every pivot is a unit.
    pub fn is_free(&self) -> bool {
        self.pivots.iter().all(|p| p.level == 0)
    }

    fn check_vector(&self, x: &ZVector) -> Result<()> {
        if x.modulus() != self.modulus {
            return Err(Error::ModulusMismatch { expected: self.modulus.two_k(), found: x.modulus().two_k() });
        }
        if x.len() != self.len {
            return Err(Error::DimensionMismatch { expected: self.len, found: x.len() });
        }
        Ok(())
    }

    /// Coefficients `a_i` (with `a_i < order_i`) such that `x = sum a_i row_i`, if `x` is a codeword.
    pub fn coefficients(&self, x: &ZVector) -> Result<Option<Vec<u32>>> {
        self.check_vector(x)?;
        let q = self.modulus.two_k();
        let mut rest = x.clone();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            let v = rest.coords()[p.col];
            if valuation(v, self.m) < p.level {
                return Ok(None);
            }
            let a = (v >> p.level) as u32;
            if a != 0 {
                rest.add_scaled_unchecked(row, q - a);
            }
            coeffs.push(a);
        }
        Ok(rest.is_zero().then_some(coeffs))
    }

    pub fn contains(&self, x: &ZVector) -> Result<bool> {
        Ok(self.coefficients(x)?.is_some())
    }

    /// `sum coeffs[i] * row_i`.
    pub fn codeword(&self, coeffs: &[u32]) -> Result<ZVector> {
        if coeffs.len() != self.rows.len() {
            return Err(Error::DimensionMismatch { expected: self.rows.len(), found: coeffs.len() });
        }
        let mut acc = ZVector::zero(self.modulus, self.len)?;
        for (row, &a) in self.rows.iter().zip(coeffs) {
            acc.add_scaled_unchecked(row, a);
        }
        Ok(acc)
    }

    /// Applies a coordinate permutation: output position `t` takes input
    /// position `perm[t]` (1-based), then re-standardizes.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<StandardForm> {
        let order = validate_permutation(perm, self.len)?;
        let rows = self.rows.iter().map(|r| r.permuted(&order)).collect();
        standardize(&GeneratorMatrix::new(self.modulus, self.len, rows)?)
    }
}

pub(crate) fn validate_permutation(perm: &[usize], len: usize) -> Result<Vec<usize>> {
    if perm.len() != len {
        return Err(Error::DimensionMismatch { expected: len, found: perm.len() });
    }
    let mut seen = alloc::vec![false; len];
    let mut order = Vec::with_capacity(len);
    for &p in perm {
        if p == 0 || p > len || seen[p - 1] {
            return Err(Error::Domain(alloc::format!("not a permutation of 1..={len}")));
        }
        seen[p - 1] = true;
        order.push(p - 1);
    }
    Ok(order)
}

/// The `Z_{2^j}`-residue code `{x mod 2^j : x in C}`.
pub fn residue_code(sf: &StandardForm, j: u32) -> Result<StandardForm> {
    if j == 0 || j >= sf.m() {
        return Err(Error::Domain(alloc::format!("residue level {j} outside 1..{}", sf.m())));
    }
    let target = Modulus::power_of_two(j)?;
    let rows = sf.rows().iter().map(|r| r.reduce(target)).collect::<Result<Vec<_>>>()?;
    standardize(&GeneratorMatrix::new(target, sf.len(), rows)?)
}

/// `C^⊥`.
///
/// Column operations turn the block layout into `[diag(2^{level_i}) | 0]`;
/// the kernel of that diagonal system is read off and mapped back through
/// the recorded column operations.
pub fn dual(sf: &StandardForm) -> Result<StandardForm> {
    let m = sf.m();
    let q = sf.modulus().two_k();
    let n = sf.len();
    let r = sf.rows().len();
    let order = sf.column_order();
    let mut s: Vec<Vec<u32>> = sf
        .standardized_rows()
        .iter()
        .map(|row| row.coords().iter().map(|&c| c as u32).collect())
        .collect();
    // v[row][col]; x = V y maps kernel coordinates back.
    let mut v: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
    // Last row first: column i is zero below row i, so clearing row i never
    // disturbs rows that are already diagonal.
    for i in (0..r).rev() {
        let level = sf.pivots()[i].level;
        for c in (i + 1)..n {
            let entry = s[i][c];
            if entry == 0 {
                continue;
            }
            debug_assert_eq!(entry % (1 << level), 0);
            let f = entry >> level;
            for row in s.iter_mut() {
                row[c] = (row[c] + (q - f) * row[i]) % q;
            }
            for row in v.iter_mut() {
                row[c] = (row[c] + (q - f) * row[i]) % q;
            }
        }
    }
    let mut gens = Vec::new();
    for i in 0..n {
        let scale = if i < r {
            let level = sf.pivots()[i].level;
            if level == 0 {
                continue;
            }
            1u32 << (m - level)
        } else {
            1
        };
        let mut x = alloc::vec![0u8; n];
        for (t, &c) in order.iter().enumerate() {
            x[c] = ((v[t][i] * scale) % q) as u8;
        }
        gens.push(ZVector::from_reduced(sf.modulus(), x));
    }
    standardize(&GeneratorMatrix::new(sf.modulus(), n, gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn z8() -> Modulus {
        Modulus::new(8).unwrap()
    }

    fn all_vectors(modulus: Modulus, n: usize) -> Vec<ZVector> {
        let q = modulus.two_k() as usize;
        (0..q.pow(n as u32))
            .map(|mut idx| {
                let c: Vec<i64> = (0..n)
                    .map(|_| {
                        let d = idx % q;
                        idx /= q;
                        d as i64
                    })
                    .collect();
                ZVector::new(modulus, c).unwrap()
            })
            .collect()
    }

    /// Closure of the generators under addition; test-only oracle.
    fn span_by_closure(g: &GeneratorMatrix) -> BTreeSet<ZVector> {
        let mut set = BTreeSet::new();
        set.insert(ZVector::zero(g.modulus(), g.len()).unwrap());
        loop {
            let mut added = false;
            let current: Vec<ZVector> = set.iter().cloned().collect();
            for x in &current {
                for r in g.rows() {
                    let y = x.checked_add(r).unwrap();
                    if set.insert(y) {
                        added = true;
                    }
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn already_standard_matrix() {
        let g = GeneratorMatrix::from_rows(z8(), 4, [[1i64, 2, 3, 4], [0, 2, 4, 6]]).unwrap();
        let sf = standardize(&g).unwrap();
        assert_eq!(sf.profile().ks, vec![1, 1, 0]);
        assert!(sf.is_identity_permutation());
        assert_eq!(sf.rows()[0].coords(), &[1, 0, 7, 6]);
        assert_eq!(sf.rows()[1].coords(), &[0, 2, 4, 6]);
        assert_eq!(span_by_closure(&g), span_by_closure(&sf.generator_matrix()));
    }

    #[test]
    fn free_code_is_fixed_point() {
        let g = GeneratorMatrix::from_rows(
            z8(),
            8,
            [[1i64, 0, 0, 0, 3, 1, 2, 7], [0, 1, 0, 0, 5, 6, 1, 1], [0, 0, 1, 0, 0, 0, 4, 2], [0, 0, 0, 1, 1, 1, 1, 1]],
        )
        .unwrap();
        let sf = standardize(&g).unwrap();
        assert_eq!(sf.profile().ks, vec![4, 0, 0]);
        assert!(sf.is_identity_permutation());
        assert_eq!(sf.rows(), g.rows());
        assert_eq!(standardize(&sf.generator_matrix()).unwrap(), sf);
    }

    #[test]
    fn sizes() {
        let m = z8();
        assert_eq!(code_size(&TypeProfile::new(vec![16, 0, 0]), m).unwrap(), 1u128 << 48);
        assert_eq!(code_size(&TypeProfile::new(vec![15, 1, 1]), m).unwrap(), 1u128 << 48);
        assert_eq!(code_size(&TypeProfile::new(vec![0, 0, 0]), m).unwrap(), 1);
        assert!(code_size(&TypeProfile::new(vec![1, 1]), m).is_err());
        assert!(code_size(&TypeProfile::new(vec![1]), Modulus::new(6).unwrap()).is_err());
    }

    #[test]
    fn membership() {
        let g = GeneratorMatrix::from_rows(z8(), 4, [[2i64, 2, 2, 2]]).unwrap();
        let sf = standardize(&g).unwrap();
        assert!(sf.contains(&ZVector::zero(z8(), 4).unwrap()).unwrap());
        assert!(sf.contains(&ZVector::new(z8(), [4i64, 4, 4, 4]).unwrap()).unwrap());
        assert!(!sf.contains(&ZVector::new(z8(), [1i64, 0, 0, 0]).unwrap()).unwrap());
        assert!(sf.contains(&ZVector::new(z8(), [1i64, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn dual_of_small_code_matches_brute_force() {
        let g = GeneratorMatrix::from_rows(z8(), 2, [[2i64, 2]]).unwrap();
        let sf = standardize(&g).unwrap();
        assert_eq!(sf.size().unwrap(), 4);
        let brute: BTreeSet<ZVector> = all_vectors(z8(), 2)
            .into_iter()
            .filter(|x| g.rows().iter().all(|r| x.inner_product(r).unwrap() == 0))
            .collect();
        assert_eq!(brute.len(), 16);
        let d = dual(&sf).unwrap();
        assert_eq!(d.size().unwrap(), 16);
        assert_eq!(span_by_closure(&d.generator_matrix()), brute);
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let rows: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| (i == j) as i64).collect()).collect();
        let sf = standardize(&GeneratorMatrix::from_rows(z8(), 3, rows).unwrap()).unwrap();
        let d = dual(&sf).unwrap();
        assert_eq!(d.rows().len(), 0);
        assert_eq!(dual(&d).unwrap(), sf);
    }

    #[test]
    fn residues() {
        let g = GeneratorMatrix::from_rows(z8(), 4, [[1i64, 0, 5, 6], [0, 1, 7, 2]]).unwrap();
        let sf = standardize(&g).unwrap();
        let r4 = residue_code(&sf, 2).unwrap();
        assert_eq!(r4.profile().ks, vec![2, 0]);
        assert_eq!(r4.rows()[0].coords(), &[1, 0, 1, 2]);
        let r2 = residue_code(&sf, 1).unwrap();
        assert_eq!(r2.modulus().two_k(), 2);
        assert!(residue_code(&sf, 3).is_err());
        assert!(residue_code(&sf, 0).is_err());
        let zero = StandardForm::zero(z8(), 4).unwrap();
        assert_eq!(residue_code(&zero, 1).unwrap().rows().len(), 0);
    }

    #[test]
    fn permutation_and_layout() {
        // the unit sits in column 3 and the level-1 pivot in column 2
        let g = GeneratorMatrix::from_rows(z8(), 3, [[2i64, 4, 1], [0, 2, 0]]).unwrap();
        let sf = standardize(&g).unwrap();
        assert_eq!(sf.permutation(), vec![3, 2, 1]);
        assert_eq!(sf.profile().ks, vec![1, 1, 0]);
        let layout = sf.standardized_rows();
        assert_eq!(layout[0].coords()[0], 1);
        assert_eq!(layout[1].coords()[1], 2);
        assert_eq!(layout[1].coords()[0], 0);
    }

    #[test]
    fn odd_inverse_is_inverse() {
        for m in 1..=8 {
            for u in (1..(1u32 << m)).step_by(2) {
                assert_eq!((u * odd_inverse(u, m)) % (1 << m), 1);
            }
        }
    }
}
