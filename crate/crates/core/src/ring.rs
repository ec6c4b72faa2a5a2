//! Vectors over `Z_2k` and the coordinate statistics used throughout the crate.
//!
//! Positions are 1-based wherever they cross the public API.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Longest supported vector.
pub const MAX_LEN: usize = 64;

/// The ring `Z_2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    two_k: u32,
}

impl Modulus {
    /// `two_k` must be even and at most 256 so residues fit in a byte.
    ///
    /// `Z_2` is accepted because binary residue codes live there.
    pub fn new(two_k: u32) -> Result<Self> {
        if two_k < 2 || two_k % 2 != 0 || two_k > 256 {
            return Err(Error::InvalidModulus(two_k));
        }
        Ok(Modulus { two_k })
    }

    /// `Z_{2^m}`.
    pub fn power_of_two(m: u32) -> Result<Self> {
        if m == 0 || m > 8 {
            return Err(Error::InvalidModulus(1u32.checked_shl(m).unwrap_or(0)));
        }
        Modulus::new(1 << m)
    }

    pub fn two_k(self) -> u32 {
        self.two_k
    }

    pub fn k(self) -> u32 {
        self.two_k / 2
    }

    /// `m` with `2^m = 2k`, when one exists.
    pub fn m(self) -> Option<u32> {
        self.two_k.is_power_of_two().then(|| self.two_k.trailing_zeros())
    }

    pub(crate) fn require_m(self) -> Result<u32> {
        self.m().ok_or(Error::NotPowerOfTwo(self.two_k))
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.two_k as i64) as u8
    }

    /// `min(x^2, (2k - x)^2)` for a residue `x`.
    #[inline]
    pub fn euclidean_weight_of(self, x: u8) -> u64 {
        let x = x as u64;
        let y = self.two_k as u64 - x;
        (x * x).min(y * y)
    }

    pub fn divides(self, other: Modulus) -> bool {
        other.two_k % self.two_k == 0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}", self.two_k)
    }
}

/// A vector of residues modulo `2k`, length at most [`MAX_LEN`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZVector {
    modulus: Modulus,
    coords: Vec<u8>,
}

impl fmt::Debug for ZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.modulus)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl ZVector {
    /// Builds a vector, reducing every coordinate modulo `2k`.
    pub fn new<I>(modulus: Modulus, coords: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let coords: Vec<u8> = coords.into_iter().map(|x| modulus.reduce(x.into())).collect();
        if coords.len() > MAX_LEN {
            return Err(Error::LengthTooLarge(coords.len()));
        }
        Ok(ZVector { modulus, coords })
    }

    pub fn zero(modulus: Modulus, len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::LengthTooLarge(len));
        }
        Ok(ZVector { modulus, coords: alloc::vec![0; len] })
    }

    /// Vector with value `value` on the given 1-based positions and 0 elsewhere.
    pub fn indicator(modulus: Modulus, len: usize, positions: &[usize], value: u32) -> Result<Self> {
        let mut v = ZVector::zero(modulus, len)?;
        for &p in positions {
            if p == 0 || p > len {
                return Err(Error::Domain(alloc::format!("position {p} outside 1..={len}")));
            }
            v.coords[p - 1] = modulus.reduce(value as i64);
        }
        Ok(v)
    }

    /// Caller guarantees every coordinate is already reduced and `len <= MAX_LEN`.
    pub(crate) fn from_reduced(modulus: Modulus, coords: Vec<u8>) -> Self {
        debug_assert!(coords.len() <= MAX_LEN);
        debug_assert!(coords.iter().all(|&c| (c as u32) < modulus.two_k()));
        ZVector { modulus, coords }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    /// Coordinate at a 1-based position.
    pub fn at(&self, position: usize) -> u8 {
        self.coords[position - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn euclidean_weight(&self) -> u64 {
        self.coords.iter().map(|&c| self.modulus.euclidean_weight_of(c)).sum()
    }

    pub fn hamming_weight(&self) -> u64 {
        self.coords.iter().filter(|&&c| c != 0).count() as u64
    }

    fn check_compatible(&self, other: &ZVector) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                expected: self.modulus.two_k(),
                found: other.modulus.two_k(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    pub fn inner_product(&self, other: &ZVector) -> Result<u8> {
        self.check_compatible(other)?;
        Ok(self.dot_unchecked(other))
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &ZVector) -> u8 {
        let s: u64 = self.coords.iter().zip(&other.coords).map(|(&a, &b)| a as u64 * b as u64).sum();
        (s % self.modulus.two_k() as u64) as u8
    }

    fn check_residue(&self, i: u32) -> Result<()> {
        if i >= self.modulus.two_k() {
            return Err(Error::Domain(alloc::format!("residue {i} outside {}", self.modulus)));
        }
        Ok(())
    }

    /// `n_i(x)`: how many coordinates equal `i`.
    pub fn count_occurrences(&self, i: u32) -> Result<usize> {
        self.check_residue(i)?;
        Ok(self.coords.iter().filter(|&&c| c as u32 == i).count())
    }

    /// `S_i(x)`: the 1-based positions holding `i`.
    pub fn support_of(&self, i: u32) -> Result<BTreeSet<usize>> {
        self.check_residue(i)?;
        Ok(self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as u32 == i)
            .map(|(p, _)| p + 1)
            .collect())
    }

    /// Coordinatewise reduction into a smaller ring.
    pub fn reduce(&self, new_modulus: Modulus) -> Result<ZVector> {
        if !new_modulus.divides(self.modulus) {
            return Err(Error::Domain(alloc::format!(
                "{new_modulus} does not divide {}",
                self.modulus
            )));
        }
        let q = new_modulus.two_k() as u8 as u32;
        Ok(ZVector {
            modulus: new_modulus,
            coords: self.coords.iter().map(|&c| (c as u32 % q) as u8).collect(),
        })
    }

    pub fn checked_add(&self, other: &ZVector) -> Result<ZVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    #[inline]
    pub(crate) fn add_assign_unchecked(&mut self, other: &ZVector) {
        let q = self.modulus.two_k();
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a = ((*a as u32 + b as u32) % q) as u8;
        }
    }

    #[inline]
    pub(crate) fn add_scaled_unchecked(&mut self, other: &ZVector, scale: u32) {
        let q = self.modulus.two_k();
        let s = scale % q;
        if s == 0 {
            return;
        }
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a = ((*a as u32 + s * b as u32) % q) as u8;
        }
    }

    pub fn scale(&self, c: i64) -> ZVector {
        let c = self.modulus.reduce(c) as u32;
        let q = self.modulus.two_k();
        ZVector {
            modulus: self.modulus,
            coords: self.coords.iter().map(|&x| ((x as u32 * c) % q) as u8).collect(),
        }
    }

    pub fn neg(&self) -> ZVector {
        self.scale(-1)
    }

    pub fn checked_sub(&self, other: &ZVector) -> Result<ZVector> {
        self.checked_add(&other.neg())
    }

    /// Reorders coordinates so that output position `t` holds input position `perm[t]` (both 0-based).
    pub(crate) fn permuted(&self, perm: &[usize]) -> ZVector {
        ZVector { modulus: self.modulus, coords: perm.iter().map(|&p| self.coords[p]).collect() }
    }
}

/// `sum coeffs[i] * rows[i]`.
pub fn vector_combine(coeffs: &[i64], rows: &[ZVector]) -> Result<ZVector> {
    if coeffs.len() != rows.len() {
        return Err(Error::DimensionMismatch { expected: rows.len(), found: coeffs.len() });
    }
    let first = rows.first().ok_or_else(|| Error::Domain("no rows to combine".into()))?;
    let mut acc = ZVector::zero(first.modulus(), first.len())?;
    for (&c, row) in coeffs.iter().zip(rows) {
        acc.check_compatible(row)?;
        acc.add_scaled_unchecked(row, first.modulus().reduce(c) as u32);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z8(c: &[i64]) -> ZVector {
        ZVector::new(Modulus::new(8).unwrap(), c.iter().copied()).unwrap()
    }

    fn g1_row17() -> ZVector {
        ZVector::indicator(Modulus::new(8).unwrap(), 32, &[17, 19, 21, 22], 4).unwrap()
    }

    #[test]
    fn modulus_fields() {
        let m = Modulus::new(8).unwrap();
        assert_eq!((m.two_k(), m.k(), m.m()), (8, 4, Some(3)));
        assert_eq!(Modulus::new(6).unwrap().m(), None);
        assert!(Modulus::new(7).is_err());
        assert!(Modulus::new(0).is_err());
        assert!(Modulus::new(258).is_err());
    }

    #[test]
    fn euclidean_weight_examples() {
        assert_eq!(ZVector::zero(Modulus::new(10).unwrap(), 9).unwrap().euclidean_weight(), 0);
        assert_eq!(z8(&[1, 2, 3, 4, 5, 6, 7, 0]).euclidean_weight(), 44);
        assert_eq!(g1_row17().euclidean_weight(), 64);
    }

    #[test]
    fn inner_product_examples() {
        let m = Modulus::new(8).unwrap();
        let x = ZVector::new(m, [1i64, 2, 3]).unwrap();
        let y = ZVector::new(m, [4i64, 5, 6]).unwrap();
        assert_eq!(x.inner_product(&y).unwrap(), 0);
        assert_eq!(x.inner_product(&ZVector::zero(m, 3).unwrap()).unwrap(), 0);
        let short = ZVector::new(m, [1i64, 2]).unwrap();
        assert!(matches!(x.inner_product(&short), Err(Error::DimensionMismatch { .. })));
        let other = ZVector::new(Modulus::new(4).unwrap(), [1i64, 2, 3]).unwrap();
        assert!(matches!(x.inner_product(&other), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn occurrences_and_supports() {
        let x = z8(&[1, 2, 3, 4, 5, 6, 7, 0]);
        assert_eq!(g1_row17().count_occurrences(4).unwrap(), 4);
        assert_eq!(ZVector::zero(Modulus::new(8).unwrap(), 32).unwrap().count_occurrences(0).unwrap(), 32);
        assert_eq!(x.count_occurrences(3).unwrap(), 1);
        assert!(x.count_occurrences(8).is_err());

        let s: Vec<usize> = g1_row17().support_of(4).unwrap().into_iter().collect();
        assert_eq!(s, vec![17, 19, 21, 22]);
        let s: Vec<usize> = ZVector::zero(Modulus::new(8).unwrap(), 4).unwrap().support_of(0).unwrap().into_iter().collect();
        assert_eq!(s, vec![1, 2, 3, 4]);
        let s: Vec<usize> = x.support_of(2).unwrap().into_iter().collect();
        assert_eq!(s, vec![2]);
        assert!(x.support_of(9).is_err());
    }

    #[test]
    fn reduction() {
        let x = z8(&[1, 2, 3, 4, 5, 6, 7, 0]);
        let m4 = Modulus::new(4).unwrap();
        let m2 = Modulus::new(2).unwrap();
        assert_eq!(x.reduce(m4).unwrap().coords(), &[1, 2, 3, 0, 1, 2, 3, 0]);
        assert_eq!(x.reduce(m2).unwrap().coords(), &[1, 0, 1, 0, 1, 0, 1, 0]);
        assert!(g1_row17().reduce(m4).unwrap().is_zero());
        assert!(x.reduce(Modulus::new(6).unwrap()).is_err());
    }

    #[test]
    fn combine() {
        let m = Modulus::new(8).unwrap();
        let r = ZVector::new(m, [1i64, 2, 3, 4]).unwrap();
        let s = ZVector::new(m, [7i64, 7, 0, 1]).unwrap();
        assert!(vector_combine(&[0, 0], &[r.clone(), s.clone()]).unwrap().is_zero());
        assert_eq!(vector_combine(&[1], &[r.clone()]).unwrap(), r);
        assert_eq!(vector_combine(&[2], &[r.clone()]).unwrap().coords(), &[2, 4, 6, 0]);
        assert!(matches!(vector_combine(&[1], &[r, s]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn length_limit() {
        let m = Modulus::new(4).unwrap();
        assert!(matches!(ZVector::zero(m, 65), Err(Error::LengthTooLarge(65))));
        assert!(ZVector::zero(m, 64).is_ok());
    }
}
