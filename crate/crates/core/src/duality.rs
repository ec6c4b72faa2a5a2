//! Self-orthogonality, self-duality and Type II certificates.
//!
//! A Type II certificate is read off the generators alone. If every pair of
//! generators is orthogonal and every generator has Euclidean weight divisible
//! by `4k`, then `wt(x + y) = wt(x) + wt(y) + 2<x, y> (mod 4k)` carries the
//! divisibility to every codeword, since `2<x, y>` vanishes modulo `4k`.

use alloc::string::String;

use crate::code::{GeneratorMatrix, StandardForm};
use crate::error::{Error, Result};
use crate::ring::{Modulus, ZVector};

fn rows_orthogonal(rows: &[ZVector]) -> Option<(usize, usize, u8)> {
    for i in 0..rows.len() {
        for j in i..rows.len() {
            let ip = rows[i].dot_unchecked(&rows[j]);
            if ip != 0 {
                return Some((i + 1, j + 1, ip));
            }
        }
    }
    None
}

/// Every pair of generator rows, including each row with itself, has inner product 0.
pub fn is_self_orthogonal(sf: &StandardForm) -> bool {
    rows_orthogonal(sf.rows()).is_none()
}

/// Self-orthogonal with `|C|^2 = (2^m)^n`.
pub fn is_self_dual(sf: &StandardForm) -> bool {
    is_self_orthogonal(sf) && has_self_dual_size(sf)
}

fn has_self_dual_size(sf: &StandardForm) -> bool {
    2 * sf.log2_size() as usize == sf.m() as usize * sf.len()
}

/// `size^2 = (2k)^n`, evaluated without overflow.
fn size_is_self_dual(modulus: Modulus, len: usize, size: u128) -> bool {
    // peel off one factor q for every two coordinates
    let q = modulus.two_k() as u128;
    let mut rest = size;
    let mut half = len;
    while half >= 2 && rest % q == 0 {
        rest /= q;
        half -= 2;
    }
    match half {
        0 => rest == 1,
        1 => rest * rest == q,
        _ => false,
    }
}

/// General moduli: the caller supplies `|C|`, since standard forms need `2^m`.
pub fn is_self_dual_with_size(g: &GeneratorMatrix, size: u128) -> bool {
    rows_orthogonal(g.rows()).is_none() && size_is_self_dual(g.modulus(), g.len(), size)
}

/// The first failing check, with 1-based row indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateWitness {
    RowWeight { row: usize, weight: u64 },
    InnerProduct { row_a: usize, row_b: usize, value: u8 },
    Size { log2_size: Option<u32>, size: Option<u128> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeIICertificate {
    pub pairwise_inner_products_zero: bool,
    pub row_weights_div_4k: bool,
    pub self_dual_size: bool,
    pub witness: Option<CertificateWitness>,
}

impl TypeIICertificate {
    pub fn is_valid(&self) -> bool {
        self.pairwise_inner_products_zero && self.row_weights_div_4k && self.self_dual_size
    }

    /// Every codeword weight is divisible by `4k`; self-duality not required.
    pub fn weights_divisible(&self) -> bool {
        self.pairwise_inner_products_zero && self.row_weights_div_4k
    }

    pub fn describe(&self) -> String {
        match &self.witness {
            None => "valid".into(),
            Some(CertificateWitness::RowWeight { row, weight }) => {
                alloc::format!("row {row} has Euclidean weight {weight}")
            }
            Some(CertificateWitness::InnerProduct { row_a, row_b, value }) => {
                alloc::format!("rows {row_a} and {row_b} have inner product {value}")
            }
            Some(CertificateWitness::Size { log2_size: Some(b), .. }) => {
                alloc::format!("code has 2^{b} codewords, not the self-dual size")
            }
            Some(CertificateWitness::Size { size, .. }) => {
                alloc::format!("code size {size:?} is not the self-dual size")
            }
        }
    }
}

fn certify_rows(modulus: Modulus, rows: &[ZVector], size_ok: bool, size_witness: CertificateWitness) -> TypeIICertificate {
    let four_k = 2 * modulus.two_k() as u64;
    let heavy = rows.iter().enumerate().find_map(|(i, r)| {
        let w = r.euclidean_weight();
        (w % four_k != 0).then_some(CertificateWitness::RowWeight { row: i + 1, weight: w })
    });
    let pair = rows_orthogonal(rows)
        .map(|(row_a, row_b, value)| CertificateWitness::InnerProduct { row_a, row_b, value });
    let witness = heavy.clone().or(pair.clone()).or((!size_ok).then_some(size_witness));
    TypeIICertificate {
        pairwise_inner_products_zero: pair.is_none(),
        row_weights_div_4k: heavy.is_none(),
        self_dual_size: size_ok,
        witness,
    }
}

pub fn certify_type_ii(sf: &StandardForm) -> TypeIICertificate {
    certify_rows(
        sf.modulus(),
        sf.rows(),
        has_self_dual_size(sf),
        CertificateWitness::Size { log2_size: Some(sf.log2_size()), size: None },
    )
}

/// Certificate for any `Z_2k`; `size` is `|C|` as established by the caller.
pub fn certify_type_ii_generators(g: &GeneratorMatrix, size: u128) -> TypeIICertificate {
    certify_rows(
        g.modulus(),
        g.rows(),
        size_is_self_dual(g.modulus(), g.len(), size),
        CertificateWitness::Size { log2_size: None, size: Some(size) },
    )
}

/// `4k floor(n/24) + 4k`, valid for `8 | n` and, when `k >= 3`, `floor(n/24) <= k - 2`.
pub fn extremal_bound(n: usize, k: u32) -> Result<u64> {
    if n % 8 != 0 {
        return Err(Error::Domain(alloc::format!("Type II codes need 8 | n, got n = {n}")));
    }
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let blocks = (n / 24) as u64;
    if k >= 3 && blocks > k as u64 - 2 {
        return Err(Error::Domain(alloc::format!("bound needs floor(n/24) <= k - 2, got n = {n}, k = {k}")));
    }
    Ok(4 * k as u64 * blocks + 4 * k as u64)
}

pub fn is_extremal_weight(n: usize, k: u32, min_weight: u64) -> Result<bool> {
    Ok(extremal_bound(n, k)? == min_weight)
}

/// Whether a verified minimum Euclidean weight meets the bound for this code.
pub fn is_extremal(sf: &StandardForm, min_weight: u64) -> Result<bool> {
    is_extremal_weight(sf.len(), sf.modulus().k(), min_weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::standardize;

    fn sf(q: u32, n: usize, rows: &[&[i64]]) -> StandardForm {
        let m = Modulus::new(q).unwrap();
        standardize(&GeneratorMatrix::from_rows(m, n, rows.iter().map(|r| r.iter().copied())).unwrap()).unwrap()
    }

    #[test]
    fn orthogonality() {
        assert!(is_self_orthogonal(&StandardForm::zero(Modulus::new(8).unwrap(), 3).unwrap()));
        assert!(!is_self_orthogonal(&sf(8, 2, &[&[1, 0]])));
        assert!(!is_self_dual(&sf(8, 2, &[&[2, 2]])));
        assert!(!is_self_dual(&StandardForm::zero(Modulus::new(8).unwrap(), 1).unwrap()));
        assert!(!is_self_dual(&sf(4, 2, &[&[2, 2]])));
        assert!(!is_self_dual(&sf(4, 2, &[&[1, 1]])));
        assert!(is_self_dual(&sf(4, 1, &[&[2]])));
        assert!(is_self_dual(&sf(8, 2, &[&[2, 2], &[0, 4]])));
    }

    #[test]
    fn certificate_witnesses() {
        let c = certify_type_ii(&sf(4, 4, &[&[1, 1, 1, 1]]));
        assert!(!c.is_valid());
        assert!(!c.row_weights_div_4k);
        assert!(c.pairwise_inner_products_zero);
        assert_eq!(c.witness, Some(CertificateWitness::RowWeight { row: 1, weight: 4 }));
        let empty = certify_type_ii(&StandardForm::zero(Modulus::new(8).unwrap(), 0).unwrap());
        assert!(empty.is_valid());
        let zero = certify_type_ii(&StandardForm::zero(Modulus::new(8).unwrap(), 8).unwrap());
        assert!(zero.weights_divisible());
        assert!(!zero.is_valid());
    }

    #[test]
    fn sizes_for_general_moduli() {
        let z6 = Modulus::new(6).unwrap();
        assert!(size_is_self_dual(z6, 4, 36));
        assert!(!size_is_self_dual(z6, 4, 35));
        assert!(!size_is_self_dual(z6, 3, 14));
        let z4 = Modulus::new(4).unwrap();
        assert!(size_is_self_dual(z4, 3, 8));
        assert!(size_is_self_dual(z4, 0, 1));
    }

    #[test]
    fn bounds() {
        assert_eq!(extremal_bound(32, 4).unwrap(), 32);
        assert_eq!(extremal_bound(8, 4).unwrap(), 16);
        assert_eq!(extremal_bound(24, 4).unwrap(), 32);
        assert_eq!(extremal_bound(40, 4).unwrap(), 32);
        assert_eq!(extremal_bound(24, 1).unwrap(), 8);
        assert!(extremal_bound(12, 4).is_err());
        assert!(extremal_bound(48, 3).is_err());
        assert!(is_extremal_weight(8, 4, 16).unwrap());
        assert!(!is_extremal_weight(32, 4, 16).unwrap());
        assert!(is_extremal_weight(32, 4, 32).unwrap());
        let mut last = 0;
        for n in (8..=64).step_by(8) {
            let b = extremal_bound(n, 4).unwrap();
            assert!(b >= last);
            last = b;
        }
    }
}
