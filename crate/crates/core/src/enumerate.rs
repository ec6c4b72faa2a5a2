//! Codeword enumeration.
//!
//! Packed codes (`m <= 3`) are walked in a modular Gray order: codeword
//! number `N` has coefficient `g_i = d_i - d_{i+1} mod r_i`, where `d_i`
//! are the mixed-radix digits of `N`, least significant first, with radices
//! `r_i` dividing `r_{i+1}`. Going from `N` to `N + 1` then adds exactly one
//! row, so every step costs one packed addition. Any range of
//! `N` can be started independently, which is how scans are partitioned.

use alloc::vec::Vec;
use core::ops::Range;

use crate::code::StandardForm;
use crate::error::{Error, Result};
use crate::packed::{add_planes, PackedWord, Packing};
use crate::ring::ZVector;

/// Default cap on the number of codewords a single call will visit.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Part `index` of `count` equal contiguous parts of an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slice {
    pub index: u64,
    pub count: u64,
}

impl Slice {
    pub const WHOLE: Slice = Slice { index: 0, count: 1 };

    pub fn new(index: u64, count: u64) -> Result<Slice> {
        if count == 0 || index >= count {
            return Err(Error::Domain(alloc::format!("slice {index} of {count}")));
        }
        Ok(Slice { index, count })
    }

    /// The sub-range of `0..total` covered by this slice.
    pub fn range(self, total: u128) -> Range<u128> {
        let lo = total * self.index as u128 / self.count as u128;
        let hi = total * (self.index as u128 + 1) / self.count as u128;
        lo..hi
    }
}

pub fn check_budget(words: u128, budget: u128) -> Result<()> {
    if words > budget {
        return Err(Error::Capacity { words, budget });
    }
    Ok(())
}

/// Gray-order walker over a code with `m <= 3` and at most `2^63` codewords.
#[derive(Debug, Clone)]
pub struct GrayEnumerator {
    packing: Packing,
    rows: Vec<PackedWord>,
    /// Digits least significant first; `digits[p]` is a row index.
    digits: Vec<usize>,
    bits: Vec<u32>,
    offsets: Vec<u32>,
    digit_of_bit: [u8; 64],
    total_bits: u32,
}

impl GrayEnumerator {
    pub fn new(sf: &StandardForm) -> Result<GrayEnumerator> {
        let packing = Packing::new(sf.modulus(), sf.len())
            .ok_or_else(|| Error::Domain(alloc::format!("packed enumeration needs m <= 3, got {}", sf.modulus())))?;
        let total_bits = sf.log2_size();
        if total_bits > 63 {
            return Err(Error::Capacity { words: 1u128 << total_bits.min(127), budget: 1 << 63 });
        }
        let rows = sf.rows().iter().map(|r| packing.pack(r)).collect();
        // pivot levels increase down the form, so reversed rows have
        // non-decreasing orders
        let digits: Vec<usize> = (0..sf.rows().len()).rev().collect();
        let mut bits = Vec::new();
        let mut offsets = Vec::new();
        let mut digit_of_bit = [0u8; 64];
        let mut off = 0;
        for &i in &digits {
            let b = sf.m() - sf.pivots()[i].level;
            for t in off..off + b {
                digit_of_bit[t as usize] = i as u8;
            }
            bits.push(b);
            offsets.push(off);
            off += b;
        }
        Ok(GrayEnumerator { packing, rows, digits, bits, offsets, digit_of_bit, total_bits })
    }

    pub fn packing(&self) -> Packing {
        self.packing
    }

    pub fn total(&self) -> u64 {
        1u64 << self.total_bits
    }

    pub fn rows(&self) -> &[PackedWord] {
        &self.rows
    }

    /// The coefficients, by row, of codeword number `n`.
    pub fn coefficients_at(&self, n: u64) -> Vec<u32> {
        let digit = |p: usize| -> u64 {
            if p >= self.bits.len() {
                0
            } else {
                (n >> self.offsets[p]) & ((1u64 << self.bits[p]) - 1)
            }
        };
        let mut coeffs = alloc::vec![0u32; self.rows.len()];
        for (p, &row) in self.digits.iter().enumerate() {
            let order = 1u64 << self.bits[p];
            coeffs[row] = ((digit(p) + order - digit(p + 1) % order) % order) as u32;
        }
        coeffs
    }

    pub fn word_at(&self, n: u64) -> PackedWord {
        let mut w = PackedWord::default();
        for (row, g) in self.rows.iter().zip(self.coefficients_at(n)) {
            w = self.packing.add(&w, &self.packing.scale(row, g));
        }
        w
    }

    /// Visits codewords `range.start .. range.end` in Gray order.
    pub fn scan<F: FnMut(&PackedWord)>(&self, range: Range<u64>, mut visit: F) {
        self.scan_while(range, |w| {
            visit(w);
            true
        });
    }

    /// Like [`scan`](Self::scan) but stops as soon as `visit` returns false.
    /// Returns whether the whole range was visited.
    pub fn scan_while<F: FnMut(&PackedWord) -> bool>(&self, range: Range<u64>, visit: F) -> bool {
        match self.packing.m() {
            1 => self.scan_m::<1, F>(range, visit),
            2 => self.scan_m::<2, F>(range, visit),
            _ => self.scan_m::<3, F>(range, visit),
        }
    }

    fn scan_m<const M: u32, F: FnMut(&PackedWord) -> bool>(&self, range: Range<u64>, mut visit: F) -> bool {
        if range.start >= range.end {
            return true;
        }
        debug_assert!(range.end <= self.total());
        let mut w = self.word_at(range.start);
        let mut n = range.start;
        loop {
            if !visit(&w) {
                return false;
            }
            n += 1;
            if n == range.end {
                return true;
            }
            let d = self.digit_of_bit[n.trailing_zeros() as usize] as usize;
            w = add_planes::<M>(&w, &self.rows[d]);
        }
    }

    /// Range of a slice, refusing it when it exceeds `budget`.
    pub fn slice_range(&self, slice: Slice, budget: u128) -> Result<Range<u64>> {
        let r = slice.range(self.total() as u128);
        check_budget(r.end - r.start, budget)?;
        Ok(r.start as u64..r.end as u64)
    }
}

/// Plain odometer over all codewords of any standard form.
///
/// Slow but independent of the packed path; used for reference checks and
/// for moduli beyond `Z_8`.
pub struct CodewordIter<'a> {
    sf: &'a StandardForm,
    orders: Vec<u32>,
    coeffs: Vec<u32>,
    current: Option<ZVector>,
}

impl<'a> CodewordIter<'a> {
    pub fn new(sf: &'a StandardForm, budget: u128) -> Result<CodewordIter<'a>> {
        let bits = sf.log2_size();
        if bits >= 127 {
            return Err(Error::Capacity { words: u128::MAX, budget });
        }
        check_budget(1u128 << bits, budget)?;
        Ok(CodewordIter {
            sf,
            orders: sf.row_orders(),
            coeffs: alloc::vec![0; sf.rows().len()],
            current: Some(ZVector::zero(sf.modulus(), sf.len())?),
        })
    }
}

impl Iterator for CodewordIter<'_> {
    type Item = ZVector;

    fn next(&mut self) -> Option<ZVector> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for i in 0..self.coeffs.len() {
            next.add_assign_unchecked(&self.sf.rows()[i]);
            self.coeffs[i] += 1;
            if self.coeffs[i] < self.orders[i] {
                self.current = Some(next);
                return Some(out);
            }
            // the row has wrapped back to zero
            self.coeffs[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{standardize, GeneratorMatrix};
    use crate::ring::Modulus;
    use alloc::collections::BTreeSet;

    fn mixed_code() -> StandardForm {
        let z8 = Modulus::new(8).unwrap();
        let g = GeneratorMatrix::from_rows(
            z8,
            6,
            [[1i64, 0, 3, 2, 4, 7], [0, 2, 2, 4, 6, 0], [0, 0, 4, 0, 4, 4], [0, 1, 1, 1, 3, 5]],
        )
        .unwrap();
        standardize(&g).unwrap()
    }

    #[test]
    fn gray_order_visits_every_codeword_once() {
        let sf = mixed_code();
        let e = GrayEnumerator::new(&sf).unwrap();
        let mut seen = BTreeSet::new();
        e.scan(0..e.total(), |w| {
            assert!(seen.insert(e.packing().unpack(w)));
        });
        let odometer: BTreeSet<ZVector> = CodewordIter::new(&sf, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(odometer.len() as u64, e.total());
        assert_eq!(seen, odometer);
    }

    #[test]
    fn slices_partition_the_scan() {
        let sf = mixed_code();
        let e = GrayEnumerator::new(&sf).unwrap();
        let mut whole = alloc::vec::Vec::new();
        e.scan(0..e.total(), |w| whole.push(*w));
        let mut pieces = alloc::vec::Vec::new();
        for i in 0..7 {
            let r = e.slice_range(Slice::new(i, 7).unwrap(), DEFAULT_BUDGET).unwrap();
            e.scan(r, |w| pieces.push(*w));
        }
        assert_eq!(whole, pieces);
        for n in [0u64, 1, 5, 17, e.total() - 1] {
            assert_eq!(e.word_at(n), whole[n as usize]);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let sf = mixed_code();
        let e = GrayEnumerator::new(&sf).unwrap();
        assert!(matches!(e.slice_range(Slice::WHOLE, 3), Err(Error::Capacity { .. })));
        assert!(CodewordIter::new(&sf, 3).is_err());
        assert!(Slice::new(2, 2).is_err());
        assert!(Slice::new(0, 0).is_err());
    }
}
