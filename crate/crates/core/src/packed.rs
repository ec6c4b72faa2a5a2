//! Bit-sliced words over `Z_2`, `Z_4` and `Z_8`.
//!
//! Bit `i` of plane `j` is bit `j` of coordinate `i`. Addition is a ripple
//! carry across planes; weights come from popcounts of plane masks.

use alloc::vec::Vec;

use crate::ring::{Modulus, ZVector, MAX_LEN};

/// Largest `m` handled by the packed path.
pub const MAX_PACKED_M: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedWord {
    pub planes: [u64; 3],
}

/// Plane count and length shared by a family of packed words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Packing {
    m: u32,
    len: usize,
}

impl Packing {
    pub fn new(modulus: Modulus, len: usize) -> Option<Packing> {
        let m = modulus.m()?;
        (m <= MAX_PACKED_M && len <= MAX_LEN).then_some(Packing { m, len })
    }

    pub fn m(self) -> u32 {
        self.m
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn modulus(self) -> Modulus {
        Modulus::power_of_two(self.m).expect("packed modulus")
    }

    pub fn pack(self, v: &ZVector) -> PackedWord {
        debug_assert_eq!(v.len(), self.len);
        let mut w = PackedWord::default();
        for (i, &c) in v.coords().iter().enumerate() {
            for j in 0..self.m as usize {
                w.planes[j] |= (((c >> j) & 1) as u64) << i;
            }
        }
        w
    }

    pub fn unpack(self, w: &PackedWord) -> ZVector {
        let coords: Vec<u8> = (0..self.len).map(|i| self.coord(w, i)).collect();
        ZVector::from_reduced(self.modulus(), coords)
    }

    /// Coordinate at 0-based index `i`.
    #[inline]
    pub fn coord(self, w: &PackedWord, i: usize) -> u8 {
        let mut c = 0u8;
        for j in 0..self.m as usize {
            c |= (((w.planes[j] >> i) & 1) as u8) << j;
        }
        c
    }

    #[inline(always)]
    pub fn add(self, a: &PackedWord, b: &PackedWord) -> PackedWord {
        match self.m {
            1 => add_planes::<1>(a, b),
            2 => add_planes::<2>(a, b),
            _ => add_planes::<3>(a, b),
        }
    }

    /// `c * a` by double-and-add.
    pub fn scale(self, a: &PackedWord, c: u32) -> PackedWord {
        let mut acc = PackedWord::default();
        let mut base = *a;
        let mut c = c % (1 << self.m);
        while c > 0 {
            if c & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            c >>= 1;
        }
        acc
    }

    #[inline(always)]
    pub fn euclidean_weight(self, w: &PackedWord) -> u64 {
        match self.m {
            1 => euclidean_weight_planes::<1>(w),
            2 => euclidean_weight_planes::<2>(w),
            _ => euclidean_weight_planes::<3>(w),
        }
    }

    #[inline(always)]
    pub fn hamming_weight(self, w: &PackedWord) -> u64 {
        let [b0, b1, b2] = w.planes;
        (b0 | b1 | b2).count_ones() as u64
    }

    /// Mask of coordinates equal to `value`.
    #[inline]
    pub fn value_mask(self, w: &PackedWord, value: u8) -> u64 {
        let mut mask = if self.len == 64 { !0 } else { (1u64 << self.len) - 1 };
        for j in 0..self.m as usize {
            mask &= if (value >> j) & 1 == 1 { w.planes[j] } else { !w.planes[j] };
        }
        mask
    }
}

/// Ripple-carry addition over `Z_{2^M}`.
#[inline(always)]
pub fn add_planes<const M: u32>(a: &PackedWord, b: &PackedWord) -> PackedWord {
    let [a0, a1, a2] = a.planes;
    let [b0, b1, b2] = b.planes;
    match M {
        1 => PackedWord { planes: [a0 ^ b0, 0, 0] },
        2 => PackedWord { planes: [a0 ^ b0, a1 ^ b1 ^ (a0 & b0), 0] },
        _ => {
            let c0 = a0 & b0;
            let t1 = a1 ^ b1;
            let c1 = (a1 & b1) | (t1 & c0);
            PackedWord { planes: [a0 ^ b0, t1 ^ c0, a2 ^ b2 ^ c1] }
        }
    }
}

#[inline(always)]
pub fn euclidean_weight_planes<const M: u32>(w: &PackedWord) -> u64 {
    let [b0, b1, b2] = w.planes;
    match M {
        1 => b0.count_ones() as u64,
        2 => b0.count_ones() as u64 + 4 * (b1 & !b0).count_ones() as u64,
        _ => {
            // odd: 1/7 weigh 1, 3/5 weigh 9; even: 2/6 weigh 4, 4 weighs 16
            let x = b1 ^ b2;
            (b0 & !x).count_ones() as u64
                + 9 * (b0 & x).count_ones() as u64
                + 4 * (!b0 & b1).count_ones() as u64
                + 16 * (!b0 & !b1 & b2).count_ones() as u64
        }
    }
}
