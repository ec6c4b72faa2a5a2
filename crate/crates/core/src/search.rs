//! Exclusion search for extremal doubles of free Type II `Z_8` codes.
//!
//! The code is `C = <[I | A]>` of length `n` in `{24, 32, 40}`. A doubling
//! vector `4u` is described by its support `S`, a subset of the tail
//! positions `n/2 + 1 ..= n`, stored as a bitmask with bit `j` standing for
//! position `n/2 + 1 + j`. Candidates with `|S| >= 2` that no exclusion rule
//! hits yield extremal codes of type `(n/2 - 1, 1, 1)`.
//!
//! Three independent procedures live here:
//! * [`AlgorithmC`], the packed exclusion scan over weight-16 words of the
//!   `Z_4` residue code plus the single-row rule;
//! * [`brute_force_exclusions`], which applies the two exclusion conditions
//!   literally to every lift of every weight-16 residue word;
//! * [`ExtremalityDecider`], which decides for one `S` whether the double
//!   has a codeword of Euclidean weight 16 and returns it.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::code::{residue_code, StandardForm};
use crate::doubling::{double_code, validate_doubling_vector, DoubleResult};
use crate::weight::{weight_distribution, WeightDistribution, WeightKind};
use crate::duality::certify_type_ii;
use crate::enumerate::{CodewordIter, GrayEnumerator, Slice};
use crate::error::{DoublingRejection, Error, Result};
use crate::packed::{add_planes, euclidean_weight_planes, PackedWord, Packing};
use crate::ring::{Modulus, ZVector};

/// Longest tail handled, reached at `n = 40`.
pub const MAX_TAIL: usize = 20;

/// A candidate support `S` for `4u`, as a mask over tail positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet {
    half: usize,
    mask: u32,
}

impl CandidateSet {
    /// From 1-based positions, all in the tail, at least two of them.
    pub fn from_positions(n: usize, positions: &[usize]) -> Result<CandidateSet> {
        let half = n / 2;
        let mut mask = 0u32;
        for &p in positions {
            if p <= half || p > n {
                return Err(Error::Domain(alloc::format!("position {p} is outside the tail {}..={n}", half + 1)));
            }
            mask |= 1 << (p - half - 1);
        }
        CandidateSet::from_mask(n, mask)
    }

    pub fn from_mask(n: usize, mask: u32) -> Result<CandidateSet> {
        let half = n / 2;
        if half > MAX_TAIL || (half < 32 && mask >> half != 0) {
            return Err(Error::Domain(alloc::format!("mask {mask:#x} does not fit a tail of {half}")));
        }
        if mask.count_ones() < 2 {
            return Err(Error::Domain("candidate sets have at least two positions".into()));
        }
        Ok(CandidateSet { half, mask })
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// 1-based positions, ascending.
    pub fn positions(self) -> Vec<usize> {
        (0..self.half).filter(|j| self.mask >> j & 1 == 1).map(|j| self.half + 1 + j).collect()
    }

    /// The doubling vector `4u` with support `S`.
    pub fn doubling_vector(self) -> ZVector {
        ZVector::indicator(Modulus::power_of_two(3).expect("Z8"), 2 * self.half, &self.positions(), 4)
            .expect("positions lie inside the code length")
    }
}

/// Number of subsets of a `t`-element tail with at least two elements.
pub fn candidate_universe_size(tail: usize) -> u64 {
    (1u64 << tail) - tail as u64 - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Weight-16 residue words and their lifts.
    One,
    /// Single rows with coefficient 4, or words congruent to 0 mod 4.
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A weight-16 residue word `v`, the chosen `A` (1-based head positions) and the lift `v'`.
    Lift { residue: ZVector, a: Vec<usize>, lifted: ZVector },
    /// The 1-based index of a generator row.
    Row(usize),
    /// A codeword of `C` meeting one of the conditions directly.
    Codeword(ZVector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub step: Step,
    pub witness: Witness,
}

/// The excluded candidate sets together with the first witness for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionLedger {
    n: usize,
    bits: Vec<u64>,
    provenance: BTreeMap<u32, Provenance>,
}

impl ExclusionLedger {
    pub fn new(n: usize) -> Result<ExclusionLedger> {
        let tail = n / 2;
        if n % 2 != 0 || tail > MAX_TAIL || tail == 0 {
            return Err(Error::Domain(alloc::format!("no tail layout for length {n}")));
        }
        Ok(ExclusionLedger { n, bits: alloc::vec![0; ((1usize << tail) + 63) / 64], provenance: BTreeMap::new() })
    }

    pub fn len_code(&self) -> usize {
        self.n
    }

    pub fn tail_len(&self) -> usize {
        self.n / 2
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        self.bits[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
    }

    pub fn contains(&self, s: CandidateSet) -> bool {
        self.contains_mask(s.mask())
    }

    /// Records `mask` unless already present; the witness is built only when new.
    #[inline]
    pub fn insert_with(&mut self, mask: u32, make: impl FnOnce() -> Provenance) -> bool {
        if self.contains_mask(mask) {
            return false;
        }
        self.bits[(mask >> 6) as usize] |= 1 << (mask & 63);
        self.provenance.insert(mask, make());
        true
    }

    pub fn len(&self) -> usize {
        self.provenance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.provenance.is_empty()
    }

    pub fn provenance(&self, mask: u32) -> Option<&Provenance> {
        self.provenance.get(&mask)
    }

    /// Excluded masks, ascending.
    pub fn masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.provenance.keys().copied()
    }

    /// Entries per step, `(step one, step two)`.
    pub fn step_counts(&self) -> (usize, usize) {
        let one = self.provenance.values().filter(|p| p.step == Step::One).count();
        (one, self.provenance.len() - one)
    }

    /// Union; on overlap the witness already in `self` is kept.
    pub fn merge(&mut self, other: ExclusionLedger) {
        debug_assert_eq!(self.n, other.n);
        for (mask, p) in other.provenance {
            self.insert_with(mask, || p);
        }
    }

    pub fn same_sets(&self, other: &ExclusionLedger) -> bool {
        self.n == other.n && self.bits == other.bits
    }

    /// `𝒮 ∖ ℬ`: every tail subset of size at least two that is not excluded.
    pub fn candidates(&self) -> Vec<CandidateSet> {
        let tail = self.tail_len();
        (0u32..(1 << tail))
            .filter(|&m| m.count_ones() >= 2 && !self.contains_mask(m))
            .map(|mask| CandidateSet { half: tail, mask })
            .collect()
    }

    pub fn candidate_count(&self) -> u64 {
        candidate_universe_size(self.tail_len()) - self.len() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Refuse codes whose `Z_4` residue has a nonzero word lighter than 16.
    pub require_extremal_residue: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { require_extremal_residue: true }
    }
}

/// Structural preconditions shared by every procedure in this module.
fn check_structure(sf: &StandardForm) -> Result<()> {
    let n = sf.len();
    if sf.modulus().two_k() != 8 {
        return Err(Error::Precondition(alloc::format!("code is over {}, not Z8", sf.modulus())));
    }
    if ![24, 32, 40].contains(&n) {
        return Err(Error::Precondition(alloc::format!("length {n} is not 24, 32 or 40")));
    }
    if sf.profile().ks != [n / 2, 0, 0] {
        return Err(Error::Precondition(alloc::format!("type {} is not ({},0,0)", sf.profile(), n / 2)));
    }
    if !sf.is_identity_permutation() {
        return Err(Error::Precondition("generator matrix is not of the form [I | A]".into()));
    }
    let cert = certify_type_ii(sf);
    if !cert.is_valid() {
        return Err(Error::Precondition(alloc::format!("code is not Type II: {}", cert.describe())));
    }
    Ok(())
}

/// The packed Algorithm C scan.
#[derive(Debug, Clone)]
pub struct AlgorithmC {
    n: usize,
    half: usize,
    head_mask: u64,
    tail_mask: u64,
    rows8: Vec<PackedWord>,
    parity_rows: Vec<u64>,
    gray: GrayEnumerator,
    options: SearchOptions,
}

/// What one slice of the residue scan produced.
#[derive(Debug, Clone)]
pub struct SliceScan {
    pub ledger: ExclusionLedger,
    pub weight16_words: u64,
    /// Nonzero residue words of Euclidean weight below 16.
    pub lighter_words: u64,
}

#[inline(always)]
fn double_z8(w: &PackedWord) -> PackedWord {
    PackedWord { planes: [0, w.planes[0], w.planes[1]] }
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        !0
    } else {
        (1u64 << bits) - 1
    }
}

impl AlgorithmC {
    pub fn new(sf: &StandardForm, options: SearchOptions) -> Result<AlgorithmC> {
        check_structure(sf)?;
        let n = sf.len();
        let half = n / 2;
        let p8 = Packing::new(sf.modulus(), n).expect("Z8 packs");
        let rows8: Vec<PackedWord> = sf.rows().iter().map(|r| p8.pack(r)).collect();
        let parity_rows = rows8.iter().map(|w| w.planes[0]).collect();
        let residue = residue_code(sf, 2)?;
        let gray = GrayEnumerator::new(&residue)?;
        Ok(AlgorithmC {
            n,
            half,
            head_mask: low_mask(half),
            tail_mask: low_mask(half),
            rows8,
            parity_rows,
            gray,
            options,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of residue words, `4^{n/2}`.
    pub fn residue_words(&self) -> u64 {
        self.gray.total()
    }

    /// The `Z_8` lift `sum v_i G_i` of a residue word, coefficients read from the head.
    #[inline]
    fn lift(&self, r: &PackedWord) -> PackedWord {
        let mut ones = PackedWord::default();
        let mut twos = PackedWord::default();
        let mut b0 = r.planes[0] & self.head_mask;
        while b0 != 0 {
            let i = b0.trailing_zeros() as usize;
            ones = add_planes::<3>(&ones, &self.rows8[i]);
            b0 &= b0 - 1;
        }
        let mut b1 = r.planes[1] & self.head_mask;
        while b1 != 0 {
            let i = b1.trailing_zeros() as usize;
            twos = add_planes::<3>(&twos, &self.rows8[i]);
            b1 &= b1 - 1;
        }
        add_planes::<3>(&ones, &double_z8(&twos))
    }

    fn parity_of(&self, mut rows: u64) -> u64 {
        let mut acc = 0;
        while rows != 0 {
            acc ^= self.parity_rows[rows.trailing_zeros() as usize];
            rows &= rows - 1;
        }
        acc
    }

    /// Step 1 for one weight-16 residue word, given over `Z_4`.
    pub fn word_exclusions(&self, r: &ZVector, ledger: &mut ExclusionLedger) {
        self.exclude_from_word(&self.gray.packing().pack(r), ledger);
    }

    fn exclude_from_word(&self, r: &PackedWord, ledger: &mut ExclusionLedger) {
        let [r0, r1, _] = r.planes;
        let v = self.lift(r);
        let a_v = !r0 & r1 & self.head_mask;
        let b_v = r0 & r1 & self.head_mask;
        let base = self.parity_of(b_v);
        let mut a = 0u64;
        loop {
            // v + 4 s_A + 4 s_B only flips the top plane where s_A + s_B is odd
            let flip = base ^ self.parity_of(a);
            let [b0, b1, b2] = [v.planes[0], v.planes[1], v.planes[2] ^ flip];
            let tail = |x: u64| ((x >> self.half) & self.tail_mask) as u32;
            let o = tail(!b0 & b1);
            let p = tail(!b0 & !b1 & b2);
            let q = tail(b0 & (b1 ^ b2));
            let fixed = p | q;
            let mut sub = 0u32;
            loop {
                let set = fixed | sub;
                if set.count_ones() >= 2 {
                    ledger.insert_with(set, || Provenance {
                        step: Step::One,
                        witness: Witness::Lift {
                            residue: self.gray.packing().unpack(r),
                            a: (0..self.half).filter(|i| a >> i & 1 == 1).map(|i| i + 1).collect(),
                            lifted: Packing::new(Modulus::power_of_two(3).expect("Z8"), self.n)
                                .expect("Z8 packs")
                                .unpack(&PackedWord { planes: [b0, b1, b2] }),
                        },
                    });
                }
                sub = sub.wrapping_sub(o) & o;
                if sub == 0 {
                    break;
                }
            }
            a = a.wrapping_sub(a_v) & a_v;
            if a == 0 {
                break;
            }
        }
    }

    /// Step 1 over one slice of the residue code.
    pub fn scan_slice(&self, slice: Slice, budget: u128) -> Result<SliceScan> {
        let range = self.gray.slice_range(slice, budget)?;
        let mut ledger = ExclusionLedger::new(self.n)?;
        let mut weight16_words = 0;
        let mut lighter_words = 0;
        self.gray.scan(range, |w| {
            let wt = euclidean_weight_planes::<2>(w);
            if wt < 16 {
                if wt != 0 {
                    lighter_words += 1;
                }
            } else if wt == 16 {
                weight16_words += 1;
                self.exclude_from_word(w, &mut ledger);
            }
        });
        Ok(SliceScan { ledger, weight16_words, lighter_words })
    }

    /// Step 2: `O_i`, the odd tail positions of row `i`, when `|O_i| >= 2`.
    pub fn step_two(&self, ledger: &mut ExclusionLedger) {
        for (i, &par) in self.parity_rows.iter().enumerate() {
            let o = ((par >> self.half) & self.tail_mask) as u32;
            if o.count_ones() >= 2 {
                ledger.insert_with(o, || Provenance { step: Step::Two, witness: Witness::Row(i + 1) });
            }
        }
    }

    /// Merges slice results in order, checks the residue, and applies Step 2.
    pub fn finish(&self, scans: Vec<SliceScan>) -> Result<(ExclusionLedger, ScanSummary)> {
        let mut ledger = ExclusionLedger::new(self.n)?;
        let mut summary = ScanSummary::default();
        for s in scans {
            summary.weight16_words += s.weight16_words;
            summary.lighter_words += s.lighter_words;
            ledger.merge(s.ledger);
        }
        if self.options.require_extremal_residue && summary.lighter_words > 0 {
            return Err(Error::Precondition(alloc::format!(
                "Z4 residue is not extremal: {} nonzero words of Euclidean weight below 16",
                summary.lighter_words
            )));
        }
        self.step_two(&mut ledger);
        Ok((ledger, summary))
    }

    /// The whole search in one call; the residue scan must fit `budget`.
    pub fn run(&self, budget: u128) -> Result<(ExclusionLedger, ScanSummary)> {
        let scan = self.scan_slice(Slice::WHOLE, budget)?;
        self.finish(alloc::vec![scan])
    }

    /// Every weight-16 residue word in one slice, in scan order.
    pub fn weight16_words_slice(&self, slice: Slice, budget: u128) -> Result<Vec<PackedWord>> {
        let range = self.gray.slice_range(slice, budget)?;
        let mut out = Vec::new();
        self.gray.scan(range, |w| {
            if euclidean_weight_planes::<2>(w) == 16 {
                out.push(*w);
            }
        });
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub weight16_words: u64,
    pub lighter_words: u64,
}

/// Algorithm C exclusions with the default options, scanning in one call.
pub fn algorithm_c_exclusions(sf: &StandardForm, budget: u128) -> Result<ExclusionLedger> {
    Ok(AlgorithmC::new(sf, SearchOptions::default())?.run(budget)?.0)
}

/// `𝒢 = 𝒮 ∖ ℬ`.
pub fn candidate_sets(sf: &StandardForm, budget: u128) -> Result<Vec<CandidateSet>> {
    Ok(algorithm_c_exclusions(sf, budget)?.candidates())
}

/// Direct application of the two exclusion conditions to codewords of `C`.
///
/// Every weight-16 word `r` of the `Z_4` residue is lifted to all `2^{n/2}`
/// codewords `r^ + 4z`; each lift yields the sets `S` with
/// `S_3 ∪ S_4 ∪ S_5 ⊆ S ⊆ S_2 ∪ ... ∪ S_6` inside the tail. Then every
/// codeword congruent to 0 mod 4 yields the sets at symmetric distance one
/// from its `S_4`.
#[derive(Debug, Clone)]
pub struct BruteForce {
    n: usize,
    half: usize,
    rows8: Vec<PackedWord>,
    residue: StandardForm,
}

impl BruteForce {
    pub fn new(sf: &StandardForm) -> Result<BruteForce> {
        check_structure(sf)?;
        let n = sf.len();
        if n / 2 > 24 {
            return Err(Error::Capacity { words: 1u128 << n, budget: 1u128 << 48 });
        }
        let p8 = Packing::new(sf.modulus(), n).expect("Z8 packs");
        Ok(BruteForce { n, half: n / 2, rows8: sf.rows().iter().map(|r| p8.pack(r)).collect(), residue: residue_code(sf, 2)? })
    }

    /// Weight-16 residue words in lexicographic order of coordinates.
    pub fn residue_words(&self, options: SearchOptions, budget: u128) -> Result<Vec<ZVector>> {
        let mut words = Vec::new();
        for r in CodewordIter::new(&self.residue, budget)? {
            let w = r.euclidean_weight();
            if w == 16 {
                words.push(r);
            } else if options.require_extremal_residue && w != 0 && w < 16 {
                return Err(Error::Precondition("Z4 residue is not extremal".into()));
            }
        }
        words.sort();
        Ok(words)
    }

    fn packing(&self) -> Packing {
        Packing::new(Modulus::power_of_two(3).expect("Z8"), self.n).expect("Z8 packs")
    }

    /// Visits `base + 4z` for every `z` in `{0,1}^{n/2}`, `z` in reflected binary order.
    fn lifts(&self, base: PackedWord, mut visit: impl FnMut(&PackedWord)) {
        let mut v = base;
        visit(&v);
        for step in 1u64..(1 << self.half) {
            v.planes[2] ^= self.rows8[step.trailing_zeros() as usize].planes[0];
            visit(&v);
        }
    }

    /// Value masks `S_i(v)` of a packed `Z_8` word.
    fn supports(v: &PackedWord) -> [u64; 8] {
        let [b0, b1, b2] = v.planes;
        let mut out = [0u64; 8];
        for (i, m) in out.iter_mut().enumerate() {
            let pick = |plane: u64, bit: usize| if i >> bit & 1 == 1 { plane } else { !plane };
            *m = pick(b0, 0) & pick(b1, 1) & pick(b2, 2);
        }
        out
    }

    /// Condition 1 for every lift of the residue word `r`.
    pub fn word_exclusions(&self, r: &ZVector, ledger: &mut ExclusionLedger) {
        let p8 = self.packing();
        let mut base = PackedWord::default();
        for (i, &c) in r.coords()[..self.half].iter().enumerate() {
            for _ in 0..c {
                base = add_planes::<3>(&base, &self.rows8[i]);
            }
        }
        let all = low_mask(self.n);
        let tail = all & !low_mask(self.half);
        self.lifts(base, |v| {
            let s = Self::supports(v);
            let lower = (s[3] | s[4] | s[5]) & all;
            if lower & !tail != 0 {
                return;
            }
            let optional = (s[2] | s[6]) & tail;
            let mut sub = 0u64;
            loop {
                let set = ((lower | sub) >> self.half) as u32;
                if set.count_ones() >= 2 {
                    ledger.insert_with(set, || Provenance { step: Step::One, witness: Witness::Codeword(p8.unpack(v)) });
                }
                sub = sub.wrapping_sub(optional) & optional;
                if sub == 0 {
                    break;
                }
            }
        });
    }

    /// Condition 2 over every codeword `4z`.
    pub fn multiple_of_four_exclusions(&self, ledger: &mut ExclusionLedger) {
        let p8 = self.packing();
        let tail = low_mask(self.n) & !low_mask(self.half);
        self.lifts(PackedWord::default(), |v| {
            let s4 = v.planes[2];
            for p in 0..self.n {
                let set = s4 ^ (1 << p);
                if set.count_ones() >= 2 && set & !tail == 0 {
                    ledger.insert_with((set >> self.half) as u32, || Provenance {
                        step: Step::Two,
                        witness: Witness::Codeword(p8.unpack(v)),
                    });
                }
            }
        });
    }

    pub fn run(&self, options: SearchOptions, budget: u128) -> Result<ExclusionLedger> {
        let mut ledger = ExclusionLedger::new(self.n)?;
        for r in self.residue_words(options, budget)? {
            self.word_exclusions(&r, &mut ledger);
        }
        self.multiple_of_four_exclusions(&mut ledger);
        Ok(ledger)
    }
}

/// [`BruteForce::run`] in one call.
pub fn brute_force_exclusions(sf: &StandardForm, options: SearchOptions, budget: u128) -> Result<ExclusionLedger> {
    BruteForce::new(sf)?.run(options, budget)
}

/// A double built from a surviving candidate, with its binary residue weights.
#[derive(Debug, Clone)]
pub struct ExtremalDouble {
    pub double: DoubleResult,
    pub residue_distribution: WeightDistribution,
}

/// Doubles `C` by `4u` with support `s`, refusing sets in the ledger.
pub fn build_extremal_double(sf: &StandardForm, ledger: &ExclusionLedger, s: CandidateSet) -> Result<ExtremalDouble> {
    check_structure(sf)?;
    if ledger.len_code() != sf.len() || s.half != sf.len() / 2 {
        return Err(Error::DimensionMismatch { expected: sf.len(), found: ledger.len_code() });
    }
    if let Some(p) = ledger.provenance(s.mask()) {
        let step = match p.step {
            Step::One => 1,
            Step::Two => 2,
        };
        return Err(DoublingRejection::Excluded { positions: s.positions(), step }.into());
    }
    let dv = validate_doubling_vector(sf, &s.doubling_vector(), false)?;
    let double = double_code(sf, &dv, None)?;
    let n = sf.len();
    if double.doubled.profile().ks != [n / 2 - 1, 1, 1] {
        return Err(Error::Internal("double is not of type (n/2-1,1,1)"));
    }
    let residue = residue_code(&double.doubled, 1)?;
    let residue_distribution = weight_distribution(&residue, WeightKind::Hamming, 1u128 << (n / 2))?;
    Ok(ExtremalDouble { double, residue_distribution })
}

/// Decides whether the double of `C` by `4u` has a codeword of weight 16.
///
/// A lighter codeword `w = v + 4u` has `W = wt(w mod 4)` equal to 0 or at
/// least 16. With `W = 16` the residue `r = w mod 4` has weight 16 and `w`
/// avoids the values 3, 4 and 5; with `W = 0`, `w = 4e_p` for a single
/// position `p`. Both cases reduce to linear algebra over `GF(2)` in the
/// binary residue code `<[I | A mod 2]>`.
#[derive(Debug, Clone)]
pub struct ExtremalityDecider {
    n: usize,
    half: usize,
    head_mask: u64,
    rows8: Vec<PackedWord>,
    parity_rows: Vec<u64>,
    /// `Z_8` lifts `r^` of the weight-16 residue words; `r^ mod 4 = r`.
    lifts: Box<[PackedWord]>,
}

impl ExtremalityDecider {
    /// `residue16` must hold every weight-16 word of the `Z_4` residue.
    pub fn new(sf: &StandardForm, residue16: Vec<PackedWord>) -> Result<ExtremalityDecider> {
        check_structure(sf)?;
        let n = sf.len();
        let p8 = Packing::new(sf.modulus(), n).expect("Z8 packs");
        let rows8: Vec<PackedWord> = sf.rows().iter().map(|r| p8.pack(r)).collect();
        let parity_rows = rows8.iter().map(|w| w.planes[0]).collect();
        let mut d = ExtremalityDecider {
            n,
            half: n / 2,
            head_mask: low_mask(n / 2),
            rows8,
            parity_rows,
            lifts: Box::new([]),
        };
        d.lifts = residue16.iter().map(|r| d.lift(r)).collect();
        Ok(d)
    }

    pub fn weight16_words(&self) -> usize {
        self.lifts.len()
    }

    fn parity_of(&self, mut rows: u64) -> u64 {
        let mut acc = 0;
        while rows != 0 {
            acc ^= self.parity_rows[rows.trailing_zeros() as usize];
            rows &= rows - 1;
        }
        acc
    }

    fn in_binary_residue(&self, t: u64) -> bool {
        self.parity_of(t & self.head_mask) == t
    }

    fn lift(&self, r: &PackedWord) -> PackedWord {
        let mut acc = PackedWord::default();
        for i in 0..self.half {
            let c = (r.planes[0] >> i & 1) | (r.planes[1] >> i & 1) << 1;
            for _ in 0..c {
                acc = add_planes::<3>(&acc, &self.rows8[i]);
            }
        }
        acc
    }

    /// A codeword of Euclidean weight 16 in the double, if there is one.
    pub fn light_codeword(&self, s: CandidateSet) -> Option<ZVector> {
        let p8 = Packing::new(Modulus::power_of_two(3).expect("Z8"), self.n).expect("Z8 packs");
        let u = (s.mask() as u64) << self.half;
        // W = 0: 4u + 4t = 4 e_p with t in the binary residue
        for p in 0..self.n {
            if self.in_binary_residue(u ^ (1 << p)) {
                return Some(p8.unpack(&PackedWord { planes: [0, 0, 1 << p] }));
            }
        }
        // W = 16: v = r^ + 4t, and v + 4u must avoid 3, 4, 5
        let all = low_mask(self.n);
        for v in self.lifts.iter() {
            let [r0, r1, _] = v.planes;
            let twos = !r0 & r1 & all;
            let threes = r0 & r1;
            let fixed = all & !twos;
            // required top bit of v: set on S for residues 0 and 1, off S for residue 3
            let want = v.planes[2] ^ u ^ threes;
            let free = twos & self.head_mask;
            let base = self.parity_of(want & fixed & self.head_mask);
            let mut sub = 0u64;
            loop {
                let t = base ^ self.parity_of(sub);
                if (t ^ want) & fixed == 0 {
                    let w = PackedWord { planes: [v.planes[0], v.planes[1], v.planes[2] ^ t ^ u] };
                    debug_assert_eq!(p8.euclidean_weight(&w), 16);
                    return Some(p8.unpack(&w));
                }
                sub = sub.wrapping_sub(free) & free;
                if sub == 0 {
                    break;
                }
            }
        }
        None
    }
}
