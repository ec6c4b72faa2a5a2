//! Linear codes over `Z_2k`.
//!
//! Standard forms, duals and residue codes, Euclidean weight enumeration,
//! Type II certification, the doubling construction and the exclusion search
//! for extremal Type II `Z_8` codes of length 32.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod align;
pub mod code;
pub mod duality;
pub mod doubling;
pub mod enumerate;
pub mod error;
pub mod gf2;
pub mod packed;
pub mod ring;
pub mod search;
pub mod seeds;
pub mod weight;

pub use code::{code_size, dual, residue_code, standardize, GeneratorMatrix, Pivot, StandardForm, TypeProfile};
pub use enumerate::{CodewordIter, GrayEnumerator, Slice, DEFAULT_BUDGET};
pub use error::{DoublingRejection, Error, Result};
pub use packed::{PackedWord, Packing};
pub use ring::{vector_combine, Modulus, ZVector, MAX_LEN};
