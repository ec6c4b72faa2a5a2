//! Small free Type II `Z_8` codes for tests and oracles.
//!
//! A free code `[I | A]` over `Z_{2^t}` is lifted to `Z_{2^{t+1}}` by
//! `A' = A + 2^t X` with `X` binary. Self-orthogonality of the rows and the
//! row weight condition are linear in `X`, so each step is a `GF(2)` solve
//! and a random point of the solution space gives a random lift.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{standardize, GeneratorMatrix, StandardForm};
use crate::error::{Error, Result};
use crate::gf2::{solve, BitVec};
use crate::ring::{Modulus, ZVector};

/// Tail of `[I_4 | J - I]`, the extended Hamming code.
pub fn hamming_tail() -> Vec<Vec<u8>> {
    (0..4).map(|i| (0..4).map(|j| u8::from(i != j)).collect()).collect()
}

/// Tail of a systematic generator matrix of the extended Golay code.
pub fn golay_tail() -> Vec<Vec<u8>> {
    const RESIDUES: [usize; 6] = [0, 1, 3, 4, 5, 9];
    let mut tail = alloc::vec![alloc::vec![1u8; 12]; 12];
    tail[0][0] = 0;
    for i in 1..12 {
        tail[i][0] = 1;
        for j in 1..12 {
            tail[i][j] = u8::from(RESIDUES.contains(&((j + 11 - i) % 11)));
        }
    }
    tail[0][1..].fill(1);
    tail
}

/// Whether `[I | A]` (entries below `2^t`) is self-orthogonal mod `2^t` with
/// `1 + sum a^2` divisible by `2^{t+1}` on every row.
pub fn is_lift_consistent(tail: &[Vec<u64>], t: u32) -> bool {
    let q = 1u64 << t;
    let h = tail.len();
    (0..h).all(|i| {
        (1 + tail[i].iter().map(|a| a * a).sum::<u64>()) % (2 * q) == 0
            && (i + 1..h).all(|j| tail[i].iter().zip(&tail[j]).map(|(a, b)| a * b).sum::<u64>() % q == 0)
    })
}

/// One lifting step from `2^t` to `2^{t+1}`, with `X` drawn uniformly from the solutions.
pub fn lift_step<R: Rng>(tail: &[Vec<u64>], t: u32, rng: &mut R) -> Result<Vec<Vec<u64>>> {
    if t == 0 || !is_lift_consistent(tail, t) {
        return Err(Error::Precondition("tail does not satisfy the lifting hypothesis".into()));
    }
    let q = 1u64 << t;
    let h = tail.len();
    let w = tail.first().map_or(0, Vec::len);
    let var = |i: usize, l: usize| i * w + l;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..h {
        let mut eq = BitVec::zeros(h * w);
        for l in 0..w {
            let coeff = if t == 1 { tail[i][l] + 1 } else { tail[i][l] };
            if coeff % 2 == 1 {
                eq.set(var(i, l), true);
            }
        }
        let norm = 1 + tail[i].iter().map(|a| a * a).sum::<u64>();
        rows.push(eq);
        rhs.push((norm / (2 * q)) % 2 == 1);
        for j in i + 1..h {
            let mut eq = BitVec::zeros(h * w);
            for l in 0..w {
                if tail[j][l] % 2 == 1 {
                    eq.flip(var(i, l));
                }
                if tail[i][l] % 2 == 1 {
                    eq.flip(var(j, l));
                }
            }
            let ip: u64 = tail[i].iter().zip(&tail[j]).map(|(a, b)| a * b).sum();
            rows.push(eq);
            rhs.push((ip / q) % 2 == 1);
        }
    }
    let sol = solve(&rows, &rhs, h * w).ok_or(Error::Internal("lifting system is inconsistent"))?;
    let mut x = sol.particular;
    for k in &sol.kernel {
        if rng.gen::<bool>() {
            x.xor_assign(k);
        }
    }
    Ok((0..h)
        .map(|i| (0..w).map(|l| tail[i][l] + if x.get(var(i, l)) { q } else { 0 }).collect())
        .collect())
}

/// A random free Type II code over `Z_8` whose binary residue is `[I | tail]`.
///
/// `tail` must generate a doubly-even self-dual binary code together with `I`.
pub fn lift_to_z8(tail: &[Vec<u8>], seed: u64) -> Result<StandardForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a: Vec<Vec<u64>> = tail.iter().map(|r| r.iter().map(|&x| u64::from(x & 1)).collect()).collect();
    for t in 1..3 {
        a = lift_step(&a, t, &mut rng)?;
    }
    if !is_lift_consistent(&a, 3) {
        return Err(Error::Internal("lifted tail fails the Type II conditions"));
    }
    let h = a.len();
    let z8 = Modulus::power_of_two(3)?;
    let rows = (0..h)
        .map(|i| {
            let coords = (0..h).map(|j| i64::from(i == j)).chain(a[i].iter().map(|&x| x as i64));
            ZVector::new(z8, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    standardize(&GeneratorMatrix::new(z8, 2 * h, rows)?)
}

/// A free Type II `Z_8` code of length 8 lifted from the extended Hamming code.
pub fn k8(seed: u64) -> Result<StandardForm> {
    lift_to_z8(&hamming_tail(), seed)
}

/// A free Type II `Z_8` code of length 24 lifted from the extended Golay code.
pub fn golay_lift(seed: u64) -> Result<StandardForm> {
    lift_to_z8(&golay_tail(), seed)
}
