//! Slow reference implementations for cross-checking the fast paths.
//!
//! Nothing here calls into [`crate::sidelobes`] or [`crate::flip`]; every
//! quantity is recomputed from the autocorrelation definition with plain
//! index loops.

use alloc::vec;
use alloc::vec::Vec;

use crate::{BinarySequence, Error, Result, SidelobeArray};

/// Longest length [`exhaustive_min_psl`] accepts.
pub const EXHAUSTIVE_MAX_LEN: usize = 24;

/// `C_u` for `u = 0 … n-1` by direct double loop.
pub fn oracle_aacf(seq: &BinarySequence) -> Vec<i64> {
    let b = seq.as_slice();
    let n = b.len();
    let mut c = vec![0i64; n];
    for u in 0..n {
        let mut sum = 0i64;
        let mut j = 0;
        while j + u < n {
            sum += i64::from(b[j]) * i64::from(b[j + u]);
            j += 1;
        }
        c[u] = sum;
    }
    c
}

/// Reversed sidelobes `Ω[i] = C_{n-i-1}` via [`oracle_aacf`].
pub fn oracle_sidelobes(seq: &BinarySequence) -> SidelobeArray {
    let c = oracle_aacf(seq);
    let n = c.len();
    let mut values = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        values.push(c[n - i - 1] as i32);
    }
    SidelobeArray::from_values(values).expect("n >= 2")
}

pub fn oracle_psl(seq: &BinarySequence) -> u64 {
    let c = oracle_aacf(seq);
    let mut best = 0u64;
    for &v in &c[1..] {
        best = best.max(v.unsigned_abs());
    }
    best
}

pub fn oracle_fitness(seq: &BinarySequence) -> u128 {
    let c = oracle_aacf(seq);
    let mut total = 0u128;
    for &v in &c[1..] {
        let a = u128::from(v.unsigned_abs());
        total += a * a * a * a;
    }
    total
}

/// Negates `seq[f]` on a copy and recomputes its sidelobes from scratch.
pub fn oracle_flip(seq: &BinarySequence, f: usize) -> Result<(BinarySequence, SidelobeArray)> {
    let mut spins = seq.as_slice().to_vec();
    let len = spins.len();
    let s = spins.get_mut(f).ok_or(Error::PositionOutOfRange { position: f, len })?;
    *s = -*s;
    let flipped = BinarySequence::from_spins(spins)?;
    let omega = oracle_sidelobes(&flipped);
    Ok((flipped, omega))
}

/// Periodic autocorrelation `P_u = Σ_j b_j b_{(j+u) mod n}` for all `u`.
pub fn periodic_autocorrelation(seq: &BinarySequence) -> Vec<i64> {
    let b = seq.as_slice();
    let n = b.len();
    (0..n).map(|u| (0..n).map(|j| i64::from(b[j]) * i64::from(b[(j + u) % n])).sum()).collect()
}

/// The minimum PSL over all `2^n` sequences of length `n`, with the first
/// witness found.
///
/// Sequences are enumerated as bit masks (bit `j` set ⇔ `b_j = +1`).
/// Negation and alternating negation are factored out by fixing
/// `b_0 = b_1 = +1`; reversal by skipping masks whose normalised reversal
/// is smaller. Each candidate is rejected as soon as one sidelobe reaches
/// the best PSL seen so far.
pub fn exhaustive_min_psl(n: usize) -> Result<(u32, BinarySequence)> {
    if !(2..=EXHAUSTIVE_MAX_LEN).contains(&n) {
        return Err(Error::ExhaustiveRange { len: n, max: EXHAUSTIVE_MAX_LEN });
    }
    let full: u32 = (1u32 << n) - 1;
    let odd_bits: u32 = 0xAAAA_AAAA & full;
    let normalise = |mut x: u32| {
        if x & 1 == 0 {
            x ^= full;
        }
        if x & 2 == 0 {
            x ^= odd_bits;
        }
        x
    };

    let mut best_psl = u32::MAX;
    let mut witness = 0u32;
    let count = 1u32 << (n - 2);
    for high in 0..count {
        let x = (high << 2) | 0b11;
        let x = x & full;
        if n > 2 {
            let rev = x.reverse_bits() >> (32 - n);
            if normalise(rev) < x {
                continue;
            }
        }
        if let Some(p) = psl_below(x, n, best_psl) {
            best_psl = p;
            witness = x;
        }
    }
    let seq = BinarySequence::from_bits((0..n).map(|j| witness >> j & 1 == 1))?;
    Ok((best_psl, seq))
}

// PSL of the mask `x` if it is strictly below `bound`.
fn psl_below(x: u32, n: usize, bound: u32) -> Option<u32> {
    let mut psl = 0u32;
    for u in 1..n {
        let span = (n - u) as u32;
        let mask = (1u32 << span) - 1;
        let disagree = ((x ^ (x >> u)) & mask).count_ones();
        let c = span as i32 - 2 * disagree as i32;
        let a = c.unsigned_abs();
        if a >= bound {
            return None;
        }
        psl = psl.max(a);
    }
    Some(psl)
}
