//! Aperiodic autocorrelation, the reversed sidelobe array and the fitness.
//!
//! For a sequence `B` of length `n` the aperiodic autocorrelation is
//! `C_u = Σ_{j=0}^{n-u-1} b_j b_{j+u}`. `C_0 = n` is the mainlobe, every
//! other `C_u` is a sidelobe and the PSL is `max_{0<u<n} |C_u|`.
//!
//! The search works on the sidelobes in reverse lag order,
//! `Ĉ_i = C_{n-i-1}` for `i = 0 … n-2`, so entry `i` is a sum of `i + 1`
//! products. That array is [`SidelobeArray`].

use alloc::vec::Vec;

use crate::{BinarySequence, Error, Result};

/// The `n − 1` reversed sidelobes `Ĉ_0 … Ĉ_{n-2}` of a sequence of length
/// `n`. The mainlobe is never stored.
///
/// Arrays built by [`compute_sidelobes`] or kept in sync by
/// [`crate::flip_update`] satisfy `|values[i]| ≤ i + 1` and
/// `values[i] ≡ i + 1 (mod 2)`. [`SidelobeArray::from_values`] does not check
/// this.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SidelobeArray {
    values: Vec<i32>,
}

/// Quartic fitness `Σ Ĉ_i⁴` and the PSL, computed in the same pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostReport {
    pub fitness: u128,
    pub psl: u32,
}

impl SidelobeArray {
    /// Wraps raw values. The owning sequence length is `values.len() + 1`.
    pub fn from_values(values: Vec<i32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort(1));
        }
        Ok(Self { values })
    }

    #[inline]
    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Length of the sequence these sidelobes belong to.
    #[inline]
    pub fn owner_len(&self) -> usize {
        self.values.len() + 1
    }

    /// `C_u` for `0 < u < n`.
    pub fn aacf(&self, shift: usize) -> Option<i32> {
        let n = self.owner_len();
        if shift == 0 || shift >= n {
            return None;
        }
        Some(self.values[n - 1 - shift])
    }

    pub(crate) fn values_mut(&mut self) -> &mut [i32] {
        &mut self.values
    }

    /// Recomputes the array from `seq` and panics on mismatch. Only active
    /// with debug assertions; a no-op otherwise.
    #[track_caller]
    pub fn debug_assert_matches(&self, seq: &BinarySequence) {
        if cfg!(debug_assertions) {
            assert_eq!(self.owner_len(), seq.len(), "sidelobe array length mismatch");
            assert!(compute_sidelobes(seq).values == self.values, "sidelobe array is stale for the given sequence");
        }
    }
}

/// `C_u(B)` from the definition.
pub fn compute_aacf(seq: &BinarySequence, shift: usize) -> Result<i32> {
    let b = seq.as_slice();
    let n = b.len();
    if shift >= n {
        return Err(Error::ShiftOutOfRange { shift, len: n });
    }
    Ok(b[..n - shift].iter().zip(&b[shift..]).map(|(&x, &y)| i32::from(x) * i32::from(y)).sum())
}

/// All reversed sidelobes, `Ω[i] = Σ_{j=0}^{i} b_j b_{j+n-1-i}`.
///
/// Quadratic; the search calls it once per run and then keeps the array
/// current with [`crate::flip_update`].
pub fn compute_sidelobes(seq: &BinarySequence) -> SidelobeArray {
    let b = seq.as_slice();
    let n = b.len();
    let values = (0..n - 1)
        .map(|i| {
            let tail = &b[n - 1 - i..];
            b[..=i].iter().zip(tail).map(|(&x, &y)| i32::from(x) * i32::from(y)).sum()
        })
        .collect();
    SidelobeArray { values }
}

/// Fitness and PSL of a sidelobe array in one pass.
#[inline]
pub fn evaluate(omega: &SidelobeArray) -> CostReport {
    evaluate_values(&omega.values)
}

// Squares fit in u32 and fourth powers in u64 while |v| < 2^16; the sum is
// kept exact as a u64 plus a count of wrap-arounds. Larger magnitudes take
// the u128 path.
#[inline]
pub(crate) fn evaluate_values(values: &[i32]) -> CostReport {
    let mut low: u64 = 0;
    let mut wraps: u64 = 0;
    let mut psl: u32 = 0;
    for &v in values {
        let a = v.unsigned_abs();
        psl = psl.max(a);
        let sq = a.wrapping_mul(a);
        let quartic = u64::from(sq) * u64::from(sq);
        let (sum, wrapped) = low.overflowing_add(quartic);
        low = sum;
        wraps += u64::from(wrapped);
    }
    if psl > u32::from(u16::MAX) {
        return evaluate_wide(values);
    }
    CostReport { fitness: (u128::from(wraps) << 64) | u128::from(low), psl }
}

#[inline]
fn evaluate_wide(values: &[i32]) -> CostReport {
    let mut fitness: u128 = 0;
    let mut psl: u32 = 0;
    for &v in values {
        let a = v.unsigned_abs();
        psl = psl.max(a);
        let sq = u128::from(u64::from(a) * u64::from(a));
        fitness += sq * sq;
    }
    CostReport { fitness, psl }
}

/// `max_{0<u<n} |C_u(B)|` straight from the autocorrelation definition.
pub fn psl_direct(seq: &BinarySequence) -> u32 {
    let b = seq.as_slice();
    let n = b.len();
    (1..n)
        .map(|u| {
            let c: i32 = b[..n - u].iter().zip(&b[u..]).map(|(&x, &y)| i32::from(x) * i32::from(y)).sum();
            c.unsigned_abs()
        })
        .max()
        .unwrap_or(0)
}
