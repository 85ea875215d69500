//! In-place sidelobe update for a single bit flip.
//!
//! Negating `b_f` only changes products that contain `b_f`. In the reversed
//! array, entry `i` (lag `u = n-1-i`) contains `b_f b_{f+u}` when `i ≥ f` and
//! `b_{f-u} b_f` when `i ≥ n-1-f`. So entries below `min(f, n-1-f)` are
//! untouched, the next band loses one product and the tail loses two. Each
//! removed product `p` becomes `-p`, a change of `-2p`.
//!
//! The loops below follow that band structure, split on which side of the
//! midpoint `f` lies, and touch every changed entry exactly once.

use crate::{BinarySequence, Error, Result, SidelobeArray};

/// Loop bounds for flipping position `f` in a sequence of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipGeometry {
    pub position: usize,
    /// `min(n-f-1, f)`: first affected entry of the array.
    pub delta_min: usize,
    /// `max(n-f, f)`.
    pub delta_max: usize,
    /// `f ≤ (n-1)/2`, i.e. the position is in the left half (midpoint included).
    pub left_half: bool,
}

impl FlipGeometry {
    pub fn new(position: usize, len: usize) -> Result<Self> {
        if position >= len {
            return Err(Error::PositionOutOfRange { position, len });
        }
        Ok(Self::new_unchecked(position, len))
    }

    #[inline]
    fn new_unchecked(f: usize, n: usize) -> Self {
        Self { position: f, delta_min: (n - f - 1).min(f), delta_max: (n - f).max(f), left_half: 2 * f < n }
    }
}

/// Negates `seq[f]` and updates `omega` to the sidelobes of the new sequence
/// in a single O(n) pass, without allocating.
///
/// `omega` must be the sidelobe array of `seq` on entry. A stale array is
/// not detected (checking would be quadratic); see
/// [`SidelobeArray::debug_assert_matches`]. Applying the same flip twice
/// restores both arguments exactly.
pub fn flip_update(f: usize, seq: &mut BinarySequence, omega: &mut SidelobeArray) -> Result<()> {
    check_lengths(seq, omega)?;
    FlipGeometry::new(f, seq.len())?;
    flip_in_place(f, seq.spins_mut(), omega.values_mut());
    Ok(())
}

/// Sequential [`flip_update`] over `positions`. All positions are validated
/// before anything is modified.
pub fn flip_many(positions: &[usize], seq: &mut BinarySequence, omega: &mut SidelobeArray) -> Result<()> {
    check_lengths(seq, omega)?;
    let len = seq.len();
    if let Some(&position) = positions.iter().find(|&&p| p >= len) {
        return Err(Error::PositionOutOfRange { position, len });
    }
    for &f in positions {
        flip_in_place(f, seq.spins_mut(), omega.values_mut());
    }
    Ok(())
}

fn check_lengths(seq: &BinarySequence, omega: &SidelobeArray) -> Result<()> {
    if omega.owner_len() != seq.len() {
        return Err(Error::LengthMismatch { len: seq.len(), found: omega.values().len() });
    }
    Ok(())
}

/// The hot path. Callers guarantee `f < n` and `omega.len() == n - 1`.
#[inline]
pub(crate) fn flip_in_place(f: usize, psi: &mut [i8], omega: &mut [i32]) {
    let n = psi.len();
    debug_assert!(f < n && omega.len() + 1 == n);
    let g = FlipGeometry::new_unchecked(f, n);
    let (lo, hi) = (g.delta_min, g.delta_max);
    let twice = 2 * i32::from(psi[f]);

    if g.left_half {
        // One-product band: Ω[lo + q] -= 2Ψ[f]Ψ[n-q-1], q ∈ [0, hi-lo-1).
        let band = &mut omega[lo..hi - 1];
        for (w, &s) in band.iter_mut().zip(psi[2 * f + 1..].iter().rev()) {
            *w -= twice * i32::from(s);
        }
        // Two-product tail: Ω[hi + q - 1] -= 2Ψ[f](Ψ[2f-q] + Ψ[q]), q ∈ [0, n-hi).
        let tail = &mut omega[hi - 1..];
        let mirrored = psi[f + 1..=2 * f].iter().rev();
        for ((w, &a), &b) in tail.iter_mut().zip(mirrored).zip(&psi[..f]) {
            *w -= twice * (i32::from(a) + i32::from(b));
        }
    } else {
        // One-product band: Ω[lo + q] -= 2Ψ[f]Ψ[q], q ∈ [0, hi-lo).
        let band = &mut omega[lo..hi];
        for (w, &s) in band.iter_mut().zip(&psi[..hi - lo]) {
            *w -= twice * i32::from(s);
        }
        // Two-product tail: Ω[hi + q] -= 2Ψ[f](Ψ[hi-lo+q] + Ψ[n-q-1]), q ∈ [0, n-hi-1).
        let tail = &mut omega[hi..];
        let from_back = psi[hi + 1..].iter().rev();
        for ((w, &a), &b) in tail.iter_mut().zip(&psi[hi - lo..f]).zip(from_back) {
            *w -= twice * (i32::from(a) + i32::from(b));
        }
    }
    psi[f] = -psi[f];
}
