//! The ±1 sequence type and its one-line text format.
//!
//! The text format is a single line of `+`/`-` characters (`+` is +1). The
//! parser also accepts `1`/`0` for +1/−1 and tolerates a trailing newline.
//! Display always writes `+`/`-`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// A binary sequence `b_0 … b_{n-1}` with every element in {−1, +1} and
/// `n ≥ 2`.
///
/// Spins are stored one per byte so the flip engine can multiply them
/// directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    spins: Vec<i8>,
}

impl BinarySequence {
    /// Builds a sequence from ±1 values, rejecting anything else.
    pub fn from_spins(spins: Vec<i8>) -> Result<Self> {
        if spins.len() < 2 {
            return Err(Error::TooShort(spins.len()));
        }
        if let Some((index, &value)) = spins.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(Error::InvalidSpin { index, value: value.into() });
        }
        Ok(Self { spins })
    }

    /// Maps `true` to +1 and `false` to −1.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let spins: Vec<i8> = bits.into_iter().map(|b| if b { 1 } else { -1 }).collect();
        Self::from_spins(spins)
    }

    /// The constant all-(+1) sequence.
    pub fn ones(len: usize) -> Result<Self> {
        Self::from_spins(alloc::vec![1; len])
    }

    /// Uniformly random spins.
    pub fn random<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Result<Self> {
        Self::from_spins((0..len).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect())
    }

    /// Length `n`.
    #[inline]
    pub fn len(&self) -> usize {
        self.spins.len()
    }

    /// Always false; present for API symmetry with slices.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[i8] {
        &self.spins
    }

    #[inline]
    pub fn get(&self, index: usize) -> Option<i8> {
        self.spins.get(index).copied()
    }

    pub fn into_spins(self) -> Vec<i8> {
        self.spins
    }

    /// Negates the element at `index`. Does not touch any sidelobe array;
    /// use [`crate::flip_update`] to keep one in sync.
    pub fn negate_at(&mut self, index: usize) -> Result<()> {
        let len = self.len();
        let s = self.spins.get_mut(index).ok_or(Error::PositionOutOfRange { position: index, len })?;
        *s = -*s;
        Ok(())
    }

    /// Element-wise negation `−B`.
    pub fn negated(&self) -> Self {
        Self { spins: self.spins.iter().map(|&s| -s).collect() }
    }

    /// The sequence read backwards.
    pub fn reversed(&self) -> Self {
        Self { spins: self.spins.iter().rev().copied().collect() }
    }

    /// `b_i → (−1)^i b_i`.
    pub fn alternated(&self) -> Self {
        Self { spins: self.spins.iter().enumerate().map(|(i, &s)| if i % 2 == 0 { s } else { -s }).collect() }
    }

    pub(crate) fn spins_mut(&mut self) -> &mut [i8] {
        &mut self.spins
    }

    pub(crate) fn overwrite_from(&mut self, other: &[i8]) {
        self.spins.copy_from_slice(other);
    }
}

impl AsRef<[i8]> for BinarySequence {
    fn as_ref(&self) -> &[i8] {
        &self.spins
    }
}

impl TryFrom<Vec<i8>> for BinarySequence {
    type Error = Error;

    fn try_from(spins: Vec<i8>) -> Result<Self> {
        Self::from_spins(spins)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        for &s in &self.spins {
            f.write_char(if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let line = text.strip_suffix('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).unwrap_or(text);
        let mut spins = Vec::with_capacity(line.len());
        for (i, c) in line.chars().enumerate() {
            spins.push(match c {
                '+' | '1' => 1,
                '-' | '0' => -1,
                found => return Err(Error::Parse { position: i + 1, found }),
            });
        }
        Self::from_spins(spins)
    }
}
