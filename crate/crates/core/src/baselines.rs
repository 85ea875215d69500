//! Classical sequence families used as comparison points: m-sequences,
//! Legendre sequences and Rudin–Shapiro sequences, plus cyclic rotation.

use alloc::vec::Vec;

use crate::{BinarySequence, Error, Result};

/// Largest degree accepted for m-sequence generation.
pub const MAX_MSEQ_DEGREE: u32 = 32;

/// A polynomial over GF(2) of exact degree `degree`, stored as a bit mask
/// (bit `k` is the coefficient of `x^k`), known to be primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimitivePolynomial {
    degree: u32,
    mask: u64,
}

// One primitive polynomial per degree, starting at degree 2.
const BUILTIN: [u64; 16] = [
    0b111,                    // x^2 + x + 1
    0b1011,                   // x^3 + x + 1
    0b1_0011,                 // x^4 + x + 1
    0b10_0101,                // x^5 + x^2 + 1
    0b100_0011,               // x^6 + x + 1
    0b1000_0011,              // x^7 + x + 1
    0b1_0001_1101,            // x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001,           // x^9 + x^4 + 1
    0b100_0000_1001,          // x^10 + x^3 + 1
    0b1000_0000_0101,         // x^11 + x^2 + 1
    0b1_0000_0101_0011,       // x^12 + x^6 + x^4 + x + 1
    0b10_0000_0001_1011,      // x^13 + x^4 + x^3 + x + 1
    0b100_0100_0100_0011,     // x^14 + x^10 + x^6 + x + 1
    0b1000_0000_0000_0011,    // x^15 + x + 1
    0b1_0001_0000_0000_1011,  // x^16 + x^12 + x^3 + x + 1
    0b10_0000_0000_0000_1001, // x^17 + x^3 + 1
];

impl PrimitivePolynomial {
    pub const BUILTIN_DEGREES: core::ops::RangeInclusive<u32> = 2..=17;

    /// The built-in polynomial for `degree` in `2..=17`.
    pub fn builtin(degree: u32) -> Result<Self> {
        if !Self::BUILTIN_DEGREES.contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        Ok(Self { degree, mask: BUILTIN[(degree - 2) as usize] })
    }

    /// Validates a user-supplied polynomial by checking that `x` has
    /// multiplicative order `2^degree − 1` modulo it.
    pub fn new(degree: u32, mask: u64) -> Result<Self> {
        if !(1..=MAX_MSEQ_DEGREE).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        if !is_primitive(degree, mask) {
            return Err(Error::NotPrimitive { mask, degree });
        }
        Ok(Self { degree, mask })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Period of the generated m-sequence, `2^d − 1`.
    pub fn period(&self) -> usize {
        ((1u64 << self.degree) - 1) as usize
    }
}

/// Every primitive polynomial of the given degree, in increasing mask order.
pub fn primitive_polynomials(degree: u32) -> impl Iterator<Item = PrimitivePolynomial> {
    let valid = (1..=MAX_MSEQ_DEGREE).contains(&degree);
    let (lo, hi) = if valid {
        let top = 1u64 << degree;
        (top | 1, top << 1)
    } else {
        (0, 0)
    };
    (lo..hi)
        .step_by(2)
        .filter(move |&mask| is_primitive(degree, mask))
        .map(move |mask| PrimitivePolynomial { degree, mask })
}

fn is_primitive(degree: u32, mask: u64) -> bool {
    if mask >> degree != 1 || mask & 1 == 0 {
        return false;
    }
    let order = (1u64 << degree) - 1;
    let one = 1u64;
    let x = if degree == 1 { reduce(0b10, mask, degree) } else { 0b10 };
    if pow_mod(x, order, mask, degree) != one {
        return false;
    }
    prime_factors(order).all(|q| pow_mod(x, order / q, mask, degree) != one)
}

fn reduce(mut a: u64, modulus: u64, degree: u32) -> u64 {
    while a >> degree != 0 {
        let shift = 63 - a.leading_zeros() - degree;
        a ^= modulus << shift;
    }
    a
}

fn mul_mod(mut a: u64, mut b: u64, modulus: u64, degree: u32) -> u64 {
    let top = 1u64 << degree;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64, degree: u32) -> u64 {
    let mut result = 1u64;
    let mut b = base;
    while exp != 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, modulus, degree);
        }
        b = mul_mod(b, b, modulus, degree);
        exp >>= 1;
    }
    result
}

fn prime_factors(mut m: u64) -> impl Iterator<Item = u64> {
    let mut factors = Vec::new();
    let mut q = 2u64;
    while q * q <= m {
        if m % q == 0 {
            factors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    factors.into_iter()
}

/// One period of the LFSR sequence of `poly` started from `init`.
///
/// Bit `k` of `init` is output bit `a_k`; the recurrence is
/// `a_{t+d} = Σ_{k<d} c_k a_{t+k}` over GF(2). Bits map 1 → +1, 0 → −1.
pub fn mseq(poly: &PrimitivePolynomial, init: u64) -> Result<BinarySequence> {
    let d = poly.degree;
    if init == 0 {
        return Err(Error::ZeroState);
    }
    if init >> d != 0 {
        return Err(Error::StateTooWide { state: init, degree: d });
    }
    let taps = poly.mask & ((1u64 << d) - 1);
    let mut state = init;
    let mut bits = Vec::with_capacity(poly.period());
    for _ in 0..poly.period() {
        bits.push(state & 1 == 1);
        let feedback = u64::from((state & taps).count_ones() & 1);
        state = (state >> 1) | (feedback << (d - 1));
    }
    BinarySequence::from_bits(bits)
}

/// Length-`p` Legendre sequence: +1 at nonzero quadratic residues, −1 at
/// non-residues, and +1 at index 0.
pub fn legendre(p: u64) -> Result<BinarySequence> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let n = p as usize;
    let mut residue = alloc::vec![false; n];
    for i in 1..=(p / 2) {
        residue[(i * i % p) as usize] = true;
    }
    residue[0] = true;
    BinarySequence::from_bits(residue)
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut q = 3u64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 2;
    }
    true
}

/// Length-`2^k` Rudin–Shapiro sequence: element `i` is −1 exactly when the
/// binary expansion of `i` contains an odd number of (overlapping) `11`
/// pairs.
pub fn rudin_shapiro(k: u32) -> Result<BinarySequence> {
    if !(1..=31).contains(&k) {
        return Err(Error::RudinShapiroOrder(k));
    }
    let n = 1usize << k;
    BinarySequence::from_bits((0..n).map(|i| (i & (i >> 1)).count_ones() % 2 == 0))
}

/// Cyclic shift: output element `i` is input element `(i + shift) mod n`.
pub fn rotate(seq: &BinarySequence, shift: usize) -> BinarySequence {
    let b = seq.as_slice();
    let s = shift % b.len();
    let spins: Vec<i8> = b[s..].iter().chain(&b[..s]).copied().collect();
    BinarySequence::from_spins(spins).expect("rotation preserves validity")
}

/// The rotation with the smallest aperiodic PSL (smallest shift on ties)
/// and that PSL.
///
/// Every rotation is scored with the quadratic definition, abandoning it as
/// soon as one sidelobe reaches the best PSL found so far.
pub fn best_rotation_psl(seq: &BinarySequence) -> (usize, u32) {
    let b = seq.as_slice();
    let n = b.len();
    let doubled: Vec<i8> = b.iter().chain(b).copied().collect();
    let mut best = (0usize, u32::MAX);
    for shift in 0..n {
        let window = &doubled[shift..shift + n];
        if let Some(psl) = psl_if_below(window, best.1) {
            best = (shift, psl);
        }
    }
    best
}

fn psl_if_below(b: &[i8], bound: u32) -> Option<u32> {
    let n = b.len();
    let mut psl = 0;
    for u in 1..n {
        let c: i32 = b[..n - u].iter().zip(&b[u..]).map(|(&x, &y)| i32::from(x * y)).sum();
        let a = c.unsigned_abs();
        if a >= bound {
            return None;
        }
        psl = psl.max(a);
    }
    Some(psl)
}
