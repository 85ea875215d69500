use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence length {0} is too short, at least 2 elements are required")]
    TooShort(usize),

    #[error("invalid spin value {value} at index {index}, expected +1 or -1")]
    InvalidSpin { index: usize, value: i64 },

    /// `position` is 1-based, counted in characters.
    #[error("unexpected character {found:?} at position {position}")]
    Parse { position: usize, found: char },

    #[error("shift {shift} out of range for sequence length {len}")]
    ShiftOutOfRange { shift: usize, len: usize },

    #[error("flip position {position} out of range for sequence length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("sidelobe array has {found} entries, sequence of length {len} needs {expected}", expected = .len - 1)]
    LengthMismatch { len: usize, found: usize },

    #[error("LFSR initial state must be non-zero")]
    ZeroState,

    #[error("initial state {state:#x} does not fit in {degree} bits")]
    StateTooWide { state: u64, degree: u32 },

    #[error("polynomial {mask:#x} is not a primitive polynomial of degree {degree}")]
    NotPrimitive { mask: u64, degree: u32 },

    #[error("no built-in primitive polynomial of degree {0}")]
    UnsupportedDegree(u32),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("Rudin-Shapiro order must be between 1 and 31, got {0}")]
    RudinShapiroOrder(u32),

    #[error("exhaustive search supports lengths 2..={max}, got {len}")]
    ExhaustiveRange { len: usize, max: usize },

    #[error("kick bound must be at least 1")]
    ZeroKick,
}
