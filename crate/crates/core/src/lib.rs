#![no_std]

//! Core algorithms for finding long binary sequences with a low peak
//! sidelobe level (PSL).
//!
//! Everything here is allocation-light and free of IO so that it can run on
//! any target with `alloc`:
//!
//! - [`sequence`]: the ±1 [`BinarySequence`] type and its text format.
//! - [`sidelobes`]: aperiodic autocorrelation, the reversed sidelobe array
//!   and the quartic fitness with its PSL "beacon".
//! - [`flip`]: the O(n) in-place sidelobe update for a single bit flip.
//! - [`optimizer`]: stochastic hill climbing with a circular neighbour scan
//!   and random multi-flip kicks.
//! - [`baselines`]: m-sequences, Legendre and Rudin–Shapiro sequences,
//!   rotations.
//! - [`oracle`]: slow from-definition reference implementations used to
//!   check everything above.
//!
//! Wall-clock budgets, threads, files and the CLI live in the `lbs` crate.
//!
//! ```
//! use lbs_core::{NullSupervisor, Optimizer, SearchParams};
//!
//! let params = SearchParams { target_psl: Some(8), max_probes: Some(1_000_000), ..Default::default() };
//! let mut opt = Optimizer::random_start(127, 42, 0, params)?;
//! opt.run(&mut NullSupervisor);
//! assert!(opt.best_psl() <= 8);
//! # Ok::<(), lbs_core::Error>(())
//! ```

extern crate alloc;

pub mod baselines;
pub mod error;
pub mod flip;
pub mod optimizer;
pub mod oracle;
pub mod sequence;
pub mod sidelobes;

pub use error::Error;
pub use flip::{flip_many, flip_update, FlipGeometry};
pub use optimizer::{
    instance_rng, CostBaseline, Counters, NullSupervisor, Optimizer, Progress, ScanOutcome, SearchParams, StopReason,
    Supervisor, TracePoint,
};
pub use rand_chacha::ChaCha8Rng;
pub use sequence::BinarySequence;
pub use sidelobes::{compute_aacf, compute_sidelobes, evaluate, psl_direct, CostReport, SidelobeArray};

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
