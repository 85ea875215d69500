//! Campaign runner, file formats and command-line front end for the
//! low-PSL sequence search in [`lbs_core`].
//!
//! [`run`] and [`run_parallel`] drive the core optimizer against a
//! wall-clock budget; [`RunReport`] is the JSON document they produce.
//! [`bench`] runs the optimizer over a list of lengths and lines the
//! results up against m-sequences and the `√n` threshold.

pub mod bench;
pub mod cli;
pub mod config;
pub mod error;
pub mod report;
pub mod runner;
pub mod seqio;

pub use config::{InitSource, RunConfig};
pub use error::LbsError;
pub use report::{RunReport, TraceEntry, SCHEMA_VERSION};
pub use runner::{run, run_parallel, Campaign};

pub type Result<T, E = LbsError> = std::result::Result<T, E>;
