//! Optimizer vs. baselines over a list of lengths, one row per length.

use std::fmt::Write as _;
use std::time::Duration;

use lbs_core::baselines::{self, PrimitivePolynomial};
use lbs_core::psl_direct;
use serde::Serialize;

use crate::config::mseq_degree;
use crate::{run_parallel, LbsError, Result, RunConfig};

pub const BENCH_SCHEMA_VERSION: &str = "lbs.bench.v1";

/// Best published PSL of m-sequences of degree 13..=17 (over all primitive
/// polynomials and rotations), and the best PSL reported for the same
/// lengths by the hill-climbing search this crate implements.
pub const PUBLISHED_MSEQ: [(u32, u32, u32); 5] =
    [(13, 85, 77), (14, 125, 115), (15, 175, 171), (16, 258, 254), (17, 363, 360)];

/// Squares `x²` for `x` in `18..=44`.
pub fn square_grid() -> Vec<usize> {
    (18..=44).map(|x| x * x).collect()
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub lengths: Vec<usize>,
    pub budget: Duration,
    pub instances: usize,
    pub seed: u64,
    pub kick_max: u32,
    /// Also search all rotations of the m-sequence (cubic in n).
    pub best_rotation: bool,
    /// Stop each length as soon as the PSL drops below `√n`.
    pub stop_below_sqrt: bool,
    pub progress: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub schema: &'static str,
    pub n: usize,
    pub budget_seconds: f64,
    pub instances: usize,
    pub optimizer_psl: u32,
    pub optimizer_fitness: u128,
    pub time_to_best_seconds: f64,
    pub sqrt_n: f64,
    pub below_sqrt: bool,
    pub mseq_degree: Option<u32>,
    pub mseq_psl: Option<u32>,
    pub mseq_best_rotation_psl: Option<u32>,
    pub published_mseq_psl: Option<u32>,
    pub published_search_psl: Option<u32>,
}

pub const BENCH_CSV_HEADER: &str = "schema,n,budget_seconds,instances,optimizer_psl,optimizer_fitness,\
time_to_best_seconds,sqrt_n,below_sqrt,mseq_degree,mseq_psl,mseq_best_rotation_psl,published_mseq_psl,\
published_search_psl";

/// Largest integer strictly below `√n`.
pub fn largest_below_sqrt(n: usize) -> u32 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r >= n as u64 {
        r -= 1;
    }
    while (r + 1) * (r + 1) < n as u64 {
        r += 1;
    }
    r as u32
}

pub fn validate(config: &BenchConfig) -> Result<()> {
    if config.lengths.is_empty() {
        return Err(LbsError::config("no lengths given"));
    }
    if let Some(&n) = config.lengths.iter().find(|&&n| n < 2) {
        return Err(LbsError::config(format!("length must be at least 2, got {n}")));
    }
    if config.instances == 0 {
        return Err(LbsError::config("at least one instance is required"));
    }
    if config.budget.is_zero() {
        return Err(LbsError::config("budget must be positive"));
    }
    Ok(())
}

pub fn run_bench(config: &BenchConfig, mut on_row: impl FnMut(&BenchRow)) -> Result<Vec<BenchRow>> {
    validate(config)?;
    let mut rows = Vec::with_capacity(config.lengths.len());
    for &n in &config.lengths {
        let mut run_config = RunConfig::new(n, config.seed).with_budget(config.budget);
        run_config.kick_max = config.kick_max;
        run_config.progress = config.progress;
        if config.stop_below_sqrt {
            run_config.target_psl = Some(largest_below_sqrt(n));
        }
        let report = run_parallel(&run_config, config.instances)?;
        let degree = mseq_degree(n).filter(|d| PrimitivePolynomial::BUILTIN_DEGREES.contains(d));
        let mseq = degree.map(|d| baselines::mseq(&PrimitivePolynomial::builtin(d)?, 1)).transpose()?;
        let published = degree.and_then(|d| PUBLISHED_MSEQ.iter().find(|p| p.0 == d));
        let sqrt_n = (n as f64).sqrt();
        let row = BenchRow {
            schema: BENCH_SCHEMA_VERSION,
            n,
            budget_seconds: config.budget.as_secs_f64(),
            instances: config.instances,
            optimizer_psl: report.best_psl,
            optimizer_fitness: report.best_fitness,
            time_to_best_seconds: report.best_found_seconds,
            sqrt_n,
            below_sqrt: f64::from(report.best_psl) < sqrt_n,
            mseq_degree: degree,
            mseq_psl: mseq.as_ref().map(psl_direct),
            mseq_best_rotation_psl: mseq
                .as_ref()
                .filter(|_| config.best_rotation)
                .map(|s| baselines::best_rotation_psl(s).1),
            published_mseq_psl: published.map(|p| p.1),
            published_search_psl: published.map(|p| p.2),
        };
        on_row(&row);
        rows.push(row);
    }
    Ok(rows)
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "{},{},{},{},{},{},{},{:.4},{},{},{},{},{},{}",
            self.schema,
            self.n,
            self.budget_seconds,
            self.instances,
            self.optimizer_psl,
            self.optimizer_fitness,
            self.time_to_best_seconds,
            self.sqrt_n,
            self.below_sqrt,
            cell(self.mseq_degree),
            cell(self.mseq_psl),
            cell(self.mseq_best_rotation_psl),
            cell(self.published_mseq_psl),
            cell(self.published_search_psl),
        );
        s
    }
}
