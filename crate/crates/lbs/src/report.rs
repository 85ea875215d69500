//! Machine-readable outputs: the run report (JSON), the improvement trace
//! (CSV) and plain-text summaries.

use std::fmt::Write as _;

use lbs_core::{CostBaseline, StopReason};
use serde::{Deserialize, Serialize};

/// Embedded in every JSON document and in the bench CSV.
pub const SCHEMA_VERSION: &str = "lbs.run.v1";

/// Header of the improvement-trace CSV.
pub const TRACE_CSV_HEADER: &str = "elapsed_seconds,psl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub elapsed_seconds: f64,
    pub psl: u32,
    /// Probes evaluated by the instance when this PSL was first seen.
    pub probes: u64,
}

/// Result of one instance, or the winning instance of a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub n: usize,
    pub seed: u64,
    pub instance: u64,
    pub instances: usize,
    pub budget_seconds: f64,
    pub target_psl: Option<u32>,
    pub kick_max: u32,
    pub cost_baseline: String,
    pub init: String,
    pub best_psl: u32,
    pub best_fitness: u128,
    pub best_sequence: String,
    pub final_psl: u32,
    pub final_fitness: u128,
    pub iterations: u64,
    pub probes: u64,
    pub accepted: u64,
    pub kicks: u64,
    pub stop_reason: String,
    pub elapsed_seconds: f64,
    pub best_found_seconds: f64,
    pub improvement_trace: Vec<TraceEntry>,
    /// Best PSL of every instance in the campaign, by instance index.
    pub instance_best_psl: Vec<u32>,
}

impl RunReport {
    /// Copy with every wall-clock field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.elapsed_seconds = 0.0;
        r.best_found_seconds = 0.0;
        for t in &mut r.improvement_trace {
            t.elapsed_seconds = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn trace_csv(&self) -> String {
        let mut out = String::from(TRACE_CSV_HEADER);
        out.push('\n');
        for t in &self.improvement_trace {
            let _ = writeln!(out, "{},{}", t.elapsed_seconds, t.psl);
        }
        out
    }

    pub const SUMMARY_CSV_HEADER: &'static str = "schema,n,seed,instances,budget_seconds,best_psl,best_fitness,\
iterations,probes,kicks,elapsed_seconds,best_found_seconds,stop_reason,best_sequence";

    pub fn summary_csv(&self) -> String {
        format!(
            "{}\n{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            Self::SUMMARY_CSV_HEADER,
            self.schema_version,
            self.n,
            self.seed,
            self.instances,
            self.budget_seconds,
            self.best_psl,
            self.best_fitness,
            self.iterations,
            self.probes,
            self.kicks,
            self.elapsed_seconds,
            self.best_found_seconds,
            self.stop_reason,
            self.best_sequence
        )
    }

    pub fn summary_text(&self) -> String {
        let sqrt_n = (self.n as f64).sqrt();
        format!(
            "n = {}\nbest psl = {} (sqrt(n) = {:.2})\nbest fitness = {}\nfound after {:.3} s of {:.3} s ({})\n\
iterations = {}, probes = {}, kicks = {}\ninstances = {}, seed = {}\nsequence = {}\n",
            self.n,
            self.best_psl,
            sqrt_n,
            self.best_fitness,
            self.best_found_seconds,
            self.elapsed_seconds,
            self.stop_reason,
            self.iterations,
            self.probes,
            self.kicks,
            self.instances,
            self.seed,
            self.best_sequence
        )
    }
}

pub fn baseline_name(b: CostBaseline) -> &'static str {
    match b {
        CostBaseline::ResetAfterKick => "reset-after-kick",
        CostBaseline::KeepBest => "keep-best",
    }
}

pub fn stop_name(r: StopReason) -> &'static str {
    match r {
        StopReason::TargetReached => "target-reached",
        StopReason::ProbeBudget => "probe-budget",
        StopReason::Halted => "halted",
    }
}
