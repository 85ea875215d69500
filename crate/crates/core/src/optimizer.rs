//! Stochastic hill climbing over single-flip neighbourhoods.
//!
//! A scan starts at a random position `r` and probes the neighbours
//! `(r + i) mod n` for `i = 0 … n-1`: flip, evaluate, keep the flip on the
//! first strictly smaller quartic fitness, otherwise flip back. A scan that
//! finds nothing has proved a local optimum in exactly `n` probes. The
//! search then kicks the sequence with `1 + R(K)` random distinct flips and
//! climbs again.
//!
//! Every evaluated sequence also yields its PSL, and the lowest PSL seen so
//! far (together with the sequence) is kept separately from the climbing
//! state, including transient candidates that were rejected.
//!
//! The optimizer never looks at a clock itself. A [`Supervisor`] supplies
//! elapsed time for the improvement trace and decides when to stop.

use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flip::flip_in_place;
use crate::sidelobes::evaluate_values;
use crate::{compute_sidelobes, BinarySequence, CostReport, Error, Result, SidelobeArray};

/// What the climber compares candidates against after a kick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CostBaseline {
    /// The kicked sequence's own fitness becomes the new reference, so the
    /// climb restarts from the kicked state.
    #[default]
    ResetAfterKick,
    /// The reference stays at the best fitness reached before the kick;
    /// a neighbour is only accepted if it beats that.
    KeepBest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchParams {
    /// Upper bound `K` on the number of flips in one kick.
    pub kick_max: u32,
    pub cost_baseline: CostBaseline,
    /// Stop as soon as a sequence with PSL at or below this is seen.
    pub target_psl: Option<u32>,
    /// Stop after this many probes. Unlike a wall-clock budget this gives a
    /// reproducible stopping point.
    pub max_probes: Option<u64>,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self { kick_max: 4, cost_baseline: CostBaseline::ResetAfterKick, target_psl: None, max_probes: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Counters {
    /// Completed or interrupted scans.
    pub iterations: u64,
    /// Candidate flips evaluated.
    pub probes: u64,
    pub accepted: u64,
    pub kicks: u64,
}

/// A new lowest PSL, with the probe count and supervisor time at which it
/// was first seen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub elapsed_seconds: f64,
    pub probes: u64,
    pub psl: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanOutcome {
    /// The flip at this position lowered the fitness and was kept.
    Improved(usize),
    LocalOptimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    TargetReached,
    ProbeBudget,
    /// The supervisor declined to continue (time budget, cancellation).
    Halted,
}

/// Snapshot handed to [`Supervisor::keep_going`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub best_psl: u32,
    pub counters: Counters,
}

/// Outside control over a running search.
pub trait Supervisor {
    /// Seconds since the run started; used to timestamp trace points.
    fn elapsed_seconds(&mut self) -> f64 {
        0.0
    }

    /// Polled every few probes and after each kick. Returning `false`
    /// stops the run at the next consistent point.
    fn keep_going(&mut self, progress: &Progress) -> bool;

    /// Called for every evaluated sequence. `seq` is the candidate itself,
    /// which may be reverted right after.
    #[inline]
    fn observe(&mut self, _seq: &BinarySequence, _report: &CostReport) {}
}

/// Never stops, reports zero elapsed time.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullSupervisor;

impl Supervisor for NullSupervisor {
    fn keep_going(&mut self, _progress: &Progress) -> bool {
        true
    }
}

/// Search state: the current sequence and its sidelobes, the climbing
/// reference cost, the best-PSL record and the random stream.
#[derive(Debug, Clone)]
pub struct Optimizer {
    seq: BinarySequence,
    omega: SidelobeArray,
    current_cost: u128,
    best_psl: u32,
    best_fitness: u128,
    best_seq: BinarySequence,
    rng: ChaCha8Rng,
    params: SearchParams,
    counters: Counters,
    trace: Vec<TracePoint>,
    climbing: bool,
    poll_every: u64,
}

/// The generator for instance `stream` of a campaign seeded with `seed`:
/// ChaCha8 keyed by `seed_from_u64(seed)` on stream number `stream`.
pub fn instance_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

impl Optimizer {
    /// Starts from `seq`. Computes the sidelobes once with the quadratic
    /// method; after that everything is incremental.
    pub fn new(seq: BinarySequence, params: SearchParams, rng: ChaCha8Rng) -> Result<Self> {
        if params.kick_max == 0 {
            return Err(Error::ZeroKick);
        }
        let omega = compute_sidelobes(&seq);
        let report = evaluate_values(omega.values());
        let n = seq.len() as u64;
        Ok(Self {
            best_seq: seq.clone(),
            seq,
            omega,
            current_cost: report.fitness,
            best_psl: report.psl,
            best_fitness: report.fitness,
            rng,
            params,
            counters: Counters::default(),
            trace: alloc::vec![TracePoint { elapsed_seconds: 0.0, probes: 0, psl: report.psl }],
            climbing: true,
            poll_every: (65_536 / n).clamp(1, 4096),
        })
    }

    /// Uniformly random start drawn from `instance_rng(seed, stream)`, which
    /// then drives the search.
    pub fn random_start(len: usize, seed: u64, stream: u64, params: SearchParams) -> Result<Self> {
        let mut rng = instance_rng(seed, stream);
        let seq = BinarySequence::random(len, &mut rng)?;
        Self::new(seq, params, rng)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sequence(&self) -> &BinarySequence {
        &self.seq
    }

    pub fn sidelobes(&self) -> &SidelobeArray {
        &self.omega
    }

    /// The reference fitness new candidates must beat.
    pub fn current_cost(&self) -> u128 {
        self.current_cost
    }

    pub fn best_psl(&self) -> u32 {
        self.best_psl
    }

    /// Fitness of [`Self::best_sequence`].
    pub fn best_fitness(&self) -> u128 {
        self.best_fitness
    }

    pub fn best_sequence(&self) -> &BinarySequence {
        &self.best_seq
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    pub fn params(&self) -> &SearchParams {
        &self.params
    }

    /// Lowest-PSL history, starting with the initial sequence.
    pub fn trace(&self) -> &[TracePoint] {
        &self.trace
    }

    /// Fitness and PSL of the current sequence.
    pub fn current_report(&self) -> CostReport {
        evaluate_values(self.omega.values())
    }

    /// One full circular scan. Returns `LocalOptimum` after `n` failed
    /// probes with the sequence unchanged.
    pub fn scan_step(&mut self) -> ScanOutcome {
        match self.scan(&mut NullSupervisor, false) {
            Ok(outcome) => outcome,
            Err(_) => unreachable!("scan without limits cannot stop"),
        }
    }

    /// Applies `1 + R(min(K, n))` flips at distinct random positions and
    /// returns the positions.
    pub fn kick(&mut self) -> Vec<usize> {
        self.kick_with(&mut NullSupervisor)
    }

    /// Alternates scans and kicks until a stop condition fires. With no
    /// target, no probe budget and a supervisor that never declines, this
    /// does not return.
    pub fn run<S: Supervisor>(&mut self, sup: &mut S) -> StopReason {
        if let Some(reason) = self.limit_reached() {
            return reason;
        }
        loop {
            if self.climbing {
                match self.scan(sup, true) {
                    Ok(ScanOutcome::Improved(_)) => {}
                    Ok(ScanOutcome::LocalOptimum) => self.climbing = false,
                    Err(reason) => return reason,
                }
            } else {
                self.kick_with(sup);
                self.climbing = true;
                if let Some(reason) = self.limit_reached() {
                    return reason;
                }
                if !sup.keep_going(&self.progress()) {
                    return StopReason::Halted;
                }
            }
        }
    }

    fn progress(&self) -> Progress {
        Progress { best_psl: self.best_psl, counters: self.counters }
    }

    fn limit_reached(&self) -> Option<StopReason> {
        if self.params.target_psl.is_some_and(|t| self.best_psl <= t) {
            return Some(StopReason::TargetReached);
        }
        if self.params.max_probes.is_some_and(|m| self.counters.probes >= m) {
            return Some(StopReason::ProbeBudget);
        }
        None
    }

    #[inline]
    fn check_stop<S: Supervisor>(&self, sup: &mut S) -> Option<StopReason> {
        if let Some(reason) = self.limit_reached() {
            return Some(reason);
        }
        if self.counters.probes % self.poll_every == 0 && !sup.keep_going(&self.progress()) {
            return Some(StopReason::Halted);
        }
        None
    }

    fn scan<S: Supervisor>(&mut self, sup: &mut S, limited: bool) -> Result<ScanOutcome, StopReason> {
        let n = self.seq.len();
        let start = self.rng.gen_range(0..n);
        self.counters.iterations += 1;
        for i in 0..n {
            let mut f = start + i;
            if f >= n {
                f -= n;
            }
            flip_in_place(f, self.seq.spins_mut(), self.omega.values_mut());
            self.counters.probes += 1;
            let report = self.beacon(sup);
            if report.fitness < self.current_cost {
                self.current_cost = report.fitness;
                self.counters.accepted += 1;
                if limited {
                    if let Some(reason) = self.check_stop(sup) {
                        return Err(reason);
                    }
                }
                return Ok(ScanOutcome::Improved(f));
            }
            flip_in_place(f, self.seq.spins_mut(), self.omega.values_mut());
            if limited {
                if let Some(reason) = self.check_stop(sup) {
                    return Err(reason);
                }
            }
        }
        Ok(ScanOutcome::LocalOptimum)
    }

    fn kick_with<S: Supervisor>(&mut self, sup: &mut S) -> Vec<usize> {
        let n = self.seq.len();
        let bound = (self.params.kick_max as usize).min(n);
        let count = 1 + self.rng.gen_range(0..bound);
        let positions = index::sample(&mut self.rng, n, count).into_vec();
        for &f in &positions {
            flip_in_place(f, self.seq.spins_mut(), self.omega.values_mut());
        }
        self.counters.kicks += 1;
        let report = self.beacon(sup);
        if self.params.cost_baseline == CostBaseline::ResetAfterKick {
            self.current_cost = report.fitness;
        }
        positions
    }

    // Evaluates the current sequence and updates the PSL record.
    #[inline]
    fn beacon<S: Supervisor>(&mut self, sup: &mut S) -> CostReport {
        let report = evaluate_values(self.omega.values());
        sup.observe(&self.seq, &report);
        if report.psl < self.best_psl {
            self.best_psl = report.psl;
            self.best_fitness = report.fitness;
            self.best_seq.overwrite_from(self.seq.as_slice());
            self.trace.push(TracePoint {
                elapsed_seconds: sup.elapsed_seconds(),
                probes: self.counters.probes,
                psl: report.psl,
            });
        }
        report
    }
}
