//! Wall-clock campaigns over the core optimizer, single or multi-threaded.

use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};
use std::time::{Duration, Instant};

use lbs_core::{instance_rng, Optimizer, Progress, StopReason, Supervisor};

use crate::report::{RunReport, TraceEntry, SCHEMA_VERSION};
use crate::{Result, RunConfig};

/// State shared by all instances of one campaign: a stop flag and the
/// global best PSL (for early stop and progress display only).
#[derive(Debug)]
pub struct Campaign {
    stop: AtomicBool,
    best_psl: AtomicU32,
    started: Instant,
}

impl Campaign {
    pub fn new() -> Self {
        Self { stop: AtomicBool::new(false), best_psl: AtomicU32::new(u32::MAX), started: Instant::now() }
    }

    /// Asks every instance to stop at its next poll.
    pub fn cancel(&self) {
        self.stop.store(true, Ordering::Relaxed);
    }

    pub fn best_psl(&self) -> Option<u32> {
        match self.best_psl.load(Ordering::Relaxed) {
            u32::MAX => None,
            p => Some(p),
        }
    }
}

impl Default for Campaign {
    fn default() -> Self {
        Self::new()
    }
}

struct WallClock<'a> {
    started: Instant,
    budget: Duration,
    campaign: &'a Campaign,
    target_psl: Option<u32>,
    // only one instance prints
    progress: Option<Instant>,
}

impl Supervisor for WallClock<'_> {
    fn elapsed_seconds(&mut self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }

    fn keep_going(&mut self, progress: &Progress) -> bool {
        let best = self.campaign.best_psl.fetch_min(progress.best_psl, Ordering::Relaxed).min(progress.best_psl);
        if self.target_psl.is_some_and(|t| best <= t) {
            self.campaign.cancel();
        }
        if let Some(last) = self.progress.as_mut() {
            if last.elapsed() >= Duration::from_secs(1) {
                *last = Instant::now();
                eprintln!(
                    "[{:7.1}s] best psl {best} (instance probes {}, kicks {})",
                    self.campaign.started.elapsed().as_secs_f64(),
                    progress.counters.probes,
                    progress.counters.kicks
                );
            }
        }
        !self.campaign.stop.load(Ordering::Relaxed) && self.started.elapsed() < self.budget
    }
}

/// One instance (`stream` 0) of `config`.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    run_instance(config, 0, 1, &Campaign::new())
}

/// `instances` independent runs on their own threads, instance `i` using
/// random stream `i` of the campaign seed. Returns the report with the
/// lowest PSL; ties go to the instance that reached it first.
pub fn run_parallel(config: &RunConfig, instances: usize) -> Result<RunReport> {
    run_parallel_in(config, instances, &Campaign::new())
}

/// [`run_parallel`] with a caller-owned [`Campaign`], e.g. to cancel it
/// from another thread.
pub fn run_parallel_in(config: &RunConfig, instances: usize, campaign: &Campaign) -> Result<RunReport> {
    config.validate()?;
    if instances == 0 {
        return Err(crate::LbsError::config("at least one instance is required"));
    }
    let reports: Vec<Result<RunReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> =
            (0..instances).map(|i| scope.spawn(move || run_instance(config, i as u64, instances, campaign))).collect();
        handles.into_iter().map(|h| h.join().expect("search thread panicked")).collect()
    });
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    let per_instance: Vec<u32> = reports.iter().map(|r| r.best_psl).collect();
    let mut best = reports
        .into_iter()
        .min_by(|a, b| {
            a.best_psl
                .cmp(&b.best_psl)
                .then(a.best_found_seconds.total_cmp(&b.best_found_seconds))
                .then(a.instance.cmp(&b.instance))
        })
        .expect("instances >= 1");
    best.instance_best_psl = per_instance;
    Ok(best)
}

fn run_instance(config: &RunConfig, stream: u64, instances: usize, campaign: &Campaign) -> Result<RunReport> {
    let mut rng = instance_rng(config.seed, stream);
    let start = config.initial_sequence(&mut rng)?;
    let mut optimizer = Optimizer::new(start, config.search_params(), rng)?;
    let mut clock = WallClock {
        started: Instant::now(),
        budget: config.budget,
        campaign,
        target_psl: config.target_psl,
        progress: (config.progress && stream == 0).then(Instant::now),
    };
    let reason = optimizer.run(&mut clock);
    if reason == StopReason::TargetReached {
        campaign.cancel();
    }
    campaign.best_psl.fetch_min(optimizer.best_psl(), Ordering::Relaxed);
    let elapsed = clock.started.elapsed().as_secs_f64();

    let counters = optimizer.counters();
    let trace: Vec<TraceEntry> = optimizer
        .trace()
        .iter()
        .map(|t| TraceEntry { elapsed_seconds: t.elapsed_seconds, psl: t.psl, probes: t.probes })
        .collect();
    let current = optimizer.current_report();
    Ok(RunReport {
        schema_version: SCHEMA_VERSION.to_string(),
        n: optimizer.len(),
        seed: config.seed,
        instance: stream,
        instances,
        budget_seconds: config.budget.as_secs_f64(),
        target_psl: config.target_psl,
        kick_max: config.kick_max,
        cost_baseline: crate::report::baseline_name(config.cost_baseline).to_string(),
        init: config.init.to_string(),
        best_psl: optimizer.best_psl(),
        best_fitness: optimizer.best_fitness(),
        best_sequence: optimizer.best_sequence().to_string(),
        final_psl: current.psl,
        final_fitness: current.fitness,
        iterations: counters.iterations,
        probes: counters.probes,
        accepted: counters.accepted,
        kicks: counters.kicks,
        stop_reason: crate::report::stop_name(reason).to_string(),
        elapsed_seconds: elapsed,
        best_found_seconds: trace.last().map_or(0.0, |t| t.elapsed_seconds),
        improvement_trace: trace,
        instance_best_psl: vec![optimizer.best_psl()],
    })
}
