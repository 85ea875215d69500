//! The optimizer against a from-scratch reference climber that consumes the
//! same random stream but recomputes every candidate with the oracle.

use lbs_core::oracle::{oracle_fitness, oracle_psl, oracle_sidelobes};
use lbs_core::{
    instance_rng, BinarySequence, CostBaseline, CostReport, NullSupervisor, Optimizer, Progress, ScanOutcome,
    SearchParams, StopReason, Supervisor,
};
use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Reference {
    spins: Vec<i8>,
    cost: u128,
    rng: ChaCha8Rng,
    kick_max: usize,
}

impl Reference {
    fn fitness(spins: &[i8]) -> u128 {
        oracle_fitness(&BinarySequence::from_spins(spins.to_vec()).unwrap())
    }

    fn scan(&mut self) -> Option<usize> {
        let n = self.spins.len();
        let r = self.rng.gen_range(0..n);
        for x in 0..n {
            let f = (r + x) % n;
            self.spins[f] = -self.spins[f];
            let cost = Self::fitness(&self.spins);
            if cost < self.cost {
                self.cost = cost;
                return Some(f);
            }
            self.spins[f] = -self.spins[f];
        }
        None
    }

    fn kick(&mut self) -> Vec<usize> {
        let n = self.spins.len();
        let count = 1 + self.rng.gen_range(0..self.kick_max.min(n));
        let positions = index::sample(&mut self.rng, n, count).into_vec();
        for &f in &positions {
            self.spins[f] = -self.spins[f];
        }
        self.cost = Self::fitness(&self.spins);
        positions
    }
}

#[test]
fn trajectory_matches_reference() {
    for seed in 0..5u64 {
        let n = 10;
        let mut opt = Optimizer::random_start(n, seed, 0, SearchParams::default()).unwrap();
        let mut reference = {
            let mut rng = instance_rng(seed, 0);
            let start = BinarySequence::random(n, &mut rng).unwrap();
            assert_eq!(&start, opt.sequence());
            Reference { cost: Reference::fitness(start.as_slice()), spins: start.into_spins(), rng, kick_max: 4 }
        };
        for _ in 0..300 {
            let got = opt.scan_step();
            let expected = reference.scan();
            match (got, expected) {
                (ScanOutcome::Improved(f), Some(g)) => assert_eq!(f, g),
                (ScanOutcome::LocalOptimum, None) => assert_eq!(opt.kick(), reference.kick()),
                other => panic!("diverged: {other:?}"),
            }
            assert_eq!(opt.current_cost(), reference.cost);
            assert_eq!(opt.sequence().as_slice(), &reference.spins[..]);
            assert_eq!(opt.sidelobes(), &oracle_sidelobes(opt.sequence()));
        }
    }
}

#[test]
fn local_optimum_detected_in_exactly_n_probes() {
    let n = 37;
    let mut opt = Optimizer::random_start(n, 21, 0, SearchParams::default()).unwrap();
    while let ScanOutcome::Improved(_) = opt.scan_step() {}
    let at_optimum = opt.sequence().clone();
    for _ in 0..5 {
        let before = opt.counters().probes;
        assert_eq!(opt.scan_step(), ScanOutcome::LocalOptimum);
        assert_eq!(opt.counters().probes - before, n as u64);
        assert_eq!(opt.sequence(), &at_optimum);
    }
    // no neighbour is strictly better
    let cost = oracle_fitness(&at_optimum);
    for f in 0..n {
        let mut spins = at_optimum.as_slice().to_vec();
        spins[f] = -spins[f];
        assert!(oracle_fitness(&BinarySequence::from_spins(spins).unwrap()) >= cost);
    }
}

#[test]
fn never_misses_an_improving_neighbour() {
    for seed in 0..40u64 {
        let n = 24;
        let mut opt = Optimizer::random_start(n, seed, 0, SearchParams::default()).unwrap();
        for _ in 0..30 {
            let seq = opt.sequence().clone();
            let cost = opt.current_cost();
            let improvable = (0..n).any(|f| {
                let mut spins = seq.as_slice().to_vec();
                spins[f] = -spins[f];
                oracle_fitness(&BinarySequence::from_spins(spins).unwrap()) < cost
            });
            let outcome = opt.scan_step();
            assert_eq!(improvable, matches!(outcome, ScanOutcome::Improved(_)), "seed {seed}");
            if outcome == ScanOutcome::LocalOptimum {
                opt.kick();
            }
        }
    }
}

#[test]
fn accepted_costs_strictly_decrease_between_kicks() {
    let mut opt = Optimizer::random_start(300, 77, 0, SearchParams::default()).unwrap();
    for _ in 0..20 {
        let mut last = opt.current_cost();
        while let ScanOutcome::Improved(_) = opt.scan_step() {
            assert!(opt.current_cost() < last);
            last = opt.current_cost();
        }
        opt.kick();
    }
}

/// Logs the minimum PSL over every evaluated candidate.
struct Logger {
    min_psl: u32,
    evaluated: u64,
    budget: u64,
}

impl Supervisor for Logger {
    fn keep_going(&mut self, progress: &Progress) -> bool {
        progress.counters.probes < self.budget
    }

    fn observe(&mut self, seq: &BinarySequence, report: &CostReport) {
        assert_eq!(u64::from(report.psl), oracle_psl(seq));
        self.min_psl = self.min_psl.min(report.psl);
        self.evaluated += 1;
    }
}

#[test]
fn beacon_reports_minimum_over_everything_evaluated() {
    for baseline in [CostBaseline::ResetAfterKick, CostBaseline::KeepBest] {
        let params = SearchParams { cost_baseline: baseline, ..SearchParams::default() };
        let mut opt = Optimizer::random_start(31, 5, 0, params).unwrap();
        let initial = oracle_psl(opt.sequence()) as u32;
        let mut log = Logger { min_psl: initial, evaluated: 0, budget: 20_000 };
        assert_eq!(opt.run(&mut log), StopReason::Halted);
        assert_eq!(opt.best_psl(), log.min_psl);
        assert_eq!(oracle_psl(opt.best_sequence()) as u32, opt.best_psl());
        assert_eq!(oracle_fitness(opt.best_sequence()), opt.best_fitness());
        assert_eq!(log.evaluated, opt.counters().probes + opt.counters().kicks);
    }
}

#[test]
fn identical_seeds_give_identical_runs() {
    let params = SearchParams { max_probes: Some(300_000), ..SearchParams::default() };
    let run = || {
        let mut opt = Optimizer::random_start(257, 1234, 3, params).unwrap();
        let reason = opt.run(&mut NullSupervisor);
        (reason, opt.best_psl(), opt.best_sequence().clone(), opt.counters(), opt.trace().to_vec())
    };
    assert_eq!(run(), run());
    let mut other = Optimizer::random_start(257, 1234, 4, params).unwrap();
    other.run(&mut NullSupervisor);
    assert_ne!(other.best_sequence(), &run().2);
}
