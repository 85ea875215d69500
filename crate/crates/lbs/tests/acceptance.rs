//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line.
//!
//! Tests take a shared lock so that timing-sensitive criteria never share
//! the CPU with each other.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use lbs::bench::largest_below_sqrt;
use lbs::{run, run_parallel, RunConfig, RunReport};
use lbs_core::baselines::{mseq, PrimitivePolynomial};
use lbs_core::oracle::{exhaustive_min_psl, oracle_aacf, oracle_flip, periodic_autocorrelation};
use lbs_core::{
    compute_aacf, compute_sidelobes, evaluate, flip_update, instance_rng, psl_direct, BinarySequence, Optimizer,
    ScanOutcome, SearchParams,
};
use rand::Rng;

static EXCLUSIVE: Mutex<()> = Mutex::new(());

fn exclusive() -> std::sync::MutexGuard<'static, ()> {
    EXCLUSIVE.lock().unwrap_or_else(|e| e.into_inner())
}

fn verdict(id: u32, name: &str, passed: bool, detail: impl AsRef<str>) {
    println!("AC-{id:02} {name}: {} ({})", if passed { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(passed, "AC-{id:02} {name} failed: {}", detail.as_ref());
}

fn lbs(args: &[&str]) -> RunReport {
    let out = Command::new(env!("CARGO_BIN_EXE_lbs")).args(args).arg("--quiet").output().expect("spawn lbs");
    assert!(out.status.success(), "lbs {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("run report json")
}

#[test]
fn ac01_flip_engine_matches_oracle() {
    let _guard = exclusive();
    let started = Instant::now();
    let mut rng = instance_rng(1, 0);
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for n in 2..=64usize {
        for _ in 0..100 {
            let seq = BinarySequence::random(n, &mut rng).unwrap();
            let omega = compute_sidelobes(&seq);
            for f in 0..n {
                let (mut s, mut o) = (seq.clone(), omega.clone());
                flip_update(f, &mut s, &mut o).unwrap();
                let (expected_seq, expected_omega) = oracle_flip(&seq, f).unwrap();
                checked += 1;
                if s != expected_seq || o != expected_omega {
                    mismatches += 1;
                }
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(
        1,
        "flip engine oracle equivalence",
        mismatches == 0 && secs < 30.0,
        format!("{checked} flips, {mismatches} mismatches, {secs:.2} s"),
    );
}

#[test]
fn ac02_double_flip_restores_state() {
    let _guard = exclusive();
    let started = Instant::now();
    let mut rng = instance_rng(2, 0);
    let mut failures = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=512);
        let f = rng.gen_range(0..n);
        let seq = BinarySequence::random(n, &mut rng).unwrap();
        let omega = compute_sidelobes(&seq);
        let (mut s, mut o) = (seq.clone(), omega.clone());
        flip_update(f, &mut s, &mut o).unwrap();
        flip_update(f, &mut s, &mut o).unwrap();
        if s != seq || o != omega {
            failures += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(
        2,
        "reversibility",
        failures == 0 && secs < 10.0,
        format!("10000 triples, {failures} failures, {secs:.2} s"),
    );
}

fn parity_and_bound_hold(seq: &BinarySequence) -> bool {
    let n = seq.len();
    (1..n).all(|u| {
        let c = compute_aacf(seq, u).unwrap();
        c.rem_euclid(2) as usize == (n - u) % 2 && c.unsigned_abs() as usize <= n - u
    })
}

fn all_sequences(n: usize) -> impl Iterator<Item = BinarySequence> {
    (0u32..(1 << n)).map(move |x| BinarySequence::from_bits((0..n).map(|j| x >> j & 1 == 1)).unwrap())
}

fn random_sample(count: usize) -> Vec<BinarySequence> {
    let mut rng = instance_rng(3, 0);
    let mut out: Vec<BinarySequence> = (0..count)
        .map(|_| {
            let n = rng.gen_range(15..=4096);
            BinarySequence::random(n, &mut rng).unwrap()
        })
        .collect();
    out.push(BinarySequence::random(4096, &mut rng).unwrap());
    out
}

#[test]
fn ac03_rearrangement_identity() {
    let _guard = exclusive();
    let mut checked = 0u64;
    let mut failures = 0u64;
    for n in 2..=14 {
        for seq in all_sequences(n) {
            checked += 1;
            if psl_direct(&seq) != evaluate(&compute_sidelobes(&seq)).psl {
                failures += 1;
            }
        }
    }
    for seq in random_sample(150) {
        checked += 1;
        let c = oracle_aacf(&seq);
        let by_definition = c[1..].iter().map(|v| v.unsigned_abs()).max().unwrap();
        let report = evaluate(&compute_sidelobes(&seq));
        if psl_direct(&seq) != report.psl || u64::from(report.psl) != by_definition {
            failures += 1;
        }
    }
    verdict(
        3,
        "rearrangement identity",
        failures == 0,
        format!("{checked} sequences (exhaustive n <= 14, random n <= 4096), {failures} failures"),
    );
}

#[test]
fn ac04_parity_and_bound() {
    let _guard = exclusive();
    let mut checked = 0u64;
    let mut failures = 0u64;
    let exhaustive = (2..=14).flat_map(all_sequences);
    for seq in exhaustive.chain(random_sample(150)) {
        checked += 1;
        if !parity_and_bound_hold(&seq) {
            failures += 1;
        }
    }
    verdict(4, "parity and bound invariants", failures == 0, format!("{checked} sequences, {failures} failures"));
}

struct ProbeTimer {
    opt: Optimizer,
    samples: Vec<f64>,
    probes: u64,
}

impl ProbeTimer {
    fn new(n: usize) -> Self {
        let mut opt = Optimizer::random_start(n, 5, 0, SearchParams::default()).unwrap();
        // warm-up
        for _ in 0..20 {
            if opt.scan_step() == ScanOutcome::LocalOptimum {
                opt.kick();
            }
        }
        Self { opt, samples: Vec::new(), probes: 0 }
    }

    fn sample(&mut self) {
        let before = self.opt.counters().probes;
        let t = Instant::now();
        let outcome = self.opt.scan_step();
        let elapsed = t.elapsed().as_secs_f64();
        let done = self.opt.counters().probes - before;
        self.probes += done;
        self.samples.push(elapsed / done as f64);
        if outcome == ScanOutcome::LocalOptimum {
            self.opt.kick();
        }
    }

    fn median(mut self) -> f64 {
        self.samples.sort_by(f64::total_cmp);
        self.samples[self.samples.len() / 2]
    }
}

#[test]
fn ac05_linear_scaling() {
    let _guard = exclusive();
    let started = Instant::now();
    // interleaved so that machine noise hits both lengths alike
    let (mut small, mut large) = (ProbeTimer::new(1 << 15), ProbeTimer::new(1 << 16));
    while small.probes < 10_000 || large.probes < 10_000 {
        if small.probes < 10_000 {
            small.sample();
        }
        if large.probes < 10_000 {
            large.sample();
        }
    }
    let (small, large) = (small.median(), large.median());
    let ratio = large / small;
    let secs = started.elapsed().as_secs_f64();
    verdict(
        5,
        "linear scaling of probe cost",
        ratio <= 2.5 && secs < 120.0,
        format!(
            "median probe {:.2} us at 2^15, {:.2} us at 2^16, ratio {ratio:.2}, {secs:.1} s",
            small * 1e6,
            large * 1e6
        ),
    );
}

#[test]
fn ac06_length_1019_reaches_26() {
    let _guard = exclusive();
    let mut hits = 0;
    let mut detail = Vec::new();
    for seed in 1..=10u64 {
        let seed = seed.to_string();
        let report = lbs(&[
            "optimize",
            "--length",
            "1019",
            "--budget",
            "120",
            "--instances",
            "12",
            "--target-psl",
            "26",
            "--seed",
            &seed,
        ]);
        assert_eq!(report.instances, 12);
        if report.best_psl <= 26 && report.elapsed_seconds <= 120.5 {
            hits += 1;
        }
        detail.push(format!("{}@{:.1}s", report.best_psl, report.elapsed_seconds));
    }
    verdict(6, "n = 1019 reaches PSL <= 26", hits >= 9, format!("{hits}/10 campaigns: {}", detail.join(" ")));
}

#[test]
fn ac07_below_sqrt_on_square_lengths() {
    let _guard = exclusive();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [324usize, 1024, 1936] {
        let config = RunConfig::new(n, 7).with_budget(Duration::from_secs(60)).with_target(largest_below_sqrt(n));
        let report = run_parallel(&config, 12).unwrap();
        let below = f64::from(report.best_psl) < (n as f64).sqrt();
        ok &= below;
        detail.push(format!("n={n}: psl {} @{:.2}s", report.best_psl, report.best_found_seconds));
    }
    verdict(7, "PSL < sqrt(n) on 324, 1024, 1936", ok, detail.join(", "));
}

#[test]
fn ac08_tiny_lengths_reach_exhaustive_optimum() {
    let _guard = exclusive();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 2..=20usize {
        let (optimum, witness) = exhaustive_min_psl(n).unwrap();
        assert_eq!(psl_direct(&witness), optimum);
        let config = RunConfig::new(n, 8).with_budget(Duration::from_secs(60)).with_target(optimum);
        let report = run(&config).unwrap();
        ok &= report.best_psl == optimum;
        detail.push(format!("{n}:{}/{}", report.best_psl, optimum));
    }
    verdict(8, "tiny lengths match exhaustive optimum", ok, detail.join(" "));
}

#[test]
fn ac09_mseq_periodic_autocorrelation_two_valued() {
    let _guard = exclusive();
    let started = Instant::now();
    let mut ok = true;
    for d in 2..=13u32 {
        let seq = mseq(&PrimitivePolynomial::builtin(d).unwrap(), 1).unwrap();
        let period = (1i64 << d) - 1;
        let p = periodic_autocorrelation(&seq);
        ok &= p.len() as i64 == period && p[0] == period && p[1..].iter().all(|&v| v == -1);
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(9, "m-sequence periodic autocorrelation", ok && secs < 60.0, format!("degrees 2..=13, {secs:.2} s"));
}

#[test]
fn ac10_length_8191_beats_sqrt_and_mseq() {
    let _guard = exclusive();
    let n = 8191;
    let config = RunConfig::new(n, 10).with_budget(Duration::from_secs(600)).with_target(90);
    let report = run(&config).unwrap();
    let m = mseq(&PrimitivePolynomial::builtin(13).unwrap(), 1).unwrap();
    let mseq_psl = psl_direct(&m);
    verdict(
        10,
        "n = 8191 below ceil(sqrt(n)) = 91 and below the m-sequence",
        report.best_psl < 91 && mseq_psl > report.best_psl,
        format!(
            "optimizer psl {} after {:.1} s, degree-13 m-sequence psl {mseq_psl}",
            report.best_psl, report.best_found_seconds
        ),
    );
}

#[test]
fn ac11_identical_seeds_identical_reports() {
    let _guard = exclusive();
    let mut config = RunConfig::new(509, 11).with_budget(Duration::from_secs(600));
    config.max_probes = Some(400_000);
    let a = run(&config).unwrap().without_timing();
    let b = run(&config).unwrap().without_timing();
    let args = ["optimize", "--length", "509", "--seed", "11", "--instances", "1", "--max-probes", "400000"];
    let c = lbs(&args).without_timing();
    let d = lbs(&args).without_timing();
    // the CLI does not differ from the library apart from defaults it fills in
    let same_search = c.best_sequence == a.best_sequence && c.probes == a.probes;
    verdict(
        11,
        "determinism",
        a == b && c == d && same_search,
        format!("best psl {}, {} probes, {} kicks", a.best_psl, a.probes, a.kicks),
    );
}
