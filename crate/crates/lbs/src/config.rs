use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use lbs_core::baselines::{self, PrimitivePolynomial};
use lbs_core::ChaCha8Rng;
use lbs_core::{BinarySequence, CostBaseline, SearchParams};

use crate::{seqio, LbsError, Result};

/// Where the starting sequence comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitSource {
    Random,
    /// Built-in m-sequence; the length must be `2^d − 1` for `d` in `2..=17`.
    MSeq,
    /// The length must be an odd prime.
    Legendre,
    /// The length must be a power of two.
    RudinShapiro,
    File(PathBuf),
}

impl FromStr for InitSource {
    type Err = LbsError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "random" => Self::Random,
            "mseq" => Self::MSeq,
            "legendre" => Self::Legendre,
            "rudin-shapiro" => Self::RudinShapiro,
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Self::File(path.into()),
                _ => {
                    return Err(LbsError::config(format!(
                        "unknown initial sequence {s:?}, expected random, mseq, legendre, rudin-shapiro or file:PATH"
                    )))
                }
            },
        })
    }
}

impl fmt::Display for InitSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Random => f.write_str("random"),
            Self::MSeq => f.write_str("mseq"),
            Self::Legendre => f.write_str("legendre"),
            Self::RudinShapiro => f.write_str("rudin-shapiro"),
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Degree `d` with `2^d − 1 == len`, if any.
pub fn mseq_degree(len: usize) -> Option<u32> {
    let d = (len + 1).trailing_zeros();
    ((len + 1).is_power_of_two() && d >= 1).then_some(d)
}

/// Parameters of one optimization campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub length: usize,
    pub seed: u64,
    pub budget: Duration,
    pub target_psl: Option<u32>,
    pub kick_max: u32,
    pub init: InitSource,
    pub cost_baseline: CostBaseline,
    /// Reproducible stop after this many probes per instance.
    pub max_probes: Option<u64>,
    /// Print the best PSL to stderr about once per second.
    pub progress: bool,
}

impl RunConfig {
    pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);

    pub fn new(length: usize, seed: u64) -> Self {
        Self {
            length,
            seed,
            budget: Self::DEFAULT_BUDGET,
            target_psl: None,
            kick_max: 4,
            init: InitSource::Random,
            cost_baseline: CostBaseline::ResetAfterKick,
            max_probes: None,
            progress: false,
        }
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_target(mut self, target_psl: u32) -> Self {
        self.target_psl = Some(target_psl);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(LbsError::config(format!("length must be at least 2, got {}", self.length)));
        }
        if self.budget.is_zero() {
            return Err(LbsError::config("budget must be positive"));
        }
        if self.kick_max == 0 {
            return Err(LbsError::config("kick bound must be at least 1"));
        }
        match self.init {
            InitSource::MSeq => match mseq_degree(self.length) {
                Some(d) if PrimitivePolynomial::BUILTIN_DEGREES.contains(&d) => {}
                _ => {
                    return Err(LbsError::config(format!(
                        "mseq start needs length 2^d - 1 with d in 2..=17, got {}",
                        self.length
                    )))
                }
            },
            InitSource::Legendre if !baselines::is_odd_prime(self.length as u64) => {
                return Err(LbsError::config(format!("legendre start needs an odd prime length, got {}", self.length)))
            }
            InitSource::RudinShapiro if !self.length.is_power_of_two() => {
                return Err(LbsError::config(format!(
                    "rudin-shapiro start needs a power-of-two length, got {}",
                    self.length
                )))
            }
            _ => {}
        }
        Ok(())
    }

    pub fn search_params(&self) -> SearchParams {
        SearchParams {
            kick_max: self.kick_max,
            cost_baseline: self.cost_baseline,
            target_psl: self.target_psl,
            max_probes: self.max_probes,
        }
    }

    /// The starting sequence. Random starts draw from `rng`, which the
    /// search then keeps using.
    pub fn initial_sequence(&self, rng: &mut ChaCha8Rng) -> Result<BinarySequence> {
        let seq = match &self.init {
            InitSource::Random => BinarySequence::random(self.length, rng)?,
            InitSource::MSeq => {
                let degree = mseq_degree(self.length).ok_or_else(|| LbsError::config("bad mseq length"))?;
                baselines::mseq(&PrimitivePolynomial::builtin(degree)?, 1)?
            }
            InitSource::Legendre => baselines::legendre(self.length as u64)?,
            InitSource::RudinShapiro => baselines::rudin_shapiro(self.length.trailing_zeros())?,
            InitSource::File(path) => {
                let seq = seqio::read_sequence(path)?;
                if seq.len() != self.length {
                    return Err(LbsError::config(format!(
                        "{} holds a sequence of length {}, expected {}",
                        path.display(),
                        seq.len(),
                        self.length
                    )));
                }
                seq
            }
        };
        Ok(seq)
    }
}
