//! Closed-loop metric stream: the survivor-update and selection loop of a
//! list decoder, with synthetic increments in place of a real decoder.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arch::Architecture;
use crate::error::{Error, Result};
use crate::metric::{make_structured, validate_structured, KeyDomain, MetricKey};
use crate::oracle::select_l_smallest_oracle;
use crate::profile::IncrementProfile;
use crate::sorter::{build_sorter, MetricSorter};

#[derive(Clone, Debug, PartialEq)]
pub struct StreamConfig {
    pub list_size: usize,
    pub domain: KeyDomain,
    pub steps: usize,
    pub profile: IncrementProfile,
    pub seed: u64,
    pub arch: Architecture,
    /// Compare the sorter with the oracle at every step.
    pub check: bool,
}

impl StreamConfig {
    pub fn new(list_size: usize, steps: usize, arch: Architecture) -> Self {
        Self {
            list_size,
            domain: KeyDomain::default(),
            steps,
            profile: IncrementProfile::UniformSmall(3),
            seed: 0,
            arch,
            check: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Parse {
                line: 0,
                message: "steps must be at least 1".into(),
            });
        }
        self.arch.check_list_size(self.list_size)?;
        self.profile.validate()
    }
}

/// Survivor payloads chosen at one step. Payload `p` means "parent path
/// `p / 2`, extended with penalty" when `p` is odd and "without penalty"
/// when `p` is even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub payloads: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamState {
    pub mu: Vec<MetricKey>,
    pub lineage: Vec<StepRecord>,
}

impl StreamState {
    pub fn new(list_size: usize) -> Self {
        Self {
            mu: vec![MetricKey::new(0); list_size],
            lineage: Vec::new(),
        }
    }

    /// `(step, payload)` pairs leading to surviving path `path`, oldest first.
    pub fn ancestry(&self, path: usize) -> Vec<(usize, u16)> {
        let mut out = Vec::with_capacity(self.lineage.len());
        let mut path = path;
        for rec in self.lineage.iter().rev() {
            let p = rec.payloads[path];
            out.push((rec.step, p));
            path = p as usize / 2;
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    /// The candidate list passed the structured-list check.
    pub structured: bool,
    /// The sorter agreed with the oracle (always true when not checked).
    pub agrees: bool,
}

/// Advances the stream by one selection.
pub fn step(
    state: &mut StreamState,
    config: &StreamConfig,
    sorter: &dyn MetricSorter,
    rng: &mut ChaCha8Rng,
) -> Result<StepOutcome> {
    let a: Vec<MetricKey> = (0..config.list_size)
        .map(|_| config.profile.sample(config.domain, rng))
        .collect();
    let list = make_structured(&state.mu, &a, config.domain)?;
    let structured = validate_structured(list.entries()).is_ok();
    let selected = sorter.select(list.entries())?;
    let agrees = !config.check || select_l_smallest_oracle(list.entries())? == selected;
    state.mu = selected.iter().map(|e| e.key).collect();
    state.lineage.push(StepRecord {
        step: state.lineage.len(),
        payloads: selected.iter().map(|e| e.payload).collect(),
    });
    Ok(StepOutcome { structured, agrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StreamSummary {
    pub arch: String,
    #[serde(rename = "L")]
    pub list_size: usize,
    pub seed: u64,
    pub steps: usize,
    /// Per step: structured list valid and, when checked, sorter == oracle.
    pub step_valid: Vec<bool>,
    pub violations: usize,
    pub survivors_sorted: bool,
    pub min_non_decreasing: bool,
    pub final_mu: Vec<u16>,
    pub lineage_digest: String,
    #[serde(skip)]
    pub trajectory: Vec<Vec<u16>>,
    #[serde(skip)]
    pub lineage: Vec<StepRecord>,
}

impl StreamSummary {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.survivors_sorted && self.min_non_decreasing
    }

    /// `step,mu_0,...,mu_{L-1}` with one row per step.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step");
        for i in 0..self.list_size {
            out.push_str(&format!(",mu_{i}"));
        }
        out.push('\n');
        for (step, mu) in self.trajectory.iter().enumerate() {
            out.push_str(&step.to_string());
            for v in mu {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn run_stream(config: &StreamConfig) -> Result<StreamSummary> {
    config.validate()?;
    let sorter = build_sorter(&config.arch, config.list_size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = StreamState::new(config.list_size);

    let mut step_valid = Vec::with_capacity(config.steps);
    let mut trajectory = Vec::with_capacity(config.steps);
    let mut survivors_sorted = true;
    let mut min_non_decreasing = true;
    for _ in 0..config.steps {
        let before = state.mu[0];
        let outcome = step(&mut state, config, sorter.as_ref(), &mut rng)?;
        step_valid.push(outcome.structured && outcome.agrees);
        survivors_sorted &= state.mu.windows(2).all(|w| w[0] <= w[1]);
        min_non_decreasing &= state.mu[0] >= before;
        trajectory.push(state.mu.iter().map(|k| k.value()).collect());
    }

    Ok(StreamSummary {
        arch: config.arch.to_string(),
        list_size: config.list_size,
        seed: config.seed,
        steps: config.steps,
        violations: step_valid.iter().filter(|v| !**v).count(),
        step_valid,
        survivors_sorted,
        min_non_decreasing,
        final_mu: state.mu.iter().map(|k| k.value()).collect(),
        lineage_digest: format!("{:016x}", digest(&state.lineage)),
        trajectory,
        lineage: state.lineage,
    })
}

// FNV-1a over (step, payload) pairs.
fn digest(lineage: &[StepRecord]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    for rec in lineage {
        for &p in &rec.payloads {
            feed(&(rec.step as u64).to_le_bytes());
            feed(&p.to_le_bytes());
        }
    }
    h
}
