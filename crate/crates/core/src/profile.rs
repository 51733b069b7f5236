use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{KeyDomain, MetricKey};

/// Distribution of the non-negative path-metric increments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum IncrementProfile {
    /// Uniform over the whole key domain.
    UniformFull,
    /// Uniform over `0..=max`.
    UniformSmall(u16),
    /// `round(|N(0, sigma)|)`, clamped to the key domain.
    HalfNormal(f64),
}

impl IncrementProfile {
    /// Half-normal profile with mean close to `2^(Q-3)`.
    pub fn default_half_normal(domain: KeyDomain) -> Self {
        let mean = f64::from(1u32 << domain.bits().saturating_sub(3));
        IncrementProfile::HalfNormal(mean * (std::f64::consts::PI / 2.0).sqrt())
    }

    pub fn sample<R: Rng + ?Sized>(&self, domain: KeyDomain, rng: &mut R) -> MetricKey {
        let max = domain.max_key().value();
        let v = match *self {
            IncrementProfile::UniformFull => rng.gen_range(0..=max),
            IncrementProfile::UniformSmall(m) => rng.gen_range(0..=m.min(max)),
            IncrementProfile::HalfNormal(sigma) => {
                let x: f64 = Normal::new(0.0, sigma).expect("sigma is checked positive").sample(rng);
                x.abs().round().min(f64::from(max)) as u16
            }
        };
        MetricKey::new(v)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            IncrementProfile::HalfNormal(s) if !(s > 0.0 && s.is_finite()) => Err(Error::Parse {
                line: 0,
                message: format!("sigma must be positive, got {s}"),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IncrementProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncrementProfile::UniformFull => f.write_str("uniform_full"),
            IncrementProfile::UniformSmall(m) => write!(f, "uniform_small:{m}"),
            IncrementProfile::HalfNormal(s) => write!(f, "half_normal:{s}"),
        }
    }
}

impl FromStr for IncrementProfile {
    type Err = Error;

    /// Accepts `uniform_full`, `uniform_small:<max>` and `half_normal:<sigma>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse { line: 0, message };
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let profile = match (name, arg) {
            ("uniform_full", None) => IncrementProfile::UniformFull,
            ("uniform_small", Some(a)) => {
                IncrementProfile::UniformSmall(a.parse().map_err(|e| bad(format!("uniform_small max: {e}")))?)
            }
            ("uniform_small", None) => IncrementProfile::UniformSmall(3),
            ("half_normal" | "quantized_half_normal", Some(a)) => {
                IncrementProfile::HalfNormal(a.parse().map_err(|e| bad(format!("half_normal sigma: {e}")))?)
            }
            _ => return Err(bad(format!("unknown increment profile `{s}`"))),
        };
        profile.validate()?;
        Ok(profile)
    }
}
