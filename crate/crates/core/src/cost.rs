//! Closed-form stage and comparator counts, and measured-vs-formula reports.

use serde::Serialize;

use crate::arch::Architecture;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Formula {
    /// Network depth. `None` for the rank-select sorters, which have no stages.
    pub stages: Option<usize>,
    /// CAS units, or comparators for the rank-select sorters.
    pub units: usize,
}

/// Predicted cost of `arch` at list size `list_size`, if it has a closed form.
pub fn formula(arch: &Architecture, list_size: usize) -> Option<Formula> {
    let l = list_size;
    if arch.check_list_size(l).is_err() {
        return None;
    }
    let log = l.trailing_zeros() as usize;
    let (stages, units) = match arch {
        Architecture::Bitonic => (Some((log + 1) * (log + 2) / 2), l * (log + 1) * (log + 2) / 2),
        Architecture::PrunedBitonic => (Some((log + 1) * (log + 2) / 2 - 1), (l / 2 - 1) * log * (log + 2) + 1),
        Architecture::Bubble => (Some(2 * l - 2), l * (l - 1)),
        Architecture::SimplifiedBubble => (Some(l - 1), l * (l - 1) / 2),
        Architecture::Radix => (None, l * (2 * l - 1)),
        Architecture::PrunedRadix => (None, (l - 1) * (l - 1)),
        Architecture::Custom(_) => return None,
    };
    Some(Formula { stages, units })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub architecture: Architecture,
    #[serde(rename = "L")]
    pub list_size: usize,
    pub measured_stages: Option<usize>,
    pub measured_cas: usize,
    pub formula_stages: Option<usize>,
    pub formula_cas: Option<usize>,
}

impl CostReport {
    /// True when a formula exists and both counts agree with it.
    pub fn matches_formula(&self) -> bool {
        self.formula_cas == Some(self.measured_cas) && self.formula_stages == self.measured_stages
    }
}
