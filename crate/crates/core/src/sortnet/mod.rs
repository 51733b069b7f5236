//! Staged compare-and-select networks.
//!
//! A [`SortNetwork`] is a list of stages over `2L` wires. Each stage holds a
//! set of CAS units and, optionally, a set of unconditional wire swaps left
//! behind when pruning resolves a unit whose outcome is always "swap". No
//! wire may be used twice within a stage, so every stage can be applied in
//! parallel from a snapshot of its inputs.

mod build;
mod export;
mod prune;

pub use build::{build_bitonic, build_bubble, build_pruned_bitonic, build_simplified_bubble};
pub use prune::{prune_structured, static_precedence, Precedence};

use serde::{Deserialize, Serialize};

use crate::arch::Architecture;
use crate::cost::{self, CostReport};
use crate::error::{Error, Result};
use crate::metric::{validate_structured, MetricEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Smaller entry goes to `lo`.
    #[serde(rename = "asc")]
    Ascending,
    /// Smaller entry goes to `hi`.
    #[serde(rename = "desc")]
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CasUnit {
    pub lo: usize,
    pub hi: usize,
    #[serde(rename = "dir")]
    pub direction: Direction,
}

impl CasUnit {
    pub const fn asc(lo: usize, hi: usize) -> Self {
        Self {
            lo,
            hi,
            direction: Direction::Ascending,
        }
    }

    pub const fn desc(lo: usize, hi: usize) -> Self {
        Self {
            lo,
            hi,
            direction: Direction::Descending,
        }
    }

    /// Whether the unit exchanges its inputs, given the two wire contents.
    pub fn swaps(&self, at_lo: &MetricEntry, at_hi: &MetricEntry) -> bool {
        match self.direction {
            Direction::Ascending => at_hi < at_lo,
            Direction::Descending => at_lo < at_hi,
        }
    }

    fn apply(&self, wires: &mut [MetricEntry]) {
        if self.swaps(&wires[self.lo], &wires[self.hi]) {
            wires.swap(self.lo, self.hi);
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub cas: Vec<CasUnit>,
    #[serde(default)]
    pub route: Vec<(usize, usize)>,
}

impl Stage {
    pub fn new(cas: Vec<CasUnit>) -> Self {
        Self { cas, route: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.cas.is_empty() && self.route.is_empty()
    }

    // Wires are disjoint within a stage, so updating in place gives the same
    // result as reading every unit's inputs from a snapshot.
    fn apply(&self, wires: &mut [MetricEntry]) {
        for &(a, b) in &self.route {
            wires.swap(a, b);
        }
        for unit in &self.cas {
            unit.apply(wires);
        }
    }

    fn check(&self, wires: usize, index: usize) -> Result<()> {
        let mut used = vec![false; wires];
        let pairs = self.cas.iter().map(|u| (u.lo, u.hi)).chain(self.route.iter().copied());
        for (lo, hi) in pairs {
            if lo >= hi || hi >= wires {
                return Err(Error::InvalidNetwork(format!(
                    "stage {index}: pair ({lo}, {hi}) is not an ordered pair of wires below {wires}"
                )));
            }
            for w in [lo, hi] {
                if std::mem::replace(&mut used[w], true) {
                    return Err(Error::InvalidNetwork(format!("stage {index}: wire {w} used twice")));
                }
            }
        }
        Ok(())
    }
}

/// An immutable, validated network over `2L` wires.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "export::NetworkRepr", into = "export::NetworkRepr")]
pub struct SortNetwork {
    arch: Architecture,
    list_size: usize,
    stages: Vec<Stage>,
}

impl SortNetwork {
    pub fn new(arch: Architecture, list_size: usize, stages: Vec<Stage>) -> Result<Self> {
        if list_size == 0 {
            return Err(Error::ListSizeTooSmall(list_size));
        }
        for (i, stage) in stages.iter().enumerate() {
            stage.check(2 * list_size, i)?;
        }
        Ok(Self {
            arch,
            list_size,
            stages,
        })
    }

    pub fn architecture(&self) -> &Architecture {
        &self.arch
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    pub fn wires(&self) -> usize {
        2 * self.list_size
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn cas_count(&self) -> usize {
        self.stages.iter().map(|s| s.cas.len()).sum()
    }

    pub fn units(&self) -> impl Iterator<Item = (usize, &CasUnit)> {
        self.stages
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.cas.iter().map(move |u| (i, u)))
    }

    /// Runs the network and returns the contents of every wire.
    ///
    /// Networks whose correctness depends on the structured relations
    /// reject inputs that break them instead of returning a wrong order.
    pub fn evaluate(&self, input: &[MetricEntry]) -> Result<Vec<MetricEntry>> {
        if input.len() != self.wires() {
            return Err(Error::LengthMismatch {
                expected: self.wires(),
                got: input.len(),
            });
        }
        if self.arch.requires_structured_input() {
            validate_structured(input).map_err(Error::NotStructured)?;
        }
        Ok(self.evaluate_unchecked(input))
    }

    /// Runs the network without any contract check. `input` must have
    /// exactly [`wires`](Self::wires) entries.
    pub fn evaluate_unchecked(&self, input: &[MetricEntry]) -> Vec<MetricEntry> {
        let mut wires = input.to_vec();
        for stage in &self.stages {
            stage.apply(&mut wires);
        }
        wires
    }

    pub fn cost(&self) -> CostReport {
        let formula = cost::formula(&self.arch, self.list_size);
        CostReport {
            architecture: self.arch.clone(),
            list_size: self.list_size,
            measured_stages: Some(self.stage_count()),
            measured_cas: self.cas_count(),
            formula_stages: formula.and_then(|f| f.stages),
            formula_cas: formula.map(|f| f.units),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{indexed_entries, keys_of};

    #[test]
    fn rejects_wire_reuse_within_a_stage() {
        let stage = Stage::new(vec![CasUnit::asc(0, 1), CasUnit::asc(1, 2)]);
        assert!(SortNetwork::new(Architecture::Custom("x".into()), 2, vec![stage]).is_err());

        let stage = Stage {
            cas: vec![CasUnit::asc(0, 1)],
            route: vec![(1, 3)],
        };
        assert!(SortNetwork::new(Architecture::Custom("x".into()), 2, vec![stage]).is_err());
    }

    #[test]
    fn rejects_bad_pairs() {
        for (lo, hi) in [(1, 1), (2, 1), (0, 4)] {
            let stage = Stage::new(vec![CasUnit::asc(lo, hi)]);
            assert!(SortNetwork::new(Architecture::Custom("x".into()), 2, vec![stage]).is_err());
        }
    }

    #[test]
    fn descending_unit_puts_smaller_entry_high() {
        let net = SortNetwork::new(
            Architecture::Custom("x".into()),
            1,
            vec![Stage::new(vec![CasUnit::desc(0, 1)])],
        )
        .unwrap();
        let out = net.evaluate(&indexed_entries(&[1, 5])).unwrap();
        assert_eq!(keys_of(&out), vec![5, 1]);
    }

    #[test]
    fn route_swaps_unconditionally() {
        let stage = Stage {
            cas: vec![CasUnit::asc(0, 1)],
            route: vec![(2, 3)],
        };
        let net = SortNetwork::new(Architecture::Custom("x".into()), 2, vec![stage]).unwrap();
        let out = net.evaluate(&indexed_entries(&[4, 3, 1, 9])).unwrap();
        assert_eq!(keys_of(&out), vec![3, 4, 9, 1]);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let net = build_bitonic(2).unwrap();
        assert!(matches!(
            net.evaluate(&indexed_entries(&[1, 2, 3])),
            Err(Error::LengthMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn structured_networks_reject_unstructured_input() {
        let input = indexed_entries(&[3, 1, 2, 2, 3, 4, 4, 6]);
        for net in [
            build_pruned_bitonic(4).unwrap(),
            build_simplified_bubble(4).unwrap(),
            build_bubble(4).unwrap(),
        ] {
            assert!(matches!(net.evaluate(&input), Err(Error::NotStructured(_))));
        }
        assert!(build_bitonic(4).unwrap().evaluate(&input).is_ok());
    }
}
