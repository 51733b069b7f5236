//! Rank-select ("radix-2L") sorters.
//!
//! Every wire's rank is the number of candidates that precede it. The `L`
//! outputs are then picked by rank through one multiplexer each. The full
//! sorter evaluates all `L(2L-1)` pairs. The pruned sorter compares only
//! pairs whose lower wire is odd, because an even wire is known to precede
//! every later wire. It also leaves out wire `2L-1`, which can never be
//! selected. That leaves `(L-1)^2` comparators, hard-wires output 0 to
//! wire 0, and feeds outputs `1..L` from wires `1..=2L-2`.

use serde::{Deserialize, Serialize};

use crate::arch::Architecture;
use crate::cost::CostReport;
use crate::error::{Error, Result};
use crate::metric::{known_relation, validate_structured, MetricEntry, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSelectPlan {
    arch: Architecture,
    list_size: usize,
    /// Wires taking part in ranking.
    candidates: usize,
    /// Pairs `(i, j)`, `i < j`, compared at run time.
    comparators: Vec<(usize, usize)>,
    /// Pairs `(i, j)` where `i` is statically known to precede `j`.
    known: Vec<(usize, usize)>,
    /// Wires feeding each output multiplexer.
    output_slots: Vec<Vec<usize>>,
}

impl RankSelectPlan {
    pub fn full(list_size: usize) -> Result<Self> {
        Architecture::Radix.check_list_size(list_size)?;
        let n = 2 * list_size;
        Ok(Self {
            arch: Architecture::Radix,
            list_size,
            candidates: n,
            comparators: all_pairs(n).collect(),
            known: Vec::new(),
            output_slots: vec![(0..n).collect(); list_size],
        })
    }

    pub fn pruned(list_size: usize) -> Result<Self> {
        Architecture::PrunedRadix.check_list_size(list_size)?;
        let n = 2 * list_size - 1;
        let (mut comparators, mut known) = (Vec::new(), Vec::new());
        for (i, j) in all_pairs(n) {
            match known_relation(i, j, list_size)? {
                Relation::IKnownSmaller => known.push((i, j)),
                Relation::Unknown => comparators.push((i, j)),
            }
        }
        let mut output_slots = vec![vec![0]];
        output_slots.extend(std::iter::repeat_with(|| (1..n).collect()).take(list_size - 1));
        Ok(Self {
            arch: Architecture::PrunedRadix,
            list_size,
            candidates: n,
            comparators,
            known,
            output_slots,
        })
    }

    pub fn architecture(&self) -> &Architecture {
        &self.arch
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    pub fn comparators(&self) -> &[(usize, usize)] {
        &self.comparators
    }

    pub fn known_pairs(&self) -> &[(usize, usize)] {
        &self.known
    }

    pub fn output_slots(&self) -> &[Vec<usize>] {
        &self.output_slots
    }

    pub fn cost(&self) -> CostReport {
        let formula = crate::cost::formula(&self.arch, self.list_size);
        CostReport {
            architecture: self.arch.clone(),
            list_size: self.list_size,
            measured_stages: None,
            measured_cas: self.comparators.len(),
            formula_stages: None,
            formula_cas: formula.map(|f| f.units),
        }
    }

    /// Rank of each candidate wire, using run-time comparisons for the
    /// comparator pairs and the static table for everything else.
    pub fn ranks(&self, input: &[MetricEntry]) -> Vec<usize> {
        let mut rank = vec![0; self.candidates];
        for &(i, j) in &self.comparators {
            if precedes(input, i, j) {
                rank[j] += 1;
            } else {
                rank[i] += 1;
            }
        }
        for &(_, j) in &self.known {
            rank[j] += 1;
        }
        rank
    }

    /// Returns the `L` smallest entries in order.
    pub fn select(&self, input: &[MetricEntry]) -> Result<Vec<MetricEntry>> {
        let n = 2 * self.list_size;
        if input.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: input.len(),
            });
        }
        if self.arch.requires_structured_input() {
            validate_structured(input).map_err(Error::NotStructured)?;
        }
        let rank = self.ranks(input);
        self.output_slots
            .iter()
            .enumerate()
            .map(|(slot, wires)| {
                wires
                    .iter()
                    .find(|&&w| rank[w] == slot)
                    .map(|&w| input[w])
                    .ok_or_else(|| Error::InvalidNetwork(format!("no candidate has rank {slot}")))
            })
            .collect()
    }

    /// First statically assumed pair that the run-time order contradicts.
    pub fn check_known_table(&self, input: &[MetricEntry]) -> Option<(usize, usize)> {
        self.known.iter().copied().find(|&(i, j)| !precedes(input, i, j))
    }

    pub fn to_json(&self) -> String {
        let repr = PlanRepr {
            arch: match self.arch {
                Architecture::PrunedRadix => "radix-pruned".into(),
                ref other => other.name().into(),
            },
            list_size: self.list_size,
            pairs: self.comparators.clone(),
        };
        serde_json::to_string_pretty(&repr).expect("plan serialization cannot fail")
    }

    /// Rebuilds a plan from its JSON form, rejecting any pair list that does
    /// not match the named architecture.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: PlanRepr = serde_json::from_str(text)?;
        let plan = match repr.arch.parse::<Architecture>()? {
            Architecture::Radix => Self::full(repr.list_size)?,
            Architecture::PrunedRadix => Self::pruned(repr.list_size)?,
            other => return Err(Error::InvalidNetwork(format!("`{other}` is not a rank-select plan"))),
        };
        if plan.comparators != repr.pairs {
            return Err(Error::InvalidNetwork(
                "comparator pairs do not match the architecture".into(),
            ));
        }
        Ok(plan)
    }
}

#[derive(Serialize, Deserialize)]
struct PlanRepr {
    arch: String,
    #[serde(rename = "L")]
    list_size: usize,
    pairs: Vec<(usize, usize)>,
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

// Identical entries fall back to wire order so ranks always form a permutation.
fn precedes(input: &[MetricEntry], i: usize, j: usize) -> bool {
    input[i] < input[j] || (input[i] == input[j] && i < j)
}
