//! Instrumented sequential bubble sort and an executable check of its
//! data-dependency structure on structured inputs.
//!
//! For a structured list, the positions `B_t` where an entry is strictly
//! smaller than its left neighbour at the start of round `t` never contain
//! two adjacent indices. The downward pass swaps exactly at `B_t`, and
//! `B_(t+1)` is contained in `B_t + 1`. Each round is therefore a single
//! parallel layer of disjoint exchanges that alternates between even and
//! odd positions. That is why the bubble pass can be built as a network.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{validate_structured, MetricEntry};
use crate::oracle::{select_l_smallest_oracle, InputGrid};
use crate::sortnet::build_simplified_bubble;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BubbleMode {
    /// Run until the whole list is ordered.
    FullSort,
    /// Run until positions `0..=L` are ordered.
    FirstLOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub t: usize,
    pub snapshot: Vec<MetricEntry>,
    pub b_set: Vec<usize>,
    pub swaps_executed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BubbleRun {
    pub mode: BubbleMode,
    pub input: Vec<MetricEntry>,
    pub rounds: Vec<RoundTrace>,
    pub output: Vec<MetricEntry>,
}

impl BubbleRun {
    /// One JSON object per round, newline separated.
    pub fn to_json_lines(&self) -> String {
        self.rounds
            .iter()
            .map(|r| serde_json::to_string(r).expect("trace serialization cannot fail") + "\n")
            .collect()
    }
}

/// Positions whose key is strictly below the key to their left.
pub fn inversion_set(list: &[MetricEntry]) -> Vec<usize> {
    (1..list.len()).filter(|&l| list[l].key < list[l - 1].key).collect()
}

/// Runs the textbook bubble sort with a downward inner loop over a live
/// array, recording each round.
pub fn run_bubble_traced(input: &[MetricEntry], mode: BubbleMode) -> Result<BubbleRun> {
    validate_structured(input).map_err(Error::NotStructured)?;
    let n = input.len();
    let list_size = n / 2;
    let unordered = |m: &[MetricEntry]| match mode {
        BubbleMode::FullSort => (1..n).any(|l| m[l].key < m[l - 1].key),
        BubbleMode::FirstLOnly => (0..list_size).any(|l| m[l].key > m[l + 1].key),
    };

    let mut m = input.to_vec();
    let mut rounds = Vec::new();
    while unordered(&m) {
        let snapshot = m.clone();
        let b_set = inversion_set(&snapshot);
        let mut swaps_executed = Vec::new();
        for l in (1..n).rev() {
            if m[l].key < m[l - 1].key {
                m.swap(l, l - 1);
                swaps_executed.push(l);
            }
        }
        rounds.push(RoundTrace {
            t: rounds.len() + 1,
            snapshot,
            b_set,
            swaps_executed,
        });
        assert!(rounds.len() < n, "bubble sort exceeded {} rounds", n - 1);
    }
    Ok(BubbleRun {
        mode,
        input: input.to_vec(),
        rounds,
        output: m,
    })
}

/// One round as a parallel layer: every `l` in `b_set` exchanges with `l - 1`.
pub fn parallel_round(snapshot: &[MetricEntry], b_set: &[usize]) -> Result<Vec<MetricEntry>> {
    let mut sorted = b_set.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[1] <= w[0] + 1 {
            return Err(Error::AdjacentIndices(w[0], w[1]));
        }
    }
    if let Some(&bad) = sorted.iter().find(|&&l| l == 0 || l >= snapshot.len()) {
        return Err(Error::UnorderedPair(bad.saturating_sub(1), bad));
    }
    let mut next = snapshot.to_vec();
    for &l in &sorted {
        next.swap(l - 1, l);
    }
    Ok(next)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundCheck {
    pub t: usize,
    pub non_adjacent: bool,
    pub swaps_match: bool,
    pub shifted_subset: bool,
    pub left_bound: bool,
    pub parallel_update: bool,
    pub parity: bool,
}

impl RoundCheck {
    pub fn passed(&self) -> bool {
        self.non_adjacent
            && self.swaps_match
            && self.shifted_subset
            && self.left_bound
            && self.parallel_update
            && self.parity
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub rounds: usize,
    /// `B_1` holds only even positions in `2..=2L-2`.
    pub first_set_even: bool,
    pub checks: Vec<RoundCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.first_set_even && self.checks.iter().all(RoundCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&RoundCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Checks every round of a traced run against the dependency properties.
pub fn check_lemma(run: &BubbleRun) -> LemmaReport {
    let n = run.input.len();
    let b1 = inversion_set(&run.input);
    let first_set_even = b1.iter().all(|&l| l % 2 == 0 && (2..=n - 2).contains(&l));

    let checks = run
        .rounds
        .iter()
        .enumerate()
        .map(|(i, round)| {
            let b = &round.b_set;
            let m = &round.snapshot;
            let next_snapshot = run.rounds.get(i + 1).map_or(&run.output, |r| &r.snapshot);
            let next_b: BTreeSet<usize> = inversion_set(next_snapshot).into_iter().collect();
            let shifted: BTreeSet<usize> = b.iter().map(|l| l + 1).collect();
            let executed: BTreeSet<usize> = round.swaps_executed.iter().copied().collect();
            let odd_round = round.t % 2 == 1;
            RoundCheck {
                t: round.t,
                non_adjacent: b.windows(2).all(|w| w[1] > w[0] + 1),
                swaps_match: executed == b.iter().copied().collect(),
                shifted_subset: next_b.is_subset(&shifted),
                left_bound: b.iter().all(|&l| l >= 2 && m[l].key >= m[l - 2].key),
                parallel_update: parallel_round(m, b).is_ok_and(|p| &p == next_snapshot),
                parity: b.iter().all(|&l| (l % 2 == 0) == odd_round),
            }
        })
        .collect();

    LemmaReport {
        rounds: run.rounds.len(),
        first_set_even,
        checks,
    }
}

/// Aggregate of [`lemma_suite`] over a grid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaSuiteReport {
    #[serde(rename = "L")]
    pub list_size: usize,
    pub seed: Option<u64>,
    pub inputs: usize,
    /// Inputs whose full-sort trace failed any per-round property.
    pub lemma_failures: usize,
    /// Inputs whose first inversion set was not within the even positions.
    pub first_set_failures: usize,
    /// Restricted runs needing more than `L - 1` rounds.
    pub round_bound_failures: usize,
    pub max_restricted_rounds: usize,
    /// Runs whose output disagreed with the oracle.
    pub output_mismatches: usize,
    /// Inputs where the simplified bubble network and the restricted
    /// algorithm disagree on the first `L` entries.
    pub network_mismatches: usize,
    pub first_failure: Option<BubbleRun>,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.lemma_failures == 0
            && self.first_set_failures == 0
            && self.round_bound_failures == 0
            && self.output_mismatches == 0
            && self.network_mismatches == 0
    }
}

/// Traces both bubble modes on every grid input and checks the dependency
/// properties, the restricted round bound, agreement with the oracle, and
/// agreement with the simplified bubble network.
pub fn lemma_suite(grid: &InputGrid) -> Result<LemmaSuiteReport> {
    let list_size = grid.list_size();
    let network = build_simplified_bubble(list_size)?;
    let mut report = LemmaSuiteReport {
        list_size,
        seed: grid.seed(),
        ..Default::default()
    };
    for list in grid.iter()? {
        let input = list.entries();
        report.inputs += 1;
        let mut failed = false;

        let full = run_bubble_traced(input, BubbleMode::FullSort)?;
        let lemma = check_lemma(&full);
        if lemma.first_failure().is_some() {
            report.lemma_failures += 1;
            failed = true;
        }
        if !lemma.first_set_even {
            report.first_set_failures += 1;
            failed = true;
        }
        let mut sorted = input.to_vec();
        sorted.sort();
        let restricted = run_bubble_traced(input, BubbleMode::FirstLOnly)?;
        let expected = select_l_smallest_oracle(input)?;
        report.max_restricted_rounds = report.max_restricted_rounds.max(restricted.rounds.len());
        if restricted.rounds.len() > list_size - 1 {
            report.round_bound_failures += 1;
            failed = true;
        }
        if !check_lemma(&restricted).passed() {
            report.lemma_failures += 1;
            failed = true;
        }
        if full.output != sorted || restricted.output[..list_size] != expected[..] {
            report.output_mismatches += 1;
            failed = true;
        }
        if network.evaluate(input)?[..list_size] != restricted.output[..list_size] {
            report.network_mismatches += 1;
            failed = true;
        }
        if failed && report.first_failure.is_none() {
            report.first_failure = Some(full);
        }
    }
    Ok(report)
}
