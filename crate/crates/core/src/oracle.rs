//! Brute-force ground truth, input generators, and the equivalence suite
//! that checks every sorter against them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{embed_arbitrary, make_structured, KeyDomain, MetricEntry, MetricKey, StructuredList};
use crate::profile::IncrementProfile;
use crate::sorter::MetricSorter;

/// Sorted `L` smallest of `2L` entries, by insertion sort.
pub fn select_l_smallest_oracle(input: &[MetricEntry]) -> Result<Vec<MetricEntry>> {
    if !input.len().is_multiple_of(2) {
        return Err(Error::LengthMismatch {
            expected: input.len() + 1,
            got: input.len(),
        });
    }
    let mut sorted: Vec<MetricEntry> = Vec::with_capacity(input.len());
    for &e in input {
        if sorted.iter().any(|s| s.payload == e.payload) {
            return Err(Error::DuplicatePayload(e.payload));
        }
        let mut pos = sorted.len();
        while pos > 0 && e < sorted[pos - 1] {
            pos -= 1;
        }
        sorted.insert(pos, e);
    }
    sorted.truncate(input.len() / 2);
    Ok(sorted)
}

/// Sorts up to `L` arbitrary keys using only an `L`-smallest sorter for
/// structured lists.
///
/// Each call embeds the remaining keys so that the last selected entry is
/// their minimum, which is then removed. `k` keys need `k - 1` calls.
pub fn sort_arbitrary_via_sorter(
    values: &[MetricKey],
    sorter: &dyn MetricSorter,
    domain: KeyDomain,
) -> Result<Vec<MetricKey>> {
    let list_size = sorter.list_size();
    let mut remaining = values.to_vec();
    let mut sorted = Vec::with_capacity(values.len());
    while remaining.len() > 1 {
        let list = embed_arbitrary(&remaining, list_size, domain)?;
        let selected = sorter.select(list.entries())?;
        let min = selected[list_size - 1];
        let p = min.payload as usize;
        let index = match p {
            _ if p == 2 * list_size - 2 => Some(list_size - 1),
            _ if p % 2 == 1 && p < 2 * list_size - 2 => Some(p / 2),
            _ => None,
        };
        let Some(index) = index.filter(|&i| remaining.get(i) == Some(&min.key)) else {
            return Err(Error::InvalidNetwork(format!(
                "{} selected {min} as the minimum",
                sorter.architecture()
            )));
        };
        sorted.push(remaining.remove(index));
    }
    sorted.extend(remaining);
    Ok(sorted)
}

/// A reproducible family of valid structured lists.
#[derive(Clone, Debug, PartialEq)]
pub enum InputGrid {
    /// Every non-decreasing `mu` and every `a` with keys in `0..=max_key`.
    Exhaustive {
        list_size: usize,
        max_key: u16,
        domain: KeyDomain,
    },
    /// `trials` lists with sorted uniform `mu` and increments from `profile`.
    Randomized {
        list_size: usize,
        domain: KeyDomain,
        trials: usize,
        seed: u64,
        profile: IncrementProfile,
    },
}

impl InputGrid {
    pub fn exhaustive(list_size: usize, max_key: u16) -> Self {
        InputGrid::Exhaustive {
            list_size,
            max_key,
            domain: KeyDomain::default(),
        }
    }

    pub fn randomized(list_size: usize, trials: usize, seed: u64) -> Self {
        InputGrid::Randomized {
            list_size,
            domain: KeyDomain::default(),
            trials,
            seed,
            profile: IncrementProfile::UniformFull,
        }
    }

    pub fn list_size(&self) -> usize {
        match *self {
            InputGrid::Exhaustive { list_size, .. } | InputGrid::Randomized { list_size, .. } => list_size,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            InputGrid::Randomized { seed, .. } => Some(seed),
            InputGrid::Exhaustive { .. } => None,
        }
    }

    /// Number of lists the grid yields.
    pub fn len(&self) -> usize {
        match *self {
            InputGrid::Exhaustive { list_size, max_key, .. } => {
                let d = max_key as usize + 1;
                binomial(d + list_size - 1, list_size) * d.pow(list_size as u32)
            }
            InputGrid::Randomized { trials, .. } => trials,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> Result<Box<dyn Iterator<Item = StructuredList>>> {
        match self.clone() {
            InputGrid::Exhaustive {
                list_size,
                max_key,
                domain,
            } => {
                if list_size < 2 {
                    return Err(Error::ListSizeTooSmall(list_size));
                }
                domain.key(max_key.into())?;
                Ok(Box::new(Exhaustive {
                    mu: vec![0; list_size],
                    a: vec![0; list_size],
                    max: max_key,
                    domain,
                    done: false,
                }))
            }
            InputGrid::Randomized {
                list_size,
                domain,
                trials,
                seed,
                profile,
            } => {
                if list_size < 2 {
                    return Err(Error::ListSizeTooSmall(list_size));
                }
                profile.validate()?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let max = domain.max_key().value();
                Ok(Box::new((0..trials).map(move |_| {
                    let mut mu: Vec<MetricKey> =
                        (0..list_size).map(|_| MetricKey::new(rng.gen_range(0..=max))).collect();
                    mu.sort_unstable();
                    let a: Vec<MetricKey> = (0..list_size).map(|_| profile.sample(domain, &mut rng)).collect();
                    make_structured(&mu, &a, domain).expect("generated survivors are sorted")
                })))
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct Exhaustive {
    mu: Vec<u16>,
    a: Vec<u16>,
    max: u16,
    domain: KeyDomain,
    done: bool,
}

impl Exhaustive {
    fn advance(&mut self) {
        if let Some(i) = self.a.iter().rposition(|&v| v < self.max) {
            self.a[i] += 1;
            self.a[i + 1..].fill(0);
            return;
        }
        self.a.fill(0);
        match self.mu.iter().rposition(|&v| v < self.max) {
            Some(i) => {
                let v = self.mu[i] + 1;
                self.mu[i..].fill(v);
            }
            None => self.done = true,
        }
    }
}

impl Iterator for Exhaustive {
    type Item = StructuredList;

    fn next(&mut self) -> Option<StructuredList> {
        if self.done {
            return None;
        }
        let mu: Vec<MetricKey> = self.mu.iter().copied().map(MetricKey::new).collect();
        let a: Vec<MetricKey> = self.a.iter().copied().map(MetricKey::new).collect();
        let list = make_structured(&mu, &a, self.domain).expect("enumerated survivors are sorted");
        self.advance();
        Some(list)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub architecture: String,
    pub input: Vec<MetricEntry>,
    pub expected: Vec<MetricEntry>,
    /// Selected entries, or the error the sorter returned.
    pub got: std::result::Result<Vec<MetricEntry>, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    #[serde(rename = "L")]
    pub list_size: usize,
    pub architectures: Vec<String>,
    pub seed: Option<u64>,
    pub inputs: usize,
    pub comparisons: usize,
    pub mismatches: usize,
    /// Outputs that contained the entry from the last input wire.
    pub last_wire_selected: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.last_wire_selected == 0
    }

    /// Combines two reports over disjoint inputs.
    pub fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.inputs += other.inputs;
        self.comparisons += other.comparisons;
        self.mismatches += other.mismatches;
        self.last_wire_selected += other.last_wire_selected;
        self.first_mismatch = self.first_mismatch.or(other.first_mismatch);
        self
    }
}

/// Compares every sorter's output with the oracle on every grid input.
pub fn equivalence_suite(sorters: &[&dyn MetricSorter], grid: &InputGrid) -> Result<SuiteReport> {
    let list_size = grid.list_size();
    if let Some(s) = sorters.iter().find(|s| s.list_size() != list_size) {
        return Err(Error::LengthMismatch {
            expected: 2 * list_size,
            got: 2 * s.list_size(),
        });
    }
    let mut report = SuiteReport {
        list_size,
        architectures: sorters.iter().map(|s| s.architecture().to_string()).collect(),
        seed: grid.seed(),
        ..SuiteReport::default()
    };
    for list in grid.iter()? {
        let input = list.entries();
        let expected = select_l_smallest_oracle(input)?;
        let last = input[input.len() - 1];
        report.inputs += 1;
        for sorter in sorters {
            report.comparisons += 1;
            let got = sorter.select(input);
            if let Ok(out) = &got {
                if out.contains(&last) {
                    report.last_wire_selected += 1;
                }
            }
            if got.as_ref().ok() != Some(&expected) {
                report.mismatches += 1;
                report.first_mismatch.get_or_insert_with(|| Mismatch {
                    architecture: sorter.architecture().to_string(),
                    input: input.to_vec(),
                    expected: expected.clone(),
                    got: got.map_err(|e| e.to_string()),
                });
            }
        }
    }
    Ok(report)
}
