//! Path-metric sorters for successive cancellation list decoding of polar
//! codes.
//!
//! The decoder keeps `L` surviving paths. At each step it selects the `L`
//! smallest of `2L` candidate metrics, and those candidates have a known
//! partial order. This crate builds the sorter architectures that exploit
//! that order, runs them, checks them against brute-force oracles, and
//! compares their stage and comparator counts with closed-form predictions:
//!
//! * [`sortnet`]: bitonic, pruned bitonic, full bubble and simplified bubble
//!   networks, plus evaluation, pruning and JSON/DOT export.
//! * [`radix`]: all-pairs rank-select sorters, full and pruned.
//! * [`bubble_trace`]: the sequential bubble sort with per-round traces and
//!   a checker for its data-dependency properties.
//! * [`oracle`]: ground truth, input grids and the equivalence suite.
//! * [`stream`]: a seeded closed-loop metric stream.

pub mod arch;
pub mod bubble_trace;
pub mod cost;
pub mod error;
pub mod metric;
pub mod oracle;
pub mod profile;
pub mod radix;
pub mod sorter;
pub mod sortnet;
pub mod stream;

pub use arch::Architecture;
pub use error::{Error, Result};
pub use metric::{
    embed_arbitrary, known_relation, make_structured, validate_structured, KeyDomain, MetricEntry, MetricFile,
    MetricKey, Relation, StructuredList, Violation,
};
pub use radix::RankSelectPlan;
pub use sorter::{applicable_sorters, build_sorter, MetricSorter};
pub use sortnet::{CasUnit, Direction, SortNetwork, Stage};
