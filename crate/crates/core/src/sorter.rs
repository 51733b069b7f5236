//! A common interface over networks and rank-select plans.

use crate::arch::Architecture;
use crate::error::{Error, Result};
use crate::metric::MetricEntry;
use crate::radix::RankSelectPlan;
use crate::sortnet::{build_bitonic, build_bubble, build_pruned_bitonic, build_simplified_bubble, SortNetwork};

/// Anything that returns the `L` smallest of `2L` entries, in order.
pub trait MetricSorter: Send + Sync {
    fn architecture(&self) -> &Architecture;

    fn list_size(&self) -> usize;

    fn select(&self, input: &[MetricEntry]) -> Result<Vec<MetricEntry>>;
}

impl MetricSorter for SortNetwork {
    fn architecture(&self) -> &Architecture {
        SortNetwork::architecture(self)
    }

    fn list_size(&self) -> usize {
        SortNetwork::list_size(self)
    }

    fn select(&self, input: &[MetricEntry]) -> Result<Vec<MetricEntry>> {
        let mut out = self.evaluate(input)?;
        out.truncate(self.list_size());
        Ok(out)
    }
}

impl MetricSorter for RankSelectPlan {
    fn architecture(&self) -> &Architecture {
        RankSelectPlan::architecture(self)
    }

    fn list_size(&self) -> usize {
        RankSelectPlan::list_size(self)
    }

    fn select(&self, input: &[MetricEntry]) -> Result<Vec<MetricEntry>> {
        RankSelectPlan::select(self, input)
    }
}

/// Builds the named built-in sorter.
pub fn build_sorter(arch: &Architecture, list_size: usize) -> Result<Box<dyn MetricSorter>> {
    Ok(match arch {
        Architecture::Bitonic => Box::new(build_bitonic(list_size)?),
        Architecture::PrunedBitonic => Box::new(build_pruned_bitonic(list_size)?),
        Architecture::Bubble => Box::new(build_bubble(list_size)?),
        Architecture::SimplifiedBubble => Box::new(build_simplified_bubble(list_size)?),
        Architecture::Radix => Box::new(RankSelectPlan::full(list_size)?),
        Architecture::PrunedRadix => Box::new(RankSelectPlan::pruned(list_size)?),
        Architecture::Custom(name) => {
            return Err(Error::InvalidNetwork(format!("no builder for architecture `{name}`")))
        }
    })
}

/// Every built-in sorter that can be built for `list_size`.
pub fn applicable_sorters(list_size: usize) -> Result<Vec<Box<dyn MetricSorter>>> {
    Architecture::BUILTIN
        .iter()
        .filter(|a| a.check_list_size(list_size).is_ok())
        .map(|a| build_sorter(a, list_size))
        .collect()
}
