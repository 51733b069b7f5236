use super::{prune_structured, CasUnit, SortNetwork, Stage};
use crate::arch::Architecture;
use crate::cost;
use crate::error::Result;

/// Batcher's bitonic sorter over `2L` wires, every unit ascending.
///
/// Super-stage `s` merges sorted blocks of `2^(s-1)` wires into blocks of
/// `2^s`. Its first stage compares each wire with its mirror in the block,
/// which folds the descending half of the classic construction into the
/// wiring; the remaining `s - 1` stages are half-cleaners.
pub fn build_bitonic(list_size: usize) -> Result<SortNetwork> {
    Architecture::Bitonic.check_list_size(list_size)?;
    let wires = 2 * list_size;
    let depth = wires.trailing_zeros() as usize;
    let mut stages = Vec::new();
    for s in 1..=depth {
        let block = 1 << s;
        let flip = (0..wires)
            .step_by(block)
            .flat_map(|start| (0..block / 2).map(move |i| CasUnit::asc(start + i, start + block - 1 - i)))
            .collect();
        stages.push(Stage::new(flip));
        for j in (1..s).rev() {
            let span = 1 << j;
            let half = span / 2;
            let cleaner = (0..wires)
                .step_by(span)
                .flat_map(|start| (start..start + half).map(move |i| CasUnit::asc(i, i + half)))
                .collect();
            stages.push(Stage::new(cleaner));
        }
    }
    finish(Architecture::Bitonic, list_size, stages)
}

/// The bitonic sorter with every unit removed that cannot affect the sorted
/// `L` smallest entries of a structured list.
///
/// Wires `L..2L` of the output are unspecified.
pub fn build_pruned_bitonic(list_size: usize) -> Result<SortNetwork> {
    Architecture::PrunedBitonic.check_list_size(list_size)?;
    let full = build_bitonic(list_size)?;
    let stages = prune_structured(&full, list_size);
    finish(Architecture::PrunedBitonic, list_size, stages)
}

// Round t of the bubble pass compares (l - 1, l) only for l of the opposite
// parity to t, starting at l = t + 1, so wires below t are never touched.
fn bubble_round(t: usize, upper: usize) -> Stage {
    Stage::new((t + 1..=upper).step_by(2).map(|l| CasUnit::asc(l - 1, l)).collect())
}

/// All `2L - 2` rounds of the parallel bubble pass. Fully sorts any
/// structured list.
pub fn build_bubble(list_size: usize) -> Result<SortNetwork> {
    Architecture::Bubble.check_list_size(list_size)?;
    let wires = 2 * list_size;
    let stages = (1..=wires - 2).map(|t| bubble_round(t, wires - 1)).collect();
    finish(Architecture::Bubble, list_size, stages)
}

/// The first `L - 1` bubble rounds, each trimmed to the wires whose contents
/// can still reach the lower half.
pub fn build_simplified_bubble(list_size: usize) -> Result<SortNetwork> {
    Architecture::SimplifiedBubble.check_list_size(list_size)?;
    let wires = 2 * list_size;
    let stages = (1..list_size).map(|t| bubble_round(t, wires - 1 - t)).collect();
    finish(Architecture::SimplifiedBubble, list_size, stages)
}

fn finish(arch: Architecture, list_size: usize, stages: Vec<Stage>) -> Result<SortNetwork> {
    let net = SortNetwork::new(arch, list_size, stages)?;
    if let Some(f) = cost::formula(net.architecture(), list_size) {
        assert_eq!(
            Some(net.stage_count()),
            f.stages,
            "{} L={list_size}: stage count",
            net.architecture()
        );
        assert_eq!(
            net.cas_count(),
            f.units,
            "{} L={list_size}: CAS count",
            net.architecture()
        );
    }
    Ok(net)
}
