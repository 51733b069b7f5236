//! Removal of CAS units whose outcome is fixed by the structured input.
//!
//! A forward pass tracks, for every wire, which original input entry it
//! still carries untouched. A unit is resolved statically when its two
//! inputs are
//!
//! * the entry from wire 0, which precedes everything,
//! * the entry from wire `2L - 1`, which is never among the `L` smallest and
//!   so may be treated as `+inf`, or
//! * the two entries of one candidate pair `(2l, 2l + 1)`.
//!
//! Resolved units become nothing (no exchange) or a static route (exchange).
//! A backward liveness pass then drops every unit whose outputs cannot reach
//! the first `L` output wires.
//!
//! Other even-before-later relations are deliberately not used: they would
//! remove more units than the reference pruned bitonic sorter, whose cost
//! this construction reproduces.

use super::{Direction, SortNetwork, Stage};

/// Which input of a unit is statically known to come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precedence {
    Lo,
    Hi,
}

/// Static order of two wire contents, identified by their original input
/// position (`None` once a wire carries the result of a live comparison).
pub fn static_precedence(at_lo: Option<usize>, at_hi: Option<usize>, wires: usize) -> Option<Precedence> {
    let last = wires - 1;
    match (at_lo, at_hi) {
        (Some(0), _) => Some(Precedence::Lo),
        (_, Some(0)) => Some(Precedence::Hi),
        (Some(i), _) if i == last => Some(Precedence::Hi),
        (_, Some(j)) if j == last => Some(Precedence::Lo),
        (Some(i), Some(j)) if i / 2 == j / 2 => Some(if i < j { Precedence::Lo } else { Precedence::Hi }),
        _ => None,
    }
}

/// Prunes `net` for structured inputs, keeping only what the first
/// `outputs` wires depend on.
///
/// Stages emptied ahead of the first surviving unit are input wiring and are
/// dropped. Later stages keep their slot even when emptied, so the depth of
/// the original super-stage layout is preserved.
pub fn prune_structured(net: &SortNetwork, outputs: usize) -> Vec<Stage> {
    let wires = net.wires();
    let mut origin: Vec<Option<usize>> = (0..wires).map(Some).collect();
    let mut stages = Vec::with_capacity(net.stage_count());

    for stage in net.stages() {
        let mut out = Stage {
            cas: Vec::new(),
            route: stage.route.clone(),
        };
        for &(a, b) in &stage.route {
            origin.swap(a, b);
        }
        for unit in &stage.cas {
            match static_precedence(origin[unit.lo], origin[unit.hi], wires) {
                Some(first) => {
                    let exchange = match unit.direction {
                        Direction::Ascending => first == Precedence::Hi,
                        Direction::Descending => first == Precedence::Lo,
                    };
                    if exchange {
                        out.route.push((unit.lo, unit.hi));
                        origin.swap(unit.lo, unit.hi);
                    }
                }
                None => {
                    out.cas.push(*unit);
                    origin[unit.lo] = None;
                    origin[unit.hi] = None;
                }
            }
        }
        stages.push(out);
    }

    let mut live: Vec<bool> = (0..wires).map(|w| w < outputs).collect();
    for stage in stages.iter_mut().rev() {
        stage.route.retain(|&(a, b)| live[a] || live[b]);
        for &(a, b) in &stage.route {
            live.swap(a, b);
        }
        stage.cas.retain(|u| live[u.lo] || live[u.hi]);
        for u in &stage.cas {
            live[u.lo] = true;
            live[u.hi] = true;
        }
    }

    let leading = stages.iter().take_while(|s| s.is_empty()).count();
    stages.drain(..leading);
    stages
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::Architecture;
    use crate::metric::{indexed_entries, keys_of};
    use crate::sortnet::CasUnit;

    #[test]
    fn precedence_rules() {
        assert_eq!(static_precedence(Some(0), None, 8), Some(Precedence::Lo));
        assert_eq!(static_precedence(None, Some(7), 8), Some(Precedence::Lo));
        assert_eq!(static_precedence(Some(7), Some(3), 8), Some(Precedence::Hi));
        assert_eq!(static_precedence(Some(5), Some(4), 8), Some(Precedence::Hi));
        assert_eq!(static_precedence(Some(2), Some(5), 8), None);
        assert_eq!(static_precedence(None, None, 8), None);
    }

    #[test]
    fn descending_pair_unit_becomes_a_route() {
        // Stage 1 of the classic alternating bitonic sorter for L = 2.
        let stages = vec![
            Stage::new(vec![CasUnit::asc(0, 1), CasUnit::desc(2, 3)]),
            Stage::new(vec![CasUnit::asc(0, 2), CasUnit::asc(1, 3)]),
            Stage::new(vec![CasUnit::asc(0, 1), CasUnit::asc(2, 3)]),
        ];
        let net = SortNetwork::new(Architecture::Custom("alternating".into()), 2, stages).unwrap();
        let pruned = prune_structured(&net, 2);
        assert_eq!(pruned[0].route, vec![(2, 3)]);
        assert!(pruned[0].cas.is_empty());
        assert_eq!(pruned[1].cas, vec![CasUnit::asc(1, 3)]);
        assert!(pruned[1].route.is_empty());

        let pruned = SortNetwork::new(Architecture::Custom("p".into()), 2, pruned).unwrap();
        for keys in [[1, 6, 2, 2], [0, 0, 0, 0], [3, 9, 5, 5], [1, 1, 4, 9]] {
            let input = indexed_entries(&keys);
            let mut want = input.clone();
            want.sort();
            assert_eq!(pruned.evaluate(&input).unwrap()[..2], want[..2], "{keys:?}");
        }
        assert_eq!(
            keys_of(&pruned.evaluate(&indexed_entries(&[1, 6, 2, 2])).unwrap()[..2]),
            vec![1, 2]
        );
    }

    #[test]
    fn dead_units_are_removed() {
        let stages = vec![Stage::new(vec![CasUnit::asc(1, 2), CasUnit::asc(4, 5)])];
        let net = SortNetwork::new(Architecture::Custom("x".into()), 3, stages).unwrap();
        let pruned = prune_structured(&net, 3);
        assert_eq!(pruned[0].cas, vec![CasUnit::asc(1, 2)]);
    }
}
