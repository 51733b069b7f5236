use metricsort::bubble_trace::{check_lemma, parallel_round, run_bubble_traced, BubbleMode};
use metricsort::metric::indexed_entries;
use metricsort::oracle::select_l_smallest_oracle;
use metricsort::sortnet::{build_bitonic, build_bubble, build_pruned_bitonic, build_simplified_bubble};
use metricsort::{
    applicable_sorters, known_relation, make_structured, validate_structured, KeyDomain, MetricEntry, MetricKey,
    RankSelectPlan, Relation, SortNetwork, StructuredList,
};
use proptest::prelude::*;

fn structured(list_size: usize, max_increment: u16) -> impl Strategy<Value = StructuredList> {
    (
        prop::collection::vec(0u16..=255, list_size),
        prop::collection::vec(0u16..=max_increment, list_size),
    )
        .prop_map(|(mut mu, a)| {
            mu.sort_unstable();
            let mu: Vec<MetricKey> = mu.into_iter().map(MetricKey::new).collect();
            let a: Vec<MetricKey> = a.into_iter().map(MetricKey::new).collect();
            make_structured(&mu, &a, KeyDomain::default()).unwrap()
        })
}

fn any_structured() -> impl Strategy<Value = StructuredList> {
    prop_oneof![
        prop::sample::select(vec![2usize, 4, 8, 16, 32]).prop_flat_map(|l| structured(l, 255)),
        prop::sample::select(vec![2usize, 3, 5, 8, 16]).prop_flat_map(|l| structured(l, 3)),
    ]
}

fn arbitrary_entries(list_size: usize) -> impl Strategy<Value = Vec<MetricEntry>> {
    prop::collection::vec(0u16..16, 2 * list_size).prop_map(|keys| indexed_entries(&keys))
}

proptest! {
    #[test]
    fn constructed_lists_are_structured(list in any_structured()) {
        prop_assert!(validate_structured(list.entries()).is_ok());
    }

    #[test]
    fn known_relations_are_sound(list in any_structured()) {
        let e = list.entries();
        let l = list.list_size();
        for i in 0..2 * l {
            for j in i + 1..2 * l {
                if known_relation(i, j, l).unwrap() == Relation::IKnownSmaller {
                    prop_assert!(e[i] < e[j]);
                }
            }
        }
    }

    #[test]
    fn every_sorter_matches_the_oracle(list in any_structured()) {
        let expected = select_l_smallest_oracle(list.entries()).unwrap();
        for sorter in applicable_sorters(list.list_size()).unwrap() {
            prop_assert_eq!(&sorter.select(list.entries()).unwrap(), &expected, "{}", sorter.architecture());
        }
    }

    #[test]
    fn bitonic_sorts_arbitrary_input(l in prop::sample::select(vec![2usize, 4, 8, 16]), seed in any::<u64>()) {
        let net = build_bitonic(l).unwrap();
        let keys: Vec<u16> = (0..2 * l as u64).map(|i| ((seed.rotate_left(i as u32 * 7) ^ i) % 23) as u16).collect();
        let input = indexed_entries(&keys);
        let mut want = input.clone();
        want.sort();
        prop_assert_eq!(net.evaluate(&input).unwrap(), want);
    }

    #[test]
    fn full_bubble_sorts_structured_input(list in any_structured()) {
        let mut want = list.entries().to_vec();
        want.sort();
        prop_assert_eq!(build_bubble(list.list_size()).unwrap().evaluate(list.entries()).unwrap(), want);
    }

    #[test]
    fn full_radix_selects_from_arbitrary_input(input in arbitrary_entries(4)) {
        let out = RankSelectPlan::full(4).unwrap().select(&input).unwrap();
        prop_assert_eq!(out, select_l_smallest_oracle(&input).unwrap());
    }

    #[test]
    fn payload_multiset_is_preserved(list in any_structured()) {
        let l = list.list_size();
        let mut nets = vec![build_bubble(l).unwrap(), build_simplified_bubble(l).unwrap()];
        if l.is_power_of_two() {
            nets.push(build_bitonic(l).unwrap());
            nets.push(build_pruned_bitonic(l).unwrap());
        }
        for net in nets {
            let mut out = net.evaluate(list.entries()).unwrap();
            out.sort_by_key(|e| e.payload);
            prop_assert_eq!(&out[..], list.entries());
        }
    }

    #[test]
    fn lemma_holds(list in any_structured()) {
        for mode in [BubbleMode::FullSort, BubbleMode::FirstLOnly] {
            let run = run_bubble_traced(list.entries(), mode).unwrap();
            let report = check_lemma(&run);
            prop_assert!(report.passed(), "{:?}", report.first_failure());
        }
    }

    #[test]
    fn parallel_round_with_disjoint_swaps_is_a_permutation(
        keys in prop::collection::vec(0u16..50, 4..20),
        picks in prop::collection::vec(any::<bool>(), 20),
    ) {
        let m = indexed_entries(&keys);
        let mut b = Vec::new();
        let mut l = 1;
        while l < m.len() {
            if picks[l] {
                b.push(l);
                l += 2;
            } else {
                l += 1;
            }
        }
        let mut out = parallel_round(&m, &b).unwrap();
        out.sort_by_key(|e| e.payload);
        prop_assert_eq!(out, m);
    }

    #[test]
    fn network_json_round_trip(l in prop::sample::select(vec![2usize, 4, 8]), which in 0usize..4) {
        let net = match which {
            0 => build_bitonic(l),
            1 => build_pruned_bitonic(l),
            2 => build_bubble(l),
            _ => build_simplified_bubble(l),
        }.unwrap();
        prop_assert_eq!(SortNetwork::from_json(&net.to_json()).unwrap(), net);
    }
}
