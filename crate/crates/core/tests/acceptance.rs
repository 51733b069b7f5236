//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use metricsort::bubble_trace::lemma_suite;
use metricsort::cost::formula;
use metricsort::metric::indexed_entries;
use metricsort::oracle::{equivalence_suite, sort_arbitrary_via_sorter, InputGrid, SuiteReport};
use metricsort::sortnet::{build_bitonic, build_bubble, build_pruned_bitonic, build_simplified_bubble};
use metricsort::stream::{run_stream, StreamConfig};
use metricsort::{applicable_sorters, build_sorter, Architecture, KeyDomain, MetricKey, MetricSorter, RankSelectPlan};

const LIST_SIZES: [usize; 5] = [2, 4, 8, 16, 32];
const RANDOM_TRIALS: usize = 10_000;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn suite(sorters: &[Box<dyn MetricSorter>], grid: &InputGrid) -> Result<SuiteReport, String> {
    let refs: Vec<&dyn MetricSorter> = sorters.iter().map(|s| s.as_ref()).collect();
    let report = equivalence_suite(&refs, grid).map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(report)
    } else {
        Err(format!(
            "{} mismatches, first: {:?}",
            report.mismatches, report.first_mismatch
        ))
    }
}

fn measured(arch: &Architecture, l: usize) -> Result<(Option<usize>, usize), String> {
    let cost = match arch {
        Architecture::Radix | Architecture::PrunedRadix => {
            let plan = match arch {
                Architecture::Radix => RankSelectPlan::full(l),
                _ => RankSelectPlan::pruned(l),
            };
            plan.map_err(|e| e.to_string())?.cost()
        }
        Architecture::Bitonic => build_bitonic(l).map_err(|e| e.to_string())?.cost(),
        Architecture::PrunedBitonic => build_pruned_bitonic(l).map_err(|e| e.to_string())?.cost(),
        Architecture::Bubble => build_bubble(l).map_err(|e| e.to_string())?.cost(),
        Architecture::SimplifiedBubble => build_simplified_bubble(l).map_err(|e| e.to_string())?.cost(),
        Architecture::Custom(_) => return Err("custom".into()),
    };
    Ok((cost.measured_stages, cost.measured_cas))
}

fn count_identities() -> Outcome {
    let mut checked = 0;
    for l in LIST_SIZES {
        for arch in Architecture::BUILTIN {
            let f = formula(&arch, l).ok_or(format!("no formula for {arch} L={l}"))?;
            let (stages, units) = measured(&arch, l)?;
            if stages != f.stages || units != f.units {
                return Err(format!(
                    "{arch} L={l}: measured ({stages:?}, {units}) formula ({:?}, {})",
                    f.stages, f.units
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (architecture, L) pairs match"))
}

fn exhaustive_l4(last_wire: &mut usize) -> Outcome {
    let grid = InputGrid::exhaustive(4, 3);
    if grid.len() != 8960 {
        return Err(format!("grid has {} inputs", grid.len()));
    }
    let sorters = applicable_sorters(4).map_err(|e| e.to_string())?;
    if sorters.len() != 6 {
        return Err(format!("{} sorters", sorters.len()));
    }
    let r = suite(&sorters, &grid)?;
    *last_wire += r.last_wire_selected;

    let bitonic = build_bitonic(4).map_err(|e| e.to_string())?;
    let bubble = build_bubble(4).map_err(|e| e.to_string())?;
    for list in grid.iter().map_err(|e| e.to_string())? {
        let mut want = list.entries().to_vec();
        want.sort();
        for net in [&bitonic, &bubble] {
            if net.evaluate(list.entries()).map_err(|e| e.to_string())? != want {
                return Err(format!(
                    "{} does not fully sort {:?}",
                    net.architecture(),
                    list.entries()
                ));
            }
        }
    }
    let bitonic2 = build_bitonic(2).map_err(|e| e.to_string())?;
    for n in 0..4u16.pow(4) {
        let keys: Vec<u16> = (0..4).map(|i| n / 4u16.pow(i) % 4).collect();
        let input = indexed_entries(&keys);
        let mut want = input.clone();
        want.sort();
        if bitonic2.evaluate(&input).map_err(|e| e.to_string())? != want {
            return Err(format!("bitonic L=2 does not sort {keys:?}"));
        }
    }
    Ok(format!(
        "{} inputs x {} sorters, 0 mismatches; bitonic and bubble fully sort; bitonic L=2 sorts all 256 arbitrary inputs",
        r.inputs,
        sorters.len()
    ))
}

fn randomized(last_wire: &mut usize) -> Outcome {
    let mut comparisons = 0;
    for l in [8, 16, 32] {
        let sorters = applicable_sorters(l).map_err(|e| e.to_string())?;
        if sorters.len() != 6 {
            return Err(format!("L={l}: {} sorters", sorters.len()));
        }
        let r = suite(&sorters, &InputGrid::randomized(l, RANDOM_TRIALS, SEED + l as u64))
            .map_err(|e| format!("L={l}: {e}"))?;
        *last_wire += r.last_wire_selected;
        comparisons += r.comparisons;
    }
    Ok(format!(
        "{comparisons} sorter runs over L in {{8,16,32}}, Q=8, 0 mismatches"
    ))
}

fn l2_identity() -> Outcome {
    let sorters: Vec<Box<dyn MetricSorter>> = Architecture::PRUNED
        .iter()
        .map(|a| build_sorter(a, 2))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let grid = InputGrid::exhaustive(2, 7);
    let r = suite(&sorters, &grid)?;
    for list in grid.iter().map_err(|e| e.to_string())? {
        let e = list.entries();
        let want = [e[0], e[1].min(e[2])];
        for s in &sorters {
            let got = s.select(e).map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("{}: {e:?} gave {got:?}", s.architecture()));
            }
        }
    }
    Ok(format!(
        "{} inputs, output = (m0, min(m1, m2)) for all pruned sorters",
        r.inputs
    ))
}

fn lemma() -> Outcome {
    let mut grids = vec![InputGrid::exhaustive(4, 3)];
    grids.extend([8, 16, 32].map(|l| InputGrid::randomized(l, RANDOM_TRIALS, SEED ^ l as u64)));
    let mut notes = Vec::new();
    for grid in &grids {
        let r = lemma_suite(grid).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("L={}: {r:?}", r.list_size));
        }
        notes.push(format!(
            "L={} {} inputs max {} rounds",
            r.list_size, r.inputs, r.max_restricted_rounds
        ));
    }
    Ok(notes.join("; "))
}

fn crossover() -> Outcome {
    for l in LIST_SIZES {
        let (bubble, _) = measured(&Architecture::SimplifiedBubble, l)?;
        let (pruned, _) = measured(&Architecture::PrunedBitonic, l)?;
        let (b, p) = (bubble.unwrap_or(0), pruned.unwrap_or(0));
        let ok = if l <= 8 { b < p } else { b >= p };
        if !ok {
            return Err(format!("L={l}: bubble {b} stages, pruned bitonic {p}"));
        }
    }
    Ok("bubble fewer stages for L<=8, not fewer for L>=16".into())
}

fn arbitrary_sorting() -> Outcome {
    let domain = KeyDomain::default();
    let mut count = 0;
    for arch in Architecture::PRUNED {
        let sorter = build_sorter(&arch, 4).map_err(|e| e.to_string())?;
        for n in 0..6u32.pow(4) {
            let values: Vec<MetricKey> = (0..4)
                .map(|i| MetricKey::new((n / 6u32.pow(i) % 6 + 1) as u16))
                .collect();
            let mut want = values.clone();
            want.sort();
            let got = sort_arbitrary_via_sorter(&values, sorter.as_ref(), domain).map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("{arch}: {values:?} sorted to {got:?}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} sequences sorted"))
}

fn streams() -> Outcome {
    for l in [4, 8, 16] {
        let mut reference: Option<(Vec<Vec<u16>>, String)> = None;
        for arch in Architecture::BUILTIN {
            let mut config = StreamConfig::new(l, 1000, arch.clone());
            config.seed = SEED;
            let s = run_stream(&config).map_err(|e| e.to_string())?;
            if !s.passed() {
                return Err(format!(
                    "{arch} L={l}: violations {} sorted {} min non-decreasing {}",
                    s.violations, s.survivors_sorted, s.min_non_decreasing
                ));
            }
            let key = (s.trajectory, s.lineage_digest);
            match &reference {
                None => reference = Some(key),
                Some(r) if *r != key => return Err(format!("{arch} L={l}: trajectory differs")),
                Some(_) => {}
            }
        }
    }
    Ok("1000 steps for L in {4,8,16}, all architectures identical".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut last_wire = 0;
    let mut results: Vec<(&str, Outcome)> = vec![
        ("count identities", count_identities()),
        ("exhaustive L=4 equivalence", exhaustive_l4(&mut last_wire)),
        ("randomized equivalence", randomized(&mut last_wire)),
        ("L=2 identity", l2_identity()),
        ("bubble dependency properties", lemma()),
        ("stage crossover", crossover()),
        ("arbitrary sorting via pruned sorters", arbitrary_sorting()),
        ("closed-loop streams", streams()),
    ];
    let wire = if last_wire == 0 {
        Ok("last wire never selected".into())
    } else {
        Err(format!("last wire selected {last_wire} times"))
    };
    results.push(("last wire unused", wire));

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
