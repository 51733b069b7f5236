use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use metricsort::bubble_trace::lemma_suite;
use metricsort::cost::{formula, CostReport};
use metricsort::oracle::{equivalence_suite, InputGrid};
use metricsort::profile::IncrementProfile;
use metricsort::sortnet::{build_bitonic, build_bubble, build_pruned_bitonic, build_simplified_bubble};
use metricsort::stream::{run_stream, StreamConfig};
use metricsort::{
    applicable_sorters, build_sorter, Architecture, KeyDomain, MetricFile, MetricSorter, RankSelectPlan, SortNetwork,
};

#[derive(Parser)]
#[command(
    name = "metricsort",
    version,
    about = "Build, run and verify path-metric sorters for list decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a sorter and export it as JSON or DOT.
    Gen {
        #[arg(long, value_parser = parse_arch)]
        arch: Architecture,
        #[arg(long)]
        list_size: usize,
        #[arg(long, value_enum, default_value_t = GenFormat::Json)]
        format: GenFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate measured and closed-form stage and comparator counts.
    Cost {
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32")]
        list_sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
    },
    /// Check sorters against the brute-force oracle.
    Verify {
        /// Architecture name or `all`.
        #[arg(long, default_value = "all")]
        arch: String,
        #[arg(long)]
        list_size: usize,
        #[arg(long, value_enum, default_value_t = Mode::Random)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Verify an exported network or plan instead of a built-in sorter.
        #[arg(long)]
        net_file: Option<PathBuf>,
    },
    /// Trace the bubble sort and check its data-dependency properties.
    Lemma {
        #[arg(long)]
        list_size: usize,
        #[arg(long, value_enum, default_value_t = Mode::Random)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a seeded closed-loop metric stream.
    Stream {
        #[arg(long)]
        list_size: usize,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// uniform_full, uniform_small:N or half_normal:SIGMA
        #[arg(long, default_value = "uniform_small:3")]
        profile: IncrementProfile,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_arch, default_value = "simplified-bubble")]
        arch: Architecture,
        /// Compare with the oracle at every step.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        check: bool,
        /// Write the survivor trajectory as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Key width in bits.
        #[arg(long, default_value_t = 8)]
        q: u32,
    },
    /// Select the L smallest entries of a metric list file.
    Sort {
        #[arg(long, value_parser = parse_arch)]
        arch: Architecture,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

fn parse_arch(s: &str) -> Result<Architecture, String> {
    match s.parse::<Architecture>() {
        Ok(Architecture::Custom(name)) => Err(format!("unknown architecture `{name}`")),
        Ok(arch) => Ok(arch),
        Err(e) => Err(e.to_string()),
    }
}

type CmdResult = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            arch,
            list_size,
            format,
            out,
        } => gen(&arch, list_size, format, out),
        Command::Cost { list_sizes, format } => cost(&list_sizes, format),
        Command::Verify {
            arch,
            list_size,
            mode,
            trials,
            seed,
            net_file,
        } => verify(&arch, list_size, mode, trials, seed, net_file),
        Command::Lemma {
            list_size,
            mode,
            trials,
            seed,
        } => lemma(list_size, mode, trials, seed),
        Command::Stream {
            list_size,
            steps,
            profile,
            seed,
            arch,
            check,
            csv,
            q,
        } => stream(list_size, steps, profile, seed, arch, check, csv, q),
        Command::Sort { arch, input } => sort(&arch, input),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn network(arch: &Architecture, list_size: usize) -> metricsort::Result<SortNetwork> {
    match arch {
        Architecture::Bitonic => build_bitonic(list_size),
        Architecture::PrunedBitonic => build_pruned_bitonic(list_size),
        Architecture::Bubble => build_bubble(list_size),
        _ => build_simplified_bubble(list_size),
    }
}

fn plan(arch: &Architecture, list_size: usize) -> metricsort::Result<RankSelectPlan> {
    match arch {
        Architecture::Radix => RankSelectPlan::full(list_size),
        _ => RankSelectPlan::pruned(list_size),
    }
}

fn measure(arch: &Architecture, list_size: usize) -> metricsort::Result<CostReport> {
    if arch.is_network() {
        Ok(network(arch, list_size)?.cost())
    } else {
        Ok(plan(arch, list_size)?.cost())
    }
}

fn gen(arch: &Architecture, list_size: usize, format: GenFormat, out: Option<PathBuf>) -> CmdResult {
    arch.check_list_size(list_size).map_err(err)?;
    let (text, report) = if arch.is_network() {
        let net = network(arch, list_size).map_err(err)?;
        let text = match format {
            GenFormat::Json => net.to_json(),
            GenFormat::Dot => net.to_dot(),
        };
        (text, net.cost())
    } else {
        let plan = plan(arch, list_size).map_err(err)?;
        if matches!(format, GenFormat::Dot) {
            return Err(format!("{arch} is not a network; DOT export is unavailable"));
        }
        (plan.to_json(), plan.cost())
    };
    let stages = report.measured_stages.map_or("-".to_string(), |s| s.to_string());
    let summary = format!("{arch} L={list_size}: {stages} stages, {} CAS", report.measured_cas);
    match out {
        Some(path) => {
            fs::write(&path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            println!("{summary}");
        }
        None => {
            println!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(true)
}

fn cost(list_sizes: &[usize], format: TableFormat) -> CmdResult {
    let header = [
        "arch",
        "L",
        "stages",
        "formula_stages",
        "cas",
        "formula_cas",
        "match",
        "stages_vs_pruned_bitonic",
    ];
    let mut rows = Vec::new();
    let mut ok = true;
    for &l in list_sizes {
        let reference = measure(&Architecture::PrunedBitonic, l)
            .ok()
            .and_then(|r| r.measured_stages);
        for arch in Architecture::BUILTIN {
            if arch.check_list_size(l).is_err() {
                continue;
            }
            let report = measure(&arch, l).map_err(err)?;
            let f = formula(&arch, l);
            let matches = report.matches_formula();
            ok &= matches;
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            let marker = match (report.measured_stages, reference) {
                (Some(s), Some(r)) if arch != Architecture::PrunedBitonic => match s.cmp(&r) {
                    std::cmp::Ordering::Less => "fewer",
                    std::cmp::Ordering::Equal => "equal",
                    std::cmp::Ordering::Greater => "more",
                },
                _ => "-",
            };
            rows.push(vec![
                arch.to_string(),
                l.to_string(),
                opt(report.measured_stages),
                opt(f.and_then(|f| f.stages)),
                report.measured_cas.to_string(),
                opt(f.map(|f| f.units)),
                if matches { "yes" } else { "NO" }.to_string(),
                marker.to_string(),
            ]);
        }
    }
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for row in &rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        TableFormat::Md => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for row in &rows {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
    }
    print!("{out}");
    if !ok {
        eprintln!("measured counts diverge from the closed-form formulas");
    }
    Ok(ok)
}

fn exhaustive_max_key(list_size: usize) -> Result<u16, String> {
    match list_size {
        2 => Ok(7),
        3 | 4 => Ok(3),
        8 => Ok(1),
        _ => Err(format!("no exhaustive grid for L={list_size}; use --mode random")),
    }
}

fn grid(list_size: usize, mode: Mode, trials: usize, seed: u64) -> Result<InputGrid, String> {
    Ok(match mode {
        Mode::Exhaustive => InputGrid::exhaustive(list_size, exhaustive_max_key(list_size)?),
        Mode::Random => InputGrid::randomized(list_size, trials, seed),
    })
}

fn load_sorter(path: &PathBuf) -> Result<Box<dyn MetricSorter>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match SortNetwork::from_json(&text) {
        Ok(net) => Ok(Box::new(net)),
        Err(net_err) => match RankSelectPlan::from_json(&text) {
            Ok(plan) => Ok(Box::new(plan)),
            Err(_) => Err(format!("{}: {net_err}", path.display())),
        },
    }
}

fn verify(arch: &str, list_size: usize, mode: Mode, trials: usize, seed: u64, net_file: Option<PathBuf>) -> CmdResult {
    let sorters: Vec<Box<dyn MetricSorter>> = match (&net_file, arch) {
        (Some(path), _) => {
            let sorter = load_sorter(path)?;
            if sorter.list_size() != list_size {
                return Err(format!(
                    "{} has L={}, expected {list_size}",
                    path.display(),
                    sorter.list_size()
                ));
            }
            vec![sorter]
        }
        (None, "all") => applicable_sorters(list_size).map_err(err)?,
        (None, name) => vec![build_sorter(&parse_arch(name)?, list_size).map_err(err)?],
    };
    let grid = grid(list_size, mode, trials, seed)?;
    let refs: Vec<&dyn MetricSorter> = sorters.iter().map(|s| s.as_ref()).collect();
    let report = equivalence_suite(&refs, &grid).map_err(err)?;
    println!("{}", serde_json::to_string_pretty(&report).map_err(err)?);
    if !report.passed() {
        eprintln!("{} mismatches", report.mismatches);
    }
    Ok(report.passed())
}

fn lemma(list_size: usize, mode: Mode, trials: usize, seed: u64) -> CmdResult {
    let report = lemma_suite(&grid(list_size, mode, trials, seed)?).map_err(err)?;
    println!("{}", serde_json::to_string_pretty(&report).map_err(err)?);
    Ok(report.passed())
}

#[allow(clippy::too_many_arguments)]
fn stream(
    list_size: usize,
    steps: usize,
    profile: IncrementProfile,
    seed: u64,
    arch: Architecture,
    check: bool,
    csv: Option<PathBuf>,
    q: u32,
) -> CmdResult {
    let mut config = StreamConfig::new(list_size, steps, arch);
    config.domain = KeyDomain::new(q).map_err(err)?;
    config.profile = profile;
    config.seed = seed;
    config.check = check;
    let summary = run_stream(&config).map_err(err)?;
    if let Some(path) = csv {
        fs::write(&path, summary.to_csv()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    println!("{}", serde_json::to_string_pretty(&summary).map_err(err)?);
    Ok(summary.passed())
}

fn sort(arch: &Architecture, input: PathBuf) -> CmdResult {
    let text = fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
    let file: MetricFile = text.parse().map_err(err)?;
    let sorter = build_sorter(arch, file.list_size).map_err(err)?;
    for e in sorter.select(&file.entries).map_err(err)? {
        println!("{e}");
    }
    Ok(true)
}
