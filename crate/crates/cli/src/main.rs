//! `abcycle`: batch front-end for the (a,b)-cycle finder and its experiments.
//!
//! Exit codes: 0 success or found, 1 honest negative (no cycle found, cycle
//! proven absent, invalid certificate, hypothesis fails), 2 usage, parse or
//! I/O error, 3 oracle budget exhausted.

mod experiments;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abcycle::abfinder::RunReport;
use abcycle::bihamilton::count_hamilton;
use abcycle::format::{
    parse_adjacency, parse_cert, parse_instance, write_cert, write_hypergraph, write_product,
    Instance,
};
use abcycle::hypergraph::check_main2_hypothesis;
use abcycle::oracle::{
    complete_hypergraph, enumerate_ab_cycles, exhaustive_ab_cycle, parity_family, planted_cycle,
    planted_product_cycle, random_hypergraph, OracleError, Parity,
};
use abcycle::{
    check_main1_hypothesis, exact_hamilton, find_ab_cycle, find_hamilton, find_in_product,
    infer_delta_a_lower, ore_check, verify_ab_cycle, ExactOutcome, FindConfig, FindError,
    OreOutcome, ThresholdReport, VertexSet,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "abcycle",
    version,
    about = "Hamilton (a,b)-cycles in uniform hypergraphs"
)]
struct Cli {
    /// Worker threads for trial-parallel commands (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum d-degree and the d-degree histogram.
    Degrees {
        file: PathBuf,
        #[arg(short, long)]
        d: usize,
    },
    /// Compares minimum degrees against the sufficient-condition thresholds.
    Check {
        file: PathBuf,
        /// Size of the A-blocks (plain instances; product files carry it).
        #[arg(short, long)]
        a: Option<usize>,
        #[arg(long)]
        alpha: f64,
    },
    /// Runs the randomized finder and writes a certificate.
    Find(FindArgs),
    /// Checks a certificate against a hypergraph.
    Verify { hypergraph: PathBuf, cert: PathBuf },
    /// Exhaustive search (small n): proves existence or absence.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        split: Split,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also count all cycles (canonical, deduplicated).
        #[arg(long)]
        count: bool,
        /// Certificate output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Instance generators; writes a `.uhg` file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Concentration of matching intersections with a random family.
    Fk(experiments::FkArgs),
    /// Concentration of an anchored link degree over random partitions.
    Linkconc(experiments::LinkArgs),
    /// Frequency of the Moon–Moser condition on sampled auxiliary graphs.
    Oresucc(experiments::OreArgs),
    /// Finder success and oracle existence rates across edge densities.
    Sweep(experiments::SweepArgs),
    /// Hamilton cycle in a bipartite adjacency file.
    Biham {
        file: PathBuf,
        /// Use exhaustive backtracking instead of the constructive finder.
        #[arg(long)]
        exact: bool,
        /// With --exact: count all Hamilton cycles.
        #[arg(long, requires = "exact")]
        count: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Moon–Moser condition on a bipartite adjacency file.
    Orecheck { file: PathBuf },
}

/// Block sizes; optional for product instances whose header carries them.
#[derive(Args, Debug, Clone, Copy)]
struct Split {
    #[arg(short, long)]
    a: Option<usize>,
    #[arg(short, long)]
    b: Option<usize>,
}

#[derive(Args, Debug)]
struct FindArgs {
    file: PathBuf,
    #[command(flatten)]
    split: Split,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Default: max(10, 4t).
    #[arg(long)]
    attempts: Option<usize>,
    /// Certificate output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Writes the run report as a one-row CSV.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Adds the wall-clock column to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Every k-subset of [n].
    Complete {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        k: usize,
    },
    /// Each k-subset kept independently with probability p.
    Random {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// k-subsets meeting D in an even (or odd) number of vertices.
    Parity {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        k: usize,
        /// Comma-separated vertex ids of D.
        #[arg(long, value_delimiter = ',')]
        d: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
    },
    /// Exactly the witness edges of a random Hamilton (a,b)-cycle.
    Planted {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        a: usize,
        #[arg(short, long)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Writes the planted certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Planted cycle in the product family with t blocks per side.
    PlantedProduct {
        #[arg(short, long)]
        t: usize,
        #[arg(short, long)]
        a: usize,
        #[arg(short, long)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ParityArg {
    Even,
    Odd,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub message: String,
}

impl Fail {
    pub fn usage(message: impl Into<String>) -> Self {
        Fail {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<abcycle::Error> for Fail {
    fn from(e: abcycle::Error) -> Self {
        Fail::usage(e.to_string())
    }
}

impl From<csv::Error> for Fail {
    fn from(e: csv::Error) -> Self {
        Fail::usage(format!("csv: {e}"))
    }
}

pub type CmdResult = Result<ExitCode, Fail>;

pub fn read_file(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Fail> {
    parse_instance(&read_file(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn negative(message: impl std::fmt::Display) -> CmdResult {
    eprintln!("{message}");
    Ok(ExitCode::from(1))
}

/// Resolves (a, b) for a plain instance, or checks them against a product header.
fn resolve_split(inst: &Instance, split: Split) -> Result<(usize, usize), Fail> {
    match inst {
        Instance::Product(ph) => {
            for (given, actual, name) in [(split.a, ph.a(), "a"), (split.b, ph.b(), "b")] {
                if given.is_some_and(|g| g != actual) {
                    return Err(Fail::usage(format!(
                        "--{name} disagrees with the product header ({name}={actual})"
                    )));
                }
            }
            Ok((ph.a(), ph.b()))
        }
        Instance::Plain(h) => match (split.a, split.b) {
            (Some(a), Some(b)) => Ok((a, b)),
            (Some(a), None) if a < h.k() => Ok((a, h.k() - a)),
            (None, Some(b)) if b < h.k() => Ok((h.k() - b, b)),
            _ => Err(Fail::usage("give --a and/or --b for a plain instance")),
        },
    }
}

fn cmd_degrees(file: &Path, d: usize) -> CmdResult {
    let inst = load_instance(file)?;
    let h = inst.hypergraph();
    let (witness, min) = h.min_degree_witness(d)?;
    println!("min_degree={min}");
    println!("witness={witness}");
    for (degree, count) in h.degree_histogram(d)? {
        println!("degree={degree} sets={count}");
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(r: &ThresholdReport) {
    let th = &r.thresholds;
    println!(
        "n={} k={} a={} b={} alpha={}",
        th.n, th.k, th.a, th.b, th.alpha
    );
    println!("error_term={:.6}", th.error_term);
    println!(
        "delta_a={} required={:.3} margin={:.3}",
        r.actual_delta_a, th.required_delta_a, r.margins.0
    );
    println!(
        "delta_b={} required={:.3} margin={:.3}",
        r.actual_delta_b, th.required_delta_b, r.margins.1
    );
    println!("hypothesis_holds={}", r.hypothesis_holds);
}

fn cmd_check(file: &Path, a: Option<usize>, alpha: f64) -> CmdResult {
    let report = match load_instance(file)? {
        Instance::Product(ph) => {
            if a.is_some_and(|a| a != ph.a()) {
                return Err(Fail::usage("--a disagrees with the product header"));
            }
            check_main2_hypothesis(&ph, alpha)?
        }
        Instance::Plain(h) => {
            let a = a.ok_or_else(|| Fail::usage("--a is required for a plain instance"))?;
            let report = check_main1_hypothesis(&h, a, alpha)?;
            let (a, b) = (report.thresholds.a, report.thresholds.b);
            if a <= b {
                let implied =
                    infer_delta_a_lower(h.n() as usize, h.k(), a, b, report.actual_delta_b)?;
                println!("delta_a_implied_by_delta_b={implied:.3}");
            }
            report
        }
    };
    print_report(&report);
    if report.hypothesis_holds {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn write_run_report(path: &Path, report: &RunReport, timing: bool) -> Result<(), Fail> {
    let keep = if timing {
        RunReport::CSV_HEADER.len()
    } else {
        RunReport::CSV_HEADER.len() - 1
    };
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&RunReport::CSV_HEADER[..keep])?;
    w.write_record(&report.csv_row()[..keep])?;
    w.flush().map_err(|e| Fail::usage(e.to_string()))?;
    Ok(())
}

fn cmd_find(args: &FindArgs) -> CmdResult {
    let inst = load_instance(&args.file)?;
    let config = FindConfig {
        max_attempts: args.attempts,
        seed: args.seed,
    };
    let outcome = match &inst {
        Instance::Product(ph) => {
            resolve_split(&inst, args.split)?;
            find_in_product(ph, &config)
        }
        Instance::Plain(h) => {
            let (a, b) = resolve_split(&inst, args.split)?;
            find_ab_cycle(h, a, b, &config)
        }
    };
    let (cert, report) = match outcome {
        Ok(found) => found,
        Err(FindError::InvalidInput(e)) => return Err(e.into()),
        Err(FindError::Exhausted(report)) => {
            if let Some(path) = &args.report {
                write_run_report(path, &report, args.timing)?;
            }
            return negative(format!(
                "not found: {} attempts ({} failed the Moon–Moser condition)",
                report.attempts, report.ore_failures
            ));
        }
    };
    if let Some(path) = &args.report {
        write_run_report(path, &report, args.timing)?;
    }
    emit(args.out.as_deref(), &write_cert(&cert))?;
    eprintln!("found on attempt {}", report.success_attempt.unwrap_or(0));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(hypergraph: &Path, cert: &Path) -> CmdResult {
    let inst = load_instance(hypergraph)?;
    let cert = parse_cert(&read_file(cert)?)
        .map_err(|e| Fail::usage(format!("{}: {e}", cert.display())))?;
    match verify_ab_cycle(inst.hypergraph(), &cert) {
        Ok(()) => {
            println!("valid");
            Ok(ExitCode::SUCCESS)
        }
        Err(violations) => {
            println!("invalid");
            for v in violations {
                println!("{v}");
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn oracle_fail(e: OracleError) -> Fail {
    match e {
        OracleError::Invalid(e) => e.into(),
        OracleError::Budget(b) => Fail {
            code: 3,
            message: b.to_string(),
        },
    }
}

fn cmd_oracle(
    file: &Path,
    split: Split,
    budget: u64,
    count: bool,
    out: Option<&Path>,
) -> CmdResult {
    let inst = load_instance(file)?;
    let (a, b) = resolve_split(&inst, split)?;
    let h = inst.hypergraph();
    let result = exhaustive_ab_cycle(h, a, b, budget).map_err(oracle_fail)?;
    eprintln!("nodes_explored={}", result.nodes_explored);
    if count {
        let all = enumerate_ab_cycles(h, a, b, budget).map_err(oracle_fail)?;
        eprintln!("cycles={}", all.len());
    }
    match result.cert {
        Some(cert) => {
            emit(out, &write_cert(&cert))?;
            Ok(ExitCode::SUCCESS)
        }
        None => negative("no Hamilton (a,b)-cycle exists"),
    }
}

fn cmd_gen(kind: &GenKind, out: Option<&Path>) -> CmdResult {
    let text = match kind {
        GenKind::Complete { n, k } => write_hypergraph(&complete_hypergraph(*n, *k)?),
        GenKind::Random { n, k, p, seed } => {
            write_hypergraph(&random_hypergraph(*n, *k, *p, *seed)?)
        }
        GenKind::Parity { n, k, d, parity } => {
            let parity = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            write_hypergraph(&parity_family(
                *n,
                *k,
                &VertexSet::new(d.iter().copied())?,
                parity,
            )?)
        }
        GenKind::Planted {
            n,
            a,
            b,
            seed,
            cert,
        } => {
            let (h, planted) = planted_cycle(*n, *a, *b, *seed)?;
            if let Some(path) = cert {
                write_file(path, &write_cert(&planted))?;
            }
            write_hypergraph(&h)
        }
        GenKind::PlantedProduct {
            t,
            a,
            b,
            seed,
            cert,
        } => {
            let (ph, planted) = planted_product_cycle(*t, *a, *b, *seed)?;
            if let Some(path) = cert {
                write_file(path, &write_cert(&planted))?;
            }
            write_product(&ph)
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_biham(file: &Path, exact: bool, count: bool, budget: u64) -> CmdResult {
    let g = parse_adjacency(&read_file(file)?)?;
    if count {
        return match count_hamilton(&g, budget)? {
            Some(c) => {
                println!("cycles={c}");
                Ok(ExitCode::SUCCESS)
            }
            None => Err(Fail {
                code: 3,
                message: format!("budget of {budget} nodes exhausted"),
            }),
        };
    }
    let cycle = if exact {
        match exact_hamilton(&g, budget)? {
            ExactOutcome::Found(c) => Some(c),
            ExactOutcome::NoCycle => None,
            ExactOutcome::BudgetExceeded => {
                return Err(Fail {
                    code: 3,
                    message: format!("budget of {budget} nodes exhausted"),
                })
            }
        }
    } else {
        find_hamilton(&g)?
    };
    match cycle {
        Some(c) => {
            let line: Vec<String> = c.steps.iter().map(|(x, y)| format!("x{x} y{y}")).collect();
            println!("{}", line.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        None if exact => negative("no Hamilton cycle exists"),
        None => negative("no Hamilton cycle found"),
    }
}

fn cmd_orecheck(file: &Path) -> CmdResult {
    let g = parse_adjacency(&read_file(file)?)?;
    match ore_check(&g)? {
        OreOutcome::Holds => {
            println!("holds");
            Ok(ExitCode::SUCCESS)
        }
        OreOutcome::Violated { x, y, degree_sum } => {
            println!("violated x={x} y={y} degree_sum={degree_sum} t={}", g.t());
            Ok(ExitCode::from(1))
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Fail::usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Degrees { file, d } => cmd_degrees(file, *d),
        Command::Check { file, a, alpha } => cmd_check(file, *a, *alpha),
        Command::Find(args) => cmd_find(args),
        Command::Verify { hypergraph, cert } => cmd_verify(hypergraph, cert),
        Command::Oracle {
            file,
            split,
            budget,
            count,
            out,
        } => cmd_oracle(file, *split, *budget, *count, out.as_deref()),
        Command::Gen { kind, out } => cmd_gen(kind, out.as_deref()),
        Command::Fk(args) => experiments::cmd_fk(args),
        Command::Linkconc(args) => experiments::cmd_linkconc(args, load_instance(&args.file)?),
        Command::Oresucc(args) => experiments::cmd_oresucc(args, load_instance(&args.file)?),
        Command::Sweep(args) => experiments::cmd_sweep(args),
        Command::Biham {
            file,
            exact,
            count,
            budget,
        } => cmd_biham(file, *exact, *count, *budget),
        Command::Orecheck { file } => cmd_orecheck(file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
