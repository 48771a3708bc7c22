//! Experiment subcommands writing CSV plus a companion gnuplot script.
//!
//! CSV bodies are byte-identical for identical command lines: trials run in
//! parallel but rows are written in trial order, and no wall-clock column is
//! written.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abcycle::abfinder::ore_trials;
use abcycle::fklab::{
    link_concentration_experiment, run_fk, FKInstance, LinkConfig, Side, TrialStats,
};
use abcycle::format::Instance;
use abcycle::oracle::{exhaustive_ab_cycle, random_hypergraph, OracleError};
use abcycle::{find_ab_cycle, FindConfig, FindError, SeedSpec, VertexSet};
use clap::{Args, ValueEnum};
use rand::RngCore;
use rayon::prelude::*;

use crate::{write_file, CmdResult, Fail, DEFAULT_BUDGET};

const DEFAULT_GAMMAS: &str = "0.5,1,1.5,2,2.5";

#[derive(Args, Debug)]
pub struct FkArgs {
    #[arg(short, long, default_value_t = 60)]
    m: usize,
    #[arg(short, long, default_value_t = 3)]
    l: usize,
    #[arg(short, long, default_value_t = 20)]
    t: usize,
    /// Target family density; the realised density is reported.
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_GAMMAS)]
    gammas: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Seed of the trial streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed of the random family.
    #[arg(long, default_value_t = 1)]
    family_seed: u64,
    /// Per-gamma summary CSV (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-trial CSV.
    #[arg(long)]
    trials_out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SideArg {
    A,
    B,
}

#[derive(Args, Debug)]
pub struct LinkArgs {
    pub file: PathBuf,
    #[arg(short, long)]
    a: usize,
    #[arg(long, value_enum, default_value_t = SideArg::A)]
    side: SideArg,
    /// Comma-separated anchor set (default: {1..a}, or {1..b} on side B).
    #[arg(long, value_delimiter = ',')]
    anchor: Option<Vec<u32>>,
    /// Reports the frequency of the anchor degree falling to alpha·t or below.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_GAMMAS)]
    gammas: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trials_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OreArgs {
    pub file: PathBuf,
    #[arg(short, long)]
    a: Option<usize>,
    #[arg(short, long)]
    b: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trials_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(short, long)]
    n: u32,
    #[arg(short, long)]
    k: usize,
    #[arg(short, long)]
    a: usize,
    #[arg(short, long)]
    b: usize,
    /// Comma-separated edge probabilities.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1"
    )]
    p_grid: Vec<f64>,
    /// Instances per density.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Finder attempts per instance (default: max(10, 4t)).
    #[arg(long)]
    attempts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node budget per oracle call.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trials_out: Option<PathBuf>,
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Fail> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Fail::usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Fail::usage(e.to_string()))
}

/// Writes the CSV to `out` (or stdout) and, with a path, a gnuplot script
/// `<out>.gp` produced by `script(csv_file_name)`.
fn emit_csv(
    out: Option<&Path>,
    header: &[&str],
    rows: &[Vec<String>],
    script: impl FnOnce(&str) -> String,
) -> Result<(), Fail> {
    let text = csv_text(header, rows)?;
    match out {
        None => print!("{text}"),
        Some(path) => {
            write_file(path, &text)?;
            let name = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let mut gp = path.as_os_str().to_owned();
            gp.push(".gp");
            write_file(Path::new(&gp), &script(&name))?;
        }
    }
    Ok(())
}

fn gnuplot_header(csv: &str, title: &str, xlabel: &str, ylabel: &str) -> String {
    let stem = csv.strip_suffix(".csv").unwrap_or(csv);
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set terminal pngcairo size 800,600");
    let _ = writeln!(s, "set output '{stem}.png'");
    let _ = writeln!(s, "set title '{title}'");
    let _ = writeln!(s, "set xlabel '{xlabel}'");
    let _ = writeln!(s, "set ylabel '{ylabel}'");
    let _ = writeln!(s, "set key top right");
    s
}

/// Tail-versus-gamma plot: empirical tail in column 4, bound in column 5.
fn tail_script(csv: &str, title: &str) -> String {
    let mut s = gnuplot_header(csv, title, "gamma", "Pr[|eta - E eta| >= 2 gamma sqrt(t)]");
    let _ = writeln!(s, "set yrange [0:1.05]");
    let _ = writeln!(
        s,
        "plot '{csv}' using 1:4 skip 1 with linespoints title 'empirical', \\\n     '{csv}' using 1:5 skip 1 with lines title 'bound'"
    );
    s
}

const TAIL_HEADER: [&str; 8] = [
    "gamma",
    "radius",
    "exceed",
    "empirical_tail",
    "bound",
    "expected",
    "trials",
    "seed",
];

fn tail_rows(stats: &TrialStats, seed: u64) -> Vec<Vec<String>> {
    stats
        .tails
        .iter()
        .map(|tail| {
            vec![
                tail.gamma.to_string(),
                format!("{:.6}", tail.radius),
                tail.exceed.to_string(),
                format!("{:.6}", tail.freq),
                format!("{:.6}", tail.bound),
                format!("{:.6}", stats.expected),
                stats.trials.to_string(),
                seed.to_string(),
            ]
        })
        .collect()
}

fn write_eta_trials(path: &Path, stats: &TrialStats, seed: u64) -> Result<(), Fail> {
    let rows: Vec<Vec<String>> = stats
        .etas
        .iter()
        .enumerate()
        .map(|(i, eta)| vec![seed.to_string(), i.to_string(), eta.to_string()])
        .collect();
    write_file(
        path,
        &csv_text(&["master_seed", "trial_index", "eta"], &rows)?,
    )
}

pub fn cmd_fk(args: &FkArgs) -> CmdResult {
    let inst = FKInstance::with_target_theta(args.m, args.l, args.t, args.theta, args.family_seed)?;
    let stats = run_fk(&inst, &args.gammas, args.trials, args.seed)?;
    eprintln!(
        "theta={:.6} expected={:.6} mean_eta={:.6}",
        inst.theta(),
        stats.expected,
        stats.mean_eta
    );
    if let Some(path) = &args.trials_out {
        write_eta_trials(path, &stats, args.seed)?;
    }
    let title = format!(
        "m={} l={} t={} theta={:.4}",
        args.m,
        args.l,
        args.t,
        inst.theta()
    );
    emit_csv(
        args.out.as_deref(),
        &TAIL_HEADER,
        &tail_rows(&stats, args.seed),
        |csv| tail_script(csv, &title),
    )?;
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_linkconc(args: &LinkArgs, inst: Instance) -> CmdResult {
    let anchor = args
        .anchor
        .as_ref()
        .map(|ids| VertexSet::new(ids.iter().copied()))
        .transpose()?;
    let cfg = LinkConfig {
        a: args.a,
        side: match args.side {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        },
        anchor,
        alpha_ref: args.alpha,
        gammas: args.gammas.clone(),
        trials: args.trials,
        seed: args.seed,
    };
    let ls = link_concentration_experiment(inst.hypergraph(), &cfg)?;
    eprintln!(
        "anchor={} t={} link_density={:.6} radius={:.6} deviation_freq={:.6} bound={:.6} below_alpha_freq={:.6}",
        ls.anchor, ls.t, ls.link_density, ls.radius, ls.deviation_freq, ls.bound, ls.below_alpha_ref_freq
    );
    if let Some(path) = &args.trials_out {
        write_eta_trials(path, &ls.stats, args.seed)?;
    }
    let title = format!("link of {} (t={})", ls.anchor, ls.t);
    emit_csv(
        args.out.as_deref(),
        &TAIL_HEADER,
        &tail_rows(&ls.stats, args.seed),
        |csv| tail_script(csv, &title),
    )?;
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_oresucc(args: &OreArgs, inst: Instance) -> CmdResult {
    let h = inst.hypergraph();
    let (a, b) = match (&inst, args.a, args.b) {
        (Instance::Product(ph), _, _) => (ph.a(), ph.b()),
        (_, Some(a), Some(b)) => (a, b),
        (_, Some(a), None) if a < h.k() => (a, h.k() - a),
        (_, None, Some(b)) if b < h.k() => (h.k() - b, b),
        _ => return Err(Fail::usage("give --a and/or --b")),
    };
    if args.trials == 0 {
        return Err(abcycle::Error::NoTrials.into());
    }
    let outcomes = ore_trials(h, a, b, args.alpha, args.trials, args.seed)?;
    if let Some(path) = &args.trials_out {
        let rows: Vec<Vec<String>> = outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| {
                vec![
                    args.seed.to_string(),
                    i.to_string(),
                    o.degree_condition.to_string(),
                    o.ore.to_string(),
                ]
            })
            .collect();
        let header = ["master_seed", "trial_index", "degree_condition", "ore"];
        write_file(path, &csv_text(&header, &rows)?)?;
    }
    let trials = outcomes.len() as f64;
    let deg = outcomes.iter().filter(|o| o.degree_condition).count() as f64 / trials;
    let ore = outcomes.iter().filter(|o| o.ore).count() as f64 / trials;
    let t = h.n() as usize / (a + b);
    let row = vec![
        t.to_string(),
        args.alpha.to_string(),
        format!("{deg:.6}"),
        format!("{ore:.6}"),
        format!("{:.6}", 1.0 - 4.0 / t as f64),
        args.trials.to_string(),
        args.seed.to_string(),
    ];
    let header = [
        "t",
        "alpha",
        "degree_condition_freq",
        "ore_freq",
        "union_bound_floor",
        "trials",
        "seed",
    ];
    emit_csv(args.out.as_deref(), &header, &[row], |csv| {
        let mut s = gnuplot_header(csv, "Moon-Moser success frequency", "", "frequency");
        let _ = writeln!(s, "set style data histograms");
        let _ = writeln!(s, "set style fill solid 0.6");
        let _ = writeln!(s, "set yrange [0:1.05]");
        let _ = writeln!(
            s,
            "plot '{csv}' using 3:xtic(\"degree condition\") title 'degree condition', \\\n     '' using 4 title 'Moon-Moser', \\\n     '' using 5 title '1 - 4/t'"
        );
        s
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OracleVerdict {
    Exists,
    Absent,
    Budget,
    Skipped,
}

impl OracleVerdict {
    fn label(self) -> &'static str {
        match self {
            OracleVerdict::Exists => "exists",
            OracleVerdict::Absent => "absent",
            OracleVerdict::Budget => "budget",
            OracleVerdict::Skipped => "",
        }
    }
}

struct SweepTrial {
    instance_seed: u64,
    edges: usize,
    success_attempt: Option<usize>,
    oracle: OracleVerdict,
}

/// Largest n for which the sweep runs the exhaustive oracle.
pub const SWEEP_ORACLE_MAX_N: u32 = 12;

fn sweep_trial(args: &SweepArgs, p: f64, stream: SeedSpec) -> Result<SweepTrial, Fail> {
    let mut rng = stream.rng();
    let instance_seed = rng.next_u64();
    let finder_seed = rng.next_u64();
    let h = random_hypergraph(args.n, args.k, p, instance_seed)?;
    let config = FindConfig {
        max_attempts: args.attempts,
        seed: finder_seed,
    };
    let success_attempt = match find_ab_cycle(&h, args.a, args.b, &config) {
        Ok((_, report)) => report.success_attempt,
        Err(FindError::Exhausted(_)) => None,
        Err(FindError::InvalidInput(e)) => return Err(e.into()),
    };
    let oracle = if args.n > SWEEP_ORACLE_MAX_N {
        OracleVerdict::Skipped
    } else {
        match exhaustive_ab_cycle(&h, args.a, args.b, args.budget) {
            Ok(r) if r.exists => OracleVerdict::Exists,
            Ok(_) => OracleVerdict::Absent,
            Err(OracleError::Budget(_)) => OracleVerdict::Budget,
            Err(OracleError::Invalid(e)) => return Err(e.into()),
        }
    };
    Ok(SweepTrial {
        instance_seed,
        edges: h.edge_count(),
        success_attempt,
        oracle,
    })
}

pub fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    if args.trials == 0 {
        return Err(abcycle::Error::NoTrials.into());
    }
    let mut summary = Vec::new();
    let mut per_trial = Vec::new();
    for (pi, &p) in args.p_grid.iter().enumerate() {
        if !(0.0..=1.0).contains(&p) {
            return Err(abcycle::Error::ProbabilityOutOfRange(p).into());
        }
        let trials = (0..args.trials)
            .into_par_iter()
            .map(|i| {
                let index = (pi * args.trials + i) as u64;
                sweep_trial(args, p, SeedSpec::new(args.seed, index))
            })
            .collect::<Result<Vec<_>, Fail>>()?;
        let count = trials.len() as f64;
        let found = trials
            .iter()
            .filter(|r| r.success_attempt.is_some())
            .count();
        let exists = trials
            .iter()
            .filter(|r| r.oracle == OracleVerdict::Exists)
            .count();
        let budget = trials
            .iter()
            .filter(|r| r.oracle == OracleVerdict::Budget)
            .count();
        let oracle_ran = args.n <= SWEEP_ORACLE_MAX_N;
        summary.push(vec![
            p.to_string(),
            args.trials.to_string(),
            format!("{:.6}", found as f64 / count),
            if oracle_ran {
                format!("{:.6}", exists as f64 / count)
            } else {
                String::new()
            },
            if oracle_ran {
                budget.to_string()
            } else {
                String::new()
            },
            args.seed.to_string(),
        ]);
        for (i, r) in trials.iter().enumerate() {
            per_trial.push(vec![
                args.seed.to_string(),
                (pi * args.trials + i).to_string(),
                p.to_string(),
                r.instance_seed.to_string(),
                r.edges.to_string(),
                r.success_attempt.is_some().to_string(),
                r.success_attempt.map(|a| a.to_string()).unwrap_or_default(),
                r.oracle.label().to_string(),
            ]);
        }
    }
    if let Some(path) = &args.trials_out {
        let header = [
            "master_seed",
            "trial_index",
            "p",
            "instance_seed",
            "edges",
            "found",
            "success_attempt",
            "oracle",
        ];
        write_file(path, &csv_text(&header, &per_trial)?)?;
    }
    let header = [
        "p",
        "trials",
        "finder_success",
        "oracle_exists",
        "oracle_budget_exceeded",
        "seed",
    ];
    let title = format!("n={} k={} (a,b)=({},{})", args.n, args.k, args.a, args.b);
    emit_csv(args.out.as_deref(), &header, &summary, |csv| {
        let mut s = gnuplot_header(csv, &title, "edge probability p", "rate");
        let _ = writeln!(s, "set yrange [0:1.05]");
        let _ = writeln!(s, "set key top left");
        let _ = writeln!(
            s,
            "plot '{csv}' using 1:3 skip 1 with linespoints title 'finder success', \\\n     '{csv}' using 1:4 skip 1 with linespoints title 'cycle exists (oracle)'"
        );
        s
    })?;
    Ok(ExitCode::SUCCESS)
}
