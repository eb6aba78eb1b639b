//! Command-line front end: `gen`, `solve`, `check` and `bench`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::{approx_mult_add, approx_plus_k, approx_plus_one, ApproxError, ApproxOutcome, ApproxParams, ProbeMode};
use crate::exact::{clearance, exact_solve, flood_fill_check, separation_check, ExactError, CLEARANCE_CELLS};
use crate::instance_io::{generate, parse_file, render_svg, serialize_instance, Family, GenParams, InstanceError, Parsed};
use crate::lift::{Instance, LiftError, LiftedInstance, LiftedVertex, NormalizationReport, Sheet};
use crate::sssp::{bfs, OracleKind, SeparatingSet, SsspError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "pointsep", version, about = "Minimum point separation with geometric objects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance.
    Gen {
        /// disks, segments, rectilinear, convex_polygons or mixed
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance exactly or approximately.
    Solve(SolveArgs),
    /// Test whether a subset of objects separates s from t.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated object indices in file order.
        #[arg(long, default_value = "")]
        subset: String,
        /// Raster cell size; derived from the clearance when absent.
        #[arg(long)]
        resolution: Option<f64>,
    },
    /// Time algorithms on generated instances and write CSV rows.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Algo {
    Exact,
    Plus1,
    Multadd,
    Plusk,
    /// One full BFS over the lifted graph.
    Bfs,
}

impl Algo {
    fn guarantee(self) -> &'static str {
        match self {
            Algo::Exact => "exact",
            Algo::Plus1 => "OPT+1 (probabilistic)",
            Algo::Multadd => "(1+ε)OPT+1",
            Algo::Plusk => "OPT+k",
            Algo::Bfs => "none",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Explicit,
    Rectilinear,
    Diskgrid,
    Auto,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProbeArg {
    Random,
    Derandomized,
    Skip,
}

#[derive(clap::Args, Debug, Clone)]
struct SolverOpts {
    #[arg(long, value_enum, default_value_t = Algo::Exact)]
    algo: Algo,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ProbeArg::Random)]
    probe: ProbeArg,
    #[arg(long, default_value_t = 3.0)]
    probe_constant: f64,
    #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
    oracle: OracleArg,
    /// Grid cell size for the disk grid oracle.
    #[arg(long)]
    cell_size: Option<f64>,
}

impl SolverOpts {
    fn oracle_kind(&self) -> OracleKind {
        match self.oracle {
            OracleArg::Explicit => OracleKind::Explicit,
            OracleArg::Rectilinear => OracleKind::Rectilinear,
            OracleArg::Diskgrid => OracleKind::DiskGrid { cell_size: self.cell_size },
            OracleArg::Auto => OracleKind::Auto,
        }
    }

    fn approx_params(&self) -> ApproxParams {
        ApproxParams {
            alpha: self.alpha,
            epsilon: self.epsilon,
            k: self.k,
            seed: self.seed,
            probe: match self.probe {
                ProbeArg::Random => ProbeMode::Random,
                ProbeArg::Derandomized => ProbeMode::Derandomized,
                ProbeArg::Skip => ProbeMode::Skip,
            },
            probe_constant: self.probe_constant,
        }
    }
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    opts: SolverOpts,
    /// JSON run report.
    #[arg(long)]
    report: Option<PathBuf>,
    /// SVG drawing with the result highlighted.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value = "disks")]
    family: Family,
    /// Comma-separated instance sizes.
    #[arg(long, default_value = "16,32,64")]
    sizes: String,
    /// Seeds `0..seeds` per size.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    #[command(flatten)]
    opts: SolverOpts,
    /// Compute the optimum for instances up to this size.
    #[arg(long, default_value_t = 256)]
    opt_limit: usize,
    /// CSV output; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure carrying its exit code.
struct Fail {
    code: i32,
    message: String,
}

impl Fail {
    fn input(message: impl Into<String>) -> Self {
        Fail { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<InstanceError> for Fail {
    fn from(e: InstanceError) -> Self {
        let code = match e {
            InstanceError::Schema { .. } => EXIT_INPUT,
            InstanceError::Degenerate(_) => EXIT_DEGENERATE,
        };
        Fail { code, message: e.to_string() }
    }
}

impl From<LiftError> for Fail {
    fn from(e: LiftError) -> Self {
        Fail { code: EXIT_DEGENERATE, message: e.to_string() }
    }
}

impl From<SsspError> for Fail {
    fn from(e: SsspError) -> Self {
        Fail::input(e.to_string())
    }
}

impl From<ApproxError> for Fail {
    fn from(e: ApproxError) -> Self {
        match e {
            ApproxError::Lift(e) => e.into(),
            e => Fail::input(e.to_string()),
        }
    }
}

#[derive(Serialize, Debug, Default)]
struct Timings {
    parse_ms: f64,
    solve_ms: f64,
    total_ms: f64,
}

#[derive(Serialize, Debug)]
struct ProbeReport {
    mode: String,
    probes_used: usize,
    threshold: usize,
    certified_large: bool,
    halted_after_probe: bool,
    best_size: Option<usize>,
}

#[derive(Serialize, Debug)]
struct CallReport {
    shortest_paths: usize,
    sweeps: usize,
    weighted: f64,
}

/// Machine-readable summary of a `solve` run.
#[derive(Serialize, Debug)]
struct RunReport {
    command: Vec<String>,
    input: String,
    algo: Algo,
    oracle: String,
    guarantee: String,
    input_objects: usize,
    n: usize,
    feasible: bool,
    size: Option<usize>,
    /// Object indices in file order.
    set: Option<Vec<usize>>,
    probe: Option<ProbeReport>,
    calls: Option<CallReport>,
    notes: Vec<String>,
    timings: Timings,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::input(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Parsed, Fail> {
    let file = parse_file(&read(path)?)?;
    let (instance, report) = file.normalize()?;
    Ok(Parsed { file, instance, report })
}

/// Outcome of one solver run, in instance numbering.
struct Solved {
    set: Option<SeparatingSet>,
    oracle: OracleKind,
    approx: Option<ApproxOutcome>,
}

fn solve_instance(inst: &Instance, opts: &SolverOpts) -> Result<Solved, Fail> {
    let kind = opts.oracle_kind();
    let oracle = kind.resolve_for(&inst.objects);
    let approx = |r: Result<ApproxOutcome, ApproxError>| match r {
        Ok(o) => Ok(Solved { set: Some(o.set.clone()), oracle, approx: Some(o) }),
        Err(ApproxError::Infeasible) => Ok(Solved { set: None, oracle, approx: None }),
        Err(e) => Err(Fail::from(e)),
    };
    match opts.algo {
        Algo::Exact => {
            let li = LiftedInstance::new(inst.clone())?;
            Ok(Solved { set: exact_solve(&li, kind)?.optimum, oracle, approx: None })
        }
        Algo::Plus1 => approx(approx_plus_one(inst, &opts.approx_params(), kind)),
        Algo::Multadd => approx(approx_mult_add(inst, opts.epsilon, kind)),
        Algo::Plusk => approx(approx_plus_k(inst, opts.k, kind)),
        Algo::Bfs => {
            let li = LiftedInstance::new(inst.clone())?;
            if li.n() > 0 {
                bfs(&li, LiftedVertex::new(0, Sheet::Minus), kind)?;
            }
            Ok(Solved { set: None, oracle, approx: None })
        }
    }
}

/// Smallest trivial separator, if the input had one.
fn trivial(report: &NormalizationReport) -> Option<usize> {
    report.trivial_separators.first().copied()
}

fn cmd_gen(family: Family, n: usize, seed: u64, out: Option<&Path>) -> Result<i32, Fail> {
    if n == 0 {
        return Err(Fail::input("--n must be at least 1"));
    }
    let text = serialize_instance(&generate(family, n, seed, &GenParams::for_size(n)));
    match out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn cmd_solve(args: &SolveArgs, argv: &[String]) -> Result<i32, Fail> {
    if args.opts.algo == Algo::Bfs {
        return Err(Fail::input("--algo bfs is only available in bench"));
    }
    let start = Instant::now();
    let parsed = load(&args.input)?;
    let parse_ms = ms(start);
    let inst = &parsed.instance;
    let t = Instant::now();
    let mut notes = parsed.report.notes();
    let (set, solved) = match trivial(&parsed.report) {
        Some(i) => {
            notes.push(format!("object {i} separates on its own"));
            (Some(vec![i]), None)
        }
        None => {
            let solved = solve_instance(inst, &args.opts)?;
            (solved.set.as_ref().map(|s| inst.to_original(&s.objects)), Some(solved))
        }
    };
    let solve_ms = ms(t);
    let approx = solved.as_ref().and_then(|s| s.approx.as_ref());
    let oracle = solved.as_ref().map_or(args.opts.oracle_kind().resolve_for(&inst.objects), |s| s.oracle);
    let report = RunReport {
        command: argv.to_vec(),
        input: args.input.display().to_string(),
        algo: args.opts.algo,
        oracle: oracle.name().into(),
        guarantee: match args.opts.algo {
            Algo::Multadd => format!("(1+ε)OPT+1 with ε = {}", args.opts.epsilon),
            Algo::Plusk => format!("OPT+k with k = {}", args.opts.k),
            a => a.guarantee().into(),
        },
        input_objects: parsed.report.input_count,
        n: inst.n(),
        feasible: set.is_some(),
        size: set.as_ref().map(Vec::len),
        set: set.clone(),
        probe: approx.and_then(|a| {
            a.probe.as_ref().map(|p| ProbeReport {
                mode: format!("{:?}", args.opts.probe).to_lowercase(),
                probes_used: p.probes_used,
                threshold: p.threshold,
                certified_large: p.certified_large,
                halted_after_probe: a.halted_after_probe,
                best_size: p.best_set.as_ref().map(SeparatingSet::len),
            })
        }),
        calls: approx.map(|a| CallReport {
            shortest_paths: a.stats.shortest_paths,
            sweeps: a.stats.sweeps,
            weighted: a.stats.weighted,
        }),
        notes,
        timings: Timings { parse_ms, solve_ms, total_ms: ms(start) },
    };
    match &set {
        Some(s) => println!(
            "{} ({}): size {} set {:?} [{}]",
            args.opts.algo.to_possible_value().expect("named").get_name(),
            report.oracle,
            s.len(),
            s,
            report.guarantee
        ),
        None => println!("infeasible: no subset separates s from t"),
    }
    if let Some(p) = &args.report {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        write(p, &text)?;
    }
    if let Some(p) = &args.svg {
        let local = solved.and_then(|s| s.set).map(|s| s.objects);
        write(p, &render_svg(inst, local.as_deref(), None))?;
    }
    Ok(if set.is_some() { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Fail> {
    let mut out: Vec<usize> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Fail::input(format!("bad index {s:?} in --subset"))))
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cmd_check(input: &Path, subset: &str, resolution: Option<f64>) -> Result<i32, Fail> {
    let parsed = load(input)?;
    let inst = &parsed.instance;
    let raw = parse_indices(subset)?;
    if let Some(&i) = raw.iter().find(|&&i| i >= parsed.report.input_count) {
        return Err(Fail::input(format!("index {i} out of range for {} objects", parsed.report.input_count)));
    }
    if let Some(&i) = raw.iter().find(|i| parsed.report.trivial_separators.contains(i)) {
        println!("separating (object {i} separates on its own)");
        return Ok(EXIT_OK);
    }
    let local: Vec<usize> = raw
        .iter()
        .map(|i| inst.original_index.binary_search(i).expect("kept object"))
        .collect();
    let li = LiftedInstance::new(inst.clone())?;
    let verdict = separation_check(&li, &local);
    let flood = if local.is_empty() {
        Ok(false)
    } else {
        let res = resolution.unwrap_or_else(|| clearance(inst, &local) / (CLEARANCE_CELLS + 1.0));
        flood_fill_check(inst, &local, res)
    };
    println!("{}", if verdict { "separating" } else { "not separating" });
    match flood {
        Ok(f) if f == verdict => println!("flood fill agrees"),
        Ok(f) => println!("flood fill disagrees: {}", if f { "separating" } else { "not separating" }),
        Err(e @ (ExactError::ResolutionTooCoarse { .. } | ExactError::GridTooLarge { .. })) => {
            println!("flood fill skipped: {e}")
        }
        Err(e) => return Err(Fail::input(e.to_string())),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BenchRow {
    family: String,
    n: usize,
    seed: u64,
    algo: Algo,
    oracle: String,
    size: Option<usize>,
    opt_known: Option<usize>,
    time_ms: f64,
}

fn cmd_bench(args: &BenchArgs) -> Result<i32, Fail> {
    let sizes = parse_indices(&args.sizes)?;
    if sizes.contains(&0) {
        return Err(Fail::input("sizes must be positive"));
    }
    let mut rows = Vec::new();
    for &n in &sizes {
        for seed in 0..args.seeds {
            let file = generate(args.family, n, seed, &GenParams::for_size(n));
            let (inst, _) = file.normalize()?;
            let t = Instant::now();
            let solved = match solve_instance(&inst, &args.opts) {
                Ok(s) => s,
                Err(f) => {
                    eprintln!("skipped {} n={n} seed={seed}: {}", args.family, f.message);
                    continue;
                }
            };
            let time_ms = ms(t);
            let opt_known = if args.opts.algo == Algo::Exact {
                solved.set.as_ref().map(SeparatingSet::len)
            } else if n <= args.opt_limit {
                let li = LiftedInstance::new(inst.clone())?;
                exact_solve(&li, OracleKind::Auto)?.size()
            } else {
                None
            };
            rows.push(BenchRow {
                family: args.family.to_string(),
                n,
                seed,
                algo: args.opts.algo,
                oracle: solved.oracle.name().into(),
                size: solved.set.as_ref().map(SeparatingSet::len),
                opt_known,
                time_ms,
            });
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).map_err(|e| Fail::input(e.to_string()))?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| Fail::input(e.to_string()))?).expect("utf-8 csv");
    match &args.out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    let mut summary = String::new();
    let mut prev: Option<f64> = None;
    for &n in &sizes {
        let times: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.time_ms).collect();
        if times.is_empty() {
            prev = None;
            continue;
        }
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        let ratio = prev.filter(|p| *p > 0.0).map(|p| format!("{:.2}", mean / p)).unwrap_or_else(|| "-".into());
        let _ = writeln!(summary, "n={n:>7}  mean {mean:>10.3} ms  ratio {ratio}");
        prev = Some(mean);
    }
    eprint!("{summary}");
    Ok(EXIT_OK)
}

/// Run the command line `argv` (program name first) and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let echo: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match &cli.command {
        Command::Gen { family, n, seed, out } => cmd_gen(*family, *n, *seed, out.as_deref()),
        Command::Solve(args) => cmd_solve(args, &echo),
        Command::Check { input, subset, resolution } => cmd_check(input, subset, *resolution),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
