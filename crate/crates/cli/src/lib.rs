//! Command-line front end: graph generation, simulation, prediction and comparison.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use netcover::graph::{degree_distribution, is_connected, stats, write_edge_list};
use netcover::harness::{
    compare_curves, curve_csv, fmt_num, parse_curve_csv, parse_stats_csv, report_csv,
    run_experiment, stats_csv, write_csv,
};
use netcover::predict::{
    rw_exact_taboo, rw_steady_curve, rwnr_curve, si_meanfield, uniform_noreplace_curve,
    uniform_replace_curve,
};
use netcover::{Graph, Policy, PolicyKind, PredictorCurve};

pub mod source;

use source::{parse_dims, read_config, GraphSource, GraphSpec};

pub const PREDICTORS: &[&str] = &[
    "uniform",
    "uniform-nr",
    "rw",
    "rw-exact",
    "rwnr",
    "rwnr-edges",
    "si",
    "si-frontier",
];

const CONFIG_KEYS: &[&str] = &[
    "graph",
    "model",
    "policy",
    "budget",
    "runs",
    "seed",
    "out",
    "horizon",
    "jobs",
    "periodic",
    "n",
    "q",
    "tau",
    "dims",
    "kmin",
    "kmax",
    "lcc",
    "rewire",
    "empirical",
    "predicted",
    "range",
];

#[derive(Debug, Parser)]
#[command(
    name = "netcover",
    version,
    about = "Graph covering under a node budget"
)]
pub struct Cli {
    /// Line-oriented key=value file; keys are flag names without dashes, flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads for simulation (default: available parallelism).
    #[arg(long, global = true, value_name = "J")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit an edge list from a generator.
    Generate(GenerateArgs),
    /// Print graph statistics as key=value lines.
    Stats(StatsArgs),
    /// Monte Carlo runs of a policy; per-step statistics as CSV.
    Simulate(SimulateArgs),
    /// Analytic cover curve as CSV.
    Predict(PredictArgs),
    /// Residuals of a predicted curve against simulated statistics.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// ring | path | star | complete | er | lattice | powerlaw
    #[arg(long)]
    pub model: Option<String>,
    /// Node count (star: hub plus n-1 leaves; powerlaw: before component extraction).
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for er.
    #[arg(long)]
    pub q: Option<f64>,
    /// Exponent for powerlaw degrees.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Lattice sides, e.g. 100x100 or 22x22x22.
    #[arg(long)]
    pub dims: Option<String>,
    /// Wrap lattice axes into a torus.
    #[arg(long)]
    pub periodic: bool,
    /// Minimum powerlaw degree (default 1).
    #[arg(long)]
    pub kmin: Option<usize>,
    /// Maximum powerlaw degree (default sqrt(n)).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Keep only the largest connected component.
    #[arg(long)]
    pub lcc: bool,
    /// Degree-preserving rewiring after generation.
    #[arg(long)]
    pub rewire: bool,
    /// Generator seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Edge-list file or generator spec such as model=ring,n=1000.
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Edge-list file or generator spec such as model=ring,n=1000.
    #[arg(long)]
    pub graph: Option<String>,
    /// bfs | dfs | rw | rwnr | si | mod | meed | oracle | maxdeg | uniform | uniform-nr
    #[arg(long)]
    pub policy: Option<String>,
    /// Payments per run.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Independent runs (default 100).
    #[arg(long)]
    pub runs: Option<usize>,
    /// Base seed; run i uses seed + i (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Edge-list file or generator spec such as model=ring,n=1000.
    #[arg(long)]
    pub graph: Option<String>,
    /// uniform | uniform-nr | rw | rw-exact | rwnr | rwnr-edges | si | si-frontier
    #[arg(long)]
    pub model: Option<String>,
    /// Last payment to predict.
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Output CSV (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Statistics CSV written by simulate.
    #[arg(long)]
    pub empirical: Option<PathBuf>,
    /// Curve CSV written by predict.
    #[arg(long)]
    pub predicted: Option<PathBuf>,
    /// Graph the statistics came from; supplies N.
    #[arg(long)]
    pub graph: Option<String>,
    /// Node count, when no graph is given.
    #[arg(long)]
    pub n: Option<usize>,
    /// Payments to compare, LO..HI (default: full overlap).
    #[arg(long)]
    pub range: Option<String>,
    /// Output CSV (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Flag values fall back to the config file.
struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self> {
        let map = match path {
            Some(p) => read_config(p)?,
            None => BTreeMap::new(),
        };
        if let Some(k) = map.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            bail!("unknown config key {k:?}");
        }
        Ok(Config(map))
    }

    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match (flag, self.0.get(key)) {
            (Some(v), _) => Ok(Some(v)),
            (None, Some(s)) => s
                .parse()
                .map(Some)
                .map_err(|e| anyhow!("config {key}={s}: {e}")),
            (None, None) => Ok(None),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.pick(flag, key)?
            .ok_or_else(|| anyhow!("missing --{key}"))
    }

    fn switch(&self, flag: bool, key: &str) -> Result<bool> {
        Ok(flag
            || self
                .0
                .get(key)
                .map(|s| source::parse_bool(s))
                .transpose()?
                .unwrap_or(false))
    }
}

fn load_graph(cfg: &Config, flag: Option<String>) -> Result<Graph> {
    let src = cfg.require(flag, "graph")?;
    GraphSource::parse(&src)?
        .load()
        .with_context(|| format!("loading graph {src}"))
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("range {s:?} is not LO..HI"))?;
    Ok(lo.trim().parse()?..=hi.trim().parse()?)
}

/// Writes to `path` when given, otherwise to `out`.
fn emit(out: &mut dyn Write, path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => Ok(write_csv(p, contents)?),
        None => Ok(out.write_all(contents.as_bytes())?),
    }
}

pub fn predict_curve(g: &Graph, model: &str, horizon: usize) -> Result<PredictorCurve> {
    let n = g.node_count();
    let dd = degree_distribution(g);
    Ok(match model {
        "uniform" => uniform_replace_curve(&dd, n, horizon)?,
        "uniform-nr" => uniform_noreplace_curve(&dd, n, horizon)?,
        "rw" => rw_steady_curve(g, horizon)?,
        "rw-exact" => rw_exact_taboo(g, horizon)?,
        "rwnr" => rwnr_curve(g, horizon)?.cover,
        "rwnr-edges" => rwnr_curve(g, horizon)?.undiscovered_edges,
        // payments 1..=horizon are steps 0..horizon-1 of the mean field
        "si" => si_meanfield(&dd, n, horizon.saturating_sub(1))?.cover,
        "si-frontier" => si_meanfield(&dd, n, horizon.saturating_sub(1))?.frontier,
        other => bail!(
            "unknown model {other:?}; expected one of {}",
            PREDICTORS.join(", ")
        ),
    })
}

pub fn policy_for(g: &Graph, name: &str) -> Result<Policy> {
    let kind: PolicyKind = name.parse()?;
    Ok(match kind {
        PolicyKind::Meed => Policy::meed(degree_distribution(g)),
        k => Policy::new(k)?,
    })
}

fn generate(cfg: &Config, a: GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let mut pairs = BTreeMap::new();
    let mut put = |key: &str, v: Option<String>| -> Result<()> {
        if let Some(v) = cfg.pick(v, key)? {
            pairs.insert(key.to_string(), v);
        }
        Ok(())
    };
    put("model", a.model)?;
    put("n", a.n.map(|v| v.to_string()))?;
    put("q", a.q.map(|v| v.to_string()))?;
    put("tau", a.tau.map(|v| v.to_string()))?;
    put("dims", a.dims)?;
    put("kmin", a.kmin.map(|v| v.to_string()))?;
    put("kmax", a.kmax.map(|v| v.to_string()))?;
    put("seed", a.seed.map(|v| v.to_string()))?;
    for (key, flag) in [
        ("periodic", a.periodic),
        ("lcc", a.lcc),
        ("rewire", a.rewire),
    ] {
        pairs.insert(key.to_string(), cfg.switch(flag, key)?.to_string());
    }
    if let Some(d) = pairs.get("dims") {
        parse_dims(d)?;
    }
    let g = GraphSpec::from_pairs(&pairs)?.build()?;
    let out_path = cfg.pick(a.out, "out")?;
    emit(out, out_path.as_deref(), &write_edge_list(&g))
}

fn graph_stats(cfg: &Config, a: StatsArgs, out: &mut dyn Write) -> Result<()> {
    let g = load_graph(cfg, a.graph)?;
    let s = stats(&g);
    writeln!(out, "nodes={}", s.nodes)?;
    writeln!(out, "edges={}", s.edges)?;
    writeln!(out, "mean_degree={}", fmt_num(s.mean_degree))?;
    writeln!(out, "second_moment={}", fmt_num(s.second_moment))?;
    writeln!(out, "max_degree={}", g.max_degree())?;
    writeln!(out, "clustering={}", fmt_num(s.clustering))?;
    writeln!(out, "connected={}", is_connected(&g))?;
    Ok(())
}

fn simulate(cfg: &Config, a: SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let g = load_graph(cfg, a.graph)?;
    let policy = policy_for(&g, &cfg.require(a.policy, "policy")?)?;
    let budget: usize = cfg.require(a.budget, "budget")?;
    let runs: usize = cfg.pick(a.runs, "runs")?.unwrap_or(100);
    let seed: u64 = cfg.pick(a.seed, "seed")?.unwrap_or(0);
    if budget == 0 || runs == 0 {
        bail!("budget and runs must be at least 1");
    }
    let s = run_experiment(&g, &policy, budget, runs, seed)?;
    let out_path = cfg.pick(a.out, "out")?;
    emit(out, out_path.as_deref(), &stats_csv(&s))?;
    let t = s.len();
    let summary = format!(
        "policy={} runs={runs} t={t} mean_cover={} std_cover={}",
        policy.kind(),
        fmt_num(s.cover_at(t).unwrap_or(0.0)),
        fmt_num(s.std_at(t).unwrap_or(0.0)),
    );
    if out_path.is_some() {
        writeln!(out, "{summary}")?;
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn predict(cfg: &Config, a: PredictArgs, out: &mut dyn Write) -> Result<()> {
    let g = load_graph(cfg, a.graph)?;
    let model: String = cfg.require(a.model, "model")?;
    let horizon: usize = cfg.require(a.horizon, "horizon")?;
    let curve = predict_curve(&g, &model, horizon)?;
    let out_path = cfg.pick(a.out, "out")?;
    emit(out, out_path.as_deref(), &curve_csv(&curve))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("{}", path.display()))
}

fn compare(cfg: &Config, a: CompareArgs, out: &mut dyn Write) -> Result<()> {
    let emp_path: PathBuf = cfg.require(a.empirical, "empirical")?;
    let pred_path: PathBuf = cfg.require(a.predicted, "predicted")?;
    let n = match (cfg.pick(a.graph, "graph")?, cfg.pick(a.n, "n")?) {
        (Some(src), _) => GraphSource::parse(&src)?.load()?.node_count(),
        (None, Some(n)) => n,
        (None, None) => bail!("compare needs --graph or --n to normalize errors"),
    };
    let emp =
        parse_stats_csv(&read(&emp_path)?, n).with_context(|| format!("{}", emp_path.display()))?;
    let pred = parse_curve_csv(&read(&pred_path)?, "predicted")
        .with_context(|| format!("{}", pred_path.display()))?;
    let range = match cfg.pick(a.range, "range")? {
        Some(r) => parse_range(&r)?,
        None => 1..=usize::MAX,
    };
    let report = compare_curves(&emp, &pred, range)?;
    let out_path = cfg.pick(a.out, "out")?;
    emit(out, out_path.as_deref(), &report_csv(&report))?;
    let summary = format!(
        "t={}..{} max_relative_error={} rmse={}",
        report.t_range.start(),
        report.t_range.end(),
        fmt_num(report.max_relative_error),
        fmt_num(report.rmse),
    );
    if out_path.is_some() {
        writeln!(out, "{summary}")?;
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

/// Executes a parsed command, writing results to `out`.
pub fn run(cli: Cli, out: &mut (dyn Write + Send)) -> Result<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    let jobs: Option<usize> = cfg.pick(cli.jobs, "jobs")?;
    let exec = move || {
        let out: &mut dyn Write = out;
        match cli.command {
            Command::Generate(a) => generate(&cfg, a, out),
            Command::Stats(a) => graph_stats(&cfg, a, out),
            Command::Simulate(a) => simulate(&cfg, a, out),
            Command::Predict(a) => predict(&cfg, a, out),
            Command::Compare(a) => compare(&cfg, a, out),
        }
    };
    match jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()?
            .install(exec),
        None => exec(),
    }
}

/// Parses `argv` (including the program name) and runs it; returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli, &mut std::io::stdout()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
