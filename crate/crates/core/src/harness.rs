//! Seeded Monte Carlo experiments, curve comparison and CSV export.
//!
//! Run `i` uses seed `base_seed + i`. Runs are simulated in parallel chunks but
//! folded into the running moments strictly in run order, so the result does
//! not depend on the thread count.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use rayon::prelude::*;

use crate::cover::Trace;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::policy::{run_policy, Policy};
use crate::predict::PredictorCurve;

const CHUNK: usize = 64;

/// Per-payment aggregates; entry `i` is payment `t = i + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStats {
    pub node_count: usize,
    pub runs: usize,
    pub base_seed: u64,
    pub mean_cover: Vec<f64>,
    pub std_cover: Vec<f64>,
    pub mean_frontier: Vec<f64>,
    pub mean_recruited: Vec<f64>,
    /// True degree of the node newly recruited at `t`, 0 when nothing new was recruited.
    pub mean_recruited_degree: Vec<f64>,
}

impl TraceStats {
    pub fn len(&self) -> usize {
        self.mean_cover.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean_cover.is_empty()
    }

    pub fn cover_at(&self, t: usize) -> Option<f64> {
        t.checked_sub(1).and_then(|i| self.mean_cover.get(i)).copied()
    }

    pub fn std_at(&self, t: usize) -> Option<f64> {
        t.checked_sub(1).and_then(|i| self.std_cover.get(i)).copied()
    }

    pub fn frontier_at(&self, t: usize) -> Option<f64> {
        t.checked_sub(1).and_then(|i| self.mean_frontier.get(i)).copied()
    }

    /// Standard error of the mean cover at `t`.
    pub fn stderr_at(&self, t: usize) -> Option<f64> {
        self.std_at(t).map(|s| s / (self.runs as f64).sqrt())
    }
}

/// Per-payment series of one run, padded to the budget.
struct RunSeries {
    cover: Vec<f64>,
    frontier: Vec<f64>,
    recruited: Vec<f64>,
    degree: Vec<f64>,
}

fn series(g: &Graph, trace: &Trace, budget: usize) -> RunSeries {
    let mut out = RunSeries {
        cover: Vec::with_capacity(budget),
        frontier: Vec::with_capacity(budget),
        recruited: Vec::with_capacity(budget),
        degree: Vec::with_capacity(budget),
    };
    for r in trace.records.iter().take(budget) {
        out.cover.push(r.cover as f64);
        out.frontier.push(r.frontier as f64);
        out.recruited.push(r.recruited as f64);
        out.degree.push(if r.new { g.degree(r.node) as f64 } else { 0.0 });
    }
    let last = trace.records.last().expect("a run records its start");
    while out.cover.len() < budget {
        out.cover.push(last.cover as f64);
        out.frontier.push(last.frontier as f64);
        out.recruited.push(last.recruited as f64);
        out.degree.push(0.0);
    }
    out
}

struct Moments {
    count: f64,
    cover: Vec<f64>,
    m2: Vec<f64>,
    frontier: Vec<f64>,
    recruited: Vec<f64>,
    degree: Vec<f64>,
}

impl Moments {
    fn new(budget: usize) -> Self {
        Moments {
            count: 0.0,
            cover: vec![0.0; budget],
            m2: vec![0.0; budget],
            frontier: vec![0.0; budget],
            recruited: vec![0.0; budget],
            degree: vec![0.0; budget],
        }
    }

    fn add(&mut self, s: &RunSeries) {
        self.count += 1.0;
        let c = self.count;
        for i in 0..self.cover.len() {
            let delta = s.cover[i] - self.cover[i];
            self.cover[i] += delta / c;
            self.m2[i] += delta * (s.cover[i] - self.cover[i]);
            self.frontier[i] += (s.frontier[i] - self.frontier[i]) / c;
            self.recruited[i] += (s.recruited[i] - self.recruited[i]) / c;
            self.degree[i] += (s.degree[i] - self.degree[i]) / c;
        }
    }
}

/// Aggregates `runs` traces produced by `run(i, base_seed + i)`.
pub fn aggregate<F>(
    g: &Graph,
    budget: usize,
    runs: usize,
    base_seed: u64,
    parallel: bool,
    run: F,
) -> Result<TraceStats>
where
    F: Fn(usize, u64) -> Result<Trace> + Sync,
{
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let one = |i: usize| -> Result<RunSeries> {
        let trace = run(i, base_seed.wrapping_add(i as u64)).map_err(|e| Error::Run {
            run: i,
            source: Box::new(e),
        })?;
        Ok(series(g, &trace, budget))
    };
    let mut acc = Moments::new(budget);
    let mut start = 0;
    while start < runs {
        let end = (start + CHUNK).min(runs);
        let chunk: Vec<RunSeries> = if parallel {
            (start..end).into_par_iter().map(one).collect::<Result<_>>()?
        } else {
            (start..end).map(one).collect::<Result<_>>()?
        };
        for s in &chunk {
            acc.add(s);
        }
        start = end;
    }
    let denom = (runs as f64 - 1.0).max(1.0);
    Ok(TraceStats {
        node_count: g.node_count(),
        runs,
        base_seed,
        std_cover: acc.m2.iter().map(|m| (m / denom).max(0.0).sqrt()).collect(),
        mean_cover: acc.cover,
        mean_frontier: acc.frontier,
        mean_recruited: acc.recruited,
        mean_recruited_degree: acc.degree,
    })
}

/// `runs` independent runs of `policy` with seeds `base_seed + i`.
pub fn run_experiment(
    g: &Graph,
    policy: &Policy,
    budget: usize,
    runs: usize,
    base_seed: u64,
) -> Result<TraceStats> {
    aggregate(g, budget, runs, base_seed, true, |_, seed| {
        run_policy(g, policy, budget, seed)
    })
}

/// Single-threaded [`run_experiment`]; returns identical statistics.
pub fn run_experiment_serial(
    g: &Graph,
    policy: &Policy,
    budget: usize,
    runs: usize,
    base_seed: u64,
) -> Result<TraceStats> {
    aggregate(g, budget, runs, base_seed, false, |_, seed| {
        run_policy(g, policy, budget, seed)
    })
}

/// Residuals of a predicted cover curve against empirical mean cover.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub t_range: RangeInclusive<usize>,
    /// `(t, empirical, predicted)`.
    pub rows: Vec<(usize, f64, f64)>,
    /// `max |predicted - empirical| / N`.
    pub max_relative_error: f64,
    pub rmse: f64,
}

impl ErrorReport {
    pub fn residuals(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.rows.iter().map(|&(t, e, p)| (t, p - e))
    }
}

/// Compares on the overlap of `t_range`, the empirical steps and the curve.
pub fn compare_curves(
    empirical: &TraceStats,
    predicted: &PredictorCurve,
    t_range: RangeInclusive<usize>,
) -> Result<ErrorReport> {
    let lo = (*t_range.start()).max(1).max(predicted.start);
    let hi = (*t_range.end())
        .min(empirical.len())
        .min(predicted.end().unwrap_or(0));
    if predicted.is_empty() || empirical.is_empty() || lo > hi {
        return Err(Error::EmptyOverlap);
    }
    let rows: Vec<_> = (lo..=hi)
        .map(|t| {
            let e = empirical.cover_at(t).expect("t within empirical range");
            let p = predicted.value_at(t).expect("t within curve range");
            (t, e, p)
        })
        .collect();
    let n = empirical.node_count.max(1) as f64;
    let max_abs = rows.iter().map(|&(_, e, p)| (p - e).abs()).fold(0.0, f64::max);
    let mse = rows.iter().map(|&(_, e, p)| (p - e).powi(2)).sum::<f64>() / rows.len() as f64;
    Ok(ErrorReport {
        t_range: lo..=hi,
        rows,
        max_relative_error: max_abs / n,
        rmse: mse.sqrt(),
    })
}

/// `%g`-style rendering with 6 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-5..6).contains(&exp) {
        format!("{}e{exp}", trim(mantissa))
    } else {
        trim(&format!("{x:.*}", (5 - exp).max(0) as usize))
    }
}

pub const STATS_HEADER: &str = "t,mean_cover,std_cover,mean_frontier,mean_recruited_degree";
pub const CURVE_HEADER: &str = "t,value";
pub const REPORT_HEADER: &str = "t,empirical,predicted,residual";

pub fn stats_csv(s: &TraceStats) -> String {
    let mut out = format!("{STATS_HEADER}\n");
    for i in 0..s.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            i + 1,
            fmt_num(s.mean_cover[i]),
            fmt_num(s.std_cover[i]),
            fmt_num(s.mean_frontier[i]),
            fmt_num(s.mean_recruited_degree[i])
        );
    }
    out
}

pub fn curve_csv(c: &PredictorCurve) -> String {
    let mut out = format!("{CURVE_HEADER}\n");
    for (t, v) in c.iter() {
        let _ = writeln!(out, "{t},{}", fmt_num(v));
    }
    out
}

pub fn report_csv(r: &ErrorReport) -> String {
    let mut out = format!("{REPORT_HEADER}\n");
    for &(t, e, p) in &r.rows {
        let _ = writeln!(out, "{t},{},{},{}", fmt_num(e), fmt_num(p), fmt_num(p - e));
    }
    out
}

pub fn write_csv(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_table(text: &str, header: &str, width: usize) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header '{header}'"),
            })
        }
    }
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != width {
            return Err(bad(format!("expected {width} fields, found {}", fields.len())));
        }
        let t: usize = fields[0]
            .parse()
            .map_err(|_| bad(format!("bad step '{}'", fields[0])))?;
        if let Some((prev, _)) = rows.last() {
            if t != prev + 1 {
                return Err(bad(format!("step {t} does not follow {prev}")));
            }
        }
        let values = fields[1..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| bad(format!("bad number '{f}'"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push((t, values));
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(rows)
}

/// Reads [`stats_csv`] output; run count and seed are not stored and read back as 0.
pub fn parse_stats_csv(text: &str, node_count: usize) -> Result<TraceStats> {
    let rows = parse_table(text, STATS_HEADER, 5)?;
    if rows[0].0 != 1 {
        return Err(Error::Parse {
            line: 2,
            message: "statistics start at t = 1".into(),
        });
    }
    let col = |j: usize| rows.iter().map(|(_, v)| v[j]).collect::<Vec<_>>();
    Ok(TraceStats {
        node_count,
        runs: 0,
        base_seed: 0,
        mean_cover: col(0),
        std_cover: col(1),
        mean_frontier: col(2),
        mean_recruited: Vec::new(),
        mean_recruited_degree: col(3),
    })
}

pub fn parse_curve_csv(text: &str, model: &str) -> Result<PredictorCurve> {
    let rows = parse_table(text, CURVE_HEADER, 2)?;
    let start = rows[0].0;
    Ok(PredictorCurve::new(
        model,
        start,
        rows.into_iter().map(|(_, v)| v[0]).collect(),
    ))
}

/// Per-run start node drawn from the stationary law of a random walk, for
/// experiments that need a stationary start rather than a uniform one.
pub fn stationary_start<R: rand::Rng>(g: &Graph, rng: &mut R) -> NodeId {
    let two_m = 2 * g.edge_count();
    let mut r = rng.random_range(0..two_m);
    for v in g.nodes() {
        let k = g.degree(v);
        if r < k {
            return v;
        }
        r -= k;
    }
    unreachable!("degrees sum to 2M")
}
