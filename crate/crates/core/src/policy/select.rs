use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Policy, PolicyKind};
use crate::cover::CoverState;
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::predict::{excess_recursion, ExcessTable, MeanField};

const HOP_LIMIT: u64 = 100_000_000;
const TIE_TOL: f64 = 1e-12;

/// What the next payment buys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// A frontier node.
    Recruit(NodeId),
    /// Any node; may already be recruited.
    Sample(NodeId),
    /// A paid return to a recruited node.
    Revisit(NodeId),
    Exhausted,
}

/// Per-run auxiliary state of a policy.
#[derive(Debug)]
pub enum Selector {
    Queue { lifo: bool, queue: VecDeque<NodeId> },
    Walk { at: NodeId, replace: bool },
    Si,
    Mod,
    Meed { field: MeanField, clamped: u64 },
    Oracle,
    MaxDeg,
    Uniform,
    UniformNoReplace { pool: Vec<NodeId> },
}

fn newly_observed<R: Rng>(s: &CoverState<'_>, v: NodeId, rng: &mut R) -> Vec<NodeId> {
    let mut fresh: Vec<_> = s
        .graph()
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| !s.is_recruited(u) && s.observed_degree(u) == 1)
        .collect();
    fresh.shuffle(rng);
    fresh
}

impl Selector {
    pub fn new<R: Rng>(policy: &Policy, s: &CoverState<'_>, rng: &mut R) -> Result<Self> {
        let start = s.recruited_nodes().next().expect("initial recruit");
        let mut queue = |lifo| Selector::Queue {
            lifo,
            queue: newly_observed(s, start, rng).into(),
        };
        Ok(match policy.kind() {
            PolicyKind::Bfs => queue(false),
            PolicyKind::Dfs => queue(true),
            PolicyKind::Rw => Selector::Walk {
                at: start,
                replace: true,
            },
            PolicyKind::Rwnr => Selector::Walk {
                at: start,
                replace: false,
            },
            PolicyKind::Si => Selector::Si,
            PolicyKind::Mod => Selector::Mod,
            PolicyKind::Meed => {
                let dd = policy.side_info().ok_or_else(|| {
                    Error::InvalidArgument("meed needs side information".into())
                })?;
                Selector::Meed {
                    field: MeanField::new(dd, s.graph().node_count())?,
                    clamped: 0,
                }
            }
            PolicyKind::Oracle => Selector::Oracle,
            PolicyKind::MaxDeg => Selector::MaxDeg,
            PolicyKind::Uniform => Selector::Uniform,
            PolicyKind::UniformNoReplace => Selector::UniformNoReplace {
                pool: s.graph().nodes().filter(|&v| v != start).collect(),
            },
        })
    }

    pub fn select<R: Rng>(&mut self, s: &CoverState<'_>, rng: &mut R) -> Result<Step> {
        let g = s.graph();
        Ok(match self {
            Selector::Queue { lifo, queue } => loop {
                let next = if *lifo { queue.pop_back() } else { queue.pop_front() };
                match next {
                    None => break Step::Exhausted,
                    Some(v) if s.is_recruited(v) => continue,
                    Some(v) => break Step::Recruit(v),
                }
            },
            Selector::Walk { at, replace: true } => {
                let nb = g.neighbors(*at);
                let v = nb[rng.random_range(0..nb.len())];
                *at = v;
                if s.is_recruited(v) {
                    Step::Revisit(v)
                } else {
                    Step::Recruit(v)
                }
            }
            Selector::Walk { at, replace: false } => {
                if s.frontier_len() == 0 {
                    return Ok(Step::Exhausted);
                }
                let mut hops = 0u64;
                loop {
                    let nb = g.neighbors(*at);
                    *at = nb[rng.random_range(0..nb.len())];
                    if !s.is_recruited(*at) {
                        break Step::Recruit(*at);
                    }
                    hops += 1;
                    if hops >= HOP_LIMIT {
                        return Err(Error::HopLimit(hops));
                    }
                }
            }
            Selector::Si => select_si(s, rng).map_or(Step::Exhausted, Step::Recruit),
            Selector::Mod => select_mod(s, rng).map_or(Step::Exhausted, Step::Recruit),
            Selector::Meed { field, clamped } => {
                if s.frontier_len() == 0 {
                    return Ok(Step::Exhausted);
                }
                let d_max = s.max_observed_degree().max(1);
                let table = match field.zeta() {
                    Some(z) => Some(excess_recursion(&z, d_max)?),
                    None => None,
                };
                let cut = table.as_ref().map_or(Some(0), ExcessTable::truncated_at);
                if cut.is_some_and(|d| d <= s.max_observed_degree()) {
                    *clamped += 1;
                }
                let excess = |d: usize| table.as_ref().map_or(0.0, |t| t.excess(d));
                select_max_excess(s, excess, rng).map_or(Step::Exhausted, Step::Recruit)
            }
            Selector::Oracle => select_oracle(s, rng).map_or(Step::Exhausted, Step::Recruit),
            Selector::MaxDeg => select_maxdeg(s, rng).map_or(Step::Exhausted, Step::Recruit),
            Selector::Uniform => Step::Sample(rng.random_range(0..g.node_count())),
            Selector::UniformNoReplace { pool } => {
                if pool.is_empty() {
                    Step::Exhausted
                } else {
                    Step::Sample(pool.swap_remove(rng.random_range(0..pool.len())))
                }
            }
        })
    }

    /// Bookkeeping after `v` was recruited from the frontier.
    pub fn observe<R: Rng>(&mut self, s: &CoverState<'_>, v: NodeId, rng: &mut R) {
        match self {
            Selector::Queue { queue, .. } => queue.extend(newly_observed(s, v, rng)),
            Selector::Meed { field, .. } => {
                field.step();
            }
            _ => {}
        }
    }

    /// Selections where MEED met an exhausted excess table.
    pub fn clamped(&self) -> u64 {
        match self {
            Selector::Meed { clamped, .. } => *clamped,
            _ => 0,
        }
    }
}

/// Frontier node with probability proportional to its observed degree.
pub fn select_si<R: Rng>(s: &CoverState<'_>, rng: &mut R) -> Option<NodeId> {
    let top = s.max_observed_degree();
    let total: usize = (1..=top).map(|d| d * s.bucket_nodes(d).len()).sum();
    if total == 0 {
        return None;
    }
    let mut r = rng.random_range(0..total);
    for d in 1..=top {
        let bucket = s.bucket_nodes(d);
        let w = d * bucket.len();
        if r < w {
            return Some(bucket[r / d]);
        }
        r -= w;
    }
    unreachable!("weights sum to total")
}

/// Uniform among frontier nodes of maximum observed degree.
pub fn select_mod<R: Rng>(s: &CoverState<'_>, rng: &mut R) -> Option<NodeId> {
    let bucket = s.bucket_nodes(s.max_observed_degree());
    (!bucket.is_empty()).then(|| bucket[rng.random_range(0..bucket.len())])
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Uniform among frontier nodes whose observed degree maximizes `excess(d)`.
pub fn select_max_excess<R: Rng>(
    s: &CoverState<'_>,
    excess: impl Fn(usize) -> f64,
    rng: &mut R,
) -> Option<NodeId> {
    let mut best = f64::NEG_INFINITY;
    let mut winners: Vec<usize> = Vec::new();
    for d in 1..=s.max_observed_degree() {
        if s.bucket_nodes(d).is_empty() {
            continue;
        }
        let e = excess(d);
        if best.is_finite() && near(e, best) {
            winners.push(d);
        } else if e > best {
            best = e;
            winners.clear();
            winners.push(d);
        }
    }
    let total: usize = winners.iter().map(|&d| s.bucket_nodes(d).len()).sum();
    if total == 0 {
        return None;
    }
    let mut r = rng.random_range(0..total);
    for d in winners {
        let bucket = s.bucket_nodes(d);
        if r < bucket.len() {
            return Some(bucket[r]);
        }
        r -= bucket.len();
    }
    unreachable!("winner sizes sum to total")
}

fn argmax_by<R: Rng>(s: &CoverState<'_>, score: impl Fn(NodeId, usize) -> usize, rng: &mut R) -> Option<NodeId> {
    let mut best = 0usize;
    let mut winners = Vec::new();
    for (v, d) in s.frontier() {
        let x = score(v, d);
        if winners.is_empty() || x > best {
            best = x;
            winners.clear();
            winners.push(v);
        } else if x == best {
            winners.push(v);
        }
    }
    (!winners.is_empty()).then(|| winners[rng.random_range(0..winners.len())])
}

/// Maximum true excess degree `k_v - d(v)`, read from the full topology.
pub fn select_oracle<R: Rng>(s: &CoverState<'_>, rng: &mut R) -> Option<NodeId> {
    let g = s.graph();
    argmax_by(s, |v, d| g.degree(v) - d, rng)
}

/// Maximum true degree among frontier nodes.
pub fn select_maxdeg<R: Rng>(s: &CoverState<'_>, rng: &mut R) -> Option<NodeId> {
    let g = s.graph();
    argmax_by(s, |v, _| g.degree(v), rng)
}
