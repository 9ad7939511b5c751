//! Recruitment policies and the single-run driver.

mod select;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::cover::{CoverState, Trace};
use crate::error::{Error, Result};
use crate::graph::{is_connected, DegreeDistribution, Graph, NodeId};
use crate::{rng_from_seed, SimRng};

pub use select::{
    select_max_excess, select_maxdeg, select_mod, select_oracle, select_si, Selector, Step,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolicyKind {
    Bfs,
    Dfs,
    Rw,
    Rwnr,
    Si,
    Mod,
    Meed,
    Oracle,
    MaxDeg,
    Uniform,
    UniformNoReplace,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 11] = [
        PolicyKind::Bfs,
        PolicyKind::Dfs,
        PolicyKind::Rw,
        PolicyKind::Rwnr,
        PolicyKind::Si,
        PolicyKind::Mod,
        PolicyKind::Meed,
        PolicyKind::Oracle,
        PolicyKind::MaxDeg,
        PolicyKind::Uniform,
        PolicyKind::UniformNoReplace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Bfs => "bfs",
            PolicyKind::Dfs => "dfs",
            PolicyKind::Rw => "rw",
            PolicyKind::Rwnr => "rwnr",
            PolicyKind::Si => "si",
            PolicyKind::Mod => "mod",
            PolicyKind::Meed => "meed",
            PolicyKind::Oracle => "oracle",
            PolicyKind::MaxDeg => "maxdeg",
            PolicyKind::Uniform => "uniform",
            PolicyKind::UniformNoReplace => "uniform-nr",
        }
    }

    /// Recruits only frontier nodes, so the recruited set stays connected.
    pub fn is_link_tracing(self) -> bool {
        !matches!(self, PolicyKind::Uniform | PolicyKind::UniformNoReplace)
    }

    /// Every payment recruits a new node.
    pub fn without_replacement(self) -> bool {
        !matches!(self, PolicyKind::Rw | PolicyKind::Uniform)
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PolicyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = PolicyKind::ALL.iter().map(|k| k.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown policy '{s}', expected one of {}",
                    names.join("|")
                ))
            })
    }
}

/// A policy together with its side information.
#[derive(Clone, Debug, PartialEq)]
pub struct Policy {
    kind: PolicyKind,
    side_info: Option<DegreeDistribution>,
}

impl Policy {
    /// Any policy except MEED, which needs [`Policy::meed`].
    pub fn new(kind: PolicyKind) -> Result<Self> {
        if kind == PolicyKind::Meed {
            return Err(Error::InvalidArgument(
                "meed needs a degree distribution as side information".into(),
            ));
        }
        Ok(Policy {
            kind,
            side_info: None,
        })
    }

    pub fn meed(side_info: DegreeDistribution) -> Self {
        Policy {
            kind: PolicyKind::Meed,
            side_info: Some(side_info),
        }
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn side_info(&self) -> Option<&DegreeDistribution> {
        self.side_info.as_ref()
    }
}

/// One run from a uniformly random start node; deterministic in `seed`.
pub fn run_policy(g: &Graph, policy: &Policy, budget: usize, seed: u64) -> Result<Trace> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut rng = rng_from_seed(seed);
    let start = rng.random_range(0..n);
    run_policy_from(g, policy, budget, start, &mut rng)
}

/// One run from a given start node, drawing from `rng`.
pub fn run_policy_from(
    g: &Graph,
    policy: &Policy,
    budget: usize,
    start: NodeId,
    rng: &mut SimRng,
) -> Result<Trace> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    if policy.kind.is_link_tracing() && !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let mut state = CoverState::new(g, start)?;
    let mut selector = Selector::new(policy, &state, rng)?;
    let mut trace = Trace::default();
    trace.push(&state, start, true);
    while state.payments() < budget {
        match selector.select(&state, rng)? {
            Step::Recruit(v) => {
                state.recruit(v)?;
                selector.observe(&state, v, rng);
                trace.push(&state, v, true);
            }
            Step::Sample(v) => {
                let new = state.sample(v)?;
                trace.push(&state, v, new);
            }
            Step::Revisit(v) => {
                state.charge_revisit();
                trace.push(&state, v, false);
            }
            Step::Exhausted => break,
        }
    }
    Ok(trace)
}
