//! The evolving partition of nodes into recruited, observed (frontier) and
//! uncovered sets.
//!
//! Frontier nodes are kept in buckets keyed by observed degree `d(v)`, the
//! number of recruited neighbors, so that max-observed-degree and
//! degree-proportional selections are cheap. Uncovered nodes are counted
//! independently so the identity `recruited + frontier + uncovered = N` is a
//! real check rather than a definition.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

const NO_SLOT: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct CoverState<'g> {
    graph: &'g Graph,
    recruited: Vec<bool>,
    observed: Vec<u32>,
    buckets: Vec<Vec<NodeId>>,
    slot: Vec<usize>,
    frontier_len: usize,
    max_observed: usize,
    recruited_count: usize,
    uncovered: usize,
    payments: usize,
}

impl<'g> CoverState<'g> {
    /// Recruits `start`; its neighbors form the initial frontier.
    pub fn new(graph: &'g Graph, start: NodeId) -> Result<Self> {
        let n = graph.node_count();
        if start >= n {
            return Err(Error::NodeOutOfRange { node: start, nodes: n });
        }
        let mut s = CoverState {
            graph,
            recruited: vec![false; n],
            observed: vec![0; n],
            buckets: vec![Vec::new(); 2],
            slot: vec![NO_SLOT; n],
            frontier_len: 0,
            max_observed: 0,
            recruited_count: 0,
            uncovered: n,
            payments: 0,
        };
        s.take(start);
        Ok(s)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Link-tracing recruitment: `v` must be in the frontier.
    pub fn recruit(&mut self, v: NodeId) -> Result<()> {
        if !self.in_frontier(v) {
            return Err(Error::NotInFrontier(v));
        }
        self.take(v);
        Ok(())
    }

    /// Recruits any node (uniform sampling). Paying for an already recruited
    /// node only advances payments; returns whether `v` was new.
    pub fn sample(&mut self, v: NodeId) -> Result<bool> {
        let n = self.graph.node_count();
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, nodes: n });
        }
        if self.recruited[v] {
            self.payments += 1;
            return Ok(false);
        }
        self.take(v);
        Ok(true)
    }

    /// A paid visit to an already recruited node.
    pub fn charge_revisit(&mut self) {
        self.payments += 1;
    }

    fn take(&mut self, v: NodeId) {
        if self.slot[v] != NO_SLOT {
            self.unbucket(v);
            self.frontier_len -= 1;
        } else {
            self.uncovered -= 1;
        }
        self.recruited[v] = true;
        self.recruited_count += 1;
        self.payments += 1;
        let graph = self.graph;
        for &u in graph.neighbors(v) {
            if self.recruited[u] {
                continue;
            }
            if self.observed[u] == 0 {
                self.uncovered -= 1;
                self.frontier_len += 1;
            } else {
                self.unbucket(u);
            }
            self.observed[u] += 1;
            self.bucket(u);
        }
        assert_eq!(
            self.recruited_count + self.frontier_len + self.uncovered,
            graph.node_count(),
            "partition identity violated"
        );
    }

    fn bucket(&mut self, v: NodeId) {
        let d = self.observed[v] as usize;
        if d >= self.buckets.len() {
            self.buckets.resize_with(d + 1, Vec::new);
        }
        self.slot[v] = self.buckets[d].len();
        self.buckets[d].push(v);
        self.max_observed = self.max_observed.max(d);
    }

    fn unbucket(&mut self, v: NodeId) {
        let d = self.observed[v] as usize;
        let pos = self.slot[v];
        let bucket = &mut self.buckets[d];
        bucket.swap_remove(pos);
        if let Some(&moved) = bucket.get(pos) {
            self.slot[moved] = pos;
        }
        self.slot[v] = NO_SLOT;
        while self.max_observed > 0 && self.buckets[self.max_observed].is_empty() {
            self.max_observed -= 1;
        }
    }

    /// `B(t)`.
    pub fn recruited_count(&self) -> usize {
        self.recruited_count
    }

    /// Size of the observed set `N(B(t))`.
    pub fn frontier_len(&self) -> usize {
        self.frontier_len
    }

    /// `W(t)`.
    pub fn uncovered_count(&self) -> usize {
        self.uncovered
    }

    pub fn cover_size(&self) -> usize {
        self.recruited_count + self.frontier_len
    }

    pub fn payments(&self) -> usize {
        self.payments
    }

    pub fn is_recruited(&self, v: NodeId) -> bool {
        self.recruited[v]
    }

    pub fn in_frontier(&self, v: NodeId) -> bool {
        v < self.slot.len() && self.slot[v] != NO_SLOT
    }

    /// Recruited neighbors of an unrecruited node; 0 when uncovered.
    pub fn observed_degree(&self, v: NodeId) -> usize {
        if self.recruited[v] {
            0
        } else {
            self.observed[v] as usize
        }
    }

    /// Largest observed degree in the frontier (0 when empty).
    pub fn max_observed_degree(&self) -> usize {
        self.max_observed
    }

    /// Frontier nodes with observed degree exactly `d`, in internal order.
    pub fn bucket_nodes(&self, d: usize) -> &[NodeId] {
        self.buckets.get(d).map_or(&[], Vec::as_slice)
    }

    /// Frontier as `(v, d(v))` pairs in internal (deterministic) order.
    pub fn frontier(&self) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.buckets
            .iter()
            .enumerate()
            .flat_map(|(d, b)| b.iter().map(move |&v| (v, d)))
    }

    /// Snapshot of the frontier ordered by node id.
    pub fn frontier_view(&self) -> BTreeMap<NodeId, usize> {
        self.frontier().collect()
    }

    pub fn recruited_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.recruited
            .iter()
            .enumerate()
            .filter_map(|(v, &r)| r.then_some(v))
    }
}

/// State after one payment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub payments: usize,
    pub recruited: usize,
    pub frontier: usize,
    pub cover: usize,
    /// Node paid for at this step.
    pub node: NodeId,
    /// False for a paid revisit.
    pub new: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    /// One record per payment, starting with the initial recruit.
    pub records: Vec<StepRecord>,
    /// Distinct recruits in order.
    pub order: Vec<NodeId>,
    /// True degree of each entry of `order`.
    pub degrees: Vec<usize>,
}

impl Trace {
    pub(crate) fn push(&mut self, s: &CoverState<'_>, node: NodeId, new: bool) {
        self.records.push(StepRecord {
            payments: s.payments(),
            recruited: s.recruited_count(),
            frontier: s.frontier_len(),
            cover: s.cover_size(),
            node,
            new,
        });
        if new {
            self.order.push(node);
            self.degrees.push(s.graph().degree(node));
        }
    }

    pub fn final_cover(&self) -> usize {
        self.records.last().map_or(0, |r| r.cover)
    }

    pub fn payments(&self) -> usize {
        self.records.last().map_or(0, |r| r.payments)
    }
}
