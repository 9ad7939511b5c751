//! Immutable undirected simple graphs in offset-indexed adjacency form.
//!
//! Neighbors of node `v` are `targets[offsets[v]..offsets[v + 1]]`, sorted
//! ascending. Every constructor goes through [`Graph::from_edges`], which drops
//! self-loops and duplicate edges, so symmetry and simplicity hold by
//! construction.

mod components;
mod generators;
mod io;
mod rewire;
mod stats;

pub use components::{is_connected, largest_component};
pub use generators::{
    complete, configuration_model, erdos_renyi, lattice, path, powerlaw_degrees, ring, star,
};
pub use io::{load_edge_list, read_edge_list_file, write_edge_list};
pub use rewire::rewire;
pub use stats::{degree_distribution, stats, DegreeDistribution, GraphStats};

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    /// Original identifiers of loaded graphs, indexed by dense id.
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph on `n` nodes. Self-loops and repeated edges are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, nodes: n });
                }
            }
            if u != v {
                pairs.push((u, v));
                pairs.push((v, u));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        let graph = Graph {
            offsets,
            targets,
            labels: None,
        };
        debug_assert!(graph.validate().is_ok());
        Ok(graph)
    }

    pub(crate) fn with_labels(mut self, labels: Vec<u64>) -> Self {
        debug_assert_eq!(labels.len(), self.node_count());
        self.labels = Some(labels);
        self
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Original identifier of a dense node id (the id itself for generated graphs).
    pub fn label(&self, v: NodeId) -> u64 {
        match &self.labels {
            Some(labels) => labels[v],
            None => v as u64,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Checks symmetry, simplicity and the degree-sum identity.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.offsets[0] != 0 || self.offsets[n] != self.targets.len() {
            return bad("offsets do not span the target array".into());
        }
        for v in self.nodes() {
            let nbrs = self.neighbors(v);
            for w in nbrs.windows(2) {
                if w[0] >= w[1] {
                    return bad(format!("neighbors of {v} unsorted or duplicated"));
                }
            }
            for &u in nbrs {
                if u == v {
                    return bad(format!("self-loop at {v}"));
                }
                if u >= n || !self.has_edge(u, v) {
                    return bad(format!("edge {v}-{u} is not symmetric"));
                }
            }
        }
        if self.degrees().sum::<usize>() != 2 * self.edge_count() {
            return bad("degree sum differs from 2M".into());
        }
        Ok(())
    }

    /// Subgraph induced by `keep` (sorted ascending), renumbered densely in that order.
    pub(crate) fn induced(&self, keep: &[NodeId]) -> Graph {
        let mut index = vec![usize::MAX; self.node_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = keep
            .iter()
            .flat_map(|&u| {
                let index = &index;
                self.neighbors(u)
                    .iter()
                    .filter(move |&&v| u < v && index[v] != usize::MAX)
                    .map(move |&v| (index[u], index[v]))
            })
            .collect();
        let sub = Graph::from_edges(keep.len(), edges).expect("induced ids are in range");
        sub.with_labels(keep.iter().map(|&v| self.label(v)).collect())
    }
}
