use std::collections::{HashSet, VecDeque};

use rand::Rng;

use super::{is_connected, Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng_from_seed;

const SWAPS_PER_EDGE: u64 = 10;
const ATTEMPTS_PER_EDGE: u64 = 10_000;

/// Degree-preserving randomization by connected double edge swaps.
///
/// Swaps `(a,b),(c,d) -> (a,d),(c,b)` are proposed in windows; a window whose
/// swaps disconnect the graph is rolled back and the window halves, otherwise it
/// grows by one. Runs until `10 * M` swaps have been kept. When no proposal can
/// ever keep the graph simple and connected (e.g. a star) the input is returned
/// unchanged, since it is the only realization reachable by swaps.
pub fn rewire(g: &Graph, seed: u64) -> Result<Graph> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let m = g.edge_count() as u64;
    if m < 2 {
        return Ok(g.clone());
    }
    let mut rng = rng_from_seed(seed);
    let mut state = SwapState::new(g);
    let target = SWAPS_PER_EDGE * m;
    let max_attempts = ATTEMPTS_PER_EDGE * m;
    let (mut accepted, mut attempts, mut window) = (0u64, 0u64, 1u64);

    while accepted < target {
        if attempts >= max_attempts {
            if accepted == 0 {
                return Ok(g.clone());
            }
            return Err(Error::RewireExhausted {
                attempts,
                accepted,
                target,
            });
        }
        let want = window.min(target - accepted);
        let mut applied = Vec::with_capacity(want as usize);
        while (applied.len() as u64) < want && attempts < max_attempts {
            attempts += 1;
            if let Some(swap) = state.try_swap(&mut rng) {
                applied.push(swap);
            }
        }
        if applied.is_empty() {
            continue;
        }
        if state.connected() {
            accepted += applied.len() as u64;
            window += 1;
        } else {
            for swap in applied.into_iter().rev() {
                state.undo(swap);
            }
            window = window.div_ceil(2);
        }
    }
    let out = Graph::from_edges(g.node_count(), state.edges.iter().copied())?;
    Ok(match g.labels() {
        Some(labels) => out.with_labels(labels.to_vec()),
        None => out,
    })
}

#[derive(Clone, Copy)]
struct Swap {
    i: usize,
    j: usize,
    old_i: (NodeId, NodeId),
    old_j: (NodeId, NodeId),
}

struct SwapState {
    edges: Vec<(NodeId, NodeId)>,
    present: HashSet<(NodeId, NodeId)>,
    adj: Vec<Vec<NodeId>>,
}

fn key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}

impl SwapState {
    fn new(g: &Graph) -> Self {
        let edges: Vec<_> = g.edges().collect();
        SwapState {
            present: edges.iter().copied().collect(),
            adj: g.nodes().map(|v| g.neighbors(v).to_vec()).collect(),
            edges,
        }
    }

    fn try_swap<R: Rng>(&mut self, rng: &mut R) -> Option<Swap> {
        let m = self.edges.len();
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            return None;
        }
        let (a, b) = self.edges[i];
        let (mut c, mut d) = self.edges[j];
        if rng.random::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        if a == d || c == b || self.present.contains(&key(a, d)) || self.present.contains(&key(c, b))
        {
            return None;
        }
        let swap = Swap {
            i,
            j,
            old_i: self.edges[i],
            old_j: self.edges[j],
        };
        self.replace(i, (a, b), (a, d));
        self.replace(j, (c, d), (c, b));
        Some(swap)
    }

    fn undo(&mut self, s: Swap) {
        let (now_i, now_j) = (self.edges[s.i], self.edges[s.j]);
        self.replace(s.j, now_j, s.old_j);
        self.replace(s.i, now_i, s.old_i);
    }

    fn replace(&mut self, idx: usize, old: (NodeId, NodeId), new: (NodeId, NodeId)) {
        self.present.remove(&key(old.0, old.1));
        self.unlink(old.0, old.1);
        self.unlink(old.1, old.0);
        self.present.insert(key(new.0, new.1));
        self.adj[new.0].push(new.1);
        self.adj[new.1].push(new.0);
        self.edges[idx] = new;
    }

    fn unlink(&mut self, u: NodeId, v: NodeId) {
        let list = &mut self.adj[u];
        let pos = list.iter().position(|&x| x == v).expect("edge endpoints in sync");
        list.swap_remove(pos);
    }

    fn connected(&self) -> bool {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }
}
