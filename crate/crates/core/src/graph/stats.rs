use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};

/// Normalized probability mass over degrees `k >= 1`.
///
/// Graph-derived distributions record the number of non-isolated nodes; abstract
/// ones (excess-degree inputs, side information) may leave it unset.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeDistribution {
    mass: BTreeMap<usize, f64>,
    node_count: Option<usize>,
    mean: f64,
    second_moment: f64,
}

impl DegreeDistribution {
    /// Normalizes nonnegative weights. Zero weights are dropped from the support.
    pub fn from_weights<I>(weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let mut mass = BTreeMap::new();
        for (k, w) in weights {
            if k == 0 {
                return Err(Error::InvalidArgument("degree 0 is outside the support".into()));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidArgument(format!("weight {w} for degree {k}")));
            }
            if w > 0.0 {
                *mass.entry(k).or_insert(0.0) += w;
            }
        }
        let total: f64 = mass.values().sum();
        if mass.is_empty() || total <= 0.0 {
            return Err(Error::InvalidArgument("distribution has no mass".into()));
        }
        for p in mass.values_mut() {
            *p /= total;
        }
        Ok(Self::from_normalized(mass, None))
    }

    fn from_normalized(mass: BTreeMap<usize, f64>, node_count: Option<usize>) -> Self {
        let mean = mass.iter().map(|(&k, &p)| k as f64 * p).sum();
        let second_moment = mass.iter().map(|(&k, &p)| (k * k) as f64 * p).sum();
        DegreeDistribution {
            mass,
            node_count,
            mean,
            second_moment,
        }
    }

    pub fn with_node_count(mut self, n: usize) -> Self {
        self.node_count = Some(n);
        self
    }

    pub fn mass(&self, k: usize) -> f64 {
        self.mass.get(&k).copied().unwrap_or(0.0)
    }

    /// `(k, p_k)` in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.mass.iter().map(|(&k, &p)| (k, p))
    }

    pub fn support_len(&self) -> usize {
        self.mass.len()
    }

    pub fn max_degree(&self) -> usize {
        self.mass.keys().next_back().copied().unwrap_or(0)
    }

    pub fn node_count(&self) -> Option<usize> {
        self.node_count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn second_moment(&self) -> f64 {
        self.second_moment
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub second_moment: f64,
    /// Global clustering coefficient, `3 * triangles / connected triples`.
    pub clustering: f64,
}

/// Fraction of non-isolated nodes at each degree.
pub fn degree_distribution(g: &Graph) -> DegreeDistribution {
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    let mut n = 0usize;
    for k in g.degrees().filter(|&k| k > 0) {
        *counts.entry(k).or_insert(0.0) += 1.0;
        n += 1;
    }
    for c in counts.values_mut() {
        *c /= n as f64;
    }
    DegreeDistribution::from_normalized(counts, Some(n))
}

pub fn stats(g: &Graph) -> GraphStats {
    let n = g.node_count();
    let (mut k1, mut k2) = (0.0, 0.0);
    let mut wedges = 0u64;
    for k in g.degrees() {
        k1 += k as f64;
        k2 += (k * k) as f64;
        wedges += (k * k.saturating_sub(1) / 2) as u64;
    }
    GraphStats {
        nodes: n,
        edges: g.edge_count(),
        mean_degree: k1 / n as f64,
        second_moment: k2 / n as f64,
        clustering: if wedges == 0 {
            0.0
        } else {
            3.0 * triangles(g) as f64 / wedges as f64
        },
    }
}

/// Triangles counted once each via ordered neighbor-list intersection.
fn triangles(g: &Graph) -> u64 {
    let mut count = 0u64;
    for u in g.nodes() {
        let nu = g.neighbors(u);
        for &v in nu.iter().filter(|&&v| v > u) {
            let nv = g.neighbors(v);
            let (mut i, mut j) = (0, 0);
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if nu[i] > v {
                            count += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    count
}
