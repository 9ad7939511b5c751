//! Synthetic graph families. All randomized generators are deterministic in their seed.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng_from_seed;

/// Erased configuration model: stubs are matched uniformly at random, then
/// self-loops and multi-edges are discarded.
pub fn configuration_model(degrees: &[usize], seed: u64) -> Result<Graph> {
    if degrees.is_empty() {
        return Err(Error::InvalidArgument("empty degree sequence".into()));
    }
    if let Some(v) = degrees.iter().position(|&k| k == 0) {
        return Err(Error::InvalidArgument(format!("node {v} has degree 0")));
    }
    let total: usize = degrees.iter().sum();
    if total % 2 != 0 {
        return Err(Error::InvalidArgument(format!("degree sum {total} is odd")));
    }
    let mut stubs: Vec<NodeId> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(v, k))
        .collect();
    let mut rng = rng_from_seed(seed);
    stubs.shuffle(&mut rng);
    let edges = stubs.chunks_exact(2).map(|p| (p[0], p[1]));
    Graph::from_edges(degrees.len(), edges)
}

/// `n` i.i.d. degrees with `P[k] ∝ k^-tau` on `k_min..=k_max`, resampling the
/// last entry until the sum is even.
pub fn powerlaw_degrees(
    n: usize,
    tau: f64,
    k_min: usize,
    k_max: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if n == 0 || k_min == 0 || k_min > k_max {
        return Err(Error::InvalidArgument(format!(
            "need n > 0 and 1 <= k_min <= k_max (got n={n}, k_min={k_min}, k_max={k_max})"
        )));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidArgument(format!("tau must be positive, got {tau}")));
    }
    let weights: Vec<f64> = (k_min..=k_max).map(|k| (k as f64).powf(-tau)).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = rng_from_seed(seed);
    let mut degrees: Vec<usize> = (0..n).map(|_| k_min + dist.sample(&mut rng)).collect();
    while degrees.iter().sum::<usize>() % 2 != 0 {
        degrees[n - 1] = k_min + dist.sample(&mut rng);
    }
    Ok(degrees)
}

/// G(n, q) using geometric skipping over the lower triangle.
pub fn erdos_renyi(n: usize, q: f64, seed: u64) -> Result<Graph> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidArgument(format!("edge probability {q} not in (0, 1)")));
    }
    let mut rng = rng_from_seed(seed);
    let log_miss = (1.0 - q).ln();
    let mut edges = Vec::new();
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / log_miss).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v, w as usize));
        }
    }
    Graph::from_edges(n, edges)
}

/// 2D or 3D grid, row-major ids. `periodic` wraps every axis into a torus.
pub fn lattice(dims: &[usize], periodic: bool) -> Result<Graph> {
    if !(2..=3).contains(&dims.len()) {
        return Err(Error::InvalidArgument(format!(
            "lattice needs 2 or 3 dimensions, got {}",
            dims.len()
        )));
    }
    if let Some(&side) = dims.iter().find(|&&s| s < 3) {
        return Err(Error::InvalidArgument(format!("lattice side {side} < 3")));
    }
    let n: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for a in (0..dims.len() - 1).rev() {
        strides[a] = strides[a + 1] * dims[a + 1];
    }
    let mut edges = Vec::with_capacity(n * dims.len());
    for v in 0..n {
        for (&side, &stride) in dims.iter().zip(&strides) {
            let coord = (v / stride) % side;
            if coord + 1 < side {
                edges.push((v, v + stride));
            } else if periodic {
                edges.push((v, v - coord * stride));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn ring(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("ring needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Hub is node 0.
pub fn star(leaves: usize) -> Result<Graph> {
    if leaves == 0 {
        return Err(Error::InvalidArgument("star needs at least one leaf".into()));
    }
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("path needs n >= 2, got {n}")));
    }
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("complete graph needs n >= 2, got {n}")));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}
