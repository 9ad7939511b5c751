use super::PredictorCurve;
use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph};

/// Largest graph accepted by [`rw_exact_taboo`].
pub const EXACT_LIMIT: usize = 500;

fn check_walkable(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 || !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `k_v + sum_{j ~ v} k_j`: stubs whose traversal covers `v`.
fn closed_stubs(g: &Graph) -> Vec<f64> {
    g.nodes()
        .map(|v| (g.degree(v) + g.neighbors(v).iter().map(|&j| g.degree(j)).sum::<usize>()) as f64)
        .collect()
}

/// Exact expected cover of a stationary random walk, `t = 0..=horizon`
/// payments, where `t` payments are the positions `X_0 .. X_(t-1)`.
///
/// Node `v` stays uncovered while the walk avoids its closed neighborhood;
/// that probability is propagated with the taboo transition operator.
pub fn rw_exact_taboo(g: &Graph, horizon: usize) -> Result<PredictorCurve> {
    let n = g.node_count();
    if n > EXACT_LIMIT {
        return Err(Error::TooLarge {
            nodes: n,
            limit: EXACT_LIMIT,
        });
    }
    check_walkable(g)?;
    let two_m = 2.0 * g.edge_count() as f64;
    let mut uncovered = vec![0.0f64; horizon + 1];
    let mut taboo = vec![false; n];
    let mut q = vec![0.0f64; n];
    let mut next = vec![0.0f64; n];
    for v in g.nodes() {
        taboo.iter_mut().for_each(|x| *x = false);
        taboo[v] = true;
        for &u in g.neighbors(v) {
            taboo[u] = true;
        }
        for u in g.nodes() {
            q[u] = if taboo[u] { 0.0 } else { g.degree(u) as f64 / two_m };
        }
        uncovered[0] += 1.0;
        for slot in uncovered.iter_mut().skip(1) {
            let mass: f64 = q.iter().sum();
            *slot += mass;
            if mass == 0.0 {
                break;
            }
            next.iter_mut().for_each(|x| *x = 0.0);
            for w in g.nodes() {
                if q[w] == 0.0 {
                    continue;
                }
                let share = q[w] / g.degree(w) as f64;
                for &u in g.neighbors(w) {
                    if !taboo[u] {
                        next[u] += share;
                    }
                }
            }
            std::mem::swap(&mut q, &mut next);
        }
    }
    let values = uncovered.iter().map(|w| n as f64 - w).collect();
    Ok(PredictorCurve::new("rw-exact", 0, values))
}

/// Stationary approximation `N - sum_v (1 - alpha_v)^t` with
/// `alpha_v = (k_v + sum_{j ~ v} k_j) / 2M`.
pub fn rw_steady_curve(g: &Graph, horizon: usize) -> Result<PredictorCurve> {
    check_walkable(g)?;
    let two_m = 2.0 * g.edge_count() as f64;
    let stay: Vec<f64> = closed_stubs(g)
        .into_iter()
        .map(|s| 1.0 - (s / two_m).min(1.0))
        .collect();
    let n = g.node_count() as f64;
    let mut survive = vec![1.0f64; stay.len()];
    let mut values = Vec::with_capacity(horizon + 1);
    values.push(0.0);
    for _ in 1..=horizon {
        for (s, a) in survive.iter_mut().zip(&stay) {
            *s *= a;
        }
        values.push(n - survive.iter().sum::<f64>());
    }
    Ok(PredictorCurve::new("rw", 0, values))
}

/// Linear regime of the stationary walk, `t (<k^2> + <k>) / <k>`.
pub fn rw_linear(g: &Graph, t: usize) -> Result<f64> {
    check_walkable(g)?;
    let n = g.node_count() as f64;
    let k1: f64 = g.degrees().map(|k| k as f64).sum::<f64>() / n;
    let k2: f64 = g.degrees().map(|k| (k * k) as f64).sum::<f64>() / n;
    Ok(t as f64 * (k2 + k1) / k1)
}

#[derive(Clone, Debug)]
pub struct RwnrPrediction {
    pub cover: PredictorCurve,
    pub undiscovered_edges: PredictorCurve,
}

/// Joint recursion for the non-backtracking-to-recruited walk: the expected
/// number of undiscovered edges `<Z(t)>` and the expected cover. Factors are
/// clamped into `[0, 1]`; the recursion stops after the first `t` with
/// `<Z(t)> < 1`.
pub fn rwnr_curve(g: &Graph, horizon: usize) -> Result<RwnrPrediction> {
    check_walkable(g)?;
    let n = g.node_count() as f64;
    let edge_stubs: Vec<f64> = g
        .edges()
        .map(|(u, v)| (g.degree(u) + g.degree(v)) as f64)
        .collect();
    let node_stubs = closed_stubs(g);
    let mut edge_keep = vec![1.0f64; edge_stubs.len()];
    let mut node_keep = vec![1.0f64; node_stubs.len()];
    let mut z = g.edge_count() as f64;
    let mut zs = vec![z];
    let mut cover = vec![0.0];
    for _ in 1..=horizon {
        let denom = 2.0 * z;
        for (keep, s) in edge_keep.iter_mut().zip(&edge_stubs) {
            *keep *= (1.0 - s / denom).clamp(0.0, 1.0);
        }
        for (keep, s) in node_keep.iter_mut().zip(&node_stubs) {
            *keep *= (1.0 - s / denom).clamp(0.0, 1.0);
        }
        z = edge_keep.iter().sum();
        zs.push(z);
        cover.push(n - node_keep.iter().sum::<f64>());
        if z < 1.0 {
            break;
        }
    }
    Ok(RwnrPrediction {
        cover: PredictorCurve::new("rwnr", 0, cover),
        undiscovered_edges: PredictorCurve::new("rwnr-edges", 0, zs),
    })
}
