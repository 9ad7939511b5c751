use std::collections::BTreeMap;

use super::PredictorCurve;
use crate::error::{Error, Result};
use crate::graph::DegreeDistribution;

/// Denominators below this stop the recursion.
const DEPLETED: f64 = 1e-12;

/// Mean-field fractions `b_k(t)` of degree-`k` nodes recruited by SI-style
/// edge sampling after `t` steps, starting from `b_k(0) = 1/N`.
#[derive(Clone, Debug)]
pub struct MeanField {
    degrees: Vec<usize>,
    mass: Vec<f64>,
    n: f64,
    b: Vec<f64>,
    t: usize,
}

/// Snapshot of a [`MeanField`].
#[derive(Clone, Debug, PartialEq)]
pub struct MeanFieldState {
    pub t: usize,
    pub b: BTreeMap<usize, f64>,
    pub recruited: f64,
}

impl MeanField {
    pub fn new(dd: &DegreeDistribution, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("mean field needs N >= 2".into()));
        }
        let (degrees, mass): (Vec<_>, Vec<_>) = dd.iter().unzip();
        let b = vec![1.0 / n as f64; degrees.len()];
        Ok(MeanField {
            degrees,
            mass,
            n: n as f64,
            b,
            t: 0,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `(k, b_k)` pairs, ascending in `k`.
    pub fn fractions(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.degrees.iter().copied().zip(self.b.iter().copied())
    }

    /// `<B(t)> = sum_k N p_k b_k`.
    pub fn recruited(&self) -> f64 {
        self.n * self.mass.iter().zip(&self.b).map(|(p, b)| p * b).sum::<f64>()
    }

    /// Advances one step. Returns false, leaving the state untouched, once
    /// the unrecruited stub mass is depleted or a class would overshoot 1.
    pub fn step(&mut self) -> bool {
        let den: f64 = self
            .degrees
            .iter()
            .zip(&self.mass)
            .zip(&self.b)
            .map(|((&h, p), b)| h as f64 * p * (1.0 - b))
            .sum();
        if den < DEPLETED {
            return false;
        }
        let scale = self.n * den;
        if self
            .degrees
            .iter()
            .zip(&self.b)
            .any(|(&k, &b)| b < 1.0 && k as f64 > scale)
        {
            return false;
        }
        for (b, &k) in self.b.iter_mut().zip(&self.degrees) {
            *b += k as f64 * (1.0 - *b) / scale;
        }
        self.t += 1;
        true
    }

    /// Unrecruited-degree law `zeta_k ~ p_k (1 - b_k)`, `None` once exhausted.
    pub fn zeta(&self) -> Option<DegreeDistribution> {
        DegreeDistribution::from_weights(
            self.degrees
                .iter()
                .zip(&self.mass)
                .zip(&self.b)
                .map(|((&k, p), b)| (k, (p * (1.0 - b)).max(0.0))),
        )
        .ok()
    }

    /// `Upsilon_k(t)`: probability that a degree-`k` node is unrecruited but
    /// has at least one recruited neighbor.
    pub fn upsilon(&self) -> Vec<f64> {
        let two_m: f64 = self.n
            * self
                .degrees
                .iter()
                .zip(&self.mass)
                .map(|(&k, p)| k as f64 * p)
                .sum::<f64>();
        self.degrees
            .iter()
            .zip(&self.b)
            .map(|(&k, &bk)| {
                let ln_none: f64 = self
                    .degrees
                    .iter()
                    .zip(&self.mass)
                    .zip(&self.b)
                    .map(|((&h, &ph), &bh)| {
                        let p_kh = -(k as f64 * (-(h as f64 / two_m).min(1.0)).ln_1p()).exp_m1();
                        self.n * ph * (-bh * p_kh).ln_1p()
                    })
                    .sum();
                ((1.0 - bk) * (1.0 - ln_none.exp())).clamp(0.0, 1.0)
            })
            .collect()
    }

    /// `sum_k N p_k Upsilon_k(t)`.
    pub fn frontier(&self) -> f64 {
        self.n
            * self
                .mass
                .iter()
                .zip(self.upsilon())
                .map(|(p, u)| p * u)
                .sum::<f64>()
    }

    pub fn snapshot(&self) -> MeanFieldState {
        MeanFieldState {
            t: self.t,
            b: self.fractions().collect(),
            recruited: self.recruited(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SiPrediction {
    /// `b(0), b(1), ...`; step `t` corresponds to `t + 1` payments.
    pub trajectory: Vec<MeanFieldState>,
    pub frontier: PredictorCurve,
    pub cover: PredictorCurve,
}

/// SI mean-field prediction for `t = 0..=horizon` steps after the initial
/// recruit. The frontier at step `t + 1` is evaluated from `b(t)`, the frontier
/// at step 0 is `<k>`, and `cover(t) = <B(t)> + frontier(t)`. Curves are keyed
/// by payments, `t + 1`.
pub fn si_meanfield(dd: &DegreeDistribution, n: usize, horizon: usize) -> Result<SiPrediction> {
    if horizon + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "horizon {horizon} exceeds N - 1 = {}",
            n.saturating_sub(1)
        )));
    }
    let mut mf = MeanField::new(dd, n)?;
    let mut trajectory = vec![mf.snapshot()];
    let mut frontier = vec![dd.mean()];
    let mut cover = vec![mf.recruited() + dd.mean()];
    while mf.t() < horizon {
        let f = mf.frontier();
        if !mf.step() {
            break;
        }
        frontier.push(f);
        cover.push(mf.recruited() + f);
        trajectory.push(mf.snapshot());
    }
    Ok(SiPrediction {
        trajectory,
        frontier: PredictorCurve::new("si-frontier", 1, frontier),
        cover: PredictorCurve::new("si", 1, cover),
    })
}
