use super::series::{gamma_d_tau2, SERIES_CAP};
use crate::error::{Error, Result};
use crate::graph::DegreeDistribution;

/// Excess values at or below this are treated as exhausted.
pub const EXCESS_EPS: f64 = 1e-12;

/// `zeta^(d)` together with its mean and excess `<k - d>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcessLevel {
    pub d: usize,
    /// `(k, zeta^(d)_k)` for `k >= d`, ascending.
    pub dist: Vec<(usize, f64)>,
    pub mean: f64,
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExcessTable {
    levels: Vec<ExcessLevel>,
    truncated_at: Option<usize>,
}

impl ExcessTable {
    pub fn levels(&self) -> &[ExcessLevel] {
        &self.levels
    }

    pub fn level(&self, d: usize) -> Option<&ExcessLevel> {
        self.levels.get(d)
    }

    /// `<k - d>_{zeta^(d)}`, 0 past the end of a truncated table.
    pub fn excess(&self, d: usize) -> f64 {
        self.levels.get(d).map_or(0.0, |l| l.excess)
    }

    /// The level where `<k> - d` fell to the tolerance, if any.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }
}

/// Builds `zeta^(0..=d_max)` with `zeta^(d+1)_k = (k - d) zeta^(d)_k / (<k>_(d) - d)`.
///
/// When `<k>_(d) - d <= EXCESS_EPS` the level is kept with excess clamped to 0
/// and the table stops there.
pub fn excess_recursion(zeta: &DegreeDistribution, d_max: usize) -> Result<ExcessTable> {
    if d_max < 1 {
        return Err(Error::InvalidArgument("d_max must be at least 1".into()));
    }
    let mut dist: Vec<(usize, f64)> = zeta.iter().collect();
    let mut levels = Vec::new();
    for d in 0..=d_max {
        let total: f64 = dist.iter().map(|&(_, p)| p).sum();
        for e in &mut dist {
            e.1 /= total;
        }
        let mean: f64 = dist.iter().map(|&(k, p)| k as f64 * p).sum();
        let excess = mean - d as f64;
        if excess <= EXCESS_EPS {
            levels.push(ExcessLevel {
                d,
                dist,
                mean,
                excess: 0.0,
            });
            return Ok(ExcessTable {
                levels,
                truncated_at: Some(d),
            });
        }
        let next: Vec<(usize, f64)> = dist
            .iter()
            .filter(|&&(k, _)| k > d)
            .map(|&(k, p)| (k, (k - d) as f64 * p / excess))
            .collect();
        levels.push(ExcessLevel {
            d,
            dist,
            mean,
            excess,
        });
        dist = next;
    }
    Ok(ExcessTable {
        levels,
        truncated_at: None,
    })
}

/// `F_d = sum_k k (k-1) ... (k-d+1) zeta_k`, with `F_0 = 1`.
pub fn falling_factorial_moment(zeta: &DegreeDistribution, d: usize) -> f64 {
    zeta.iter()
        .filter(|&(k, _)| k >= d)
        .map(|(k, p)| p * (0..d).map(|i| (k - i) as f64).product::<f64>())
        .sum()
}

/// `F_(d+1) / F_d`, which equals `<k - d>_{zeta^(d)}`.
pub fn excess_moment_ratio(zeta: &DegreeDistribution, d: usize) -> Result<f64> {
    let fd = falling_factorial_moment(zeta, d);
    if fd <= 0.0 {
        return Err(Error::Undefined(format!(
            "falling factorial moment F_{d} vanishes"
        )));
    }
    Ok(falling_factorial_moment(zeta, d + 1) / fd)
}

/// Conditional expected degree of a frontier node with observed degree `d`,
/// corrected by the counts `n_d` (nodes with observed degree `>= d`) and
/// `n_d1` (`>= d+1`). A diagnostic; MEED uses the plain table value.
pub fn conditional_degree(table: &ExcessTable, d: usize, n_d: f64, n_d1: f64) -> Result<f64> {
    let gap = n_d - n_d1;
    if gap <= 0.0 {
        return Err(Error::Undefined(format!(
            "no frontier nodes with observed degree exactly {d}"
        )));
    }
    let mean = |i: usize| table.level(i).map_or(i as f64, |l| l.mean);
    Ok(n_d / gap * mean(d) - n_d1 / gap * mean(d + 1))
}

/// Excess degree in `G(N, q)`: `(N - d - 1) q`.
pub fn er_excess(n: usize, q: f64, d: usize) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidArgument(format!("q must lie in (0, 1), got {q}")));
    }
    if d + 1 >= n {
        return Err(Error::InvalidArgument(format!(
            "observed degree {d} needs d < N - 1 = {}",
            n.saturating_sub(1)
        )));
    }
    Ok((n - d - 1) as f64 * q)
}

/// `Binomial(trials, q)` restricted to `k >= 1`, the degree law of `G(trials+1, q)`.
pub fn binomial_degrees(trials: usize, q: f64) -> Result<DegreeDistribution> {
    if !(q > 0.0 && q < 1.0) || trials == 0 {
        return Err(Error::InvalidArgument(format!(
            "binomial needs trials >= 1 and q in (0, 1), got {trials}, {q}"
        )));
    }
    let ln_odds = (q / (1.0 - q)).ln();
    let mut ln_p = trials as f64 * (-q).ln_1p();
    let mut weights = Vec::with_capacity(trials);
    for k in 0..trials {
        ln_p += ((trials - k) as f64 / (k + 1) as f64).ln() + ln_odds;
        weights.push((k + 1, ln_p.exp()));
    }
    DegreeDistribution::from_weights(weights)
}

/// `zeta_k ~ k^-tau C^k`, truncated once terms (and their `order`-th power
/// weighted terms) fall below `1e-14` of their peak.
pub fn truncated_powerlaw(c: f64, tau: f64, order: usize) -> Result<DegreeDistribution> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "cutoff parameter must lie in (0, 1), got {c}"
        )));
    }
    const CUT: f64 = 1e-14;
    let mut weights = Vec::new();
    let (mut peak, mut peak_w) = (0.0f64, 0.0f64);
    for k in 1..=SERIES_CAP {
        let kf = k as f64;
        let ln_t = -tau * kf.ln() + kf * c.ln();
        let t = ln_t.exp();
        let w = (ln_t + order as f64 * kf.ln()).exp();
        peak = peak.max(t);
        peak_w = peak_w.max(w);
        weights.push((k, t));
        let shrinking = k > 1 && weights[k - 2].1 >= t;
        if shrinking && t < CUT * peak && w < CUT * peak_w {
            return DegreeDistribution::from_weights(weights);
        }
    }
    Err(Error::NoConvergence(SERIES_CAP))
}

/// `<k - d>_{zeta^(d)}` for `zeta_k ~ k^-tau C^k`.
///
/// `tau = 1` (with `d >= 1`) uses `C d / (1 - C)`; `tau = 2` (with `d >= 1`)
/// sums the Gamma series; anything else takes the moment ratio of the
/// truncated distribution.
pub fn powerlaw_excess(c: f64, tau: f64, d: usize) -> Result<f64> {
    if c >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "cutoff parameter {c} >= 1 makes the excess degree diverge"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cutoff parameter must be positive, got {c}"
        )));
    }
    if d >= 1 && tau == 1.0 {
        return Ok(c * d as f64 / (1.0 - c));
    }
    if d >= 1 && tau == 2.0 {
        // Gamma_j is the excess at observed degree j + 1
        return gamma_d_tau2(c, d - 1);
    }
    excess_moment_ratio(&truncated_powerlaw(c, tau, d + 1)?, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> DegreeDistribution {
        DegreeDistribution::from_weights([(1, 0.5), (2, 0.5)]).unwrap()
    }

    #[test]
    fn two_point_recursion() {
        let t = excess_recursion(&two_point(), 3).unwrap();
        let l1 = t.level(1).unwrap();
        assert_eq!(l1.dist.len(), 2);
        assert!((l1.dist[0].1 - 1.0 / 3.0).abs() < 1e-15);
        assert!((l1.dist[1].1 - 2.0 / 3.0).abs() < 1e-15);
        assert!((t.excess(1) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(t.level(2).unwrap().dist, vec![(2, 1.0)]);
        assert_eq!(t.excess(2), 0.0);
        assert_eq!(t.truncated_at(), Some(2));
        assert_eq!(t.excess(3), 0.0);
    }

    #[test]
    fn two_point_moments() {
        let z = two_point();
        assert!((falling_factorial_moment(&z, 1) - 1.5).abs() < 1e-15);
        assert!((falling_factorial_moment(&z, 2) - 1.0).abs() < 1e-15);
        assert!((excess_moment_ratio(&z, 1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(excess_moment_ratio(&z, 2).unwrap(), 0.0);
        assert!(matches!(excess_moment_ratio(&z, 3), Err(Error::Undefined(_))));
        assert!((excess_moment_ratio(&z, 0).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn regular_excess() {
        let z = DegreeDistribution::from_weights([(5, 1.0)]).unwrap();
        let t = excess_recursion(&z, 8).unwrap();
        for d in 0..=5 {
            assert!((t.excess(d) - (5 - d) as f64).abs() < 1e-12);
        }
        assert_eq!(t.truncated_at(), Some(5));
    }

    #[test]
    fn er_binomial_agreement() {
        assert!((er_excess(101, 0.1, 2).unwrap() - 9.8).abs() < 1e-12);
        let z = binomial_degrees(100, 0.1).unwrap();
        for d in 0..=5 {
            let r = excess_moment_ratio(&z, d).unwrap();
            // conditioning on k >= 1 only shifts d = 0
            if d >= 1 {
                assert!((r - er_excess(101, 0.1, d).unwrap()).abs() < 1e-9, "d={d} r={r}");
            }
        }
        assert!(er_excess(5, 0.5, 4).is_err());
        assert!(er_excess(5, 1.0, 1).is_err());
    }

    #[test]
    fn tau_one_closed_form() {
        assert!((powerlaw_excess(0.5, 1.0, 3).unwrap() - 3.0).abs() < 1e-15);
        for &c in &[0.2, 0.5, 0.8] {
            for d in 1..=6 {
                let z = truncated_powerlaw(c, 1.0, d + 1).unwrap();
                let ratio = excess_moment_ratio(&z, d).unwrap();
                let closed = powerlaw_excess(c, 1.0, d).unwrap();
                assert!((ratio - closed).abs() < 1e-6, "c={c} d={d}");
            }
        }
    }

    #[test]
    fn tau_two_series_matches_moment_ratio() {
        for &c in &[0.3, 0.6, 0.9] {
            for d in 1..=5 {
                let z = truncated_powerlaw(c, 2.0, d + 1).unwrap();
                let ratio = excess_moment_ratio(&z, d).unwrap();
                let series = powerlaw_excess(c, 2.0, d).unwrap();
                assert!((ratio - series).abs() < 1e-6 * ratio.max(1.0), "c={c} d={d}");
            }
        }
    }

    #[test]
    fn powerlaw_normalization_is_polylog() {
        // mean of the truncated law is Li_{tau-1}(C) / Li_tau(C)
        let (c, tau) = (0.7, 2.5);
        let z = truncated_powerlaw(c, tau, 1).unwrap();
        let want = super::super::polylog(tau - 1.0, c).unwrap() / super::super::polylog(tau, c).unwrap();
        assert!((z.mean() - want).abs() < 1e-9);
    }

    #[test]
    fn divergent_cutoff() {
        assert!(powerlaw_excess(1.0, 2.0, 3).is_err());
        assert!(powerlaw_excess(0.0, 2.0, 3).is_err());
    }

    #[test]
    fn conditional_degree_reduces_without_higher_counts() {
        let t = excess_recursion(&two_point(), 2).unwrap();
        let v = conditional_degree(&t, 1, 10.0, 0.0).unwrap();
        assert!((v - t.level(1).unwrap().mean).abs() < 1e-15);
        assert!(conditional_degree(&t, 1, 3.0, 3.0).is_err());
    }
}
