use super::PredictorCurve;
use crate::error::{Error, Result};
use crate::graph::DegreeDistribution;

fn check_support(dd: &DegreeDistribution, n: usize) -> Result<()> {
    let k = dd.max_degree();
    if k + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "degree {k} is inconsistent with {n} nodes"
        )));
    }
    Ok(())
}

/// Uniform node sampling with replacement:
/// `<W(t)> = N sum_k p_k (1 - (k+1)/N)^t`; the curve holds the cover `N - <W(t)>`
/// for `t = 0..=horizon`.
pub fn uniform_replace_curve(
    dd: &DegreeDistribution,
    n: usize,
    horizon: usize,
) -> Result<PredictorCurve> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    check_support(dd, n)?;
    let nf = n as f64;
    let values = (0..=horizon)
        .map(|t| {
            let uncovered: f64 = dd
                .iter()
                .map(|(k, p)| p * (1.0 - (k + 1) as f64 / nf).powi(t as i32))
                .sum();
            nf - nf * uncovered
        })
        .collect();
    Ok(PredictorCurve::new("uniform", 0, values))
}

/// First-order expansion of the with-replacement cover, `(<k> + 1) t`.
pub fn uniform_replace_linear(dd: &DegreeDistribution, n: usize, t: usize) -> Result<f64> {
    check_support(dd, n)?;
    Ok((dd.mean() + 1.0) * t as f64)
}

/// Uniform sampling without replacement, approximating the per-step cover
/// probability by `(k+1) / <W(h)>`. Factors are clamped into `[0, 1]` and the
/// recursion stops once fewer than one node is expected to remain uncovered.
pub fn uniform_noreplace_curve(
    dd: &DegreeDistribution,
    n: usize,
    horizon: usize,
) -> Result<PredictorCurve> {
    if horizon > n {
        return Err(Error::InvalidArgument(format!(
            "horizon {horizon} exceeds {n} nodes"
        )));
    }
    let nf = n as f64;
    let classes: Vec<(f64, f64)> = dd.iter().map(|(k, p)| ((k + 1) as f64, p)).collect();
    // running products, one per degree class
    let mut survive = vec![1.0f64; classes.len()];
    let mut uncovered = nf;
    let mut values = vec![0.0];
    for _ in 1..=horizon {
        if uncovered < 1.0 {
            break;
        }
        for (s, &(k1, _)) in survive.iter_mut().zip(&classes) {
            *s *= (1.0 - k1 / uncovered).clamp(0.0, 1.0);
        }
        uncovered = nf * classes.iter().zip(&survive).map(|(&(_, p), s)| p * s).sum::<f64>();
        values.push(nf - uncovered);
    }
    Ok(PredictorCurve::new("uniform-nr", 0, values))
}
