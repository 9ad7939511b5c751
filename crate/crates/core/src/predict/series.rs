use crate::error::{Error, Result};

pub(crate) const SERIES_TOL: f64 = 1e-10;
pub(crate) const SERIES_CAP: usize = 1_000_000;

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "cutoff parameter must lie in (0, 1), got {c}"
        )));
    }
    Ok(())
}

/// Sums `first, first*r(0), first*r(0)*r(1), ...` until a term past the peak
/// drops below the tolerance relative to the running sum.
fn ratio_series(first: f64, ratio: impl Fn(usize) -> f64) -> Result<f64> {
    let mut term = first;
    let mut sum = first;
    for m in 0..SERIES_CAP {
        let r = ratio(m);
        let next = term * r;
        sum += next;
        if r < 1.0 && next.abs() <= SERIES_TOL * sum.abs() {
            return Ok(sum);
        }
        term = next;
    }
    Err(Error::NoConvergence(SERIES_CAP))
}

/// `Gamma_d` for a `k^-2 C^k` distribution:
/// `sum_m C^(m+1) (m+d+1)! / ((m+d+2) m!)  /  sum_m C^m (m+d)! / ((m+d+1) m!)`.
///
/// Both sums are scaled by `1/d!` and generated by their term ratios, so
/// large `d` does not overflow.
pub fn gamma_d_tau2(c: f64, d: usize) -> Result<f64> {
    check_c(c)?;
    let df = d as f64;
    let num = ratio_series(c * (df + 1.0) / (df + 2.0), |m| {
        let a = m as f64 + df + 2.0;
        c * a / (m as f64 + 1.0) * a / (a + 1.0)
    })?;
    let den = ratio_series(1.0 / (df + 1.0), |m| {
        let a = m as f64 + df + 1.0;
        c * a / (m as f64 + 1.0) * a / (a + 1.0)
    })?;
    Ok(num / den)
}

/// `Li_s(x) = sum_k x^k / k^s` for `|x| < 1`.
pub fn polylog(s: f64, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "polylog argument must satisfy |x| < 1, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if s == 1.0 {
        return Ok(-(-x).ln_1p());
    }
    let mut sum = 0.0;
    let mut xk = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..=SERIES_CAP {
        xk *= x;
        let term = xk / (k as f64).powf(s);
        sum += term;
        if term.abs() < SERIES_TOL && term.abs() <= prev {
            return Ok(sum);
        }
        prev = term.abs();
    }
    Err(Error::NoConvergence(SERIES_CAP))
}
