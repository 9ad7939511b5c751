//! Analytic predictors of the expected cover, frontier and undiscovered-edge
//! counts, plus the expected excess-degree calculus used by MEED.
//!
//! Every curve is indexed by payments `t`, the same axis as simulation traces,
//! so curves and [`crate::harness::TraceStats`] can be compared row by row.

mod excess;
mod grid;
mod meanfield;
mod series;
mod uniform;
mod walk;

pub use excess::{
    binomial_degrees, conditional_degree, er_excess, excess_moment_ratio, excess_recursion,
    falling_factorial_moment, powerlaw_excess, truncated_powerlaw, ExcessLevel, ExcessTable,
};
pub use grid::grid_bfs_yield;
pub use meanfield::{si_meanfield, MeanField, MeanFieldState, SiPrediction};
pub use series::{gamma_d_tau2, polylog};
pub use uniform::{uniform_noreplace_curve, uniform_replace_curve, uniform_replace_linear};
pub use walk::{rw_exact_taboo, rw_linear, rw_steady_curve, rwnr_curve, RwnrPrediction};

/// A predicted quantity over consecutive payment counts `start, start+1, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictorCurve {
    pub model: String,
    pub start: usize,
    pub values: Vec<f64>,
}

impl PredictorCurve {
    pub fn new(model: impl Into<String>, start: usize, values: Vec<f64>) -> Self {
        PredictorCurve {
            model: model.into(),
            start,
            values,
        }
    }

    pub fn value_at(&self, t: usize) -> Option<f64> {
        t.checked_sub(self.start)
            .and_then(|i| self.values.get(i))
            .copied()
    }

    /// Last `t` with a value.
    pub fn end(&self) -> Option<usize> {
        (!self.values.is_empty()).then(|| self.start + self.values.len() - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.start + i, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
