use crate::error::{Error, Result};

/// New nodes revealed per recruited node of BFS ring `t` on an infinite
/// lattice: `1 + 1/t` in 2D and `(1 + 2(t+1)^2) / (1 + 2t^2)` in 3D.
pub fn grid_bfs_yield(dim: usize, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("ring index must be at least 1".into()));
    }
    let t = t as f64;
    match dim {
        2 => Ok(1.0 + 1.0 / t),
        3 => Ok((1.0 + 2.0 * (t + 1.0).powi(2)) / (1.0 + 2.0 * t * t)),
        _ => Err(Error::InvalidArgument(format!(
            "grid yield is defined for 2 or 3 dimensions, got {dim}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert!((grid_bfs_yield(2, 10).unwrap() - 1.1).abs() < 1e-15);
        assert_eq!(grid_bfs_yield(3, 1).unwrap(), 3.0);
        for d in [2, 3] {
            assert!((grid_bfs_yield(d, 1_000_000).unwrap() - 1.0).abs() < 1e-5);
        }
        assert!(grid_bfs_yield(4, 2).is_err());
        assert!(grid_bfs_yield(2, 0).is_err());
    }
}
