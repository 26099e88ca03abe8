//! Uniform one-dimensional grids (SI meters or dimensionless coordinates).

use crate::error::{Error, Result};

/// Uniform grid of `n_points` nodes spanning `[x_min, x_max]` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    /// Left endpoint (included as a node).
    pub x_min: f64,
    /// Right endpoint (included as a node).
    pub x_max: f64,
    /// Number of nodes, >= 3.
    pub n_points: usize,
}

impl Grid1D {
    /// Validates `x_min < x_max` (finite) and `n_points >= 3`.
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::invalid(
                "grid bounds",
                format!("need finite x_min < x_max, got [{x_min:e}, {x_max:e}]"),
            ));
        }
        if n_points < 3 {
            return Err(Error::invalid(
                "n_points",
                format!("need at least 3 nodes, got {n_points}"),
            ));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Node spacing `(x_max - x_min) / (n_points - 1)`.
    #[inline]
    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    /// Coordinate of node `j` (0-based).
    #[inline]
    pub fn point(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.spacing()
    }

    /// All node coordinates in order.
    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.point(j)).collect()
    }
}
