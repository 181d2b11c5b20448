use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// Uniform collocation grid on the dilated torus `R / (2 pi lambda Z)`.
///
/// Retained modes are `n = -N/2 ..= N/2 - 1`, with physical frequency
/// `n / lambda`. Coefficient arrays throughout the crate are stored in this
/// mode order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusGrid {
    lambda: f64,
    n_points: usize,
}

impl TorusGrid {
    pub fn new(lambda: f64, n_points: usize) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(LabError::InvalidGrid(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        if n_points < 8 || !n_points.is_multiple_of(2) {
            return Err(LabError::InvalidGrid(format!(
                "n_points must be even and >= 8, got {n_points}"
            )));
        }
        Ok(Self { lambda, n_points })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn period(&self) -> f64 {
        2.0 * PI * self.lambda
    }

    pub fn node(&self, k: usize) -> f64 {
        self.period() * k as f64 / self.n_points as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.node(k)).collect()
    }

    pub fn min_mode(&self) -> i64 {
        -(self.n_points as i64) / 2
    }

    pub fn max_mode(&self) -> i64 {
        self.n_points as i64 / 2 - 1
    }

    /// Integer mode labels in storage order.
    pub fn modes(&self) -> impl Iterator<Item = i64> + '_ {
        self.min_mode()..=self.max_mode()
    }

    /// Physical frequency `n / lambda` of integer mode `n`.
    pub fn frequency(&self, n: i64) -> f64 {
        n as f64 / self.lambda
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.modes().map(|n| self.frequency(n)).collect()
    }

    /// Storage index of mode `n`, if retained.
    pub fn index_of(&self, n: i64) -> Option<usize> {
        if n < self.min_mode() || n > self.max_mode() {
            None
        } else {
            Some((n - self.min_mode()) as usize)
        }
    }

    pub fn mode_at(&self, index: usize) -> i64 {
        index as i64 + self.min_mode()
    }

    /// Same period, different resolution.
    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::new(self.lambda, n_points)
    }
}

/// Alias matching the constructor naming used by the experiment drivers.
pub fn make_grid(lambda: f64, n_points: usize) -> Result<TorusGrid> {
    TorusGrid::new(lambda, n_points)
}
