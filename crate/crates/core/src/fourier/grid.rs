use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid on `[-P/2, P/2)` with `N` samples.
///
/// Mode indices run over `-N/2+1 ..= N/2`; mode `n` oscillates at the
/// physical frequency `2 pi n / P`. Coefficient vectors are stored in FFT
/// order: slot `k` holds mode `k` for `k <= N/2` and mode `k - N` above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicGrid {
    num_points: usize,
    period: f64,
}

impl PeriodicGrid {
    pub const MIN_POINTS: usize = 8;

    pub fn new(num_points: usize, period: f64) -> Result<Self> {
        if !num_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "number of points must be even, got {num_points}"
            )));
        }
        if num_points < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} points, got {num_points}",
                Self::MIN_POINTS
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "period must be positive, got {period}"
            )));
        }
        Ok(Self { num_points, period })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Largest stored mode, `N/2`.
    pub fn nyquist(&self) -> i64 {
        (self.num_points / 2) as i64
    }

    /// Mode index held in storage slot `k`.
    pub fn mode(&self, k: usize) -> i64 {
        let n = self.num_points as i64;
        let k = k as i64;
        if k <= n / 2 {
            k
        } else {
            k - n
        }
    }

    /// Storage slot of mode `n`, if the grid resolves it.
    pub fn slot(&self, n: i64) -> Option<usize> {
        let half = self.nyquist();
        if n > half || n <= -half {
            None
        } else if n >= 0 {
            Some(n as usize)
        } else {
            Some((n + self.num_points as i64) as usize)
        }
    }

    /// Physical frequency `2 pi n / P` of mode `n`.
    pub fn frequency(&self, n: i64) -> f64 {
        2.0 * PI * n as f64 / self.period
    }

    /// Modes in storage order.
    pub fn modes(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.num_points).map(move |k| self.mode(k))
    }

    /// Frequencies in storage order.
    pub fn frequencies(&self) -> Vec<f64> {
        self.modes().map(|n| self.frequency(n)).collect()
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.num_points as f64
    }

    /// Sample point `x_j = -P/2 + j P / N`.
    pub fn point(&self, j: usize) -> f64 {
        -0.5 * self.period + j as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.num_points).map(|j| self.point(j)).collect()
    }

    /// Same period, different resolution.
    pub fn with_points(&self, num_points: usize) -> Result<Self> {
        Self::new(num_points, self.period)
    }

    /// Grids compare equal when both resolution and period agree to
    /// round-off.
    pub fn same_as(&self, other: &Self) -> bool {
        self.num_points == other.num_points
            && (self.period - other.period).abs() <= 1e-12 * self.period.max(other.period)
    }
}

/// Checked constructor: even `N >= 8`, positive period.
pub fn make_grid(num_points: usize, period: f64) -> Result<PeriodicGrid> {
    PeriodicGrid::new(num_points, period)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_frequency_when_period_is_two_pi() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let mut modes: Vec<i64> = g.modes().collect();
        modes.sort();
        assert_eq!(modes, vec![-3, -2, -1, 0, 1, 2, 3, 4]);
        for n in modes {
            assert!((g.frequency(n) - n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn half_frequency_for_four_pi() {
        let g = make_grid(256, 4.0 * PI).unwrap();
        assert!((g.frequency(1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(make_grid(7, 1.0).is_err());
        assert!(make_grid(6, 1.0).is_err());
        assert!(make_grid(8, 0.0).is_err());
        assert!(make_grid(8, -1.0).is_err());
        assert!(make_grid(8, f64::NAN).is_err());
    }

    #[test]
    fn slots_and_modes_are_inverse() {
        let g = make_grid(16, 3.0).unwrap();
        for k in 0..16 {
            assert_eq!(g.slot(g.mode(k)), Some(k));
        }
        assert_eq!(g.slot(-8), None);
        assert_eq!(g.slot(9), None);
        assert!((g.point(0) + 1.5).abs() < 1e-15);
    }
}
