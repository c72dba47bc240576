use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fft;
use super::grid::PeriodicGrid;
use super::symbol::SymbolSpec;
use crate::error::{Error, Result};

/// Fourier coefficients of a real periodic function.
///
/// `coeff(n) = (1/N) sum_j f(x_j) exp(-i xi_n x_j)`, the discrete version
/// of `(1/P) int f exp(-i xi_n x) dx`. Storage follows
/// [`PeriodicGrid`]'s FFT order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralField {
    grid: PeriodicGrid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.num_points()],
        }
    }

    pub fn from_coeffs(grid: PeriodicGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.num_points() {
            return Err(Error::LengthMismatch {
                expected: grid.num_points(),
                got: coeffs.len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    /// Coefficients given as a function of the mode index.
    pub fn from_modes(grid: PeriodicGrid, f: impl Fn(i64) -> Complex64) -> Self {
        let coeffs = grid.modes().map(f).collect();
        Self { grid, coeffs }
    }

    /// Samples a function at the grid points and transforms.
    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64) -> f64) -> Self {
        let samples: Vec<f64> = grid.points().into_iter().map(f).collect();
        Self::from_samples(grid, &samples).expect("length matches by construction")
    }

    pub fn from_samples(grid: PeriodicGrid, samples: &[f64]) -> Result<Self> {
        let n = grid.num_points();
        if samples.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: samples.len(),
            });
        }
        let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::from(x)).collect();
        fft::forward(&mut buf);
        let scale = 1.0 / n as f64;
        // x_0 = -P/2 contributes the phase exp(i pi n) = (-1)^k
        for (k, c) in buf.iter_mut().enumerate() {
            *c *= if k % 2 == 0 { scale } else { -scale };
        }
        Ok(Self { grid, coeffs: buf })
    }

    /// Values at the grid points `x_j`.
    pub fn to_samples(&self) -> Vec<f64> {
        let mut buf: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
            .collect();
        fft::inverse(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of mode `n`; zero outside the grid.
    pub fn coeff(&self, n: i64) -> Complex64 {
        self.grid
            .slot(n)
            .map(|k| self.coeffs[k])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Worst relative violation of `coeff(-n) = conj(coeff(n))`.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = self.max_coeff().max(f64::MIN_POSITIVE);
        let half = self.grid.nyquist();
        let mut worst = self.coeff(0).im.abs() / scale;
        for n in 1..half {
            worst = worst.max((self.coeff(-n) - self.coeff(n).conj()).norm() / scale);
        }
        worst.max(self.coeff(half).im.abs() / scale)
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Maximum of `|f(x_j)|` over the grid.
    pub fn max_abs(&self) -> f64 {
        self.to_samples()
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn apply(&self, symbol: &SymbolSpec) -> Result<Self> {
        let m = symbol.multipliers(&self.grid)?;
        Ok(self.scale_by(&m))
    }

    /// Pointwise multiplication of the coefficients by precomputed
    /// multipliers in storage order.
    pub fn scale_by(&self, multipliers: &[Complex64]) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(multipliers)
            .map(|(c, m)| c * m)
            .collect();
        Self {
            grid: self.grid,
            coeffs,
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y * a)
            .collect();
        Ok(Self {
            grid: self.grid,
            coeffs,
        })
    }

    /// `f(. + y)`: multiplies mode `n` by `exp(i xi_n y)`.
    pub fn translate(&self, y: f64) -> Self {
        let half = self.grid.nyquist();
        let coeffs = self
            .grid
            .modes()
            .zip(&self.coeffs)
            .map(|(n, c)| {
                let phase = self.grid.frequency(n) * y;
                if n == half {
                    // real cosine pair: keep the real average of both phases
                    c * phase.cos()
                } else {
                    c * Complex64::from_polar(1.0, phase)
                }
            })
            .collect();
        Self {
            grid: self.grid,
            coeffs,
        }
    }

    /// `sqrt(P sum_n (1 + n^2)^s |f_n|^2)` with the integer mode index.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let sum: f64 = self
            .grid
            .modes()
            .zip(&self.coeffs)
            .map(|(n, c)| (1.0 + (n * n) as f64).powf(s) * c.norm_sqr())
            .sum();
        (self.grid.period() * sum).sqrt()
    }

    /// `sqrt(P sum_n w_n |f_n|^2)` for an arbitrary weight per mode.
    pub fn weighted_norm(&self, weight: impl Fn(i64, f64) -> f64) -> f64 {
        let sum: f64 = self
            .grid
            .modes()
            .zip(&self.coeffs)
            .map(|(n, c)| weight(n, self.grid.frequency(n)) * c.norm_sqr())
            .sum();
        (self.grid.period() * sum).sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.sobolev_norm(0.0)
    }

    /// `sqrt(||D^(1/2) f||^2 + ((c-1)/c) ||f||^2)`.
    pub fn weighted_half_norm(&self, c: f64) -> Result<f64> {
        if !(c > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "weighted half norm needs c > 1, got {c}"
            )));
        }
        let w = (c - 1.0) / c;
        Ok(self.weighted_norm(|_, xi| xi.abs() + w))
    }

    /// `P sum_n f_n conj(g_n)`, real part. The imaginary residual of real
    /// fields is round-off only; debug builds assert it.
    pub fn inner_product(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        let z: Complex64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(f, g)| f * g.conj())
            .sum();
        let p = self.grid.period();
        debug_assert!(
            z.im.abs() <= 1e-10 * z.norm().max(1.0),
            "inner product of non-real fields: {z}"
        );
        Ok(p * z.re)
    }

    /// Coefficients of the product `f g`, computed by zero padding to `2N`
    /// so the truncated convolution is alias free.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let m = 2 * self.grid.num_points();
        let mut a = pad(&self.grid, &self.coeffs, m);
        let mut b = pad(&self.grid, &other.coeffs, m);
        fft::inverse(&mut a);
        fft::inverse(&mut b);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= y;
        }
        fft::forward(&mut a);
        let scale = 1.0 / m as f64;
        a.iter_mut().for_each(|c| *c *= scale);
        Ok(Self {
            grid: self.grid,
            coeffs: fold(&self.grid, &a),
        })
    }

    /// Coefficients of `f^p` via a padded grid large enough to keep the
    /// retained modes exact.
    pub fn power(&self, p: u32) -> Self {
        self.map_padded(p, |v| v.powi(p as i32))
    }

    /// Applies a polynomial-degree-`degree` pointwise map on a padded grid
    /// and folds back to this grid. With `max(2, degree) N` points the
    /// retained modes are alias free.
    pub fn map_padded(&self, degree: u32, f: impl Fn(f64) -> f64) -> Self {
        let m = padded_len(degree, self.grid.num_points());
        let mut a = pad(&self.grid, &self.coeffs, m);
        fft::inverse(&mut a);
        for c in a.iter_mut() {
            *c = Complex64::from(f(c.re));
        }
        fft::forward(&mut a);
        let scale = 1.0 / m as f64;
        a.iter_mut().for_each(|c| *c *= scale);
        Self {
            grid: self.grid,
            coeffs: fold(&self.grid, &a),
        }
    }

    /// Integral of `f^p` over one period, exact for bandlimited `f`.
    pub fn integral_of_power(&self, p: u32) -> f64 {
        let m = padded_len(p, self.grid.num_points());
        let mut a = pad(&self.grid, &self.coeffs, m);
        fft::inverse(&mut a);
        let mean: f64 = a.iter().map(|c| c.re.powi(p as i32)).sum::<f64>() / m as f64;
        mean * self.grid.period()
    }

    /// Same function on a finer (or coarser) grid of the same period.
    pub fn resample(&self, num_points: usize) -> Result<Self> {
        let grid = self.grid.with_points(num_points)?;
        Ok(Self::from_modes(grid, |n| {
            if n == grid.nyquist() && n < self.grid.nyquist() {
                // split the old pair into the new cosine slot
                self.coeff(n) + self.coeff(-n)
            } else if n == self.grid.nyquist() && n < grid.nyquist() {
                0.5 * self.coeff(n)
            } else if -n == self.grid.nyquist() {
                0.5 * self.coeff(-n).conj()
            } else {
                self.coeff(n)
            }
        }))
    }
}

fn padded_len(degree: u32, n: usize) -> usize {
    degree.max(2) as usize * n
}

/// Embeds coefficients into a length-`m` FFT-order buffer, splitting the
/// Nyquist slot evenly between `+-N/2`.
pub(crate) fn pad(grid: &PeriodicGrid, coeffs: &[Complex64], m: usize) -> Vec<Complex64> {
    let n = grid.num_points();
    let half = n / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    out[..half].copy_from_slice(&coeffs[..half]);
    for k in 1..half {
        out[m - k] = coeffs[n - k];
    }
    if m > n {
        out[half] = 0.5 * coeffs[half];
        out[m - half] = 0.5 * coeffs[half];
    } else {
        out[half] = coeffs[half];
    }
    out
}

/// Truncates a padded buffer back to `grid`, folding `+-N/2` into the
/// Nyquist slot.
pub(crate) fn fold(grid: &PeriodicGrid, big: &[Complex64]) -> Vec<Complex64> {
    let n = grid.num_points();
    let m = big.len();
    let half = n / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    out[..half].copy_from_slice(&big[..half]);
    for k in 1..half {
        out[n - k] = big[m - k];
    }
    out[half] = if m > n {
        big[half] + big[m - half]
    } else {
        big[half]
    };
    out
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: Self) -> SpectralField {
        self.axpy(1.0, rhs).expect("fields on the same grid")
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: Self) -> SpectralField {
        self.axpy(-1.0, rhs).expect("fields on the same grid")
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: f64) -> SpectralField {
        self.scale(rhs)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn grid(n: usize) -> PeriodicGrid {
        PeriodicGrid::new(n, 2.0 * PI).unwrap()
    }

    #[test]
    fn cosine_has_two_half_coefficients() {
        let f = SpectralField::from_fn(grid(64), f64::cos);
        for n in -31..=32 {
            let c = f.coeff(n);
            if n.abs() == 1 {
                assert!((c - Complex64::from(0.5)).norm() < 1e-15);
            } else {
                assert!(c.norm() < 1e-14, "mode {n}: {c}");
            }
        }
    }

    #[test]
    fn constant_is_pure_mean() {
        let f = SpectralField::from_fn(grid(16), |_| 1.0);
        assert!((f.coeff(0) - Complex64::from(1.0)).norm() < 1e-15);
        assert!(f.coeffs()[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn length_mismatch_is_reported() {
        let err = SpectralField::from_samples(grid(16), &[0.0; 15]).unwrap_err();
        assert!(matches!(
            err,
            Error::LengthMismatch {
                expected: 16,
                got: 15
            }
        ));
    }

    #[test]
    fn sobolev_norms_of_cosine() {
        let f = SpectralField::from_fn(grid(32), f64::cos);
        assert!((f.sobolev_norm(0.0) - PI.sqrt()).abs() < 1e-13);
        assert!((f.sobolev_norm(1.0) - (2.0 * PI).sqrt()).abs() < 1e-13);
        assert_eq!(SpectralField::zeros(grid(32)).sobolev_norm(3.0), 0.0);
    }

    #[test]
    fn weighted_half_norm_values() {
        let one = SpectralField::from_fn(grid(32), |_| 1.0);
        assert!((one.weighted_half_norm(2.0).unwrap() - PI.sqrt()).abs() < 1e-13);
        let f = SpectralField::from_fn(grid(32), f64::cos);
        let want = (PI + 0.5 * PI).sqrt();
        assert!((f.weighted_half_norm(2.0).unwrap() - want).abs() < 1e-13);
        assert!(f.weighted_half_norm(1.0).is_err());
        let a = f.weighted_half_norm(3.0).unwrap();
        let b = f.weighted_half_norm(30.0).unwrap();
        assert!(b > a);
    }

    #[test]
    fn orthogonality_and_grid_mismatch() {
        let f = SpectralField::from_fn(grid(32), f64::cos);
        let g = SpectralField::from_fn(grid(32), f64::sin);
        assert!(f.inner_product(&g).unwrap().abs() < 1e-14);
        let h = SpectralField::from_fn(grid(16), f64::sin);
        assert!(matches!(f.inner_product(&h), Err(Error::GridMismatch)));
        assert!(f.convolve(&h).is_err());
    }

    #[test]
    fn convolution_with_constant_scales() {
        let two = SpectralField::from_fn(grid(32), |_| 2.0);
        let f = SpectralField::from_fn(grid(32), |x| (2.0 * x).sin() + 0.3);
        let g = f.convolve(&two).unwrap();
        for n in -15..=16 {
            assert!((g.coeff(n) - 2.0 * f.coeff(n)).norm() < 1e-14);
        }
    }

    #[test]
    fn translate_shifts_samples() {
        let f = SpectralField::from_fn(grid(32), |x| x.cos() + 0.2 * (3.0 * x).sin());
        let g = f.translate(0.7);
        let expect = SpectralField::from_fn(grid(32), |x| {
            (x + 0.7).cos() + 0.2 * (3.0 * (x + 0.7)).sin()
        });
        assert!((&g - &expect).max_coeff() < 1e-14);
    }

    #[test]
    fn resample_keeps_the_function() {
        let f = SpectralField::from_fn(grid(16), |x| (x.sin()).exp());
        let up = f.resample(64).unwrap();
        let back = up.resample(16).unwrap();
        assert!((&back - &f).max_coeff() < 1e-15);
        let x = up.grid().point(5);
        assert!((up.to_samples()[5] - f.to_samples_at(x)).abs() < 1e-9);
    }

    impl SpectralField {
        fn to_samples_at(&self, x: f64) -> f64 {
            self.grid
                .modes()
                .map(|n| {
                    let xi = self.grid.frequency(n);
                    if n == self.grid.nyquist() {
                        self.coeff(n).re * (xi * x).cos()
                    } else {
                        (self.coeff(n) * Complex64::from_polar(1.0, xi * x)).re
                    }
                })
                .sum()
        }
    }
}
