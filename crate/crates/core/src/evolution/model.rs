use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{Parity, PeriodicGrid, SpectralField, SymbolSpec};

/// `u_t = K (u + u^{p+1} / (p+1))` with `K = -i xi / (1 + alpha(xi))`.
///
/// `alpha = |xi|` gives the regularized Benjamin-Ono equation and
/// `alpha = xi^2` the BBM equation.
#[derive(Debug, Clone)]
pub struct Model {
    grid: PeriodicGrid,
    p: u32,
    dispersion: SymbolSpec,
    alpha: Vec<f64>,
    k: Vec<Complex64>,
    nonlinear: bool,
}

impl Model {
    pub fn new(grid: PeriodicGrid, p: u32, dispersion: SymbolSpec) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter(
                "nonlinearity power must be >= 1".into(),
            ));
        }
        if dispersion.parity() != Parity::RealEven {
            return Err(Error::OddSymbol);
        }
        let alpha: Vec<f64> = dispersion
            .multipliers(&grid)?
            .into_iter()
            .map(|z| z.re)
            .collect();
        let half = grid.nyquist();
        let mut k = Vec::with_capacity(alpha.len());
        for (n, &a) in grid.modes().zip(&alpha) {
            if !(1.0 + a > 1e-12) {
                return Err(Error::NonInvertibleSymbol(n));
            }
            // odd multiplier: the Nyquist pair cancels
            k.push(if n == half {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, -grid.frequency(n) / (1.0 + a))
            });
        }
        Ok(Self {
            grid,
            p,
            dispersion,
            alpha,
            k,
            nonlinear: true,
        })
    }

    pub fn rbo(grid: PeriodicGrid) -> Self {
        Self::new(grid, 1, SymbolSpec::HilbertDeriv).expect("|xi| is admissible")
    }

    pub fn bbm(grid: PeriodicGrid) -> Self {
        Self::new(grid, 1, SymbolSpec::NegSecondDeriv).expect("xi^2 is admissible")
    }

    /// Drops the nonlinear term.
    pub fn linearized(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    /// The same equation run backwards in time.
    pub fn reversed(mut self) -> Self {
        self.k.iter_mut().for_each(|z| *z = -*z);
        self
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn power(&self) -> u32 {
        self.p
    }

    pub fn dispersion(&self) -> &SymbolSpec {
        &self.dispersion
    }

    /// `u + u^{p+1}/(p+1)`, the nonlinear part formed on a padded grid.
    pub fn flux(&self, u: &SpectralField) -> SpectralField {
        if !self.nonlinear {
            return u.clone();
        }
        let q = self.p + 1;
        let inv = 1.0 / q as f64;
        u.map_padded(q, |v| v + v.powi(q as i32) * inv)
    }

    /// Time derivative `K (u + u^{p+1}/(p+1))`.
    pub fn rhs(&self, u: &SpectralField) -> Result<SpectralField> {
        if !u.grid().same_as(&self.grid) {
            return Err(Error::GridMismatch);
        }
        Ok(self.flux(u).scale_by(&self.k))
    }

    pub fn conserved(&self, u: &SpectralField) -> Conserved {
        let p_len = self.grid.period();
        let (mut quad, mut l2) = (0.0, 0.0);
        for (c, &a) in u.coeffs().iter().zip(&self.alpha) {
            let m = c.norm_sqr();
            quad += a * m;
            l2 += m;
        }
        quad *= p_len;
        l2 *= p_len;
        let q = self.p + 2;
        let power = u.integral_of_power(q);
        let coef = 2.0 / ((self.p + 1) as f64 * q as f64);
        Conserved {
            e: 0.5 * (quad - coef * power),
            f: 0.5 * (quad + l2),
            g: p_len * u.mean(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conserved {
    /// `1/2 int (u H u - 2 u^{p+2} / ((p+1)(p+2)))`.
    pub e: f64,
    /// `1/2 int (u H u + u^2)`.
    pub f: f64,
    /// `int u`.
    pub g: f64,
}

/// Free-function form of [`Model::rhs`].
pub fn rhs(u: &SpectralField, p: u32, dispersion: &SymbolSpec) -> Result<SpectralField> {
    Model::new(*u.grid(), p, dispersion.clone())?.rhs(u)
}

/// Free-function form of [`Model::conserved`].
pub fn conserved(u: &SpectralField, p: u32, dispersion: &SymbolSpec) -> Result<Conserved> {
    Ok(Model::new(*u.grid(), p, dispersion.clone())?.conserved(u))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::waves::rbo_wave;

    fn grid() -> PeriodicGrid {
        PeriodicGrid::new(64, 2.0 * PI).unwrap()
    }

    #[test]
    fn linear_part_on_a_cosine() {
        let u = SpectralField::from_fn(grid(), f64::cos);
        let m = Model::rbo(grid()).linearized();
        let r = m.rhs(&u).unwrap();
        assert!((r.coeff(1) - Complex64::new(0.0, -0.25)).norm() < 1e-15);
        assert!((r.coeff(-1) - Complex64::new(0.0, 0.25)).norm() < 1e-15);
    }

    #[test]
    fn constants_do_not_move() {
        let u = SpectralField::from_fn(grid(), |_| 3.0);
        let r = rhs(&u, 1, &SymbolSpec::HilbertDeriv).unwrap();
        assert!(r.max_coeff() < 1e-15);
    }

    #[test]
    fn travelling_wave_identity() {
        let l = 2.0 * PI;
        let g = PeriodicGrid::new(256, 2.0 * l).unwrap();
        let w = rbo_wave(4.0, l, g).unwrap();
        let m = Model::rbo(g);
        let r = m.rhs(&w.field).unwrap();
        let dx = w.field.apply(&SymbolSpec::Deriv).unwrap();
        let res = r.axpy(w.speed, &dx).unwrap();
        assert!(res.max_abs() < 1e-9);
    }

    #[test]
    fn conserved_values() {
        let u = SpectralField::from_fn(grid(), f64::cos);
        let c = conserved(&u, 1, &SymbolSpec::HilbertDeriv).unwrap();
        assert!((c.f - PI).abs() < 1e-13);
        assert!(c.g.abs() < 1e-14);
        // int cos^3 = 0
        assert!((c.e - 0.5 * PI).abs() < 1e-13);
        let z = conserved(&SpectralField::zeros(grid()), 1, &SymbolSpec::HilbertDeriv).unwrap();
        assert_eq!((z.e, z.f, z.g), (0.0, 0.0, 0.0));
    }

    #[test]
    fn bad_symbols_are_rejected() {
        assert!(matches!(
            Model::new(grid(), 1, SymbolSpec::KRbo),
            Err(Error::OddSymbol)
        ));
        let table = (-31..=32)
            .map(|n| {
                (
                    n,
                    Complex64::from(if n == 3 || n == -3 { -1.0 } else { 1.0 }),
                )
            })
            .collect();
        assert!(matches!(
            Model::new(grid(), 1, SymbolSpec::Custom { table }),
            Err(Error::NonInvertibleSymbol(_))
        ));
    }
}
