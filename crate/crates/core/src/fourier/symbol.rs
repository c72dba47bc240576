use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::PeriodicGrid;
use crate::error::{Error, Result};

/// Fourier multipliers used throughout the crate.
///
/// Symbols that mention `xi` act on the physical frequency `2 pi n / P`;
/// `Bessel` and `LambdaSmooth` use the integer mode index directly, the
/// same convention as the Sobolev norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum SymbolSpec {
    /// `-i sgn(n)`, with `sgn(0) = 0`.
    Hilbert,
    /// `|xi|`, the symbol of `H d/dx`.
    HilbertDeriv,
    /// `xi^2`, the symbol of `-d^2/dx^2`.
    NegSecondDeriv,
    /// `(1 + n^2)^(s/2)`.
    Bessel { s: f64 },
    /// `|xi|^(1/2)`.
    HalfDeriv,
    /// `(1 + |n|)^(-1)`.
    LambdaSmooth,
    /// `-i xi / (1 + |xi|)`.
    KRbo,
    /// `exp(-i t xi / (1 + |xi|))`, the linear rBO propagator.
    Semigroup { t: f64 },
    /// `i xi`.
    Deriv,
    /// Tabulated values keyed by mode.
    Custom { table: BTreeMap<i64, Complex64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Real values, even in `n`.
    RealEven,
    /// Purely imaginary values, odd in `n`.
    ImaginaryOdd,
    /// Anything else.
    General,
}

impl SymbolSpec {
    /// Value at mode `n` (physical frequency `xi`).
    pub fn eval(&self, n: i64, xi: f64) -> Result<Complex64> {
        let i = Complex64::i();
        let nf = n as f64;
        Ok(match self {
            SymbolSpec::Hilbert => -i * signum0(nf),
            SymbolSpec::HilbertDeriv => Complex64::from(xi.abs()),
            SymbolSpec::NegSecondDeriv => Complex64::from(xi * xi),
            SymbolSpec::Bessel { s } => Complex64::from((1.0 + nf * nf).powf(0.5 * s)),
            SymbolSpec::HalfDeriv => Complex64::from(xi.abs().sqrt()),
            SymbolSpec::LambdaSmooth => Complex64::from(1.0 / (1.0 + nf.abs())),
            SymbolSpec::KRbo => -i * xi / (1.0 + xi.abs()),
            SymbolSpec::Semigroup { t } => (-i * (t * xi / (1.0 + xi.abs()))).exp(),
            SymbolSpec::Deriv => i * xi,
            SymbolSpec::Custom { table } => *table.get(&n).ok_or(Error::SymbolUndefined(n))?,
        })
    }

    pub fn parity(&self) -> Parity {
        match self {
            SymbolSpec::Hilbert | SymbolSpec::KRbo | SymbolSpec::Deriv => Parity::ImaginaryOdd,
            SymbolSpec::HilbertDeriv
            | SymbolSpec::NegSecondDeriv
            | SymbolSpec::Bessel { .. }
            | SymbolSpec::HalfDeriv
            | SymbolSpec::LambdaSmooth => Parity::RealEven,
            SymbolSpec::Semigroup { .. } => Parity::General,
            SymbolSpec::Custom { table } => custom_parity(table),
        }
    }

    /// Real part of the symbol at `xi`, for real even symbols used as
    /// dispersion relations.
    pub fn real_value(&self, n: i64, xi: f64) -> Result<f64> {
        Ok(self.eval(n, xi)?.re)
    }

    /// Multipliers in storage order for `grid`.
    ///
    /// The Nyquist slot stands for the pair `+-N/2`, so it receives the
    /// average of the two symbol values; odd symbols therefore annihilate
    /// it and real fields stay real.
    pub fn multipliers(&self, grid: &PeriodicGrid) -> Result<Vec<Complex64>> {
        let half = grid.nyquist();
        grid.modes()
            .map(|n| {
                if n == half {
                    let up = self.eval(n, grid.frequency(n))?;
                    let down = match self {
                        SymbolSpec::Custom { table } => table.get(&-n).copied().unwrap_or(up),
                        _ => self.eval(-n, grid.frequency(-n))?,
                    };
                    Ok(0.5 * (up + down))
                } else {
                    self.eval(n, grid.frequency(n))
                }
            })
            .collect()
    }

    pub fn label(&self) -> String {
        match self {
            SymbolSpec::Hilbert => "hilbert".into(),
            SymbolSpec::HilbertDeriv => "hilbert_deriv".into(),
            SymbolSpec::NegSecondDeriv => "neg_second_deriv".into(),
            SymbolSpec::Bessel { s } => format!("bessel({s})"),
            SymbolSpec::HalfDeriv => "half_deriv".into(),
            SymbolSpec::LambdaSmooth => "lambda_smooth".into(),
            SymbolSpec::KRbo => "k_rbo".into(),
            SymbolSpec::Semigroup { t } => format!("semigroup({t})"),
            SymbolSpec::Deriv => "deriv".into(),
            SymbolSpec::Custom { .. } => "custom".into(),
        }
    }
}

fn signum0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn custom_parity(table: &BTreeMap<i64, Complex64>) -> Parity {
    let tol = 1e-14;
    let even = table.iter().all(|(n, v)| {
        v.im.abs() <= tol * v.norm().max(1.0)
            && table
                .get(&-n)
                .is_none_or(|w| (w - v).norm() <= tol * v.norm().max(1.0))
    });
    if even {
        return Parity::RealEven;
    }
    let odd = table.iter().all(|(n, v)| {
        v.re.abs() <= tol * v.norm().max(1.0)
            && table
                .get(&-n)
                .is_none_or(|w| (w + v).norm() <= tol * v.norm().max(1.0))
    });
    if odd {
        Parity::ImaginaryOdd
    } else {
        Parity::General
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_vanishes_at_mean() {
        let h = SymbolSpec::Hilbert;
        assert_eq!(h.eval(0, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(h.eval(3, 3.0).unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(h.eval(-3, -3.0).unwrap(), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn parities() {
        assert_eq!(SymbolSpec::KRbo.parity(), Parity::ImaginaryOdd);
        assert_eq!(SymbolSpec::NegSecondDeriv.parity(), Parity::RealEven);
        assert_eq!(SymbolSpec::Semigroup { t: 1.0 }.parity(), Parity::General);
        let table: BTreeMap<i64, Complex64> = (-4..=4)
            .map(|n| (n, Complex64::from((n * n) as f64)))
            .collect();
        assert_eq!(SymbolSpec::Custom { table }.parity(), Parity::RealEven);
    }

    #[test]
    fn custom_table_must_cover_the_grid() {
        let grid = PeriodicGrid::new(8, 1.0).unwrap();
        let table: BTreeMap<i64, Complex64> = (-2..=2).map(|n| (n, Complex64::from(1.0))).collect();
        let err = SymbolSpec::Custom { table }.multipliers(&grid).unwrap_err();
        assert!(matches!(err, Error::SymbolUndefined(_)));
    }

    #[test]
    fn odd_symbols_kill_nyquist() {
        let grid = PeriodicGrid::new(8, 2.0 * std::f64::consts::PI).unwrap();
        let m = SymbolSpec::Deriv.multipliers(&grid).unwrap();
        assert_eq!(m[4], Complex64::new(0.0, 0.0));
        let k = SymbolSpec::KRbo.multipliers(&grid).unwrap();
        assert!((k[1] - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }
}
