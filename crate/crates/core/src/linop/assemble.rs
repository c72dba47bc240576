use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{Parity, PeriodicGrid, SpectralField, SymbolSpec};
use crate::waves::WaveProfile;

/// Truncation of `c alpha(D) + (c - 1) - V` to the modes `|n| <= M`.
///
/// Stored in the real orthonormal basis
/// `{1/sqrt(P), sqrt(2/P) cos(xi_n x), sqrt(2/P) sin(xi_n x)}`, ordered as
/// `[1, cos_1, sin_1, cos_2, sin_2, ...]`. In that basis the operator is a
/// real symmetric matrix.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub modes: usize,
    pub period: f64,
    pub speed: f64,
    pub matrix: DMatrix<f64>,
    /// `c alpha(xi_n) + c - 1` for `n = 0..=M`.
    pub free_diagonal: Vec<f64>,
    /// `sup |V|` on the profile grid.
    pub potential_sup: f64,
}

/// Coefficient of mode `n` of the function a field represents; the
/// Nyquist slot holds the pair `+-N/2`, so each half gets one half.
pub(crate) fn mode_value(field: &SpectralField, n: i64) -> Complex64 {
    let half = field.grid().nyquist();
    if n.abs() == half {
        0.5 * field.coeffs()[half as usize]
    } else {
        field.coeff(n)
    }
}

/// Row of the real basis vector for `cos_n` (`sin_n` is the next row).
fn cos_row(n: usize) -> usize {
    2 * n - 1
}

/// Coordinates of a field in the real orthonormal basis, truncated to
/// `|n| <= m`.
pub fn field_to_vector(field: &SpectralField, m: usize) -> DVector<f64> {
    let p = field.grid().period();
    let mut v = DVector::zeros(2 * m + 1);
    v[0] = p.sqrt() * mode_value(field, 0).re;
    let s = (2.0 * p).sqrt();
    for n in 1..=m {
        let c = mode_value(field, n as i64);
        v[cos_row(n)] = s * c.re;
        v[cos_row(n) + 1] = -s * c.im;
    }
    v
}

/// Inverse of [`field_to_vector`] onto `grid`.
pub fn vector_to_field(v: &DVector<f64>, grid: PeriodicGrid) -> Result<SpectralField> {
    let m = (v.len() - 1) / 2;
    if 2 * m + 1 != v.len() {
        return Err(Error::InvalidParameter(format!(
            "vector length {} is not odd",
            v.len()
        )));
    }
    if m as i64 >= grid.nyquist() {
        return Err(Error::TruncationTooLarge {
            m,
            n: grid.num_points(),
        });
    }
    let p = grid.period();
    let s = (2.0 * p).sqrt();
    Ok(SpectralField::from_modes(grid, |n| {
        let a = n.unsigned_abs() as usize;
        if n == 0 {
            Complex64::from(v[0] / p.sqrt())
        } else if a > m {
            Complex64::new(0.0, 0.0)
        } else {
            let z = Complex64::new(v[cos_row(a)], -v[cos_row(a) + 1]) / s;
            if n > 0 {
                z
            } else {
                z.conj()
            }
        }
    }))
}

/// Assembles the linearization around `profile` with `V = phi^p`.
pub fn assemble(
    profile: &WaveProfile,
    symbol: &SymbolSpec,
    p: u32,
    m: usize,
) -> Result<OperatorMatrix> {
    let potential = profile.field.power(p);
    assemble_with_potential(profile.speed, &potential, symbol, m)
}

/// Assembles `c alpha(D) + (c - 1) - V` for an arbitrary real potential.
pub fn assemble_with_potential(
    speed: f64,
    potential: &SpectralField,
    symbol: &SymbolSpec,
    m: usize,
) -> Result<OperatorMatrix> {
    let grid = *potential.grid();
    if 4 * m > grid.num_points() {
        return Err(Error::TruncationTooLarge {
            m,
            n: grid.num_points(),
        });
    }
    if symbol.parity() != Parity::RealEven {
        return Err(Error::OddSymbol);
    }
    let dim = 2 * m + 1;
    let free_diagonal: Vec<f64> = (0..=m as i64)
        .map(|n| {
            let a = symbol.real_value(n, grid.frequency(n))?;
            Ok(speed * a + speed - 1.0)
        })
        .collect::<Result<_>>()?;
    let v = |d: i64| mode_value(potential, d);
    let mut matrix = DMatrix::zeros(dim, dim);
    let p = grid.period();

    // complex column of the full operator for basis mode n, as
    // (complex coefficient of mode k, for k in -M..=M)
    let apply = |coeffs: &dyn Fn(i64) -> Complex64| -> DVector<f64> {
        let mut out = DVector::zeros(dim);
        let s = (2.0 * p).sqrt();
        let image = |k: i64| -> Complex64 {
            let mut z = free_diagonal[k.unsigned_abs() as usize] * coeffs(k);
            for j in -(m as i64)..=m as i64 {
                let c = coeffs(j);
                if c != Complex64::new(0.0, 0.0) {
                    z -= v(k - j) * c;
                }
            }
            z
        };
        out[0] = p.sqrt() * image(0).re;
        for k in 1..=m {
            let z = image(k as i64);
            out[cos_row(k)] = s * z.re;
            out[cos_row(k) + 1] = -s * z.im;
        }
        out
    };

    let e0 = 1.0 / p.sqrt();
    let col0 = apply(&|j| {
        if j == 0 {
            Complex64::from(e0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    matrix.set_column(0, &col0);
    let s = 1.0 / (2.0 * p).sqrt();
    for n in 1..=m as i64 {
        let cos_col = apply(&|j| {
            if j.abs() == n {
                Complex64::from(s)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let sin_col = apply(&|j| {
            if j == n {
                Complex64::new(0.0, -s)
            } else if j == -n {
                Complex64::new(0.0, s)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        matrix.set_column(cos_row(n as usize), &cos_col);
        matrix.set_column(cos_row(n as usize) + 1, &sin_col);
    }
    let potential_sup = potential.max_abs();
    Ok(OperatorMatrix {
        modes: m,
        period: p,
        speed,
        matrix,
        free_diagonal,
        potential_sup,
    })
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |A - A^T|`.
    pub fn asymmetry(&self) -> f64 {
        let a = &self.matrix;
        let mut worst: f64 = 0.0;
        for i in 0..a.nrows() {
            for j in 0..i {
                worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
            }
        }
        worst
    }

    /// Spectral mode index of each basis row.
    pub fn row_mode(&self, row: usize) -> usize {
        row.div_ceil(2)
    }

    /// Applies the truncated operator to a field and returns the result on
    /// the same grid.
    pub fn apply_field(&self, field: &SpectralField) -> Result<SpectralField> {
        let v = field_to_vector(field, self.modes);
        vector_to_field(&(&self.matrix * v), *field.grid())
    }

    /// Gershgorin certificate for the far tail: returns the first mode
    /// `n0` with `c alpha + c - 1 > 2 sup|V|` and whether every disc from
    /// there on lies in `(0, inf)`.
    pub fn gershgorin_tail(&self) -> (Option<usize>, bool) {
        let n0 = self
            .free_diagonal
            .iter()
            .position(|&d| d > 2.0 * self.potential_sup);
        let Some(n0) = n0 else {
            return (None, false);
        };
        let start = if n0 == 0 { 0 } else { cos_row(n0) };
        let a = &self.matrix;
        let ok = (start..a.nrows()).all(|i| {
            let off: f64 = (0..a.ncols())
                .filter(|&j| j != i)
                .map(|j| a[(i, j)].abs())
                .sum();
            a[(i, i)] - off > 0.0
        });
        (Some(n0), ok)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::waves::rbo_wave;

    fn grid() -> PeriodicGrid {
        PeriodicGrid::new(64, 4.0 * PI).unwrap()
    }

    #[test]
    fn vector_round_trip_is_isometric() {
        let f = SpectralField::from_fn(grid(), |x| 0.3 + (0.5 * x).cos() - 2.0 * (1.5 * x).sin());
        let v = field_to_vector(&f, 8);
        assert!((v.norm() - f.l2_norm()).abs() < 1e-12);
        let g = vector_to_field(&v, *f.grid()).unwrap();
        assert!((&g - &f).max_coeff() < 1e-14);
    }

    #[test]
    fn free_operator_is_diagonal() {
        let zero = SpectralField::zeros(grid());
        let a = assemble_with_potential(3.0, &zero, &SymbolSpec::HilbertDeriv, 8).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let n = a.row_mode(i);
                let want = if i == j {
                    3.0 * 0.5 * n as f64 + 2.0
                } else {
                    0.0
                };
                assert!((a.matrix[(i, j)] - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn constant_potential_shifts() {
        let zero = SpectralField::zeros(grid());
        let kappa = SpectralField::from_fn(grid(), |_| 0.7);
        let a = assemble_with_potential(3.0, &zero, &SymbolSpec::HilbertDeriv, 8).unwrap();
        let b = assemble_with_potential(3.0, &kappa, &SymbolSpec::HilbertDeriv, 8).unwrap();
        let diff = &a.matrix - &b.matrix;
        assert!((diff - DMatrix::identity(17, 17) * 0.7).amax() < 1e-14);
    }

    #[test]
    fn rejects_odd_symbols_and_big_windows() {
        let zero = SpectralField::zeros(grid());
        assert!(matches!(
            assemble_with_potential(3.0, &zero, &SymbolSpec::Deriv, 8),
            Err(Error::OddSymbol)
        ));
        assert!(matches!(
            assemble_with_potential(3.0, &zero, &SymbolSpec::HilbertDeriv, 17),
            Err(Error::TruncationTooLarge { .. })
        ));
    }

    #[test]
    fn derivative_of_the_wave_is_in_the_kernel() {
        let l = 2.0 * PI;
        let g = PeriodicGrid::new(256, 2.0 * l).unwrap();
        let w = rbo_wave(4.0, l, g).unwrap();
        let a = assemble(&w, &SymbolSpec::HilbertDeriv, 1, 64).unwrap();
        assert!(a.asymmetry() < 1e-12);
        let dphi = w.field.apply(&SymbolSpec::Deriv).unwrap();
        let v = field_to_vector(&dphi, 64);
        let r = &a.matrix * &v;
        assert!(r.norm() < 1e-8 * v.norm() * a.matrix.norm());
    }
}
