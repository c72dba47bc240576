use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{fft_inverse, SpectralField};

/// Norm used to measure the distance to the orbit of translates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "norm")]
pub enum OrbitNorm {
    /// Weight `(1 + n^2)^s` on mode `n`.
    Sobolev { s: f64 },
    /// Weight `|xi| + (c - 1)/c`.
    Weighted { c: f64 },
}

impl Default for OrbitNorm {
    fn default() -> Self {
        OrbitNorm::Sobolev { s: 0.5 }
    }
}

impl OrbitNorm {
    pub fn weight(&self, n: i64, xi: f64) -> f64 {
        match *self {
            OrbitNorm::Sobolev { s } => (1.0 + (n * n) as f64).powf(s),
            OrbitNorm::Weighted { c } => xi.abs() + (c - 1.0) / c,
        }
    }

    pub fn norm(&self, f: &SpectralField) -> f64 {
        f.weighted_norm(|n, xi| self.weight(n, xi))
    }

    fn validate(&self) -> Result<()> {
        match *self {
            OrbitNorm::Weighted { c } if !(c > 1.0) => Err(Error::InvalidParameter(format!(
                "weighted norm needs c > 1, got {c}"
            ))),
            OrbitNorm::Sobolev { s } if !s.is_finite() => {
                Err(Error::InvalidParameter(format!("Sobolev index {s}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitalDistance {
    /// `min_y ||u(. + y) - phi||`.
    pub d: f64,
    /// Minimizing shift in `[-P/2, P/2)`.
    pub shift: f64,
}

struct Objective {
    period: f64,
    xi: Vec<f64>,
    w: Vec<f64>,
    u: Vec<Complex64>,
    phi: Vec<Complex64>,
    nyquist: usize,
}

impl Objective {
    fn multiplier(&self, k: usize, y: f64) -> Complex64 {
        let th = self.xi[k] * y;
        if k == self.nyquist {
            Complex64::from(th.cos())
        } else {
            Complex64::from_polar(1.0, th)
        }
    }

    fn value(&self, y: f64) -> f64 {
        let s: f64 = (0..self.xi.len())
            .map(|k| self.w[k] * (self.u[k] * self.multiplier(k, y) - self.phi[k]).norm_sqr())
            .sum();
        self.period * s
    }

    /// First and second derivative in `y`.
    fn derivatives(&self, y: f64) -> (f64, f64) {
        let (mut d1, mut d2) = (0.0, 0.0);
        for k in 0..self.xi.len() {
            let xi = self.xi[k];
            let b = self.u[k] * self.phi[k].conj();
            let th = xi * y;
            if k == self.nyquist {
                let uu = self.u[k].norm_sqr();
                d1 += self.w[k] * (-uu * xi * (2.0 * th).sin() + 2.0 * xi * th.sin() * b.re);
                d2 += self.w[k]
                    * (-2.0 * uu * xi * xi * (2.0 * th).cos() + 2.0 * xi * xi * th.cos() * b.re);
            } else {
                let e = b * Complex64::from_polar(1.0, th);
                d1 += 2.0 * self.w[k] * xi * e.im;
                d2 += 2.0 * self.w[k] * xi * xi * e.re;
            }
        }
        (self.period * d1, self.period * d2)
    }
}

fn wrap(y: f64, p: f64) -> f64 {
    let r = (y + 0.5 * p).rem_euclid(p) - 0.5 * p;
    if r >= 0.5 * p {
        r - p
    } else {
        r
    }
}

/// `inf_y ||u(. + y) - phi||` in the chosen norm, with its minimizer.
///
/// A scan over `4N` equally spaced shifts picks the basin of the global
/// minimum; golden-section search narrows it to `1e-10 P` and a few Newton
/// steps on the derivative polish the shift.
pub fn orbital_distance(
    u: &SpectralField,
    phi: &SpectralField,
    norm: OrbitNorm,
) -> Result<OrbitalDistance> {
    if !u.grid().same_as(phi.grid()) {
        return Err(Error::GridMismatch);
    }
    norm.validate()?;
    let grid = *u.grid();
    let n = grid.num_points();
    let period = grid.period();
    let obj = Objective {
        period,
        xi: grid.frequencies(),
        w: grid
            .modes()
            .map(|m| norm.weight(m, grid.frequency(m)))
            .collect(),
        u: u.coeffs().to_vec(),
        phi: phi.coeffs().to_vec(),
        nyquist: n / 2,
    };

    // coarse lattice: the cross term sum w b_n exp(i xi_n y_j) is one DFT
    let m = 4 * n;
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, mode) in grid.modes().enumerate() {
        if k == obj.nyquist {
            continue;
        }
        buf[mode.rem_euclid(m as i64) as usize] = obj.w[k] * obj.u[k] * obj.phi[k].conj();
    }
    fft_inverse(&mut buf);
    let best = (0..m)
        .max_by(|&i, &j| buf[i].re.total_cmp(&buf[j].re))
        .unwrap_or(0);
    let h = period / m as f64;
    let y0 = best as f64 * h;

    // golden section on the bracketing cell pair
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (y0 - h, y0 + h);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (obj.value(x1), obj.value(x2));
    while b - a > 1e-10 * period {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = obj.value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = obj.value(x2);
        }
    }
    let mut y = 0.5 * (a + b);
    for _ in 0..4 {
        let (d1, d2) = obj.derivatives(y);
        if !(d2 > 0.0) {
            break;
        }
        let step = d1 / d2;
        if !(step.abs() < h) {
            break;
        }
        let trial = y - step;
        if obj.value(trial) > obj.value(y) {
            break;
        }
        y = trial;
        if step.abs() < 1e-15 * period {
            break;
        }
    }
    let shift = wrap(y, period);
    let diff = u.translate(shift).axpy(-1.0, phi)?;
    Ok(OrbitalDistance {
        d: norm.norm(&diff),
        shift,
    })
}
