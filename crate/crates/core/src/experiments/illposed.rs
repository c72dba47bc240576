//! Growth of the second Picard iterate for `phi = N^(-s) cos(N x)` on
//! `[-pi, pi]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fit::{linear_fit, LineFit};
use crate::error::{Error, Result};
use crate::fourier::{PeriodicGrid, SpectralField, SymbolSpec};

/// `2 N^2 / ((1 + N)(1 + 2N))`.
pub fn gamma_n(n: u32) -> f64 {
    let n = n as f64;
    2.0 * n * n / ((1.0 + n) * (1.0 + 2.0 * n))
}

fn check_s(s: f64) -> Result<()> {
    if !(s < 0.0) {
        return Err(Error::InvalidParameter(format!("need s < 0, got {s}")));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(0.0..2.0 * PI).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= t < 2 pi, got {t}"
        )));
    }
    Ok(())
}

/// Grid on `[-pi, pi]` fine enough to hold mode `2N` below Nyquist.
pub fn witness_grid(n: u32) -> Result<PeriodicGrid> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    PeriodicGrid::new((8 * n as usize).max(16), 2.0 * PI)
}

/// `N^(-s) cos(N x)`.
pub fn witness_data(n: u32, s: f64) -> Result<SpectralField> {
    let g = witness_grid(n)?;
    let amp = (n as f64).powf(-s);
    Ok(SpectralField::from_fn(g, |x| amp * (n as f64 * x).cos()))
}

#[derive(Debug, Clone)]
pub struct SecondIterate {
    pub n: u32,
    pub s: f64,
    pub t: f64,
    pub gamma: f64,
    pub psi: SpectralField,
    /// `||psi||_{H^s} / ||phi||_{H^s}^2`.
    pub ratio: f64,
}

/// Closed form of `int_0^t S(t - tau) Lambda[(S(tau) phi)(S(tau) phi)_x] dtau`.
pub fn picard2_periodic(n: u32, s: f64, t: f64) -> Result<SecondIterate> {
    check_s(s)?;
    check_time(t)?;
    let phi = witness_data(n, s)?;
    let g = *phi.grid();
    let nf = n as f64;
    let gamma = gamma_n(n);
    let amp = 0.5 * nf.powf(1.0 - 2.0 * s) / (gamma * (1.0 + 2.0 * nf));
    let a = 2.0 * nf / (1.0 + 2.0 * nf);
    let b = 2.0 * nf / (1.0 + nf);
    let top = 0.5 * amp * (Complex64::from_polar(1.0, -a * t) - Complex64::from_polar(1.0, -b * t));
    let two_n = 2 * n as i64;
    let psi = SpectralField::from_modes(g, |m| {
        if m == two_n {
            top
        } else if m == -two_n {
            top.conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let denom = phi.sobolev_norm(s).powi(2);
    Ok(SecondIterate {
        n,
        s,
        t,
        gamma,
        ratio: psi.sobolev_norm(s) / denom,
        psi,
    })
}

/// The same Duhamel integral by composite Simpson on `panels` intervals in
/// `tau`, with the product formed spectrally.
pub fn duhamel_periodic(n: u32, s: f64, t: f64, panels: usize) -> Result<SpectralField> {
    check_s(s)?;
    check_time(t)?;
    let phi = witness_data(n, s)?;
    if t == 0.0 {
        return Ok(SpectralField::zeros(*phi.grid()));
    }
    let panels = (panels + panels % 2).max(2);
    let h = t / panels as f64;
    let integrand = |tau: f64| -> Result<SpectralField> {
        let v = phi.apply(&SymbolSpec::Semigroup { t: tau })?;
        let vvx = v.power(2).apply(&SymbolSpec::Deriv)?.scale(0.5);
        vvx.apply(&SymbolSpec::LambdaSmooth)?
            .apply(&SymbolSpec::Semigroup { t: t - tau })
    };
    let mut acc = integrand(0.0)?.axpy(1.0, &integrand(t)?)?;
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc.axpy(w, &integrand(i as f64 * h)?)?;
    }
    Ok(acc.scale(h / 3.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IllposedScan {
    pub s: f64,
    pub t: f64,
    pub ns: Vec<u32>,
    pub ratios: Vec<f64>,
    /// `R N^s (1 - cos(gamma_N t))^(-1/2)`.
    pub compensated: Vec<f64>,
    /// `(max - min) / (max + min)` of the compensated values.
    pub compensated_spread: f64,
    /// Number of leading `N` discarded before the fit.
    pub onset: usize,
    pub fit: LineFit,
    pub predicted_slope: f64,
    pub slope_error: f64,
    pub pass: bool,
}

impl IllposedScan {
    /// `N,ratio,compensated` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,ratio,compensated\n");
        for i in 0..self.ns.len() {
            out.push_str(&format!(
                "{},{:.16e},{:.16e}\n",
                self.ns[i], self.ratios[i], self.compensated[i]
            ));
        }
        out
    }
}

/// Powers of two from `lo` to `hi`.
pub fn dyadic(lo: u32, hi: u32) -> Vec<u32> {
    let mut v = Vec::new();
    let mut n = lo.max(1);
    while n <= hi {
        v.push(n);
        n = match n.checked_mul(2) {
            Some(m) => m,
            None => break,
        };
    }
    v
}

/// Least-squares slope of `log R` against `log N`, compared with `-s`.
/// Leading `N` are dropped until the fit residual is below `1e-3`.
pub fn illposed_scan(s: f64, t: f64, ns: &[u32]) -> Result<IllposedScan> {
    check_s(s)?;
    if !(t > 0.0 && t < 2.0 * PI) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < t < 2 pi, got {t}"
        )));
    }
    if ns.len() < 5 || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(Error::InvalidParameter(
            "N list must be strictly increasing, positive, with at least 5 entries".into(),
        ));
    }
    let mut ratios = Vec::with_capacity(ns.len());
    for &n in ns {
        ratios.push(picard2_periodic(n, s, t)?.ratio);
    }
    if ratios.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::DegenerateFit("non-positive ratio".into()));
    }
    let spread_of = |v: &[f64]| {
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        (hi - lo) / (hi + lo)
    };
    if spread_of(&ratios) == 0.0 {
        return Err(Error::DegenerateFit("all ratios are equal".into()));
    }
    let compensated: Vec<f64> = ns
        .iter()
        .zip(&ratios)
        .map(|(&n, &r)| r * (n as f64).powf(s) / (1.0 - (gamma_n(n) * t).cos()).sqrt())
        .collect();
    let points: Vec<(f64, f64)> = ns
        .iter()
        .zip(&ratios)
        .map(|(&n, &r)| ((n as f64).ln(), r.ln()))
        .collect();
    let mut onset = 0;
    let mut fit = linear_fit(&points)?;
    while fit.residual >= 1e-3 && points.len() - onset > 3 {
        onset += 1;
        fit = linear_fit(&points[onset..])?;
    }
    let predicted_slope = -s;
    let slope_error = (fit.slope - predicted_slope).abs() / predicted_slope.abs();
    Ok(IllposedScan {
        s,
        t,
        ns: ns.to_vec(),
        compensated_spread: spread_of(&compensated),
        ratios,
        compensated,
        onset,
        fit,
        predicted_slope,
        slope_error,
        pass: slope_error <= 0.02 && fit.residual < 1e-3,
    })
}
