//! Periodization of solitary waves by lattice sums.
//!
//! Summing translates of a solitary wave over a lattice of period `P`
//! produces a periodic function whose Fourier coefficients are samples of
//! the solitary wave's Fourier transform. These routines evaluate both
//! sides so the periodic families can be cross-checked.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `w` for which the periodized rBO solitary wave matches `phi_c`:
/// `pi w / ((w - 1) L) = eta(c)`.
pub fn rbo_lattice_speed(eta: f64, l: f64) -> Result<f64> {
    let t = l * eta / PI;
    if !(t > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eta = {eta} too small to periodize at L = {l}"
        )));
    }
    Ok(t / (t - 1.0))
}

/// `sum_{|m| <= M} 4(w-1) / (1 + ((w-1)(x + 2Lm)/w)^2)` plus a midpoint
/// integral estimate of the two tails.
pub fn rbo_lattice_sum(w: f64, l: f64, x: f64, terms: i64) -> f64 {
    let beta = (w - 1.0) / w;
    let f = |y: f64| 4.0 * (w - 1.0) / (1.0 + (beta * y).powi(2));
    let mut sum = f(x);
    for m in 1..=terms {
        let shift = 2.0 * l * m as f64;
        sum += f(x + shift) + f(x - shift);
    }
    let edge = 2.0 * l * (terms as f64 + 0.5);
    let tail = |y: f64| 4.0 * (w - 1.0) / (2.0 * l * beta) * (0.5 * PI - (beta * y).atan());
    sum + tail(x + edge) + tail(edge - x)
}

/// The same function from its Fourier series: coefficients
/// `(2 pi w / L) exp(-eta_w |n|)` with `eta_w = pi w / ((w - 1) L)`.
pub fn rbo_lattice_closed_form(w: f64, l: f64, x: f64) -> f64 {
    let eta = PI * w / ((w - 1.0) * l);
    2.0 * PI * w / l * eta.sinh() / (eta.cosh() - (PI * x / l).cos())
}

/// `sum_m 3(w-1) sech^2(sqrt((w-1)/w) (x + mL) / 2)` over `|m| <= M`.
pub fn bbm_lattice_sum(w: f64, l: f64, x: f64, terms: i64) -> f64 {
    let beta = ((w - 1.0) / w).sqrt();
    let f = |y: f64| {
        let s = 1.0 / (0.5 * beta * y).cosh();
        3.0 * (w - 1.0) * s * s
    };
    (-terms..=terms).map(|m| f(x + m as f64 * l)).sum()
}

/// Fourier series of the periodized BBM solitary wave: mean
/// `(12 w / L) sqrt((w-1)/w)` and, for `n != 0`,
/// `(24 pi^2 w n / L^2) csch(2 pi^2 n sqrt(w/(w-1)) / L)`.
pub fn bbm_lattice_series(w: f64, l: f64, x: f64, modes: i64) -> f64 {
    let beta = ((w - 1.0) / w).sqrt();
    let mut sum = 12.0 * w / l * beta;
    for n in 1..=modes {
        let nf = n as f64;
        let arg = 2.0 * PI * PI * nf / (beta * l);
        if arg > 700.0 {
            break;
        }
        let coef = 24.0 * PI * PI * w * nf / (l * l) / arg.sinh();
        sum += 2.0 * coef * (2.0 * PI * nf * x / l).cos();
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waves::rbo::{rbo_eta, rbo_wave_closed_form};

    #[test]
    fn rbo_periodization_reproduces_the_wave() {
        let (c, l) = (4.0, 2.0 * PI);
        let eta = rbo_eta(c, l).unwrap();
        let w = rbo_lattice_speed(eta, l).unwrap();
        for j in 0..16 {
            let x = -l + j as f64 * l / 8.0;
            let lattice = rbo_lattice_sum(w, l, x, 10_000);
            let closed = rbo_lattice_closed_form(w, l, x);
            assert!((lattice - closed).abs() < 1e-6 * closed, "x={x}");
            let phi = rbo_wave_closed_form(c, l, eta, x);
            assert!((c / w * closed - phi).abs() < 1e-12 * phi);
        }
    }

    #[test]
    fn bbm_periodization_matches_series() {
        for &w in &[1.2, 3.0, 40.0] {
            let l = 8.0;
            for j in 0..16 {
                let x = j as f64 * l / 16.0;
                let a = bbm_lattice_sum(w, l, x, 200);
                let b = bbm_lattice_series(w, l, x, 200);
                assert!(
                    (a - b).abs() < 1e-6 * a.abs().max(1.0),
                    "w={w} x={x}: {a} {b}"
                );
            }
        }
    }
}
