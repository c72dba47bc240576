use std::f64::consts::PI;

use num_complex::Complex64;

use super::{WaveParams, WaveProfile};
use crate::error::{Error, Result};
use crate::fourier::{PeriodicGrid, SpectralField};

fn inadmissible(detail: String) -> Error {
    Error::Inadmissible {
        case: "rbo",
        detail,
    }
}

/// `eta = artanh(c pi / ((c - 1) L))` on the positive branch
/// `L > pi`, `c > 1 + pi / (L - pi)`.
pub fn rbo_eta(c: f64, l: f64) -> Result<f64> {
    if !(c.is_finite() && l.is_finite()) {
        return Err(Error::InvalidParameter(format!("c = {c}, L = {l}")));
    }
    if c == 1.0 {
        return Err(inadmissible("c = 1 only admits the zero solution".into()));
    }
    if l == PI {
        return Err(inadmissible(
            "L = pi: waves exist only for c < 0 (negative profiles)".into(),
        ));
    }
    if l < PI {
        return Err(inadmissible(format!(
            "L = {l} < pi: waves exist only for c in (1 + pi/(L - pi), 0) (negative profiles)"
        )));
    }
    let c_min = 1.0 + PI / (l - PI);
    if c < 0.0 {
        return Err(inadmissible(format!(
            "c = {c} < 0 gives a negative profile; positive waves need c > {c_min}"
        )));
    }
    if c <= c_min {
        return Err(inadmissible(format!(
            "no periodic wave for c = {c} at L = {l}: need c > {c_min}"
        )));
    }
    let arg = c * PI / ((c - 1.0) * l);
    debug_assert!(arg > 0.0 && arg < 1.0);
    Ok(arg.atanh())
}

/// `d eta / dc = -(pi / ((c-1)^2 L)) / (1 - (c pi / ((c-1) L))^2)`.
pub fn rbo_deta_dc(c: f64, l: f64) -> Result<f64> {
    rbo_eta(c, l)?;
    let arg = c * PI / ((c - 1.0) * l);
    Ok(-(PI / ((c - 1.0).powi(2) * l)) / (1.0 - arg * arg))
}

/// `a_n = (2 pi c / L) exp(-eta |n|)`.
pub(crate) fn coefficient(c: f64, l: f64, eta: f64, n: i64) -> f64 {
    2.0 * PI * c / l * (-eta * n.abs() as f64).exp()
}

/// `phi_c(x) = (2 c pi / L) sinh(eta) / (cosh(eta) - cos(pi x / L))`.
pub fn rbo_wave_closed_form(c: f64, l: f64, eta: f64, x: f64) -> f64 {
    2.0 * c * PI / l * eta.sinh() / (eta.cosh() - (PI * x / l).cos())
}

fn check_period(grid: &PeriodicGrid, period: f64) -> Result<()> {
    if (grid.period() - period).abs() > 1e-12 * period {
        return Err(Error::InvalidParameter(format!(
            "grid period {} does not match the wave period {period}",
            grid.period()
        )));
    }
    Ok(())
}

/// Samples the closed-form rBO wave on a grid of period `2L`.
pub fn rbo_wave(c: f64, l: f64, grid: PeriodicGrid) -> Result<WaveProfile> {
    let eta = rbo_eta(c, l)?;
    check_period(&grid, 2.0 * l)?;
    let field = SpectralField::from_fn(grid, |x| rbo_wave_closed_form(c, l, eta, x));
    let tail_bound = 2.0 * c * PI / l * (-eta * grid.nyquist() as f64).exp() / (1.0 - (-eta).exp());
    Ok(WaveProfile {
        field,
        speed: c,
        params: WaveParams::Rbo { l, eta },
        tail_bound,
    })
}

/// `|| c H phi' + (c - 1) phi - phi^2 / 2 ||_inf`.
pub fn rbo_residual(profile: &WaveProfile) -> Result<f64> {
    profile.residual()
}

/// `chi = -d phi_c / dc`, from the analytic coefficients.
pub fn rbo_dwave_dc(c: f64, l: f64, grid: PeriodicGrid) -> Result<SpectralField> {
    let eta = rbo_eta(c, l)?;
    check_period(&grid, 2.0 * l)?;
    let deta = rbo_deta_dc(c, l)?;
    let half = grid.nyquist();
    let da = |n: i64| {
        let m = n.abs() as f64;
        let e = (-eta * m).exp();
        2.0 * PI / l * e - 2.0 * c * PI / l * m * e * deta
    };
    Ok(SpectralField::from_modes(grid, |n| {
        // the Nyquist slot carries both +-N/2
        let v = if n == half { 2.0 * da(n) } else { da(n) };
        Complex64::from(-v)
    }))
}

/// `S(c) = sum_n (1 + pi |n| / L) a_n^2` in closed form.
fn weighted_square_sum(c: f64, l: f64, eta: f64) -> f64 {
    let s = eta.sinh();
    4.0 * PI * PI * c * c / (l * l) * (1.0 / eta.tanh() + PI / (2.0 * l * s * s))
}

/// `I = (chi, phi_c + H phi_c') = -L dS/dc`, differentiated by hand.
pub fn rbo_index_closed_form(c: f64, l: f64) -> Result<f64> {
    let eta = rbo_eta(c, l)?;
    let deta = rbo_deta_dc(c, l)?;
    let s = eta.sinh();
    let g = 1.0 / eta.tanh() + PI / (2.0 * l * s * s);
    let dg = -1.0 / (s * s) - PI * eta.cosh() / (l * s * s * s);
    let amp = 4.0 * PI * PI / (l * l);
    let ds = amp * (2.0 * c * g + c * c * dg * deta);
    debug_assert!(
        (weighted_square_sum(c, l, eta) - amp * c * c * g).abs() < 1e-9 * amp * c * c * g
    );
    Ok(-l * ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(l: f64, n: usize) -> PeriodicGrid {
        PeriodicGrid::new(n, 2.0 * l).unwrap()
    }

    #[test]
    fn eta_at_reference_point() {
        let eta = rbo_eta(4.0, 2.0 * PI).unwrap();
        assert!((eta - 0.5 * 5f64.ln()).abs() < 1e-15);
        assert!((eta - 0.8047190).abs() < 1e-7);
        let d = rbo_deta_dc(4.0, 2.0 * PI).unwrap();
        assert!((d + 0.1).abs() < 1e-14);
    }

    #[test]
    fn eta_blows_up_at_the_boundary() {
        let e1 = rbo_eta(2.0 + 1e-3, 2.0 * PI).unwrap();
        let e2 = rbo_eta(2.0 + 1e-8, 2.0 * PI).unwrap();
        assert!(e2 > e1 && e2 > 9.0);
    }

    #[test]
    fn inadmissible_parameters_name_the_case() {
        for (c, l) in [
            (4.0, PI),
            (4.0, 3.0),
            (-1.0, 2.0 * PI),
            (1.5, 2.0 * PI),
            (1.0, 7.0),
        ] {
            match rbo_eta(c, l) {
                Err(Error::Inadmissible { detail, .. }) => assert!(!detail.is_empty()),
                other => panic!("({c}, {l}) gave {other:?}"),
            }
        }
    }

    #[test]
    fn peak_and_first_coefficient() {
        let l = 2.0 * PI;
        let w = rbo_wave(4.0, l, grid(l, 256)).unwrap();
        let samples = w.field.to_samples();
        let peak = samples[128];
        assert!((peak - 10.472136).abs() < 1e-6);
        let golden = 0.5 * (1.0 + 5f64.sqrt());
        assert!((peak - 4.0 * (1.0 + golden)).abs() < 1e-12);
        assert!((w.field.coeff(1).re - 4.0 / 5f64.sqrt()).abs() < 1e-12);
        let eta = 0.5 * 5f64.ln();
        let floor = 8.0 * PI / l * eta.sinh() / (eta.cosh() + 1.0);
        assert!((samples[0] - floor).abs() < 1e-12);
        assert!(samples.iter().all(|&v| v >= floor - 1e-12));
    }

    #[test]
    fn residual_is_tiny_and_scaling_breaks_it() {
        let l = 2.0 * PI;
        let w = rbo_wave(4.0, l, grid(l, 256)).unwrap();
        assert!(rbo_residual(&w).unwrap() < 1e-10);
        let mut twice = w.clone();
        twice.field = w.field.scale(2.0);
        let sup = w.field.max_abs();
        assert!(rbo_residual(&twice).unwrap() > 0.1 * sup);
    }

    #[test]
    fn chi_matches_finite_differences() {
        let l = 2.0 * PI;
        let g = grid(l, 128);
        let chi = rbo_dwave_dc(4.0, l, g).unwrap();
        let fd = |h: f64| {
            let up = rbo_wave(4.0 + h, l, g).unwrap().analytic_field();
            let dn = rbo_wave(4.0 - h, l, g).unwrap().analytic_field();
            up.axpy(-1.0, &dn).unwrap().scale(-0.5 / h)
        };
        let (f1, f2) = (fd(1e-3), fd(5e-4));
        let rich = f2.scale(4.0 / 3.0).axpy(-1.0 / 3.0, &f1).unwrap();
        let err = rich.axpy(-1.0, &chi).unwrap().max_coeff();
        assert!(err < 1e-7 * chi.max_coeff(), "err {err}");
    }

    #[test]
    fn index_is_negative() {
        for (c, l) in [(4.0, 2.0 * PI), (3.0, 4.0 * PI), (8.0, 1.2 * PI)] {
            if rbo_eta(c, l).is_ok() {
                assert!(rbo_index_closed_form(c, l).unwrap() < 0.0);
            }
        }
    }
}
