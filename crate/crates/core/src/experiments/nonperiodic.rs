//! Lower bound for the second Picard iterate on the line, with
//! `phi^ = N^(-s) 1_[N, N+1]` and `t = N^(-eps)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, QuadOptions};
use crate::error::{Error, Result};

/// `xi / (1 + |xi|)`.
pub fn dispersion_p(xi: f64) -> f64 {
    xi / (1.0 + xi.abs())
}

/// `p(eta) + p(xi - eta) - p(xi)`.
pub fn resonance(xi: f64, eta: f64) -> f64 {
    dispersion_p(eta) + dispersion_p(xi - eta) - dispersion_p(xi)
}

/// Factored form of [`resonance`], valid for `eta, xi - eta > 0`.
pub fn resonance_factored(xi: f64, eta: f64) -> f64 {
    eta * (xi - eta) * (2.0 + xi) / ((1.0 + eta) * (1.0 + xi - eta) * (1.0 + xi))
}

/// `sin(x) / x` with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `Omega_xi = {eta in [N, N+1] : xi - eta in [N, N+1]}` as an interval.
pub fn omega(n: f64, xi: f64) -> Option<(f64, f64)> {
    let lo = n.max(xi - n - 1.0);
    let hi = (n + 1.0).min(xi - n);
    (hi > lo).then_some((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceCheck {
    pub samples: u64,
    pub max_chi: f64,
    pub min_chi: f64,
    /// Largest relative gap between the two forms of `chi`.
    pub form_mismatch: f64,
    pub violations: u64,
}

/// Samples admissible pairs `eta, xi - eta in [N, N+1]` with integer `N`
/// drawn from `[1, n_max]`, and checks `0 < chi <= 3`.
pub fn check_resonance_bound(samples: u64, n_max: u32, seed: u64) -> ResonanceCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ResonanceCheck {
        samples,
        max_chi: f64::MIN,
        min_chi: f64::MAX,
        form_mismatch: 0.0,
        violations: 0,
    };
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max.max(1)) as f64;
        let eta = n + rng.gen::<f64>();
        let zeta = n + rng.gen::<f64>();
        let xi = eta + zeta;
        let chi = resonance_factored(xi, eta);
        let direct = resonance(xi, eta);
        out.form_mismatch = out.form_mismatch.max((chi - direct).abs() / chi.abs());
        out.max_chi = out.max_chi.max(chi);
        out.min_chi = out.min_chi.min(chi);
        if !(chi > 0.0 && chi <= 3.0) {
            out.violations += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonperiodicBound {
    pub n: u32,
    pub s: f64,
    pub eps: f64,
    pub t: f64,
    /// Square root of the lower-bound integral over `xi in (2N + 1/2, 2N + 1)`.
    pub lower_bound: f64,
    /// `||phi||_{H^s}`.
    pub phi_norm: f64,
    /// `lower_bound / ||phi||_{H^s}^2`.
    pub ratio_proxy: f64,
    /// `lower_bound N^(s + eps)`.
    pub compensated: f64,
    /// Smallest `mu(Omega_xi)` met by the quadrature.
    pub min_omega: f64,
}

/// Evaluates the lower-bound integral by nested adaptive quadrature.
pub fn illposed_nonperiodic(n: u32, s: f64, eps: f64) -> Result<NonperiodicBound> {
    if !(s < 0.0) {
        return Err(Error::InvalidParameter(format!("need s < 0, got {s}")));
    }
    if n < 16 {
        return Err(Error::InvalidParameter(format!("need N >= 16, got {n}")));
    }
    if !(eps > 0.0 && -s - eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < eps < -s, got eps = {eps}, s = {s}"
        )));
    }
    let nf = n as f64;
    let t = nf.powf(-eps);
    let opts = QuadOptions {
        rel_tol: 1e-9,
        ..Default::default()
    };
    let min_omega = std::cell::Cell::new(f64::INFINITY);
    let inner_err = std::cell::RefCell::new(None);
    let outer = |xi: f64| -> f64 {
        let Some((lo, hi)) = omega(nf, xi) else {
            return 0.0;
        };
        min_omega.set(min_omega.get().min(hi - lo));
        let inner = match integrate(|eta| sinc(t * resonance(xi, eta)), lo, hi, &opts) {
            Ok(v) => v,
            Err(e) => {
                inner_err.borrow_mut().get_or_insert(e);
                return f64::NAN;
            }
        };
        let w = (1.0 + xi * xi).powf(s) * nf.powf(-4.0 * s) * (xi / (1.0 + xi)).powi(2);
        w * t * t * inner * inner
    };
    let a = 2.0 * nf + 0.5;
    let b = 2.0 * nf + 1.0;
    let total = integrate(outer, a, b, &opts);
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    let lower_bound = total?.sqrt();
    let phi_sq = integrate(
        |xi| (1.0 + xi * xi).powf(s) * nf.powf(-2.0 * s),
        nf,
        nf + 1.0,
        &opts,
    )?;
    Ok(NonperiodicBound {
        n,
        s,
        eps,
        t,
        lower_bound,
        phi_norm: phi_sq.sqrt(),
        ratio_proxy: lower_bound / phi_sq,
        compensated: lower_bound * nf.powf(s + eps),
        min_omega: min_omega.get(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonance_forms_agree_and_are_bounded() {
        let r = check_resonance_bound(20_000, 10_000, 7);
        assert_eq!(r.violations, 0);
        assert!(r.form_mismatch < 1e-9, "{}", r.form_mismatch);
        assert!(r.max_chi <= 3.0 && r.min_chi > 0.0);
    }

    #[test]
    fn omega_has_measure_at_least_one_half() {
        for &n in &[16.0, 100.0] {
            for k in 1..100 {
                let xi = 2.0 * n + 0.5 + 0.5 * k as f64 / 100.0;
                let (lo, hi) = omega(n, xi).unwrap();
                assert!(hi - lo >= 0.5);
                assert!((lo - n).abs() < 1e-12 && (hi - (xi - n)).abs() < 1e-12);
            }
        }
        assert!(omega(16.0, 10.0).is_none());
    }

    #[test]
    fn sinc_limit() {
        assert_eq!(sinc(0.0), 1.0);
        assert!((sinc(1e-5) - 1.0).abs() < 1e-10);
        assert!((sinc(1.0) - 1f64.sin()).abs() < 1e-16);
    }

    #[test]
    fn compensated_bound_is_flat() {
        let v: Vec<f64> = [16u32, 32, 64, 128]
            .iter()
            .map(|&n| illposed_nonperiodic(n, -0.5, 0.2).unwrap().compensated)
            .collect();
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        assert!(lo > 0.0 && hi / lo < 2.0, "{v:?}");
        assert!(illposed_nonperiodic(16, -0.5, 0.6).is_err());
        assert!(illposed_nonperiodic(8, -0.5, 0.2).is_err());
    }
}
