use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{WaveParams, WaveProfile};
use crate::elliptic::{complete_elliptic, jacobi, EllipticParams};
use crate::error::{Error, Result};
use crate::fourier::{PeriodicGrid, SpectralField};

const BISECTION_TOL: f64 = 1e-12;
const K_MAX: f64 = 1.0 - f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BbmBranch {
    /// `c = L^2 / (L^2 - 16 K^2 r)`, the branch with `c > 1`.
    Plus,
    /// `c = L^2 / (L^2 + 16 K^2 r)`, with `0 < c < 1`.
    Minus,
}

fn inadmissible(detail: String) -> Error {
    Error::Inadmissible {
        case: "bbm",
        detail,
    }
}

fn check_period_length(l: f64) -> Result<()> {
    if !(l.is_finite() && l > 2.0 * PI) {
        return Err(inadmissible(format!("period L = {l} must exceed 2 pi")));
    }
    Ok(())
}

/// `sqrt(1 - k^2 + k^4)`.
fn root(k: f64) -> f64 {
    let m = k * k;
    (1.0 - m + m * m).sqrt()
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    // f(lo) > 0 >= f(hi)
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Upper end of the plus branch: `L^2 - 16 K(k)^2 sqrt(1 - k^2 + k^4) > 0`
/// exactly for `k < k_L`.
pub fn k_l(l: f64) -> Result<f64> {
    check_period_length(l)?;
    let g = |k: f64| {
        let kk = complete_elliptic(k)
            .map(|e| e.big_k)
            .unwrap_or(f64::INFINITY);
        l * l - 16.0 * kk * kk * root(k)
    };
    if g(K_MAX) > 0.0 {
        return Ok(K_MAX);
    }
    Ok(bisect(1e-15, K_MAX, g))
}

/// `K(k) / K(k') < L` exactly for `k < k_0`, where `w(k)` is finite.
/// Saturates at the largest double below one when `k_0` is closer to one
/// than that.
pub fn k_zero(l: f64) -> Result<f64> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidParameter(format!("L = {l}")));
    }
    let g = |k: f64| {
        let e = complete_elliptic(k).expect("k inside (0, 1)");
        l - e.big_k / e.big_kp
    };
    if g(K_MAX) > 0.0 {
        return Ok(K_MAX);
    }
    Ok(bisect(1e-15, K_MAX, g))
}

fn check_modulus(l: f64, k: f64) -> Result<EllipticParams> {
    check_period_length(l)?;
    let e = complete_elliptic(k)?;
    let den = l * l - 16.0 * e.big_k * e.big_k * root(k);
    if den <= 0.0 {
        return Err(inadmissible(format!(
            "k = {k} is at or beyond k_L for L = {l} (L^2 - 16 K^2 sqrt(1-k^2+k^4) = {den:e})"
        )));
    }
    Ok(e)
}

/// Both roots of `[256 K^4 (1-k^2+k^4) - L^4] c^2 + 2 c L^4 - L^4 = 0`,
/// as `(c_plus, c_minus)`.
pub fn bbm_speed(l: f64, k: f64) -> Result<(f64, f64)> {
    let e = check_modulus(l, k)?;
    let s = 16.0 * e.big_k * e.big_k * root(k);
    let l2 = l * l;
    Ok((l2 / (l2 - s), l2 / (l2 + s)))
}

/// Value of the speed quadratic at `c`.
pub fn speed_quadratic(l: f64, k: f64, c: f64) -> Result<f64> {
    let e = complete_elliptic(k)?;
    let k4 = e.big_k.powi(4);
    let l4 = l.powi(4);
    Ok((256.0 * k4 * root(k).powi(2) - l4) * c * c + 2.0 * c * l4 - l4)
}

fn speed_on(l: f64, k: f64, branch: BbmBranch) -> Result<f64> {
    let (cp, cm) = bbm_speed(l, k)?;
    Ok(match branch {
        BbmBranch::Plus => cp,
        BbmBranch::Minus => cm,
    })
}

/// Mean `a(k) = (16 c K / L^2)[3E - (2 - k^2) K] + c - 1`.
fn mean_value(l: f64, e: &EllipticParams, c: f64) -> f64 {
    let k2 = e.k * e.k;
    16.0 * c * e.big_k / (l * l) * (3.0 * e.big_e - (2.0 - k2) * e.big_k) + c - 1.0
}

/// Closed-form coefficient of `phi_c` for an explicit speed.
///
/// For `n != 0` this is `(24 c pi^2 / L^2) |n| csch(pi |n| K' / K)`.
pub(crate) fn coefficient_with_speed(l: f64, k: f64, c: f64, n: i64) -> Result<f64> {
    let e = complete_elliptic(k)?;
    Ok(coefficient_from(l, &e, c, n))
}

fn coefficient_from(l: f64, e: &EllipticParams, c: f64, n: i64) -> f64 {
    if n == 0 {
        return mean_value(l, e, c);
    }
    let m = n.abs() as f64;
    let theta = PI * m * e.big_kp / e.big_k;
    24.0 * c * PI * PI / (l * l) * m / theta.sinh()
}

/// Fourier coefficient `n` of the plus-branch cnoidal wave.
pub fn bbm_fourier_coeffs(l: f64, k: f64, n: i64) -> Result<f64> {
    let c = speed_on(l, k, BbmBranch::Plus)?;
    coefficient_with_speed(l, k, c, n)
}

/// The kernel `(24 c pi^2 / L^2) |n| csch(pi |n| K'/K)` behind the
/// non-zero coefficients, continued to `n = 0` by its limit. The mean of
/// the wave itself differs at `n = 0`.
pub fn bbm_csch_kernel(l: f64, k: f64, n: i64) -> Result<f64> {
    let e = check_modulus(l, k)?;
    let c = speed_on(l, k, BbmBranch::Plus)?;
    if n != 0 {
        return Ok(coefficient_from(l, &e, c, n));
    }
    Ok(24.0 * c * PI * PI / (l * l) * e.big_k / (PI * e.big_kp))
}

/// Relative residuals of the three algebraic equations satisfied by
/// `phi = a + b [dn^2(d x) - E/K]`.
pub fn bbm_system_residuals(l: f64, k: f64) -> Result<[f64; 3]> {
    let e = check_modulus(l, k)?;
    let c = speed_on(l, k, BbmBranch::Plus)?;
    let d = 2.0 * e.big_k / l;
    let b = 48.0 * c * e.big_k * e.big_k / (l * l);
    let a = mean_value(l, &e, c);
    let r = e.big_e / e.big_k;
    let kp2 = e.kp * e.kp;
    let eq1 = [b * b / 2.0, -6.0 * c * b * d * d];
    let eq2 = [
        4.0 * b * d * d * c * (1.0 + kp2),
        a * b,
        -b * b * r,
        -(c - 1.0) * b,
    ];
    let eq3 = [
        a * a / 2.0,
        -a * b * r,
        b * b / 2.0 * r * r,
        -(c - 1.0) * a,
        (c - 1.0) * b * r,
        -2.0 * c * b * d * d * kp2,
    ];
    let rel = |terms: &[f64]| {
        let sum: f64 = terms.iter().sum();
        let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
        sum.abs() / scale
    };
    Ok([rel(&eq1), rel(&eq2), rel(&eq3)])
}

pub fn bbm_cnoidal(l: f64, k: f64, grid: PeriodicGrid) -> Result<WaveProfile> {
    bbm_cnoidal_branch(l, k, grid, BbmBranch::Plus)
}

/// Cnoidal wave on either speed branch. The minus branch is outside the
/// stability theory and only available on request.
pub fn bbm_cnoidal_branch(
    l: f64,
    k: f64,
    grid: PeriodicGrid,
    branch: BbmBranch,
) -> Result<WaveProfile> {
    let e = check_modulus(l, k)?;
    if (grid.period() - l).abs() > 1e-12 * l {
        return Err(Error::InvalidParameter(format!(
            "grid period {} does not match the wave period {l}",
            grid.period()
        )));
    }
    let c = speed_on(l, k, branch)?;
    let kk2 = e.big_k * e.big_k;
    let l2 = l * l;
    let beta2 = 16.0 * c * kk2 * (2.0 * e.kp * e.kp - 1.0) / l2 + c - 1.0;
    let beta3 = 16.0 * c * kk2 * (1.0 + k * k) / l2 + c - 1.0;
    let b = 48.0 * c * kk2 / l2;
    let beta1 = beta3 - b;
    let d = 2.0 * e.big_k / l;
    let scale = ((beta3 - beta1) / (12.0 * c)).sqrt();
    let field = SpectralField::from_fn(grid, |x| {
        let (_, cn, _) = jacobi(scale * x, k);
        beta2 + (beta3 - beta2) * cn * cn
    });
    let mut tail_bound = 0.0;
    for n in grid.nyquist() + 1.. {
        let t = 2.0 * coefficient_from(l, &e, c, n);
        tail_bound += t;
        if t < 1e-18 * tail_bound.max(1e-300) || n > grid.nyquist() + 100_000 {
            break;
        }
    }
    let w = w_of(l, &e);
    Ok(WaveProfile {
        field,
        speed: c,
        params: WaveParams::BbmCnoidal {
            l,
            k,
            w,
            a: mean_value(l, &e, c),
            b,
            d,
            beta1,
            beta2,
            beta3,
            branch,
        },
        tail_bound,
    })
}

/// `w` from `sqrt((w - 1)/w) = K / (K' L)`; infinite at and beyond `k_0`.
fn w_of(l: f64, e: &EllipticParams) -> f64 {
    let r = e.big_k / (e.big_kp * l);
    if r >= 1.0 {
        f64::INFINITY
    } else {
        1.0 / (1.0 - r * r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BbmScalars {
    pub k: f64,
    pub c: f64,
    pub w: f64,
    pub dw_dk: f64,
    pub a_tilde: f64,
    pub s_tilde: f64,
    pub a: f64,
}

pub fn bbm_scalars(l: f64, k: f64) -> Result<BbmScalars> {
    let e = check_modulus(l, k)?;
    let k0 = k_zero(l)?;
    if k >= k0 {
        return Err(inadmissible(format!(
            "k = {k} >= k_0 = {k0}: w(k) is not finite"
        )));
    }
    let c = speed_on(l, k, BbmBranch::Plus)?;
    let l2 = l * l;
    let (kk, kp) = (e.big_k, e.big_kp);
    let w = w_of(l, &e);
    let den = l2 * kp * kp - kk * kk;
    let dw_dk = 2.0 * l2 * kp * kk * (kp * e.dk_dk() - kk * e.dkp_dk()) / (den * den);
    let k2 = k * k;
    let r = root(k);
    let a_tilde = 16.0 * kk * kk / l2 * (3.0 * e.big_e / kk - 2.0 + k2 + r);
    let s_tilde = 16.0 * kk * kk / l2 * (r - 2.0 + k2 + 3.0 * e.big_e / kk) - 24.0 / l2 * kk / kp;
    Ok(BbmScalars {
        k,
        c,
        w,
        dw_dk,
        a_tilde,
        s_tilde,
        a: c * a_tilde,
    })
}

/// Inverts the increasing map `k -> c_plus(k)` on `(0, k_L)`.
pub fn bbm_k_for_speed(l: f64, c: f64) -> Result<f64> {
    let kl = k_l(l)?;
    let c_star = 1.0 + 4.0 * PI * PI / (l * l - 4.0 * PI * PI);
    if !(c > c_star) {
        return Err(inadmissible(format!(
            "speed {c} must exceed c* = {c_star} on the plus branch"
        )));
    }
    let f = |k: f64| c - bbm_speed(l, k).map(|s| s.0).unwrap_or(f64::INFINITY);
    let lo = 1e-12;
    if f(lo) <= 0.0 {
        return Ok(lo);
    }
    let mut hi = kl;
    while bbm_speed(l, hi).is_err() {
        hi -= 1e-13;
    }
    Ok(bisect_fine(lo, hi, f))
}

fn bisect_fine(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: f64 = 8.0;

    fn grid(n: usize) -> PeriodicGrid {
        PeriodicGrid::new(n, L).unwrap()
    }

    #[test]
    fn thresholds_at_l8() {
        let kl = k_l(L).unwrap();
        assert!((kl - 0.85158).abs() < 1e-4, "k_L = {kl}");
        let k0 = k_zero(L).unwrap();
        assert!(k0 > 0.999_999 && k0 < 1.0);
        assert!(bbm_speed(L, kl + 1e-6).is_err());
        assert!(bbm_speed(2.0 * PI, 0.3).is_err());
    }

    #[test]
    fn speed_limit_and_roots() {
        let (cp, cm) = bbm_speed(L, 1e-6).unwrap();
        let c_star = 1.0 + 4.0 * PI * PI / (L * L - 4.0 * PI * PI);
        assert!((cp - c_star).abs() < 1e-9);
        assert!((cp - 2.60995).abs() < 1e-5);
        assert!(cm > 0.0 && cm < 1.0);
        for &k in &[0.2, 0.5, 0.8] {
            let (cp, cm) = bbm_speed(L, k).unwrap();
            for c in [cp, cm] {
                assert!(speed_quadratic(L, k, c).unwrap().abs() < 1e-11 * L.powi(4));
            }
        }
    }

    #[test]
    fn system_and_scale_identities() {
        for &k in &[0.2, 0.5] {
            let res = bbm_system_residuals(L, k).unwrap();
            assert!(res.iter().all(|&r| r < 1e-9), "{res:?}");
            let w = bbm_cnoidal(L, k, grid(64)).unwrap();
            if let WaveParams::BbmCnoidal {
                b, d, beta1, beta3, ..
            } = w.params
            {
                let e = complete_elliptic(k).unwrap();
                let c = w.speed;
                assert!((((beta3 - beta1) / (12.0 * c)).sqrt() - 2.0 * e.big_k / L).abs() < 1e-11);
                assert!((d - 2.0 * e.big_k / L).abs() < 1e-15);
                assert!((b - 48.0 * c * e.big_k * e.big_k / (L * L)).abs() < 1e-11 * b);
            } else {
                unreachable!();
            }
        }
    }

    #[test]
    fn ode_residual_and_coefficients() {
        for &k in &[0.2, 0.5] {
            let w = bbm_cnoidal(L, k, grid(512)).unwrap();
            assert!(w.residual().unwrap() < 1e-8);
            assert!((w.field.mean() - bbm_fourier_coeffs(L, k, 0).unwrap()).abs() < 1e-10);
            for n in 1..=8 {
                let a = bbm_fourier_coeffs(L, k, n).unwrap();
                assert!(
                    (w.field.coeff(n).re - a).abs() < 1e-8 * a.abs().max(1e-3),
                    "n={n}"
                );
                assert!((w.field.coeff(-n) - w.field.coeff(n)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn small_modulus_collapses_the_amplitude() {
        let w = bbm_cnoidal(L, 1e-3, grid(64)).unwrap();
        if let WaveParams::BbmCnoidal { beta2, beta3, .. } = w.params {
            let e = complete_elliptic(1e-3).unwrap();
            let lead = 48.0 * w.speed * e.big_k * e.big_k * 1e-6 / (L * L);
            assert!(((beta3 - beta2) / lead - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn scalar_limits() {
        let s = bbm_scalars(L, 1e-6).unwrap();
        assert!((s.a_tilde - 8.0 * PI * PI / (L * L)).abs() < 1e-9);
        let s = bbm_scalars(L, 0.5).unwrap();
        assert!(s.w > 1.0 && s.dw_dk > 0.0);
        let h = 1e-6;
        let fd =
            (bbm_scalars(L, 0.5 + h).unwrap().w - bbm_scalars(L, 0.5 - h).unwrap().w) / (2.0 * h);
        assert!((fd - s.dw_dk).abs() < 1e-6 * s.dw_dk.abs().max(1e-6));
    }

    #[test]
    fn speed_inversion() {
        let (c, _) = bbm_speed(L, 0.5).unwrap();
        let k = bbm_k_for_speed(L, c).unwrap();
        assert!((k - 0.5).abs() < 1e-10);
        assert!(bbm_k_for_speed(L, 2.0).is_err());
    }

    #[test]
    fn minus_branch_is_opt_in() {
        let w = bbm_cnoidal_branch(L, 0.5, grid(256), BbmBranch::Minus).unwrap();
        assert!(w.speed > 0.0 && w.speed < 1.0);
        assert!(w.residual().unwrap() < 1e-8);
    }
}
