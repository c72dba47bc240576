//! Complete elliptic integrals and Jacobi elliptic functions.
//!
//! Everything is parametrized by the modulus `k`, not the parameter
//! `m = k^2`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

const AGM_TOL: f64 = 1e-15;
const AGM_MAX_ITER: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticParams {
    pub k: f64,
    /// `sqrt(1 - k^2)`.
    pub kp: f64,
    pub big_k: f64,
    pub big_e: f64,
    /// `K(k')`.
    pub big_kp: f64,
    /// `E(k')`.
    pub big_ep: f64,
    /// `exp(-pi K'/K)`.
    pub nome: f64,
}

impl EllipticParams {
    /// `E K' + E' K - K K' - pi/2`.
    pub fn legendre_residual(&self) -> f64 {
        self.big_e * self.big_kp + self.big_ep * self.big_k - self.big_k * self.big_kp - 0.5 * PI
    }

    /// `dK/dk = (E - k'^2 K) / (k k'^2)`.
    pub fn dk_dk(&self) -> f64 {
        let kp2 = self.kp * self.kp;
        (self.big_e - kp2 * self.big_k) / (self.k * kp2)
    }

    /// `dE/dk = (E - K) / k`.
    pub fn de_dk(&self) -> f64 {
        (self.big_e - self.big_k) / self.k
    }

    /// `dK'/dk`, by the chain rule through `k' = sqrt(1 - k^2)`.
    pub fn dkp_dk(&self) -> f64 {
        let k2 = self.k * self.k;
        -(self.big_ep - k2 * self.big_kp) / (self.kp * self.kp * self.k)
    }
}

/// `(agm, K, E)` for modulus `k` in `[0, 1)`.
fn complete_pair(k: f64) -> (f64, f64, f64) {
    let mut a = 1.0;
    let mut b = (1.0 - k * k).sqrt();
    let mut c = k;
    let mut pow = 0.5;
    let mut sum = pow * c * c;
    for _ in 0..AGM_MAX_ITER {
        if c.abs() <= AGM_TOL * a {
            break;
        }
        let an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = an;
        pow *= 2.0;
        sum += pow * c * c;
    }
    let big_k = 0.5 * PI / a;
    (a, big_k, big_k * (1.0 - sum))
}

pub fn complete_elliptic(k: f64) -> Result<EllipticParams> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::ModulusOutOfRange(k));
    }
    let kp = (1.0 - k * k).sqrt();
    let (_, big_k, big_e) = complete_pair(k);
    let (_, big_kp, big_ep) = complete_pair(kp);
    Ok(EllipticParams {
        k,
        kp,
        big_k,
        big_e,
        big_kp,
        big_ep,
        nome: (-PI * big_kp / big_k).exp(),
    })
}

/// `(sn, cn, dn)(u; k)` by descending Landen transformation.
pub fn jacobi(u: f64, k: f64) -> (f64, f64, f64) {
    if k < 1e-12 {
        return (u.sin(), u.cos(), 1.0);
    }
    let mut a = vec![1.0];
    let mut c = vec![k];
    let mut b = (1.0 - k * k).sqrt();
    while c.last().unwrap().abs() > 1e-16 && a.len() <= AGM_MAX_ITER {
        let an = *a.last().unwrap();
        c.push(0.5 * (an - b));
        a.push(0.5 * (an + b));
        b = (an * b).sqrt();
    }
    let steps = a.len() - 1;
    let mut phi = (1u64 << steps) as f64 * a[steps] * u;
    for n in (1..=steps).rev() {
        phi = 0.5 * (phi + (c[n] / a[n] * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - k * k * sn * sn).sqrt();
    (sn, cn, dn)
}

/// `q^n / (1 - q^{2n})`, the weight of mode `n` in the `dn^2` series.
pub fn nome_weight(q: f64, n: u32) -> f64 {
    let qn = q.powi(n as i32);
    qn / (1.0 - qn * qn)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circular_limit() {
        let e = complete_elliptic(1e-9).unwrap();
        assert!((e.big_k - 0.5 * PI).abs() < 1e-15);
        assert!((e.big_e - 0.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn lemniscate_value() {
        let e = complete_elliptic(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((e.big_k - 1.854074677301372).abs() < 1e-14);
        assert!((e.big_k - e.big_kp).abs() < 1e-14);
    }

    #[test]
    fn legendre_relation_holds() {
        for &k in &[0.01, 0.2, 0.5, 0.8, 0.99, 0.999] {
            let e = complete_elliptic(k).unwrap();
            assert!(e.legendre_residual().abs() < 1e-12, "k={k}");
            assert!(e.big_e < e.big_k);
            assert!(e.nome > 0.0 && e.nome < 1.0);
        }
    }

    #[test]
    fn rejects_bad_modulus() {
        for &k in &[0.0, 1.0, -0.3, 1.2, f64::NAN] {
            assert!(complete_elliptic(k).is_err());
        }
    }

    #[test]
    fn jacobi_special_values() {
        let (sn, cn, dn) = jacobi(0.0, 0.6);
        assert_eq!((sn, cn, dn), (0.0, 1.0, 1.0));
        let e = complete_elliptic(0.6).unwrap();
        let (sn, cn, dn) = jacobi(e.big_k, 0.6);
        assert!((sn - 1.0).abs() < 1e-12);
        assert!(cn.abs() < 1e-7 || (cn * cn).abs() < 1e-12);
        assert!((dn - 0.8).abs() < 1e-12);
    }

    #[test]
    fn jacobi_identities_and_period() {
        let k = 0.7;
        let e = complete_elliptic(k).unwrap();
        for i in 0..50 {
            let u = -3.0 + 0.13 * i as f64;
            let (sn, cn, dn) = jacobi(u, k);
            assert!((sn * sn + cn * cn - 1.0).abs() < 1e-11);
            assert!((dn * dn + k * k * sn * sn - 1.0).abs() < 1e-11);
            let (_, _, dn2) = jacobi(u + 2.0 * e.big_k, k);
            assert!((dn - dn2).abs() < 1e-11);
            let (_, cn4, _) = jacobi(u + 4.0 * e.big_k, k);
            assert!((cn - cn4).abs() < 1e-10);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for &k in &[0.2, 0.5, 0.9] {
            let e = complete_elliptic(k).unwrap();
            let h = 1e-6;
            let up = complete_elliptic(k + h).unwrap();
            let dn = complete_elliptic(k - h).unwrap();
            let fd_k = (up.big_k - dn.big_k) / (2.0 * h);
            let fd_e = (up.big_e - dn.big_e) / (2.0 * h);
            let fd_kp = (up.big_kp - dn.big_kp) / (2.0 * h);
            assert!((fd_k - e.dk_dk()).abs() < 1e-7 * e.dk_dk().abs().max(1.0));
            assert!((fd_e - e.de_dk()).abs() < 1e-7 * e.de_dk().abs().max(1.0));
            assert!((fd_kp - e.dkp_dk()).abs() < 1e-7 * e.dkp_dk().abs().max(1.0));
        }
    }

    #[test]
    fn nome_weight_is_half_csch() {
        let e = complete_elliptic(0.5).unwrap();
        for n in 1..=20u32 {
            let want = 0.5 / (n as f64 * PI * e.big_kp / e.big_k).sinh();
            let got = nome_weight(e.nome, n);
            assert!((got - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn dn_squared_series() {
        let k = 0.5;
        let e = complete_elliptic(k).unwrap();
        let l = 8.0;
        for j in 0..64 {
            let xi = j as f64 * l / 64.0;
            let (_, _, dn) = jacobi(2.0 * e.big_k * xi / l, k);
            let lhs = e.big_k * e.big_k * (dn * dn - e.big_e / e.big_k);
            let rhs: f64 = (1..80u32)
                .map(|n| n as f64 * nome_weight(e.nome, n) * (2.0 * PI * n as f64 * xi / l).cos())
                .sum::<f64>()
                * 2.0
                * PI
                * PI;
            assert!((lhs - rhs).abs() < 1e-10, "xi={xi}: {lhs} vs {rhs}");
        }
    }
}
