use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{PeriodicGrid, SpectralField};
use crate::waves::{bbm_cnoidal, bbm_k_for_speed, rbo_wave, WaveProfile};

/// `F(phi) = 1/2 int (phi alpha(D) phi + phi^2) = (P/2) sum (1 + alpha) |phi_n|^2`.
pub fn momentum(profile: &WaveProfile) -> Result<f64> {
    let lin = profile.field.apply(&profile.dispersion())?;
    Ok(0.5 * (profile.field.inner_product(&lin)? + profile.field.inner_product(&profile.field)?))
}

/// `phi + alpha(D) phi`, the gradient of `F` at `phi`.
pub fn momentum_gradient(profile: &WaveProfile) -> Result<SpectralField> {
    let lin = profile.field.apply(&profile.dispersion())?;
    profile.field.axpy(1.0, &lin)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub c: f64,
    pub h: f64,
    /// Richardson-extrapolated `dF/dc`.
    pub d_f_dc: f64,
    /// `I = -dF/dc`.
    pub index: f64,
    /// `(chi, phi + alpha(D) phi)` with `chi = -d phi/dc` by the same
    /// differences.
    pub pairing: f64,
    /// `|index - pairing| / |index|`.
    pub consistency: f64,
}

/// Stability index of a one-parameter family of waves, by central
/// differences in `c` with one Richardson step.
pub fn stability_index(
    family: impl Fn(f64) -> Result<WaveProfile>,
    c: f64,
    h: f64,
) -> Result<IndexReport> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step h = {h}")));
    }
    let centre = family(c)?;
    let grad = momentum_gradient(&centre)?;
    let diff = |step: f64| -> Result<(f64, SpectralField)> {
        let up = family(c + step)?;
        let dn = family(c - step)?;
        if !up.grid().same_as(dn.grid()) || !up.grid().same_as(centre.grid()) {
            return Err(Error::GridMismatch);
        }
        let df = (momentum(&up)? - momentum(&dn)?) / (2.0 * step);
        let dphi = up.field.axpy(-1.0, &dn.field)?.scale(0.5 / step);
        Ok((df, dphi))
    };
    let (d1, p1) = diff(h)?;
    let (d2, p2) = diff(0.5 * h)?;
    let d_f_dc = (4.0 * d2 - d1) / 3.0;
    let dphi = p2.scale(4.0 / 3.0).axpy(-1.0 / 3.0, &p1)?;
    let pairing = -dphi.inner_product(&grad)?;
    let index = -d_f_dc;
    Ok(IndexReport {
        c,
        h,
        d_f_dc,
        index,
        pairing,
        consistency: (index - pairing).abs() / index.abs().max(f64::MIN_POSITIVE),
    })
}

/// `c -> phi_c` for the rBO family at half period `L`.
pub fn rbo_family(l: f64, grid: PeriodicGrid) -> impl Fn(f64) -> Result<WaveProfile> {
    move |c| rbo_wave(c, l, grid)
}

/// `c -> phi_c` for the plus-branch BBM cnoidal family at period `L`.
pub fn bbm_family(l: f64, grid: PeriodicGrid) -> impl Fn(f64) -> Result<WaveProfile> {
    move |c| bbm_cnoidal(l, bbm_k_for_speed(l, c)?, grid)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::waves::{bbm_speed, rbo_index_closed_form};

    #[test]
    fn rbo_index_matches_the_closed_form() {
        let l = 2.0 * PI;
        let g = PeriodicGrid::new(256, 2.0 * l).unwrap();
        let r = stability_index(rbo_family(l, g), 4.0, 1e-3).unwrap();
        let exact = rbo_index_closed_form(4.0, l).unwrap();
        assert!(r.index < 0.0);
        assert!(
            (r.index - exact).abs() < 1e-6 * exact.abs(),
            "{} vs {exact}",
            r.index
        );
        assert!(r.consistency < 1e-6);
    }

    #[test]
    fn bbm_index_is_negative() {
        let l = 8.0;
        let g = PeriodicGrid::new(256, l).unwrap();
        let (c, _) = bbm_speed(l, 0.5).unwrap();
        let r = stability_index(bbm_family(l, g), c, 1e-3).unwrap();
        assert!(r.index < 0.0);
        assert!(r.consistency < 1e-5, "{r:?}");
    }

    #[test]
    fn inadmissible_steps_are_reported() {
        let l = 2.0 * PI;
        let g = PeriodicGrid::new(64, 2.0 * l).unwrap();
        assert!(stability_index(rbo_family(l, g), 2.0005, 1e-3).is_err());
    }
}
