use serde::{Deserialize, Serialize};

use super::fit::linear_fit;
use super::orbital::{orbital_distance, OrbitNorm};
use crate::error::{Error, Result};
use crate::evolution::{default_step, evolve_rk4, EvolveOptions, Model, RunStatus};
use crate::fourier::{SpectralField, SymbolSpec};
use crate::waves::WaveProfile;

/// Shape of the perturbation added to the wave.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Perturbation {
    /// `cos(2 pi k x / P)`.
    Harmonic { k: u32 },
    /// `sin(2 pi k x / P)`, odd and therefore partly a translation.
    SineHarmonic { k: u32 },
    /// Explicit real Fourier coefficients `(n, re, im)`.
    Modes { coeffs: Vec<(i64, f64, f64)> },
}

impl Default for Perturbation {
    fn default() -> Self {
        Perturbation::Harmonic { k: 1 }
    }
}

impl Perturbation {
    pub fn field(&self, like: &SpectralField) -> Result<SpectralField> {
        let g = *like.grid();
        let q = 2.0 * std::f64::consts::PI / g.period();
        Ok(match self {
            Perturbation::Harmonic { k } => {
                SpectralField::from_fn(g, |x| (q * *k as f64 * x).cos())
            }
            Perturbation::SineHarmonic { k } => {
                SpectralField::from_fn(g, |x| (q * *k as f64 * x).sin())
            }
            Perturbation::Modes { coeffs } => {
                let mut f = SpectralField::zeros(g);
                for &(n, re, im) in coeffs {
                    if n.abs() >= g.nyquist() {
                        return Err(Error::InvalidParameter(format!(
                            "perturbation mode {n} not resolved on {} points",
                            g.num_points()
                        )));
                    }
                    let z = num_complex::Complex64::new(re, im);
                    let i = g.slot(n).expect("mode below Nyquist");
                    let j = g.slot(-n).expect("mode below Nyquist");
                    f.coeffs_mut()[i] += z;
                    if n != 0 {
                        f.coeffs_mut()[j] += z.conj();
                    } else {
                        f.coeffs_mut()[i] = num_complex::Complex64::from(re);
                    }
                }
                f
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityConfig {
    pub delta: f64,
    pub horizon: f64,
    /// `None` uses the integrator default.
    pub dt: Option<f64>,
    pub output_every: f64,
    pub perturbation: Perturbation,
    pub norm: OrbitNorm,
    /// Rescale the initial state so `F(u0) = F(phi)`.
    pub normalize_momentum: bool,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        Self {
            delta: 1e-3,
            horizon: 50.0,
            dt: None,
            output_every: 0.1,
            perturbation: Perturbation::default(),
            norm: OrbitNorm::default(),
            normalize_momentum: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityRun {
    pub speed: f64,
    pub period: f64,
    pub num_points: usize,
    pub dt: f64,
    pub config: StabilityConfig,
    pub times: Vec<f64>,
    pub distances: Vec<f64>,
    pub shifts: Vec<f64>,
    /// `|(v, phi phi')| / (||v|| ||phi phi'||)` with `v = u(. + y*) - phi`.
    pub orthogonality: Vec<f64>,
    pub d0: f64,
    pub max_ratio: f64,
    /// Least-squares slope of `d(t)` over the second half of the run.
    pub late_slope: f64,
    /// Output times where the optimal shift jumped.
    pub shift_jumps: Vec<f64>,
    /// Relative drift of `E`, `F` and `G`.
    pub drift: (f64, f64, f64),
    pub completed: bool,
    pub warnings: Vec<String>,
}

impl StabilityRun {
    /// `t,d,d_over_delta,shift,orthogonality` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,d,d_over_delta,shift,orthogonality\n");
        for i in 0..self.times.len() {
            let ratio = if self.config.delta > 0.0 {
                self.distances[i] / self.config.delta
            } else {
                0.0
            };
            s.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                self.times[i], self.distances[i], ratio, self.shifts[i], self.orthogonality[i]
            ));
        }
        s
    }
}

fn model_for(profile: &WaveProfile) -> Result<Model> {
    Model::new(
        *profile.grid(),
        profile.nonlinearity(),
        profile.dispersion(),
    )
}

/// `lambda (phi + eps g)` with `eps` chosen so the distance to `phi` is
/// `delta`, and `lambda` restoring `F` when requested.
pub fn perturbed_state(
    profile: &WaveProfile,
    model: &Model,
    g: &SpectralField,
    delta: f64,
    norm: OrbitNorm,
    normalize: bool,
) -> Result<SpectralField> {
    let phi = &profile.field;
    if delta == 0.0 {
        return Ok(phi.clone());
    }
    let gn = norm.norm(g);
    if !(gn > 0.0) {
        return Err(Error::InvalidParameter("perturbation is zero".into()));
    }
    let f_phi = model.conserved(phi).f;
    let make = |eps: f64| -> Result<SpectralField> {
        let u = phi.axpy(eps, g)?;
        if normalize {
            let lam = (f_phi / model.conserved(&u).f).sqrt();
            Ok(u.scale(lam))
        } else {
            Ok(u)
        }
    };
    let dist = |eps: f64| -> Result<f64> { Ok(norm.norm(&make(eps)?.axpy(-1.0, phi)?)) };
    let mut hi = 2.0 * delta / gn;
    let mut tries = 0;
    while dist(hi)? < delta {
        hi *= 2.0;
        tries += 1;
        if tries > 60 {
            return Err(Error::InvalidParameter(format!(
                "cannot reach distance {delta} with this perturbation"
            )));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dist(mid)? < delta {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    make(0.5 * (lo + hi))
}

/// Evolves a perturbed wave and records its distance to the orbit of
/// translates.
pub fn stability_run(profile: &WaveProfile, cfg: &StabilityConfig) -> Result<StabilityRun> {
    let phi = &profile.field;
    let model = model_for(profile)?;
    let size = cfg.norm.norm(phi);
    if !(cfg.delta >= 0.0) || cfg.delta > 0.05 * size {
        return Err(Error::InvalidParameter(format!(
            "delta = {} outside [0, 0.05 ||phi||] = [0, {}]",
            cfg.delta,
            0.05 * size
        )));
    }
    if !(cfg.output_every > 0.0) {
        return Err(Error::InvalidParameter(
            "output interval must be positive".into(),
        ));
    }
    let g = cfg.perturbation.field(phi)?;
    let u0 = perturbed_state(
        profile,
        &model,
        &g,
        cfg.delta,
        cfg.norm,
        cfg.normalize_momentum,
    )?;
    let dt = cfg.dt.unwrap_or_else(|| default_step(&u0));
    let opts = EvolveOptions {
        record_every: cfg.output_every,
        ..Default::default()
    };
    let traj = evolve_rk4(&u0, cfg.horizon, dt, &model, &opts)?;

    let phi_dphi = phi.power(2).apply(&SymbolSpec::Deriv)?.scale(0.5);
    let pd_norm = phi_dphi.l2_norm();
    let mut distances = Vec::with_capacity(traj.times.len());
    let mut shifts = Vec::with_capacity(traj.times.len());
    let mut orthogonality = Vec::with_capacity(traj.times.len());
    for u in &traj.states {
        let od = orbital_distance(u, phi, cfg.norm)?;
        let v = u.translate(od.shift).axpy(-1.0, phi)?;
        let vn = v.l2_norm();
        let o = if vn > 0.0 && pd_norm > 0.0 {
            v.inner_product(&phi_dphi)?.abs() / (vn * pd_norm)
        } else {
            0.0
        };
        distances.push(od.d);
        shifts.push(od.shift);
        orthogonality.push(o);
    }

    let p = phi.grid().period();
    let mut shift_jumps = Vec::new();
    for i in 1..shifts.len() {
        let dt_out = traj.times[i] - traj.times[i - 1];
        let expected = profile.speed * dt_out;
        let step = shifts[i] - shifts[i - 1] - expected;
        let jump = (step + 0.5 * p).rem_euclid(p) - 0.5 * p;
        if jump.abs() > 0.05 * p {
            shift_jumps.push(traj.times[i]);
        }
    }

    let half = traj.times.last().copied().unwrap_or(0.0) * 0.5;
    let late: Vec<(f64, f64)> = traj
        .times
        .iter()
        .zip(&distances)
        .filter(|(t, _)| **t >= half)
        .map(|(t, d)| (*t, *d))
        .collect();
    let late_slope = if late.len() >= 2 {
        linear_fit(&late).map(|f| f.slope).unwrap_or(0.0)
    } else {
        0.0
    };
    let max_d = distances.iter().copied().fold(0.0, f64::max);
    let max_ratio = if cfg.delta > 0.0 {
        max_d / cfg.delta
    } else {
        0.0
    };
    let mut warnings = traj.warnings.clone();
    if !shift_jumps.is_empty() {
        warnings.push(format!(
            "optimal shift jumped at {} output times",
            shift_jumps.len()
        ));
    }
    Ok(StabilityRun {
        speed: profile.speed,
        period: p,
        num_points: phi.grid().num_points(),
        dt,
        config: cfg.clone(),
        d0: distances[0],
        times: traj.times.clone(),
        distances,
        shifts,
        orthogonality,
        max_ratio,
        late_slope,
        shift_jumps,
        drift: traj.drift(),
        completed: traj.status == RunStatus::Completed,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::fourier::PeriodicGrid;
    use crate::waves::rbo_wave;

    fn profile() -> WaveProfile {
        let l = 2.0 * PI;
        rbo_wave(4.0, l, PeriodicGrid::new(128, 2.0 * l).unwrap()).unwrap()
    }

    #[test]
    fn initial_distance_and_momentum_are_matched() {
        let w = profile();
        let m = model_for(&w).unwrap();
        let g = Perturbation::default().field(&w.field).unwrap();
        let u0 = perturbed_state(&w, &m, &g, 1e-3, OrbitNorm::default(), true).unwrap();
        let d = OrbitNorm::default().norm(&u0.axpy(-1.0, &w.field).unwrap());
        assert!((d - 1e-3).abs() < 1e-12);
        let (f0, f1) = (m.conserved(&w.field).f, m.conserved(&u0).f);
        assert!((f0 - f1).abs() < 1e-12 * f0);
    }

    #[test]
    fn unperturbed_wave_stays_on_the_orbit() {
        let cfg = StabilityConfig {
            delta: 0.0,
            horizon: 2.0,
            dt: Some(1e-3),
            ..Default::default()
        };
        let r = stability_run(&profile(), &cfg).unwrap();
        assert!(r.distances.iter().all(|&d| d < 1e-8), "{:?}", r.distances);
        assert!(r.shift_jumps.is_empty());
        assert_eq!(r.times.len(), 21);
    }

    #[test]
    fn oversized_delta_is_rejected() {
        let cfg = StabilityConfig {
            delta: 10.0,
            ..Default::default()
        };
        assert!(matches!(
            stability_run(&profile(), &cfg),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn explicit_modes_build_a_real_field() {
        let w = profile();
        let p = Perturbation::Modes {
            coeffs: vec![(2, 0.5, 0.25), (0, 1.0, 0.0)],
        };
        let f = p.field(&w.field).unwrap();
        assert!(f.hermitian_defect() < 1e-15);
        assert!((f.mean() - 1.0).abs() < 1e-15);
    }
}
