use serde::{Deserialize, Serialize};

use super::model::{Conserved, Model};
use crate::error::{Error, Result};
use crate::fourier::SpectralField;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostics {
    pub t: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h_half: f64,
    pub h_three_half: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    /// A non-finite value appeared; the trajectory ends at the last finite
    /// state.
    Aborted,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SpectralField>,
    pub diagnostics: Vec<StepDiagnostics>,
    pub status: RunStatus,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub fn last(&self) -> &SpectralField {
        self.states
            .last()
            .expect("a trajectory holds the initial state")
    }

    /// Largest relative drift of `E`, `F` and `G` over the run. `G` is
    /// measured against `max(|G(0)|, F(0))` since it is often zero.
    pub fn drift(&self) -> (f64, f64, f64) {
        let Some(first) = self.diagnostics.first() else {
            return (0.0, 0.0, 0.0);
        };
        let rel = |v: f64, v0: f64, s: f64| (v - v0).abs() / s.max(f64::MIN_POSITIVE);
        let (mut de, mut df, mut dg) = (0.0f64, 0.0f64, 0.0f64);
        for d in &self.diagnostics {
            de = de.max(rel(d.e, first.e, first.e.abs()));
            df = df.max(rel(d.f, first.f, first.f.abs()));
            dg = dg.max(rel(d.g, first.g, first.g.abs().max(first.f.abs())));
        }
        (de, df, dg)
    }

    /// `t,E,F,G,h_half,h_three_half` per step.
    pub fn diagnostics_csv(&self) -> String {
        let mut s = String::from("t,E,F,G,h_half,h_three_half\n");
        for d in &self.diagnostics {
            s.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                d.t, d.e, d.f, d.g, d.h_half, d.h_three_half
            ));
        }
        s
    }

    /// Recorded states as `t,x,u` rows.
    pub fn states_csv(&self) -> String {
        let mut s = String::from("t,x,u\n");
        for (t, u) in self.times.iter().zip(&self.states) {
            let xs = u.grid().points();
            for (x, v) in xs.iter().zip(u.to_samples()) {
                s.push_str(&format!("{t:.16e},{x:.16e},{v:.16e}\n"));
            }
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolveOptions {
    /// Time between recorded states; rounded to a whole number of steps.
    pub record_every: f64,
    /// Relative energy above `N/4` that triggers a resolution warning.
    pub tail_tolerance: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            record_every: 0.1,
            tail_tolerance: 1e-12,
        }
    }
}

/// `min(1e-3, 0.2 / max |u0|)`.
pub fn default_step(u0: &SpectralField) -> f64 {
    let m = u0.max_abs();
    if m > 0.0 {
        (0.2 / m).min(1e-3)
    } else {
        1e-3
    }
}

fn steps_for(t: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("time step dt = {dt}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("final time T = {t}")));
    }
    let n = (t / dt).round();
    if (n * dt - t).abs() > 1e-9 * t.max(dt) {
        return Err(Error::InvalidParameter(format!(
            "T = {t} is not a multiple of dt = {dt}"
        )));
    }
    Ok(n as usize)
}

fn tail_fraction(u: &SpectralField) -> f64 {
    let cut = u.grid().num_points() as i64 / 4;
    let (mut tail, mut all) = (0.0, 0.0);
    for (n, c) in u.grid().modes().zip(u.coeffs()) {
        let m = c.norm_sqr();
        all += m;
        if n.abs() > cut {
            tail += m;
        }
    }
    if all > 0.0 {
        tail / all
    } else {
        0.0
    }
}

fn diagnostics(model: &Model, t: f64, u: &SpectralField) -> StepDiagnostics {
    let Conserved { e, f, g } = model.conserved(u);
    StepDiagnostics {
        t,
        e,
        f,
        g,
        h_half: u.sobolev_norm(0.5),
        h_three_half: u.sobolev_norm(1.5),
    }
}

fn rk4_step(model: &Model, u: &SpectralField, dt: f64) -> Result<SpectralField> {
    let k1 = model.rhs(u)?;
    let k2 = model.rhs(&u.axpy(0.5 * dt, &k1)?)?;
    let k3 = model.rhs(&u.axpy(0.5 * dt, &k2)?)?;
    let k4 = model.rhs(&u.axpy(dt, &k3)?)?;
    let incr = k1.axpy(2.0, &k2)?.axpy(2.0, &k3)?.axpy(1.0, &k4)?;
    u.axpy(dt / 6.0, &incr)
}

fn finite(u: &SpectralField) -> bool {
    u.coeffs()
        .iter()
        .all(|c| c.re.is_finite() && c.im.is_finite())
}

/// Classical fourth-order Runge-Kutta in Fourier space, with dealiased
/// products. Diagnostics are recorded every step, states every
/// `opts.record_every`.
pub fn evolve_rk4(
    u0: &SpectralField,
    t_final: f64,
    dt: f64,
    model: &Model,
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    if !u0.grid().same_as(model.grid()) {
        return Err(Error::GridMismatch);
    }
    let steps = steps_for(t_final, dt)?;
    let every = ((opts.record_every / dt).round() as usize).max(1);
    let mut u = u0.clone();
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![u.clone()],
        diagnostics: vec![diagnostics(model, 0.0, &u)],
        status: RunStatus::Completed,
        warnings: Vec::new(),
    };
    let mut warned = false;
    for i in 1..=steps {
        let t = i as f64 * dt;
        let next = rk4_step(model, &u, dt)?;
        if !finite(&next) {
            traj.status = RunStatus::Aborted;
            traj.warnings.push(format!(
                "non-finite state at t = {t}; stopped at t = {}",
                t - dt
            ));
            if traj.times.last() != Some(&(t - dt)) {
                traj.times.push(t - dt);
                traj.states.push(u);
            }
            return Ok(traj);
        }
        u = next;
        traj.diagnostics.push(diagnostics(model, t, &u));
        if !warned && tail_fraction(&u) > opts.tail_tolerance {
            warned = true;
            traj.warnings.push(format!(
                "energy above N/4 exceeds {:e} at t = {t}; resolution may be insufficient",
                opts.tail_tolerance
            ));
        }
        if i % every == 0 || i == steps {
            traj.times.push(t);
            traj.states.push(u.clone());
        }
    }
    Ok(traj)
}
