//! Fixed-point solver for the integral form
//! `u(t) = u0 + int_0^t K (u + u^2/2) dtau`.

use serde::{Deserialize, Serialize};

use super::model::Model;
use crate::error::{Error, Result};
use crate::fourier::SpectralField;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PicardOptions {
    /// Sobolev index of the space `X = H^s`.
    pub s: f64,
    /// Sub-intervals of the time mesh.
    pub intervals: usize,
    pub max_iterations: usize,
    /// Stop once the sup-in-time distance falls below this.
    pub tolerance: f64,
    /// Run past the guaranteed window instead of refusing.
    pub force: bool,
}

impl Default for PicardOptions {
    fn default() -> Self {
        Self {
            s: 1.0,
            intervals: 64,
            max_iterations: 80,
            tolerance: 1e-14,
            force: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub times: Vec<f64>,
    pub states: Vec<SpectralField>,
    /// `d_j = sup_t ||u^(j+1)(t) - u^(j)(t)||_X`.
    pub distances: Vec<f64>,
    /// `d_(j+1) / d_j`.
    pub ratios: Vec<f64>,
    /// Measured algebra constant.
    pub c0: f64,
    /// `R = 2 ||u0||_X`.
    pub radius: f64,
    /// `T = (1/2)(1 + c0 R)^(-1)`.
    pub window: f64,
    pub converged: bool,
}

impl PicardSolution {
    pub fn last(&self) -> &SpectralField {
        self.states.last().expect("the mesh has at least two nodes")
    }

    /// `iteration,distance,ratio` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("iteration,distance,ratio\n");
        for (j, d) in self.distances.iter().enumerate() {
            let r = if j > 0 { self.ratios[j - 1] } else { f64::NAN };
            s.push_str(&format!("{j},{d:.16e},{r:.16e}\n"));
        }
        s
    }
}

/// Probe estimate of `sup ||fg||_X / (||f||_X ||g||_X)` over trigonometric
/// monomials up to `N/4`, the constant and `u0`.
pub fn algebra_constant(u0: &SpectralField, s: f64) -> f64 {
    let grid = *u0.grid();
    let top = (grid.num_points() / 4).max(1) as i64;
    let mut probes = vec![SpectralField::from_fn(grid, |_| 1.0)];
    let mut k = 1;
    while k <= top {
        let xi = grid.frequency(k);
        probes.push(SpectralField::from_fn(grid, |x| (xi * x).cos()));
        probes.push(SpectralField::from_fn(grid, |x| (xi * x).sin()));
        k *= 2;
    }
    if u0.max_coeff() > 0.0 {
        probes.push(u0.clone());
    }
    let norms: Vec<f64> = probes.iter().map(|f| f.sobolev_norm(s)).collect();
    let mut c0: f64 = 0.0;
    for i in 0..probes.len() {
        for j in i..probes.len() {
            let a = &probes[i].to_samples();
            let b = &probes[j].to_samples();
            let prod: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
            // both factors live below N/4 except u0, so the product is resolved
            let fg = SpectralField::from_samples(grid, &prod).expect("same grid");
            c0 = c0.max(fg.sobolev_norm(s) / (norms[i] * norms[j]));
        }
    }
    c0
}

/// Cumulative integrals at every node of `h/12 (5 f_i + 8 f_(i+1) - f_(i+2))`
/// per interval, mirrored on the last one.
fn cumulative(f: &[SpectralField], h: f64) -> Result<Vec<SpectralField>> {
    let n = f.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = SpectralField::zeros(*f[0].grid());
    out.push(acc.clone());
    for i in 0..n {
        let piece = if n == 1 {
            f[0].axpy(1.0, &f[1])?.scale(0.5)
        } else if i + 2 <= n {
            f[i].scale(5.0)
                .axpy(8.0, &f[i + 1])?
                .axpy(-1.0, &f[i + 2])?
                .scale(1.0 / 12.0)
        } else {
            f[i + 1]
                .scale(5.0)
                .axpy(8.0, &f[i])?
                .axpy(-1.0, &f[i - 1])?
                .scale(1.0 / 12.0)
        };
        acc = acc.axpy(h, &piece)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// Picard iteration on `[0, t_req]`. Refuses `t_req` beyond the guaranteed
/// contraction window unless `opts.force` is set; a forced run that stops
/// contracting for three consecutive iterations fails with
/// [`Error::NoContraction`].
pub fn picard_solve(
    u0: &SpectralField,
    t_req: f64,
    model: &Model,
    opts: &PicardOptions,
) -> Result<PicardSolution> {
    if !u0.grid().same_as(model.grid()) {
        return Err(Error::GridMismatch);
    }
    if !(t_req > 0.0) || !t_req.is_finite() {
        return Err(Error::InvalidParameter(format!("time T = {t_req}")));
    }
    if opts.intervals < 2 {
        return Err(Error::InvalidParameter(
            "need at least two sub-intervals".into(),
        ));
    }
    if u0
        .coeffs()
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::InvalidParameter("initial data is not finite".into()));
    }
    let c0 = algebra_constant(u0, opts.s);
    let radius = 2.0 * u0.sobolev_norm(opts.s);
    let window = 0.5 / (1.0 + c0 * radius);
    if t_req > window * (1.0 + 1e-12) && !opts.force {
        return Err(Error::WindowExceeded {
            requested: t_req,
            window,
        });
    }
    let m = opts.intervals;
    let h = t_req / m as f64;
    let times: Vec<f64> = (0..=m).map(|i| i as f64 * h).collect();
    let mut states = vec![u0.clone(); m + 1];
    let mut distances = Vec::new();
    let mut ratios = Vec::new();
    let mut bad = 0;
    let mut converged = false;
    for _ in 0..opts.max_iterations {
        let f = states
            .iter()
            .map(|u| model.rhs(u))
            .collect::<Result<Vec<_>>>()?;
        let integrals = cumulative(&f, h)?;
        let next = integrals
            .iter()
            .map(|w| u0.axpy(1.0, w))
            .collect::<Result<Vec<_>>>()?;
        let mut d: f64 = 0.0;
        for (a, b) in next.iter().zip(&states) {
            d = d.max(a.axpy(-1.0, b)?.sobolev_norm(opts.s));
        }
        states = next;
        if !d.is_finite() {
            return Err(Error::NoContraction { ratios });
        }
        if let Some(&prev) = distances.last() {
            let r = if prev > 0.0 { d / prev } else { 0.0 };
            ratios.push(r);
            bad = if r >= 1.0 { bad + 1 } else { 0 };
            if bad >= 3 {
                return Err(Error::NoContraction { ratios });
            }
        }
        distances.push(d);
        if d <= opts.tolerance * (1.0 + radius) {
            converged = true;
            break;
        }
    }
    Ok(PicardSolution {
        times,
        states,
        distances,
        ratios,
        c0,
        radius,
        window,
        converged,
    })
}
