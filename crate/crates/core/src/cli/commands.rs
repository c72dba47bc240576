use std::f64::consts::PI;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::args::*;
use super::config::RunConfig;
use super::output::{fmt17, OutputDir};
use super::{typed, Context, Failure};
use crate::error::{Error, Result};
use crate::evolution::{
    default_step, evolve_rk4, picard_solve, EvolveOptions, Model, PicardOptions,
};
use crate::experiments::{
    check_resonance_bound, duhamel_periodic, dyadic, illposed_nonperiodic, illposed_scan,
    orbital_distance, picard2_periodic, stability_run, OrbitNorm, Perturbation, StabilityConfig,
};
use crate::fourier::{PeriodicGrid, SpectralField, SymbolSpec};
use crate::linop::{
    assemble, bbm_family, coercivity_estimate, constrained_min, eigen_report, even_sequence,
    pf2_check, rbo_family, stability_index,
};
use crate::waves::{
    bbm_cnoidal, bbm_cnoidal_branch, bbm_csch_kernel, bbm_scalars, bbm_speed, bbm_system_residuals,
    rbo_deta_dc, rbo_dwave_dc, rbo_eta, rbo_index_closed_form, rbo_residual, rbo_wave, BbmBranch,
    WaveProfile,
};

const TWO_PI: f64 = 2.0 * PI;

pub(super) fn dispatch(
    cfg: &RunConfig,
    ctx: &Context,
) -> std::result::Result<std::path::PathBuf, Failure> {
    let p = cfg.merged_params();
    let mut out = OutputDir::create(&ctx.out_dir)?;
    let body = match cfg.command.as_str() {
        "wave rbo" => wave_rbo(typed(p)?, &mut out)?,
        "wave bbm" => wave_bbm(typed(p)?, &mut out)?,
        "spectrum rbo" => {
            let a: RboSpectrumArgs = typed(p)?;
            let (c, l) = (a.c.unwrap_or(4.0), a.l.unwrap_or(TWO_PI));
            let m = a.m.unwrap_or(96);
            let grid = PeriodicGrid::new(a.n.unwrap_or_else(|| grid_for(m)), 2.0 * l)?;
            spectrum(&rbo_wave(c, l, grid)?, m, &mut out)?
        }
        "spectrum bbm" => {
            let a: BbmSpectrumArgs = typed(p)?;
            let (l, k) = (a.l.unwrap_or(8.0), a.k.unwrap_or(0.5));
            let m = a.m.unwrap_or(64);
            let grid = PeriodicGrid::new(a.n.unwrap_or_else(|| grid_for(m)), l)?;
            spectrum(&bbm_cnoidal(l, k, grid)?, m, &mut out)?
        }
        "pf2 exp" => {
            let a: Pf2ExpArgs = typed(p)?;
            let eta = a.eta.unwrap_or(0.8);
            if !(eta > 0.0) {
                return Err(Error::InvalidParameter(format!("eta = {eta}")).into());
            }
            let seq = even_sequence(a.m.unwrap_or(16), |n| (-eta * n as f64).exp());
            pf2(json!({"sequence": "exp", "eta": eta}), &seq, &mut out)?
        }
        "pf2 rbo" => {
            let a: Pf2RboArgs = typed(p)?;
            let (c, l) = (a.c.unwrap_or(4.0), a.l.unwrap_or(TWO_PI));
            let eta = rbo_eta(c, l)?;
            let seq = even_sequence(a.m.unwrap_or(16), |n| {
                2.0 * c * PI / l * (-eta * n as f64).exp()
            });
            pf2(
                json!({"sequence": "rbo", "c": c, "L": l, "eta": eta}),
                &seq,
                &mut out,
            )?
        }
        "pf2 bbm" => {
            let a: Pf2BbmArgs = typed(p)?;
            let (l, k) = (a.l.unwrap_or(8.0), a.k.unwrap_or(0.5));
            let m = a.m.unwrap_or(16);
            let mi = m as i64;
            let seq = (-mi..=mi)
                .map(|n| bbm_csch_kernel(l, k, n))
                .collect::<Result<Vec<_>>>()?;
            pf2(
                json!({"sequence": "bbm_csch", "L": l, "k": k}),
                &seq,
                &mut out,
            )?
        }
        "pf2 linear" => {
            let a: Pf2LinearArgs = typed(p)?;
            let seq = even_sequence(a.m.unwrap_or(8), |n| 1.0 + n as f64);
            pf2(json!({"sequence": "linear"}), &seq, &mut out)?
        }
        "lemma71" => constrained_minima(typed(p)?, &mut out)?,
        "evolve rbo" => {
            let a: RboEvolveArgs = typed(p)?;
            let (c, l) = (a.c.unwrap_or(4.0), a.l.unwrap_or(TWO_PI));
            let w = rbo_wave(c, l, PeriodicGrid::new(a.n.unwrap_or(256), 2.0 * l)?)?;
            evolve(&w, a.t, a.dt, a.amp, a.record, &mut out)?
        }
        "evolve bbm" => {
            let a: BbmEvolveArgs = typed(p)?;
            let (l, k) = (a.l.unwrap_or(8.0), a.k.unwrap_or(0.5));
            let w = bbm_cnoidal(l, k, PeriodicGrid::new(a.n.unwrap_or(256), l)?)?;
            evolve(&w, a.t, a.dt, a.amp, a.record, &mut out)?
        }
        "picard" => picard(typed(p)?, &mut out)?,
        "stability rbo" => {
            let a: RboStabilityArgs = typed(p)?;
            let (c, l) = (a.c.unwrap_or(4.0), a.l.unwrap_or(TWO_PI));
            let w = rbo_wave(c, l, PeriodicGrid::new(a.n.unwrap_or(256), 2.0 * l)?)?;
            let norm = norm_named(a.norm.as_deref().unwrap_or("half"), c)?;
            stability(&w, a.delta, a.t, a.dt, a.every, a.harmonic, norm, &mut out)?
        }
        "stability bbm" => {
            let a: BbmStabilityArgs = typed(p)?;
            let (l, k) = (a.l.unwrap_or(8.0), a.k.unwrap_or(0.5));
            let w = bbm_cnoidal(l, k, PeriodicGrid::new(a.n.unwrap_or(256), l)?)?;
            let norm = norm_named(a.norm.as_deref().unwrap_or("h1"), w.speed)?;
            stability(&w, a.delta, a.t, a.dt, a.every, a.harmonic, norm, &mut out)?
        }
        "illposed scan" => scan(typed(p)?, &mut out)?,
        "illposed nonperiodic" => nonperiodic(typed(p)?, ctx.seed, &mut out)?,
        "index rbo" => {
            let a: RboIndexArgs = typed(p)?;
            let (c, l) = (a.c.unwrap_or(4.0), a.l.unwrap_or(TWO_PI));
            let grid = PeriodicGrid::new(a.n.unwrap_or(256), 2.0 * l)?;
            let r = stability_index(rbo_family(l, grid), c, a.h.unwrap_or(1e-3))?;
            let exact = rbo_index_closed_form(c, l)?;
            json!({
                "index": r,
                "closed_form": exact,
                "relative_error": (r.index - exact).abs() / exact.abs(),
                "negative": r.index < 0.0,
            })
        }
        "index bbm" => {
            let a: BbmIndexArgs = typed(p)?;
            let (l, k) = (a.l.unwrap_or(8.0), a.k.unwrap_or(0.5));
            let grid = PeriodicGrid::new(a.n.unwrap_or(256), l)?;
            let (c, _) = bbm_speed(l, k)?;
            let r = stability_index(bbm_family(l, grid), c, a.h.unwrap_or(1e-3))?;
            json!({"k": k, "index": r, "negative": r.index < 0.0})
        }
        other => return Err(Failure::UnknownCommand(other.to_string())),
    };
    if !ctx.quiet {
        print_summary(&cfg.command, &body);
    }
    let report = json!({
        "command": cfg.command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg,
        "results": body,
    });
    out.json("report.json", &report)?;
    out.json("config.json", cfg)?;
    Ok(out.finish()?)
}

fn print_summary(command: &str, body: &Value) {
    let Value::Object(m) = body else { return };
    let mut parts = Vec::new();
    for (k, v) in m {
        if let Some(i) = v.as_i64() {
            parts.push(format!("{k}={i}"));
        } else if let Some(x) = v.as_f64() {
            parts.push(format!("{k}={x:.6e}"));
        } else if let Some(b) = v.as_bool() {
            parts.push(format!("{k}={b}"));
        }
    }
    println!("{command}: {}", parts.join(" "));
}

/// Smallest power of two with at least `4 M` and 256 points.
fn grid_for(m: usize) -> usize {
    (4 * m).max(256).next_power_of_two()
}

fn norm_named(name: &str, c: f64) -> Result<OrbitNorm> {
    match name {
        "half" => Ok(OrbitNorm::Sobolev { s: 0.5 }),
        "h1" => Ok(OrbitNorm::Sobolev { s: 1.0 }),
        "weighted" => Ok(OrbitNorm::Weighted { c }),
        other => Err(Error::InvalidParameter(format!(
            "norm {other:?}; expected half, h1 or weighted"
        ))),
    }
}

fn profile_files(w: &WaveProfile, out: &mut OutputDir) -> Result<()> {
    out.json("profile.json", &w.to_document())?;
    let xs = w.grid().points();
    let ys = w.field.to_samples();
    let mut csv = String::from("x,phi\n");
    for (x, y) in xs.iter().zip(&ys) {
        csv.push_str(&format!("{},{}\n", fmt17(*x), fmt17(*y)));
    }
    out.csv("profile.csv", &csv)?;
    let rows: Vec<Vec<f64>> = xs.iter().zip(&ys).map(|(x, y)| vec![*x, *y]).collect();
    out.dat("profile.dat", &["x", "phi"], &rows)
}

/// `(max relative coefficient error over |n| <= top, csv)`.
fn coefficient_check(w: &WaveProfile, top: i64) -> (f64, String) {
    let mut csv = String::from("n,fft_re,fft_im,analytic\n");
    let mut worst: f64 = 0.0;
    for n in -top..=top {
        let z = w.field.coeff(n);
        let a = w.analytic_coeff(n);
        worst = worst.max((z.re - a).hypot(z.im) / a.abs().max(f64::MIN_POSITIVE));
        csv.push_str(&format!(
            "{n},{},{},{}\n",
            fmt17(z.re),
            fmt17(z.im),
            fmt17(a)
        ));
    }
    (worst, csv)
}

fn wave_rbo(a: RboWaveArgs, out: &mut OutputDir) -> Result<Value> {
    let (c, l) = (a.c.unwrap_or(4.0), a.l.unwrap_or(TWO_PI));
    let w = rbo_wave(c, l, PeriodicGrid::new(a.n.unwrap_or(256), 2.0 * l)?)?;
    let residual = rbo_residual(&w)?;
    let top = (w.grid().nyquist() - 1).min(32);
    let (coeff_error, csv) = coefficient_check(&w, top);
    profile_files(&w, out)?;
    out.csv("coefficients.csv", &csv)?;
    Ok(json!({
        "c": c,
        "L": l,
        "eta": rbo_eta(c, l)?,
        "residual": residual,
        "relative_residual": residual / w.field.max_abs(),
        "max_coefficient_error": coeff_error,
        "tail_bound": w.tail_bound,
        "pass": residual < 1e-10 * w.field.max_abs().max(1.0),
    }))
}

fn wave_bbm(a: BbmWaveArgs, out: &mut OutputDir) -> Result<Value> {
    let (l, k) = (a.l.unwrap_or(8.0), a.k.unwrap_or(0.5));
    let branch = match a.branch.as_deref().unwrap_or("plus") {
        "plus" => BbmBranch::Plus,
        "minus" => BbmBranch::Minus,
        other => {
            return Err(Error::InvalidParameter(format!(
                "branch {other:?}; expected plus or minus"
            )))
        }
    };
    let w = bbm_cnoidal_branch(l, k, PeriodicGrid::new(a.n.unwrap_or(512), l)?, branch)?;
    let residual = w.residual()?;
    let top = (w.grid().nyquist() - 1).min(8);
    let (coeff_error, csv) = coefficient_check(&w, top);
    let (c_plus, c_minus) = bbm_speed(l, k)?;
    profile_files(&w, out)?;
    out.csv("coefficients.csv", &csv)?;
    let scalars = if branch == BbmBranch::Plus {
        bbm_scalars(l, k).ok()
    } else {
        None
    };
    Ok(json!({
        "L": l,
        "k": k,
        "branch": branch,
        "speed": w.speed,
        "c_plus": c_plus,
        "c_minus": c_minus,
        "residual": residual,
        "max_coefficient_error": coeff_error,
        "system_residuals": bbm_system_residuals(l, k)?,
        "scalars": scalars,
        "params": w.params,
    }))
}

fn spectrum(w: &WaveProfile, m: usize, out: &mut OutputDir) -> Result<Value> {
    let a = assemble(w, &w.dispersion(), w.nonlinearity(), m)?;
    let dphi = w.field.apply(&SymbolSpec::Deriv)?;
    let r = eigen_report(&a, Some(&dphi))?;
    out.json("eigen_report.json", &r)?;
    out.csv("eigenvalues.csv", &r.to_csv())?;
    let rows: Vec<Vec<f64>> = r
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i as f64, *v])
        .collect();
    out.dat("eigenvalues.dat", &["index", "eigenvalue"], &rows)?;
    Ok(json!({
        "M": m,
        "N": w.grid().num_points(),
        "speed": w.speed,
        "count_negative": r.count_negative,
        "lambda_0": r.eigenvalues.first(),
        "zero": r.zero,
        "first_positive": r.first_positive,
        "norm": r.norm,
        "kernel_alignment": r.kernel_alignment,
        "stability_structure": r.has_stability_structure(),
    }))
}

fn pf2(meta: Value, seq: &[f64], out: &mut OutputDir) -> Result<Value> {
    let r = pf2_check(seq)?;
    let m = (seq.len() / 2) as i64;
    let mut csv = String::from("n,value\n");
    for (i, v) in seq.iter().enumerate() {
        csv.push_str(&format!("{},{}\n", i as i64 - m, fmt17(*v)));
    }
    out.csv("sequence.csv", &csv)?;
    Ok(json!({
        "sequence": meta,
        "M": m,
        "pass": r.pass,
        "quadruples_checked": r.quadruples_checked,
        "witness": r.witness,
    }))
}

fn constrained_minima(a: ConstrainedArgs, out: &mut OutputDir) -> Result<Value> {
    let (c, l) = (a.c.unwrap_or(4.0), a.l.unwrap_or(TWO_PI));
    let m = a.m.unwrap_or(48);
    let grid = PeriodicGrid::new(a.n.unwrap_or_else(|| grid_for(m)), 2.0 * l)?;
    let w = rbo_wave(c, l, grid)?;
    let op = assemble(&w, &SymbolSpec::HilbertDeriv, 1, m)?;
    let norm = eigen_report(&op, None)?.norm;
    let hd = w.field.apply(&SymbolSpec::HilbertDeriv)?;
    let g1 = w.field.axpy(1.0, &hd)?;
    let g2 = w.field.power(2).apply(&SymbolSpec::Deriv)?.scale(0.5);
    let alpha = constrained_min(&op, std::slice::from_ref(&g1))?;
    let beta = constrained_min(&op, &[g1.clone(), g2.clone()])?;
    let coercivity = coercivity_estimate(&op, &[g1.clone(), g2])?;
    let chi = rbo_dwave_dc(c, l, grid)?;
    let pairing = chi.inner_product(&g1)?;
    let exact = rbo_index_closed_form(c, l)?;
    let mut csv = String::from("window,beta0\n");
    for (wnd, b) in &coercivity.trials {
        csv.push_str(&format!("{wnd},{}\n", fmt17(*b)));
    }
    out.csv("coercivity.csv", &csv)?;
    Ok(json!({
        "c": c,
        "L": l,
        "M": m,
        "operator_norm": norm,
        "alpha": alpha,
        "alpha_relative": alpha / norm,
        "beta": beta,
        "beta0": coercivity.beta0,
        "pairing": pairing,
        "pairing_closed_form": exact,
        "pairing_relative_error": (pairing - exact).abs() / exact.abs(),
        "deta_dc": rbo_deta_dc(c, l)?,
    }))
}

/// Largest step not above `dt` that divides `t`.
fn fit_step(t: f64, dt: f64) -> f64 {
    let n = (t / dt - 1e-9).ceil().max(1.0);
    t / n
}

fn evolve(
    w: &WaveProfile,
    t: Option<f64>,
    dt: Option<f64>,
    amp: Option<f64>,
    record: Option<f64>,
    out: &mut OutputDir,
) -> Result<Value> {
    let model = Model::new(*w.grid(), w.nonlinearity(), w.dispersion())?;
    let amp = amp.unwrap_or(0.0);
    let g = Perturbation::Harmonic { k: 1 }.field(&w.field)?;
    let u0 = w.field.axpy(amp, &g)?;
    let t = t.unwrap_or(w.grid().period() / w.speed);
    let requested = dt.unwrap_or_else(|| default_step(&u0));
    let step = fit_step(t, requested);
    let opts = EvolveOptions {
        record_every: record.unwrap_or(0.1),
        ..Default::default()
    };
    let traj = evolve_rk4(&u0, t, step, &model, &opts)?;
    out.csv("diagnostics.csv", &traj.diagnostics_csv())?;
    out.csv("states.csv", &traj.states_csv())?;
    let snapshots: Vec<Value> = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(t, u)| snapshot(*t, u))
        .collect();
    out.json("snapshots.json", &snapshots)?;
    out.json("final_state.json", snapshots.last().unwrap_or(&Value::Null))?;
    let rows: Vec<Vec<f64>> = traj.diagnostics.iter().map(|d| vec![d.t, d.f]).collect();
    out.dat("momentum.dat", &["t", "F"], &rows)?;
    let last = traj.last();
    let norm = OrbitNorm::default();
    let od = orbital_distance(last, &w.field, norm)?;
    let moved = last.axpy(-1.0, &w.field.translate(-w.speed * t))?;
    let (de, df, dg) = traj.drift();
    Ok(json!({
        "T": t,
        "dt": step,
        "dt_requested": requested,
        "amp": amp,
        "status": traj.status,
        "warnings": traj.warnings,
        "drift_E": de,
        "drift_F": df,
        "drift_G": dg,
        "orbital_distance_relative": od.d / norm.norm(&w.field),
        "optimal_shift": od.shift,
        "travelling_error_relative": norm.norm(&moved) / norm.norm(&w.field),
    }))
}

/// One state in the coefficient format of the profile documents.
fn snapshot(t: f64, u: &SpectralField) -> Value {
    let grid = u.grid();
    json!({
        "t": t,
        "N": grid.num_points(),
        "P": grid.period(),
        "coeffs": grid.modes().zip(u.coeffs()).map(|(n, z)| (n, z.re, z.im)).collect::<Vec<_>>(),
    })
}

fn picard(a: PicardArgs, out: &mut OutputDir) -> Result<Value> {
    let target = a.norm.unwrap_or(0.1);
    let period = a.p.unwrap_or(TWO_PI);
    let grid = PeriodicGrid::new(a.n.unwrap_or(64), period)?;
    let q = TWO_PI / period;
    let shape = SpectralField::from_fn(grid, |x| (q * x).cos() + 0.5 * (2.0 * q * x).sin());
    let u0 = shape.scale(target / shape.sobolev_norm(1.0));
    let model = Model::rbo(grid);
    let probe = PicardOptions::default();
    let window = {
        let c0 = crate::evolution::algebra_constant(&u0, probe.s);
        0.5 / (1.0 + c0 * 2.0 * u0.sobolev_norm(probe.s))
    };
    let t = a.t.unwrap_or(window);
    let opts = PicardOptions {
        force: a.force.unwrap_or(false),
        ..probe
    };
    let sol = picard_solve(&u0, t, &model, &opts)?;
    out.csv("picard.csv", &sol.to_csv())?;
    let rows: Vec<Vec<f64>> = sol
        .ratios
        .iter()
        .enumerate()
        .map(|(j, r)| vec![j as f64, *r])
        .collect();
    out.dat("ratios.dat", &["iteration", "ratio"], &rows)?;
    let step = fit_step(t, a.dt.unwrap_or(1e-3));
    let rk = evolve_rk4(&u0, t, step, &model, &EvolveOptions::default())?;
    let gap = sol.last().axpy(-1.0, rk.last())?.sobolev_norm(1.0);
    let late_max = sol.ratios.iter().skip(2).copied().fold(0.0, f64::max);
    Ok(json!({
        "u0_norm": u0.sobolev_norm(1.0),
        "T": t,
        "window": sol.window,
        "c0": sol.c0,
        "radius": sol.radius,
        "iterations": sol.distances.len(),
        "converged": sol.converged,
        "ratios": sol.ratios,
        "max_ratio_after_second": late_max,
        "rk4_gap": gap,
        "rk4_dt": step,
    }))
}

#[allow(clippy::too_many_arguments)]
fn stability(
    w: &WaveProfile,
    deltas: Option<Vec<f64>>,
    t: Option<f64>,
    dt: Option<f64>,
    every: Option<f64>,
    harmonic: Option<u32>,
    norm: OrbitNorm,
    out: &mut OutputDir,
) -> Result<Value> {
    let deltas = deltas.unwrap_or_else(|| vec![1e-3, 5e-4]);
    if deltas.is_empty() {
        return Err(Error::InvalidParameter("no perturbation sizes".into()));
    }
    let base = StabilityConfig {
        horizon: t.unwrap_or(50.0),
        dt,
        output_every: every.unwrap_or(0.1),
        perturbation: Perturbation::Harmonic {
            k: harmonic.unwrap_or(1),
        },
        norm,
        ..Default::default()
    };
    let runs = deltas
        .par_iter()
        .map(|&delta| {
            stability_run(
                w,
                &StabilityConfig {
                    delta,
                    ..base.clone()
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summaries = Vec::new();
    for r in &runs {
        let key = format!("{:e}", r.config.delta);
        out.csv(&format!("stability_delta_{key}.csv"), &r.to_csv())?;
        let rows: Vec<Vec<f64>> = r
            .times
            .iter()
            .zip(&r.distances)
            .map(|(t, d)| {
                vec![
                    *t,
                    if r.config.delta > 0.0 {
                        d / r.config.delta
                    } else {
                        *d
                    },
                ]
            })
            .collect();
        out.dat(
            &format!("stability_delta_{key}.dat"),
            &["t", "d_over_delta"],
            &rows,
        )?;
        summaries.push(json!({
            "delta": r.config.delta,
            "dt": r.dt,
            "d0": r.d0,
            "max_ratio": r.max_ratio,
            "late_slope": r.late_slope,
            "late_slope_over_delta": if r.config.delta > 0.0 { r.late_slope / r.config.delta } else { 0.0 },
            "max_orthogonality": r.orthogonality.iter().copied().fold(0.0, f64::max),
            "shift_jumps": r.shift_jumps.len(),
            "drift": r.drift,
            "completed": r.completed,
            "warnings": r.warnings,
        }));
    }
    let ratios: Vec<f64> = runs.iter().map(|r| r.max_ratio).collect();
    let hi = ratios.iter().copied().fold(f64::MIN, f64::max);
    let lo = ratios.iter().copied().fold(f64::MAX, f64::min);
    Ok(json!({
        "speed": w.speed,
        "norm": norm,
        "runs": summaries,
        "ratio_spread": if hi > 0.0 { (hi - lo) / hi } else { 0.0 },
    }))
}

fn scan(a: ScanArgs, out: &mut OutputDir) -> Result<Value> {
    let s = a.s.unwrap_or(-0.5);
    let t = a.t.unwrap_or(1.0);
    let ns = dyadic(a.n_min.unwrap_or(32), a.n_max.unwrap_or(2048));
    let r = illposed_scan(s, t, &ns)?;
    out.csv("scan.csv", &r.to_csv())?;
    let rows: Vec<Vec<f64>> =
        r.ns.iter()
            .zip(&r.ratios)
            .map(|(n, v)| vec![(*n as f64).ln(), v.ln()])
            .collect();
    out.dat("scan.dat", &["log_N", "log_R"], &rows)?;
    let mut checks = Vec::new();
    for n in [8u32, 64] {
        let closed = picard2_periodic(n, s, t)?;
        let quad = duhamel_periodic(n, s, t, 256)?;
        let err = closed.psi.axpy(-1.0, &quad)?.max_coeff() / closed.psi.max_coeff();
        checks.push(json!({"N": n, "relative_error": err}));
    }
    Ok(json!({
        "s": s,
        "t": t,
        "slope": r.fit.slope,
        "predicted_slope": r.predicted_slope,
        "slope_error": r.slope_error,
        "fit_residual": r.fit.residual,
        "onset": r.onset,
        "compensated_spread": r.compensated_spread,
        "pass": r.pass,
        "quadrature_checks": checks,
    }))
}

fn nonperiodic(a: NonperiodicArgs, seed: u64, out: &mut OutputDir) -> Result<Value> {
    let s = a.s.unwrap_or(-0.5);
    let eps = a.eps.unwrap_or(0.2);
    let ns = a.ns.unwrap_or_else(|| vec![16, 32, 64, 128]);
    let bounds = ns
        .par_iter()
        .map(|&n| illposed_nonperiodic(n, s, eps))
        .collect::<Result<Vec<_>>>()?;
    let check = check_resonance_bound(a.samples.unwrap_or(1_000_000), 1 << 20, seed);
    let mut csv = String::from("N,t,lower_bound,ratio_proxy,compensated\n");
    for b in &bounds {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            b.n,
            fmt17(b.t),
            fmt17(b.lower_bound),
            fmt17(b.ratio_proxy),
            fmt17(b.compensated)
        ));
    }
    out.csv("nonperiodic.csv", &csv)?;
    let rows: Vec<Vec<f64>> = bounds
        .iter()
        .map(|b| vec![(b.n as f64).ln(), b.compensated])
        .collect();
    out.dat("compensated.dat", &["log_N", "compensated"], &rows)?;
    let comp: Vec<f64> = bounds.iter().map(|b| b.compensated).collect();
    let hi = comp.iter().copied().fold(f64::MIN, f64::max);
    let lo = comp.iter().copied().fold(f64::MAX, f64::min);
    Ok(json!({
        "s": s,
        "eps": eps,
        "bounds": bounds,
        "compensated_min": lo,
        "compensated_variation": hi / lo,
        "resonance": check,
        "pass": lo > 0.0 && hi / lo < 2.0 && check.violations == 0,
    }))
}
