use std::f64::consts::PI;

use periwave::evolution::{evolve_rk4, EvolveOptions, Model};
use periwave::fourier::{PeriodicGrid, SpectralField, SymbolSpec};
use periwave::waves::{bbm_cnoidal, rbo_wave};

fn smooth(grid: PeriodicGrid) -> SpectralField {
    SpectralField::from_fn(grid, |x| {
        0.4 * x.cos() + 0.2 * (2.0 * x).sin() + 0.1 * (3.0 * x).cos()
    })
}

#[test]
fn linearized_flow_matches_the_semigroup() {
    let grid = PeriodicGrid::new(64, 2.0 * PI).unwrap();
    let u0 = smooth(grid);
    let model = Model::rbo(grid).linearized();
    let exact = u0.apply(&SymbolSpec::Semigroup { t: 2.0 }).unwrap();
    let err = |dt: f64| {
        let traj = evolve_rk4(&u0, 2.0, dt, &model, &EvolveOptions::default()).unwrap();
        traj.last().axpy(-1.0, &exact).unwrap().l2_norm()
    };
    let (e1, e2) = (err(0.2), err(0.1));
    assert!(e1 < 1e-4, "{e1}");
    assert!((e1 / e2).log2() > 3.8, "{e1} {e2}");
}

#[test]
fn forward_then_backward_returns_the_data() {
    let grid = PeriodicGrid::new(64, 2.0 * PI).unwrap();
    let u0 = smooth(grid);
    let model = Model::rbo(grid);
    let opts = EvolveOptions::default();
    let fwd = evolve_rk4(&u0, 1.0, 1e-3, &model, &opts).unwrap();
    let back = evolve_rk4(fwd.last(), 1.0, 1e-3, &model.clone().reversed(), &opts).unwrap();
    let err = back.last().axpy(-1.0, &u0).unwrap().max_abs();
    assert!(err < 1e-7, "{err}");
}

#[test]
fn energy_drift_tracks_momentum_drift() {
    let l = 2.0 * PI;
    let grid = PeriodicGrid::new(128, 2.0 * l).unwrap();
    let w = rbo_wave(4.0, l, grid).unwrap();
    let u0 = w
        .field
        .axpy(0.1, &SpectralField::from_fn(grid, |x| (x / 2.0).cos()))
        .unwrap();
    let traj = evolve_rk4(&u0, 5.0, 5e-3, &Model::rbo(grid), &EvolveOptions::default()).unwrap();
    let (de, df, _) = traj.drift();
    let floor = 1e-14;
    assert!(
        de <= 10.0 * df.max(floor) && df <= 10.0 * de.max(floor),
        "E {de:e} F {df:e}"
    );
}

#[test]
fn bbm_wave_travels_one_period() {
    let l = 8.0;
    let grid = PeriodicGrid::new(256, l).unwrap();
    let w = bbm_cnoidal(l, 0.5, grid).unwrap();
    let model = Model::new(grid, w.nonlinearity(), w.dispersion()).unwrap();
    let t = l / w.speed;
    let dt = t / (t / 1e-3).ceil();
    let traj = evolve_rk4(&w.field, t, dt, &model, &EvolveOptions::default()).unwrap();
    let err = traj.last().axpy(-1.0, &w.field).unwrap().max_abs() / w.field.max_abs();
    assert!(err < 1e-9, "{err}");
}

#[test]
fn bbm_energy_is_nonnegative_quadratic_part() {
    let grid = PeriodicGrid::new(64, 8.0).unwrap();
    for k in 1..6 {
        let q = 2.0 * PI / 8.0;
        let u = SpectralField::from_fn(grid, |x| (k as f64 * q * x).sin() + 0.3 * (q * x).cos());
        let hu = u.apply(&SymbolSpec::NegSecondDeriv).unwrap();
        assert!(u.inner_product(&hu).unwrap() >= 0.0);
    }
}
