// One period of rBO travel, then a perturbed run with conserved
// quantities tracked.

use std::f64::consts::PI;

use periwave::evolution::{evolve_rk4, EvolveOptions, Model};
use periwave::fourier::{PeriodicGrid, SpectralField};
use periwave::waves::rbo_wave;

pub fn run_example() -> periwave::Result<()> {
    let l = 2.0 * PI;
    let grid = PeriodicGrid::new(256, 2.0 * l)?;
    let w = rbo_wave(4.0, l, grid)?;
    let model = Model::rbo(grid);
    let t = 2.0 * l / w.speed;
    let steps = (t / 1e-3).ceil();
    let traj = evolve_rk4(&w.field, t, t / steps, &model, &EvolveOptions::default())?;
    let err = traj.last().axpy(-1.0, &w.field)?.max_abs() / w.field.max_abs();
    println!("one period: relative error {err:.2e}");

    let bump = SpectralField::from_fn(grid, |x| 0.05 * (x / 2.0).cos());
    let u0 = w.field.axpy(1.0, &bump)?;
    let traj = evolve_rk4(&u0, 5.0, 1e-3, &model, &EvolveOptions::default())?;
    let (de, df, dg) = traj.drift();
    println!(
        "perturbed to t = 5: drift E {de:.2e} F {df:.2e} G {dg:.2e} status {:?}",
        traj.status
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
