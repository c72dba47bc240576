// Picard iteration for small rBO data and comparison with RK4.

use periwave::evolution::{evolve_rk4, picard_solve, EvolveOptions, Model, PicardOptions};
use periwave::fourier::{PeriodicGrid, SpectralField};

pub fn run_example() -> periwave::Result<()> {
    let grid = PeriodicGrid::new(64, 2.0 * std::f64::consts::PI)?;
    let shape = SpectralField::from_fn(grid, |x| x.cos() + 0.5 * (2.0 * x).sin());
    let u0 = shape.scale(0.1 / shape.sobolev_norm(1.0));
    let model = Model::rbo(grid);
    let sol = picard_solve(&u0, 0.4, &model, &PicardOptions::default())?;
    println!(
        "window {:.6} c0 {:.6} iterations {}",
        sol.window,
        sol.c0,
        sol.distances.len()
    );
    for (j, r) in sol.ratios.iter().enumerate() {
        println!("  ratio {j}: {r:.4e}");
    }
    let rk = evolve_rk4(&u0, 0.4, 1e-3, &model, &EvolveOptions::default())?;
    println!(
        "gap to RK4 {:.2e}",
        sol.last().axpy(-1.0, rk.last())?.sobolev_norm(1.0)
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
