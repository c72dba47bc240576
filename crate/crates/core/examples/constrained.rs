// Constrained minima of the rBO linearization over one and two
// orthogonality constraints.

use std::f64::consts::PI;

use periwave::fourier::{PeriodicGrid, SymbolSpec};
use periwave::linop::{assemble, coercivity_estimate, constrained_min};
use periwave::waves::rbo_wave;

pub fn run_example() -> periwave::Result<()> {
    let l = 2.0 * PI;
    let w = rbo_wave(4.0, l, PeriodicGrid::new(256, 2.0 * l)?)?;
    let op = assemble(&w, &SymbolSpec::HilbertDeriv, 1, 48)?;
    let g1 = w
        .field
        .axpy(1.0, &w.field.apply(&SymbolSpec::HilbertDeriv)?)?;
    let g2 = w.field.power(2).apply(&SymbolSpec::Deriv)?.scale(0.5);
    let alpha = constrained_min(&op, std::slice::from_ref(&g1))?;
    let beta = constrained_min(&op, &[g1.clone(), g2.clone()])?;
    let est = coercivity_estimate(&op, &[g1, g2])?;
    println!("alpha {alpha:.3e} beta {beta:.10} beta0 {:.10}", est.beta0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
