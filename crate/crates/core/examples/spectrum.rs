// Spectrum of the truncated linearization about the rBO wave.

use std::f64::consts::PI;

use periwave::fourier::{PeriodicGrid, SymbolSpec};
use periwave::linop::{assemble, eigen_report};
use periwave::waves::rbo_wave;

pub fn run_example() -> periwave::Result<()> {
    let l = 2.0 * PI;
    let w = rbo_wave(4.0, l, PeriodicGrid::new(512, 2.0 * l)?)?;
    let dphi = w.field.apply(&SymbolSpec::Deriv)?;
    for m in [32, 64, 96] {
        let a = assemble(&w, &w.dispersion(), w.nonlinearity(), m)?;
        let r = eigen_report(&a, Some(&dphi))?;
        println!(
            "M {m}: negative {} lambda0 {:.10} zero {:?} next {:?}",
            r.count_negative, r.eigenvalues[0], r.zero, r.first_positive
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
