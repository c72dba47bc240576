// Closed-form rBO wave: residual of the profile equation and agreement
// of FFT coefficients with the geometric sequence.

use std::f64::consts::PI;

use periwave::fourier::PeriodicGrid;
use periwave::waves::{rbo_eta, rbo_residual, rbo_wave};

pub fn run_example() -> periwave::Result<()> {
    let l = 2.0 * PI;
    for c in [2.5, 4.0, 8.0] {
        let w = rbo_wave(c, l, PeriodicGrid::new(256, 2.0 * l)?)?;
        let worst = (-16..=16)
            .map(|n| (w.field.coeff(n).re - w.analytic_coeff(n)).abs())
            .fold(0.0, f64::max);
        println!(
            "c {c}: eta {:.6} max phi {:.6} residual {:.2e} coeff error {:.2e}",
            rbo_eta(c, l)?,
            w.field.max_abs(),
            rbo_residual(&w)?,
            worst
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
