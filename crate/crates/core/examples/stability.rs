// Perturbed rBO wave at c = 4, L = 2 pi: distance to the orbit of
// translates for two perturbation sizes.

use std::f64::consts::PI;
use std::time::Instant;

use periwave::experiments::{stability_run, StabilityConfig};
use periwave::fourier::PeriodicGrid;
use periwave::waves::rbo_wave;

pub fn run_example() -> periwave::Result<()> {
    let l = 2.0 * PI;
    let horizon = std::env::var("PERIWAVE_HORIZON")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10.0);
    let wave = rbo_wave(4.0, l, PeriodicGrid::new(256, 2.0 * l)?)?;
    for delta in [1e-3, 5e-4] {
        let t0 = Instant::now();
        let cfg = StabilityConfig {
            delta,
            horizon,
            ..Default::default()
        };
        let run = stability_run(&wave, &cfg)?;
        println!(
            "delta {delta:.1e}: d0/delta {:.6} max d/delta {:.6} late slope/delta {:+.3e} jumps {} ({:.2?})",
            run.d0 / delta,
            run.max_ratio,
            run.late_slope / delta,
            run.shift_jumps.len(),
            t0.elapsed()
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
