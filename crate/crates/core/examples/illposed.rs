// Growth of the second Picard iterate for negative regularity, on the
// circle and on the line.

use periwave::experiments::{dyadic, illposed_nonperiodic, illposed_scan};

pub fn run_example() -> periwave::Result<()> {
    for s in [-0.25, -0.5, -1.0] {
        let r = illposed_scan(s, 1.0, &dyadic(32, 2048))?;
        println!(
            "s {s}: slope {:.5} predicted {:.5} error {:.2e} pass {}",
            r.fit.slope, r.predicted_slope, r.slope_error, r.pass
        );
    }
    for n in [16, 32, 64, 128] {
        let b = illposed_nonperiodic(n, -0.5, 0.2)?;
        println!(
            "line N {n}: lower bound {:.4e} compensated {:.6}",
            b.lower_bound, b.compensated
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
