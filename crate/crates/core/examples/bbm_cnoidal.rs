// Cnoidal BBM waves along the plus branch for several moduli.

use periwave::fourier::PeriodicGrid;
use periwave::waves::{bbm_cnoidal, bbm_speed, bbm_system_residuals};

pub fn run_example() -> periwave::Result<()> {
    let l = 8.0;
    for k in [0.3, 0.5, 0.7] {
        let (c_plus, c_minus) = bbm_speed(l, k)?;
        let w = bbm_cnoidal(l, k, PeriodicGrid::new(512, l)?)?;
        println!(
            "k {k}: c+ {c_plus:.10} c- {c_minus:.10} residual {:.2e} system {:?}",
            w.residual()?,
            bbm_system_residuals(l, k)?
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
