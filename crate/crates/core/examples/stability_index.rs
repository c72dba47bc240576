// Sign of -dF/dc along the rBO and BBM families.

use std::f64::consts::PI;

use periwave::fourier::PeriodicGrid;
use periwave::linop::{bbm_family, rbo_family, stability_index};
use periwave::waves::{bbm_speed, rbo_index_closed_form};

pub fn run_example() -> periwave::Result<()> {
    let l = 2.0 * PI;
    let grid = PeriodicGrid::new(256, 2.0 * l)?;
    for c in [3.0, 4.0, 6.0] {
        let r = stability_index(rbo_family(l, grid), c, 1e-3)?;
        println!(
            "rbo c {c}: index {:.10} closed form {:.10}",
            r.index,
            rbo_index_closed_form(c, l)?
        );
    }
    let grid = PeriodicGrid::new(256, 8.0)?;
    for k in [0.3, 0.5, 0.7] {
        let (c, _) = bbm_speed(8.0, k)?;
        let r = stability_index(bbm_family(8.0, grid), c, 1e-3)?;
        println!("bbm k {k}: c {c:.8} index {:.8}", r.index);
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
