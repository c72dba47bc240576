// PF(2) check on sequences with and without the property.

use periwave::linop::{even_sequence, pf2_check};
use periwave::waves::bbm_csch_kernel;

pub fn run_example() -> periwave::Result<()> {
    let exp = even_sequence(12, |n| (-0.8 * n as f64).exp());
    let gauss = even_sequence(12, |n| (-0.1 * (n * n) as f64).exp());
    let linear = even_sequence(12, |n| 1.0 + n as f64);
    let csch = (-12..=12)
        .map(|n| bbm_csch_kernel(8.0, 0.5, n))
        .collect::<periwave::Result<Vec<_>>>()?;
    for (name, seq) in [
        ("exp", exp),
        ("gauss", gauss),
        ("linear", linear),
        ("csch", csch),
    ] {
        let r = pf2_check(&seq)?;
        println!(
            "{name:<7} pass {} checked {} witness {:?}",
            r.pass, r.quadruples_checked, r.witness
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
