// Complete elliptic integrals and Jacobi functions at a few moduli.

use periwave::elliptic::{complete_elliptic, jacobi};

pub fn run_example() -> periwave::Result<()> {
    for k in [0.1, 0.5, 0.9, 0.999] {
        let p = complete_elliptic(k)?;
        let (sn, cn, dn) = jacobi(0.5 * p.big_k, k);
        println!(
            "k {k:<6} K {:.15} E {:.15} q {:.3e} legendre {:.1e} sn^2+cn^2-1 {:.1e} dn {:.12}",
            p.big_k,
            p.big_e,
            p.nome,
            p.legendre_residual(),
            sn * sn + cn * cn - 1.0,
            dn
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
