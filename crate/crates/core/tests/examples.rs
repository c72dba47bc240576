//! Runs the quick examples so they stay in step with the library.

mod elliptic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/elliptic.rs"));
}
mod rbo_wave {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rbo_wave.rs"));
}
mod bbm_cnoidal {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/bbm_cnoidal.rs"
    ));
}
mod spectrum {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectrum.rs"));
}
mod pf2 {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pf2.rs"));
}
mod constrained {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/constrained.rs"
    ));
}
mod evolve {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/evolve.rs"));
}
mod picard {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/picard.rs"));
}
mod illposed {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/illposed.rs"));
}
mod stability_index {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/stability_index.rs"
    ));
}

#[test]
fn example_elliptic() {
    elliptic::run_example().unwrap();
}

#[test]
fn example_rbo_wave() {
    rbo_wave::run_example().unwrap();
}

#[test]
fn example_bbm_cnoidal() {
    bbm_cnoidal::run_example().unwrap();
}

#[test]
fn example_spectrum() {
    spectrum::run_example().unwrap();
}

#[test]
fn example_pf2() {
    pf2::run_example().unwrap();
}

#[test]
fn example_constrained() {
    constrained::run_example().unwrap();
}

#[test]
fn example_evolve() {
    evolve::run_example().unwrap();
}

#[test]
fn example_picard() {
    picard::run_example().unwrap();
}

#[test]
fn example_illposed() {
    illposed::run_example().unwrap();
}

#[test]
fn example_stability_index() {
    stability_index::run_example().unwrap();
}
