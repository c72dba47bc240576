//! Orbital-stability runs and the ill-posedness witnesses.

mod fit;
mod illposed;
mod nonperiodic;
mod orbital;
pub mod quadrature;
mod stability;

pub use fit::{linear_fit, LineFit};
pub use illposed::{
    duhamel_periodic, dyadic, gamma_n, illposed_scan, picard2_periodic, witness_data, witness_grid,
    IllposedScan, SecondIterate,
};
pub use nonperiodic::{
    check_resonance_bound, dispersion_p, illposed_nonperiodic, omega, resonance,
    resonance_factored, sinc, NonperiodicBound, ResonanceCheck,
};
pub use orbital::{orbital_distance, OrbitNorm, OrbitalDistance};
pub use stability::{perturbed_state, stability_run, Perturbation, StabilityConfig, StabilityRun};
