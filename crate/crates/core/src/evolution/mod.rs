//! Time stepping for `u_t = K (u + u^{p+1}/(p+1))` and the fixed-point
//! solver for its integral form.

mod model;
mod picard;
mod rk4;

pub use model::{conserved, rhs, Conserved, Model};
pub use picard::{algebra_constant, picard_solve, PicardOptions, PicardSolution};
pub use rk4::{default_step, evolve_rk4, EvolveOptions, RunStatus, StepDiagnostics, Trajectory};
