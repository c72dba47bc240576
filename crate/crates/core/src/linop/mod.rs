//! Truncated linearized operators and their spectral checks.

pub mod assemble;
pub mod constrained;
pub mod eigen;
pub mod index;
pub mod pf2;

pub use assemble::{
    assemble, assemble_with_potential, field_to_vector, vector_to_field, OperatorMatrix,
};
pub use constrained::{coercivity_estimate, constrained_min, CoercivityEstimate};
pub use eigen::{eigen_report, EigenReport, ZeroEigenvalue};
pub use index::{
    bbm_family, momentum, momentum_gradient, rbo_family, stability_index, IndexReport,
};
pub use pf2::{
    even_sequence, pf2_brute_force, pf2_check, pf2_normal_form, Pf2Report, Pf2Violation, Pf2Witness,
};
