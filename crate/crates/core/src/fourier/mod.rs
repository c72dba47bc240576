//! Periodic grids, spectral transforms and Fourier multipliers.

mod fft;
pub mod field;
pub mod grid;
pub mod symbol;

pub use field::SpectralField;
pub use grid::{make_grid, PeriodicGrid};
pub use symbol::{Parity, SymbolSpec};

pub(crate) use fft::inverse as fft_inverse;

use crate::error::Result;

pub fn transform(grid: PeriodicGrid, samples: &[f64]) -> Result<SpectralField> {
    SpectralField::from_samples(grid, samples)
}

pub fn inverse_transform(field: &SpectralField) -> Vec<f64> {
    field.to_samples()
}

pub fn apply_symbol(field: &SpectralField, symbol: &SymbolSpec) -> Result<SpectralField> {
    field.apply(symbol)
}

pub fn sobolev_norm(field: &SpectralField, s: f64) -> f64 {
    field.sobolev_norm(s)
}

pub fn weighted_half_norm(field: &SpectralField, c: f64) -> Result<f64> {
    field.weighted_half_norm(c)
}

pub fn inner_product(f: &SpectralField, g: &SpectralField) -> Result<f64> {
    f.inner_product(g)
}

pub fn convolve_coeffs(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.convolve(g)
}
