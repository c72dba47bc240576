//! Explicit periodic travelling waves with analytic Fourier closures.

pub mod bbm;
pub mod poisson;
pub mod rbo;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{PeriodicGrid, SpectralField, SymbolSpec};

pub use bbm::{
    bbm_cnoidal, bbm_cnoidal_branch, bbm_csch_kernel, bbm_fourier_coeffs, bbm_k_for_speed,
    bbm_scalars, bbm_speed, bbm_system_residuals, k_l, k_zero, BbmBranch, BbmScalars,
};
pub use rbo::{
    rbo_deta_dc, rbo_dwave_dc, rbo_eta, rbo_index_closed_form, rbo_residual, rbo_wave,
    rbo_wave_closed_form,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveKind {
    Rbo,
    BbmCnoidal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WaveParams {
    /// `L` is the half period.
    Rbo { l: f64, eta: f64 },
    /// `L` is the full period.
    BbmCnoidal {
        l: f64,
        k: f64,
        w: f64,
        a: f64,
        b: f64,
        d: f64,
        beta1: f64,
        beta2: f64,
        beta3: f64,
        branch: BbmBranch,
    },
}

/// A travelling wave `phi_c` sampled on a grid, together with the data
/// that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveProfile {
    pub field: SpectralField,
    pub speed: f64,
    pub params: WaveParams,
    /// Bound on the sum of the analytic coefficients beyond the grid.
    pub tail_bound: f64,
}

impl WaveProfile {
    pub fn kind(&self) -> WaveKind {
        match self.params {
            WaveParams::Rbo { .. } => WaveKind::Rbo,
            WaveParams::BbmCnoidal { .. } => WaveKind::BbmCnoidal,
        }
    }

    pub fn grid(&self) -> &PeriodicGrid {
        self.field.grid()
    }

    /// Dispersive symbol `alpha` of the model the wave solves.
    pub fn dispersion(&self) -> SymbolSpec {
        match self.kind() {
            WaveKind::Rbo => SymbolSpec::HilbertDeriv,
            WaveKind::BbmCnoidal => SymbolSpec::NegSecondDeriv,
        }
    }

    /// Power of the nonlinearity.
    pub fn nonlinearity(&self) -> u32 {
        1
    }

    /// Closed-form Fourier coefficient of mode `n`.
    pub fn analytic_coeff(&self, n: i64) -> f64 {
        match self.params {
            WaveParams::Rbo { l, eta } => rbo::coefficient(self.speed, l, eta, n),
            WaveParams::BbmCnoidal { l, k, .. } => {
                bbm::coefficient_with_speed(l, k, self.speed, n).unwrap_or(f64::NAN)
            }
        }
    }

    /// The field rebuilt from its analytic coefficients, which avoids the
    /// aliasing error of the sampled profile.
    pub fn analytic_field(&self) -> SpectralField {
        let half = self.grid().nyquist();
        SpectralField::from_modes(*self.grid(), |n| {
            if n == half {
                (self.analytic_coeff(n) + self.analytic_coeff(-n)).into()
            } else {
                self.analytic_coeff(n).into()
            }
        })
    }

    /// Residual `c alpha(D) phi + (c - 1) phi - phi^2 / 2` in the max norm.
    pub fn residual(&self) -> Result<f64> {
        let lin = self.field.apply(&self.dispersion())?;
        let sq = self.field.power(2);
        let res = lin
            .scale(self.speed)
            .axpy(self.speed - 1.0, &self.field)?
            .axpy(-0.5, &sq)?;
        Ok(res.max_abs())
    }

    pub fn to_document(&self) -> ProfileDocument {
        let grid = self.grid();
        let mut coeffs: Vec<(i64, f64, f64)> = grid
            .modes()
            .zip(self.field.coeffs())
            .map(|(n, c)| (n, c.re, c.im))
            .collect();
        coeffs.sort_by_key(|t| t.0);
        ProfileDocument {
            params: self.params.clone(),
            speed: self.speed,
            n: grid.num_points(),
            p: grid.period(),
            tail_bound: self.tail_bound,
            coeffs,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ProfileDocument = serde_json::from_str(s)?;
        doc.into_profile()
    }
}

/// Serialized form of a [`WaveProfile`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    #[serde(flatten)]
    pub params: WaveParams,
    pub speed: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "P")]
    pub p: f64,
    pub tail_bound: f64,
    /// `(n, re, im)` triples, ascending in `n`.
    pub coeffs: Vec<(i64, f64, f64)>,
}

impl ProfileDocument {
    pub fn into_profile(self) -> Result<WaveProfile> {
        let grid = PeriodicGrid::new(self.n, self.p)?;
        if self.coeffs.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: self.coeffs.len(),
            });
        }
        let mut field = SpectralField::zeros(grid);
        for &(n, re, im) in &self.coeffs {
            let k = grid
                .slot(n)
                .ok_or_else(|| Error::InvalidParameter(format!("mode {n} not on the grid")))?;
            field.coeffs_mut()[k] = num_complex::Complex64::new(re, im);
        }
        Ok(WaveProfile {
            field,
            speed: self.speed,
            params: self.params,
            tail_bound: self.tail_bound,
        })
    }
}
