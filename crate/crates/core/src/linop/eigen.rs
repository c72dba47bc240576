use nalgebra::{DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::assemble::{field_to_vector, OperatorMatrix};
use crate::error::{Error, Result};
use crate::fourier::SpectralField;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroEigenvalue {
    pub index: usize,
    pub value: f64,
    pub gap_below: f64,
    pub gap_above: f64,
    /// Half-width `g` of the window `(-g, g)` counted as zero.
    pub threshold: f64,
    /// Eigenvalues found inside the window.
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub dimension: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub count_negative: usize,
    pub zero: Option<ZeroEigenvalue>,
    /// First eigenvalue above the zero window.
    pub first_positive: Option<f64>,
    /// Largest `|lambda|`.
    pub norm: f64,
    /// Largest `||A v - lambda v||` over the reported pairs.
    pub residual: f64,
    /// Eigenvectors of the three lowest eigenvalues, in the real basis.
    pub lowest_vectors: Vec<Vec<f64>>,
    /// `|cos|` of the angle between the zero mode and the reference
    /// direction (usually `phi'`), when one was supplied.
    pub kernel_alignment: Option<f64>,
}

impl EigenReport {
    /// One negative eigenvalue followed by a simple zero.
    pub fn has_stability_structure(&self) -> bool {
        self.count_negative == 1
            && self
                .zero
                .as_ref()
                .is_some_and(|z| z.multiplicity == 1 && z.index == 1)
    }

    /// `index,eigenvalue` lines with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,eigenvalue\n");
        for (i, v) in self.eigenvalues.iter().enumerate() {
            s.push_str(&format!("{i},{v:.16e}\n"));
        }
        s
    }
}

/// Full symmetric eigendecomposition with the zero-mode certificate.
pub fn eigen_report(a: &OperatorMatrix, reference: Option<&SpectralField>) -> Result<EigenReport> {
    let scale = a.matrix.amax().max(f64::MIN_POSITIVE);
    let asym = a.asymmetry();
    if asym > 1e-12 * scale {
        return Err(Error::NonHermitian(asym));
    }
    let eig = SymmetricEigen::new(a.matrix.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vector =
        |rank: usize| -> DVector<f64> { eig.eigenvectors.column(order[rank]).into_owned() };
    let norm = values.iter().map(|v| v.abs()).fold(0.0, f64::max);

    let mut residual: f64 = 0.0;
    for (rank, &lambda) in values.iter().enumerate() {
        let v = vector(rank);
        residual = residual.max((&a.matrix * &v - &v * lambda).norm());
    }
    let threshold = (1e-7 * norm).max(10.0 * residual);
    let inside: Vec<usize> = (0..values.len())
        .filter(|&i| values[i].abs() < threshold)
        .collect();
    let count_negative = values.iter().filter(|&&v| v <= -threshold).count();
    let zero = inside.first().map(|&i| {
        let closest = *inside
            .iter()
            .min_by(|&&x, &&y| values[x].abs().total_cmp(&values[y].abs()))
            .unwrap_or(&i);
        ZeroEigenvalue {
            index: closest,
            value: values[closest],
            gap_below: if closest > 0 {
                values[closest] - values[closest - 1]
            } else {
                f64::INFINITY
            },
            gap_above: values
                .get(closest + 1)
                .map(|v| v - values[closest])
                .unwrap_or(f64::INFINITY),
            threshold,
            multiplicity: inside.len(),
        }
    });
    let first_positive = values.iter().copied().find(|&v| v >= threshold);
    let kernel_alignment = match (reference, &zero) {
        (Some(r), Some(z)) => {
            let rv = field_to_vector(r, a.modes);
            let v = vector(z.index);
            let denom = rv.norm() * v.norm();
            (denom > 0.0).then(|| rv.dot(&v).abs() / denom)
        }
        _ => None,
    };
    let lowest_vectors = (0..values.len().min(3))
        .map(|r| vector(r).iter().copied().collect())
        .collect();
    Ok(EigenReport {
        dimension: values.len(),
        eigenvalues: values,
        count_negative,
        zero,
        first_positive,
        norm,
        residual,
        lowest_vectors,
        kernel_alignment,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::fourier::{PeriodicGrid, SymbolSpec};
    use crate::linop::assemble::{assemble, assemble_with_potential};
    use crate::waves::rbo_wave;

    #[test]
    fn rbo_spectrum_has_one_negative_and_a_simple_zero() {
        let l = 2.0 * PI;
        let g = PeriodicGrid::new(256, 2.0 * l).unwrap();
        let w = rbo_wave(4.0, l, g).unwrap();
        let a = assemble(&w, &SymbolSpec::HilbertDeriv, 1, 64).unwrap();
        let dphi = w.field.apply(&SymbolSpec::Deriv).unwrap();
        let r = eigen_report(&a, Some(&dphi)).unwrap();
        assert_eq!(r.count_negative, 1);
        assert!(r.has_stability_structure());
        assert!(r.kernel_alignment.unwrap() > 1.0 - 1e-6);
        assert!((r.eigenvalues[0] + 4.19258240).abs() < 1e-6);
        assert!((r.first_positive.unwrap() - 1.19258240).abs() < 1e-6);
        assert!(r.residual < 1e-9 * r.norm);
    }

    #[test]
    fn free_operator_has_no_negative_directions() {
        let g = PeriodicGrid::new(64, 2.0 * PI).unwrap();
        let zero = SpectralField::zeros(g);
        let a = assemble_with_potential(2.0, &zero, &SymbolSpec::HilbertDeriv, 16).unwrap();
        let r = eigen_report(&a, None).unwrap();
        assert_eq!(r.count_negative, 0);
        assert!(r.zero.is_none());
        assert!(r.to_csv().starts_with("index,eigenvalue\n0,1.0"));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let g = PeriodicGrid::new(64, 2.0 * PI).unwrap();
        let zero = SpectralField::zeros(g);
        let mut a = assemble_with_potential(2.0, &zero, &SymbolSpec::HilbertDeriv, 4).unwrap();
        a.matrix[(0, 1)] = 1.0;
        assert!(matches!(
            eigen_report(&a, None),
            Err(Error::NonHermitian(_))
        ));
    }
}
