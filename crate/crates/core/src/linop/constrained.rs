use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::assemble::{field_to_vector, OperatorMatrix};
use crate::error::{Error, Result};
use crate::fourier::SpectralField;

const DROP_TOL: f64 = 1e-12;

/// Orthonormal basis of `span(vectors)` by modified Gram-Schmidt with one
/// reorthogonalization pass. Vectors whose remainder falls below
/// `DROP_TOL` of their original length are dropped.
pub fn orthonormalize(vectors: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let norm0 = v.norm();
        if norm0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let proj = q.dot(&w);
                w.axpy(-proj, q, 1.0);
            }
        }
        let norm = w.norm();
        if norm > DROP_TOL * norm0 {
            basis.push(w / norm);
        }
    }
    basis
}

/// Orthonormal basis of the complement of `span(constraints)` in
/// `R^dim`, as the columns of a matrix.
pub fn complement_basis(constraints: &[DVector<f64>], dim: usize) -> Result<DMatrix<f64>> {
    let q = orthonormalize(constraints);
    let requested = constraints.len();
    if q.len() < requested {
        return Err(Error::DegenerateConstraints {
            rank: q.len(),
            requested,
        });
    }
    let mut all = q.clone();
    for i in 0..dim {
        all.push(DVector::from_fn(dim, |j, _| if i == j { 1.0 } else { 0.0 }));
    }
    let full = orthonormalize(&all);
    let cols: Vec<DVector<f64>> = full.into_iter().skip(q.len()).collect();
    Ok(DMatrix::from_columns(&cols))
}

fn min_eigenvalue(m: DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    let sym = (&m + m.transpose()) * 0.5;
    SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `inf { (A f, f) : ||f|| = 1, f orthogonal to every constraint }` on the
/// truncated window.
pub fn constrained_min(a: &OperatorMatrix, constraints: &[SpectralField]) -> Result<f64> {
    let vs: Vec<DVector<f64>> = constraints
        .iter()
        .map(|c| field_to_vector(c, a.modes))
        .collect();
    if vs.iter().any(|v| v.norm() == 0.0) {
        return Err(Error::DegenerateConstraints {
            rank: vs.iter().filter(|v| v.norm() > 0.0).count(),
            requested: vs.len(),
        });
    }
    let q = complement_basis(&vs, a.dim())?;
    Ok(min_eigenvalue(q.transpose() * &a.matrix * &q))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoercivityEstimate {
    /// `(window, min (A f, f) / ||f||^2_{H^{1/2}})` over nested trial
    /// subspaces `|n| <= window`.
    pub trials: Vec<(usize, f64)>,
    /// Smallest of the trial values.
    pub beta0: f64,
}

/// Estimates `beta_0` with `(A f, f) >= beta_0 ||f||^2_{H^{1/2}}` on the
/// constrained subspace, restricted to nested windows of low modes.
pub fn coercivity_estimate(
    a: &OperatorMatrix,
    constraints: &[SpectralField],
) -> Result<CoercivityEstimate> {
    let mut trials = Vec::new();
    let mut windows = vec![a.modes / 4, a.modes / 2, a.modes];
    windows.retain(|&w| w > constraints.len());
    windows.dedup();
    for w in windows {
        let dim = 2 * w + 1;
        let sub = a.matrix.view((0, 0), (dim, dim)).into_owned();
        let vs: Vec<DVector<f64>> = constraints.iter().map(|c| field_to_vector(c, w)).collect();
        let q = complement_basis(&vs, dim)?;
        let weight = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                let n = i.div_ceil(2) as f64;
                (1.0 + n * n).sqrt()
            } else {
                0.0
            }
        });
        let g = q.transpose() * &weight * &q;
        let chol = g.cholesky().ok_or_else(|| {
            Error::DegenerateFit("weight Gram matrix is not positive definite".into())
        })?;
        let l_inv = chol
            .l()
            .try_inverse()
            .ok_or_else(|| Error::DegenerateFit("singular Cholesky factor".into()))?;
        let reduced = &l_inv * (q.transpose() * &sub * &q) * l_inv.transpose();
        trials.push((w, min_eigenvalue(reduced)));
    }
    let beta0 = trials.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    Ok(CoercivityEstimate { trials, beta0 })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::fourier::{PeriodicGrid, SymbolSpec};
    use crate::linop::assemble::assemble;
    use crate::waves::rbo_wave;

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let a = DVector::from_vec(vec![1.0, 1.0, 0.0]);
        let b = DVector::from_vec(vec![2.0, 2.0, 0.0]);
        let c = DVector::from_vec(vec![0.0, 1.0, 1.0]);
        let q = orthonormalize(&[a.clone(), b.clone(), c]);
        assert_eq!(q.len(), 2);
        assert!(q[0].dot(&q[1]).abs() < 1e-15);
        assert!(matches!(
            complement_basis(&[a, b], 3),
            Err(Error::DegenerateConstraints {
                rank: 1,
                requested: 2
            })
        ));
    }

    #[test]
    fn lemma_structure_on_the_reference_wave() {
        let l = 2.0 * PI;
        let g = PeriodicGrid::new(256, 2.0 * l).unwrap();
        let w = rbo_wave(4.0, l, g).unwrap();
        let a = assemble(&w, &SymbolSpec::HilbertDeriv, 1, 48).unwrap();
        let unconstrained = constrained_min(&a, &[]).unwrap();
        let lmin = SymmetricEigen::new(a.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        assert!((unconstrained - lmin).abs() < 1e-10);

        let hd = w.field.apply(&SymbolSpec::HilbertDeriv).unwrap();
        let g1 = &w.field + &hd;
        let alpha = constrained_min(&a, std::slice::from_ref(&g1)).unwrap();
        assert!(alpha.abs() < 1e-6 * a.matrix.norm(), "alpha {alpha}");
        let alpha_scaled = constrained_min(&a, &[g1.scale(37.0)]).unwrap();
        assert!((alpha - alpha_scaled).abs() < 1e-9);

        let g2 = w
            .field
            .power(2)
            .apply(&SymbolSpec::Deriv)
            .unwrap()
            .scale(0.5);
        let beta = constrained_min(&a, &[g1.clone(), g2.clone()]).unwrap();
        assert!(beta > 0.0);
        let est = coercivity_estimate(&a, &[g1, g2]).unwrap();
        assert!(est.beta0 > 0.0 && est.trials.len() == 3);
    }
}
