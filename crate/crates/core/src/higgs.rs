//! Representation matrices of the multiplication maps w * (-) on the
//! 20-dimensional graded ring, one per basis element of R_1.
//!
//! Convention fixed once: coordinate vectors are rows acting on the left,
//! so row k of the j-th matrix is the coordinate vector of e_j * b_k.

use thiserror::Error;

use crate::cohomology::{poly2vec, CohomologyError, GradedBasis, JacobianRing, TOTAL_DIM};
use crate::exactla::{ExactMatrix, LinAlgError};
use crate::poly::Polynomial;
use crate::scalar::ExactScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HiggsError {
    #[error("theta index {0} out of range (have {1} matrices)")]
    IndexOutOfRange(usize, usize),
    #[error("theta matrices must all be 20x20")]
    BadShape,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// The nine 20x20 multiplication matrices.
#[derive(Debug, Clone)]
pub struct ThetaMatrices {
    mats: Vec<ExactMatrix>,
}

impl ThetaMatrices {
    /// Wrap precomputed matrices (e.g. read back from a theta dump).
    pub fn from_mats(mats: Vec<ExactMatrix>) -> Result<ThetaMatrices, HiggsError> {
        if mats.is_empty() || mats.iter().any(|m| m.rows() != TOTAL_DIM || m.cols() != TOTAL_DIM)
        {
            return Err(HiggsError::BadShape);
        }
        Ok(ThetaMatrices { mats })
    }

    pub fn mats(&self) -> &[ExactMatrix] {
        &self.mats
    }

    pub fn count(&self) -> usize {
        self.mats.len()
    }

    /// Row-vector-times-matrix action of the j-th map (0-based).
    pub fn apply(&self, j: usize, v: &[ExactScalar]) -> Result<Vec<ExactScalar>, HiggsError> {
        let m = self
            .mats
            .get(j)
            .ok_or(HiggsError::IndexOutOfRange(j, self.mats.len()))?;
        Ok(m.left_mul_vec(v)?)
    }
}

pub fn compute_theta_matrices(
    jr: &JacobianRing,
    basis: &GradedBasis,
) -> Result<ThetaMatrices, HiggsError> {
    assert_eq!(basis.total_dim(), TOTAL_DIM);
    let ring = jr.ring();
    let field = ring.field();
    let mut mats = Vec::with_capacity(basis.components()[1].len());
    for w in &basis.components()[1] {
        let w_poly = Polynomial::monomial(ring, w.clone());
        let mut rows = Vec::with_capacity(TOTAL_DIM);
        for b in basis.flat() {
            let prod = &w_poly * &Polynomial::monomial(ring, b.clone());
            rows.push(poly2vec(&prod, jr, basis)?);
        }
        mats.push(ExactMatrix::from_rows(rows, field));
    }
    Ok(ThetaMatrices { mats })
}
