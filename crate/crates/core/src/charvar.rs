//! Defining equations of the two characteristic subvarieties of P^8: nine
//! quadrics from the dualized multiplication S^2(R_1) -> R_2, and one
//! cubic from S^3(R_1) -> R_3.
//!
//! The construction follows the matrix route: a representation matrix M of
//! the multiplication map with respect to product bases, a dualization
//! base change (factor 2 on mixed pairs; factors 1, 3, 6 by the number of
//! distinct indices in a triple), a transpose, and a read-off of the
//! equations in z_1..z_9.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{poly2vec, CohomologyError, GradedBasis, JacobianRing};
use crate::exactla::ExactMatrix;
use crate::groebner::{buchberger, GroebnerError};
use crate::hilbert::hilbert_series;
use crate::poly::{Polynomial, PolyError, Ring, RingSpec, TermJson};
use crate::scalar::{ExactScalar, ScalarError};
use crate::symmetric::{SymIndexer, SymmetricError};

pub const CSR_NVARS: usize = 9;

#[derive(Debug, Error)]
pub enum CharVarError {
    #[error("the equations generate an ideal with empty projective locus")]
    IdealIsUnit,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharOrder {
    First,
    Second,
}

/// Equations of one characteristic subvariety in the 9-variable ring
/// z_1..z_9, together with the transposed coefficient matrix they were
/// read off from (9x45 for the first variety, 1x165 for the second).
#[derive(Debug, Clone)]
pub struct CharVariety {
    order: CharOrder,
    ring: Ring,
    equations: Vec<Polynomial>,
    c_matrix: ExactMatrix,
}

impl CharVariety {
    pub fn order(&self) -> CharOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn c_matrix(&self) -> &ExactMatrix {
        &self.c_matrix
    }

    pub fn to_file(&self) -> CharVarFile {
        CharVarFile {
            order: self.order,
            nvars: CSR_NVARS,
            equations: self.equations.iter().map(|f| f.to_json_terms()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharVarFile {
    pub order: CharOrder,
    pub nvars: usize,
    pub equations: Vec<Vec<TermJson>>,
}

fn csr(jr: &JacobianRing) -> Ring {
    RingSpec::numbered("z", 1, CSR_NVARS, jr.ring().field())
}

/// The first characteristic subvariety: nine quadrics. Row l of the 45x9
/// matrix M holds the R_2-coordinates of e_i * e_j with (i,j) the l-th
/// sorted pair; the mixed rows are doubled before transposing.
pub fn charvar_first(jr: &JacobianRing, basis: &GradedBasis) -> Result<CharVariety, CharVarError> {
    assert_eq!(basis.dims(), [1, 9, 9, 1]);
    let indexer = SymIndexer::new(CSR_NVARS, 2);
    let field = jr.ring().field();
    let r1 = &basis.components()[1];

    let rows: Vec<Result<Vec<ExactScalar>, CharVarError>> = (1..=indexer.size())
        .into_par_iter()
        .map(|l| {
            let t = indexer.tuple_of_pos(l)?;
            let (i, j) = (t[0], t[1]);
            let prod = Polynomial::monomial(jr.ring(), r1[i - 1].mul(&r1[j - 1]));
            let vec = poly2vec(&prod, jr, basis)?;
            let la = if i == j { field.one() } else { ExactScalar::from_i64(2, field) };
            Ok(vec[10..19].iter().map(|c| c * &la).collect())
        })
        .collect();
    let mut n = Vec::with_capacity(indexer.size());
    for r in rows {
        n.push(r?);
    }
    let c = ExactMatrix::from_rows(n, field).transpose();

    let ring = csr(jr);
    let mut equations = Vec::with_capacity(CSR_NVARS);
    for l in 0..CSR_NVARS {
        let mut f = Polynomial::zero(&ring);
        for k in 1..=indexer.size() {
            let t = indexer.tuple_of_pos(k)?;
            let mon = pair_monomial(t[0], t[1]);
            f = Polynomial::arith(
                &f,
                &Polynomial::term(&ring, mon, c.get(l, k - 1).clone()),
                crate::poly::PolyOp::Add,
            )?;
        }
        equations.push(f);
    }
    Ok(CharVariety {
        order: CharOrder::First,
        ring,
        equations,
        c_matrix: c,
    })
}

/// The second characteristic subvariety: a single cubic, via the 165x1
/// matrix of top-coordinate values of triple products, scaled by 1, 3 or 6
/// according to the number of distinct indices.
pub fn charvar_second(jr: &JacobianRing, basis: &GradedBasis) -> Result<CharVariety, CharVarError> {
    assert_eq!(basis.dims(), [1, 9, 9, 1]);
    let indexer = SymIndexer::new(CSR_NVARS, 3);
    let field = jr.ring().field();
    let r1 = &basis.components()[1];

    let rows: Vec<Result<Vec<ExactScalar>, CharVarError>> = (1..=indexer.size())
        .into_par_iter()
        .map(|l| {
            let t = indexer.tuple_of_pos(l)?;
            let (i, j, k) = (t[0], t[1], t[2]);
            let mon = r1[i - 1].mul(&r1[j - 1]).mul(&r1[k - 1]);
            let vec = poly2vec(&Polynomial::monomial(jr.ring(), mon), jr, basis)?;
            let distinct = 1 + (i != j) as u64 + (j != k) as u64;
            let la = ExactScalar::from_i64(
                match distinct {
                    1 => 1,
                    2 => 3,
                    _ => 6,
                },
                field,
            );
            Ok(vec![&vec[19] * &la])
        })
        .collect();
    let mut n = Vec::with_capacity(indexer.size());
    for r in rows {
        n.push(r?);
    }
    let c = ExactMatrix::from_rows(n, field).transpose();

    let ring = csr(jr);
    let mut g = Polynomial::zero(&ring);
    for l in 1..=indexer.size() {
        let t = indexer.tuple_of_pos(l)?;
        let mon = triple_monomial(t[0], t[1], t[2]);
        g = Polynomial::arith(
            &g,
            &Polynomial::term(&ring, mon, c.get(0, l - 1).clone()),
            crate::poly::PolyOp::Add,
        )?;
    }
    Ok(CharVariety {
        order: CharOrder::Second,
        ring,
        equations: vec![g],
        c_matrix: c,
    })
}

// monomial z_i z_j (1-based indices) in the 9-variable ring
fn pair_monomial(i: usize, j: usize) -> crate::poly::Monomial {
    let mut e = vec![0u32; CSR_NVARS];
    e[i - 1] += 1;
    e[j - 1] += 1;
    crate::poly::Monomial::new(e)
}

fn triple_monomial(i: usize, j: usize, k: usize) -> crate::poly::Monomial {
    let mut e = vec![0u32; CSR_NVARS];
    e[i - 1] += 1;
    e[j - 1] += 1;
    e[k - 1] += 1;
    crate::poly::Monomial::new(e)
}

/// Projective dimension and arithmetic genus of the subvariety, from the
/// Hilbert polynomial of the quotient by the equation ideal.
pub fn charvar_dimension_genus(v: &CharVariety) -> Result<(i64, BigInt), CharVarError> {
    let gens: Vec<Polynomial> = v
        .equations
        .iter()
        .filter(|f| !f.is_zero())
        .cloned()
        .collect();
    assert!(!gens.is_empty(), "equations must be nonzero");
    let gb = buchberger(&gens)?;
    let h = hilbert_series(&gb.leading_monomials(), CSR_NVARS);
    match h.genus {
        Some(g) => Ok((h.dimension, g)),
        None => Err(CharVarError::IdealIsUnit),
    }
}
