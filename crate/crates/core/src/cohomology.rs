//! The Jacobian ring of the toric hypersurface F = y1*f1 + ... + y4*f4 and
//! its graded cohomology basis.
//!
//! The ambient ring has 12 variables x0..x7, y1..y4 with x0 greatest. The
//! graded piece R_p is spanned by the invariant standard monomials of
//! x-degree 2p and y-degree p; for admissible matrices the dimensions come
//! out as (1, 9, 9, 1).

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::{buchberger, GroebnerError, GroebnerIdeal};
use crate::matrixgen::{CoeffMatrix, MAT_COLS, MAT_ROWS};
use crate::poly::{monomials_of_degree, Monomial, PolyError, Polynomial, Ring, RingSpec};
use crate::scalar::{ExactScalar, FieldConfig};

pub const TOTAL_DIM: usize = 20;
pub const EXPECTED_DIMS: [usize; 4] = [1, 9, 9, 1];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("hardcoded top class x7^6*y4^3 fails the {0} filter; matrix is degenerate for this pipeline")]
    TopClassInvalid(&'static str),
    #[error("graded basis has sizes {0:?}, expected (1, 9, 9, 1)")]
    UnexpectedDimensions([usize; 4]),
    #[error("normal form contains the off-basis monomial {mono:?} (H-invariant: {invariant}); basis is inconsistent")]
    ResidueOffBasis { mono: Vec<u32>, invariant: bool },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The 12-variable ambient ring x0..x7, y1..y4.
pub fn pipeline_ring(field: FieldConfig) -> Ring {
    let names = (0..8)
        .map(|i| format!("x{i}"))
        .chain((1..=4).map(|i| format!("y{i}")))
        .collect();
    RingSpec::new(names, field).expect("fixed names are distinct")
}

/// The hypersurface equation, its diagonal quadrics and the Jacobian ideal.
#[derive(Debug, Clone)]
pub struct JacobianRing {
    ring: Ring,
    matrix: CoeffMatrix,
    quadrics: Vec<Polynomial>,
    hypersurface: Polynomial,
    ideal: GroebnerIdeal,
}

impl JacobianRing {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn matrix(&self) -> &CoeffMatrix {
        &self.matrix
    }

    /// f1..f4, with fi = sum_j A[i][j] * xj^2.
    pub fn quadrics(&self) -> &[Polynomial] {
        &self.quadrics
    }

    /// F = y1*f1 + y2*f2 + y3*f3 + y4*f4.
    pub fn hypersurface(&self) -> &Polynomial {
        &self.hypersurface
    }

    pub fn ideal(&self) -> &GroebnerIdeal {
        &self.ideal
    }
}

pub fn build_jacobian_ring(
    a: &CoeffMatrix,
    field: FieldConfig,
) -> Result<JacobianRing, CohomologyError> {
    let ring = pipeline_ring(field);
    let mut quadrics = Vec::with_capacity(MAT_ROWS);
    for i in 0..MAT_ROWS {
        let mut f = Polynomial::zero(&ring);
        for j in 0..MAT_COLS {
            let mut exps = vec![0u32; 12];
            exps[j] = 2;
            f = &f + &Polynomial::term(&ring, Monomial::new(exps), a.entry(i, j).clone());
        }
        quadrics.push(f);
    }
    let mut hypersurface = Polynomial::zero(&ring);
    for (i, f) in quadrics.iter().enumerate() {
        let y = Polynomial::var(&ring, 8 + i)?;
        hypersurface = &hypersurface + &(&y * f);
    }
    let partials: Vec<Polynomial> = (0..12)
        .map(|v| hypersurface.derivative(v))
        .collect::<Result<_, _>>()?;
    let ideal = buchberger(&partials)?;
    Ok(JacobianRing {
        ring,
        matrix: a.clone(),
        quadrics,
        hypersurface,
        ideal,
    })
}

/// Invariance under the sign-flip group: every cyclically adjacent pair of
/// x-exponents must have even sum (so all x-exponents share one parity).
pub fn is_h_invariant(mon: &Monomial) -> bool {
    debug_assert!(mon.nvars() >= 8);
    let e = mon.exps();
    for i in 0..7 {
        if (e[i] + e[i + 1]) % 2 != 0 {
            return false;
        }
    }
    (e[0] + e[7]) % 2 == 0
}

/// Monomial basis of R = R_0 + R_1 + R_2 + R_3 with block offsets and the
/// lookup used by the coordinate map.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    components: [Vec<Monomial>; 4],
    offsets: [usize; 4],
    total_dim: usize,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn components(&self) -> &[Vec<Monomial>; 4] {
        &self.components
    }

    pub fn offsets(&self) -> &[usize; 4] {
        &self.offsets
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn dims(&self) -> [usize; 4] {
        [
            self.components[0].len(),
            self.components[1].len(),
            self.components[2].len(),
            self.components[3].len(),
        ]
    }

    /// Basis elements in block order, as elements of the ambient ring.
    pub fn flat(&self) -> impl Iterator<Item = &Monomial> {
        self.components.iter().flatten()
    }

    /// Degree block p of the overall basis index k (0-based).
    pub fn degree_of_index(&self, k: usize) -> usize {
        (0..4)
            .rfind(|&p| k >= self.offsets[p])
            .expect("index within total_dim")
    }

    pub fn index_of(&self, mon: &Monomial) -> Option<usize> {
        self.index.get(mon).copied()
    }

    fn from_components(components: [Vec<Monomial>; 4]) -> GradedBasis {
        let mut offsets = [0usize; 4];
        let mut acc = 0;
        for (p, c) in components.iter().enumerate() {
            offsets[p] = acc;
            acc += c.len();
        }
        let index = components
            .iter()
            .flatten()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        GradedBasis {
            components,
            offsets,
            total_dim: acc,
            index,
        }
    }
}

/// All bidegree-(2p, p) monomial candidates, descending glex in the
/// 12-variable ring.
fn bidegree_candidates(p: u32) -> Vec<Monomial> {
    let xmons = monomials_of_degree(8, 2 * p);
    let ymons = monomials_of_degree(4, p);
    let mut out = Vec::with_capacity(xmons.len() * ymons.len());
    for xm in &xmons {
        for ym in &ymons {
            let mut exps = Vec::with_capacity(12);
            exps.extend_from_slice(xm.exps());
            exps.extend_from_slice(ym.exps());
            out.push(Monomial::new(exps));
        }
    }
    out
}

fn scan_component(jr: &JacobianRing, p: u32) -> Result<Vec<Monomial>, CohomologyError> {
    let candidates = bidegree_candidates(p);
    let kept: Vec<Option<Monomial>> = candidates
        .into_par_iter()
        .map(|mon| -> Result<Option<Monomial>, CohomologyError> {
            if !is_h_invariant(&mon) {
                return Ok(None);
            }
            let poly = Polynomial::monomial(jr.ring(), mon.clone());
            if jr.ideal().is_basis_elt(&poly)? {
                Ok(Some(mon))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(kept.into_iter().flatten().collect())
}

fn top_class_monomial() -> Monomial {
    // x7^6 * y4^3
    let mut exps = vec![0u32; 12];
    exps[7] = 6;
    exps[11] = 3;
    Monomial::new(exps)
}

/// Compute the graded basis. With `compute_top` false the top component is
/// taken to be {x7^6*y4^3} after verifying it passes both filters; with
/// `compute_top` true the full bidegree-(6,3) scan runs instead.
pub fn compute_graded_basis(
    jr: &JacobianRing,
    compute_top: bool,
) -> Result<GradedBasis, CohomologyError> {
    let mut components: [Vec<Monomial>; 4] = Default::default();
    for (p, component) in components.iter_mut().enumerate().take(3) {
        *component = scan_component(jr, p as u32)?;
    }
    if compute_top {
        components[3] = scan_component(jr, 3)?;
    } else {
        let top = top_class_monomial();
        if !is_h_invariant(&top) {
            return Err(CohomologyError::TopClassInvalid("invariance"));
        }
        let poly = Polynomial::monomial(jr.ring(), top.clone());
        if !jr.ideal().is_basis_elt(&poly)? {
            return Err(CohomologyError::TopClassInvalid("standard-monomial"));
        }
        components[3] = vec![top];
    }
    let sizes = [
        components[0].len(),
        components[1].len(),
        components[2].len(),
        components[3].len(),
    ];
    if sizes != EXPECTED_DIMS {
        return Err(CohomologyError::UnexpectedDimensions(sizes));
    }
    Ok(GradedBasis::from_components(components))
}

/// Coordinates of the cohomology class of `g` with respect to the graded
/// basis, as a vector of length 20. Any off-basis monomial in the normal
/// form is a hard error: it can only arise from a bug or an inadmissible
/// matrix.
pub fn poly2vec(
    g: &Polynomial,
    jr: &JacobianRing,
    basis: &GradedBasis,
) -> Result<Vec<ExactScalar>, CohomologyError> {
    let nf = jr.ideal().normal_form(g)?;
    let field = jr.ring().field();
    let mut out = vec![field.zero(); basis.total_dim()];
    for (mon, coeff) in nf.terms() {
        match basis.index_of(mon) {
            Some(k) => out[k] = coeff.clone(),
            None => {
                return Err(CohomologyError::ResidueOffBasis {
                    mono: mon.exps().to_vec(),
                    invariant: is_h_invariant(mon),
                })
            }
        }
    }
    Ok(out)
}

/// Basis JSON artifact written by the `cohomology` subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisFile {
    pub components: Vec<Vec<Vec<u32>>>,
    pub dims: Vec<usize>,
}

impl GradedBasis {
    pub fn to_file(&self) -> BasisFile {
        BasisFile {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|m| m.exps().to_vec()).collect())
                .collect(),
            dims: self.dims().to_vec(),
        }
    }

    pub fn from_file(f: &BasisFile) -> Result<GradedBasis, CohomologyError> {
        if f.components.len() != 4 {
            return Err(CohomologyError::UnexpectedDimensions([0; 4]));
        }
        let mut components: [Vec<Monomial>; 4] = Default::default();
        for (p, c) in f.components.iter().enumerate() {
            components[p] = c.iter().map(|e| Monomial::new(e.clone())).collect();
        }
        Ok(GradedBasis::from_components(components))
    }
}
