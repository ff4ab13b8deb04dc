//! Exact-arithmetic pipeline around the Jacobian ring of a bundle of four
//! diagonal quadrics in eight variables: Groebner bases over Q or F_p, the
//! 20-dimensional graded quotient, the nine multiplication matrices, the
//! characteristic subvarieties of P^8 and the symmetric-square image
//! dimension check.

pub mod charvar;
pub mod cohomology;
pub mod exactla;
pub mod groebner;
pub mod higgs;
pub mod hilbert;
pub mod matrixgen;
pub mod poly;
pub mod scalar;
pub mod symmetric;

pub use charvar::{
    charvar_dimension_genus, charvar_first, charvar_second, CharOrder, CharVarError, CharVariety,
};
pub use cohomology::{
    build_jacobian_ring, compute_graded_basis, poly2vec, CohomologyError, GradedBasis,
    JacobianRing, EXPECTED_DIMS, TOTAL_DIM,
};
pub use exactla::{ExactMatrix, LinAlgError, Subspace};
pub use groebner::{buchberger, GroebnerError, GroebnerIdeal};
pub use higgs::{compute_theta_matrices, HiggsError, ThetaMatrices};
pub use hilbert::{hilbert_function_bruteforce, hilbert_series, HilbertData, HilbertError};
pub use matrixgen::{generate_matrix, CoeffMatrix, GenConfig, GenMode, MatrixGenError};
pub use poly::{Monomial, PolyError, Polynomial, Ring, RingSpec};
pub use scalar::{ExactScalar, FieldConfig, ScalarError};
pub use symmetric::{
    run_plethysm, PlethysmReport, SymIndexer, Symm2Action, SymmetricError, MODULARITY_BOUND,
};
