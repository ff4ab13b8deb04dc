//! Symmetric-power index bijections, the induced multiplication action on
//! the symmetric square, its graded subspaces, and the iterated-image
//! dimension check.
//!
//! Positions and pair/triple indices are 1-based throughout this module:
//! they are the coordinates of explicit basis vectors, and the off-by-one
//! translation is confined to the lookups here.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{LinAlgError, Subspace};
use crate::higgs::{HiggsError, ThetaMatrices};
use crate::scalar::{ExactScalar, FieldConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetricError {
    #[error("index {0} out of range [1, {1}]")]
    IndexOutOfRange(usize, usize),
    #[error("image of graded subspace {0} escapes graded subspace {1}")]
    GradingViolation(usize, usize),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Higgs(#[from] HiggsError),
}

/// Bijection between sorted index tuples and positions 1..=C(n+d-1, d),
/// for d = 2 or 3. The inverse is a precomputed table rather than a
/// re-derivation, and the constructor verifies the round trip over the
/// whole range.
#[derive(Debug, Clone)]
pub struct SymIndexer {
    nvars: usize,
    degree: usize,
    size: usize,
    table: Vec<Vec<usize>>,
}

impl SymIndexer {
    pub fn new(nvars: usize, degree: usize) -> SymIndexer {
        assert!(degree == 2 || degree == 3, "only squares and cubes are supported");
        let size = match degree {
            2 => nvars * (nvars + 1) / 2,
            _ => nvars * (nvars + 1) * (nvars + 2) / 6,
        };
        let mut table: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut seen = 0usize;
        let mut fill = |tuple: Vec<usize>, pos: usize| {
            assert!(table[pos - 1].is_empty(), "position {pos} hit twice");
            table[pos - 1] = tuple;
            seen += 1;
        };
        match degree {
            2 => {
                for i in 1..=nvars {
                    for j in i..=nvars {
                        fill(vec![i, j], pair_pos(nvars, i, j));
                    }
                }
            }
            _ => {
                for i in 1..=nvars {
                    for j in i..=nvars {
                        for k in j..=nvars {
                            fill(vec![i, j, k], triple_pos(nvars, i, j, k));
                        }
                    }
                }
            }
        }
        assert_eq!(seen, size, "position formula is not onto");
        SymIndexer {
            nvars,
            degree,
            size,
            table,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pos_of_pair(&self, i: usize, j: usize) -> Result<usize, SymmetricError> {
        assert_eq!(self.degree, 2);
        for v in [i, j] {
            if v < 1 || v > self.nvars {
                return Err(SymmetricError::IndexOutOfRange(v, self.nvars));
            }
        }
        Ok(pair_pos(self.nvars, i, j))
    }

    pub fn pos_of_triple(&self, i: usize, j: usize, k: usize) -> Result<usize, SymmetricError> {
        assert_eq!(self.degree, 3);
        for v in [i, j, k] {
            if v < 1 || v > self.nvars {
                return Err(SymmetricError::IndexOutOfRange(v, self.nvars));
            }
        }
        Ok(triple_pos(self.nvars, i, j, k))
    }

    pub fn tuple_of_pos(&self, pos: usize) -> Result<&[usize], SymmetricError> {
        if pos < 1 || pos > self.size {
            return Err(SymmetricError::IndexOutOfRange(pos, self.size));
        }
        Ok(&self.table[pos - 1])
    }
}

fn pair_pos(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i > j { (j, i) } else { (i, j) };
    let p = n - i + 1;
    let total = n * (n + 1) / 2;
    total - p * (p + 1) / 2 + (j - i) + 1
}

fn triple_pos(n: usize, i: usize, j: usize, k: usize) -> usize {
    let mut s = [i, j, k];
    s.sort_unstable();
    let [i, j, k] = s;
    let mut offs = 0;
    for l in 1..i {
        let p = n - l + 1;
        offs += p * (p + 1) / 2;
    }
    let p0 = n - i + 1;
    let j0 = j - i + 1;
    let k0 = k - i + 1;
    let p0_ = p0 - j0 + 1;
    offs + p0 * (p0 + 1) / 2 - p0_ * (p0_ + 1) / 2 + (k0 - j0) + 1
}

/// Degree block of the overall basis index (1-based): 1 -> 0, 2..=10 -> 1,
/// 11..=19 -> 2, 20 -> 3.
fn block_degree(a: usize) -> usize {
    match a {
        1 => 0,
        2..=10 => 1,
        11..=19 => 2,
        20 => 3,
        _ => panic!("basis index {a} out of range"),
    }
}

/// The induced action of the nine multiplication maps on the symmetric
/// square, encoded in K^210 via the pair bijection on 20 basis elements.
#[derive(Debug, Clone)]
pub struct Symm2Action {
    thetas: ThetaMatrices,
    indexer: SymIndexer,
    field: FieldConfig,
}

pub const SYMM2_DIM: usize = 210;

impl Symm2Action {
    pub fn new(thetas: ThetaMatrices) -> Symm2Action {
        assert_eq!(thetas.count(), 9);
        let field = thetas.mats()[0].field();
        Symm2Action {
            thetas,
            indexer: SymIndexer::new(20, 2),
            field,
        }
    }

    pub fn thetas(&self) -> &ThetaMatrices {
        &self.thetas
    }

    pub fn indexer(&self) -> &SymIndexer {
        &self.indexer
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    /// Image of the basis vector at `pos` under the `th`-th map (0-based
    /// map index, 1-based position): with (i,j) the pair at `pos`, the
    /// derivation action b_i*mu(b_j) + mu(b_i)*b_j.
    pub fn im_basis(&self, th: usize, pos: usize) -> Result<Vec<ExactScalar>, SymmetricError> {
        let tuple = self.indexer.tuple_of_pos(pos)?;
        let (i, j) = (tuple[0], tuple[1]);
        let mat = &self.thetas.mats()[th];
        let mut res = vec![self.field.zero(); SYMM2_DIM];
        for k in 1..=20 {
            let c = mat.get(j - 1, k - 1);
            if !c.is_zero() {
                let p = pair_pos(20, i, k) - 1;
                res[p] = &res[p] + c;
            }
            let c = mat.get(i - 1, k - 1);
            if !c.is_zero() {
                let p = pair_pos(20, k, j) - 1;
                res[p] = &res[p] + c;
            }
        }
        Ok(res)
    }

    /// Linear extension of `im_basis` to arbitrary vectors in K^210.
    pub fn im_vec(&self, th: usize, v: &[ExactScalar]) -> Result<Vec<ExactScalar>, SymmetricError> {
        if v.len() != SYMM2_DIM {
            return Err(LinAlgError::DimensionMismatch {
                expected: SYMM2_DIM,
                got: v.len(),
            }
            .into());
        }
        let mut res = vec![self.field.zero(); SYMM2_DIM];
        for (pos0, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let im = self.im_basis(th, pos0 + 1)?;
            for (r, x) in res.iter_mut().zip(&im) {
                if !x.is_zero() {
                    *r = &*r + &(c * x);
                }
            }
        }
        Ok(res)
    }

    /// Sum of the images of `u` under all nine maps.
    pub fn image(&self, u: &Subspace) -> Result<Subspace, SymmetricError> {
        if u.ambient_dim() != SYMM2_DIM {
            return Err(LinAlgError::DimensionMismatch {
                expected: SYMM2_DIM,
                got: u.ambient_dim(),
            }
            .into());
        }
        let mut ims = Vec::with_capacity(9 * u.dim());
        for v in u.basis() {
            for th in 0..9 {
                ims.push(self.im_vec(th, v)?);
            }
        }
        Ok(Subspace::from_vectors(&ims, SYMM2_DIM, self.field)?)
    }

    /// The p-th graded subspace of the symmetric square: span of the pair
    /// basis vectors whose block degrees sum to p.
    pub fn graded_subspace(&self, p: usize) -> Result<Subspace, SymmetricError> {
        if p > 6 {
            return Err(SymmetricError::IndexOutOfRange(p, 6));
        }
        let mut vecs = Vec::new();
        for a in 1..=20 {
            for b in a..=20 {
                if block_degree(a) + block_degree(b) == p {
                    let mut v = vec![self.field.zero(); SYMM2_DIM];
                    v[pair_pos(20, a, b) - 1] = self.field.one();
                    vecs.push(v);
                }
            }
        }
        Ok(Subspace::from_vectors(&vecs, SYMM2_DIM, self.field)?)
    }
}

/// Outcome of the iterated-image computation starting from the degree-1
/// graded subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlethysmReport {
    pub dim_u51: usize,
    pub dim_u42: usize,
    pub dim_u33: usize,
    pub bound: usize,
    pub modular_consistent: bool,
}

pub const MODULARITY_BOUND: usize = 65;

pub fn run_plethysm(thetas: &ThetaMatrices) -> Result<PlethysmReport, SymmetricError> {
    let action = Symm2Action::new(thetas.clone());
    let u51 = action.graded_subspace(1)?;
    let u42 = action.image(&u51)?;
    if !u42.is_subspace_of(&action.graded_subspace(2)?)? {
        return Err(SymmetricError::GradingViolation(1, 2));
    }
    let u33 = action.image(&u42)?;
    if !u33.is_subspace_of(&action.graded_subspace(3)?)? {
        return Err(SymmetricError::GradingViolation(2, 3));
    }
    let dim_u33 = u33.dim();
    Ok(PlethysmReport {
        dim_u51: u51.dim(),
        dim_u42: u42.dim(),
        dim_u33,
        bound: MODULARITY_BOUND,
        modular_consistent: dim_u33 <= MODULARITY_BOUND,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_position_examples() {
        let idx9 = SymIndexer::new(9, 2);
        assert_eq!(idx9.pos_of_pair(1, 1).unwrap(), 1);
        assert_eq!(idx9.pos_of_pair(9, 9).unwrap(), 45);
        assert_eq!(idx9.pos_of_pair(2, 2).unwrap(), 10);
        assert_eq!(idx9.tuple_of_pos(1).unwrap(), &[1, 1]);
        assert_eq!(idx9.tuple_of_pos(10).unwrap(), &[2, 2]);
        let idx20 = SymIndexer::new(20, 2);
        assert_eq!(idx20.pos_of_pair(20, 20).unwrap(), 210);
        assert_eq!(idx20.size(), 210);
    }

    #[test]
    fn triple_position_examples() {
        let idx = SymIndexer::new(9, 3);
        assert_eq!(idx.size(), 165);
        assert_eq!(idx.pos_of_triple(1, 1, 1).unwrap(), 1);
        assert_eq!(idx.pos_of_triple(9, 9, 9).unwrap(), 165);
        assert_eq!(
            idx.pos_of_triple(2, 1, 3).unwrap(),
            idx.pos_of_triple(1, 2, 3).unwrap()
        );
    }

    #[test]
    fn round_trips_over_full_ranges() {
        for (n, d) in [(9, 2), (9, 3), (20, 2)] {
            let idx = SymIndexer::new(n, d);
            for pos in 1..=idx.size() {
                let tuple = idx.tuple_of_pos(pos).unwrap().to_vec();
                let back = match d {
                    2 => idx.pos_of_pair(tuple[0], tuple[1]).unwrap(),
                    _ => idx.pos_of_triple(tuple[0], tuple[1], tuple[2]).unwrap(),
                };
                assert_eq!(back, pos);
            }
        }
    }

    #[test]
    fn symmetry_under_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let idx2 = SymIndexer::new(20, 2);
        let idx3 = SymIndexer::new(9, 3);
        for _ in 0..1000 {
            let (i, j) = (rng.gen_range(1..=20), rng.gen_range(1..=20));
            assert_eq!(idx2.pos_of_pair(i, j).unwrap(), idx2.pos_of_pair(j, i).unwrap());
            let mut t = [
                rng.gen_range(1..=9),
                rng.gen_range(1..=9),
                rng.gen_range(1..=9),
            ];
            let p = idx3.pos_of_triple(t[0], t[1], t[2]).unwrap();
            t.rotate_left(1);
            assert_eq!(idx3.pos_of_triple(t[0], t[1], t[2]).unwrap(), p);
            t.swap(0, 1);
            assert_eq!(idx3.pos_of_triple(t[0], t[1], t[2]).unwrap(), p);
        }
    }

    #[test]
    fn out_of_range_is_an_error() {
        let idx = SymIndexer::new(9, 2);
        assert!(matches!(
            idx.pos_of_pair(0, 3),
            Err(SymmetricError::IndexOutOfRange(0, 9))
        ));
        assert!(matches!(
            idx.tuple_of_pos(46),
            Err(SymmetricError::IndexOutOfRange(46, 45))
        ));
    }

    #[test]
    fn graded_pair_index_sets_partition() {
        let field = FieldConfig::prime_field(101).unwrap();
        // graded_subspace only needs the indexer and field, so a dummy
        // action suffices: build from zero matrices
        let mats = (0..9)
            .map(|_| crate::exactla::ExactMatrix::zero(20, 20, field))
            .collect::<Vec<_>>();
        let action = Symm2Action::new(ThetaMatrices::from_mats(mats).unwrap());
        let mut total = 0;
        let mut seen = vec![false; SYMM2_DIM];
        let expected = [1, 9, 54, 82, 54, 9, 1];
        for p in 0..=6 {
            let u = action.graded_subspace(p).unwrap();
            assert_eq!(u.dim(), expected[p]);
            total += u.dim();
            for v in u.basis() {
                let pos = v.iter().position(|x| !x.is_zero()).unwrap();
                assert!(!seen[pos], "graded subspaces overlap at {pos}");
                seen[pos] = true;
            }
        }
        assert_eq!(total, SYMM2_DIM);
    }
}
