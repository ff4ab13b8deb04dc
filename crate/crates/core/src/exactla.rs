//! Dense exact linear algebra: matrices, reduced row echelon form and
//! canonical row-space subspaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{ExactScalar, FieldConfig, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("vector length {got} does not match ambient dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major dense matrix over one coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldConfig,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, field: FieldConfig) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldConfig) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>, field: FieldConfig) -> ExactMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            field,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<ExactScalar> {
        self.row(r).to_vec()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = ExactMatrix::zero(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &*out.get(r, c) + &(a * b);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>, LinAlgError> {
        if v.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let b = self.get(k, c);
                if !b.is_zero() {
                    out[c] = &out[c] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with its rank.
    pub fn rref(&self) -> (ExactMatrix, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // first nonzero entry in this column at or below pivot_row
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                    m.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    pub fn det(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.field.one();
        }
        let mut a: Vec<Vec<ExactScalar>> = (0..n).map(|r| self.row_vec(r)).collect();
        let mut sign = false;
        let mut prev = self.field.one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(src) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return self.field.zero();
                };
                a.swap(k, src);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.try_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows)
                .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &MatrixJson, field: FieldConfig) -> Result<ExactMatrix, ScalarError> {
        let mut data = Vec::with_capacity(j.rows * j.cols);
        for row in &j.data {
            for s in row {
                data.push(ExactScalar::parse(s, field)?);
            }
        }
        Ok(ExactMatrix {
            rows: j.rows,
            cols: j.cols,
            field,
            data,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<String>>,
}

/// Row space of a set of vectors, stored canonically as the nonzero rows of
/// the reduced row echelon form. Structural equality decides subspace
/// equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    field: FieldConfig,
    rref_basis: Vec<Vec<ExactScalar>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, field: FieldConfig) -> Subspace {
        Subspace {
            ambient_dim,
            field,
            rref_basis: Vec::new(),
        }
    }

    pub fn from_vectors(
        vs: &[Vec<ExactScalar>],
        ambient_dim: usize,
        field: FieldConfig,
    ) -> Result<Subspace, LinAlgError> {
        for v in vs {
            if v.len() != ambient_dim {
                return Err(LinAlgError::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        if vs.is_empty() {
            return Ok(Subspace::zero(ambient_dim, field));
        }
        let (r, rank) = ExactMatrix::from_rows(vs.to_vec(), field).rref();
        Ok(Subspace {
            ambient_dim,
            field,
            rref_basis: (0..rank).map(|i| r.row_vec(i)).collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rref_basis.len()
    }

    pub fn basis(&self) -> &[Vec<ExactScalar>] {
        &self.rref_basis
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut all = self.rref_basis.clone();
        all.extend(other.rref_basis.iter().cloned());
        Subspace::from_vectors(&all, self.ambient_dim, self.field)
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, v: &[ExactScalar]) -> Result<bool, LinAlgError> {
        if v.len() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let mut w = v.to_vec();
        for row in &self.rref_basis {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !w[pivot].is_zero() {
                let f = w[pivot].clone();
                for c in pivot..self.ambient_dim {
                    w[c] = &w[c] - &(&f * &row[c]);
                }
            }
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        for row in &self.rref_basis {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldConfig = FieldConfig::Rationals;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_i64(n, Q)
    }

    #[test]
    fn rref_examples() {
        let id = ExactMatrix::identity(4, Q);
        let (r, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 4);

        let z = ExactMatrix::zero(3, 3, Q);
        assert_eq!(z.rref(), (z.clone(), 0));

        let m = ExactMatrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]], Q);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), &[s(1), s(2)][..]);
        assert!(r.row(1).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rref_idempotent_and_rank_of_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let rows = rng.gen_range(1..=20);
            let cols = rng.gen_range(1..=20);
            let m = ExactMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| s(rng.gen_range(-3..=3))).collect())
                    .collect(),
                Q,
            );
            let (r, rank) = m.rref();
            assert_eq!(r.rref(), (r.clone(), rank));
            assert_eq!(m.transpose().rank(), rank);
        }
    }

    #[test]
    fn subspace_examples() {
        let e1 = vec![s(1), s(0), s(0)];
        let e2 = vec![s(0), s(1), s(0)];
        let e1p2 = vec![s(1), s(1), s(0)];
        let u = Subspace::from_vectors(&[e1.clone(), e1p2], 3, Q).unwrap();
        assert_eq!(u.dim(), 2);
        assert_eq!(u.basis(), &[e1.clone(), e2.clone()]);

        let empty = Subspace::from_vectors(&[], 3, Q).unwrap();
        assert_eq!(empty.dim(), 0);

        let a = Subspace::from_vectors(&[e1], 3, Q).unwrap();
        let b = Subspace::from_vectors(&[e2], 3, Q).unwrap();
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.sum(&Subspace::zero(3, Q)).unwrap(), a);
    }

    #[test]
    fn membership_agrees_with_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=8);
            let vs: Vec<Vec<ExactScalar>> = (0..rng.gen_range(1..=5))
                .map(|_| (0..dim).map(|_| s(rng.gen_range(-3..=3))).collect())
                .collect();
            let u = Subspace::from_vectors(&vs, dim, Q).unwrap();
            let v: Vec<ExactScalar> = (0..dim).map(|_| s(rng.gen_range(-3..=3))).collect();
            let mut all = vs.clone();
            all.push(v.clone());
            let grows = Subspace::from_vectors(&all, dim, Q).unwrap().dim() > u.dim();
            assert_eq!(u.contains(&v).unwrap(), !grows);
        }
    }

    #[test]
    fn bareiss_determinant() {
        let m = ExactMatrix::from_rows(
            vec![
                vec![s(2), s(0), s(1)],
                vec![s(1), s(1), s(0)],
                vec![s(0), s(3), s(1)],
            ],
            Q,
        );
        assert_eq!(m.det(), s(5));
        assert_eq!(ExactMatrix::identity(5, Q).det(), s(1));
        assert_eq!(ExactMatrix::zero(3, 3, Q).det(), s(0));

        // agrees with rank deficiency
        let sing = ExactMatrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]], Q);
        assert!(sing.det().is_zero());
    }

    #[test]
    fn unit_vectors_in_large_ambient() {
        let mut vs = Vec::new();
        for i in 0..9 {
            let mut v = vec![s(0); 210];
            v[i * 20] = s(1);
            vs.push(v);
        }
        let u = Subspace::from_vectors(&vs, 210, Q).unwrap();
        assert_eq!(u.dim(), 9);
    }
}
