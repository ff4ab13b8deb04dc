//! Admissible 4x8 coefficient matrices: user-supplied, random, or
//! hyperelliptic (Vandermonde in a tuple of 8 distinct lambdas), with the
//! all-4x4-minors-nonzero check.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::ExactMatrix;
use crate::scalar::{ExactScalar, FieldConfig, ScalarError};

pub const MAT_ROWS: usize = 4;
pub const MAT_COLS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixGenError {
    #[error("user mode requires explicit matrix entries")]
    MissingUserInput,
    #[error("hyperelliptic lambda values must be pairwise distinct")]
    DuplicateLambda,
    #[error("no admissible matrix found after {0} attempts")]
    NonConvergence(usize),
    #[error("matrix is degenerate: 4x4 minor on columns {0:?} vanishes")]
    Degenerate([usize; 4]),
    #[error("randrange must be at least 2, got {0}")]
    BadRandRange(u64),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("bad matrix file: {0}")]
    BadFile(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenMode {
    User,
    Random,
    Hyperelliptic,
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub mode: GenMode,
    /// Entries are sampled uniformly in [-(randrange-1), randrange-1] over
    /// the rationals, or as uniform residues over a prime field.
    pub randrange: u64,
    pub rng_seed: u64,
    pub field: FieldConfig,
    pub retry_cap: usize,
}

impl GenConfig {
    pub fn new(mode: GenMode, field: FieldConfig) -> GenConfig {
        GenConfig {
            mode,
            randrange: 10,
            rng_seed: 0,
            field,
            retry_cap: 10_000,
        }
    }
}

/// A coefficient matrix plus how it was produced. For non-user provenance
/// every 4x4 minor is nonzero by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMatrix {
    entries: Vec<Vec<ExactScalar>>,
    provenance: GenMode,
    lambda: Option<Vec<ExactScalar>>,
    field: FieldConfig,
    seed: Option<u64>,
}

impl CoeffMatrix {
    pub fn entries(&self) -> &[Vec<ExactScalar>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i][j]
    }

    pub fn provenance(&self) -> GenMode {
        self.provenance
    }

    pub fn lambda(&self) -> Option<&[ExactScalar]> {
        self.lambda.as_deref()
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Vandermonde matrix entries[i][j] = lambda_j^i for 8 distinct lambdas.
    pub fn hyperelliptic(lambda: Vec<ExactScalar>) -> Result<CoeffMatrix, MatrixGenError> {
        assert_eq!(lambda.len(), MAT_COLS);
        for (i, a) in lambda.iter().enumerate() {
            if lambda[..i].contains(a) {
                return Err(MatrixGenError::DuplicateLambda);
            }
        }
        let field = lambda[0].field();
        let mut entries = Vec::with_capacity(MAT_ROWS);
        let mut row: Vec<ExactScalar> = vec![field.one(); MAT_COLS];
        for _ in 0..MAT_ROWS {
            entries.push(row.clone());
            row = row.iter().zip(&lambda).map(|(a, l)| a * l).collect();
        }
        Ok(CoeffMatrix {
            entries,
            provenance: GenMode::Hyperelliptic,
            lambda: Some(lambda),
            field,
            seed: None,
        })
    }

    /// User matrix, deliberately unchecked; callers that want the
    /// non-degeneracy guarantee run [`check_nondegenerate`] themselves.
    pub fn user(entries: Vec<Vec<ExactScalar>>, field: FieldConfig) -> CoeffMatrix {
        assert_eq!(entries.len(), MAT_ROWS);
        assert!(entries.iter().all(|r| r.len() == MAT_COLS));
        CoeffMatrix {
            entries,
            provenance: GenMode::User,
            lambda: None,
            field,
            seed: None,
        }
    }

    /// Map every entry (and lambda) into another field.
    pub fn to_field(&self, field: FieldConfig) -> Result<CoeffMatrix, ScalarError> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_field(field)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let lambda = match &self.lambda {
            None => None,
            Some(l) => Some(l.iter().map(|x| x.to_field(field)).collect::<Result<_, _>>()?),
        };
        Ok(CoeffMatrix {
            entries,
            provenance: self.provenance,
            lambda,
            field,
            seed: self.seed,
        })
    }
}

/// First (lexicographically) 4-column subset whose minor vanishes, if any.
pub fn check_nondegenerate(entries: &[Vec<ExactScalar>]) -> Option<[usize; 4]> {
    let field = entries[0][0].field();
    for a in 0..MAT_COLS {
        for b in a + 1..MAT_COLS {
            for c in b + 1..MAT_COLS {
                for d in c + 1..MAT_COLS {
                    let cols = [a, b, c, d];
                    let m = ExactMatrix::from_rows(
                        (0..MAT_ROWS)
                            .map(|i| cols.iter().map(|&j| entries[i][j].clone()).collect())
                            .collect(),
                        field,
                    );
                    if m.det().is_zero() {
                        return Some(cols);
                    }
                }
            }
        }
    }
    None
}

fn sample_scalar(rng: &mut ChaCha8Rng, field: FieldConfig, randrange: u64) -> ExactScalar {
    match field {
        FieldConfig::Rationals => {
            let n = randrange as i64;
            ExactScalar::from_i64(rng.gen_range(-(n - 1)..=(n - 1)), field)
        }
        FieldConfig::PrimeField(p) => ExactScalar::from_i64(rng.gen_range(0..p) as i64, field),
    }
}

/// Produce a coefficient matrix per the configured mode. Random and
/// hyperelliptic-random modes rejection-sample until the non-degeneracy
/// check passes (a duplicate random lambda simply fails the check and is
/// resampled).
pub fn generate_matrix(
    cfg: &GenConfig,
    user_entries: Option<Vec<Vec<ExactScalar>>>,
    user_lambda: Option<Vec<ExactScalar>>,
) -> Result<CoeffMatrix, MatrixGenError> {
    match cfg.mode {
        GenMode::User => {
            let entries = user_entries.ok_or(MatrixGenError::MissingUserInput)?;
            Ok(CoeffMatrix::user(entries, cfg.field))
        }
        GenMode::Hyperelliptic => {
            if let Some(lambda) = user_lambda {
                let m = CoeffMatrix::hyperelliptic(lambda)?;
                if let Some(cols) = check_nondegenerate(m.entries()) {
                    return Err(MatrixGenError::Degenerate(cols));
                }
                return Ok(m);
            }
            if cfg.randrange < 2 {
                return Err(MatrixGenError::BadRandRange(cfg.randrange));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            for _ in 0..cfg.retry_cap {
                let lambda: Vec<ExactScalar> = (0..MAT_COLS)
                    .map(|_| sample_scalar(&mut rng, cfg.field, cfg.randrange))
                    .collect();
                let Ok(mut m) = CoeffMatrix::hyperelliptic(lambda) else {
                    continue;
                };
                if check_nondegenerate(m.entries()).is_none() {
                    m.seed = Some(cfg.rng_seed);
                    return Ok(m);
                }
            }
            Err(MatrixGenError::NonConvergence(cfg.retry_cap))
        }
        GenMode::Random => {
            if cfg.randrange < 2 {
                return Err(MatrixGenError::BadRandRange(cfg.randrange));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            for _ in 0..cfg.retry_cap {
                let entries: Vec<Vec<ExactScalar>> = (0..MAT_ROWS)
                    .map(|_| {
                        (0..MAT_COLS)
                            .map(|_| sample_scalar(&mut rng, cfg.field, cfg.randrange))
                            .collect()
                    })
                    .collect();
                if check_nondegenerate(&entries).is_none() {
                    return Ok(CoeffMatrix {
                        entries,
                        provenance: GenMode::Random,
                        lambda: None,
                        field: cfg.field,
                        seed: Some(cfg.rng_seed),
                    });
                }
            }
            Err(MatrixGenError::NonConvergence(cfg.retry_cap))
        }
    }
}

/// Interchange format between `gen-matrix` and the downstream subcommands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub mode: GenMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    pub entries: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CoeffMatrix {
    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            field: match self.field {
                FieldConfig::Rationals => "rational".into(),
                FieldConfig::PrimeField(_) => "gfp".into(),
            },
            modulus: self.field.modulus(),
            mode: self.provenance,
            lambda: self
                .lambda
                .as_ref()
                .map(|l| l.iter().map(|x| x.to_string()).collect()),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            seed: self.seed,
        }
    }

    pub fn from_file(f: &MatrixFile) -> Result<CoeffMatrix, MatrixGenError> {
        let field = match f.field.as_str() {
            "rational" => FieldConfig::Rationals,
            "gfp" => FieldConfig::prime_field(
                f.modulus
                    .ok_or_else(|| MatrixGenError::BadFile("gfp without modulus".into()))?,
            )?,
            other => return Err(MatrixGenError::BadFile(format!("unknown field {other:?}"))),
        };
        if f.entries.len() != MAT_ROWS || f.entries.iter().any(|r| r.len() != MAT_COLS) {
            return Err(MatrixGenError::BadFile("entries must be 4x8".into()));
        }
        let entries = f
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| ExactScalar::parse(s, field))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let lambda = match &f.lambda {
            None => None,
            Some(l) => Some(
                l.iter()
                    .map(|s| ExactScalar::parse(s, field))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(CoeffMatrix {
            entries,
            provenance: f.mode,
            lambda,
            field,
            seed: f.seed,
        })
    }
}

/// lambda = (1, 2, ..., 8), the worked example used throughout the tests.
pub fn vandermonde_1_to_8(field: FieldConfig) -> CoeffMatrix {
    let lambda = (1..=8).map(|i| ExactScalar::from_i64(i, field)).collect();
    CoeffMatrix::hyperelliptic(lambda).expect("1..8 are distinct")
}
