//! Sparse multivariate polynomials under graded lexicographic order.
//!
//! The order convention is fixed once for the whole pipeline: higher total
//! degree wins, ties break lexicographically with the *first* ring variable
//! greatest. All normal forms downstream depend on this convention.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{self, ExactScalar, FieldConfig, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("monomials have different numbers of variables")]
    ArityMismatch,
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("variable index {0} out of range for {1} variables")]
    IndexOutOfRange(usize, usize),
    #[error("invalid ring spec: {0}")]
    BadRingSpec(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Ambient polynomial ring: number of variables, their print names, and the
/// coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    nvars: usize,
    varnames: Vec<String>,
    field: FieldConfig,
}

pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new(varnames: Vec<String>, field: FieldConfig) -> Result<Ring, PolyError> {
        if varnames.is_empty() {
            return Err(PolyError::BadRingSpec("no variables".into()));
        }
        for (i, a) in varnames.iter().enumerate() {
            if a.is_empty() {
                return Err(PolyError::BadRingSpec("empty variable name".into()));
            }
            if varnames[..i].contains(a) {
                return Err(PolyError::BadRingSpec(format!("duplicate variable name {a:?}")));
            }
        }
        Ok(Arc::new(RingSpec {
            nvars: varnames.len(),
            varnames,
            field,
        }))
    }

    /// Ring with variables `<prefix>start .. <prefix>(start+n-1)`.
    pub fn numbered(prefix: &str, start: usize, n: usize, field: FieldConfig) -> Ring {
        let names = (start..start + n).map(|i| format!("{prefix}{i}")).collect();
        RingSpec::new(names, field).expect("generated names are distinct")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn varnames(&self) -> &[String] {
        &self.varnames
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }
}

/// Exponent-vector monomial. Ordering is glex as fixed above.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

/// Graded lexicographic comparison; errors on arity mismatch.
pub fn compare_glex(a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
    if a.exps.len() != b.exps.len() {
        return Err(PolyError::ArityMismatch);
    }
    Ok(a.cmp(b))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, descending in
/// glex order. Deterministic; used as the canonical enumeration everywhere.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    gen_rec(&mut current, 0, d, &mut out);
    out
}

fn gen_rec(current: &mut Vec<u32>, i: usize, rem: u32, out: &mut Vec<Monomial>) {
    if i + 1 == current.len() {
        current[i] = rem;
        out.push(Monomial::new(current.clone()));
        current[i] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        current[i] = e;
        gen_rec(current, i + 1, rem - e, out);
        current[i] = 0;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial: map from monomial to nonzero coefficient. Terms are
/// kept in ascending glex order so the leading term is the last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: ExactScalar) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn var(ring: &Ring, i: usize) -> Result<Polynomial, PolyError> {
        if i >= ring.nvars() {
            return Err(PolyError::IndexOutOfRange(i, ring.nvars()));
        }
        Ok(Polynomial::term(ring, Monomial::var(ring.nvars(), i), ring.field().one()))
    }

    pub fn term(ring: &Ring, mon: Monomial, coeff: ExactScalar) -> Polynomial {
        assert_eq!(mon.nvars(), ring.nvars());
        let mut p = Polynomial::zero(ring);
        if !coeff.is_zero() {
            p.terms.insert(mon, coeff);
        }
        p
    }

    pub fn monomial(ring: &Ring, mon: Monomial) -> Polynomial {
        let one = ring.field().one();
        Polynomial::term(ring, mon, one)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms ascending in glex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, mon: &Monomial) -> Option<&ExactScalar> {
        self.terms.get(mon)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// True when the polynomial is a single monomial with coefficient 1.
    pub fn is_monic_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_one()
    }

    /// In-place `self += c * mon * g`; the workhorse of the division loop.
    pub(crate) fn add_assign_scaled_shifted(
        &mut self,
        g: &Polynomial,
        mon: &Monomial,
        c: &ExactScalar,
    ) {
        for (m, a) in &g.terms {
            self.add_term(m.mul(mon), a * c);
        }
    }

    pub(crate) fn add_term(&mut self, mon: Monomial, coeff: ExactScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial, PolyError> {
        if f.ring != g.ring {
            return Err(PolyError::RingMismatch);
        }
        let mut res = match op {
            PolyOp::Add | PolyOp::Sub => {
                let mut res = f.clone();
                for (m, c) in &g.terms {
                    let c = if op == PolyOp::Sub { -c } else { c.clone() };
                    res.add_term(m.clone(), c);
                }
                res
            }
            PolyOp::Mul => {
                let mut res = Polynomial::zero(&f.ring);
                for (m1, c1) in &f.terms {
                    for (m2, c2) in &g.terms {
                        res.add_term(m1.mul(m2), c1 * c2);
                    }
                }
                res
            }
        };
        res.ring = f.ring.clone();
        Ok(res)
    }

    pub fn scale(&self, c: &ExactScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by the single term `c * mon`.
    pub fn mul_term(&self, mon: &Monomial, c: &ExactScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mon), a * c))
                .collect(),
        }
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Formal partial derivative with respect to variable `var` (0-based).
    pub fn derivative(&self, var: usize) -> Result<Polynomial, PolyError> {
        if var >= self.ring.nvars() {
            return Err(PolyError::IndexOutOfRange(var, self.ring.nvars()));
        }
        let mut res = Polynomial::zero(&self.ring);
        let field = self.ring.field();
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            let factor = ExactScalar::from_i64(e as i64, field);
            res.add_term(Monomial::new(exps), c * &factor);
        }
        Ok(res)
    }

    pub fn evaluate(&self, point: &[ExactScalar]) -> Result<ExactScalar, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::ArityMismatch);
        }
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[i];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::arith(self, rhs, PolyOp::Add).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::arith(self, rhs, PolyOp::Sub).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::arith(self, rhs, PolyOp::Mul).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ring.varnames();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = scalar::is_negative(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = scalar::abs(c);
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                let mut first = true;
                for (i, &e) in m.exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    if e == 1 {
                        write!(f, "{}", names[i])?;
                    } else {
                        write!(f, "{}^{}", names[i], e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// JSON term as used in every polynomial artifact file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl Polynomial {
    /// Terms descending in glex order, coefficients in the scalar string
    /// format.
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m.exps.clone(),
            })
            .collect()
    }

    pub fn from_json_terms(ring: &Ring, terms: &[TermJson]) -> Result<Polynomial, PolyError> {
        let mut p = Polynomial::zero(ring);
        for t in terms {
            if t.exps.len() != ring.nvars() {
                return Err(PolyError::ArityMismatch);
            }
            let c = ExactScalar::parse(&t.coeff, ring.field())?;
            p.add_term(Monomial::new(t.exps.clone()), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn ring2() -> Ring {
        RingSpec::numbered("x", 0, 2, FieldConfig::Rationals)
    }

    #[test]
    fn glex_examples() {
        let a = Monomial::new(vec![1, 1]); // x0*x1
        let b = Monomial::new(vec![1, 0]); // x0
        assert_eq!(compare_glex(&a, &b).unwrap(), Ordering::Greater);
        let c = Monomial::new(vec![2, 0]); // x0^2
        assert_eq!(compare_glex(&c, &a).unwrap(), Ordering::Greater);
        assert_eq!(compare_glex(&a, &a).unwrap(), Ordering::Equal);
        assert_eq!(
            compare_glex(&a, &Monomial::new(vec![1, 0, 0])),
            Err(PolyError::ArityMismatch)
        );
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring2();
        let x0 = Polynomial::var(&r, 0).unwrap();
        let one = Polynomial::one(&r);
        let prod = &(&x0 + &one) * &(&x0 - &one);
        let mut expect = Polynomial::term(&r, Monomial::new(vec![2, 0]), r.field().one());
        expect.add_term(Monomial::one(2), ExactScalar::from_i64(-1, r.field()));
        assert_eq!(prod, expect);
        assert_eq!(&x0 + &Polynomial::zero(&r), x0);

        let f5 = FieldConfig::prime_field(5).unwrap();
        let r5 = RingSpec::numbered("x", 0, 1, f5);
        let a = Polynomial::term(&r5, Monomial::var(1, 0), ExactScalar::from_i64(2, f5));
        let b = Polynomial::term(&r5, Monomial::var(1, 0), ExactScalar::from_i64(3, f5));
        assert_eq!(
            &a * &b,
            Polynomial::term(&r5, Monomial::new(vec![2]), f5.one())
        );
    }

    #[test]
    fn derivative_examples() {
        // ring x0..x7, y1..y4; d/dx0 (y1*x0^2) = 2*x0*y1
        let names: Vec<String> = (0..8)
            .map(|i| format!("x{i}"))
            .chain((1..=4).map(|i| format!("y{i}")))
            .collect();
        let r = RingSpec::new(names, FieldConfig::Rationals).unwrap();
        let mut exps = vec![0u32; 12];
        exps[0] = 2;
        exps[8] = 1;
        let p = Polynomial::monomial(&r, Monomial::new(exps));
        let d = p.derivative(0).unwrap();
        let mut exps = vec![0u32; 12];
        exps[0] = 1;
        exps[8] = 1;
        assert_eq!(
            d,
            Polynomial::term(&r, Monomial::new(exps), ExactScalar::from_i64(2, r.field()))
        );
        assert!(Polynomial::one(&r).derivative(3).unwrap().is_zero());
        assert_eq!(
            p.derivative(12),
            Err(PolyError::IndexOutOfRange(12, 12))
        );
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(8, 2).len(), 36);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        let unit = monomials_of_degree(5, 0);
        assert_eq!(unit, vec![Monomial::one(5)]);
        // descending, no duplicates
        let mons = monomials_of_degree(4, 3);
        for w in mons.windows(2) {
            assert_eq!(compare_glex(&w[0], &w[1]).unwrap(), Ordering::Greater);
        }
    }

    fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize) -> Monomial {
        Monomial::new((0..nvars).map(|_| rng.gen_range(0..4)).collect())
    }

    #[test]
    fn glex_compatible_with_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let a = random_monomial(&mut rng, 5);
            let b = random_monomial(&mut rng, 5);
            let c = random_monomial(&mut rng, 5);
            if a < b {
                assert!(a.mul(&c) < b.mul(&c));
            }
        }
    }

    #[test]
    fn leading_term_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = RingSpec::numbered("x", 0, 4, FieldConfig::Rationals);
        for _ in 0..200 {
            let mut f = Polynomial::zero(&r);
            let mut g = Polynomial::zero(&r);
            for _ in 0..4 {
                f = &f
                    + &Polynomial::term(
                        &r,
                        random_monomial(&mut rng, 4),
                        ExactScalar::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                    );
                g = &g
                    + &Polynomial::term(
                        &r,
                        random_monomial(&mut rng, 4),
                        ExactScalar::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                    );
            }
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let (mf, _) = f.leading().unwrap();
            let (mg, _) = g.leading().unwrap();
            let prod = &f * &g;
            assert_eq!(prod.leading().unwrap().0, &mf.mul(mg));
        }
    }

    #[test]
    fn display_and_json_round_trip() {
        let r = ring2();
        let mut p = Polynomial::zero(&r);
        p.add_term(Monomial::new(vec![1, 1]), ExactScalar::from_i64(2, r.field()));
        p.add_term(Monomial::new(vec![0, 2]), ExactScalar::from_i64(-1, r.field()));
        assert_eq!(p.to_string(), "2*x0*x1 - x1^2");
        let back = Polynomial::from_json_terms(&r, &p.to_json_terms()).unwrap();
        assert_eq!(back, p);
    }
}
