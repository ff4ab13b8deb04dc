//! Exact field arithmetic over the rationals and odd prime fields.
//!
//! Every coefficient in the pipeline is an [`ExactScalar`]: either an
//! arbitrary-precision reduced fraction or a canonical residue mod an odd
//! prime. Values are immutable and equality is structural, which works
//! because both representations are unique per field element.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid modulus {0}: must be an odd prime >= 3")]
    InvalidModulus(u64),
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}

/// The coefficient field: the rationals, or a prime field of odd
/// characteristic. Characteristic 2 is rejected outright; the Jacobian
/// generators carry a factor 2 and the parity filter on monomials is
/// meaningless mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    Rationals,
    PrimeField(u64),
}

impl FieldConfig {
    pub fn rationals() -> Self {
        FieldConfig::Rationals
    }

    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if p < 3 || !is_prime(p) {
            return Err(ScalarError::InvalidModulus(p));
        }
        Ok(FieldConfig::PrimeField(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldConfig::Rationals => None,
            FieldConfig::PrimeField(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> ExactScalar {
        ExactScalar::from_i64(0, *self)
    }

    pub fn one(&self) -> ExactScalar {
        ExactScalar::from_i64(1, *self)
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rationals => write!(f, "rational"),
            FieldConfig::PrimeField(p) => write!(f, "gfp({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut t0, mut t1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Some(t0.rem_euclid(p as i128) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of the configured field, stored canonically: reduced fraction
/// with positive denominator, or least nonnegative residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rat(BigRational),
    Mod { val: u64, modulus: u64 },
}

impl ExactScalar {
    pub fn field(&self) -> FieldConfig {
        match self {
            ExactScalar::Rat(_) => FieldConfig::Rationals,
            ExactScalar::Mod { modulus, .. } => FieldConfig::PrimeField(*modulus),
        }
    }

    pub fn from_i64(n: i64, field: FieldConfig) -> ExactScalar {
        match field {
            FieldConfig::Rationals => ExactScalar::Rat(BigRational::from(BigInt::from(n))),
            FieldConfig::PrimeField(p) => {
                let v = (n as i128).rem_euclid(p as i128) as u64;
                ExactScalar::Mod { val: v, modulus: p }
            }
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> ExactScalar {
        assert!(den != 0, "zero denominator");
        ExactScalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> ExactScalar {
        ExactScalar::Rat(r)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_zero(),
            ExactScalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_one(),
            ExactScalar::Mod { val, .. } => *val == 1,
        }
    }

    pub fn arith(a: &ExactScalar, b: &ExactScalar, op: ArithOp) -> Result<ExactScalar, ScalarError> {
        match (a, b) {
            (ExactScalar::Rat(x), ExactScalar::Rat(y)) => Ok(ExactScalar::Rat(match op {
                ArithOp::Add => x + y,
                ArithOp::Sub => x - y,
                ArithOp::Mul => x * y,
                ArithOp::Div => {
                    if y.is_zero() {
                        return Err(ScalarError::DivisionByZero);
                    }
                    x / y
                }
            })),
            (
                ExactScalar::Mod { val: x, modulus: p },
                ExactScalar::Mod { val: y, modulus: q },
            ) if p == q => {
                let p = *p;
                let v = match op {
                    ArithOp::Add => {
                        let s = x + y;
                        if s >= p {
                            s - p
                        } else {
                            s
                        }
                    }
                    ArithOp::Sub => {
                        if x >= y {
                            x - y
                        } else {
                            x + p - y
                        }
                    }
                    ArithOp::Mul => mul_mod(*x, *y, p),
                    ArithOp::Div => {
                        let inv = inv_mod(*y, p).ok_or(ScalarError::DivisionByZero)?;
                        mul_mod(*x, inv, p)
                    }
                };
                Ok(ExactScalar::Mod { val: v, modulus: p })
            }
            _ => Err(ScalarError::FieldMismatch),
        }
    }

    pub fn try_div(&self, rhs: &ExactScalar) -> Result<ExactScalar, ScalarError> {
        ExactScalar::arith(self, rhs, ArithOp::Div)
    }

    pub fn inv(&self) -> Result<ExactScalar, ScalarError> {
        self.field().one().try_div(self)
    }

    /// Parse in the report string format: "p/q" or "p" for the rationals,
    /// a decimal residue (optionally signed) for a prime field.
    pub fn parse(s: &str, field: FieldConfig) -> Result<ExactScalar, ScalarError> {
        let s = s.trim();
        match field {
            FieldConfig::Rationals => {
                let parse_int =
                    |t: &str| t.parse::<BigInt>().map_err(|_| ScalarError::Parse(s.to_string()));
                if let Some((num, den)) = s.split_once('/') {
                    let d = parse_int(den)?;
                    if d.is_zero() {
                        return Err(ScalarError::Parse(s.to_string()));
                    }
                    Ok(ExactScalar::Rat(BigRational::new(parse_int(num)?, d)))
                } else {
                    Ok(ExactScalar::Rat(BigRational::from(parse_int(s)?)))
                }
            }
            FieldConfig::PrimeField(p) => {
                let n: i128 = s.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
                Ok(ExactScalar::Mod {
                    val: n.rem_euclid(p as i128) as u64,
                    modulus: p,
                })
            }
        }
    }

    /// Map into another field where possible. Rational -> prime field
    /// reduces numerator and denominator mod p (errors if p divides the
    /// denominator); residues only map to the same prime field.
    pub fn to_field(&self, field: FieldConfig) -> Result<ExactScalar, ScalarError> {
        match (self, field) {
            (ExactScalar::Rat(_), FieldConfig::Rationals) => Ok(self.clone()),
            (ExactScalar::Rat(r), FieldConfig::PrimeField(p)) => {
                let reduce = |n: &BigInt| -> u64 {
                    let m = (n % BigInt::from(p)).to_string().parse::<i128>().unwrap();
                    m.rem_euclid(p as i128) as u64
                };
                let num = reduce(r.numer());
                let den = reduce(r.denom());
                let inv = inv_mod(den, p).ok_or(ScalarError::DivisionByZero)?;
                Ok(ExactScalar::Mod {
                    val: mul_mod(num, inv, p),
                    modulus: p,
                })
            }
            (ExactScalar::Mod { modulus, .. }, FieldConfig::PrimeField(p)) if *modulus == p => {
                Ok(self.clone())
            }
            _ => Err(ScalarError::FieldMismatch),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            ExactScalar::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar::arith(self, rhs, $op).expect("field mismatch")
            }
        }
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, ArithOp::Add);
scalar_binop!(Sub, sub, ArithOp::Sub);
scalar_binop!(Mul, mul, ArithOp::Mul);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rat(r) => ExactScalar::Rat(-r),
            ExactScalar::Mod { val: 0, modulus } => ExactScalar::Mod {
                val: 0,
                modulus: *modulus,
            },
            ExactScalar::Mod { val, modulus } => ExactScalar::Mod {
                val: modulus - val,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

/// Signed magnitude hint used only for display ("a - b" instead of
/// "a + -b"); residues are never negative.
pub(crate) fn is_negative(s: &ExactScalar) -> bool {
    match s {
        ExactScalar::Rat(r) => r.is_negative(),
        ExactScalar::Mod { .. } => false,
    }
}

pub(crate) fn abs(s: &ExactScalar) -> ExactScalar {
    match s {
        ExactScalar::Rat(r) => ExactScalar::Rat(r.abs()),
        m => m.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d)
    }

    #[test]
    fn basic_rational_arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        let a = q(-7, 3);
        assert_eq!(a.try_div(&a).unwrap(), q(1, 1));
        assert_eq!(
            q(1, 2).try_div(&q(0, 1)),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn basic_prime_field_arithmetic() {
        let f7 = FieldConfig::prime_field(7).unwrap();
        let three = ExactScalar::from_i64(3, f7);
        let four = ExactScalar::from_i64(4, f7);
        assert_eq!(&three * &four, ExactScalar::from_i64(5, f7));
        assert_eq!(&three + &four, f7.zero());
        assert_eq!(three.try_div(&three).unwrap(), f7.one());
    }

    #[test]
    fn characteristic_two_rejected() {
        assert_eq!(FieldConfig::prime_field(2), Err(ScalarError::InvalidModulus(2)));
        assert_eq!(FieldConfig::prime_field(9), Err(ScalarError::InvalidModulus(9)));
        assert!(FieldConfig::prime_field(32003).is_ok());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let f7 = FieldConfig::prime_field(7).unwrap();
        assert_eq!(
            ExactScalar::arith(&q(1, 2), &f7.one(), ArithOp::Add),
            Err(ScalarError::FieldMismatch)
        );
    }

    fn random_scalar(rng: &mut ChaCha8Rng, field: FieldConfig) -> ExactScalar {
        match field {
            FieldConfig::Rationals => {
                ExactScalar::from_ratio(rng.gen_range(-50..=50), rng.gen_range(1..=20))
            }
            FieldConfig::PrimeField(p) => {
                ExactScalar::from_i64(rng.gen_range(0..p) as i64, field)
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [FieldConfig::Rationals, FieldConfig::prime_field(101).unwrap()] {
            for _ in 0..10_000 {
                let a = random_scalar(&mut rng, field);
                let b = random_scalar(&mut rng, field);
                let c = random_scalar(&mut rng, field);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
        }
    }

    #[test]
    fn string_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = random_scalar(&mut rng, FieldConfig::Rationals);
            let s = a.to_string();
            assert_eq!(ExactScalar::parse(&s, FieldConfig::Rationals).unwrap(), a);
        }
        let f = FieldConfig::prime_field(32003).unwrap();
        let a = ExactScalar::from_i64(-5, f);
        assert_eq!(ExactScalar::parse(&a.to_string(), f).unwrap(), a);
    }

    #[test]
    fn rational_to_prime_field() {
        let f = FieldConfig::prime_field(7).unwrap();
        let half = q(1, 2).to_field(f).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(half, ExactScalar::from_i64(4, f));
        assert_eq!(
            q(1, 7).to_field(f),
            Err(ScalarError::DivisionByZero)
        );
    }
}
