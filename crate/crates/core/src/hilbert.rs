//! Hilbert series and Hilbert polynomial of a homogeneous ideal, computed
//! from the leading-term monomial ideal of a reduced Groebner basis.
//!
//! The series of R/I equals the series of R/LT(I), so the whole
//! computation is combinatorial: the numerator comes from the standard
//! pivot recursion on monomial ideals, dimension is the pole order minus
//! one, and the arithmetic genus uses the classical projective convention
//! p_a = (-1)^dim (P(0) - 1).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("enumeration budget exceeded: would count {0} monomials (cap {1})")]
    BudgetExceeded(u128, u128),
}

/// Series numerator, reduced numerator after pole cancellation, Hilbert
/// polynomial and the derived invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    /// Numerator of the series over (1-t)^nvars, low degree first.
    pub series_numerator: Vec<BigInt>,
    pub nvars: usize,
    /// Numerator after cancelling all (1-t) factors.
    pub reduced_numerator: Vec<BigInt>,
    /// Projective dimension: pole order - 1; -1 for empty schemes and the
    /// unit ideal.
    pub dimension: i64,
    /// Coefficients of the Hilbert polynomial, constant term first.
    pub hilbert_polynomial: Vec<BigRational>,
    /// Arithmetic genus, defined when dimension >= 0.
    pub genus: Option<BigInt>,
    /// Degree from which on the Hilbert function agrees with the
    /// polynomial.
    pub regularity: i64,
}

impl HilbertData {
    pub fn eval_polynomial(&self, d: i64) -> BigRational {
        let x = BigRational::from(BigInt::from(d));
        let mut acc = BigRational::zero();
        for c in self.hilbert_polynomial.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// Coefficient of t^d in the series expansion (the Hilbert function).
    pub fn hilbert_function(&self, d: i64) -> BigInt {
        if d < 0 {
            return BigInt::zero();
        }
        let mut acc = BigInt::zero();
        for (k, c) in self.series_numerator.iter().enumerate() {
            let m = d - k as i64;
            if m >= 0 {
                acc += c * binomial(m + self.nvars as i64 - 1, self.nvars as i64 - 1);
            }
        }
        acc
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn minimalize(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(k, h)| {
            k != i
                && h.iter().zip(g).all(|(a, b)| a <= b)
                && (h != g || k < i)
        });
        if !redundant {
            out.push(g.clone());
        }
    }
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Numerator of the Hilbert series of R/I for a monomial ideal I, by the
/// pivot recursion N(I) = N(I + (x)) + t * N(I : x).
fn numerator(gens: Vec<Vec<u32>>, nvars: usize) -> Vec<BigInt> {
    let gens = minimalize(&gens);
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![BigInt::zero()];
    }
    if gens.iter().all(|g| g.iter().filter(|&&e| e > 0).count() == 1) {
        // product of (1 - t^deg) over the pure powers
        let mut num = vec![BigInt::one()];
        for g in &gens {
            let d: u32 = g.iter().sum();
            let mut next = vec![BigInt::zero(); num.len() + d as usize];
            for (i, c) in num.iter().enumerate() {
                next[i] += c;
                next[i + d as usize] -= c;
            }
            num = next;
        }
        return num;
    }
    // pivot on the most frequent variable among those occurring in a mixed
    // generator; a pure-power pivot could leave the ideal unchanged and
    // loop
    let piv = (0..nvars)
        .filter(|&v| {
            gens.iter()
                .any(|g| g[v] > 0 && g.iter().filter(|&&e| e > 0).count() > 1)
        })
        .max_by_key(|&v| gens.iter().filter(|g| g[v] > 0).count())
        .unwrap();
    let mut with_var = gens.clone();
    let mut e = vec![0u32; nvars];
    e[piv] = 1;
    with_var.push(e);
    let a = numerator(with_var, nvars);
    let quot: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[piv] = h[piv].saturating_sub(1);
            h
        })
        .collect();
    let b = numerator(quot, nvars);
    let mut res = vec![BigInt::zero(); a.len().max(b.len() + 1)];
    for (i, c) in a.into_iter().enumerate() {
        res[i] += c;
    }
    for (i, c) in b.into_iter().enumerate() {
        res[i + 1] += c;
    }
    while res.len() > 1 && res.last().unwrap().is_zero() {
        res.pop();
    }
    res
}

pub fn hilbert_series(leading_monomials: &[Monomial], nvars: usize) -> HilbertData {
    let gens: Vec<Vec<u32>> = leading_monomials
        .iter()
        .map(|m| {
            assert_eq!(m.nvars(), nvars);
            m.exps().to_vec()
        })
        .collect();
    let series_numerator = numerator(gens, nvars);

    // cancel (1-t) factors: numerator(1) == 0 means divisible
    let mut reduced = series_numerator.clone();
    let mut pole = nvars as i64;
    if reduced.iter().all(|c| c.is_zero()) {
        // unit ideal: the quotient ring is zero
        return HilbertData {
            series_numerator,
            nvars,
            reduced_numerator: vec![BigInt::zero()],
            dimension: -1,
            hilbert_polynomial: vec![],
            genus: None,
            regularity: 0,
        };
    }
    while reduced.iter().sum::<BigInt>().is_zero() {
        // synthetic division by (1 - t)
        let mut q = Vec::with_capacity(reduced.len() - 1);
        let mut acc = BigInt::zero();
        for c in &reduced[..reduced.len() - 1] {
            acc += c;
            q.push(acc.clone());
        }
        reduced = q;
        pole -= 1;
    }
    let dimension = pole - 1;

    // P(m) = sum_k reduced[k] * C(m - k + pole - 1, pole - 1) as a
    // polynomial in m
    let mut hilbert_polynomial: Vec<BigRational> = Vec::new();
    if pole > 0 {
        let mut acc = vec![BigRational::zero(); pole as usize];
        for (k, c) in reduced.iter().enumerate() {
            // expand prod_{s=0}^{pole-2} (m - k + pole - 1 - s) / (pole-1)!
            let mut term = vec![BigRational::from(BigInt::from(c.clone()))];
            for s in 0..pole - 1 {
                let shift = BigRational::from(BigInt::from(pole - 1 - k as i64 - s));
                // term *= (m + shift)
                let mut next = vec![BigRational::zero(); term.len() + 1];
                for (i, t) in term.iter().enumerate() {
                    next[i] = &next[i] + &(t * &shift);
                    next[i + 1] = &next[i + 1] + t;
                }
                term = next;
            }
            for (i, t) in term.into_iter().enumerate() {
                acc[i] = &acc[i] + &t;
            }
        }
        let fact: BigInt = (1..pole).map(BigInt::from).product();
        let fact = BigRational::from(fact);
        hilbert_polynomial = acc.into_iter().map(|c| c / &fact).collect();
        while hilbert_polynomial.len() > 1
            && hilbert_polynomial.last().unwrap().is_zero()
        {
            hilbert_polynomial.pop();
        }
    }

    let genus = if dimension >= 0 {
        let p0 = hilbert_polynomial
            .first()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        assert!(p0.is_integer(), "P(0) must be an integer");
        let val = p0.to_integer() - BigInt::one();
        Some(if dimension % 2 == 1 { -val } else { val })
    } else {
        None
    };

    let regularity = ((reduced.len() as i64 - 1) - dimension).max(0);

    HilbertData {
        series_numerator,
        nvars,
        reduced_numerator: reduced,
        dimension,
        hilbert_polynomial,
        genus,
        regularity,
    }
}

/// Count of degree-d monomials outside the monomial ideal, by direct
/// enumeration. The independent oracle for `hilbert_series`.
pub fn hilbert_function_bruteforce(
    leading_monomials: &[Monomial],
    nvars: usize,
    d: u32,
    cap: u128,
) -> Result<u64, HilbertError> {
    let total = n_multichoose(nvars as u128, d as u128);
    if total > cap {
        return Err(HilbertError::BudgetExceeded(total, cap));
    }
    let gens: Vec<Vec<u32>> = leading_monomials.iter().map(|m| m.exps().to_vec()).collect();
    let mut count = 0u64;
    let mut exps = vec![0u32; nvars];
    count_rec(&mut exps, 0, d, &gens, &mut count);
    Ok(count)
}

fn n_multichoose(n: u128, d: u128) -> u128 {
    // C(n + d - 1, d)
    let mut acc: u128 = 1;
    for i in 0..d {
        acc = acc * (n + i) / (i + 1);
    }
    acc
}

fn count_rec(exps: &mut Vec<u32>, i: usize, rem: u32, gens: &[Vec<u32>], count: &mut u64) {
    if i + 1 == exps.len() {
        exps[i] = rem;
        if !gens.iter().any(|g| divides(g, exps)) {
            *count += 1;
        }
        exps[i] = 0;
        return;
    }
    for e in 0..=rem {
        exps[i] = e;
        count_rec(exps, i + 1, rem - e, gens, count);
        exps[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn mons(exps: &[&[u32]]) -> Vec<Monomial> {
        exps.iter().map(|e| Monomial::new(e.to_vec())).collect()
    }

    #[test]
    fn zero_ideal_in_nine_vars_is_projective_space() {
        let h = hilbert_series(&[], 9);
        assert_eq!(h.dimension, 8);
        assert_eq!(h.genus, Some(BigInt::zero()));
        // P(t) = C(t+8, 8)
        assert_eq!(h.eval_polynomial(0), BigRational::from(BigInt::from(1)));
        assert_eq!(h.eval_polynomial(2), BigRational::from(BigInt::from(45)));
    }

    #[test]
    fn single_variable_ideal() {
        // I = (x1) in 2 vars: one point in P^1
        let h = hilbert_series(&mons(&[&[1, 0]]), 2);
        assert_eq!(h.dimension, 0);
        assert_eq!(h.eval_polynomial(5), BigRational::from(BigInt::from(1)));
        assert_eq!(h.genus, Some(BigInt::zero()));
    }

    #[test]
    fn unit_ideal() {
        let h = hilbert_series(&mons(&[&[0, 0, 0]]), 3);
        assert_eq!(h.dimension, -1);
        assert_eq!(h.genus, None);
    }

    #[test]
    fn smooth_quadric_in_p8() {
        let h = hilbert_series(&mons(&[&[2, 0, 0, 0, 0, 0, 0, 0, 0]]), 9);
        assert_eq!(h.dimension, 7);
        assert_eq!(h.genus, Some(BigInt::zero()));
    }

    #[test]
    fn twisted_cubic_leading_terms() {
        // degrevlex LT ideal of the twisted cubic in P^3: (x1^2, x1*x2,
        // x2^2); the brute-force check below pins the whole Hilbert
        // function
        let lead = mons(&[&[0, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 0]]);
        let h = hilbert_series(&lead, 4);
        for d in 0..=10 {
            let bf = hilbert_function_bruteforce(&lead, 4, d, 1 << 20).unwrap();
            assert_eq!(h.hilbert_function(d as i64), BigInt::from(bf));
        }
        assert_eq!(h.dimension, 1);
        assert_eq!(h.genus, Some(BigInt::zero()));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(hilbert_function_bruteforce(&[], 3, 2, 1 << 20).unwrap(), 6);
        assert_eq!(
            hilbert_function_bruteforce(&mons(&[&[2]]), 1, 5, 1 << 20).unwrap(),
            0
        );
        assert!(matches!(
            hilbert_function_bruteforce(&[], 30, 20, 10),
            Err(HilbertError::BudgetExceeded(_, 10))
        ));
    }

    #[test]
    fn series_matches_brute_force_on_random_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..50 {
            let nvars = rng.gen_range(2..=6);
            let ngens = rng.gen_range(1..=8);
            let gens: Vec<Monomial> = (0..ngens)
                .map(|_| {
                    let mut e = vec![0u32; nvars];
                    let deg = rng.gen_range(1..=4);
                    for _ in 0..deg {
                        e[rng.gen_range(0..nvars)] += 1;
                    }
                    Monomial::new(e)
                })
                .collect();
            let h = hilbert_series(&gens, nvars);
            for d in 0..=12u32 {
                let bf = hilbert_function_bruteforce(&gens, nvars, d, 1 << 24).unwrap();
                assert_eq!(
                    h.hilbert_function(d as i64),
                    BigInt::from(bf),
                    "series/bruteforce mismatch at degree {d}"
                );
                if (d as i64) >= h.regularity && h.dimension >= 0 {
                    assert_eq!(
                        h.eval_polynomial(d as i64),
                        BigRational::from(BigInt::from(bf)),
                        "polynomial disagrees past regularity at degree {d}"
                    );
                }
            }
        }
    }

    #[test]
    fn dimension_stable_under_redundant_generators() {
        let lead = mons(&[&[2, 0, 0], &[0, 3, 0]]);
        let mut padded = lead.clone();
        padded.push(Monomial::new(vec![2, 1, 0]));
        padded.push(Monomial::new(vec![2, 0, 0]));
        let a = hilbert_series(&lead, 3);
        let b = hilbert_series(&padded, 3);
        assert_eq!(a, b);
    }
}
