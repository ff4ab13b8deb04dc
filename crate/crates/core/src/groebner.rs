//! Buchberger's algorithm and deterministic normal forms.
//!
//! The reduced Groebner basis is unique for the fixed glex order, so every
//! normal form computed here is reproducible across runs. Pair selection is
//! the normal strategy (smallest lcm first) with Buchberger's product and
//! chain criteria.

use std::collections::BinaryHeap;

use thiserror::Error;

use crate::poly::{Monomial, PolyError, Polynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("no generators given")]
    EmptyInput,
    #[error("generators belong to different rings")]
    RingMismatch,
}

/// An ideal presented by its generators together with the reduced Groebner
/// basis computed from them. Basis elements are monic, fully interreduced
/// and sorted descending by leading term.
#[derive(Debug, Clone)]
pub struct GroebnerIdeal {
    ring: Ring,
    generators: Vec<Polynomial>,
    reduced_basis: Vec<Polynomial>,
}

impl GroebnerIdeal {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn reduced_basis(&self) -> &[Polynomial] {
        &self.reduced_basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.reduced_basis
            .iter()
            .map(|g| g.leading().expect("basis elements are nonzero").0.clone())
            .collect()
    }

    /// Unique remainder of `f` under multivariate division by the reduced
    /// basis: no term of the result is divisible by any basis leading term.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        if f.ring() != &self.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(reduce(f, &self.reduced_basis))
    }

    /// True iff the monomial is its own normal form (a standard monomial).
    pub fn is_basis_elt(&self, mon: &Polynomial) -> Result<bool, PolyError> {
        assert!(
            mon.is_monic_monomial(),
            "is_basis_elt expects a single monomial with coefficient 1"
        );
        Ok(self.normal_form(mon)? == *mon)
    }
}

/// Full reduction of `f` by `basis`: always rewrites the glex-largest
/// reducible term, always against the first matching divisor, so the result
/// is deterministic even when `basis` is not a Groebner basis.
pub(crate) fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let mut rem = Polynomial::zero(ring);
    let mut work = f.clone();
    let leads: Vec<(&Monomial, &crate::scalar::ExactScalar)> =
        basis.iter().map(|g| g.leading().expect("nonzero")).collect();
    while let Some((mon, coeff)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for (g, (lm, lc)) in basis.iter().zip(&leads) {
            if lm.divides(&mon) {
                let q = lm.quotient_into(&mon);
                let factor = -coeff.try_div(lc).expect("leading coefficient nonzero");
                work.add_assign_scaled_shifted(g, &q, &factor);
                reduced = true;
                break;
            }
        }
        if !reduced {
            // move the irreducible leading term to the remainder
            rem.add_term(mon.clone(), coeff.clone());
            work.add_term(mon, -coeff);
        }
    }
    rem
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lmf, lcf) = f.leading().expect("nonzero");
    let (lmg, lcg) = g.leading().expect("nonzero");
    let l = lmf.lcm(lmg);
    let qf = lmf.quotient_into(&l);
    let qg = lmg.quotient_into(&l);
    let cf = lcf.inv().expect("field");
    let cg = lcg.inv().expect("field");
    &f.mul_term(&qf, &cf) - &g.mul_term(&qg, &cg)
}

#[derive(PartialEq, Eq)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

// BinaryHeap is a max-heap; invert so the smallest lcm pops first.
impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .lcm
            .cmp(&self.lcm)
            .then_with(|| (other.i, other.j).cmp(&(self.i, self.j)))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerIdeal, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyInput)?;
    let ring = first.ring().clone();
    if gens.iter().any(|g| g.ring() != &ring) {
        return Err(GroebnerError::RingMismatch);
    }

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    if basis.is_empty() {
        // the zero ideal
        return Ok(GroebnerIdeal {
            ring,
            generators: gens.to_vec(),
            reduced_basis: Vec::new(),
        });
    }

    let mut queue: BinaryHeap<Pair> = BinaryHeap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            queue.push(make_pair(&basis, i, j));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();

    while let Some(pair) = queue.pop() {
        let (i, j) = (pair.i, pair.j);
        done.insert((i, j));
        let lmi = basis[i].leading().unwrap().0;
        let lmj = basis[j].leading().unwrap().0;
        // product criterion: coprime leading monomials
        if lmi.mul(lmj) == pair.lcm {
            continue;
        }
        // chain criterion
        if (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().0.divides(&pair.lcm)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        }) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                queue.push(make_pair(&basis, k, new));
            }
        }
    }

    Ok(GroebnerIdeal {
        ring,
        generators: gens.to_vec(),
        reduced_basis: interreduce(basis),
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn make_pair(basis: &[Polynomial], i: usize, j: usize) -> Pair {
    let lcm = basis[i]
        .leading()
        .unwrap()
        .0
        .lcm(basis[j].leading().unwrap().0);
    Pair { lcm, i, j }
}

/// Minimalize and tail-reduce a Groebner basis, producing the unique
/// reduced basis sorted descending by leading term.
fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading term another element divides
    let mut keep: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = h.leading().unwrap().0;
            (k < i && lh.divides(lm)) || (k > i && lh != lm && lh.divides(lm))
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // tail reduction until stable
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let others: Vec<Polynomial> = keep
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = reduce(&keep[i], &others).monic();
            if r != keep[i] {
                keep[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    keep.sort_by(|a, b| b.leading().unwrap().0.cmp(a.leading().unwrap().0));
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, RingSpec};
    use crate::scalar::{ExactScalar, FieldConfig};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> Ring {
        RingSpec::numbered("x", 0, n, FieldConfig::Rationals)
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let r = ring(2);
        let x0 = Polynomial::var(&r, 0).unwrap();
        let g = &(&x0 * &x0) - &Polynomial::one(&r);
        let ideal = buchberger(&[g.clone()]).unwrap();
        assert_eq!(ideal.reduced_basis(), &[g]);
    }

    #[test]
    fn redundant_generator_eliminated() {
        let r = ring(2);
        let x0 = Polynomial::var(&r, 0).unwrap();
        let x1 = Polynomial::var(&r, 1).unwrap();
        let ideal = buchberger(&[x0.clone(), &x0 * &x1]).unwrap();
        assert_eq!(ideal.reduced_basis(), &[x0]);
    }

    #[test]
    fn single_step_normal_form() {
        let r = ring(2);
        let x0 = Polynomial::var(&r, 0).unwrap();
        let x1 = Polynomial::var(&r, 1).unwrap();
        let ideal = buchberger(&[&(&x0 * &x0) - &x1]).unwrap();
        let nf = ideal.normal_form(&(&x0 * &x0)).unwrap();
        assert_eq!(nf, x1);
    }

    #[test]
    fn proper_ideal_keeps_constants() {
        let r = ring(2);
        let x0 = Polynomial::var(&r, 0).unwrap();
        let ideal = buchberger(&[x0]).unwrap();
        let one = Polynomial::one(&r);
        assert_eq!(ideal.normal_form(&one).unwrap(), one);
        assert!(ideal.is_basis_elt(&one).unwrap());
        let lead = Polynomial::monomial(&r, ideal.leading_monomials()[0].clone());
        assert!(!ideal.is_basis_elt(&lead).unwrap());
    }

    fn katsura3(r: &Ring) -> Vec<Polynomial> {
        // small standard-ish system to exercise the pair loop
        let v = |i| Polynomial::var(r, i).unwrap();
        let c = |n| Polynomial::constant(r, ExactScalar::from_i64(n, r.field()));
        vec![
            &(&(&v(0) + &(&c(2) * &v(1))) + &(&c(2) * &v(2))) - &c(1),
            &(&(&(&v(0) * &v(0)) + &(&c(2) * &(&v(1) * &v(1)))) + &(&c(2) * &(&v(2) * &v(2))))
                - &v(0),
            &(&(&c(2) * &(&v(0) * &v(1))) + &(&c(2) * &(&v(1) * &v(2)))) - &v(1),
        ]
    }

    #[test]
    fn spoly_of_every_basis_pair_reduces_to_zero() {
        let r = ring(3);
        let ideal = buchberger(&katsura3(&r)).unwrap();
        let basis = ideal.reduced_basis();
        assert!(basis.len() >= 3);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j]);
                assert!(ideal.normal_form(&s).unwrap().is_zero());
            }
        }
        for g in ideal.generators() {
            assert!(ideal.normal_form(g).unwrap().is_zero());
        }
    }

    #[test]
    fn basis_is_fully_reduced() {
        let r = ring(3);
        let ideal = buchberger(&katsura3(&r)).unwrap();
        let leads = ideal.leading_monomials();
        for (i, g) in ideal.reduced_basis().iter().enumerate() {
            assert!(g.leading().unwrap().1.is_one(), "basis element not monic");
            for (m, _) in g.terms() {
                for (k, lm) in leads.iter().enumerate() {
                    if k != i {
                        assert!(!lm.divides(m));
                    }
                }
                if m != g.leading().unwrap().0 {
                    assert!(!leads[i].divides(m));
                }
            }
        }
        // sorted descending by leading term
        for w in ideal.reduced_basis().windows(2) {
            assert!(w[0].leading().unwrap().0 > w[1].leading().unwrap().0);
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng, r: &Ring, nterms: usize) -> Polynomial {
        let mut p = Polynomial::zero(r);
        for _ in 0..nterms {
            let m = Monomial::new((0..r.nvars()).map(|_| rng.gen_range(0..3)).collect());
            let c = ExactScalar::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            p = &p + &Polynomial::term(r, m, c);
        }
        p
    }

    #[test]
    fn normal_form_idempotent_and_linear() {
        let r = ring(3);
        let ideal = buchberger(&katsura3(&r)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let f = random_poly(&mut rng, &r, 5);
            let g = random_poly(&mut rng, &r, 5);
            let nf = ideal.normal_form(&f).unwrap();
            assert_eq!(ideal.normal_form(&nf).unwrap(), nf);
            let a = ExactScalar::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let b = ExactScalar::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let lhs = ideal
                .normal_form(&(&f.scale(&a) + &g.scale(&b)))
                .unwrap();
            let rhs = &nf.scale(&a) + &ideal.normal_form(&g).unwrap().scale(&b);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn remainder_unchanged_under_divisor_shuffle() {
        // uniqueness of the remainder w.r.t. a reduced GB: reducing against
        // the basis in a permuted order gives the same result
        let r = ring(3);
        let ideal = buchberger(&katsura3(&r)).unwrap();
        let mut shuffled = ideal.reduced_basis().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            shuffled.shuffle(&mut rng);
            let f = random_poly(&mut rng, &r, 6);
            assert_eq!(reduce(&f, &shuffled), ideal.normal_form(&f).unwrap());
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(buchberger(&[]).err(), Some(GroebnerError::EmptyInput));
    }
}
