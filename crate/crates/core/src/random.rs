//! Seeded generators for random test inputs: extension problems built from a
//! hidden global polynomial, and small stratified models.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactpoly::{rat, LinearForm, Monomial, Polynomial, Rational};
use crate::extend::ExtensionProblem;
use crate::strata::{StrataAssignment, StratifiedSpace, Stratum};
use crate::toruslin::{forms_rank, Subalgebra};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=3);
    rat(num, den)
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = random_rational(rng);
        if q != Rational::default() {
            return q;
        }
    }
}

/// A polynomial with up to `terms` terms of total degree at most `max_degree`.
pub fn random_polynomial<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize) -> Polynomial {
    let count = rng.gen_range(0..=terms);
    let mut out = Polynomial::zero(nvars);
    for _ in 0..count {
        let d = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        out = &out + &Polynomial::monomial(nvars, Monomial::new(e), random_nonzero_rational(rng));
    }
    out
}

/// A homogeneous polynomial of degree `d`.
pub fn random_homogeneous<R: Rng>(rng: &mut R, nvars: usize, d: u32, terms: usize) -> Polynomial {
    random_polynomial(rng, nvars, d, terms).graded_component(d)
}

pub fn random_int_vector<R: Rng>(rng: &mut R, len: usize, range: i64) -> Vec<Rational> {
    (0..len)
        .map(|_| Rational::from_integer(rng.gen_range(-range..=range).into()))
        .collect()
}

/// A random subalgebra of dimension at most `max_dim`.
pub fn random_subalgebra<R: Rng>(rng: &mut R, ambient_dim: usize, max_dim: usize) -> Subalgebra {
    let rows = rng.gen_range(0..=max_dim.min(ambient_dim));
    let vectors: Vec<Vec<Rational>> = (0..rows).map(|_| random_int_vector(rng, ambient_dim, 2)).collect();
    Subalgebra::from_span(ambient_dim, &vectors).expect("lengths match")
}

/// `count` linearly independent forms in `n` variables.
pub fn random_independent_forms<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<LinearForm> {
    loop {
        let forms: Vec<LinearForm> = (0..count)
            .map(|_| LinearForm::new(random_int_vector(rng, n, 2)))
            .collect();
        if forms_rank(&forms, n).expect("lengths match") == count {
            return forms;
        }
    }
}

/// An extension problem whose targets are restrictions of a hidden global
/// polynomial, so it is always solvable. Returns the problem and the hidden
/// polynomial.
pub fn random_extension_problem<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_degree: u32,
) -> (ExtensionProblem, Polynomial) {
    let n = rng.gen_range(1..=max_dim);
    let m = rng.gen_range(1..=n);
    let forms = random_independent_forms(rng, n, m);
    let hidden = random_polynomial(rng, n, max_degree, 6);
    let mut masks: Vec<u32> = (1..(1u32 << m)).collect();
    masks.shuffle(rng);
    let k = rng.gen_range(1..=masks.len().min(4));
    let constraints = masks[..k]
        .iter()
        .map(|&mask| {
            let idx: Vec<usize> = (0..m).filter(|j| mask & (1 << j) != 0).collect();
            (idx, hidden.clone())
        })
        .collect();
    let prob = ExtensionProblem::new(n, forms, constraints).expect("well formed");
    (prob, hidden)
}

/// A stratified model with torus dimension at most 3 and at most
/// `max_strata` strata. Related distinct strata always have strictly nested
/// isotropy; about a third of the strata are fixed.
pub fn random_stratified_model<R: Rng>(rng: &mut R, max_strata: usize) -> StratifiedSpace {
    let k = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=max_strata);
    let strata: Vec<Stratum> = (0..count)
        .map(|i| {
            let h = if rng.gen_bool(0.35) {
                Subalgebra::full(k)
            } else {
                random_subalgebra(rng, k, k)
            };
            Stratum::new(format!("s{i}"), h)
        })
        .collect();
    let mut rel = Vec::new();
    for y in 0..count {
        for z in 0..count {
            let (hy, hz) = (&strata[y].isotropy, &strata[z].isotropy);
            if y != z && hy.dim() > hz.dim() && hy.contains(hz).expect("same dim") && rng.gen_bool(0.6) {
                rel.push((y, z));
            }
        }
    }
    StratifiedSpace::new(k, strata, &rel).expect("strictly nested relations form a poset")
}

/// A random combination of the oracle basis in degrees up to `max_degree`.
pub fn random_assignment<R: Rng>(rng: &mut R, space: &StratifiedSpace, max_degree: usize) -> StrataAssignment {
    let mut values = vec![Polynomial::zero(space.torus_dim()); space.len()];
    for d in 0..=max_degree {
        for b in space.graded_basis_oracle(d) {
            let c = random_rational(rng);
            for (v, p) in values.iter_mut().zip(&b.values) {
                *v = &*v + &p.scale(&c);
            }
        }
    }
    StrataAssignment { values }
}

/// The downward closure of a random subset.
pub fn random_closed_subset<R: Rng>(rng: &mut R, space: &StratifiedSpace) -> Vec<usize> {
    let seeds: Vec<usize> = (0..space.len()).filter(|_| rng.gen_bool(0.4)).collect();
    (0..space.len())
        .filter(|&y| seeds.iter().any(|&s| space.leq(y, s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = random_extension_problem(&mut rng_from_seed(7), 4, 4);
        let b = random_extension_problem(&mut rng_from_seed(7), 4, 4);
        assert_eq!(a, b);
        let s = random_stratified_model(&mut rng_from_seed(3), 6);
        assert_eq!(s, random_stratified_model(&mut rng_from_seed(3), 6));
    }

    #[test]
    fn closed_subsets_are_closed() {
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let s = random_stratified_model(&mut rng, 6);
            let sub = random_closed_subset(&mut rng, &s);
            assert!(s.is_downward_closed(&sub));
        }
    }
}
