#![allow(dead_code)]

use assignalg::exactpoly::{rat, LinearForm, Monomial, Polynomial, Rational, RationalMatrix};
use assignalg::Subalgebra;
use proptest::collection::vec;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| *q != Rational::default())
}

/// Polynomials with at most `terms` terms and each exponent at most `max_exp`.
pub fn polynomial(nvars: usize, max_exp: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    vec((vec(0..=max_exp, nvars), rational()), 0..=terms).prop_map(move |ts| {
        Polynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (Monomial::new(e), c)))
    })
}

pub fn int_vector(len: usize, range: i64) -> impl Strategy<Value = Vec<Rational>> {
    vec((-range..=range).prop_map(|n| Rational::from_integer(n.into())), len)
}

pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        vec(vec(rational(), c), r).prop_map(|rows| RationalMatrix::from_rows(rows).unwrap())
    })
}

pub fn subalgebra(k: usize) -> impl Strategy<Value = Subalgebra> {
    (0..=k).prop_flat_map(move |r| {
        vec(int_vector(k, 2), r).prop_map(move |vs| Subalgebra::from_span(k, &vs).unwrap())
    })
}

/// An ambient dimension in `1..=max_k` together with a subalgebra of it.
pub fn sized_subalgebra(max_k: usize) -> impl Strategy<Value = (usize, Subalgebra)> {
    (1..=max_k).prop_flat_map(|k| subalgebra(k).prop_map(move |h| (k, h)))
}

pub fn linear_form(k: usize) -> impl Strategy<Value = LinearForm> {
    int_vector(k, 3).prop_map(LinearForm::new)
}

pub fn nonzero_form(k: usize) -> impl Strategy<Value = LinearForm> {
    linear_form(k).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn poly(s: &str, k: usize) -> Polynomial {
    Polynomial::parse(s, k).unwrap()
}

pub mod checks;
