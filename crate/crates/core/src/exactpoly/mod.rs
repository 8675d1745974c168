//! Exact rational arithmetic, sparse multivariate polynomials and dense
//! rational linear algebra.
//!
//! Everything in this module is exact. Polynomials live in a fixed ambient
//! coordinate system `u1..uN` and are kept in canonical graded-lex form, so
//! structural equality is mathematical equality.

mod matrix;
mod monomial;
mod poly;
mod text;

pub use matrix::{RationalMatrix, Rref};
pub use monomial::{monomial_basis, Monomial};
pub use poly::{Degree, LinearForm, Polynomial};
pub use text::{format_rational, parse_rational};

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Binomial coefficient `C(n, k)` for small arguments.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: usize) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    binomial(d + nvars - 1, nvars - 1)
}
