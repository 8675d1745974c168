//! Linear subalgebras of the torus Lie algebra and the restriction maps
//! between their polynomial rings.
//!
//! A [`Subalgebra`] is stored by a spanning set in reduced row echelon form,
//! which makes equality structural. Its vanishing ideal is generated by the
//! linear forms of [`Subalgebra::vanishing_ideal`]; a polynomial's class
//! modulo that ideal is represented by [`Subalgebra::normal_form`], obtained by
//! eliminating the pivot variable of each generating form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, LinearForm, Polynomial, Rational, RationalMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    ambient_dim: usize,
    basis: RationalMatrix,
}

/// Linear forms cutting out a subalgebra, as the rows of an RREF matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingIdealBasis {
    forms: RationalMatrix,
    pivots: Vec<usize>,
}

impl VanishingIdealBasis {
    pub fn forms(&self) -> Vec<LinearForm> {
        self.forms
            .row_vectors()
            .into_iter()
            .map(LinearForm::new)
            .collect()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.rows() == 0
    }

    /// Ambient variables eliminated by the normal form.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

impl Subalgebra {
    pub fn full(ambient_dim: usize) -> Self {
        Subalgebra {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subalgebra {
            ambient_dim,
            basis: RationalMatrix::zeros(0, ambient_dim),
        }
    }

    fn from_matrix(m: &RationalMatrix) -> Self {
        Subalgebra {
            ambient_dim: m.cols(),
            basis: m.rref().nonzero_rows(),
        }
    }

    /// The span of the given vectors (dependent or zero vectors allowed).
    pub fn from_span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let m = RationalMatrix::from_rows_with_cols(vectors.to_vec(), ambient_dim)?;
        Ok(Self::from_matrix(&m))
    }

    pub fn from_int_span(ambient_dim: usize, vectors: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| crate::exactpoly::int(x)).collect())
            .collect();
        Self::from_span(ambient_dim, &rows).expect("vector length")
    }

    /// The joint kernel of the given forms.
    pub fn from_kernel(forms: &[LinearForm], ambient_dim: usize) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
        let m = RationalMatrix::from_rows_with_cols(rows, ambient_dim)?;
        let kernel = m.nullspace_basis();
        Self::from_span(ambient_dim, &kernel)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// RREF basis rows.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    fn check_same_ambient(&self, other: &Subalgebra) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn vanishing_ideal(&self) -> VanishingIdealBasis {
        let kernel = if self.dim() == 0 {
            RationalMatrix::identity(self.ambient_dim).row_vectors()
        } else {
            self.basis.nullspace_basis()
        };
        let m = RationalMatrix::from_rows_with_cols(kernel, self.ambient_dim)
            .expect("kernel vectors have ambient length");
        let rref = m.rref();
        VanishingIdealBasis {
            forms: rref.nonzero_rows(),
            pivots: rref.pivots,
        }
    }

    pub fn intersect(&self, other: &Subalgebra) -> Result<Subalgebra> {
        self.check_same_ambient(other)?;
        let mut forms = self.vanishing_ideal().forms();
        forms.extend(other.vanishing_ideal().forms());
        Subalgebra::from_kernel(&forms, self.ambient_dim)
    }

    pub fn sum(&self, other: &Subalgebra) -> Result<Subalgebra> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subalgebra::from_span(self.ambient_dim, &rows)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subalgebra) -> Result<bool> {
        self.check_same_ambient(other)?;
        let ideal = self.vanishing_ideal();
        for v in other.basis_vectors() {
            if ideal.forms.mul_vec(&v)?.iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(self
            .vanishing_ideal()
            .forms
            .mul_vec(v)?
            .iter()
            .all(Zero::is_zero))
    }

    /// Substitution matrix realizing the normal form: pivot variables are
    /// replaced by the linear combination of free variables they equal on
    /// the subalgebra, free variables map to themselves.
    pub fn normal_form_substitution(&self) -> RationalMatrix {
        let ideal = self.vanishing_ideal();
        let n = self.ambient_dim;
        let mut sub = RationalMatrix::identity(n);
        for (r, &p) in ideal.pivots.iter().enumerate() {
            for j in 0..n {
                sub[(p, j)] = Rational::zero();
            }
            for j in 0..n {
                if j != p && !ideal.pivots.contains(&j) {
                    sub[(p, j)] = -ideal.forms[(r, j)].clone();
                }
            }
        }
        sub
    }

    /// Ambient variables that survive in normal forms; as many as `dim`.
    pub fn free_variables(&self) -> Vec<usize> {
        let ideal = self.vanishing_ideal();
        (0..self.ambient_dim)
            .filter(|j| !ideal.pivots.contains(j))
            .collect()
    }

    /// Canonical representative of `p` modulo the vanishing ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.nvars(),
            });
        }
        if self.is_full() {
            return Ok(p.clone());
        }
        p.substitute_linear(&self.normal_form_substitution())
    }

    /// `p` restricted to the subalgebra, in the coordinates of its RREF basis.
    pub fn restrict(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.nvars(),
            });
        }
        p.substitute_linear(&self.basis.transpose())
    }

    /// Whether `p` and `q` have the same restriction.
    pub fn agree(&self, p: &Polynomial, q: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(&p.checked_sub(q)?)?.is_zero())
    }
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|r| {
                let entries: Vec<String> = r.iter().map(format_rational).collect();
                format!("({})", entries.join(","))
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subalgebra({self})")
    }
}

/// A collinearity class of weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightClass {
    /// Coprime integer coefficients, first nonzero entry positive.
    pub representative: Vec<BigInt>,
    pub multiplicity: usize,
}

impl WeightClass {
    pub fn form(&self) -> LinearForm {
        LinearForm::new(
            self.representative
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }
}

/// The primitive integral representative of the line through `w`.
pub fn primitive_representative(w: &LinearForm) -> Option<Vec<BigInt>> {
    if w.is_zero() {
        return None;
    }
    let lcm = w
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = w
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = ints.iter().find(|c| !c.is_zero()).map(|c| c.signum())?;
    Some(ints.into_iter().map(|c| &c * &sign / &g).collect())
}

/// Groups weights into projective classes, sorted by representative.
pub fn collinearity_classes(weights: &[LinearForm]) -> Result<Vec<WeightClass>> {
    let mut classes: Vec<WeightClass> = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        let rep = primitive_representative(w).ok_or(Error::ZeroWeight(i))?;
        match classes.iter_mut().find(|c| c.representative == rep) {
            Some(c) => c.multiplicity += 1,
            None => classes.push(WeightClass {
                representative: rep,
                multiplicity: 1,
            }),
        }
    }
    classes.sort();
    Ok(classes)
}

/// Rank of a list of forms.
pub fn forms_rank(forms: &[LinearForm], ambient_dim: usize) -> Result<usize> {
    let rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    Ok(RationalMatrix::from_rows_with_cols(rows, ambient_dim)?.rank())
}
