//! Extending polynomials given on intersections of hyperplanes.
//!
//! An [`ExtensionProblem`] prescribes, for subspaces `V_i = ⋂_{j∈J_i} ker β_j`,
//! a polynomial on each `V_i`. When the `β_j` are independent and the data
//! agree on pairwise intersections a global extension always exists and
//! [`extend_independent`] builds one by inclusion–exclusion in coordinates
//! dual to the `β_j`. [`extend_solve`] handles arbitrary forms by solving the
//! degreewise linear system, and certifies infeasibility when there is none.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{int, monomial_basis, LinearForm, Polynomial, Rational, RationalMatrix};
use crate::toruslin::{forms_rank, Subalgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionConstraint {
    /// Zero-based indices into the problem's forms.
    pub indices: Vec<usize>,
    /// Normal form of the target modulo the constraint's subspace.
    pub target: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionProblem {
    ambient_dim: usize,
    forms: Vec<LinearForm>,
    constraints: Vec<ExtensionConstraint>,
    subspaces: Vec<Subalgebra>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incompatibility {
    pub first: usize,
    pub second: usize,
    /// Normal form of the difference of the two targets on the intersection.
    pub residue: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionOutcome {
    Feasible(Polynomial),
    /// No polynomial of the requested degree bound exists. `pivot_row` is the
    /// row of the reduced augmented system `[A | b]` whose only nonzero entry
    /// is in the right-hand column, in the degree where it occurs.
    Infeasible { degree: u32, pivot_row: Vec<Rational> },
}

impl ExtensionOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ExtensionOutcome::Feasible(_))
    }
}

impl ExtensionProblem {
    pub fn new(
        ambient_dim: usize,
        forms: Vec<LinearForm>,
        constraints: Vec<(Vec<usize>, Polynomial)>,
    ) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::invalid("torus_dim", "ambient dimension must be positive"));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.nvars() != ambient_dim {
                return Err(Error::invalid(
                    "vector_length",
                    format!("form {} has length {}", i + 1, f.nvars()),
                ));
            }
        }
        let mut seen = BTreeSet::new();
        let mut stored = Vec::with_capacity(constraints.len());
        let mut subspaces = Vec::with_capacity(constraints.len());
        for (c, (indices, target)) in constraints.into_iter().enumerate() {
            let set: BTreeSet<usize> = indices.iter().copied().collect();
            if set.is_empty() {
                return Err(Error::invalid(
                    "index_sets",
                    format!("constraint {} has an empty index set", c + 1),
                ));
            }
            if let Some(&bad) = set.iter().find(|&&j| j >= forms.len()) {
                return Err(Error::invalid(
                    "index_sets",
                    format!("constraint {} refers to form {}", c + 1, bad + 1),
                ));
            }
            if !seen.insert(set.clone()) {
                return Err(Error::invalid(
                    "index_sets",
                    format!("constraint {} repeats an index set", c + 1),
                ));
            }
            if target.nvars() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: target.nvars(),
                });
            }
            let kernel: Vec<LinearForm> = set.iter().map(|&j| forms[j].clone()).collect();
            let v = Subalgebra::from_kernel(&kernel, ambient_dim)?;
            stored.push(ExtensionConstraint {
                indices: set.into_iter().collect(),
                target: v.normal_form(&target)?,
            });
            subspaces.push(v);
        }
        Ok(ExtensionProblem {
            ambient_dim,
            forms,
            constraints: stored,
            subspaces,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn constraints(&self) -> &[ExtensionConstraint] {
        &self.constraints
    }

    /// The subspace `V_i` of each constraint.
    pub fn subspaces(&self) -> &[Subalgebra] {
        &self.subspaces
    }

    /// Pairs of constraints whose targets differ on the intersection.
    pub fn compatibility_check(&self) -> Result<Vec<Incompatibility>> {
        let mut out = Vec::new();
        for i in 0..self.constraints.len() {
            for j in i + 1..self.constraints.len() {
                let meet = self.subspaces[i].intersect(&self.subspaces[j])?;
                let diff = self.constraints[i]
                    .target
                    .checked_sub(&self.constraints[j].target)?;
                let residue = meet.normal_form(&diff)?;
                if !residue.is_zero() {
                    out.push(Incompatibility {
                        first: i,
                        second: j,
                        residue,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Whether `f` restricts to every target.
    pub fn satisfied_by(&self, f: &Polynomial) -> Result<Option<usize>> {
        for (i, (c, v)) in self.constraints.iter().zip(&self.subspaces).enumerate() {
            if !v.agree(f, &c.target)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Rows of the forms followed by standard basis vectors chosen greedily to
/// complete them to a basis of the dual space.
fn dual_completion(forms: &[LinearForm], n: usize) -> RationalMatrix {
    let mut rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    for e in 0..n {
        if rows.len() == n {
            break;
        }
        let mut unit = vec![Rational::zero(); n];
        unit[e] = int(1);
        let mut trial = rows.clone();
        trial.push(unit.clone());
        if RationalMatrix::from_rows_with_cols(trial, n).expect("length").rank() > rows.len() {
            rows.push(unit);
        }
    }
    RationalMatrix::from_rows_with_cols(rows, n).expect("length")
}

/// `p` with the variables in the bit set `mask` replaced by zero.
fn zero_vars(p: &Polynomial, mask: u32) -> Polynomial {
    if mask == 0 {
        return p.clone();
    }
    let n = p.nvars();
    let mut sub = RationalMatrix::identity(n);
    for j in 0..n {
        if mask & (1 << j) != 0 {
            sub[(j, j)] = Rational::zero();
        }
    }
    p.substitute_linear(&sub).expect("arity")
}

/// The extension for linearly independent forms.
///
/// Works in coordinates `x = P·u` where the first rows of `P` are the forms,
/// so that `ker β_j = {x_j = 0}`. For every set `J` of forms, from the largest
/// down, it fixes a polynomial `g_J` on `W_J = ⋂_{j∈J} {x_j = 0}`: the target
/// of the lowest-indexed constraint whose subspace contains `W_J` if there is
/// one, and otherwise the inclusion–exclusion sum
/// `Σ_{∅≠I⊆J^c} (-1)^{|I|+1} g_{J∪I}`, which restricts to `g_{J∪{c}}` on
/// every `{x_c = 0}`. The answer is `g_∅`, checked against every constraint.
pub fn extend_independent(prob: &ExtensionProblem) -> Result<Polynomial> {
    let n = prob.ambient_dim;
    let m = prob.forms.len();
    if m > 31 || forms_rank(&prob.forms, n)? != m {
        return Err(Error::DependentForms);
    }
    if let Some(bad) = prob.compatibility_check()?.first() {
        return Err(Error::IncompatibleTargets(bad.first + 1, bad.second + 1));
    }
    if prob.constraints.is_empty() {
        return Ok(Polynomial::zero(n));
    }
    let p = dual_completion(&prob.forms, n);
    let w = p.inverse().ok_or(Error::DependentForms)?;
    let targets: Vec<Polynomial> = prob
        .constraints
        .iter()
        .map(|c| c.target.substitute_linear(&w))
        .collect::<Result<_>>()?;
    let masks: Vec<u32> = prob
        .constraints
        .iter()
        .map(|c| c.indices.iter().fold(0u32, |acc, &j| acc | (1 << j)))
        .collect();

    let full = (1u32 << m) - 1;
    let mut order: Vec<u32> = (0..=full).collect();
    order.sort_by_key(|j| std::cmp::Reverse(j.count_ones()));
    let mut g: Vec<Option<Polynomial>> = vec![None; 1 << m];
    for &j in &order {
        check_restricted_independence(prob, j)?;
        let chosen = masks.iter().position(|&mi| mi & !j == 0);
        let value = match chosen {
            Some(i) => {
                let v = zero_vars(&targets[i], j);
                if cfg!(debug_assertions) {
                    for (k, &mk) in masks.iter().enumerate() {
                        if mk & !j == 0 {
                            debug_assert_eq!(zero_vars(&targets[k], j), v, "constraints {i} and {k}");
                        }
                    }
                }
                v
            }
            None => {
                let comp = full & !j;
                let mut acc = Polynomial::zero(n);
                let mut sub = comp;
                while sub != 0 {
                    let term = g[(j | sub) as usize].as_ref().expect("deeper sets first");
                    acc = if sub.count_ones() % 2 == 1 {
                        &acc + term
                    } else {
                        &acc - term
                    };
                    sub = (sub - 1) & comp;
                }
                acc
            }
        };
        g[j as usize] = Some(value);
    }
    let f_x = g[0].take().expect("root computed");
    let f = f_x.substitute_linear(&p)?;
    if let Some(i) = prob.satisfied_by(&f)? {
        return Err(Error::AssemblyVerificationFailure(i + 1));
    }
    Ok(f)
}

/// The nonzero restrictions of the forms outside `mask` to `W_mask` must be
/// independent; this holds for independent forms and is checked defensively.
fn check_restricted_independence(prob: &ExtensionProblem, mask: u32) -> Result<()> {
    let n = prob.ambient_dim;
    let inside: Vec<LinearForm> = (0..prob.forms.len())
        .filter(|j| mask & (1 << j) != 0)
        .map(|j| prob.forms[j].clone())
        .collect();
    let wj = Subalgebra::from_kernel(&inside, n)?;
    let restricted: Vec<LinearForm> = (0..prob.forms.len())
        .filter(|j| mask & (1 << j) == 0)
        .map(|j| wj.restrict(&prob.forms[j].to_polynomial()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| LinearForm::from_polynomial(&p).expect("linear"))
        .collect();
    if forms_rank(&restricted, wj.dim())? != restricted.len() {
        return Err(Error::DependentForms);
    }
    Ok(())
}

/// Solves for `f` of degree at most `bound` degree by degree; forms may be
/// dependent. Degrees above the bound where some target has a nonzero
/// component are solved with no unknowns, so they certify infeasibility too.
pub fn extend_solve(prob: &ExtensionProblem, bound: u32) -> Result<ExtensionOutcome> {
    let n = prob.ambient_dim;
    let top = prob
        .constraints
        .iter()
        .filter_map(|c| c.target.degree().finite())
        .max()
        .unwrap_or(0)
        .max(bound);
    let subs: Vec<RationalMatrix> = prob
        .subspaces
        .iter()
        .map(Subalgebra::normal_form_substitution)
        .collect();
    let mut f = Polynomial::zero(n);
    for d in 0..=top {
        let du = d as usize;
        let ambient = monomial_basis(n, du);
        let unknowns = if d <= bound { ambient.clone() } else { Vec::new() };
        let cols = unknowns.len() + 1;
        let mut rows = Vec::new();
        for (c, sub) in prob.constraints.iter().zip(&subs) {
            let images: Vec<Polynomial> = unknowns
                .iter()
                .map(|mono| Polynomial::monomial(n, mono.clone(), int(1)).substitute_linear(sub))
                .collect::<Result<_>>()?;
            let rhs = c.target.graded_component(d);
            for o in &ambient {
                let mut row: Vec<Rational> = images.iter().map(|img| img.coeff(o)).collect();
                row.push(rhs.coeff(o));
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let rref = RationalMatrix::from_rows_with_cols(rows, cols)?.rref();
        if rref.pivots.last() == Some(&(cols - 1)) {
            let r = rref.pivots.len() - 1;
            return Ok(ExtensionOutcome::Infeasible {
                degree: d,
                pivot_row: rref.matrix.row(r).to_vec(),
            });
        }
        let mut coeffs = vec![Rational::zero(); unknowns.len()];
        for (r, &p) in rref.pivots.iter().enumerate() {
            coeffs[p] = rref.matrix[(r, cols - 1)].clone();
        }
        let part = Polynomial::from_terms(n, unknowns.into_iter().zip(coeffs));
        f = &f + &part;
    }
    if let Some(i) = prob.satisfied_by(&f)? {
        return Err(Error::AssemblyVerificationFailure(i + 1));
    }
    Ok(ExtensionOutcome::Feasible(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, k: usize) -> Polynomial {
        Polynomial::parse(s, k).unwrap()
    }

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::from_ints(c)
    }

    fn antidiagonal_problem() -> ExtensionProblem {
        ExtensionProblem::new(
            2,
            vec![lf(&[1, 0]), lf(&[0, 1]), lf(&[1, 1])],
            vec![
                (vec![0], poly("u2", 2)),
                (vec![1], poly("u1", 2)),
                (vec![2], poly("u1", 2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn constant_target() {
        let prob = ExtensionProblem::new(3, vec![lf(&[1, 2, 0])], vec![(vec![0], poly("7/2", 3))]).unwrap();
        assert_eq!(extend_independent(&prob).unwrap(), poly("7/2", 3));
    }

    #[test]
    fn axes_in_the_plane() {
        let prob = ExtensionProblem::new(
            2,
            vec![lf(&[1, 0]), lf(&[0, 1])],
            vec![
                (vec![0], poly("u2^2", 2)),
                (vec![1], poly("u1^3", 2)),
                (vec![0, 1], poly("0", 2)),
            ],
        )
        .unwrap();
        let f = extend_independent(&prob).unwrap();
        assert_eq!(f, poly("u1^3 + u2^2", 2));
        assert!(extend_solve(&prob, 3).unwrap().is_feasible());
    }

    #[test]
    fn skewed_forms() {
        let prob = ExtensionProblem::new(
            3,
            vec![lf(&[1, 1, 0]), lf(&[0, 1, -1])],
            vec![
                (vec![0], poly("u1^2 + u3", 3)),
                (vec![1], poly("u1*u2", 3)),
            ],
        );
        // The targets disagree on the line: u1^2 + u3 vs. u1*u2 at (t,-t,-t).
        assert_eq!(
            extend_independent(&prob.unwrap()).unwrap_err(),
            Error::IncompatibleTargets(1, 2)
        );
        let global = poly("u1^2*u3 - 2*u2 + u1*u2*u3", 3);
        let forms = vec![lf(&[1, 1, 0]), lf(&[0, 1, -1])];
        let cons: Vec<(Vec<usize>, Polynomial)> = vec![
            (vec![0], global.clone()),
            (vec![1], global.clone()),
            (vec![0, 1], global.clone()),
        ];
        let prob = ExtensionProblem::new(3, forms, cons).unwrap();
        let f = extend_independent(&prob).unwrap();
        assert_eq!(prob.satisfied_by(&f).unwrap(), None);
    }

    #[test]
    fn dependent_forms_are_rejected() {
        assert_eq!(extend_independent(&antidiagonal_problem()).unwrap_err(), Error::DependentForms);
    }

    #[test]
    fn antidiagonal_is_infeasible_in_degree_one() {
        let prob = antidiagonal_problem();
        assert!(prob.compatibility_check().unwrap().is_empty());
        for bound in 1..5 {
            match extend_solve(&prob, bound).unwrap() {
                ExtensionOutcome::Infeasible { degree, pivot_row } => {
                    assert_eq!(degree, 1);
                    assert_eq!(pivot_row, vec![int(0), int(0), int(1)]);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn empty_problem() {
        let prob = ExtensionProblem::new(2, vec![lf(&[1, 0])], vec![]).unwrap();
        assert_eq!(extend_solve(&prob, 3).unwrap(), ExtensionOutcome::Feasible(poly("0", 2)));
        assert_eq!(extend_independent(&prob).unwrap(), poly("0", 2));
    }

    #[test]
    fn target_above_bound() {
        let prob = ExtensionProblem::new(1, vec![lf(&[1])], vec![(vec![0], poly("3", 1))]).unwrap();
        assert!(extend_solve(&prob, 0).unwrap().is_feasible());
        let prob = ExtensionProblem::new(2, vec![lf(&[1, 0])], vec![(vec![0], poly("u2^2", 2))]).unwrap();
        assert!(matches!(
            extend_solve(&prob, 1).unwrap(),
            ExtensionOutcome::Infeasible { degree: 2, .. }
        ));
    }

    #[test]
    fn validation() {
        let bad = ExtensionProblem::new(2, vec![lf(&[1, 0])], vec![(vec![], poly("1", 2))]);
        assert!(matches!(bad, Err(Error::Invalid { invariant: "index_sets", .. })));
        let dup = ExtensionProblem::new(
            2,
            vec![lf(&[1, 0])],
            vec![(vec![0], poly("1", 2)), (vec![0, 0], poly("1", 2))],
        );
        assert!(matches!(dup, Err(Error::Invalid { invariant: "index_sets", .. })));
    }
}
