//! GKM presentations of assignment algebras.
//!
//! The algebra is the set of tuples `(f_1, ..., f_n)` over the fixed
//! components such that, for every piece `(g, members)`, the differences
//! `f_r - f_s` of members restrict to zero on `g`. Every constraint is
//! homogeneous, so the algebra is computed one degree at a time.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{
    monomial_basis, monomial_count, LinearForm, Polynomial, Rational, RationalMatrix,
};
use crate::graded::{sweep_generators, AssignmentTuple, EchelonSpan, SweepResult};
use crate::toruslin::Subalgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    pub name: String,
    /// Moment value `Φ(F)` along the chosen circle, if known.
    pub moment: Option<Rational>,
    /// Full moment image `Φ_T(F) ∈ 𝔱*`, paired with the circle on demand.
    pub moment_vector: Option<Vec<Rational>>,
    /// Isotropy weights of the normal representation.
    pub weights: Option<Vec<LinearForm>>,
}

impl FixedComponent {
    pub fn named(name: impl Into<String>) -> Self {
        FixedComponent {
            name: name.into(),
            moment: None,
            moment_vector: None,
            weights: None,
        }
    }

    pub fn with_moment(mut self, moment: Rational) -> Self {
        self.moment = Some(moment);
        self
    }

    pub fn with_weights(mut self, weights: Vec<LinearForm>) -> Self {
        self.weights = Some(weights);
        self
    }
}

/// A codimension-one isotropy `g` together with the fixed components lying in
/// one connected component of the fixed set of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub g: Subalgebra,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmPresentation {
    torus_dim: usize,
    components: Vec<FixedComponent>,
    pieces: Vec<Piece>,
    generalized_pieces: bool,
}

/// A member pair of a piece whose difference survives restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceViolation {
    pub piece: usize,
    pub r: usize,
    pub s: usize,
    /// Normal form of `f_r - f_s` modulo the piece's vanishing ideal.
    pub residue: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub violations: Vec<PieceViolation>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free,
    NotFree,
    UndeterminedAtBound,
}

impl Freeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Freeness::Free => "free",
            Freeness::NotFree => "not_free",
            Freeness::UndeterminedAtBound => "undetermined_at_bound",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedModuleReport {
    pub degree_bound: u32,
    pub dims: Vec<usize>,
    pub generators: Vec<(AssignmentTuple, u32)>,
    pub rank: usize,
    pub freeness: Freeness,
    pub caveat: Option<String>,
}

impl GradedModuleReport {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }
}

impl GkmPresentation {
    /// Validates and builds a presentation. With `generalized_pieces` a piece
    /// may carry any proper subalgebra instead of a hyperplane.
    pub fn new(
        torus_dim: usize,
        components: Vec<FixedComponent>,
        pieces: Vec<Piece>,
        generalized_pieces: bool,
    ) -> Result<Self> {
        if torus_dim == 0 {
            return Err(Error::invalid("torus_dim", "torus dimension must be positive"));
        }
        if components.is_empty() {
            return Err(Error::invalid(
                "nonempty_components",
                "a presentation needs at least one fixed component",
            ));
        }
        let mut names = BTreeSet::new();
        for c in &components {
            if !names.insert(c.name.as_str()) {
                return Err(Error::invalid(
                    "unique_names",
                    format!("component name `{}` repeated", c.name),
                ));
            }
            if let Some(ws) = &c.weights {
                for (i, w) in ws.iter().enumerate() {
                    if w.nvars() != torus_dim {
                        return Err(Error::invalid(
                            "vector_length",
                            format!("weight {i} of `{}` has length {}", c.name, w.nvars()),
                        ));
                    }
                    if w.is_zero() {
                        return Err(Error::invalid(
                            "nonzero_weights",
                            format!("weight {i} of `{}` is zero", c.name),
                        ));
                    }
                }
            }
            if let Some(v) = &c.moment_vector {
                if v.len() != torus_dim {
                    return Err(Error::invalid(
                        "vector_length",
                        format!("moment vector of `{}` has length {}", c.name, v.len()),
                    ));
                }
            }
        }
        for (i, p) in pieces.iter().enumerate().map(|(i, p)| (i + 1, p)) {
            if p.g.ambient_dim() != torus_dim {
                return Err(Error::invalid(
                    "vector_length",
                    format!("piece {i} lives in dimension {}", p.g.ambient_dim()),
                ));
            }
            if generalized_pieces {
                if p.g.is_full() {
                    return Err(Error::invalid(
                        "piece_codim",
                        format!("piece {i} is the whole torus algebra"),
                    ));
                }
            } else if p.g.dim() + 1 != torus_dim {
                return Err(Error::invalid(
                    "piece_codim",
                    format!(
                        "piece {i} has dim {} but codimension-one pieces need dim {}",
                        p.g.dim(),
                        torus_dim - 1
                    ),
                ));
            }
            let distinct: BTreeSet<usize> = p.members.iter().copied().collect();
            if p.members.len() < 2 || distinct.len() != p.members.len() {
                return Err(Error::invalid(
                    "piece_members",
                    format!("piece {i} needs at least two distinct members"),
                ));
            }
            if let Some(&bad) = p.members.iter().find(|&&m| m >= components.len()) {
                return Err(Error::invalid(
                    "piece_members",
                    format!("piece {i} refers to component index {bad}"),
                ));
            }
        }
        Ok(GkmPresentation {
            torus_dim,
            components,
            pieces,
            generalized_pieces,
        })
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn generalized_pieces(&self) -> bool {
        self.generalized_pieces
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    /// The same presentation with one more piece.
    pub fn with_piece(&self, piece: Piece) -> Result<Self> {
        let mut pieces = self.pieces.clone();
        pieces.push(piece);
        GkmPresentation::new(
            self.torus_dim,
            self.components.clone(),
            pieces,
            self.generalized_pieces,
        )
    }

    pub fn is_member(&self, tuple: &AssignmentTuple) -> Result<Membership> {
        if tuple.len() != self.components.len() {
            return Err(Error::LengthMismatch {
                expected: self.components.len(),
                found: tuple.len(),
            });
        }
        for p in &tuple.polys {
            if p.nvars() != self.torus_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.torus_dim,
                    found: p.nvars(),
                });
            }
        }
        let mut violations = Vec::new();
        for (idx, piece) in self.pieces.iter().enumerate() {
            for (a, &r) in piece.members.iter().enumerate() {
                for &s in &piece.members[a + 1..] {
                    let residue = piece.g.normal_form(&(&tuple.polys[r] - &tuple.polys[s]))?;
                    if !residue.is_zero() {
                        violations.push(PieceViolation {
                            piece: idx,
                            r,
                            s,
                            residue,
                        });
                    }
                }
            }
        }
        Ok(Membership { violations })
    }

    /// Constraint matrix of the degree-`d` piece, with the entries of the
    /// components in `vanishing` forced to zero.
    fn constraint_matrix(&self, d: usize, vanishing: &[usize]) -> RationalMatrix {
        let k = self.torus_dim;
        let n = self.components.len();
        let basis = monomial_basis(k, d);
        let block = basis.len();
        let mut m = RationalMatrix::zeros(0, n * block);
        for piece in &self.pieces {
            // nf_columns[i] = coefficients of normal_form(basis[i], g)
            let sub = piece.g.normal_form_substitution();
            let nf_columns: Vec<Vec<Rational>> = basis
                .iter()
                .map(|mono| {
                    Polynomial::monomial(k, mono.clone(), crate::exactpoly::int(1))
                        .substitute_linear(&sub)
                        .expect("ambient arity")
                        .coefficients(d)
                })
                .collect();
            let first = piece.members[0];
            for &other in &piece.members[1..] {
                for o in 0..block {
                    if nf_columns.iter().all(|c| num_traits::Zero::is_zero(&c[o])) {
                        continue;
                    }
                    let mut row = vec![Rational::default(); n * block];
                    for (i, col) in nf_columns.iter().enumerate() {
                        row[first * block + i] += &col[o];
                        row[other * block + i] -= &col[o];
                    }
                    m.push_row(row).expect("row length");
                }
            }
        }
        for &r in vanishing {
            for i in 0..block {
                let mut row = vec![Rational::default(); n * block];
                row[r * block + i] = crate::exactpoly::int(1);
                m.push_row(row).expect("row length");
            }
        }
        m
    }

    /// Basis of the degree-`d` piece `A_d`, in the order produced by the
    /// nullspace of the constraint system (components outermost, monomials in
    /// descending graded-lex order).
    pub fn graded_basis(&self, d: usize) -> Vec<AssignmentTuple> {
        self.constrained_basis(d, &[])
    }

    /// Basis of the degree-`d` tuples that also vanish on `vanishing`.
    pub fn constrained_basis(&self, d: usize, vanishing: &[usize]) -> Vec<AssignmentTuple> {
        let n = self.components.len();
        let k = self.torus_dim;
        self.constraint_matrix(d, vanishing)
            .nullspace_basis()
            .into_iter()
            .map(|v| AssignmentTuple::from_coordinates(n, k, d, &v))
            .collect()
    }

    /// `graded_basis(d)` for every `d <= bound`, computed in parallel.
    pub fn graded_bases(&self, bound: u32) -> Vec<Vec<AssignmentTuple>> {
        self.constrained_bases(bound, &[])
    }

    pub fn constrained_bases(&self, bound: u32, vanishing: &[usize]) -> Vec<Vec<AssignmentTuple>> {
        (0..=bound as usize)
            .into_par_iter()
            .map(|d| self.constrained_basis(d, vanishing))
            .collect()
    }

    pub fn graded_dims(&self, bound: u32) -> Vec<usize> {
        self.graded_bases(bound).iter().map(Vec::len).collect()
    }

    /// Dimension of the free module `S^n` in degree `d`.
    pub fn free_dim(&self, d: usize) -> usize {
        self.components.len() * monomial_count(self.torus_dim, d)
    }

    pub fn coordinate_forms(&self) -> Vec<Polynomial> {
        (0..self.torus_dim)
            .map(|i| Polynomial::var(self.torus_dim, i))
            .collect()
    }

    pub fn generator_sweep(&self, bound: u32) -> SweepResult {
        let bases = self.graded_bases(bound);
        sweep_generators(
            self.components.len(),
            self.torus_dim,
            &self.coordinate_forms(),
            &bases,
            None,
        )
    }

    pub fn minimal_generators(&self, bound: u32) -> Vec<(AssignmentTuple, u32)> {
        self.generator_sweep(bound).generators
    }

    pub fn module_report(&self, bound: u32) -> GradedModuleReport {
        let sweep = self.generator_sweep(bound);
        let rank = self.components.len();
        let count = sweep.generators.len();
        let late = sweep
            .generators
            .iter()
            .any(|(_, d)| *d + 1 >= bound);
        let (freeness, caveat) = if count > rank {
            (Freeness::NotFree, None)
        } else if count == rank && !late {
            (Freeness::Free, None)
        } else {
            let why = if count < rank {
                format!("only {count} generators found up to degree {bound}, fewer than the rank {rank}")
            } else {
                format!("generators still appear in degree {} or {bound}; raise the degree bound", bound.saturating_sub(1))
            };
            (Freeness::UndeterminedAtBound, Some(why))
        };
        GradedModuleReport {
            degree_bound: bound,
            dims: sweep.degrees.iter().map(|s| s.dim).collect(),
            generators: sweep.generators,
            rank,
            freeness,
            caveat,
        }
    }
}

/// Whether the degree-`d` tuples in `a` span the same space as those in `b`.
pub fn same_span(n: usize, nvars: usize, d: usize, a: &[AssignmentTuple], b: &[AssignmentTuple]) -> bool {
    let len = n * monomial_count(nvars, d);
    let mut sa = EchelonSpan::new(len);
    for t in a {
        sa.insert(&t.to_coordinates(nvars, d));
    }
    let mut sb = EchelonSpan::new(len);
    for t in b {
        sb.insert(&t.to_coordinates(nvars, d));
    }
    sa.dim() == sb.dim()
        && a.iter().all(|t| sb.contains(&t.to_coordinates(nvars, d)))
}

/// Degree-`d` piece of the module generated by `gens` over the polynomial ring
/// in `nvars` variables.
pub fn generated_in_degree(
    nvars: usize,
    d: usize,
    gens: &[(AssignmentTuple, u32)],
) -> Vec<AssignmentTuple> {
    let mut out = Vec::new();
    for (g, e) in gens {
        let e = *e as usize;
        if e > d {
            continue;
        }
        for m in monomial_basis(nvars, d - e) {
            let mono = Polynomial::monomial(nvars, m, crate::exactpoly::int(1));
            out.push(g.mul_poly(&mono));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_pair(torus_dim: usize, generalized: bool) -> GkmPresentation {
        GkmPresentation::new(
            torus_dim,
            vec![FixedComponent::named("p1"), FixedComponent::named("p2")],
            vec![Piece {
                g: Subalgebra::zero(torus_dim),
                members: vec![0, 1],
            }],
            generalized,
        )
        .unwrap()
    }

    fn tuple(polys: &[&str], k: usize) -> AssignmentTuple {
        AssignmentTuple::new(polys.iter().map(|s| Polynomial::parse(s, k).unwrap()).collect())
    }

    #[test]
    fn constants_are_members() {
        let p = point_pair(1, false);
        assert!(p.is_member(&AssignmentTuple::constant(2, 1)).unwrap().is_member());
        assert!(matches!(
            p.is_member(&AssignmentTuple::constant(3, 1)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn two_points_on_a_line() {
        let p = point_pair(1, false);
        let b0 = p.graded_basis(0);
        assert_eq!(b0, vec![tuple(&["1", "1"], 1)]);
        let b1 = p.graded_basis(1);
        assert_eq!(b1, vec![tuple(&["u1", "0"], 1), tuple(&["0", "u1"], 1)]);
        assert!(!p.is_member(&tuple(&["1", "0"], 1)).unwrap().is_member());
        let gens = p.minimal_generators(3);
        assert_eq!(gens.iter().map(|g| g.1).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(gens[1].0, tuple(&["u1", "0"], 1));
        let r = p.module_report(3);
        assert_eq!(r.freeness, Freeness::Free);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn suspension_is_not_free() {
        let p = point_pair(2, true);
        let r = p.module_report(3);
        assert_eq!(r.generator_degrees(), vec![0, 1, 1]);
        assert_eq!(r.freeness, Freeness::NotFree);
        assert_eq!(r.dims, vec![1, 4, 6, 8]);
    }

    #[test]
    fn strict_pieces_must_be_hyperplanes() {
        let err = GkmPresentation::new(
            2,
            vec![FixedComponent::named("a"), FixedComponent::named("b")],
            vec![Piece {
                g: Subalgebra::zero(2),
                members: vec![0, 1],
            }],
            false,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invalid { invariant: "piece_codim", .. }));
    }

    #[test]
    fn structural_validation() {
        let comps = || vec![FixedComponent::named("a"), FixedComponent::named("a")];
        assert!(matches!(
            GkmPresentation::new(1, comps(), vec![], false),
            Err(Error::Invalid { invariant: "unique_names", .. })
        ));
        assert!(matches!(
            GkmPresentation::new(1, vec![], vec![], false),
            Err(Error::Invalid { invariant: "nonempty_components", .. })
        ));
        let one = vec![FixedComponent::named("a"), FixedComponent::named("b")];
        let bad = Piece {
            g: Subalgebra::zero(1),
            members: vec![0, 0],
        };
        assert!(matches!(
            GkmPresentation::new(1, one, vec![bad], false),
            Err(Error::Invalid { invariant: "piece_members", .. })
        ));
    }

    #[test]
    fn no_pieces_gives_free_module() {
        let p = GkmPresentation::new(
            2,
            (0..3).map(|i| FixedComponent::named(format!("z{i}"))).collect(),
            vec![],
            false,
        )
        .unwrap();
        for d in 0..5 {
            assert_eq!(p.graded_basis(d).len(), p.free_dim(d));
        }
        assert_eq!(p.module_report(3).generator_degrees(), vec![0, 0, 0]);
    }
}
