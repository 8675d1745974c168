mod common;

use assignalg::exactpoly::{binomial, monomial_basis, Polynomial, Rational, RationalMatrix};
use assignalg::gkm::{generated_in_degree, same_span};
use assignalg::{FixedComponent, Freeness, GkmPresentation, Piece, Subalgebra};
use common::*;
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

fn piece(k: usize, n: usize) -> impl Strategy<Value = Piece> {
    (nonzero_form(k), btree_set(0..n, 2..=n)).prop_map(move |(f, members)| Piece {
        g: Subalgebra::from_kernel(&[f], k).unwrap(),
        members: members.into_iter().collect(),
    })
}

fn presentation() -> impl Strategy<Value = GkmPresentation> {
    (1usize..=3, 2usize..=4).prop_flat_map(|(k, n)| {
        vec(piece(k, n), 0..=3).prop_map(move |pieces| {
            let comps = (0..n).map(|i| FixedComponent::named(format!("F{i}"))).collect();
            GkmPresentation::new(k, comps, pieces, false).unwrap()
        })
    })
}

fn with_extra_piece() -> impl Strategy<Value = (GkmPresentation, Piece)> {
    presentation().prop_flat_map(|p| {
        let (k, n) = (p.torus_dim(), p.num_components());
        (Just(p), piece(k, n))
    })
}

/// Degree-`d` dimension by a direct solve: unknowns are the coefficients of
/// every `f_r`, constraints are the coordinatized restrictions of
/// `f_r − f_s` to each piece.
fn oracle_dim(p: &GkmPresentation, d: usize) -> usize {
    let k = p.torus_dim();
    let n = p.num_components();
    let monos = monomial_basis(k, d);
    let m = monos.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for pc in p.pieces() {
        let images: Vec<Polynomial> = monos
            .iter()
            .map(|mono| pc.g.restrict(&Polynomial::monomial(k, mono.clone(), Rational::from_integer(1.into()))).unwrap())
            .collect();
        let target_monos = monomial_basis(pc.g.dim(), d);
        for w in pc.members.windows(2) {
            for tm in &target_monos {
                let mut row = vec![Rational::default(); n * m];
                for (j, img) in images.iter().enumerate() {
                    let c = img.coeff(tm);
                    row[w[0] * m + j] += c.clone();
                    row[w[1] * m + j] -= c;
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n * m;
    }
    n * m - RationalMatrix::from_rows(rows).unwrap().rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_elements_are_members(p in presentation()) {
        for d in 0..=3 {
            for t in p.graded_basis(d) {
                prop_assert!(p.is_member(&t).unwrap().is_member());
            }
        }
    }

    #[test]
    fn dims_match_the_restriction_oracle(p in presentation()) {
        let dims = p.graded_dims(3);
        for (d, &dim) in dims.iter().enumerate() {
            prop_assert_eq!(dim, oracle_dim(&p, d));
        }
    }

    #[test]
    fn adding_a_piece_never_grows_a_degree((p, extra) in with_extra_piece()) {
        let q = p.with_piece(extra).unwrap();
        for (a, b) in p.graded_dims(3).iter().zip(q.graded_dims(3)) {
            prop_assert!(b <= *a);
        }
    }

    #[test]
    fn minimal_generators_generate(p in presentation()) {
        let r = p.module_report(3);
        let bases = p.graded_bases(3);
        let (n, k) = (p.num_components(), p.torus_dim());
        for (d, basis) in bases.iter().enumerate() {
            let gen = generated_in_degree(k, d, &r.generators);
            prop_assert!(same_span(n, k, d, basis, &gen));
        }
        match r.freeness {
            Freeness::NotFree => prop_assert!(r.generators.len() > r.rank),
            Freeness::Free => prop_assert_eq!(r.generators.len(), r.rank),
            Freeness::UndeterminedAtBound => prop_assert!(r.caveat.is_some()),
        }
        prop_assert_eq!(r.rank, n);
    }
}

#[test]
fn no_pieces_gives_the_free_module() {
    for k in 1..=3 {
        for n in 1..=3 {
            let comps = (0..n).map(|i| FixedComponent::named(format!("F{i}"))).collect();
            let p = GkmPresentation::new(k, comps, vec![], false).unwrap();
            for d in 0..=4 {
                assert_eq!(p.graded_dims(4)[d], n * binomial(d + k - 1, k - 1));
            }
        }
    }
}

#[test]
fn a_point_piece_through_everything_leaves_one_constant() {
    for k in 1..=3 {
        for n in 2..=4 {
            let comps = (0..n).map(|i| FixedComponent::named(format!("F{i}"))).collect();
            let piece = Piece {
                g: Subalgebra::zero(k),
                members: (0..n).collect(),
            };
            let p = GkmPresentation::new(k, comps, vec![piece], k > 1).unwrap();
            assert_eq!(p.graded_dims(0), vec![1]);
        }
    }
}

#[test]
fn strict_validation_rejects_a_point_piece() {
    let comps = vec![FixedComponent::named("a"), FixedComponent::named("b")];
    let piece = Piece {
        g: Subalgebra::zero(2),
        members: vec![0, 1],
    };
    let err = GkmPresentation::new(2, comps, vec![piece], false).unwrap_err();
    assert!(err.to_string().contains("piece_codim"), "{err}");
}
