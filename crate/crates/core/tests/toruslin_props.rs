mod common;

use assignalg::exactpoly::{LinearForm, Rational};
use assignalg::toruslin::collinearity_classes;
use assignalg::Subalgebra;
use common::*;
use proptest::collection::vec;
use proptest::prelude::*;

/// A point of `h` as a combination of its basis vectors.
fn point_of(h: &Subalgebra, coeffs: &[Rational]) -> Vec<Rational> {
    let mut v = vec![Rational::default(); h.ambient_dim()];
    for (b, c) in h.basis_vectors().iter().zip(coeffs) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += y * c;
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_of_vanishing_ideal_is_the_subalgebra((k, h) in sized_subalgebra(5)) {
        let back = Subalgebra::from_kernel(&h.vanishing_ideal().forms(), k).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(h.vanishing_ideal().len(), h.codim());
        prop_assert_eq!(h.free_variables().len(), h.dim());
    }
}

proptest! {
    #[test]
    fn normal_form_vanishes_iff_restriction_does(
        (h, p) in (1usize..=4).prop_flat_map(|k| (subalgebra(k), polynomial(k, 2, 4)))
    ) {
        let nf = h.normal_form(&p).unwrap();
        let res = h.restrict(&p).unwrap();
        prop_assert_eq!(nf.is_zero(), res.is_zero());
        // nf(p) ≡ p on h
        let diff = h.normal_form(&(&nf - &p)).unwrap();
        prop_assert!(diff.is_zero());
    }

    #[test]
    fn normal_form_agrees_with_p_at_points_of_h(
        (h, p, c) in (1usize..=4).prop_flat_map(|k| (subalgebra(k), polynomial(k, 2, 4), vec(rational(), k)))
    ) {
        let x = point_of(&h, &c);
        prop_assert_eq!(h.normal_form(&p).unwrap().eval(&x).unwrap(), p.eval(&x).unwrap());
    }

    #[test]
    fn normal_form_is_linear_and_multiplicative(
        (h, p, q, c) in (1usize..=4).prop_flat_map(|k| (subalgebra(k), polynomial(k, 2, 4), polynomial(k, 2, 4), rational()))
    ) {
        let nf = |f: &assignalg::Polynomial| h.normal_form(f).unwrap();
        prop_assert_eq!(nf(&(&p * &q)), nf(&(&nf(&p) * &nf(&q))));
        prop_assert_eq!(nf(&(&p + &q.scale(&c))), &nf(&p) + &nf(&q).scale(&c));
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
    }

    #[test]
    fn containment_transfers_vanishing(
        (h1, extra, p) in (1usize..=4).prop_flat_map(|k| (subalgebra(k), subalgebra(k), polynomial(k, 2, 4)))
    ) {
        // h2 ⊆ h1 by construction
        let h2 = h1.intersect(&extra).unwrap();
        prop_assert!(h1.contains(&h2).unwrap());
        if h1.normal_form(&p).unwrap().is_zero() {
            prop_assert!(h2.normal_form(&p).unwrap().is_zero());
        }
        let big = h1.sum(&extra).unwrap();
        prop_assert!(big.contains(&h1).unwrap() && big.contains(&extra).unwrap());
    }

    #[test]
    fn collinearity_classes_ignore_scaling_and_order(
        (ws, scales, perm_seed) in (1usize..=3).prop_flat_map(|k| (
            vec(nonzero_form(k), 1..=6),
            vec(nonzero_rational(), 6),
            any::<u64>(),
        ))
    ) {
        let base = collinearity_classes(&ws).unwrap();
        let mut moved: Vec<LinearForm> = ws
            .iter()
            .zip(&scales)
            .map(|(w, s)| LinearForm::new(w.coeffs().iter().map(|c| c * s).collect()))
            .collect();
        let n = moved.len();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            moved.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(collinearity_classes(&moved).unwrap(), base.clone());
        prop_assert_eq!(base.iter().map(|c| c.multiplicity).sum::<usize>(), ws.len());
    }
}

#[test]
fn primitive_representatives_are_normalized() {
    let ws = [LinearForm::from_ints(&[-2, 0]), LinearForm::from_ints(&[2, -2]), LinearForm::from_ints(&[-1, 1])];
    let classes = collinearity_classes(&ws).unwrap();
    assert_eq!(classes.len(), 2);
    let reps: Vec<(Vec<i64>, usize)> = classes
        .iter()
        .map(|c| (c.representative.iter().map(|x| i64::try_from(x).unwrap()).collect(), c.multiplicity))
        .collect();
    assert_eq!(reps, vec![(vec![1, -1], 2), (vec![1, 0], 1)]);
}

#[test]
fn zero_weights_are_rejected() {
    assert!(collinearity_classes(&[LinearForm::from_ints(&[0, 0])]).is_err());
}
