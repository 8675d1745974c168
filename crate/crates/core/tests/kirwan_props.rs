use assignalg::corpus::load_gkm;
use assignalg::exactpoly::int;
use assignalg::kirwan::{kernel_generators, quotient_report};
use assignalg::{Error, GkmPresentation, LinearForm, MomentData, Rational, Subalgebra};
use proptest::prelude::*;

fn cp1_cubed() -> (GkmPresentation, MomentData) {
    let doc = load_gkm("cp1_cubed_gkm").unwrap();
    let p = doc.presentation().unwrap();
    let m = MomentData::from_presentation(&p, &doc.circle().unwrap().unwrap(), &doc.level()).unwrap();
    (p, m)
}

fn with_values(m: &MomentData, values: Vec<Rational>) -> MomentData {
    MomentData {
        values,
        circle: m.circle.clone(),
    }
}

fn signs() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(prop_oneof![Just(int(-1)), Just(int(1)), Just(int(2)), Just(int(-3))], 8)
}

const BOUND: u32 = 3;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn kernels_vanish_and_form_ideals(values in signs()) {
        let (p, m) = cp1_cubed();
        let m = with_values(&m, values);
        let k = kernel_generators(&p, &m, BOUND).unwrap();
        let forms = [LinearForm::from_ints(&[1, 0]).to_polynomial(), LinearForm::from_ints(&[0, 1]).to_polynomial()];
        for part in [&k.plus, &k.minus] {
            for (d, basis) in part.bases.iter().enumerate() {
                for t in basis {
                    prop_assert!(part.vanishing.iter().all(|&i| t.polys[i].is_zero()));
                    prop_assert!(p.is_member(t).unwrap().is_member());
                    if d < BOUND as usize {
                        for f in &forms {
                            let ft = t.mul_poly(f);
                            prop_assert!(part.vanishing.iter().all(|&i| ft.polys[i].is_zero()));
                            prop_assert!(p.is_member(&ft).unwrap().is_member());
                        }
                    }
                }
            }
        }
        prop_assert_eq!(&k.plus.vanishing, &m.positive());
        prop_assert_eq!(&k.minus.vanishing, &m.negative());
    }

    #[test]
    fn quotient_dims_follow_the_kernel_dims(values in signs()) {
        let (p, m) = cp1_cubed();
        let m = with_values(&m, values);
        let q = quotient_report(&p, &m, BOUND).unwrap();
        let a = p.graded_dims(BOUND);
        for (d, &dim_a) in a.iter().enumerate() {
            prop_assert_eq!(q.dims[d], dim_a - q.kernel.sum_dims[d]);
            if q.kernel.direct {
                prop_assert_eq!(q.dims[d], dim_a - q.kernel.plus.dims[d] - q.kernel.minus.dims[d]);
            }
        }
    }

    #[test]
    fn flipping_the_moment_swaps_the_kernels(values in signs()) {
        let (p, m) = cp1_cubed();
        let flipped: Vec<Rational> = values.iter().map(|v| -v.clone()).collect();
        let up = kernel_generators(&p, &with_values(&m, values), BOUND).unwrap();
        let down = kernel_generators(&p, &with_values(&m, flipped), BOUND).unwrap();
        prop_assert_eq!(&up.plus.dims, &down.minus.dims);
        prop_assert_eq!(&up.minus.dims, &down.plus.dims);
        prop_assert_eq!(up.sum_dims, down.sum_dims);
    }
}

#[test]
fn the_regular_level_kernels_are_direct() {
    let (p, m) = cp1_cubed();
    let k = kernel_generators(&p, &m, 4).unwrap();
    assert!(k.direct);
    assert_eq!(k.plus.vanishing, vec![4, 5, 6, 7]);
    assert_eq!(k.minus.vanishing, vec![0, 1, 2, 3]);
    let q = quotient_report(&p, &m, 4).unwrap();
    assert_eq!(q.dims, vec![1, 4, 4, 4, 4]);
    assert!(q.identifies_reduced_space());
}

#[test]
fn literal_signs_give_the_same_quotient() {
    // Reading the moment with the opposite sign convention swaps K⁺ and K⁻
    // but leaves the quotient unchanged.
    let (p, m) = cp1_cubed();
    let literal = with_values(&m, m.values.iter().map(|v| -v.clone()).collect());
    let a = quotient_report(&p, &m, 4).unwrap();
    let b = quotient_report(&p, &literal, 4).unwrap();
    assert_eq!(a.kernel.plus.dims, b.kernel.minus.dims);
    assert_eq!(a.dims, b.dims);
    assert_eq!(a.generator_degrees(), b.generator_degrees());
}

#[test]
fn critical_levels_are_rejected() {
    let doc = load_gkm("cp1_cubed_gkm").unwrap();
    let p = doc.presentation().unwrap();
    let circle = doc.circle().unwrap().unwrap();
    let err = MomentData::from_presentation(&p, &circle, &int(1)).unwrap_err();
    assert!(matches!(err, Error::Regularity(_)));
    let plane = Subalgebra::full(2);
    assert_eq!(MomentData::from_presentation(&p, &plane, &int(0)).unwrap_err(), Error::CircleDimension(2));
}

#[test]
fn cp3_fails_the_weight_hypothesis_only_at_the_first_point() {
    let p = load_gkm("cp3_gkm").unwrap().presentation().unwrap();
    let check = assignalg::kirwan::check_surjectivity_hypothesis(&p).unwrap();
    let verdicts: Vec<bool> = check.components.iter().map(|c| c.passes).collect();
    assert_eq!(verdicts, vec![false, true, true, true]);
    assert!(!check.passes());
}
