//! The bundled example documents and the claims checked against them.

use crate::document::{GkmDoc, ModelDocument, StrataDoc};
use crate::error::{Error, Result};
use crate::exactpoly::monomial_count;
use crate::extend::{extend_solve, ExtensionOutcome};
use crate::gkm::{generated_in_degree, same_span, Freeness};
use crate::kirwan::{check_surjectivity_hypothesis, kernel_generators, quotient_report, MomentData};
use crate::random::{random_assignment, rng_from_seed};
use crate::toruslin::Subalgebra;

/// Bundled documents as `(name, json)` pairs.
pub const DOCUMENTS: &[(&str, &str)] = &[
    ("two_fixed_points_gkm", include_str!("../corpus/two_fixed_points_gkm.json")),
    ("two_fixed_points_strata", include_str!("../corpus/two_fixed_points_strata.json")),
    ("n_fixed_points_gkm", include_str!("../corpus/n_fixed_points_gkm.json")),
    ("n_fixed_points_strata", include_str!("../corpus/n_fixed_points_strata.json")),
    ("s3_strata", include_str!("../corpus/s3_strata.json")),
    ("suspension_gkm", include_str!("../corpus/suspension_gkm.json")),
    ("suspension_strata", include_str!("../corpus/suspension_strata.json")),
    ("trivial_action_gkm", include_str!("../corpus/trivial_action_gkm.json")),
    ("empty_strata", include_str!("../corpus/empty_strata.json")),
    ("sphere_in_cp3_extension", include_str!("../corpus/sphere_in_cp3_extension.json")),
    ("cp1_cubed_gkm", include_str!("../corpus/cp1_cubed_gkm.json")),
    ("cp1_cubed_strata", include_str!("../corpus/cp1_cubed_strata.json")),
    ("cp1_cubed_reduced_gkm", include_str!("../corpus/cp1_cubed_reduced_gkm.json")),
    ("cp3_gkm", include_str!("../corpus/cp3_gkm.json")),
];

pub fn source(name: &str) -> Option<&'static str> {
    DOCUMENTS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<ModelDocument> {
    let text = source(name).ok_or_else(|| Error::invalid("corpus_entry", format!("no bundled document `{name}`")))?;
    ModelDocument::parse(text)
}

pub fn load_gkm(name: &str) -> Result<GkmDoc> {
    match load(name)? {
        ModelDocument::Gkm(d) => Ok(d),
        other => Err(Error::invalid("document_kind", format!("`{name}` is a {} document", other.kind()))),
    }
}

pub fn load_strata(name: &str) -> Result<StrataDoc> {
    match load(name)? {
        ModelDocument::Strata(d) => Ok(d),
        other => Err(Error::invalid("document_kind", format!("`{name}` is a {} document", other.kind()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn claim(out: &mut Vec<ClaimResult>, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    out.push(ClaimResult {
        name: name.to_string(),
        passed,
        detail,
    });
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(found: T, expected: T) -> (bool, String) {
    let ok = found == expected;
    (ok, format!("found {found:?}, expected {expected:?}"))
}

/// Dimensions of the GKM and stratified descriptions of one space, up to `bound`.
pub fn oracle_pair(gkm: &str, strata: &str, bound: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let p = load_gkm(gkm)?.presentation()?;
    let s = load_strata(strata)?.space()?;
    Ok((p.graded_dims(bound as u32), s.oracle_dims(bound)))
}

/// Checks every claim of the bundled corpus. `seed` drives the randomized
/// round-trip checks.
pub fn run_examples(seed: u64) -> Vec<ClaimResult> {
    let mut out = Vec::new();

    claim(&mut out, "corpus.round_trip", || {
        let mut bad = Vec::new();
        for (name, text) in DOCUMENTS {
            let doc = ModelDocument::parse(text)?;
            doc.validate()?;
            if ModelDocument::parse(&doc.to_json())? != doc {
                bad.push(*name);
            }
        }
        Ok((bad.is_empty(), format!("{} documents, mismatches {bad:?}", DOCUMENTS.len())))
    });

    claim(&mut out, "two_fixed_points.oracle_equivalence", || {
        let (g, s) = oracle_pair("two_fixed_points_gkm", "two_fixed_points_strata", 5)?;
        Ok((g == s && g == vec![1, 2, 2, 2, 2, 2], format!("gkm {g:?}, strata {s:?}")))
    });
    claim(&mut out, "two_fixed_points.assignment", || {
        let doc = load_strata("two_fixed_points_strata")?;
        let space = doc.space()?;
        let (_, a) = doc.assignments()?.remove(0);
        let ok = space.is_assignment(&a)?.is_assignment();
        Ok((ok, "f1(0) = f2(0) = r".into()))
    });

    claim(&mut out, "n_fixed_points.oracle_equivalence", || {
        let (g, s) = oracle_pair("n_fixed_points_gkm", "n_fixed_points_strata", 5)?;
        Ok((g == s && g == vec![1, 3, 3, 3, 3, 3], format!("gkm {g:?}, strata {s:?}")))
    });

    claim(&mut out, "s3.dims", || {
        let s = load_strata("s3_strata")?.space()?;
        Ok(expect_eq(s.oracle_dims(5), vec![1, 2, 2, 2, 2, 2]))
    });
    claim(&mut out, "s3.assignments", || {
        let doc = load_strata("s3_strata")?;
        let space = doc.space()?;
        let verdicts: Vec<(String, bool)> = doc
            .assignments()?
            .into_iter()
            .map(|(n, a)| Ok((n, space.is_assignment(&a)?.is_assignment())))
            .collect::<Result<_>>()?;
        let expected = vec![("matching".to_string(), true), ("mismatched".to_string(), false)];
        Ok(expect_eq(verdicts, expected))
    });
    claim(&mut out, "s3.circle_quotient", || {
        let space = load_strata("s3_strata")?.space()?;
        let quotient = space.quotient_by_circle(&Subalgebra::from_int_span(2, &[&[1, 1]]))?;
        let up = space.oracle_dims(6);
        let down = quotient.space.oracle_dims(6);
        let ok = quotient.space.torus_dim() == 1 && quotient.space.fixed_strata().len() == 2 && up == down;
        Ok((ok, format!("upstairs {up:?}, quotient {down:?}, {} fixed strata", quotient.space.fixed_strata().len())))
    });
    claim(&mut out, "s3.circle_quotient_transport", || {
        let space = load_strata("s3_strata")?.space()?;
        let quotient = space.quotient_by_circle(&Subalgebra::from_int_span(2, &[&[1, 1]]))?;
        let mut rng = rng_from_seed(seed);
        for _ in 0..10 {
            let a = random_assignment(&mut rng, &space, 3);
            let down = quotient.transport(&a)?;
            if !quotient.space.is_assignment(&down)?.is_assignment() || quotient.lift(&down)? != a {
                return Ok((false, "transport and lift disagree".into()));
            }
        }
        Ok((true, "10 random assignments of degree at most 3".into()))
    });

    claim(&mut out, "suspension.not_free", || {
        let p = load_gkm("suspension_gkm")?.presentation()?;
        let r = p.module_report(2);
        let ok = r.rank == 2 && r.freeness == Freeness::NotFree && r.generator_degrees() == vec![0, 1, 1];
        Ok((
            ok,
            format!("rank {}, {}, generator degrees {:?}", r.rank, r.freeness.as_str(), r.generator_degrees()),
        ))
    });
    claim(&mut out, "suspension.oracle_equivalence", || {
        let (g, s) = oracle_pair("suspension_gkm", "suspension_strata", 5)?;
        Ok((g == s, format!("gkm {g:?}, strata {s:?}")))
    });

    claim(&mut out, "trivial_action.polynomial_ring", || {
        let p = load_gkm("trivial_action_gkm")?.presentation()?;
        let expected: Vec<usize> = (0..=5).map(|d| monomial_count(2, d)).collect();
        let r = p.module_report(3);
        let ok = p.graded_dims(5) == expected && r.freeness == Freeness::Free && r.generator_degrees() == vec![0];
        Ok((ok, format!("dims {:?}", p.graded_dims(5))))
    });
    claim(&mut out, "empty.zero_algebra", || {
        let s = load_strata("empty_strata")?.space()?;
        Ok(expect_eq(s.oracle_dims(4), vec![0; 5]))
    });

    claim(&mut out, "sphere_in_cp3.not_extendable", || {
        let prob = match load("sphere_in_cp3_extension")? {
            ModelDocument::Extension(d) => d.problem()?,
            _ => unreachable!("bundled document kind"),
        };
        let compatible = prob.compatibility_check()?.is_empty();
        let outcomes: Vec<ExtensionOutcome> = (1..=4).map(|b| extend_solve(&prob, b)).collect::<Result<_>>()?;
        let ok = compatible
            && outcomes
                .iter()
                .all(|o| matches!(o, ExtensionOutcome::Infeasible { degree: 1, .. }));
        Ok((ok, format!("pairwise compatible {compatible}, infeasible in degree 1 at bounds 1..4")))
    });

    cp1_cubed_claims(&mut out);

    claim(&mut out, "cp3.surjectivity_hypothesis", || {
        let p = load_gkm("cp3_gkm")?.presentation()?;
        let check = check_surjectivity_hypothesis(&p)?;
        let verdicts: Vec<(String, bool)> = check.components.iter().map(|c| (c.name.clone(), c.passes)).collect();
        let ok = !verdicts[0].1 && verdicts[1].1;
        Ok((ok, format!("{verdicts:?}")))
    });

    out
}

fn cp1_cubed_claims(out: &mut Vec<ClaimResult>) {
    claim(out, "cp1_cubed.free_basis", || {
        let p = load_gkm("cp1_cubed_gkm")?.presentation()?;
        let r = p.module_report(4);
        let ok = r.rank == 8 && r.freeness == Freeness::Free && r.generator_degrees() == vec![0, 1, 1, 1, 1, 2, 2, 2];
        Ok((
            ok,
            format!("rank {}, {}, generator degrees {:?}", r.rank, r.freeness.as_str(), r.generator_degrees()),
        ))
    });
    claim(out, "cp1_cubed.listed_basis_members", || {
        let doc = load_gkm("cp1_cubed_gkm")?;
        let p = doc.presentation()?;
        let mut failing = Vec::new();
        for name in ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"] {
            if !p.is_member(&doc.tuple(name)?)?.is_member() {
                failing.push(name);
            }
        }
        Ok((failing.is_empty(), format!("non-members {failing:?}")))
    });
    claim(out, "cp1_cubed.listed_basis_generates", || {
        let doc = load_gkm("cp1_cubed_gkm")?;
        let p = doc.presentation()?;
        let gens: Vec<_> = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"]
            .iter()
            .map(|n| {
                let t = doc.tuple(n)?;
                let d = t.homogeneous_degree().unwrap_or(0);
                Ok((t, d))
            })
            .collect::<Result<_>>()?;
        let bases = p.graded_bases(4);
        let ok = (0..=4).all(|d| same_span(8, 2, d, &bases[d], &generated_in_degree(2, d, &gens)));
        Ok((ok, "span of A1..A8 equals the algebra in degrees 0..4".into()))
    });
    claim(out, "cp1_cubed.oracle_equivalence", || {
        let (g, s) = oracle_pair("cp1_cubed_gkm", "cp1_cubed_strata", 3)?;
        Ok((g == s, format!("gkm {g:?}, strata {s:?}")))
    });
    claim(out, "cp1_cubed.surjectivity_hypothesis", || {
        let p = load_gkm("cp1_cubed_gkm")?.presentation()?;
        let check = check_surjectivity_hypothesis(&p)?;
        let classes: Vec<usize> = check.components.iter().map(|c| c.classes.len()).collect();
        Ok((check.passes(), format!("collinearity classes per component {classes:?}")))
    });
    claim(out, "cp1_cubed.kernels", || {
        let doc = load_gkm("cp1_cubed_gkm")?;
        let p = doc.presentation()?;
        let circle = doc.circle()?.expect("bundled circle");
        let moment = MomentData::from_presentation(&p, &circle, &doc.level())?;
        let k = kernel_generators(&p, &moment, 4)?;
        let mut notes = Vec::new();
        let plus_ok = k.plus.generator_degrees() == vec![1, 2, 2, 2];
        notes.push(format!("K+ degrees {:?}", k.plus.generator_degrees()));
        let bs: Vec<_> = ["B1", "B2", "B3", "B4"]
            .iter()
            .map(|n| {
                let t = doc.tuple(n)?;
                let d = t.homogeneous_degree().unwrap_or(0);
                Ok((t, d))
            })
            .collect::<Result<_>>()?;
        let b_in_plus = (0..=4).all(|d| same_span(8, 2, d, &k.plus.bases[d], &generated_in_degree(2, d, &bs)));
        notes.push(format!("B1..B4 span K+ {b_in_plus}"));
        let a_minus: Vec<_> = ["A5", "A6", "A7", "A8"]
            .iter()
            .map(|n| {
                let t = doc.tuple(n)?;
                let d = t.homogeneous_degree().unwrap_or(0);
                Ok((t, d))
            })
            .collect::<Result<_>>()?;
        let minus_ok = k.minus.generator_degrees() == vec![1, 2, 2, 2]
            && (0..=4).all(|d| same_span(8, 2, d, &k.minus.bases[d], &generated_in_degree(2, d, &a_minus)));
        notes.push(format!("K- degrees {:?}, A5..A8 span K- {minus_ok}", k.minus.generator_degrees()));
        Ok((plus_ok && b_in_plus && minus_ok && k.direct, notes.join("; ")))
    });
    claim(out, "cp1_cubed.quotient", || {
        let doc = load_gkm("cp1_cubed_gkm")?;
        let p = doc.presentation()?;
        let circle = doc.circle()?.expect("bundled circle");
        let moment = MomentData::from_presentation(&p, &circle, &doc.level())?;
        let q = quotient_report(&p, &moment, 4)?;
        let ok = q.dims == vec![1, 4, 4, 4, 4] && q.generator_degrees() == vec![0, 1, 1, 1] && q.identifies_reduced_space();
        Ok((ok, format!("dims {:?}, generator degrees {:?}", q.dims, q.generator_degrees())))
    });
    claim(out, "cp1_cubed.reduced_space", || {
        let doc = load_gkm("cp1_cubed_gkm")?;
        let p = doc.presentation()?;
        let circle = doc.circle()?.expect("bundled circle");
        let moment = MomentData::from_presentation(&p, &circle, &doc.level())?;
        let q = quotient_report(&p, &moment, 6)?;
        let reduced = load_gkm("cp1_cubed_reduced_gkm")?.presentation()?.graded_dims(6);
        Ok((q.dims == reduced, format!("quotient {:?}, reduced {reduced:?}", q.dims)))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_claim_holds() {
        let results = run_examples(1);
        let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
