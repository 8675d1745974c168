//! Checks shared by the property suites and the acceptance target. Each
//! returns `Err` with a description of the first failure.

use assignalg::exactpoly::{Polynomial, Rational, RationalMatrix};
use assignalg::extend::{extend_independent, extend_solve, ExtensionOutcome, ExtensionProblem};
use assignalg::random::{random_assignment, random_closed_subset, random_polynomial};
use assignalg::{Error, StrataAssignment, StratifiedSpace};
use rand::Rng;

pub type Check = Result<(), String>;

fn fail<T: std::fmt::Debug>(what: &str, detail: T) -> Check {
    Err(format!("{what}: {detail:?}"))
}

/// Restricting to two closed subsets and gluing gives back the assignment on
/// their union; a random pair glues exactly when it agrees on the overlap.
pub fn mayer_vietoris<R: Rng>(space: &StratifiedSpace, rng: &mut R) -> Check {
    let y = random_closed_subset(rng, space);
    let z = random_closed_subset(rng, space);
    let union: Vec<usize> = (0..space.len()).filter(|i| y.contains(i) || z.contains(i)).collect();
    let (u_space, u_idx) = space.subspace(&union).map_err(|e| e.to_string())?;
    let a_u = random_assignment(rng, &u_space, 2);
    let mut a = vec![Polynomial::zero(space.torus_dim()); space.len()];
    for (v, &i) in a_u.values.iter().zip(&u_idx) {
        a[i] = v.clone();
    }
    let a = StrataAssignment { values: a };
    let b = space.restrict_assignment(&a, &y);
    let c = space.restrict_assignment(&a, &z);
    let (idx, glued) = space.glue(&y, &z, &b, &c).map_err(|e| e.to_string())?;
    if idx != u_idx || glued != a_u {
        return fail("glue of restrictions differs from the original", (&idx, &u_idx));
    }
    // Independent pair.
    let (y_space, _) = space.subspace(&y).map_err(|e| e.to_string())?;
    let (z_space, _) = space.subspace(&z).map_err(|e| e.to_string())?;
    let b2 = random_assignment(rng, &y_space, 2);
    let c2 = random_assignment(rng, &z_space, 2);
    let overlap_agrees = y.iter().enumerate().all(|(pb, s)| match z.iter().position(|t| t == s) {
        Some(pc) => space.strata()[*s].isotropy.agree(&b2.values[pb], &c2.values[pc]).unwrap(),
        None => true,
    });
    match space.glue(&y, &z, &b2, &c2) {
        Ok((idx, g)) => {
            if !overlap_agrees {
                return fail("glued a disagreeing pair", &idx);
            }
            let check = u_space.is_assignment(&g).map_err(|e| e.to_string())?;
            if !check.is_assignment() {
                return fail("glued pair is not an assignment", check.violations.len());
            }
            if u_space.restrict_assignment(&g, &positions(&u_idx, &y)) != b2
                || u_space.restrict_assignment(&g, &positions(&u_idx, &z)) != c2
            {
                return fail("glued pair does not restrict back", &idx);
            }
        }
        Err(Error::Disagreement(_)) if !overlap_agrees => {}
        Err(e) => return fail("unexpected glue failure", e.to_string()),
    }
    Ok(())
}

fn positions(within: &[usize], subset: &[usize]) -> Vec<usize> {
    subset.iter().map(|s| within.iter().position(|w| w == s).unwrap()).collect()
}

/// Degree-`d` assignments vanishing on every fixed stratum.
fn vanishing_on_fixed(space: &StratifiedSpace, d: usize) -> Vec<StrataAssignment> {
    let basis = space.graded_basis_oracle(d);
    let fixed = space.fixed_strata();
    if basis.is_empty() {
        return Vec::new();
    }
    if fixed.is_empty() {
        return basis;
    }
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|a| fixed.iter().flat_map(|&i| a.values[i].coefficients(d)).collect())
        .collect();
    let cols = rows[0].len();
    let m = RationalMatrix::from_rows_with_cols(rows, cols).unwrap();
    m.transpose()
        .nullspace_basis()
        .into_iter()
        .map(|coeffs| {
            let mut values = vec![Polynomial::zero(space.torus_dim()); space.len()];
            for (a, c) in basis.iter().zip(&coeffs) {
                for (v, p) in values.iter_mut().zip(&a.values) {
                    *v = &*v + &p.scale(c);
                }
            }
            StrataAssignment { values }
        })
        .collect()
}

/// Assignments vanishing on the fixed strata are killed by the localization
/// form, checked by multiplying out.
pub fn localization(space: &StratifiedSpace, max_degree: usize) -> Check {
    let f = space.localization_form();
    for d in 0..=max_degree {
        for a in vanishing_on_fixed(space, d) {
            for (s, v) in space.strata().iter().zip(&a.values) {
                if !s.isotropy.normal_form(&(&f * v)).unwrap().is_zero() {
                    return fail("localization form does not annihilate", (&s.id, d));
                }
            }
        }
    }
    Ok(())
}

/// `f·A` extends by zero for a random assignment `A` on the fixed strata.
pub fn cokernel_torsion<R: Rng>(space: &StratifiedSpace, rng: &mut R) -> Check {
    let fixed = space.fixed_strata();
    let values = fixed
        .iter()
        .map(|_| random_polynomial(rng, space.torus_dim(), 3, 4))
        .collect();
    let ext = space.extend_by_zero(&StrataAssignment { values }).map_err(|e| e.to_string())?;
    let check = space.is_assignment(&ext).map_err(|e| e.to_string())?;
    if !check.is_assignment() {
        return fail("extension by zero is not an assignment", check.violations.len());
    }
    Ok(())
}

/// On lint-clean models the certified rank is the number of fixed strata.
/// Returns `Ok(false)` when the model is not lint clean.
pub fn rank(space: &StratifiedSpace, bound: usize) -> Result<bool, String> {
    if !space.assumption2_lint().is_clean() {
        return Ok(false);
    }
    let cert = space.rank_certificate(bound).map_err(|e| e.to_string())?;
    match cert.rank() {
        Some(r) if r == space.fixed_strata().len() => Ok(true),
        other => Err(format!("rank certificate {other:?} for {} fixed strata: {cert:?}", space.fixed_strata().len())),
    }
}

/// Runs the extension lemma on a problem built from `hidden`, checks every
/// restriction independently, and runs the degreewise solver at the hidden
/// polynomial's degree.
pub fn extension(prob: &ExtensionProblem, hidden: &Polynomial) -> Check {
    let f = extend_independent(prob).map_err(|e| e.to_string())?;
    for (c, h) in prob.constraints().iter().zip(prob.subspaces()) {
        let d = h.normal_form(&(&f - &c.target)).unwrap();
        if !d.is_zero() {
            return fail("lemma output misses a constraint", d.to_string());
        }
        if !h.agree(&f, hidden).unwrap() {
            return fail("lemma output differs from the hidden polynomial on a subspace", &c.indices);
        }
    }
    let bound = hidden.degree().finite().unwrap_or(0);
    match extend_solve(prob, bound).map_err(|e| e.to_string())? {
        ExtensionOutcome::Feasible(g) => {
            if prob.satisfied_by(&g).unwrap().is_some() {
                return fail("solver witness misses a constraint", g.to_string());
            }
        }
        ExtensionOutcome::Infeasible { degree, .. } => {
            return fail("solver reports infeasible for a solvable problem", degree);
        }
    }
    Ok(())
}
