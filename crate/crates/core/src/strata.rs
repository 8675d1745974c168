//! Stratified models: a finite poset of infinitesimal strata labelled by
//! isotropy subalgebras.
//!
//! `Y ⪯ Z` means `Y` lies in the closure of `Z`, so the isotropy of `Y`
//! contains that of `Z`. An assignment picks a polynomial on the isotropy of
//! every stratum, subject to `A(Z) = A(Y)|_{t_Z}` whenever `Y ⪯ Z`. The
//! degreewise linear system for these conditions is solved directly and serves
//! as an independent oracle for the GKM description.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{
    int, monomial_basis, monomial_count, Monomial, Polynomial, Rational, RationalMatrix,
};
use crate::toruslin::Subalgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: String,
    pub isotropy: Subalgebra,
}

impl Stratum {
    pub fn new(id: impl Into<String>, isotropy: Subalgebra) -> Self {
        Stratum {
            id: id.into(),
            isotropy,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedSpace {
    torus_dim: usize,
    strata: Vec<Stratum>,
    /// `leq[y][z]` iff `y ⪯ z`; reflexive and transitively closed.
    leq: Vec<Vec<bool>>,
    input_closed: bool,
}

/// Values of an assignment, aligned with the strata of its space. Each value
/// is kept as its normal form modulo the stratum's isotropy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataAssignment {
    pub values: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub lower: usize,
    pub upper: usize,
    pub residue: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentCheck {
    pub violations: Vec<RelationViolation>,
}

impl AssignmentCheck {
    pub fn is_assignment(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One degree of the Chang–Skjelbred comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageComparison {
    pub degree: usize,
    pub full_image_dim: usize,
    pub skeleton_image_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assumption2Lint {
    /// Strata with no fixed stratum in their closure.
    pub unsupported: Vec<usize>,
    /// Distinct related strata carrying the same isotropy.
    pub equal_isotropy_pairs: Vec<(usize, usize)>,
}

impl Assumption2Lint {
    pub fn is_clean(&self) -> bool {
        self.unsupported.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub fixed_count: usize,
    /// Degree-zero dimension of the algebra of the fixed subspace.
    pub fixed_components: usize,
    pub lint_clean: bool,
    /// Restriction to the fixed subspace is injective in every degree checked.
    pub injective_to_bound: bool,
    /// The extension-by-zero elements are assignments and are independent.
    pub lower_bound_holds: bool,
    pub degree_bound: usize,
}

impl RankCertificate {
    pub fn rank(&self) -> Option<usize> {
        (self.injective_to_bound && self.lower_bound_holds).then_some(self.fixed_components)
    }
}

fn embed_monomial(nvars: usize, free: &[usize], local: &Monomial) -> Monomial {
    let mut e = vec![0u32; nvars];
    for (j, &v) in free.iter().enumerate() {
        e[v] = local.exponents()[j];
    }
    Monomial::new(e)
}

impl StratifiedSpace {
    /// Builds a model from strata and generating relations `(y, z)` meaning
    /// `y ⪯ z`. The relation is closed reflexively and transitively.
    pub fn new(torus_dim: usize, strata: Vec<Stratum>, relations: &[(usize, usize)]) -> Result<Self> {
        if torus_dim == 0 {
            return Err(Error::invalid("torus_dim", "torus dimension must be positive"));
        }
        let n = strata.len();
        let mut ids = BTreeSet::new();
        for s in &strata {
            if !ids.insert(s.id.as_str()) {
                return Err(Error::invalid(
                    "unique_names",
                    format!("stratum id `{}` repeated", s.id),
                ));
            }
            if s.isotropy.ambient_dim() != torus_dim {
                return Err(Error::invalid(
                    "vector_length",
                    format!("isotropy of `{}` lives in dimension {}", s.id, s.isotropy.ambient_dim()),
                ));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(y, z) in relations {
            if y >= n || z >= n {
                return Err(Error::invalid(
                    "order_indices",
                    format!("relation ({y}, {z}) refers to a missing stratum"),
                ));
            }
            leq[y][z] = true;
        }
        let given = leq.clone();
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let input_closed = given == leq;
        for y in 0..n {
            for z in 0..n {
                if y != z && leq[y][z] && leq[z][y] {
                    return Err(Error::invalid(
                        "partial_order",
                        format!("`{}` and `{}` precede each other", strata[y].id, strata[z].id),
                    ));
                }
                if leq[y][z] && !strata[y].isotropy.contains(&strata[z].isotropy)? {
                    return Err(Error::invalid(
                        "isotropy_monotone",
                        format!(
                            "`{}` ⪯ `{}` but {} does not contain {}",
                            strata[y].id, strata[z].id, strata[y].isotropy, strata[z].isotropy
                        ),
                    ));
                }
            }
        }
        Ok(StratifiedSpace {
            torus_dim,
            strata,
            leq,
            input_closed,
        })
    }

    pub fn empty(torus_dim: usize) -> Result<Self> {
        StratifiedSpace::new(torus_dim, Vec::new(), &[])
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum_index(&self, id: &str) -> Option<usize> {
        self.strata.iter().position(|s| s.id == id)
    }

    pub fn leq(&self, y: usize, z: usize) -> bool {
        self.leq[y][z]
    }

    /// Whether the generating relations were already transitively closed.
    pub fn input_was_closed(&self) -> bool {
        self.input_closed
    }

    /// Strict relations `(y, z)` with `y ⪯ z`, `y != z`, in index order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|y| (0..n).map(move |z| (y, z)))
            .filter(|&(y, z)| y != z && self.leq[y][z])
            .collect()
    }

    /// Relations `(y, z)` with nothing strictly between them.
    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.relations()
            .into_iter()
            .filter(|&(y, z)| !(0..n).any(|w| w != y && w != z && self.leq[y][w] && self.leq[w][z]))
            .collect()
    }

    pub fn is_downward_closed(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.iter().all(|&z| (0..self.len()).all(|y| !self.leq[y][z] || set.contains(&y)))
    }

    /// The induced model on a subset of strata, listed in increasing index
    /// order (the returned vector).
    pub fn subspace(&self, subset: &[usize]) -> Result<(StratifiedSpace, Vec<usize>)> {
        let idx: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.len()) {
            return Err(Error::invalid("order_indices", format!("no stratum with index {bad}")));
        }
        let strata = idx.iter().map(|&i| self.strata[i].clone()).collect();
        let mut rel = Vec::new();
        for (a, &y) in idx.iter().enumerate() {
            for (b, &z) in idx.iter().enumerate() {
                if a != b && self.leq[y][z] {
                    rel.push((a, b));
                }
            }
        }
        Ok((StratifiedSpace::new(self.torus_dim, strata, &rel)?, idx))
    }

    pub fn fixed_strata(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.strata[i].isotropy.is_full()).collect()
    }

    /// Strata whose isotropy has codimension at most one.
    pub fn skeleton_strata(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.strata[i].isotropy.codim() <= 1)
            .collect()
    }

    pub fn fixed_and_skeleton(&self) -> Result<(StratifiedSpace, StratifiedSpace)> {
        let (fixed, _) = self.subspace(&self.fixed_strata())?;
        let (skel, _) = self.subspace(&self.skeleton_strata())?;
        Ok((fixed, skel))
    }

    fn check_values(&self, a: &StrataAssignment) -> Result<()> {
        if a.values.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: a.values.len(),
            });
        }
        for p in &a.values {
            if p.nvars() != self.torus_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.torus_dim,
                    found: p.nvars(),
                });
            }
        }
        Ok(())
    }

    /// Normalizes raw values into an assignment candidate (not checked).
    pub fn assignment(&self, values: Vec<Polynomial>) -> Result<StrataAssignment> {
        let a = StrataAssignment { values };
        self.check_values(&a)?;
        let values = a
            .values
            .iter()
            .zip(&self.strata)
            .map(|(p, s)| s.isotropy.normal_form(p))
            .collect::<Result<_>>()?;
        Ok(StrataAssignment { values })
    }

    /// Values given by stratum id; every stratum must be covered.
    pub fn assignment_by_id<'a>(
        &self,
        values: impl IntoIterator<Item = (&'a str, Polynomial)>,
    ) -> Result<StrataAssignment> {
        let mut slots: Vec<Option<Polynomial>> = vec![None; self.len()];
        for (id, p) in values {
            let i = self
                .stratum_index(id)
                .ok_or_else(|| Error::invalid("unknown_stratum", format!("no stratum `{id}`")))?;
            slots[i] = Some(p);
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::MissingStratum(self.strata[i].id.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.assignment(values)
    }

    pub fn constant_assignment(&self, c: Rational) -> StrataAssignment {
        StrataAssignment {
            values: vec![Polynomial::constant(self.torus_dim, c); self.len()],
        }
    }

    pub fn is_assignment(&self, a: &StrataAssignment) -> Result<AssignmentCheck> {
        self.check_values(a)?;
        let mut violations = Vec::new();
        for (y, z) in self.relations() {
            let diff = a.values[y].checked_sub(&a.values[z])?;
            let residue = self.strata[z].isotropy.normal_form(&diff)?;
            if !residue.is_zero() {
                violations.push(RelationViolation {
                    lower: y,
                    upper: z,
                    residue,
                });
            }
        }
        Ok(AssignmentCheck { violations })
    }

    /// Degree-`d` monomials available at each stratum, embedded in the
    /// ambient ring, and the column offset of each stratum's block.
    fn blocks(&self, d: usize) -> (Vec<Vec<Monomial>>, Vec<usize>) {
        let k = self.torus_dim;
        let mut blocks = Vec::with_capacity(self.len());
        let mut offsets = Vec::with_capacity(self.len());
        let mut off = 0;
        for s in &self.strata {
            let free = s.isotropy.free_variables();
            let monos: Vec<Monomial> = monomial_basis(free.len(), d)
                .iter()
                .map(|m| embed_monomial(k, &free, m))
                .collect();
            offsets.push(off);
            off += monos.len();
            blocks.push(monos);
        }
        offsets.push(off);
        (blocks, offsets)
    }

    /// Basis of the degree-`d` assignments.
    pub fn graded_basis_oracle(&self, d: usize) -> Vec<StrataAssignment> {
        let k = self.torus_dim;
        let (blocks, offsets) = self.blocks(d);
        let total = offsets[self.len()];
        let ambient = monomial_basis(k, d);
        let subs: Vec<RationalMatrix> = self
            .strata
            .iter()
            .map(|s| s.isotropy.normal_form_substitution())
            .collect();
        let mut m = RationalMatrix::zeros(0, total);
        for (y, z) in self.relations() {
            let images: Vec<Polynomial> = blocks[y]
                .iter()
                .map(|mono| {
                    Polynomial::monomial(k, mono.clone(), int(1))
                        .substitute_linear(&subs[z])
                        .expect("ambient arity")
                })
                .collect();
            for o in &ambient {
                let mut row = vec![Rational::default(); total];
                let mut nonzero = false;
                for (i, img) in images.iter().enumerate() {
                    let c = img.coeff(o);
                    if !num_traits::Zero::is_zero(&c) {
                        row[offsets[y] + i] = c;
                        nonzero = true;
                    }
                }
                if let Some(j) = blocks[z].iter().position(|b| b == o) {
                    row[offsets[z] + j] = int(-1);
                    nonzero = true;
                }
                if nonzero {
                    m.push_row(row).expect("row length");
                }
            }
        }
        m.nullspace_basis()
            .into_iter()
            .map(|v| StrataAssignment {
                values: (0..self.len())
                    .map(|s| {
                        Polynomial::from_terms(
                            k,
                            blocks[s]
                                .iter()
                                .cloned()
                                .zip(v[offsets[s]..offsets[s + 1]].iter().cloned()),
                        )
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn oracle_bases(&self, bound: usize) -> Vec<Vec<StrataAssignment>> {
        (0..=bound)
            .into_par_iter()
            .map(|d| self.graded_basis_oracle(d))
            .collect()
    }

    pub fn oracle_dims(&self, bound: usize) -> Vec<usize> {
        self.oracle_bases(bound).iter().map(Vec::len).collect()
    }

    /// Coordinates of a degree-`d` assignment: the ambient coefficient vector
    /// of each value, concatenated.
    pub fn coordinates(&self, a: &StrataAssignment, d: usize) -> Vec<Rational> {
        a.values.iter().flat_map(|p| p.coefficients(d)).collect()
    }

    pub fn restrict_assignment(&self, a: &StrataAssignment, subset: &[usize]) -> StrataAssignment {
        let idx: BTreeSet<usize> = subset.iter().copied().collect();
        StrataAssignment {
            values: idx.into_iter().map(|i| a.values[i].clone()).collect(),
        }
    }

    /// Glues assignments on two downward-closed subsets that agree on their
    /// intersection. `b` and `c` are aligned with the sorted subsets; the
    /// result is aligned with the sorted union, which is also returned.
    pub fn glue(
        &self,
        ysub: &[usize],
        zsub: &[usize],
        b: &StrataAssignment,
        c: &StrataAssignment,
    ) -> Result<(Vec<usize>, StrataAssignment)> {
        for (name, sub) in [("first", ysub), ("second", zsub)] {
            if !self.is_downward_closed(sub) {
                return Err(Error::invalid(
                    "downward_closed",
                    format!("the {name} subset is not closed under ⪯"),
                ));
            }
        }
        let ys: Vec<usize> = ysub.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let zs: Vec<usize> = zsub.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        for (sub, a) in [(&ys, b), (&zs, c)] {
            if a.values.len() != sub.len() {
                return Err(Error::LengthMismatch {
                    expected: sub.len(),
                    found: a.values.len(),
                });
            }
        }
        let union: Vec<usize> = ys.iter().chain(&zs).copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut values = Vec::with_capacity(union.len());
        for &s in &union {
            let from_b = ys.iter().position(|&i| i == s).map(|p| &b.values[p]);
            let from_c = zs.iter().position(|&i| i == s).map(|p| &c.values[p]);
            let h = &self.strata[s].isotropy;
            let v = match (from_b, from_c) {
                (Some(p), Some(q)) => {
                    if !h.agree(p, q)? {
                        return Err(Error::Disagreement(self.strata[s].id.clone()));
                    }
                    h.normal_form(p)?
                }
                (Some(p), None) | (None, Some(p)) => h.normal_form(p)?,
                (None, None) => unreachable!(),
            };
            values.push(v);
        }
        Ok((union, StrataAssignment { values }))
    }

    /// Checks that `map` (source index to target index) is order preserving
    /// and only grows isotropy.
    pub fn check_map(&self, target: &StratifiedSpace, map: &[usize]) -> Result<()> {
        if map.len() != self.len() {
            return Err(Error::ContractViolation(format!(
                "map has {} entries for {} strata",
                map.len(),
                self.len()
            )));
        }
        if target.torus_dim != self.torus_dim {
            return Err(Error::ContractViolation("torus dimensions differ".into()));
        }
        for (y, &fy) in map.iter().enumerate() {
            if fy >= target.len() {
                return Err(Error::ContractViolation(format!("image index {fy} out of range")));
            }
            if !target.strata[fy].isotropy.contains(&self.strata[y].isotropy)? {
                return Err(Error::ContractViolation(format!(
                    "isotropy of `{}` is not contained in that of its image `{}`",
                    self.strata[y].id, target.strata[fy].id
                )));
            }
        }
        for (y, z) in self.relations() {
            if !target.leq(map[y], map[z]) {
                return Err(Error::ContractViolation(format!(
                    "`{}` ⪯ `{}` is not preserved",
                    self.strata[y].id, self.strata[z].id
                )));
            }
        }
        Ok(())
    }

    /// `f*(A)(Y) = A(f(Y))|_{t_Y}` for a map into `target`.
    pub fn pullback(
        &self,
        target: &StratifiedSpace,
        map: &[usize],
        a: &StrataAssignment,
    ) -> Result<StrataAssignment> {
        self.check_map(target, map)?;
        target.check_values(a)?;
        let values = map
            .iter()
            .zip(&self.strata)
            .map(|(&fy, s)| s.isotropy.normal_form(&a.values[fy]))
            .collect::<Result<_>>()?;
        Ok(StrataAssignment { values })
    }

    /// Compares, degree by degree, the images of the whole algebra and of the
    /// 1-skeleton algebra in the algebra of the fixed strata.
    pub fn chang_skjelbred_check(&self, bound: usize) -> Result<Vec<ImageComparison>> {
        let fixed = self.fixed_strata();
        let skeleton = self.skeleton_strata();
        let (skel_space, skel_idx) = self.subspace(&skeleton)?;
        let fixed_in_skel: Vec<usize> = fixed
            .iter()
            .map(|f| skel_idx.iter().position(|s| s == f).expect("fixed strata lie in the skeleton"))
            .collect();
        let full_bases = self.oracle_bases(bound);
        let skel_bases = skel_space.oracle_bases(bound);
        let k = self.torus_dim;
        let mut out = Vec::new();
        for d in 0..=bound {
            let image = |basis: &[StrataAssignment], which: &[usize]| -> RationalMatrix {
                let rows: Vec<Vec<Rational>> = basis
                    .iter()
                    .map(|a| which.iter().flat_map(|&i| a.values[i].coefficients(d)).collect())
                    .collect();
                let cols = which.len() * monomial_count(k, d);
                RationalMatrix::from_rows_with_cols(rows, cols)
                    .expect("row length")
                    .rref()
                    .nonzero_rows()
            };
            let full = image(&full_bases[d], &fixed);
            let skel = image(&skel_bases[d], &fixed_in_skel);
            out.push(ImageComparison {
                degree: d,
                full_image_dim: full.rows(),
                skeleton_image_dim: skel.rows(),
                equal: full == skel,
            });
        }
        Ok(out)
    }

    /// Product of one vanishing linear form per distinct non-full isotropy.
    pub fn localization_form(&self) -> Polynomial {
        let k = self.torus_dim;
        let mut seen: Vec<&Subalgebra> = Vec::new();
        let mut f = Polynomial::one(k);
        for s in &self.strata {
            if s.isotropy.is_full() || seen.contains(&&s.isotropy) {
                continue;
            }
            seen.push(&s.isotropy);
            let form = s.isotropy.vanishing_ideal().forms()[0].to_polynomial();
            f = &f * &form;
        }
        f
    }

    /// The assignment equal to `f·A(F)` on each fixed stratum and zero
    /// elsewhere, where `f` is [`Self::localization_form`] and `fixed_values`
    /// is aligned with [`Self::fixed_strata`].
    pub fn extend_by_zero(&self, fixed_values: &StrataAssignment) -> Result<StrataAssignment> {
        let fixed = self.fixed_strata();
        if fixed_values.values.len() != fixed.len() {
            return Err(Error::LengthMismatch {
                expected: fixed.len(),
                found: fixed_values.values.len(),
            });
        }
        let f = self.localization_form();
        let mut values = vec![Polynomial::zero(self.torus_dim); self.len()];
        for (v, &i) in fixed_values.values.iter().zip(&fixed) {
            values[i] = v.checked_mul(&f)?;
        }
        self.assignment(values)
    }

    pub fn assumption2_lint(&self) -> Assumption2Lint {
        let fixed = self.fixed_strata();
        let unsupported = (0..self.len())
            .filter(|&y| !fixed.iter().any(|&f| self.leq[f][y]))
            .collect();
        let equal_isotropy_pairs = self
            .relations()
            .into_iter()
            .filter(|&(y, z)| self.strata[y].isotropy == self.strata[z].isotropy)
            .collect();
        Assumption2Lint {
            unsupported,
            equal_isotropy_pairs,
        }
    }

    /// Certifies the rank of the algebra as the number of components of the
    /// fixed subspace: restriction to it is injective up to `bound`, and the
    /// products of the localization form with its degree-zero basis extend by
    /// zero to independent assignments.
    pub fn rank_certificate(&self, bound: usize) -> Result<RankCertificate> {
        let fixed = self.fixed_strata();
        let (fixed_space, _) = self.subspace(&fixed)?;
        let k = self.torus_dim;
        let bases = self.oracle_bases(bound);
        let injective_to_bound = bases.iter().enumerate().all(|(d, basis)| {
            let rows: Vec<Vec<Rational>> = basis
                .iter()
                .map(|a| fixed.iter().flat_map(|&i| a.values[i].coefficients(d)).collect())
                .collect();
            let cols = fixed.len() * monomial_count(k, d);
            RationalMatrix::from_rows_with_cols(rows, cols).expect("row length").rank() == basis.len()
        });
        let zero_basis = fixed_space.graded_basis_oracle(0);
        let f = self.localization_form();
        let e = f.degree().finite().unwrap_or(0) as usize;
        let mut lower_bound_holds = true;
        let mut rows = Vec::new();
        for b in &zero_basis {
            let ext = self.extend_by_zero(b)?;
            if !self.is_assignment(&ext)?.is_assignment() {
                lower_bound_holds = false;
            }
            rows.push(self.coordinates(&ext, e));
        }
        let cols = self.len() * monomial_count(k, e);
        if RationalMatrix::from_rows_with_cols(rows, cols)?.rank() != zero_basis.len() {
            lower_bound_holds = false;
        }
        Ok(RankCertificate {
            fixed_count: fixed.len(),
            fixed_components: zero_basis.len(),
            lint_clean: self.assumption2_lint().is_clean(),
            injective_to_bound,
            lower_bound_holds,
            degree_bound: bound,
        })
    }

    /// The quotient model by a one-dimensional subalgebra acting locally
    /// freely, with the transport of assignments.
    pub fn quotient_by_circle(&self, q: &Subalgebra) -> Result<CircleQuotient> {
        if q.ambient_dim() != self.torus_dim {
            return Err(Error::DimensionMismatch {
                expected: self.torus_dim,
                found: q.ambient_dim(),
            });
        }
        if q.dim() != 1 {
            return Err(Error::CircleDimension(q.dim()));
        }
        if self.torus_dim < 2 {
            // The quotient torus would be trivial; the polynomial model
            // needs at least one coordinate.
            return Err(Error::invalid(
                "torus_dim",
                "quotient by a circle needs a torus of dimension at least 2",
            ));
        }
        for s in &self.strata {
            if s.isotropy.contains(q)? {
                return Err(Error::NotLocallyFree(s.id.clone()));
            }
        }
        let v = q.basis_vectors().remove(0);
        let pivot = v
            .iter()
            .position(|x| !num_traits::Zero::is_zero(x))
            .expect("nonzero spanning vector");
        let k = self.torus_dim;
        // pi: t -> t/q in the coordinates j != pivot
        let mut pi = RationalMatrix::zeros(k - 1, k);
        for (r, j) in (0..k).filter(|&j| j != pivot).enumerate() {
            pi[(r, j)] = int(1);
            pi[(r, pivot)] = -v[j].clone();
        }
        let mut strata = Vec::with_capacity(self.len());
        let mut lifts = Vec::with_capacity(self.len());
        for s in &self.strata {
            let basis = s.isotropy.basis_vectors();
            let images: Vec<Vec<Rational>> = basis
                .iter()
                .map(|b| pi.mul_vec(b).expect("length"))
                .collect();
            let image = Subalgebra::from_span(k - 1, &images)?;
            lifts.push(section_on_image(k, &images, &basis));
            strata.push(Stratum::new(s.id.clone(), image));
        }
        let mut rel = Vec::new();
        for (y, z) in self.relations() {
            rel.push((y, z));
        }
        let space = StratifiedSpace::new(k - 1, strata, &rel)?;
        Ok(CircleQuotient {
            upstairs: self.clone(),
            space,
            projection: pi,
            lifts,
        })
    }
}

/// A linear map `L: R^{k-1} -> R^k` with `L(images[i]) = basis[i]`, zero on a
/// complement of the span of `images` chosen from standard basis vectors.
fn section_on_image(k: usize, images: &[Vec<Rational>], basis: &[Vec<Rational>]) -> RationalMatrix {
    let m = k - 1;
    let mut domain: Vec<Vec<Rational>> = images.to_vec();
    let mut targets: Vec<Vec<Rational>> = basis.to_vec();
    for e in 0..m {
        let mut unit = vec![Rational::default(); m];
        unit[e] = int(1);
        let mut trial = domain.clone();
        trial.push(unit.clone());
        if RationalMatrix::from_rows_with_cols(trial, m).expect("length").rank() > domain.len() {
            domain.push(unit);
            targets.push(vec![Rational::default(); k]);
        }
    }
    // Columns of D are the domain vectors, columns of B the targets: L = B·D⁻¹.
    let d = RationalMatrix::from_rows_with_cols(domain, m).expect("length").transpose();
    let b = RationalMatrix::from_rows_with_cols(targets, k).expect("length").transpose();
    let dinv = d.inverse().expect("completed basis");
    b.mul(&dinv).expect("shapes")
}

/// A quotient model together with the maps between the two assignment
/// algebras.
#[derive(Clone, Debug)]
pub struct CircleQuotient {
    upstairs: StratifiedSpace,
    pub space: StratifiedSpace,
    /// The projection onto the quotient coordinates, `(k-1) × k`.
    pub projection: RationalMatrix,
    lifts: Vec<RationalMatrix>,
}

impl CircleQuotient {
    /// Transports an upstairs assignment to the quotient model.
    pub fn transport(&self, a: &StrataAssignment) -> Result<StrataAssignment> {
        self.upstairs.check_values(a)?;
        let values = a
            .values
            .iter()
            .zip(&self.lifts)
            .zip(self.space.strata())
            .map(|((p, l), s)| s.isotropy.normal_form(&p.substitute_linear(l)?))
            .collect::<Result<_>>()?;
        Ok(StrataAssignment { values })
    }

    /// Inverse of [`Self::transport`].
    pub fn lift(&self, a: &StrataAssignment) -> Result<StrataAssignment> {
        self.space.check_values(a)?;
        let values = a
            .values
            .iter()
            .zip(self.upstairs.strata())
            .map(|(p, s)| s.isotropy.normal_form(&p.substitute_linear(&self.projection)?))
            .collect::<Result<_>>()?;
        Ok(StrataAssignment { values })
    }
}
