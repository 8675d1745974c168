//! Kernel and image of the assignment Kirwan map for a circle acting with a
//! moment map, computed on a GKM presentation.
//!
//! Moment values are normalized so the regular level is `0`. The kernel splits
//! as `K⁺ ⊕ K⁻`, where `K⁺` consists of the tuples vanishing on every
//! component with positive moment value and `K⁻` of those vanishing where it
//! is negative. The quotient `A/(K⁺ ⊕ K⁻)` is reported as a graded module
//! over the polynomial ring of the quotient torus, i.e. the subring generated
//! by the linear forms vanishing on the circle.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{monomial_count, LinearForm, Polynomial, Rational};
use crate::gkm::GkmPresentation;
use crate::graded::{sweep_generators, AssignmentTuple, EchelonSpan};
use crate::toruslin::{collinearity_classes, forms_rank, Subalgebra, WeightClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentData {
    /// `Φ(F) - level` for each component, all nonzero.
    pub values: Vec<Rational>,
    pub circle: Subalgebra,
}

impl MomentData {
    pub fn new(values: Vec<Rational>, circle: Subalgebra, names: &[String]) -> Result<Self> {
        if circle.dim() != 1 {
            return Err(Error::CircleDimension(circle.dim()));
        }
        if values.len() != names.len() {
            return Err(Error::LengthMismatch {
                expected: names.len(),
                found: values.len(),
            });
        }
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::Regularity(names[i].clone()));
        }
        Ok(MomentData { values, circle })
    }

    /// Reads the moment values off the components, translated by `level`.
    /// A scalar moment is used when present; otherwise the moment vector is
    /// paired with the circle's spanning vector (normalized to have a leading
    /// entry `1`).
    pub fn from_presentation(
        p: &GkmPresentation,
        circle: &Subalgebra,
        level: &Rational,
    ) -> Result<Self> {
        if circle.ambient_dim() != p.torus_dim() {
            return Err(Error::DimensionMismatch {
                expected: p.torus_dim(),
                found: circle.ambient_dim(),
            });
        }
        if circle.dim() != 1 {
            return Err(Error::CircleDimension(circle.dim()));
        }
        let v = circle.basis_vectors().remove(0);
        let mut values = Vec::with_capacity(p.num_components());
        for c in p.components() {
            let phi = match (&c.moment, &c.moment_vector) {
                (Some(m), _) => m.clone(),
                (None, Some(mv)) => mv.iter().zip(&v).map(|(a, b)| a * b).sum(),
                (None, None) => return Err(Error::MissingMoment(c.name.clone())),
            };
            values.push(phi - level);
        }
        let names: Vec<String> = p.components().iter().map(|c| c.name.clone()).collect();
        MomentData::new(values, circle.clone(), &names)
    }

    pub fn positive(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].is_positive()).collect()
    }

    pub fn negative(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].is_negative()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentHypothesis {
    pub name: String,
    pub classes: Vec<WeightClass>,
    pub rank: usize,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityCheck {
    pub components: Vec<ComponentHypothesis>,
}

impl SurjectivityCheck {
    pub fn passes(&self) -> bool {
        self.components.iter().all(|c| c.passes)
    }
}

/// For each component, whether representatives of the collinearity classes
/// of its weights are linearly independent.
pub fn check_surjectivity_hypothesis(p: &GkmPresentation) -> Result<SurjectivityCheck> {
    let mut components = Vec::with_capacity(p.num_components());
    for c in p.components() {
        let weights = c
            .weights
            .as_ref()
            .ok_or_else(|| Error::MissingWeights(c.name.clone()))?;
        components.push(weight_hypothesis(&c.name, weights, p.torus_dim())?);
    }
    Ok(SurjectivityCheck { components })
}

pub fn weight_hypothesis(name: &str, weights: &[LinearForm], torus_dim: usize) -> Result<ComponentHypothesis> {
    let classes = collinearity_classes(weights)?;
    let reps: Vec<LinearForm> = classes.iter().map(WeightClass::form).collect();
    let rank = forms_rank(&reps, torus_dim)?;
    Ok(ComponentHypothesis {
        name: name.to_string(),
        passes: rank == classes.len(),
        classes,
        rank,
    })
}

#[derive(Clone, Debug)]
pub struct KernelPart {
    /// Components on which every element vanishes.
    pub vanishing: Vec<usize>,
    pub dims: Vec<usize>,
    pub generators: Vec<(AssignmentTuple, u32)>,
    pub bases: Vec<Vec<AssignmentTuple>>,
}

impl KernelPart {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub plus: KernelPart,
    pub minus: KernelPart,
    /// `dim (K⁺ + K⁻)_d = dim K⁺_d + dim K⁻_d` in every degree.
    pub direct: bool,
    pub sum_dims: Vec<usize>,
}

fn kernel_part(p: &GkmPresentation, vanishing: Vec<usize>, bound: u32) -> KernelPart {
    let bases = p.constrained_bases(bound, &vanishing);
    let sweep = sweep_generators(
        p.num_components(),
        p.torus_dim(),
        &p.coordinate_forms(),
        &bases,
        None,
    );
    KernelPart {
        vanishing,
        dims: bases.iter().map(Vec::len).collect(),
        generators: sweep.generators,
        bases,
    }
}

fn span_dim(n: usize, k: usize, d: usize, parts: &[&[AssignmentTuple]]) -> usize {
    let mut span = EchelonSpan::new(n * monomial_count(k, d));
    for part in parts {
        for t in part.iter() {
            span.insert(&t.to_coordinates(k, d));
        }
    }
    span.dim()
}

pub fn kernel_generators(p: &GkmPresentation, moment: &MomentData, bound: u32) -> Result<KernelReport> {
    check_moment(p, moment)?;
    let plus = kernel_part(p, moment.positive(), bound);
    let minus = kernel_part(p, moment.negative(), bound);
    let n = p.num_components();
    let k = p.torus_dim();
    let sum_dims: Vec<usize> = (0..=bound as usize)
        .map(|d| span_dim(n, k, d, &[&plus.bases[d], &minus.bases[d]]))
        .collect();
    let direct = (0..=bound as usize).all(|d| sum_dims[d] == plus.dims[d] + minus.dims[d]);
    Ok(KernelReport {
        plus,
        minus,
        direct,
        sum_dims,
    })
}

fn check_moment(p: &GkmPresentation, moment: &MomentData) -> Result<()> {
    if moment.values.len() != p.num_components() {
        return Err(Error::LengthMismatch {
            expected: p.num_components(),
            found: moment.values.len(),
        });
    }
    if moment.circle.ambient_dim() != p.torus_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.torus_dim(),
            found: moment.circle.ambient_dim(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub degree_bound: u32,
    /// `dim A_d - dim (K⁺ ⊕ K⁻)_d`.
    pub dims: Vec<usize>,
    /// Generators over the subring, as representatives in `A`.
    pub generators: Vec<(AssignmentTuple, u32)>,
    /// Degree-one generators of the subring.
    pub subring_forms: Vec<LinearForm>,
    pub kernel: KernelReport,
    /// `None` when some component carries no weights.
    pub hypothesis: Option<SurjectivityCheck>,
}

impl QuotientReport {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }

    /// Whether the weight hypothesis holds, so the quotient is the algebra of
    /// the reduced space rather than just `A/(K⁺ ⊕ K⁻)`.
    pub fn identifies_reduced_space(&self) -> bool {
        self.hypothesis.as_ref().is_some_and(SurjectivityCheck::passes)
    }
}

pub fn quotient_report(p: &GkmPresentation, moment: &MomentData, bound: u32) -> Result<QuotientReport> {
    let kernel = kernel_generators(p, moment, bound)?;
    let bases = p.graded_bases(bound);
    let n = p.num_components();
    let k = p.torus_dim();
    let base: Vec<Vec<AssignmentTuple>> = kernel
        .plus
        .bases
        .iter()
        .zip(&kernel.minus.bases)
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    let subring_forms = moment.circle.vanishing_ideal().forms();
    let ring: Vec<Polynomial> = subring_forms.iter().map(LinearForm::to_polynomial).collect();
    let sweep = sweep_generators(n, k, &ring, &bases, Some(&base));
    let dims = bases
        .iter()
        .zip(&kernel.sum_dims)
        .map(|(a, s)| a.len() - s)
        .collect();
    let hypothesis = match check_surjectivity_hypothesis(p) {
        Ok(h) => Some(h),
        Err(Error::MissingWeights(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(QuotientReport {
        degree_bound: bound,
        dims,
        generators: sweep.generators,
        subring_forms,
        kernel,
        hypothesis,
    })
}
