//! Degreewise linear algebra shared by the GKM, kernel and quotient
//! computations: tuples of polynomials as coefficient vectors, incremental
//! spans, and the minimal-generator sweep.

use num_traits::Zero;

use crate::exactpoly::{monomial_basis, monomial_count, Polynomial, Rational};

/// A tuple `(f_1, ..., f_n)` of polynomials in a common ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssignmentTuple {
    pub polys: Vec<Polynomial>,
}

impl AssignmentTuple {
    pub fn new(polys: Vec<Polynomial>) -> Self {
        AssignmentTuple { polys }
    }

    pub fn zero(n: usize, nvars: usize) -> Self {
        AssignmentTuple::new(vec![Polynomial::zero(nvars); n])
    }

    pub fn constant(n: usize, nvars: usize) -> Self {
        AssignmentTuple::new(vec![Polynomial::one(nvars); n])
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(Polynomial::is_zero)
    }

    pub fn mul_poly(&self, f: &Polynomial) -> AssignmentTuple {
        AssignmentTuple::new(self.polys.iter().map(|p| p * f).collect())
    }

    pub fn add(&self, other: &AssignmentTuple) -> AssignmentTuple {
        AssignmentTuple::new(
            self.polys
                .iter()
                .zip(&other.polys)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> AssignmentTuple {
        AssignmentTuple::new(self.polys.iter().map(|p| p.scale(c)).collect())
    }

    /// The smallest total degree among the entries, if any entry is nonzero
    /// and every nonzero entry is homogeneous of that degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for p in &self.polys {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree().finite()?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Degree-`d` coordinates: the concatenated coefficient vectors of each
    /// entry on `monomial_basis(nvars, d)`.
    pub fn to_coordinates(&self, nvars: usize, d: usize) -> Vec<Rational> {
        let basis = monomial_basis(nvars, d);
        let mut out = Vec::with_capacity(self.polys.len() * basis.len());
        for p in &self.polys {
            out.extend(basis.iter().map(|m| p.coeff(m)));
        }
        out
    }

    pub fn from_coordinates(n: usize, nvars: usize, d: usize, v: &[Rational]) -> Self {
        let block = monomial_count(nvars, d);
        assert_eq!(v.len(), n * block);
        AssignmentTuple::new(
            (0..n)
                .map(|r| Polynomial::from_coefficients(nvars, d, &v[r * block..(r + 1) * block]))
                .collect(),
        )
    }

    pub fn graded_component(&self, d: u32) -> AssignmentTuple {
        AssignmentTuple::new(self.polys.iter().map(|p| p.graded_component(d)).collect())
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.polys.iter().map(|p| p.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

/// A subspace of `Q^len` built incrementally; each stored row has a pivot at
/// which every later row vanishes.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    len: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonSpan {
    pub fn new(len: usize) -> Self {
        EchelonSpan {
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, w));
        true
    }
}

/// One step of a degreewise generator sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepDegree {
    pub degree: u32,
    /// Dimension of the degree-`d` piece of the module.
    pub dim: usize,
    /// Dimension of the part already generated (plus the submodule modded out).
    pub generated_dim: usize,
    /// Dimension of the submodule modded out in this degree.
    pub base_dim: usize,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub generators: Vec<(AssignmentTuple, u32)>,
    pub degrees: Vec<SweepDegree>,
}

impl SweepResult {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }
}

/// Minimal homogeneous generators of a graded module of tuples, modulo a
/// graded submodule `base`, over the polynomial ring generated by the
/// degree-one elements `ring_forms`.
///
/// `module[d]` and `base[d]` are bases (or spanning sets) of the degree-`d`
/// pieces for `d = 0..=D`. In degree `d` the generated part is
/// `base_d + Σ_ℓ ℓ·N_{d-1}`, where `N_{d-1}` is what the sweep had spanned one
/// degree lower; new generators are the elements of `module[d]`, in order,
/// that are independent of it.
pub fn sweep_generators(
    n: usize,
    nvars: usize,
    ring_forms: &[Polynomial],
    module: &[Vec<AssignmentTuple>],
    base: Option<&[Vec<AssignmentTuple>]>,
) -> SweepResult {
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    let mut previous: Vec<AssignmentTuple> = Vec::new();
    for (d, pieces) in module.iter().enumerate() {
        let len = n * monomial_count(nvars, d);
        let mut span = EchelonSpan::new(len);
        let mut spanned: Vec<AssignmentTuple> = Vec::new();
        let mut base_dim = 0;
        if let Some(base) = base {
            for t in &base[d] {
                if span.insert(&t.to_coordinates(nvars, d)) {
                    spanned.push(t.clone());
                    base_dim += 1;
                }
            }
        }
        for l in ring_forms {
            for t in &previous {
                let prod = t.mul_poly(l);
                if span.insert(&prod.to_coordinates(nvars, d)) {
                    spanned.push(prod);
                }
            }
        }
        let generated_dim = span.dim();
        let mut dim = 0;
        let mut module_span = EchelonSpan::new(len);
        for t in pieces {
            let v = t.to_coordinates(nvars, d);
            if module_span.insert(&v) {
                dim += 1;
            }
            if span.insert(&v) {
                generators.push((t.clone(), d as u32));
                spanned.push(t.clone());
            }
        }
        degrees.push(SweepDegree {
            degree: d as u32,
            dim,
            generated_dim,
            base_dim,
        });
        previous = spanned;
    }
    SweepResult {
        generators,
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    #[test]
    fn echelon_span_tracks_rank() {
        let mut s = EchelonSpan::new(3);
        assert!(s.insert(&[int(1), int(2), int(0)]));
        assert!(s.insert(&[int(0), int(1), int(1)]));
        assert!(!s.insert(&[int(1), int(3), int(1)]));
        assert!(s.contains(&[int(2), int(5), int(1)]));
        assert!(!s.contains(&[int(0), int(0), int(1)]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn free_module_generators() {
        // S^2 over one variable: generators (1,0), (0,1) in degree 0.
        let module: Vec<Vec<AssignmentTuple>> = (0..3)
            .map(|d| {
                let u = Polynomial::var(1, 0).pow(d);
                vec![
                    AssignmentTuple::new(vec![u.clone(), Polynomial::zero(1)]),
                    AssignmentTuple::new(vec![Polynomial::zero(1), u]),
                ]
            })
            .collect();
        let r = sweep_generators(2, 1, &[Polynomial::var(1, 0)], &module, None);
        assert_eq!(r.generator_degrees(), vec![0, 0]);
        assert_eq!(r.degrees[2].generated_dim, 2);
    }

    #[test]
    fn coordinates_roundtrip() {
        let t = AssignmentTuple::new(vec![
            Polynomial::parse("u1*u2 - 3*u2^2", 2).unwrap(),
            Polynomial::parse("1/2*u1^2", 2).unwrap(),
        ]);
        let v = t.to_coordinates(2, 2);
        assert_eq!(AssignmentTuple::from_coordinates(2, 2, 2, &v), t);
        assert_eq!(t.homogeneous_degree(), Some(2));
    }
}
