//! JSON model documents.
//!
//! Every document carries a `kind` (`gkm`, `strata` or `extension`) and a
//! `torus_dim`. Rationals are written as `"num/den"` strings (plain integers
//! are accepted on input), vectors as arrays, subalgebras as `{"span": [...]}`
//! or `{"kernel": [...]}` and polynomials in the canonical text syntax.
//! Parsing normalizes rationals and polynomials, so printing a parsed
//! document and parsing it again gives the same document.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, parse_rational, LinearForm, Polynomial, Rational};
use crate::extend::ExtensionProblem;
use crate::gkm::{FixedComponent, GkmPresentation, Piece};
use crate::graded::AssignmentTuple;
use crate::strata::{StrataAssignment, StratifiedSpace, Stratum};
use crate::toruslin::Subalgebra;

/// A rational number in a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;
        impl Visitor<'_> for QVisitor {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"num/den\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(QVisitor)
    }
}

pub type Vector = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubalgebraDoc {
    Span(Vec<Vector>),
    Kernel(Vec<Vector>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moment: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moment_vector: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub g: SubalgebraDoc,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDoc {
    pub name: String,
    pub polys: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GkmDoc {
    pub torus_dim: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub generalized_pieces: bool,
    pub components: Vec<ComponentDoc>,
    #[serde(default)]
    pub pieces: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tuples: Vec<TupleDoc>,
    /// Spanning vector of the circle for the Kirwan computations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDoc {
    pub id: String,
    pub isotropy: SubalgebraDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataAssignmentDoc {
    pub name: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataDoc {
    pub torus_dim: usize,
    pub strata: Vec<StratumDoc>,
    /// Pairs `[y, z]` meaning `y ⪯ z` (`y` lies in the closure of `z`).
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assignments: Vec<StrataAssignmentDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    /// One-based indices into `forms`.
    pub indices: Vec<usize>,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub torus_dim: usize,
    pub forms: Vec<Vector>,
    #[serde(default)]
    pub constraints: Vec<ConstraintDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelDocument {
    Gkm(GkmDoc),
    Strata(StrataDoc),
    Extension(ExtensionDoc),
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn canonical_poly(s: &str, nvars: usize, context: &str) -> Result<String> {
    Polynomial::parse(s, nvars)
        .map(|p| p.to_string())
        .map_err(|e| match e {
            Error::Parse { column, message } => Error::Parse {
                column,
                message: format!("{context}: {message}"),
            },
            other => other,
        })
}

fn rationals(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

fn check_len(v: &[Q], k: usize, what: &str) -> Result<()> {
    if v.len() != k {
        return Err(Error::invalid(
            "vector_length",
            format!("{what} has length {}, expected {k}", v.len()),
        ));
    }
    Ok(())
}

impl SubalgebraDoc {
    pub fn to_subalgebra(&self, k: usize, what: &str) -> Result<Subalgebra> {
        match self {
            SubalgebraDoc::Span(rows) => {
                for r in rows {
                    check_len(r, k, what)?;
                }
                Subalgebra::from_span(k, &rows.iter().map(|r| rationals(r)).collect::<Vec<_>>())
            }
            SubalgebraDoc::Kernel(rows) => {
                for r in rows {
                    check_len(r, k, what)?;
                }
                let forms: Vec<LinearForm> = rows.iter().map(|r| LinearForm::new(rationals(r))).collect();
                Subalgebra::from_kernel(&forms, k)
            }
        }
    }

    pub fn from_subalgebra(h: &Subalgebra) -> Self {
        SubalgebraDoc::Span(
            h.basis_vectors()
                .into_iter()
                .map(|r| r.into_iter().map(Q).collect())
                .collect(),
        )
    }
}

impl ModelDocument {
    /// Parses and normalizes a document. JSON errors carry line and column.
    pub fn parse(text: &str) -> Result<ModelDocument> {
        let mut doc: ModelDocument = serde_json::from_str(text).map_err(json_error)?;
        doc.normalize()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelDocument::Gkm(_) => "gkm",
            ModelDocument::Strata(_) => "strata",
            ModelDocument::Extension(_) => "extension",
        }
    }

    pub fn torus_dim(&self) -> usize {
        match self {
            ModelDocument::Gkm(d) => d.torus_dim,
            ModelDocument::Strata(d) => d.torus_dim,
            ModelDocument::Extension(d) => d.torus_dim,
        }
    }

    fn normalize(&mut self) -> Result<()> {
        let k = self.torus_dim();
        if k == 0 {
            return Err(Error::invalid("torus_dim", "torus_dim must be positive"));
        }
        match self {
            ModelDocument::Gkm(d) => {
                for t in &mut d.tuples {
                    for (i, p) in t.polys.iter_mut().enumerate() {
                        *p = canonical_poly(p, k, &format!("tuple `{}` entry {}", t.name, i + 1))?;
                    }
                }
            }
            ModelDocument::Strata(d) => {
                for a in &mut d.assignments {
                    for (id, p) in a.values.iter_mut() {
                        *p = canonical_poly(p, k, &format!("assignment `{}` at `{id}`", a.name))?;
                    }
                }
            }
            ModelDocument::Extension(d) => {
                for (i, c) in d.constraints.iter_mut().enumerate() {
                    c.target = canonical_poly(&c.target, k, &format!("constraint {}", i + 1))?;
                }
            }
        }
        Ok(())
    }

    /// Degree bound used when none is given: the number of components for a
    /// presentation, the ambient dimension for an extension problem and the
    /// torus dimension for a stratified model.
    pub fn default_degree_bound(&self) -> u32 {
        match self {
            ModelDocument::Gkm(d) => d.components.len() as u32,
            ModelDocument::Strata(d) => d.torus_dim as u32,
            ModelDocument::Extension(d) => d.torus_dim as u32,
        }
    }

    /// Builds the model and checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelDocument::Gkm(d) => {
                d.presentation()?;
                d.tuples()?;
                d.circle()?;
            }
            ModelDocument::Strata(d) => {
                d.space()?;
                d.assignments()?;
            }
            ModelDocument::Extension(d) => {
                d.problem()?;
            }
        }
        Ok(())
    }
}

impl GkmDoc {
    pub fn presentation(&self) -> Result<GkmPresentation> {
        let k = self.torus_dim;
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            if let Some(v) = &c.moment_vector {
                check_len(v, k, &format!("moment vector of `{}`", c.name))?;
            }
            let weights = match &c.weights {
                Some(ws) => {
                    let mut out = Vec::with_capacity(ws.len());
                    for w in ws {
                        check_len(w, k, &format!("weight of `{}`", c.name))?;
                        out.push(LinearForm::new(rationals(w)));
                    }
                    Some(out)
                }
                None => None,
            };
            components.push(FixedComponent {
                name: c.name.clone(),
                moment: c.moment.as_ref().map(|q| q.0.clone()),
                moment_vector: c.moment_vector.as_ref().map(|v| rationals(v)),
                weights,
            });
        }
        let index = |name: &str| -> Result<usize> {
            self.components
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| Error::invalid("piece_members", format!("unknown component `{name}`")))
        };
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (i, p) in self.pieces.iter().enumerate() {
            let members = p.members.iter().map(|m| index(m)).collect::<Result<Vec<_>>>()?;
            pieces.push(Piece {
                g: p.g.to_subalgebra(k, &format!("piece {}", i + 1))?,
                members,
            });
        }
        GkmPresentation::new(k, components, pieces, self.generalized_pieces)
    }

    pub fn tuples(&self) -> Result<Vec<(String, AssignmentTuple)>> {
        let n = self.components.len();
        self.tuples
            .iter()
            .map(|t| {
                if t.polys.len() != n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: t.polys.len(),
                    });
                }
                let polys = t
                    .polys
                    .iter()
                    .map(|p| Polynomial::parse(p, self.torus_dim))
                    .collect::<Result<Vec<_>>>()?;
                Ok((t.name.clone(), AssignmentTuple::new(polys)))
            })
            .collect()
    }

    pub fn tuple(&self, name: &str) -> Result<AssignmentTuple> {
        self.tuples()?
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::invalid("unknown_tuple", format!("no tuple named `{name}`")))
    }

    pub fn circle(&self) -> Result<Option<Subalgebra>> {
        match &self.circle {
            None => Ok(None),
            Some(v) => {
                check_len(v, self.torus_dim, "circle")?;
                let q = Subalgebra::from_span(self.torus_dim, &[rationals(v)])?;
                if q.dim() != 1 {
                    return Err(Error::CircleDimension(q.dim()));
                }
                Ok(Some(q))
            }
        }
    }

    pub fn level(&self) -> Rational {
        self.level.as_ref().map(|q| q.0.clone()).unwrap_or_default()
    }
}

impl StrataDoc {
    pub fn space(&self) -> Result<StratifiedSpace> {
        let k = self.torus_dim;
        let strata = self
            .strata
            .iter()
            .map(|s| Ok(Stratum::new(s.id.clone(), s.isotropy.to_subalgebra(k, &format!("isotropy of `{}`", s.id))?)))
            .collect::<Result<Vec<_>>>()?;
        let index = |id: &str| -> Result<usize> {
            self.strata
                .iter()
                .position(|s| s.id == id)
                .ok_or_else(|| Error::invalid("order_indices", format!("unknown stratum `{id}`")))
        };
        let rel = self
            .order
            .iter()
            .map(|(y, z)| Ok((index(y)?, index(z)?)))
            .collect::<Result<Vec<_>>>()?;
        StratifiedSpace::new(k, strata, &rel)
    }

    pub fn assignments(&self) -> Result<Vec<(String, StrataAssignment)>> {
        let space = self.space()?;
        self.assignments
            .iter()
            .map(|a| {
                let values = a
                    .values
                    .iter()
                    .map(|(id, p)| Ok((id.as_str(), Polynomial::parse(p, self.torus_dim)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((a.name.clone(), space.assignment_by_id(values)?))
            })
            .collect()
    }
}

impl StrataDoc {
    /// A document describing `space`, listing its covering relations.
    pub fn from_space(space: &StratifiedSpace) -> Self {
        let ids: Vec<&str> = space.strata().iter().map(|s| s.id.as_str()).collect();
        StrataDoc {
            torus_dim: space.torus_dim(),
            strata: space
                .strata()
                .iter()
                .map(|s| StratumDoc {
                    id: s.id.clone(),
                    isotropy: SubalgebraDoc::from_subalgebra(&s.isotropy),
                })
                .collect(),
            order: space
                .covering_relations()
                .into_iter()
                .map(|(y, z)| (ids[y].to_string(), ids[z].to_string()))
                .collect(),
            assignments: Vec::new(),
        }
    }
}

impl ExtensionDoc {
    pub fn problem(&self) -> Result<ExtensionProblem> {
        let k = self.torus_dim;
        let mut forms = Vec::with_capacity(self.forms.len());
        for (i, f) in self.forms.iter().enumerate() {
            check_len(f, k, &format!("form {}", i + 1))?;
            forms.push(LinearForm::new(rationals(f)));
        }
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for (c, con) in self.constraints.iter().enumerate() {
            let mut idx = Vec::with_capacity(con.indices.len());
            for &i in &con.indices {
                if i == 0 || i > forms.len() {
                    return Err(Error::invalid(
                        "index_sets",
                        format!("constraint {} uses index {i}; indices run from 1 to {}", c + 1, forms.len()),
                    ));
                }
                idx.push(i - 1);
            }
            constraints.push((idx, Polynomial::parse(&con.target, k)?));
        }
        ExtensionProblem::new(k, forms, constraints)
    }
}
