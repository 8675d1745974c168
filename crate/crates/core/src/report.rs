//! Report documents for each command, rendered as text or as schema-tagged
//! JSON. Rendering depends only on the inputs, so repeated runs produce
//! identical bytes.

use serde_json::{json, Map, Value};

use crate::corpus::{run_examples, ClaimResult};
use crate::document::{GkmDoc, ModelDocument, StrataDoc};
use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, Rational};
use crate::extend::{extend_independent, extend_solve, ExtensionOutcome, ExtensionProblem};
use crate::gkm::{Freeness, GkmPresentation};
use crate::graded::AssignmentTuple;
use crate::kirwan::{check_surjectivity_hypothesis, quotient_report, MomentData, SurjectivityCheck};
use crate::strata::StratifiedSpace;
use crate::toruslin::Subalgebra;

pub const SCHEMA: &str = "assignalg.report/v1";

const GKM_DESCRIPTION: &str = "GKM description: tuples on the fixed components congruent along codimension-one isotropy";
const NOT_FREE: &str = "more minimal generators than the rank certifies that the module is not free";
const STRATA_MODEL: &str = "assignments are constant on infinitesimal strata and compatible along the closure order";
const LOCALIZATION: &str = "localization: the kernel and the cokernel of restriction to the fixed strata are torsion";
const CHANG_SKJELBRED: &str = "Chang–Skjelbred: the 1-skeleton has the same image in the fixed strata";
const KERNEL_SPLITS: &str = "kernel of the Kirwan map at a regular level is K⁺ ⊕ K⁻";
const SURJECTIVITY: &str = "Kirwan surjectivity holds when each component's weight classes are linearly independent";
const EXTENSION_LEMMA: &str = "extension lemma for subspaces cut out by independent linear forms";
const CIRCLE_QUOTIENT: &str = "a locally free circle action identifies the algebra with that of the quotient";

#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub command: String,
    pub input: Value,
    pub verdict: bool,
    pub result: Value,
    pub citations: Vec<String>,
    pub caveats: Vec<String>,
}

impl ReportDocument {
    fn new(command: &str, input: Value) -> Self {
        ReportDocument {
            command: command.to_string(),
            input,
            verdict: true,
            result: Value::Object(Map::new()),
            citations: Vec::new(),
            caveats: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        if let Value::Object(m) = &mut self.result {
            m.insert(key.to_string(), value);
        }
    }

    fn cite(&mut self, c: &str) {
        if !self.citations.iter().any(|x| x == c) {
            self.citations.push(c.to_string());
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "input": self.input,
            "verdict": self.verdict,
            "result": self.result,
            "citations": self.citations,
            "caveats": self.caveats,
        })
    }

    /// Pretty JSON followed by a newline.
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} ({SCHEMA})\n", self.command));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        render(&mut out, "result", &self.result, 0);
        if !self.citations.is_empty() {
            out.push_str("citations:\n");
            for c in &self.citations {
                out.push_str(&format!("  - {c}\n"));
            }
        }
        if !self.caveats.is_empty() {
            out.push_str("caveats:\n");
            for c in &self.caveats {
                out.push_str(&format!("  - {c}\n"));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(out, k, x, indent + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                render(out, &format!("[{}]", i + 1), x, indent + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn echo(doc: &ModelDocument) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

fn generators(gens: &[(AssignmentTuple, u32)]) -> Value {
    Value::Array(
        gens.iter()
            .map(|(t, d)| json!({ "degree": d, "tuple": t.to_text() }))
            .collect(),
    )
}

fn wrong_kind(doc: &ModelDocument, command: &str, wanted: &str) -> Error {
    Error::invalid(
        "document_kind",
        format!("`{command}` expects a {wanted} document, got {}", doc.kind()),
    )
}

fn module_section(r: &mut ReportDocument, p: &GkmPresentation, bound: u32) -> Freeness {
    let m = p.module_report(bound);
    r.set("dims", json!(m.dims));
    r.set("rank", json!(m.rank));
    r.set("freeness", json!(m.freeness.as_str()));
    r.set("generator_degrees", json!(m.generator_degrees()));
    r.set("generators", generators(&m.generators));
    r.cite(GKM_DESCRIPTION);
    if m.freeness == Freeness::NotFree {
        r.cite(NOT_FREE);
    }
    if let Some(c) = m.caveat {
        r.caveats.push(c);
    }
    m.freeness
}

fn hypothesis_value(check: &SurjectivityCheck) -> Value {
    Value::Array(
        check
            .components
            .iter()
            .map(|c| {
                let classes: Vec<String> = c.classes.iter().map(|w| w.form().to_polynomial().to_string()).collect();
                json!({ "component": c.name, "classes": classes, "rank": c.rank, "passes": c.passes })
            })
            .collect(),
    )
}

fn tuple_memberships(d: &GkmDoc, p: &GkmPresentation) -> Result<(Value, bool)> {
    let mut all = true;
    let mut rows = Vec::new();
    for (name, t) in d.tuples()? {
        let m = p.is_member(&t)?;
        all &= m.is_member();
        let violations: Vec<Value> = m
            .violations
            .iter()
            .map(|v| {
                json!({
                    "piece": v.piece + 1,
                    "components": [p.components()[v.r].name, p.components()[v.s].name],
                    "residue": v.residue.to_string(),
                })
            })
            .collect();
        rows.push(json!({ "name": name, "member": m.is_member(), "violations": violations }));
    }
    Ok((Value::Array(rows), all))
}

fn assignment_checks(d: &StrataDoc, s: &StratifiedSpace) -> Result<(Value, bool)> {
    let mut all = true;
    let mut rows = Vec::new();
    for (name, a) in d.assignments()? {
        let c = s.is_assignment(&a)?;
        all &= c.is_assignment();
        let violations: Vec<Value> = c
            .violations
            .iter()
            .map(|v| {
                json!({
                    "lower": s.strata()[v.lower].id,
                    "upper": s.strata()[v.upper].id,
                    "residue": v.residue.to_string(),
                })
            })
            .collect();
        rows.push(json!({ "name": name, "assignment": c.is_assignment(), "violations": violations }));
    }
    Ok((Value::Array(rows), all))
}

fn closure_caveat(r: &mut ReportDocument, s: &StratifiedSpace) {
    if !s.input_was_closed() {
        r.caveats
            .push("the closure order was not transitively closed in the input; its closure was used".into());
    }
}

pub fn validate(doc: &ModelDocument) -> Result<ReportDocument> {
    doc.validate()?;
    let mut r = ReportDocument::new("validate", json!({ "document": echo(doc) }));
    r.set("kind", json!(doc.kind()));
    r.set("torus_dim", json!(doc.torus_dim()));
    match doc {
        ModelDocument::Gkm(d) => {
            r.set("components", json!(d.components.len()));
            r.set("pieces", json!(d.pieces.len()));
            r.set("tuples", json!(d.tuples.len()));
        }
        ModelDocument::Strata(d) => {
            let s = d.space()?;
            r.set("strata", json!(s.len()));
            r.set("relations", json!(s.relations().len()));
            r.set("order_was_closed", json!(s.input_was_closed()));
            closure_caveat(&mut r, &s);
        }
        ModelDocument::Extension(d) => {
            r.set("forms", json!(d.forms.len()));
            r.set("constraints", json!(d.constraints.len()));
        }
    }
    Ok(r)
}

pub fn basis(doc: &ModelDocument, bound: u32) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("basis", json!({ "document": echo(doc), "degree_bound": bound }));
    match doc {
        ModelDocument::Gkm(d) => {
            let p = d.presentation()?;
            module_section(&mut r, &p, bound);
        }
        ModelDocument::Strata(d) => {
            let s = d.space()?;
            let bases = s.oracle_bases(bound as usize);
            r.set("dims", json!(bases.iter().map(Vec::len).collect::<Vec<_>>()));
            let listing: Vec<Value> = bases
                .iter()
                .enumerate()
                .map(|(deg, b)| {
                    let items: Vec<Value> = b
                        .iter()
                        .map(|a| {
                            let m: Map<String, Value> = s
                                .strata()
                                .iter()
                                .zip(&a.values)
                                .map(|(st, p)| (st.id.clone(), Value::String(p.to_string())))
                                .collect();
                            Value::Object(m)
                        })
                        .collect();
                    json!({ "degree": deg, "basis": items })
                })
                .collect();
            r.set("bases", Value::Array(listing));
            r.cite(STRATA_MODEL);
            closure_caveat(&mut r, &s);
        }
        ModelDocument::Extension(_) => return Err(wrong_kind(doc, "basis", "gkm or strata")),
    }
    Ok(r)
}

pub fn members(doc: &ModelDocument) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("members", json!({ "document": echo(doc) }));
    match doc {
        ModelDocument::Gkm(d) => {
            let p = d.presentation()?;
            let (rows, all) = tuple_memberships(d, &p)?;
            r.set("tuples", rows);
            r.verdict = all;
            r.cite(GKM_DESCRIPTION);
        }
        ModelDocument::Strata(d) => {
            let s = d.space()?;
            let (rows, all) = assignment_checks(d, &s)?;
            r.set("assignments", rows);
            r.verdict = all;
            r.cite(STRATA_MODEL);
        }
        ModelDocument::Extension(_) => return Err(wrong_kind(doc, "members", "gkm or strata")),
    }
    Ok(r)
}

/// Full report on a model. For a presentation the verdict is freeness; for a
/// stratified model it is whether every stratum has a fixed stratum in its
/// closure; for an extension problem it is feasibility.
pub fn report(doc: &ModelDocument, bound: u32) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("report", json!({ "document": echo(doc), "degree_bound": bound }));
    match doc {
        ModelDocument::Gkm(d) => {
            let p = d.presentation()?;
            let freeness = module_section(&mut r, &p, bound);
            r.verdict = freeness == Freeness::Free;
            if !d.tuples.is_empty() {
                let (rows, _) = tuple_memberships(d, &p)?;
                r.set("tuples", rows);
            }
            if p.components().iter().all(|c| c.weights.is_some()) {
                let check = check_surjectivity_hypothesis(&p)?;
                r.set("surjectivity_hypothesis", hypothesis_value(&check));
                r.cite(SURJECTIVITY);
            }
        }
        ModelDocument::Strata(d) => {
            let s = d.space()?;
            r.set("dims", json!(s.oracle_dims(bound as usize)));
            let lint = s.assumption2_lint();
            let ids = |v: &[usize]| -> Vec<String> { v.iter().map(|&i| s.strata()[i].id.clone()).collect() };
            let eq_pairs: Vec<Value> = lint
                .equal_isotropy_pairs
                .iter()
                .map(|&(y, z)| json!([s.strata()[y].id, s.strata()[z].id]))
                .collect();
            r.set(
                "fixed_support_lint",
                json!({
                    "clean": lint.is_clean(),
                    "strata_without_fixed_stratum_below": ids(&lint.unsupported),
                    "related_pairs_with_equal_isotropy": eq_pairs,
                }),
            );
            if !lint.unsupported.is_empty() {
                r.caveats.push(format!(
                    "strata {:?} have no fixed stratum in their closure; localization statements do not apply",
                    ids(&lint.unsupported)
                ));
            }
            r.verdict = lint.is_clean();
            let cert = s.rank_certificate(bound as usize)?;
            r.set(
                "rank",
                json!({
                    "fixed_strata": cert.fixed_count,
                    "fixed_components": cert.fixed_components,
                    "injective_to_bound": cert.injective_to_bound,
                    "lower_bound_holds": cert.lower_bound_holds,
                    "certified_rank": cert.rank(),
                }),
            );
            r.cite(LOCALIZATION);
            let cs: Vec<Value> = s
                .chang_skjelbred_check(bound as usize)?
                .iter()
                .map(|c| {
                    json!({
                        "degree": c.degree,
                        "full_image_dim": c.full_image_dim,
                        "skeleton_image_dim": c.skeleton_image_dim,
                        "equal": c.equal,
                    })
                })
                .collect();
            r.set("one_skeleton_images", Value::Array(cs));
            r.cite(CHANG_SKJELBRED);
            if !d.assignments.is_empty() {
                let (rows, _) = assignment_checks(d, &s)?;
                r.set("assignments", rows);
            }
            r.cite(STRATA_MODEL);
            closure_caveat(&mut r, &s);
        }
        ModelDocument::Extension(d) => {
            let prob = d.problem()?;
            extension_section(&mut r, &prob, bound)?;
        }
    }
    Ok(r)
}

fn extension_section(r: &mut ReportDocument, prob: &ExtensionProblem, bound: u32) -> Result<()> {
    let incompat: Vec<Value> = prob
        .compatibility_check()?
        .iter()
        .map(|i| json!({ "constraints": [i.first + 1, i.second + 1], "residue": i.residue.to_string() }))
        .collect();
    r.set("pairwise_compatible", json!(incompat.is_empty()));
    r.set("incompatibilities", Value::Array(incompat));
    match extend_independent(prob) {
        Ok(f) => {
            r.set("lemma_extension", json!(f.to_string()));
            r.cite(EXTENSION_LEMMA);
        }
        Err(e @ (Error::DependentForms | Error::IncompatibleTargets(..))) => {
            r.set("lemma_extension", Value::Null);
            r.caveats.push(format!("extension lemma not applicable: {e}"));
        }
        Err(e) => return Err(e),
    }
    match extend_solve(prob, bound)? {
        ExtensionOutcome::Feasible(f) => {
            r.set("solve", json!({ "feasible": true, "witness": f.to_string() }));
            r.verdict = true;
        }
        ExtensionOutcome::Infeasible { degree, pivot_row } => {
            let row: Vec<Value> = pivot_row.iter().map(q).collect();
            r.set(
                "solve",
                json!({ "feasible": false, "obstruction_degree": degree, "pivot_row": row }),
            );
            r.verdict = false;
        }
    }
    Ok(())
}

pub fn extend(doc: &ModelDocument, bound: u32) -> Result<ReportDocument> {
    let ModelDocument::Extension(d) = doc else {
        return Err(wrong_kind(doc, "extend", "extension"));
    };
    let prob = d.problem()?;
    let mut r = ReportDocument::new("extend", json!({ "document": echo(doc), "degree_bound": bound }));
    extension_section(&mut r, &prob, bound)?;
    Ok(r)
}

/// The Kirwan computation. `circle` overrides the document's circle. The
/// verdict is whether the weight hypothesis holds, so that the quotient is the
/// algebra of the reduced space.
pub fn kirwan(doc: &ModelDocument, bound: u32, circle: Option<&Subalgebra>) -> Result<ReportDocument> {
    let ModelDocument::Gkm(d) = doc else {
        return Err(wrong_kind(doc, "kirwan", "gkm"));
    };
    let p = d.presentation()?;
    let circle = match circle {
        Some(c) => c.clone(),
        None => d
            .circle()?
            .ok_or_else(|| Error::invalid("circle", "no circle given in the document or on the command line"))?,
    };
    let moment = MomentData::from_presentation(&p, &circle, &d.level())?;
    let qr = quotient_report(&p, &moment, bound)?;
    let names = |v: &[usize]| -> Vec<String> { v.iter().map(|&i| p.components()[i].name.clone()).collect() };
    let mut r = ReportDocument::new(
        "kirwan",
        json!({
            "document": echo(doc),
            "degree_bound": bound,
            "circle": circle.basis_vectors()[0].iter().map(q).collect::<Vec<_>>(),
        }),
    );
    r.set("moment_values", Value::Array(moment.values.iter().map(q).collect()));
    for (key, part) in [("k_plus", &qr.kernel.plus), ("k_minus", &qr.kernel.minus)] {
        r.set(
            key,
            json!({
                "vanishing_on": names(&part.vanishing),
                "dims": part.dims,
                "generator_degrees": part.generator_degrees(),
                "generators": generators(&part.generators),
            }),
        );
    }
    r.set("kernel_direct", json!(qr.kernel.direct));
    r.cite(KERNEL_SPLITS);
    let ring: Vec<String> = qr.subring_forms.iter().map(|f| f.to_polynomial().to_string()).collect();
    r.set(
        "quotient",
        json!({
            "subring_generators": ring,
            "dims": qr.dims,
            "generator_degrees": qr.generator_degrees(),
            "generators": generators(&qr.generators),
        }),
    );
    match &qr.hypothesis {
        Some(h) => {
            r.set("surjectivity_hypothesis", hypothesis_value(h));
            r.cite(SURJECTIVITY);
            if !h.passes() {
                r.caveats.push(
                    "the weight hypothesis fails; the quotient is A/(K⁺ ⊕ K⁻), not necessarily the algebra of the reduced space"
                        .into(),
                );
            }
        }
        None => r.caveats.push(
            "some component carries no weights; the quotient is A/(K⁺ ⊕ K⁻), not necessarily the algebra of the reduced space"
                .into(),
        ),
    }
    r.set("identifies_reduced_space", json!(qr.identifies_reduced_space()));
    r.verdict = qr.identifies_reduced_space();
    Ok(r)
}

/// The quotient model by a circle; the verdict is whether graded dimensions
/// agree up to the bound.
pub fn quotient_circle(doc: &ModelDocument, circle: &Subalgebra, bound: u32) -> Result<ReportDocument> {
    let ModelDocument::Strata(d) = doc else {
        return Err(wrong_kind(doc, "quotient-circle", "strata"));
    };
    let s = d.space()?;
    let quotient = s.quotient_by_circle(circle)?;
    let up = s.oracle_dims(bound as usize);
    let down = quotient.space.oracle_dims(bound as usize);
    let mut r = ReportDocument::new(
        "quotient-circle",
        json!({
            "document": echo(doc),
            "degree_bound": bound,
            "circle": circle.basis_vectors()[0].iter().map(q).collect::<Vec<_>>(),
        }),
    );
    let qdoc = ModelDocument::Strata(StrataDoc::from_space(&quotient.space));
    r.set("quotient_document", echo(&qdoc));
    let proj: Vec<Value> = (0..quotient.projection.rows())
        .map(|i| Value::Array(quotient.projection.row(i).iter().map(q).collect()))
        .collect();
    r.set("projection", Value::Array(proj));
    r.set("dims", json!(up));
    r.set("quotient_dims", json!(down));
    r.verdict = up == down;
    r.cite(CIRCLE_QUOTIENT);
    closure_caveat(&mut r, &s);
    Ok(r)
}

pub fn oracle_compare(gkm: &ModelDocument, strata: &ModelDocument, bound: u32) -> Result<ReportDocument> {
    let ModelDocument::Gkm(g) = gkm else {
        return Err(wrong_kind(gkm, "oracle-compare", "gkm"));
    };
    let ModelDocument::Strata(s) = strata else {
        return Err(wrong_kind(strata, "oracle-compare", "strata"));
    };
    if g.torus_dim != s.torus_dim {
        return Err(Error::invalid(
            "torus_dim",
            format!("presentation has torus dimension {}, model has {}", g.torus_dim, s.torus_dim),
        ));
    }
    let p = g.presentation()?;
    let space = s.space()?;
    let a = p.graded_dims(bound);
    let b = space.oracle_dims(bound as usize);
    let rows: Vec<Value> = a
        .iter()
        .zip(&b)
        .enumerate()
        .map(|(d, (x, y))| json!({ "degree": d, "gkm": x, "strata": y, "equal": x == y }))
        .collect();
    let mut r = ReportDocument::new(
        "oracle-compare",
        json!({ "gkm_document": echo(gkm), "strata_document": echo(strata), "degree_bound": bound }),
    );
    r.set("table", Value::Array(rows));
    r.verdict = a == b;
    r.cite(GKM_DESCRIPTION);
    r.cite(STRATA_MODEL);
    closure_caveat(&mut r, &space);
    Ok(r)
}

pub fn examples(seed: u64) -> ReportDocument {
    let results: Vec<ClaimResult> = run_examples(seed);
    let mut r = ReportDocument::new("examples", json!({ "seed": seed }));
    let rows: Vec<Value> = results
        .iter()
        .map(|c| json!({ "claim": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    r.verdict = results.iter().all(|c| c.passed);
    r.set("claims", Value::Array(rows));
    r.set("passed", json!(results.iter().filter(|c| c.passed).count()));
    r.set("total", json!(results.len()));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load;

    #[test]
    fn cp1_cubed_report_is_free() {
        let doc = load("cp1_cubed_gkm").unwrap();
        let r = report(&doc, 4).unwrap();
        assert!(r.verdict);
        assert_eq!(r.result["generator_degrees"], json!([0, 1, 1, 1, 1, 2, 2, 2]));
        assert_eq!(r.to_machine(), report(&doc, 4).unwrap().to_machine());
        assert!(r.to_text().contains("freeness: free"));
    }

    #[test]
    fn basis_rejects_extension_documents() {
        let doc = load("sphere_in_cp3_extension").unwrap();
        assert!(matches!(basis(&doc, 2), Err(Error::Invalid { invariant: "document_kind", .. })));
        let r = extend(&doc, 2).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.result["solve"]["obstruction_degree"], json!(1));
    }

    #[test]
    fn quotient_document_parses_back() {
        let doc = load("s3_strata").unwrap();
        let r = quotient_circle(&doc, &Subalgebra::from_int_span(2, &[&[1, 1]]), 4).unwrap();
        assert!(r.verdict);
        let text = serde_json::to_string(&r.result["quotient_document"]).unwrap();
        let back = ModelDocument::parse(&text).unwrap();
        assert_eq!(back.torus_dim(), 1);
    }
}
