//! Python bindings. Every function takes documents as JSON text and returns
//! the machine report as JSON text; malformed input raises `ValueError`.

use assignalg::corpus;
use assignalg::report::{self as reports, ReportDocument};
use assignalg::{Error, ModelDocument, Rational, Subalgebra};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn parse(text: &str) -> Result<ModelDocument, Error> {
    ModelDocument::parse(text)
}

fn bound(doc: &ModelDocument, degree_bound: Option<u32>) -> u32 {
    degree_bound.unwrap_or(doc.default_degree_bound())
}

/// A circle direction from its spanning vector given as rational strings.
pub fn circle(entries: &[String], torus_dim: usize) -> Result<Subalgebra, Error> {
    let v: Vec<Rational> = entries
        .iter()
        .map(|s| assignalg::exactpoly::parse_rational(s))
        .collect::<Result<_, _>>()?;
    if v.len() != torus_dim {
        return Err(Error::invalid(
            "vector_length",
            format!("circle has {} entries, the torus has dimension {torus_dim}", v.len()),
        ));
    }
    let q = Subalgebra::from_span(torus_dim, &[v])?;
    if q.dim() != 1 {
        return Err(Error::CircleDimension(q.dim()));
    }
    Ok(q)
}

/// Runs one command on JSON inputs and returns the machine report.
pub fn dispatch(
    command: &str,
    documents: &[&str],
    degree_bound: Option<u32>,
    circle_vec: Option<&[String]>,
    seed: u64,
) -> Result<String, Error> {
    let docs = documents.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?;
    let first = || {
        docs.first()
            .ok_or_else(|| Error::invalid("arguments", format!("`{command}` needs a document")))
    };
    let r: ReportDocument = match command {
        "validate" => reports::validate(first()?)?,
        "basis" => reports::basis(first()?, bound(first()?, degree_bound))?,
        "members" => reports::members(first()?)?,
        "report" => reports::report(first()?, bound(first()?, degree_bound))?,
        "extend" => reports::extend(first()?, bound(first()?, degree_bound))?,
        "kirwan" => {
            let d = first()?;
            let q = circle_vec.map(|c| circle(c, d.torus_dim())).transpose()?;
            reports::kirwan(d, bound(d, degree_bound), q.as_ref())?
        }
        "quotient-circle" => {
            let d = first()?;
            let c = circle_vec.ok_or_else(|| Error::invalid("circle", "quotient-circle needs a circle"))?;
            reports::quotient_circle(d, &circle(c, d.torus_dim())?, bound(d, degree_bound))?
        }
        "oracle-compare" => {
            if docs.len() != 2 {
                return Err(Error::invalid("arguments", "oracle-compare needs a gkm and a strata document"));
            }
            reports::oracle_compare(&docs[0], &docs[1], bound(&docs[0], degree_bound))?
        }
        "examples" => reports::examples(seed),
        other => return Err(Error::invalid("command", format!("unknown command `{other}`"))),
    };
    Ok(r.to_machine())
}

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyfunction]
fn validate(document: &str) -> PyResult<String> {
    dispatch("validate", &[document], None, None, 0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (document, degree_bound=None))]
fn basis(document: &str, degree_bound: Option<u32>) -> PyResult<String> {
    dispatch("basis", &[document], degree_bound, None, 0).map_err(py_err)
}

#[pyfunction]
fn members(document: &str) -> PyResult<String> {
    dispatch("members", &[document], None, None, 0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (document, degree_bound=None))]
fn report(document: &str, degree_bound: Option<u32>) -> PyResult<String> {
    dispatch("report", &[document], degree_bound, None, 0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (document, degree_bound=None))]
fn extend(document: &str, degree_bound: Option<u32>) -> PyResult<String> {
    dispatch("extend", &[document], degree_bound, None, 0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (document, degree_bound=None, circle=None))]
fn kirwan(document: &str, degree_bound: Option<u32>, circle: Option<Vec<String>>) -> PyResult<String> {
    dispatch("kirwan", &[document], degree_bound, circle.as_deref(), 0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (document, circle, degree_bound=None))]
fn quotient_circle(document: &str, circle: Vec<String>, degree_bound: Option<u32>) -> PyResult<String> {
    dispatch("quotient-circle", &[document], degree_bound, Some(&circle), 0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (gkm, strata, degree_bound=None))]
fn oracle_compare(gkm: &str, strata: &str, degree_bound: Option<u32>) -> PyResult<String> {
    dispatch("oracle-compare", &[gkm, strata], degree_bound, None, 0).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (seed=0))]
fn examples(seed: u64) -> PyResult<String> {
    dispatch("examples", &[], None, None, seed).map_err(py_err)
}

/// Names of the bundled example documents.
#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    corpus::DOCUMENTS.iter().map(|(n, _)| *n).collect()
}

/// JSON text of a bundled example document.
#[pyfunction]
fn corpus_document(name: &str) -> PyResult<&'static str> {
    corpus::source(name).ok_or_else(|| PyValueError::new_err(format!("no bundled document `{name}`")))
}

#[pymodule]
fn pyassignalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA", reports::SCHEMA)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(members, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(kirwan, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_circle, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_compare, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_document, m)?)?;
    Ok(())
}
