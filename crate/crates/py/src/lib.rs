//! Python module `rbx`: run checkers, constructions and the corpus from Python.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use rbx_core::checks;
use rbx_core::corpus;
use rbx_core::format::{Structure, StructureFile};
use rbx_core::{Error, ParamRing, Scalar};

create_exception!(rbx, RbxError, PyException);
create_exception!(rbx, UsageError, RbxError);
create_exception!(rbx, ParseError, RbxError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Usage(m) | Error::Format(m) => UsageError::new_err(m),
        other @ Error::Parse { .. } => ParseError::new_err(other.to_string()),
        other => RbxError::new_err(other.to_string()),
    }
}

fn load(path: &str, set: Option<&str>) -> PyResult<Structure> {
    let s = StructureFile::load(path)
        .and_then(|f| f.resolve())
        .map_err(|e| ParseError::new_err(format!("{path}: {e}")))?;
    match set {
        None => Ok(s),
        Some(set) => {
            let values = s.parse_assignments(set).map_err(to_py)?;
            s.specialize(&values).map_err(to_py)
        }
    }
}

/// The outcome of one check.
#[pyclass(frozen, get_all)]
struct Report {
    checker: String,
    verdict: bool,
    residual_at: Option<Vec<usize>>,
    text: String,
}

#[pymethods]
impl Report {
    fn __bool__(&self) -> bool {
        self.verdict
    }

    fn __repr__(&self) -> String {
        format!("Report({:?}, verdict={})", self.checker, self.verdict)
    }
}

/// Runs `checker` on the structure file at `path`. Operators and forms are
/// named in the order `checkers()` lists their roles.
#[pyfunction]
#[pyo3(signature = (checker, path, ops = vec![], forms = vec![], weights = vec![], set = None))]
fn check(
    checker: &str,
    path: &str,
    ops: Vec<String>,
    forms: Vec<String>,
    weights: Vec<String>,
    set: Option<&str>,
) -> PyResult<Report> {
    let spec = checks::checker(checker).map_err(to_py)?;
    let s = load(path, set)?;
    let w = weights.iter().map(|w| s.scalar(w)).collect::<Result<Vec<_>, _>>().map_err(to_py)?;
    let inputs = spec.inputs(&s, &ops, &forms, w).map_err(to_py)?;
    let report = checks::run_check(spec.name, &s, &inputs).map_err(to_py)?;
    Ok(Report {
        checker: spec.name.to_string(),
        verdict: report.verdict(),
        residual_at: report.first_failure().map(|(_, f)| f.at.clone()),
        text: report.render(&s.ring),
    })
}

/// Runs `construction` and writes the result to `output`. Returns its dimension.
#[pyfunction]
#[pyo3(signature = (construction, path, output, ops = vec![], forms = vec![]))]
fn construct(construction: &str, path: &str, output: &str, ops: Vec<String>, forms: Vec<String>) -> PyResult<usize> {
    let spec = checks::construction(construction).map_err(to_py)?;
    let s = load(path, None)?;
    let inputs = spec.inputs(&s, &ops, &forms, vec![]).map_err(to_py)?;
    let out = checks::run_construction(spec.name, &s, &inputs).map_err(to_py)?;
    out.to_file().save(output).map_err(to_py)?;
    Ok(out.dim)
}

/// Checker names with the roles they take: (name, ops, forms, weights).
#[pyfunction]
fn checkers() -> Vec<(String, Vec<String>, Vec<String>, Vec<String>)> {
    let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    checks::CHECKERS
        .iter()
        .map(|s| (s.name.to_string(), own(s.ops), own(s.forms), own(s.weights)))
        .collect()
}

/// `(id, checker, status)` for every corpus entry matching `filter`.
#[pyfunction]
#[pyo3(signature = (filter = "*"))]
fn verify_corpus(py: Python<'_>, filter: &str) -> PyResult<Vec<(String, String, String)>> {
    let summary = py.detach(|| corpus::verify_corpus(filter)).map_err(to_py)?;
    Ok(summary
        .outcomes
        .iter()
        .map(|o| (o.id.clone(), o.checker.clone(), o.status.as_str().to_string()))
        .collect())
}

/// The golden `ENTRY` lines for entries matching `filter`.
#[pyfunction]
#[pyo3(signature = (filter = "*"))]
fn corpus_golden(py: Python<'_>, filter: &str) -> PyResult<String> {
    py.detach(|| {
        let entries: Vec<_> = corpus::load_corpus()?
            .into_iter()
            .filter(|e| corpus::matches(filter, &e.id))
            .collect();
        Ok(corpus::verify_entries(&entries, false).golden())
    })
    .map_err(to_py)
}

/// Canonical form of a coefficient expression over `params`.
#[pyfunction]
#[pyo3(signature = (expr, params = vec![]))]
fn simplify(expr: &str, params: Vec<String>) -> PyResult<String> {
    let ring = ParamRing::new(&params).map_err(to_py)?;
    let s: Scalar = ring.parse(expr).map_err(to_py)?;
    Ok(ring.print(&s))
}

#[pymodule]
fn rbx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("RbxError", py.get_type::<RbxError>())?;
    m.add("UsageError", py.get_type::<UsageError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(checkers, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_golden, m)?)?;
    m.add_function(wrap_pyfunction!(simplify, m)?)?;
    Ok(())
}
