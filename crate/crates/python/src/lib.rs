//! Python bindings. Instances travel as JSON text in the CLI's instance
//! format; structured results come back as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use helly_core::complex::{is_d_collapsible, SimplicialComplex};
use helly_core::experiment::{experiment_report, Suite, SuiteConfig};
use helly_core::generators::{gen_instance, GenSpec};
use helly_core::helly::{colorful_helly_points, helly_check, radon_partition};
use helly_core::instance::{parse_instance, serialize_instance, InstanceDoc, Strictness};
use helly_core::piercing::pierce as pierce_family;
use helly_core::{nerve as nerve_of, sweep_collapse as sweep_family, Guards};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn load(instance: &str, lenient: bool) -> PyResult<InstanceDoc> {
    let mode = if lenient {
        Strictness::Lenient
    } else {
        Strictness::Strict
    };
    parse_instance(instance, mode)
        .map(|(doc, _)| doc)
        .map_err(value_err)
}

/// Serializable value to Python objects through `json.loads`.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Canonical form of an instance document.
#[pyfunction]
#[pyo3(signature = (instance, lenient = false))]
fn canonicalize(instance: &str, lenient: bool) -> PyResult<String> {
    Ok(serialize_instance(&load(instance, lenient)?))
}

/// Facets of the nerve of the first family; vertex `i` is set `i - 1`.
#[pyfunction]
fn nerve(instance: &str) -> PyResult<Vec<Vec<i64>>> {
    let doc = load(instance, false)?;
    let k = nerve_of(&doc.instance.family(0), &Guards::from_env()).map_err(value_err)?;
    Ok(k.maximal_faces())
}

/// Sweep collapse of the nerve. Returns the sequence, or raises with the
/// failure diagnostic.
#[pyfunction]
fn sweep_collapse<'py>(py: Python<'py>, instance: &str) -> PyResult<Bound<'py, PyAny>> {
    let doc = load(instance, false)?;
    let seq = sweep_family(&doc.instance.family(0), &Guards::from_env()).map_err(value_err)?;
    to_py(py, &seq)
}

/// Backtracking `b`-collapsibility test; the witness sequence or `None`.
#[pyfunction]
fn collapse_sequence<'py>(
    py: Python<'py>,
    facets: Vec<Vec<i64>>,
    b: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let mut labels: Vec<i64> = facets.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let k = SimplicialComplex::from_facets(labels, &facets).map_err(value_err)?;
    let seq = is_d_collapsible(&k, b, &Guards::from_env()).map_err(value_err)?;
    to_py(py, &seq)
}

/// Radon partition of the points at `indices` (canonical point order).
#[pyfunction]
fn radon<'py>(py: Python<'py>, instance: &str, indices: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let doc = load(instance, false)?;
    let all = doc.instance.ground.points();
    let pts = indices
        .iter()
        .map(|&i| {
            all.get(i)
                .cloned()
                .ok_or_else(|| value_err(format!("point index {i} out of range")))
        })
        .collect::<PyResult<Vec<_>>>()?;
    let part = radon_partition(&doc.instance.ground, &pts).map_err(value_err)?;
    to_py(py, &part)
}

#[pyfunction]
#[pyo3(name = "helly", signature = (instance, m = None, k = 1))]
fn helly_test<'py>(
    py: Python<'py>,
    instance: &str,
    m: Option<usize>,
    k: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let doc = load(instance, false)?;
    let m = m.unwrap_or(2 * doc.instance.ground.d());
    let report = helly_check(&doc.instance.family(0), m, k).map_err(value_err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (instance, k = 1))]
fn colorful_helly<'py>(py: Python<'py>, instance: &str, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let doc = load(instance, false)?;
    let out = colorful_helly_points(&doc.instance.family_sets(), k).map_err(value_err)?;
    to_py(py, &out)
}

/// τ, ν, τ*, ν* (rationals as strings) with witnesses.
#[pyfunction]
fn pierce<'py>(py: Python<'py>, instance: &str) -> PyResult<Bound<'py, PyAny>> {
    let doc = load(instance, false)?;
    let r = pierce_family(&doc.instance.family(0), &Guards::from_env()).map_err(value_err)?;
    to_py(py, &r)
}

/// An instance document from a JSON `GenSpec`.
#[pyfunction]
fn generate(spec: &str) -> PyResult<String> {
    let spec: GenSpec = serde_json::from_str(spec).map_err(value_err)?;
    let inst = gen_instance(&spec).map_err(value_err)?;
    Ok(serialize_instance(&InstanceDoc::from_instance(inst)))
}

/// Experiment report without timing, as a dict.
#[pyfunction]
#[pyo3(signature = (suite, trials = None, seed = 0))]
fn experiment<'py>(
    py: Python<'py>,
    suite: &str,
    trials: Option<usize>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(value_err)?;
    let mut cfg = SuiteConfig::defaults(suite, seed);
    if let Some(t) = trials {
        cfg.trials = t;
    }
    let report = py.detach(|| experiment_report(suite, &cfg, &Guards::from_env()));
    py.import("json")?
        .call_method1("loads", (report.to_json_untimed(),))
}

/// Runs the command line with `argv` (without the program name); returns the exit code.
#[pyfunction]
fn main(argv: Vec<String>) -> i32 {
    helly_core::cli::run(std::iter::once("helly-bench".to_string()).chain(argv))
}

#[pymodule]
fn helly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(nerve, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_collapse, m)?)?;
    m.add_function(wrap_pyfunction!(collapse_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(radon, m)?)?;
    m.add_function(wrap_pyfunction!(helly_test, m)?)?;
    m.add_function(wrap_pyfunction!(colorful_helly, m)?)?;
    m.add_function(wrap_pyfunction!(pierce, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(experiment, m)?)?;
    m.add_function(wrap_pyfunction!(main, m)?)?;
    Ok(())
}
