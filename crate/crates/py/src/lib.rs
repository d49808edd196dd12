//! Python bindings. Tuples are passed as lists of integer lists; structured
//! results come back as plain dicts and lists with exact Python integers.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use abtuple::property::{PropertyOptions, DEFAULT_BUDGET};
use abtuple::{Classification, Error, GeneratorSpec, GroupElement, GroupTuple};

create_exception!(abtuple_py, BudgetExceeded, PyRuntimeError);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn tuple_from(elements: Vec<Vec<BigInt>>) -> PyResult<GroupTuple> {
    let elements =
        elements.into_iter().map(GroupElement::new).collect::<abtuple::Result<Vec<_>>>().map_err(to_py_err)?;
    GroupTuple::new(elements).map_err(to_py_err)
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: serde::de::DeserializeOwned>(py: Python<'_>, value: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = py.import("json")?.call_method1("dumps", (value,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn options(budget: Option<u128>) -> PropertyOptions {
    PropertyOptions { budget: budget.unwrap_or(DEFAULT_BUDGET), ..Default::default() }
}

/// Rank of the subgroup generated by the elements.
#[pyfunction]
fn rank(elements: Vec<Vec<BigInt>>) -> PyResult<usize> {
    Ok(tuple_from(elements)?.rank())
}

/// Canonical basis of the generated subgroup as `{"dim", "rank", "basis"}`.
#[pyfunction]
fn hnf(py: Python<'_>, elements: Vec<Vec<BigInt>>) -> PyResult<Py<PyAny>> {
    to_py(py, &tuple_from(elements)?.span())
}

#[pyfunction]
#[pyo3(signature = (elements, r, s, budget=None))]
fn has_property(
    py: Python<'_>,
    elements: Vec<Vec<BigInt>>,
    r: usize,
    s: usize,
    budget: Option<u128>,
) -> PyResult<Py<PyAny>> {
    let t = tuple_from(elements)?;
    let report = py.detach(|| abtuple::has_property_with(&t, r, s, &options(budget))).map_err(to_py_err)?;
    to_py(py, &report)
}

#[pyfunction]
fn classify(py: Python<'_>, elements: Vec<Vec<BigInt>>, s: usize) -> PyResult<Py<PyAny>> {
    let t = tuple_from(elements)?;
    to_py(py, &abtuple::classify(&t, s).map_err(to_py_err)?)
}

/// Checks a classification dict as returned by `classify`.
#[pyfunction]
fn verify(py: Python<'_>, elements: Vec<Vec<BigInt>>, certificate: &Bound<'_, PyAny>) -> PyResult<bool> {
    let t = tuple_from(elements)?;
    let c: Classification = from_py(py, certificate)?;
    Ok(abtuple::verify_classification(&t, &c))
}

#[pyfunction]
fn qbasis(py: Python<'_>, elements: Vec<Vec<BigInt>>) -> PyResult<Py<PyAny>> {
    let t = tuple_from(elements)?;
    to_py(py, &abtuple::q_basis_certificate(&t).map_err(to_py_err)?)
}

#[pyfunction]
fn adequate_basis(py: Python<'_>, elements: Vec<Vec<BigInt>>) -> PyResult<Py<PyAny>> {
    let t = tuple_from(elements)?;
    to_py(py, &abtuple::adequate_basis_decide(&t).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (elements, s, budget=None))]
fn audit(py: Python<'_>, elements: Vec<Vec<BigInt>>, s: usize, budget: Option<u128>) -> PyResult<Py<PyAny>> {
    let t = tuple_from(elements)?;
    let report = py.detach(|| abtuple::audit::audit_claims_with(&t, s, &options(budget))).map_err(to_py_err)?;
    to_py(py, &report)
}

/// Builds a tuple from a generator spec dict, e.g.
/// `{"kind": "b", "s": 3, "breakpoints": [2], "k": 1, "dim": 2}`.
#[pyfunction]
fn generate(spec: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<BigInt>>> {
    let spec: GeneratorSpec = from_py(spec.py(), spec)?;
    let t = abtuple::generate(&spec).map_err(to_py_err)?;
    Ok(t.elements().iter().map(|e| e.coords().to_vec()).collect())
}

#[pymodule]
fn abtuple_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(hnf, m)?)?;
    m.add_function(wrap_pyfunction!(has_property, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(qbasis, m)?)?;
    m.add_function(wrap_pyfunction!(adequate_basis, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
