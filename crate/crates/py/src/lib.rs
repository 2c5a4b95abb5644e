//! Python module `trispec`.

use std::time::Duration;

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use trispec::constructions::frobenius_decompose as decompose;
use trispec::extremal::checks;
use trispec::extremal::search::{phi_table, SearchConfig};
use trispec::format::{format_family, parse_family};
use trispec::incidence::{Coboundaries, LaplacianKind};
use trispec::verify::{self as audit, Suite, VerifyOptions};
use trispec::{Error, Triangle, TriangleFamily};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        Error::NoPositiveEigenvalue
        | Error::NotSymmetric(_)
        | Error::NoConvergence { .. }
        | Error::Numerical(_)
        | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

// Serde value to plain Python objects through the json module.
fn to_object<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A set of triangles, each a triple of distinct non-negative integers.
#[pyclass(name = "TriangleFamily", module = "trispec", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyFamily {
    inner: TriangleFamily,
}

#[pymethods]
impl PyFamily {
    #[new]
    fn new(triples: Vec<[u32; 3]>) -> PyResult<Self> {
        let inner = TriangleFamily::from_triples(&triples).map_err(to_py)?;
        Ok(PyFamily { inner })
    }

    /// Parse the plain-text format: one `a b c` per line, `#` comments.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyFamily { inner: parse_family(text).map_err(to_py)? })
    }

    /// `kn:n`, `gcb:c,b`, `frob:a,N` or `phi-lb:t`.
    #[staticmethod]
    fn construct(name: &str) -> PyResult<Self> {
        Ok(PyFamily { inner: trispec::construct(name).map_err(to_py)? })
    }

    fn to_text(&self) -> String {
        format_family(&self.inner)
    }

    fn triples(&self) -> Vec<[u32; 3]> {
        self.inner.to_triples()
    }

    fn vertices(&self) -> Vec<u32> {
        self.inner.vertices()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn disjoint_union(&self, other: &PyFamily) -> PyFamily {
        PyFamily { inner: self.inner.disjoint_union(&other.inner) }
    }

    /// Smallest positive eigenvalue of the triangle Laplacian.
    fn spectral_gap(&self) -> PyResult<f64> {
        trispec::lambda(&self.inner).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, triple: [u32; 3]) -> bool {
        Triangle::new(triple[0], triple[1], triple[2]).is_ok_and(|t| self.inner.contains(&t))
    }

    fn __repr__(&self) -> String {
        format!("TriangleFamily({:?})", self.inner.to_triples())
    }
}

#[pyfunction]
fn construct(name: &str) -> PyResult<PyFamily> {
    PyFamily::construct(name)
}

#[pyfunction]
fn spectral_gap(family: &PyFamily) -> PyResult<f64> {
    family.spectral_gap()
}

/// Dict with `lambda`, `tau`, `nullity`, `spectrum`, `lambda_min_plus_L0`,
/// `lambda_min_plus_L1_total` and `dims`.
#[pyfunction]
fn spectral_report<'py>(py: Python<'py>, family: &PyFamily) -> PyResult<Bound<'py, PyAny>> {
    let report = trispec::spectral_report(&family.inner).map_err(to_py)?;
    to_object(py, &report)
}

/// Integer matrix as a list of rows. `kind` is one of d0, d1, L0up, L1down,
/// L1up, L2down, L1total.
#[pyfunction]
fn matrix(family: &PyFamily, kind: &str) -> PyResult<Vec<Vec<i64>>> {
    let cob = Coboundaries::new(&family.inner).map_err(to_py)?;
    let m = match kind.to_ascii_lowercase().as_str() {
        "d0" => cob.delta0.matrix,
        "d1" => cob.delta1.matrix,
        other => {
            let kind: LaplacianKind = other.parse().map_err(to_py)?;
            cob.laplacian(kind).matrix
        }
    };
    Ok((0..m.rows()).map(|i| m.row(i).to_vec()).collect())
}

#[pyfunction]
fn check_overlap<'py>(py: Python<'py>, family: &PyFamily) -> PyResult<Bound<'py, PyAny>> {
    to_object(py, &checks::check_overlap(&family.inner).map_err(to_py)?)
}

/// `None` when the spectral gap is at most 2.
#[pyfunction]
fn check_counting<'py>(py: Python<'py>, family: &PyFamily) -> PyResult<Bound<'py, PyAny>> {
    to_object(py, &checks::check_counting(&family.inner).map_err(to_py)?)
}

#[pyfunction]
fn check_rigidity<'py>(py: Python<'py>, n: u32, family: &PyFamily) -> PyResult<Bound<'py, PyAny>> {
    to_object(py, &checks::check_rigidity(n, &family.inner).map_err(to_py)?)
}

#[pyfunction]
fn lambda_staircase(t: u64) -> u64 {
    checks::lambda_staircase(t)
}

/// `(m, t_low, t_high)`.
#[pyfunction]
fn forbidden_interval(n: u64) -> PyResult<(u64, u64, u64)> {
    let f = checks::forbidden_interval(n).map_err(to_py)?;
    Ok((f.m, f.t_low, f.t_high))
}

/// `(x, y, z)` with `n` the sum of the three join-family sizes.
#[pyfunction]
fn frobenius_decompose(a: u64, n: u64) -> PyResult<(u64, u64, u64)> {
    let d = decompose(a, n).map_err(to_py)?;
    Ok((d.x, d.y, d.z))
}

/// Exact `φ(t)`: dict with `t`, `phi`, `witness`, `exhaustive`, `partition`.
#[pyfunction]
#[pyo3(signature = (t, max_vertices=None, prune=true, budget_seconds=None))]
fn phi<'py>(
    py: Python<'py>,
    t: usize,
    max_vertices: Option<usize>,
    prune: bool,
    budget_seconds: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let budget = budget_seconds
        .map(|s| Duration::try_from_secs_f64(s).map_err(|e| PyValueError::new_err(e.to_string())))
        .transpose()?;
    let config = SearchConfig { max_vertices, budget, prune, checkpoint: None };
    let table = py.detach(|| phi_table(t, &config)).map_err(to_py)?;
    to_object(py, table.get(t).expect("entry for t"))
}

/// List of per-check dicts for one suite, or every suite with `"all"`.
#[pyfunction]
#[pyo3(signature = (suite, random=50, seed=0))]
fn verify<'py>(py: Python<'py>, suite: &str, random: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let opts = VerifyOptions { random, seed, ..Default::default() };
    let results = if suite.eq_ignore_ascii_case("all") {
        py.detach(|| audit::run_all(&opts))
    } else {
        let s: Suite = suite.parse().map_err(to_py)?;
        py.detach(|| audit::run(s, &opts))
    }
    .map_err(to_py)?;
    to_object(py, &results)
}

/// Adds the classes and functions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_gap, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_report, m)?)?;
    m.add_function(wrap_pyfunction!(matrix, m)?)?;
    m.add_function(wrap_pyfunction!(check_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(check_counting, m)?)?;
    m.add_function(wrap_pyfunction!(check_rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_staircase, m)?)?;
    m.add_function(wrap_pyfunction!(forbidden_interval, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

#[pymodule]
#[pyo3(name = "trispec")]
fn trispec_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
