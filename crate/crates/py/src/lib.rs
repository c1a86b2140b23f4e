//! Python bindings: the `Graph` type plus the detector, classifier, moment,
//! oracle, and sweep entry points, driven in-process from Python.
//!
//! Report-shaped results come back as plain dicts mirroring the CLI's JSON
//! (non-finite floats become None, matching the JSON emitters).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList};

use rgg_core::classifier::{classify as classify_graph, VertexGroupSpec};
use rgg_core::detectors::analyze as analyze_graph;
use rgg_core::edgelist;
use rgg_core::gnp::GnpParams;
use rgg_core::graph::{Graph as CoreGraph, VertexSet};
use rgg_core::harness;
use rgg_core::moments::moments_report;
use rgg_core::observables::{Property, Statistic};
use rgg_core::oracle;

fn value_error<E: std::fmt::Display>(err: E) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A labeled simple graph on vertices 0..n. Immutable.
#[pyclass(name = "Graph", frozen, eq)]
#[derive(PartialEq)]
struct PyGraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyGraph {
    /// Graph(n, edges=None): build from an edge list (duplicates collapse).
    #[new]
    #[pyo3(signature = (n, edges=None))]
    fn new(n: usize, edges: Option<Vec<(usize, usize)>>) -> PyResult<Self> {
        let edges = edges.unwrap_or_default();
        let inner = CoreGraph::from_edge_list(n, &edges).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn empty(n: usize) -> Self {
        PyGraph {
            inner: CoreGraph::empty(n),
        }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph {
            inner: CoreGraph::complete(n),
        }
    }

    /// Parse the `n m` / `u v` edge-list text format.
    #[staticmethod]
    fn from_edge_list_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: edgelist::parse(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        let n = self.inner.n();
        if u >= n || v >= n {
            return Err(value_error(format!("vertex out of range for n={n}")));
        }
        Ok(self.inner.has_edge(u, v))
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check_vertex(v)?;
        Ok(self.inner.degree(v))
    }

    /// Vertices adjacent to v.
    fn link(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.inner.link(v).to_vec())
    }

    /// link(v) plus v itself.
    fn star(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.inner.star(v).to_vec())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn complement(&self) -> Self {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        self.inner
            .connected_components()
            .iter()
            .map(VertexSet::to_vec)
            .collect()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// Induced subgraph on `keep`; returns (graph, map new index -> old).
    fn induced_subgraph(&self, keep: Vec<usize>) -> PyResult<(Self, Vec<usize>)> {
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let set = VertexSet::from_members(self.inner.n(), keep);
        let (sub, map) = self.inner.induced_subgraph(&set);
        Ok((PyGraph { inner: sub }, map))
    }

    fn to_edge_list_text(&self) -> String {
        edgelist::write(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edge_count={})",
            self.inner.n(),
            self.inner.edge_count()
        )
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }
}

impl PyGraph {
    fn check_vertex(&self, v: usize) -> PyResult<()> {
        if v >= self.inner.n() {
            return Err(value_error(format!(
                "vertex {v} out of range for n={}",
                self.inner.n()
            )));
        }
        Ok(())
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().unbind().into_any(),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                i.into_pyobject(py)?.unbind().into_any()
            } else if let Some(u) = num.as_u64() {
                u.into_pyobject(py)?.unbind().into_any()
            } else {
                num.as_f64()
                    .unwrap_or(f64::NAN)
                    .into_pyobject(py)?
                    .unbind()
                    .into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.unbind().into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.unbind().into_any()
        }
    })
}

fn to_py_dict<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let json = serde_json::to_value(value).map_err(value_error)?;
    json_to_py(py, &json)
}

/// Sample one G(n, p) graph; pure in (seed, trial).
#[pyfunction]
#[pyo3(signature = (n, p, seed, trial=0))]
fn sample(n: usize, p: f64, seed: u64, trial: u64) -> PyResult<PyGraph> {
    let params = GnpParams::new(n, p, seed).map_err(value_error)?;
    Ok(PyGraph {
        inner: params.sample(trial),
    })
}

/// Probability mass of a specific labeled graph under G(n, p).
#[pyfunction]
fn graph_mass(g: &PyGraph, p: f64) -> PyResult<f64> {
    rgg_core::gnp::graph_mass(&g.inner, p).map_err(value_error)
}

#[pyfunction]
fn graph_log_mass(g: &PyGraph, p: f64) -> PyResult<f64> {
    rgg_core::gnp::graph_log_mass(&g.inner, p).map_err(value_error)
}

/// The regime quantities p·n, (1-p)·n², p(1-p)·n - 2·ln n.
#[pyfunction]
fn regime_stats(py: Python<'_>, n: usize, p: f64) -> PyResult<Py<PyAny>> {
    to_py_dict(py, &rgg_core::gnp::regime_stats(n, p))
}

/// Full detector report for a graph.
#[pyfunction]
fn analyze(py: Python<'_>, g: &PyGraph) -> PyResult<Py<PyAny>> {
    to_py_dict(py, &analyze_graph(&g.inner))
}

/// Group-product verdict for a graph and a spec ("coxeter", "artin", or a
/// comma-separated z / c<order> / fg list).
#[pyfunction]
fn classify(py: Python<'_>, g: &PyGraph, spec: &str) -> PyResult<Py<PyAny>> {
    let spec = VertexGroupSpec::parse(g.inner.n(), spec).map_err(value_error)?;
    let verdict = classify_graph(&g.inner, &spec).map_err(value_error)?;
    to_py_dict(py, &verdict)
}

/// Every closed-form moment at (n, p).
#[pyfunction]
fn moments(py: Python<'_>, n: u64, p: f64) -> PyResult<Py<PyAny>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(value_error(format!("p must be in [0, 1], got {p}")));
    }
    to_py_dict(py, &moments_report(n, p))
}

/// Exact E[statistic] over G(n, p) by exhaustive enumeration (n <= 7).
#[pyfunction]
fn exact_expectation(n: usize, p: f64, statistic: &str) -> PyResult<f64> {
    let stat: Statistic = statistic.parse().map_err(value_error)?;
    oracle::expectation_of(n, p, stat).map_err(value_error)
}

/// Exact P[property] over G(n, p) by exhaustive enumeration (n <= 7).
#[pyfunction]
fn exact_probability(n: usize, p: f64, property: &str) -> PyResult<f64> {
    let prop: Property = property.parse().map_err(value_error)?;
    oracle::probability_of(n, p, prop).map_err(value_error)
}

/// Closed-form-vs-oracle validation rows at one (n, p).
#[pyfunction]
fn oracle_check(py: Python<'_>, n: usize, p: f64) -> PyResult<Py<PyAny>> {
    let rows = oracle::closed_form_checks(n, p).map_err(value_error)?;
    to_py_dict(py, &rows)
}

/// Monte Carlo estimate of P[property] with a 95% Wilson interval.
#[pyfunction]
fn estimate_property(
    py: Python<'_>,
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    property: &str,
) -> PyResult<Py<PyAny>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(value_error(format!("p must be in [0, 1], got {p}")));
    }
    if trials == 0 {
        return Err(value_error("trials must be at least 1"));
    }
    let prop: Property = property.parse().map_err(value_error)?;
    to_py_dict(py, &harness::estimate_property(n, p, trials, seed, prop))
}

/// Empirical mean of a statistic against its exact closed form.
#[pyfunction]
fn compare_statistic(
    py: Python<'_>,
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    statistic: &str,
) -> PyResult<Py<PyAny>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(value_error(format!("p must be in [0, 1], got {p}")));
    }
    if trials == 0 {
        return Err(value_error("trials must be at least 1"));
    }
    let stat: Statistic = statistic.parse().map_err(value_error)?;
    to_py_dict(py, &harness::compare_statistic(n, p, trials, seed, stat))
}

/// Run a sweep from config text; returns CSV (format="csv") or JSON.
#[pyfunction]
#[pyo3(signature = (config_text, format="csv"))]
fn run_sweep(config_text: &str, format: &str) -> PyResult<String> {
    let config = harness::ExperimentConfig::parse(config_text).map_err(value_error)?;
    let summary = harness::run_sweep(&config);
    match format {
        "csv" => Ok(summary.to_csv()),
        "json" => Ok(summary.to_json()),
        other => Err(value_error(format!("format must be csv or json, got {other:?}"))),
    }
}

#[pymodule]
fn rgg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(graph_mass, m)?)?;
    m.add_function(wrap_pyfunction!(graph_log_mass, m)?)?;
    m.add_function(wrap_pyfunction!(regime_stats, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(exact_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(exact_probability, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_property, m)?)?;
    m.add_function(wrap_pyfunction!(compare_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
