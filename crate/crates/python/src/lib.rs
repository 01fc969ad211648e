//! Python bindings: graph types plus the counting, search and weighted
//! operations. Vertices are addressed by label, counts come back as Python
//! ints of arbitrary size.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use ccarb::graph::{ColoredMultigraph, ParsedGraph};
use ccarb::{arborescence, minweight, Arborescence, ColorConstraint, ColoredDigraph, Engine, MinWeightConfig};

type EdgeTuple = (String, String, u32, Option<u64>);

/// `(tail, head, color)` or `(tail, head, color, weight)`.
#[derive(FromPyObject)]
enum EdgeArg {
    Full(String, String, u32, Option<u64>),
    Plain(String, String, u32),
}

impl From<EdgeArg> for EdgeTuple {
    fn from(e: EdgeArg) -> Self {
        match e {
            EdgeArg::Full(t, h, c, w) => (t, h, c, w),
            EdgeArg::Plain(t, h, c) => (t, h, c, None),
        }
    }
}

fn py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn engine(workers: usize) -> PyResult<Engine> {
    Engine::new(workers).map_err(py_err)
}

fn labelled_edges(
    labels: &mut Vec<String>,
    edges: Vec<EdgeTuple>,
) -> Vec<(usize, usize, u32, Option<u64>)> {
    let mut index = |label: String| match labels.iter().position(|l| *l == label) {
        Some(v) => v,
        None => {
            labels.push(label);
            labels.len() - 1
        }
    };
    edges
        .into_iter()
        .map(|(t, h, c, w)| (index(t), index(h), c, w))
        .collect()
}

/// Directed q-colored multigraph.
#[pyclass(name = "Graph", module = "pyccarb", frozen)]
struct PyGraph {
    inner: ColoredDigraph,
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from `(tail, head, color[, weight])` label tuples.
    /// `vertices` fixes the vertex list; labels first seen in `edges` are
    /// appended after it.
    #[new]
    #[pyo3(signature = (q, edges, vertices = None))]
    fn new(q: usize, edges: Vec<EdgeArg>, vertices: Option<Vec<String>>) -> PyResult<Self> {
        let mut labels = vertices.unwrap_or_default();
        let edges = labelled_edges(&mut labels, edges.into_iter().map(EdgeTuple::from).collect());
        ColoredDigraph::new(labels, q, edges)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    /// Parses the graph text format; the file must be directed.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        match ccarb::parse_graph(text).map_err(py_err)? {
            ParsedGraph::Directed(inner) => Ok(Self { inner }),
            ParsedGraph::Undirected(_) => Err(py_err("expected a directed graph")),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<EdgeTuple> {
        self.inner
            .edges()
            .iter()
            .map(|e| {
                (
                    self.inner.label(e.tail).to_string(),
                    self.inner.label(e.head).to_string(),
                    e.color,
                    e.weight,
                )
            })
            .collect()
    }

    fn reverse(&self) -> Self {
        Self {
            inner: self.inner.reverse(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, q={}, edges={})",
            self.inner.n(),
            self.inner.q(),
            self.inner.edge_count()
        )
    }
}

/// Undirected q-colored multigraph.
#[pyclass(name = "UndirectedGraph", module = "pyccarb", frozen)]
struct PyUndirectedGraph {
    inner: ColoredMultigraph,
}

#[pymethods]
impl PyUndirectedGraph {
    #[new]
    #[pyo3(signature = (q, edges, vertices = None))]
    fn new(q: usize, edges: Vec<(String, String, u32)>, vertices: Option<Vec<String>>) -> PyResult<Self> {
        let mut labels = vertices.unwrap_or_default();
        let edges = labelled_edges(
            &mut labels,
            edges.into_iter().map(|(t, h, c)| (t, h, c, None)).collect(),
        );
        ColoredMultigraph::new(labels, q, edges)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        match ccarb::parse_graph(text).map_err(py_err)? {
            ParsedGraph::Undirected(inner) => Ok(Self { inner }),
            ParsedGraph::Directed(_) => Err(py_err("expected an undirected graph")),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }
}

fn root_of(g: &PyGraph, root: &str) -> PyResult<usize> {
    g.inner.vertex(root).map_err(py_err)
}

fn tree_edges(g: &ColoredDigraph, tree: &Arborescence) -> Vec<EdgeTuple> {
    tree.edges
        .iter()
        .map(|&id| {
            let e = g.edge(id).expect("tree edge");
            (g.label(e.tail).to_string(), g.label(e.head).to_string(), e.color, e.weight)
        })
        .collect()
}

/// Number of alpha-colored arborescences rooted at `root`.
#[pyfunction]
#[pyo3(signature = (graph, root, alpha, workers = 1))]
fn count(graph: &PyGraph, root: &str, alpha: Vec<u32>, workers: usize) -> PyResult<BigUint> {
    let s = root_of(graph, root)?;
    arborescence::count(&graph.inner, s, &ColorConstraint::new(alpha), &engine(workers)?).map_err(py_err)
}

/// Counts for every color constraint, as `{alpha_tuple: count}`.
#[pyfunction]
#[pyo3(signature = (graph, root, workers = 1))]
fn count_table<'py>(py: Python<'py>, graph: &PyGraph, root: &str, workers: usize) -> PyResult<Bound<'py, PyDict>> {
    let s = root_of(graph, root)?;
    let table = arborescence::count_table(&graph.inner, s, &engine(workers)?).map_err(py_err)?;
    let out = PyDict::new(py);
    for (alpha, n) in table.iter() {
        out.set_item(PyTuple::new(py, alpha.as_slice())?, n.clone())?;
    }
    Ok(out)
}

/// The determinant polynomial in canonical text form.
#[pyfunction]
#[pyo3(signature = (graph, root, workers = 1))]
fn count_polynomial(graph: &PyGraph, root: &str, workers: usize) -> PyResult<String> {
    let s = root_of(graph, root)?;
    let table = arborescence::count_table(&graph.inner, s, &engine(workers)?).map_err(py_err)?;
    Ok(table.poly().to_string())
}

#[pyfunction]
#[pyo3(signature = (graph, root, alpha, workers = 1))]
fn decide(graph: &PyGraph, root: &str, alpha: Vec<u32>, workers: usize) -> PyResult<bool> {
    let s = root_of(graph, root)?;
    arborescence::decide(&graph.inner, s, &ColorConstraint::new(alpha), &engine(workers)?).map_err(py_err)
}

/// One alpha-colored arborescence as edge tuples, or None.
#[pyfunction]
#[pyo3(signature = (graph, root, alpha, workers = 1))]
fn find(graph: &PyGraph, root: &str, alpha: Vec<u32>, workers: usize) -> PyResult<Option<Vec<EdgeTuple>>> {
    let s = root_of(graph, root)?;
    let tree = arborescence::find(&graph.inner, s, &ColorConstraint::new(alpha), &engine(workers)?)
        .map_err(py_err)?;
    Ok(tree.map(|t| tree_edges(&graph.inner, &t)))
}

#[pyfunction]
#[pyo3(signature = (graph, root, alpha, workers = 1))]
fn min_weight(graph: &PyGraph, root: &str, alpha: Vec<u32>, workers: usize) -> PyResult<Option<u64>> {
    let s = root_of(graph, root)?;
    let inst = minweight::WeightedInstance::new(&graph.inner, s, ColorConstraint::new(alpha)).map_err(py_err)?;
    minweight::min_weight(&inst, &MinWeightConfig::default(), &engine(workers)?).map_err(py_err)
}

/// `(weight, edges)` of a minimum-weight alpha-colored arborescence, or None.
#[pyfunction]
#[pyo3(signature = (graph, root, alpha, workers = 1))]
fn find_min(
    graph: &PyGraph,
    root: &str,
    alpha: Vec<u32>,
    workers: usize,
) -> PyResult<Option<(u64, Vec<EdgeTuple>)>> {
    let s = root_of(graph, root)?;
    let inst = minweight::WeightedInstance::new(&graph.inner, s, ColorConstraint::new(alpha)).map_err(py_err)?;
    let found = minweight::find_min(&inst, &MinWeightConfig::default(), &engine(workers)?).map_err(py_err)?;
    Ok(found.map(|(t, w)| (w, tree_edges(inst.graph(), &t))))
}

#[pyfunction]
#[pyo3(signature = (graph, alpha, workers = 1))]
fn count_spanning_trees(graph: &PyUndirectedGraph, alpha: Vec<u32>, workers: usize) -> PyResult<BigUint> {
    arborescence::count_spanning_trees(&graph.inner, &ColorConstraint::new(alpha), &engine(workers)?)
        .map_err(py_err)
}

/// Brute-force arborescence count, for cross-checking on small graphs.
#[pyfunction]
fn oracle_count(graph: &PyGraph, root: &str, alpha: Vec<u32>) -> PyResult<u64> {
    let s = root_of(graph, root)?;
    ccarb::oracle::oracle_count(&graph.inner, s, &ColorConstraint::new(alpha)).map_err(py_err)
}

#[pymodule]
fn pyccarb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyUndirectedGraph>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(count_table, m)?)?;
    m.add_function(wrap_pyfunction!(count_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(find, m)?)?;
    m.add_function(wrap_pyfunction!(min_weight, m)?)?;
    m.add_function(wrap_pyfunction!(find_min, m)?)?;
    m.add_function(wrap_pyfunction!(count_spanning_trees, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_count, m)?)?;
    Ok(())
}
