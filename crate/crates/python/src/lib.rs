//! Python bindings: instances, decomposition, verification and the power/complete constructions.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use pathdecomp::cayley::{random_matching, GrGraph};
use pathdecomp::engine::classify::classify_trail;
use pathdecomp::engine::{decompose, EngineError};
use pathdecomp::graph::{Decomposition, Graph, Trail, Vertex};
use pathdecomp::group::{Group, ScgPair};
use pathdecomp::io::{format_instance, parse_instance, Instance};
use pathdecomp::power::{decompose_complete, decompose_power_cycle, PowerCycleInstance};
use pathdecomp::verify::verify_decomposition;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_group(spec: &str) -> PyResult<Group> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| value_err(format!("bad group `{spec}`")))?;
    let nums: Vec<usize> = rest.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(value_err)?;
    match (kind, nums.as_slice()) {
        ("cyclic", [n]) => Group::cyclic(*n).map_err(value_err),
        ("product", ms) => Group::product(ms).map_err(value_err),
        _ => Err(value_err(format!("bad group `{spec}`"))),
    }
}

fn to_paths(d: &Decomposition) -> Vec<Vec<Vertex>> {
    d.trails.iter().map(|t| t.vertices().to_vec()).collect()
}

/// A `{g,r}`-graph: a Cayley graph on `{g, -g, r, -r}` plus a perfect matching.
#[pyclass(name = "GrGraph", frozen)]
struct PyGrGraph {
    inner: GrGraph,
}

#[pymethods]
impl PyGrGraph {
    /// `group` is `cyclic:N` or `product:M1,M2,...`; elements are integers or `a,b` tuples.
    #[staticmethod]
    #[pyo3(signature = (group, g, r, seed=0))]
    fn generate(group: &str, g: &str, r: &str, seed: u64) -> PyResult<Self> {
        let grp = parse_group(group)?;
        let pair = ScgPair::validate(&grp, grp.parse_element(g).map_err(value_err)?, grp.parse_element(r).map_err(value_err)?)
            .map_err(value_err)?;
        let m = random_matching(&grp, pair, seed).map_err(value_err)?;
        Ok(PyGrGraph { inner: GrGraph::assemble(grp, pair, m).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        match parse_instance(text).map_err(value_err)? {
            Instance::Gr(gg) => Ok(PyGrGraph { inner: gg }),
            Instance::Power(_) => Err(value_err("power instance; use decompose_power_cycle")),
        }
    }

    fn to_text(&self) -> String {
        format_instance(&Instance::Gr(self.inner.clone()))
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn matching(&self) -> Vec<(Vertex, Vertex)> {
        self.inner.matching.pairs().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.inner.graph.edges()
    }

    /// `(sum_doubles_zero, diff_doubles_zero, r_is_double_g)`
    #[getter]
    fn flags(&self) -> (bool, bool, bool) {
        let p = self.inner.pair;
        (p.sum_doubles_zero, p.diff_doubles_zero, p.r_is_double_g)
    }

    /// Tag of a 6-vertex trail: `A`, `B`, `C`, `D`, `path` or `invalid`.
    fn classify(&self, trail: Vec<Vertex>) -> String {
        classify_trail(&self.inner, &trail).tag.to_string()
    }

    /// Returns `(paths, route, trace)` with trace rows `(step, rule, tau_before, tau_after, touched)`.
    #[allow(clippy::type_complexity)]
    fn decompose(&self) -> PyResult<(Vec<Vec<Vertex>>, String, Vec<(usize, String, usize, usize, Vec<usize>)>)> {
        let out = decompose(&self.inner).map_err(|e: EngineError| PyRuntimeError::new_err(e.to_string()))?;
        let trace = out
            .trace
            .iter()
            .map(|s| (s.step, s.rule.to_string(), s.tau_before, s.tau_after, s.touched.clone()))
            .collect();
        Ok((to_paths(&out.decomposition), out.route.to_string(), trace))
    }

    /// `(ok, report_lines)` for paths of length 5.
    #[pyo3(signature = (paths, m_centered=false))]
    fn verify(&self, paths: Vec<Vec<Vertex>>, m_centered: bool) -> (bool, Vec<String>) {
        let d = Decomposition::new(5, paths.into_iter().map(Trail::from_vertices_unchecked).collect());
        let report = verify_decomposition(&self.inner.graph, &d, 5, m_centered.then_some(&self.inner.matching));
        (report.ok(), report.to_string().lines().map(String::from).collect())
    }

    fn __repr__(&self) -> String {
        format!("GrGraph(order={}, g={}, r={})", self.inner.order(), self.inner.g(), self.inner.r())
    }
}

/// Paths of length `2k+1` for `C_n^k` plus a seeded matching at distance greater than `k`.
#[pyfunction]
#[pyo3(signature = (n, k, seed=0))]
fn power_cycle_paths(n: usize, k: usize, seed: u64) -> PyResult<Vec<Vec<Vertex>>> {
    let inst = PowerCycleInstance::random(n, k, seed).map_err(value_err)?;
    let d = decompose_power_cycle(&inst).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(to_paths(&d))
}

/// Hamilton paths of `K_{l+1}`.
#[pyfunction]
fn complete_paths(l: usize) -> PyResult<Vec<Vec<Vertex>>> {
    Ok(to_paths(&decompose_complete(l).map_err(value_err)?))
}

/// Verifies paths of length `l` against an explicit edge list on `n` vertices.
#[pyfunction]
fn verify_paths(n: usize, edges: Vec<(Vertex, Vertex)>, paths: Vec<Vec<Vertex>>, l: usize) -> PyResult<(bool, Vec<String>)> {
    let g = Graph::from_edges(n, edges).map_err(value_err)?;
    let d = Decomposition::new(l, paths.into_iter().map(Trail::from_vertices_unchecked).collect());
    let report = verify_decomposition(&g, &d, l, None);
    Ok((report.ok(), report.to_string().lines().map(String::from).collect()))
}

#[pymodule]
fn pathdecomp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrGraph>()?;
    m.add_function(wrap_pyfunction!(power_cycle_paths, m)?)?;
    m.add_function(wrap_pyfunction!(complete_paths, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paths, m)?)?;
    Ok(())
}
