//! Python bindings: thin wrappers over the core types and operations.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use quiver_crystals::cartan::{partition_of_weight, weyl_dim, RootDatum, Weight};
use quiver_crystals::error::Error;
use quiver_crystals::graph::CrystalGraph;
use quiver_crystals::multiseg::Multisegment as CoreMultisegment;
use quiver_crystals::rng::Genericity;
use quiver_crystals::tableau::Tableau as CoreTableau;
use quiver_crystals::{binf, blambda, bridge, tableau};

fn err(e: Error) -> PyErr {
    match e {
        Error::Domain(msg) => PyValueError::new_err(msg),
        Error::Internal(msg) => PyRuntimeError::new_err(msg),
    }
}

fn weight(hw: Vec<i64>) -> Weight {
    Weight { coords: hw }
}

/// A multiset of segments labeling one irreducible component.
#[pyclass(name = "Multisegment")]
#[derive(Clone)]
struct PyMultisegment {
    inner: CoreMultisegment,
    gen: Genericity,
}

#[pymethods]
impl PyMultisegment {
    #[new]
    #[pyo3(signature = (n, segments, seed=1))]
    fn new(n: usize, segments: Vec<(usize, usize)>, seed: u64) -> PyResult<Self> {
        let inner = CoreMultisegment::from_pairs(n, &segments).map_err(err)?;
        Ok(PyMultisegment {
            inner,
            gen: Genericity::new(seed),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn segments(&self) -> Vec<(usize, usize)> {
        self.inner
            .segments()
            .iter()
            .map(|s| (s.start, s.end))
            .collect()
    }

    fn dimvec(&self) -> Vec<usize> {
        self.inner.dimvec()
    }

    /// Generic cokernel dimension at a vertex (sampled geometric value).
    fn epsilon(&self, i: usize) -> usize {
        binf::epsilon_component(&self.inner, i, &self.gen)
    }

    /// Fast lowering operator.
    fn f(&self, i: usize) -> PyMultisegment {
        PyMultisegment {
            inner: binf::f_fast(&self.inner, i),
            gen: self.gen.clone(),
        }
    }

    /// Fast raising operator; None at the top of the i-string.
    fn e(&self, i: usize) -> Option<PyMultisegment> {
        binf::e_fast(&self.inner, i).map(|inner| PyMultisegment {
            inner,
            gen: self.gen.clone(),
        })
    }

    /// Geometric lowering operator (stratum correspondence).
    fn f_geometric(&self, i: usize) -> PyResult<PyMultisegment> {
        let inner = binf::f_geometric(&self.inner, i, &self.gen).map_err(err)?;
        Ok(PyMultisegment {
            inner,
            gen: self.gen.clone(),
        })
    }

    fn e_geometric(&self, i: usize) -> PyResult<Option<PyMultisegment>> {
        let out = binf::e_geometric(&self.inner, i, &self.gen).map_err(err)?;
        Ok(out.map(|inner| PyMultisegment {
            inner,
            gen: self.gen.clone(),
        }))
    }

    /// Does a generic framed point on this component satisfy stability?
    fn is_stable(&self, wdims: Vec<usize>) -> PyResult<bool> {
        blambda::is_stable_component(&self.inner, &wdims, &self.gen).map_err(err)
    }

    fn staircase(&self, r: usize) -> bool {
        blambda::staircase_check(&self.inner, r)
    }

    /// The semistandard tableau matched to this component for the given
    /// framing.
    fn to_tableau(&self, wdims: Vec<usize>) -> PyResult<PyTableau> {
        let t = bridge::multisegment_to_tableau(&self.inner, &wdims).map_err(err)?;
        Ok(PyTableau { inner: t })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).unwrap()
    }

    fn __repr__(&self) -> String {
        format!("Multisegment({})", self.inner)
    }

    fn __eq__(&self, other: &PyMultisegment) -> bool {
        self.inner == other.inner
    }
}

/// A semistandard Young tableau.
#[pyclass(name = "Tableau")]
#[derive(Clone)]
struct PyTableau {
    inner: CoreTableau,
}

#[pymethods]
impl PyTableau {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyTableau {
            inner: CoreTableau::new(rows).map_err(err)?,
        })
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner.rows().to_vec()
    }

    fn shape(&self) -> Vec<usize> {
        self.inner.shape()
    }

    fn weight(&self, n: usize) -> Vec<i64> {
        tableau::weight_tab(&self.inner, n).coords
    }

    fn f(&self, i: usize) -> Option<PyTableau> {
        tableau::f_tab(&self.inner, i).map(|inner| PyTableau { inner })
    }

    fn e(&self, i: usize) -> Option<PyTableau> {
        tableau::e_tab(&self.inner, i).map(|inner| PyTableau { inner })
    }

    fn epsilon(&self, i: usize) -> usize {
        tableau::eps_tab(&self.inner, i)
    }

    fn phi(&self, i: usize) -> usize {
        tableau::phi_tab(&self.inner, i)
    }

    /// The multisegment this tableau names: entry j in row i gives [i, j-1].
    #[pyo3(signature = (n, seed=1))]
    fn to_multisegment(&self, n: usize, seed: u64) -> PyResult<PyMultisegment> {
        let m = bridge::tableau_to_multisegment(&self.inner, n).map_err(err)?;
        Ok(PyMultisegment {
            inner: m,
            gen: Genericity::new(seed),
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).unwrap()
    }

    fn __repr__(&self) -> String {
        format!("Tableau{}", self.inner)
    }

    fn __eq__(&self, other: &PyTableau) -> bool {
        self.inner == other.inner
    }
}

/// A rooted edge-colored crystal graph with node decorations.
#[pyclass(name = "Crystal")]
struct PyCrystal {
    inner: CrystalGraph,
}

#[pymethods]
impl PyCrystal {
    fn node_count(&self) -> usize {
        self.inner.nodes.len()
    }

    fn edge_count(&self) -> usize {
        self.inner.edges.len()
    }

    fn nodes(&self) -> Vec<String> {
        self.inner.nodes.iter().map(|n| n.id.clone()).collect()
    }

    fn edges(&self) -> Vec<(String, usize, String)> {
        self.inner
            .edges
            .iter()
            .map(|e| {
                (
                    self.inner.nodes[e.src].id.clone(),
                    e.color,
                    self.inner.nodes[e.dst].id.clone(),
                )
            })
            .collect()
    }

    fn root(&self) -> String {
        self.inner.nodes[self.inner.root].id.clone()
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot_string()
    }

    /// Rooted decorated isomorphism; returns the node matching or raises.
    fn matching(&self, other: &PyCrystal) -> PyResult<Vec<(String, String)>> {
        match bridge::crystal_isomorphic(&self.inner, &other.inner) {
            bridge::IsoOutcome::Isomorphic(m) => Ok(m.pairs),
            bridge::IsoOutcome::Mismatch(msg) => Err(PyValueError::new_err(msg)),
        }
    }

    fn isomorphic(&self, other: &PyCrystal) -> bool {
        bridge::crystal_isomorphic(&self.inner, &other.inner).is_isomorphic()
    }

    fn __repr__(&self) -> String {
        format!(
            "Crystal(nodes={}, edges={})",
            self.inner.nodes.len(),
            self.inner.edges.len()
        )
    }
}

/// Dimension of the irreducible module with the given highest weight.
#[pyfunction]
fn dim_highest_weight(n: usize, hw: Vec<i64>) -> PyResult<u128> {
    use num::ToPrimitive;
    let d = RootDatum::type_a(n);
    weyl_dim(&d, &weight(hw))
        .map_err(err)?
        .to_u128()
        .ok_or_else(|| PyValueError::new_err("dimension exceeds u128"))
}

/// Partition attached to a dominant weight.
#[pyfunction]
fn partition(n: usize, hw: Vec<i64>) -> PyResult<Vec<usize>> {
    let d = RootDatum::type_a(n);
    partition_of_weight(&d, &weight(hw)).map_err(err)
}

#[pyfunction]
fn ssyt_count(shape: Vec<usize>, n: usize) -> usize {
    tableau::enumerate_ssyt(&shape, n).len()
}

#[pyfunction]
fn kostka(shape: Vec<usize>, mu: Vec<usize>) -> PyResult<u64> {
    tableau::kostka(&shape, &mu).map_err(err)
}

/// Crystal on all components of total dimension at most `depth`.
#[pyfunction]
#[pyo3(signature = (n, depth, seed=1))]
fn gen_binf(n: usize, depth: usize, seed: u64) -> PyResult<PyCrystal> {
    let gen = Genericity::new(seed);
    let inner = binf::generate_binf(n, depth, &gen, 1).map_err(err)?;
    Ok(PyCrystal { inner })
}

/// Geometric highest-weight crystal for a framing vector.
#[pyfunction]
#[pyo3(signature = (n, hw, seed=1))]
fn gen_blambda(n: usize, hw: Vec<usize>, seed: u64) -> PyResult<PyCrystal> {
    let gen = Genericity::new(seed);
    let inner = blambda::generate_blambda(n, &hw, &gen, 1).map_err(err)?;
    Ok(PyCrystal { inner })
}

/// Tableau crystal of the shape attached to a framing vector.
#[pyfunction]
fn gen_tableau_crystal(n: usize, hw: Vec<usize>) -> PyResult<PyCrystal> {
    let shape = bridge::shape_of_wdims(n, &hw).map_err(err)?;
    Ok(PyCrystal {
        inner: bridge::tableau_crystal(&shape, n),
    })
}

/// Run the command-line interface in-process; returns stdout.
#[pyfunction]
fn cli(args: Vec<String>) -> PyResult<String> {
    quiver_crystals::cli::run(&args).map_err(err)
}

#[pymodule]
fn quiver_crystals_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyMultisegment>()?;
    m.add_class::<PyTableau>()?;
    m.add_class::<PyCrystal>()?;
    m.add_function(wrap_pyfunction!(dim_highest_weight, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    m.add_function(wrap_pyfunction!(ssyt_count, m)?)?;
    m.add_function(wrap_pyfunction!(kostka, m)?)?;
    m.add_function(wrap_pyfunction!(gen_binf, m)?)?;
    m.add_function(wrap_pyfunction!(gen_blambda, m)?)?;
    m.add_function(wrap_pyfunction!(gen_tableau_crystal, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}
