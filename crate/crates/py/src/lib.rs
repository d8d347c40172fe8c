//! Python bindings. Weights cross the boundary as lists of integers in the
//! fundamental weight basis; decompositions as lists of `(weight, mult)`.

use modrep::classify::{oracle, verify_range, VerifyMode};
use modrep::tensor::{is_mf, is_mf_engine, mf_char0, tensor_factors};
use modrep::weylmod::ResolutionOutcome;
use modrep::{chars, Engine, Error, RootSystem, RootType, Verdict, Weight};
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Overflow => PyArithmeticError::new_err(e.to_string()),
        Error::Invariant(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn weight(c: &[i64]) -> PyResult<Weight> {
    Weight::new(c).map_err(py_err)
}

fn root_type(label: &str, rank: Option<usize>) -> PyResult<RootType> {
    RootType::parse(label, rank).map_err(py_err)
}

type Factors = Vec<(Vec<i64>, u64)>;

fn factors(outcome: ResolutionOutcome) -> PyResult<Option<Factors>> {
    Ok(outcome.resolved().map(|d| d.factors().iter().map(|(w, k)| (w.to_vec(), *k)).collect()))
}

/// A classification answer: `value` is one of `MultiplicityFree`,
/// `HasMultiplicity` or `Unknown`.
#[pyclass(name = "Verdict", frozen, get_all)]
struct PyVerdict {
    value: String,
    clause: String,
    witness: Option<Vec<i64>>,
}

#[pymethods]
impl PyVerdict {
    fn __repr__(&self) -> String {
        format!("Verdict({}, {:?}, witness={:?})", self.value, self.clause, self.witness)
    }
}

impl From<Verdict> for PyVerdict {
    fn from(v: Verdict) -> Self {
        PyVerdict { value: v.value.to_string(), clause: v.clause, witness: v.witness.map(|w| w.to_vec()) }
    }
}

/// Brute-force engine for one root system and prime, caching characters.
#[pyclass(name = "Engine", frozen)]
struct PyEngine {
    inner: Engine,
}

#[pymethods]
impl PyEngine {
    #[new]
    #[pyo3(signature = (root_type, p, rank=None))]
    fn new(root_type: &str, p: u32, rank: Option<usize>) -> PyResult<Self> {
        let ty = self::root_type(root_type, rank)?;
        Ok(PyEngine { inner: Engine::for_type(ty, p).map_err(py_err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.root_system().rank()
    }

    /// Dominant part of ch L(λ) as `(weight, mult)` pairs.
    fn simple_char(&self, py: Python<'_>, lam: Vec<i64>) -> PyResult<Vec<(Vec<i64>, i64)>> {
        let lam = weight(&lam)?;
        let ch = py.detach(|| self.inner.simple_char(&lam)).map_err(py_err)?;
        Ok(ch.dominant_part().into_iter().map(|(w, k)| (w.to_vec(), k)).collect())
    }

    fn simple_dim(&self, py: Python<'_>, lam: Vec<i64>) -> PyResult<i64> {
        let lam = weight(&lam)?;
        py.detach(|| self.inner.simple_char(&lam)?.dimension()).map_err(py_err)
    }

    /// Composition factors of Δ(λ), or None when the sum formula does not
    /// determine them.
    fn weyl_factors(&self, py: Python<'_>, lam: Vec<i64>) -> PyResult<Option<Factors>> {
        let lam = weight(&lam)?;
        factors(py.detach(|| self.inner.weyl_composition_factors(&lam)).map_err(py_err)?)
    }

    /// Composition factors of L(λ) ⊗ L(μ), or None when undetermined.
    fn tensor_factors(&self, py: Python<'_>, lam: Vec<i64>, mu: Vec<i64>) -> PyResult<Option<Factors>> {
        let (lam, mu) = (weight(&lam)?, weight(&mu)?);
        factors(py.detach(|| tensor_factors(&self.inner, &lam, &mu)).map_err(py_err)?)
    }

    /// Brute-force multiplicity-freeness; non-restricted weights are
    /// reduced to their p-adic layers.
    fn is_mf(&self, py: Python<'_>, lam: Vec<i64>, mu: Vec<i64>) -> PyResult<PyVerdict> {
        let (lam, mu) = (weight(&lam)?, weight(&mu)?);
        let v = py.detach(|| {
            if lam.is_restricted(self.inner.p()) && mu.is_restricted(self.inner.p()) {
                is_mf_engine(&self.inner, &lam, &mu)
            } else {
                is_mf(&self.inner, &lam, &mu)
            }
        });
        Ok(v.map_err(py_err)?.into())
    }

    fn mf_char0(&self, lam: Vec<i64>, mu: Vec<i64>) -> PyResult<bool> {
        mf_char0(self.inner.table(), &weight(&lam)?, &weight(&mu)?).map_err(py_err)
    }
}

/// Dimension of the Weyl module Δ(λ).
#[pyfunction]
#[pyo3(signature = (root_type, lam, rank=None))]
fn weyl_dim(root_type: &str, lam: Vec<i64>, rank: Option<usize>) -> PyResult<i64> {
    let rs = RootSystem::new(self::root_type(root_type, rank)?).map_err(py_err)?;
    chars::weyl_dim(&rs, &weight(&lam)?).map_err(py_err)
}

/// Dominant part of the Weyl character χ(λ).
#[pyfunction]
#[pyo3(signature = (root_type, lam, rank=None))]
fn weyl_char(root_type: &str, lam: Vec<i64>, rank: Option<usize>) -> PyResult<Vec<(Vec<i64>, i64)>> {
    let rs = RootSystem::new(self::root_type(root_type, rank)?).map_err(py_err)?;
    let dom = chars::freudenthal_dominant(&rs, &weight(&lam)?).map_err(py_err)?;
    Ok(dom.into_iter().map(|(w, k)| (w.to_vec(), k)).collect())
}

/// The closed-form classification for p-restricted weights.
#[pyfunction]
#[pyo3(name = "oracle", signature = (root_type, p, lam, mu, rank=None))]
fn py_oracle(root_type: &str, p: u32, lam: Vec<i64>, mu: Vec<i64>, rank: Option<usize>) -> PyResult<PyVerdict> {
    let ty = self::root_type(root_type, rank)?;
    Ok(oracle(ty, p, &weight(&lam)?, &weight(&mu)?).map_err(py_err)?.into())
}

/// Exhaustive comparison over all p-restricted pairs; returns the number of
/// mismatches and the number of pairs examined.
#[pyfunction]
#[pyo3(signature = (root_type, p, mode="oracle_vs_engine", rank=None))]
fn verify(py: Python<'_>, root_type: &str, p: u32, mode: &str, rank: Option<usize>) -> PyResult<(usize, usize)> {
    let ty = self::root_type(root_type, rank)?;
    let mode: VerifyMode = mode.parse().map_err(py_err)?;
    let r = py.detach(|| verify_range(ty, p, mode)).map_err(py_err)?;
    Ok((r.mismatches.len(), r.total))
}

#[pymodule]
#[pyo3(name = "modrep")]
fn modrep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEngine>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(weyl_dim, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_char, m)?)?;
    m.add_function(wrap_pyfunction!(py_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
