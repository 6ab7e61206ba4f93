//! Python bindings: `codeloop.LinearCode`, `FactorSet`, `CodeLoop`, and the
//! `classify` entry point. Loop elements are plain integer indices
//! `a * 2^k + u`, matching the Rust API.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use codeloop_core::catalog::{self, Congruence, Discriminant, Identity};
use codeloop_core::classify as cls;
use codeloop_core::code::{self, BitWord};
use codeloop_core::error::Error;
use codeloop_core::factor::{self, DerivedCongruence};
use codeloop_core::loops;
use codeloop_core::report::IdentityReport;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Outcome of an identity, discriminant or congruence scan.
#[pyclass(name = "Report", frozen, get_all)]
pub struct Report {
    name: String,
    holds: bool,
    counterexample: Option<Vec<usize>>,
    scanned: u64,
}

impl From<IdentityReport> for Report {
    fn from(r: IdentityReport) -> Self {
        Report {
            name: r.name,
            holds: r.holds,
            counterexample: r.counterexample,
            scanned: r.scanned,
        }
    }
}

#[pymethods]
impl Report {
    fn __bool__(&self) -> bool {
        self.holds
    }

    fn __repr__(&self) -> String {
        IdentityReport {
            name: self.name.clone(),
            holds: self.holds,
            counterexample: self.counterexample.clone(),
            scanned: self.scanned,
        }
        .to_string()
    }
}

#[pyclass(name = "LinearCode", frozen)]
pub struct LinearCode {
    inner: Arc<code::LinearCode>,
}

#[pymethods]
impl LinearCode {
    /// Span of generator rows given as `"0"`/`"1"` strings.
    #[new]
    fn new(rows: Vec<String>) -> PyResult<Self> {
        let words = rows
            .iter()
            .map(|r| BitWord::parse(r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let inner = code::LinearCode::span(&words).map_err(err)?;
        Ok(LinearCode {
            inner: Arc::new(inner),
        })
    }

    #[staticmethod]
    fn from_matrix(text: &str) -> PyResult<Self> {
        let inner = code::LinearCode::parse_generator_matrix(text).map_err(err)?;
        Ok(LinearCode {
            inner: Arc::new(inner),
        })
    }

    #[staticmethod]
    fn random_doubly_even(length: usize, dimension: usize, seed: u64) -> PyResult<Self> {
        let inner = code::random_doubly_even_code(length, dimension, seed).map_err(err)?;
        Ok(LinearCode {
            inner: Arc::new(inner),
        })
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn basis(&self) -> Vec<String> {
        self.inner.basis().iter().map(|w| w.to_string()).collect()
    }

    fn words(&self) -> Vec<String> {
        self.inner.words().iter().map(|w| w.to_string()).collect()
    }

    fn index_of(&self, word: &str) -> PyResult<Option<usize>> {
        Ok(self.inner.index_of(BitWord::parse(word).map_err(err)?))
    }

    fn is_doubly_even(&self) -> bool {
        self.inner.is_doubly_even()
    }

    /// `None` for a doubly even code, otherwise e.g. `"1100 weight=2"`.
    fn doubly_even_witness(&self) -> Option<String> {
        self.inner
            .doubly_even_check()
            .witness
            .map(|w| w.to_string())
    }

    fn __repr__(&self) -> String {
        format!(
            "LinearCode(n={}, k={})",
            self.inner.length(),
            self.inner.dimension()
        )
    }
}

#[pyclass(name = "FactorSet", frozen)]
pub struct FactorSet {
    inner: Arc<factor::FactorSet>,
}

#[pymethods]
impl FactorSet {
    /// A table from 0/1 rows; it must be normalized but need not satisfy
    /// the axioms.
    #[new]
    fn new(code: &LinearCode, rows: Vec<Vec<u8>>) -> PyResult<Self> {
        let rows: Vec<Vec<bool>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|b| b != 0).collect())
            .collect();
        let inner = factor::FactorSet::new(Arc::clone(&code.inner), &rows).map_err(err)?;
        Ok(FactorSet {
            inner: Arc::new(inner),
        })
    }

    /// The canonical factor set of a doubly even code.
    #[staticmethod]
    fn solve(code: &LinearCode) -> PyResult<Self> {
        let inner = factor::solve_factor_set(Arc::clone(&code.inner)).map_err(err)?;
        Ok(FactorSet {
            inner: Arc::new(inner),
        })
    }

    #[staticmethod]
    fn random(code: &LinearCode, seed: u64) -> PyResult<Self> {
        let inner = factor::random_normalized_phi(Arc::clone(&code.inner), seed).map_err(err)?;
        Ok(FactorSet {
            inner: Arc::new(inner),
        })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn value(&self, u: usize, v: usize) -> PyResult<u8> {
        let n = self.inner.size();
        for i in [u, v] {
            if i >= n {
                return Err(err(Error::IndexOutOfRange { index: i, count: n }));
            }
        }
        Ok(self.inner.value(u, v))
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        self.inner
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(u32::from).collect())
            .collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn is_factor_set(&self) -> PyResult<bool> {
        self.inner.is_factor_set().map_err(err)
    }

    /// `(lwl, rwl)`.
    fn weak_linearity(&self) -> (bool, bool) {
        let w = self.inner.weak_linearity();
        (w.lwl.holds(), w.rwl.holds())
    }

    fn discriminant(&self, name: &str) -> PyResult<Report> {
        let d: Discriminant = name.parse().map_err(err)?;
        Ok(catalog::discriminant_holds(&self.inner, d)
            .map_err(err)?
            .into())
    }

    fn congruence(&self, item: usize) -> PyResult<Report> {
        let c = Congruence::item(item).map_err(err)?;
        Ok(catalog::check_congruence(&self.inner, c)
            .map_err(err)?
            .into())
    }

    fn derived_congruence(&self, name: &str) -> PyResult<Report> {
        let d: DerivedCongruence = name.parse().map_err(err)?;
        Ok(self.inner.derived_congruence(d).map_err(err)?.into())
    }
}

#[pyclass(name = "CodeLoop", frozen)]
pub struct CodeLoop {
    inner: loops::CodeLoop,
}

impl CodeLoop {
    fn check(&self, x: usize) -> PyResult<usize> {
        if x >= self.inner.order() {
            return Err(err(Error::IndexOutOfRange {
                index: x,
                count: self.inner.order(),
            }));
        }
        Ok(x)
    }
}

#[pymethods]
impl CodeLoop {
    #[new]
    fn new(phi: &FactorSet) -> Self {
        CodeLoop {
            inner: loops::CodeLoop::new(Arc::clone(&phi.inner)),
        }
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// `(a, u)` for the element with index `a * 2^k + u`.
    fn element(&self, x: usize) -> PyResult<(u8, usize)> {
        let e = self.inner.element(self.check(x)?);
        Ok((e.a, e.u))
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        Ok(self.inner.mul_idx(self.check(x)?, self.check(y)?))
    }

    /// `x \ y`, the `z` with `x z = y`.
    fn left_div(&self, x: usize, y: usize) -> PyResult<usize> {
        Ok(self.inner.left_div_idx(self.check(x)?, self.check(y)?))
    }

    /// `y / x`, the `z` with `z x = y`.
    fn right_div(&self, y: usize, x: usize) -> PyResult<usize> {
        Ok(self.inner.right_div_idx(self.check(y)?, self.check(x)?))
    }

    fn cayley_table(&self) -> Vec<Vec<usize>> {
        let m = self.inner.order();
        (0..m)
            .map(|x| (0..m).map(|y| self.inner.mul_idx(x, y)).collect())
            .collect()
    }

    fn check_identity(&self, name: &str) -> PyResult<Report> {
        let id: Identity = name.parse().map_err(err)?;
        Ok(catalog::check_identity(&self.inner, id)
            .map_err(err)?
            .into())
    }

    fn nucleus(&self) -> PyResult<Vec<usize>> {
        Ok(self.inner.nucleus().map_err(err)?.nucleus)
    }

    fn center(&self) -> PyResult<Vec<usize>> {
        self.inner.center().map_err(err)
    }

    fn nonassociative_triple(&self) -> PyResult<Option<(usize, usize, usize)>> {
        Ok(self
            .inner
            .find_nonassociative_triple()
            .map_err(err)?
            .map(|[x, y, z]| (x, y, z)))
    }
}

#[pyclass(name = "Classification", frozen)]
pub struct Classification {
    inner: cls::Classification,
}

#[pymethods]
impl Classification {
    #[getter]
    fn consistent(&self) -> bool {
        self.inner.is_consistent()
    }

    #[getter]
    fn factor_set(&self) -> bool {
        self.inner.factor_set
    }

    #[getter]
    fn is_group(&self) -> bool {
        self.inner.is_group()
    }

    #[getter]
    fn composites(&self) -> BTreeMap<String, bool> {
        self.inner
            .composites
            .iter()
            .map(|(n, v)| (n.to_string(), *v))
            .collect()
    }

    #[getter]
    fn nonassociative(&self) -> Option<(usize, usize, usize)> {
        self.inner.nonassociative.map(|[x, y, z]| (x, y, z))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn classify(phi: &FactorSet) -> PyResult<Classification> {
    Ok(Classification {
        inner: cls::classify(&phi.inner).map_err(err)?,
    })
}

#[pyfunction]
fn identities() -> Vec<&'static str> {
    Identity::ALL.iter().map(|i| i.name()).collect()
}

#[pyfunction]
fn discriminants() -> Vec<&'static str> {
    Discriminant::ALL.iter().map(|d| d.name()).collect()
}

#[pymodule]
fn codeloop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<LinearCode>()?;
    m.add_class::<FactorSet>()?;
    m.add_class::<CodeLoop>()?;
    m.add_class::<Report>()?;
    m.add_class::<Classification>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(discriminants, m)?)?;
    Ok(())
}
