//! Python bindings: `import dltk`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dltk_core::braid::{positive_roots_of_pi, EnrichedWord, GarsideElement};
use dltk_core::cells::{self, CellMethod};
use dltk_core::dlcoh::{self, CohTable};
use dltk_core::dlpoints::{self, CountOptions};
use dltk_core::partition::Partition;
use dltk_core::unipotent;
use dltk_core::weyl::Permutation;

fn err(e: dltk_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn hash_of<T: Hash>(x: &T) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

/// A permutation in one-line notation, 1-based.
#[pyclass(name = "Permutation", module = "dltk", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPermutation(Permutation);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        Permutation::new(images).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(Permutation::identity(n))
    }

    #[staticmethod]
    fn longest(n: usize) -> Self {
        Self(Permutation::longest(n))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn images(&self) -> Vec<usize> {
        self.0.images()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn reduced_word(&self) -> Vec<usize> {
        self.0.reduced_word().letters.clone()
    }

    fn bruhat_leq(&self, other: &PyPermutation) -> PyResult<bool> {
        self.0.bruhat_leq(&other.0).map_err(err)
    }

    /// RSK shape.
    fn shape(&self) -> Vec<usize> {
        cells::shape(&self.0).parts().to_vec()
    }

    fn a_value(&self) -> usize {
        cells::a_value(&self.0)
    }

    fn __mul__(&self, other: &PyPermutation) -> PyResult<Self> {
        self.0.multiply(&other.0).map(Self).map_err(err)
    }

    fn __eq__(&self, other: &PyPermutation) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation([{}])", self.0)
    }
}

/// A braid in Garside normal form `D^p x_1 ... x_r`.
#[pyclass(name = "Braid", module = "dltk", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyBraid(GarsideElement);

#[pymethods]
impl PyBraid {
    /// Parses an expression such as `"(s1 s2)^3"` or `"D^-1 s1"` on `n` strands.
    #[new]
    fn new(n: usize, expr: &str) -> PyResult<Self> {
        GarsideElement::parse(n, expr).map(Self).map_err(err)
    }

    #[staticmethod]
    fn delta(n: usize) -> Self {
        Self(GarsideElement::delta(n))
    }

    #[staticmethod]
    fn full_twist(n: usize) -> Self {
        Self(GarsideElement::full_twist(n))
    }

    #[staticmethod]
    fn lift(w: &PyPermutation) -> Self {
        Self(GarsideElement::lift(&w.0))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn inf(&self) -> i64 {
        self.0.inf()
    }

    #[getter]
    fn sup(&self) -> i64 {
        self.0.sup()
    }

    fn canonical_length(&self) -> usize {
        self.0.canonical_length()
    }

    fn length(&self) -> i64 {
        self.0.length()
    }

    fn factors(&self) -> Vec<PyPermutation> {
        self.0.factors().iter().cloned().map(PyPermutation).collect()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn power(&self, k: i64) -> Self {
        Self(self.0.power(k))
    }

    fn is_root_of_pi(&self, d: u32) -> bool {
        self.0.is_dth_root_of_pi(d)
    }

    /// `c` with `self = c other c^-1`, or `None` when not conjugate.
    fn conjugating_element(&self, other: &PyBraid) -> PyResult<Option<PyBraid>> {
        Ok(self.0.conjugating_element(&other.0).map_err(err)?.map(Self))
    }

    fn is_conjugate(&self, other: &PyBraid) -> PyResult<bool> {
        self.0.are_conjugate(&other.0).map_err(err)
    }

    fn __mul__(&self, other: &PyBraid) -> PyResult<Self> {
        self.0.multiply(&other.0).map(Self).map_err(err)
    }

    fn __eq__(&self, other: &PyBraid) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Braid({}, {:?})", self.0.rank(), self.0.to_string())
    }
}

/// Cohomology table: multiplicities indexed by degree and partition.
#[pyclass(name = "CohTable", module = "dltk", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCohTable(CohTable);

#[pymethods]
impl PyCohTable {
    #[new]
    #[pyo3(signature = (n, braid = ""))]
    fn new(n: usize, braid: &str) -> Self {
        Self(CohTable::new(n, braid))
    }

    /// Table of `X(pi^k)` for `GL_n`.
    #[staticmethod]
    fn pi_power(n: usize, k: u64) -> PyResult<Self> {
        dlcoh::table_pi_power(n, k).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_document(src: &str) -> PyResult<Self> {
        dlcoh::from_document(src).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn braid(&self) -> String {
        self.0.braid.clone()
    }

    /// A copy with `mult` added at `(degree, lam)`.
    fn with_entry(&self, degree: i64, lam: Vec<usize>, mult: u64) -> PyResult<Self> {
        let mut t = self.0.clone();
        t.add(degree, partition(lam)?, mult).map_err(err)?;
        Ok(Self(t))
    }

    fn mult(&self, degree: i64, lam: Vec<usize>) -> PyResult<u64> {
        Ok(self.0.mult(degree, &partition(lam)?))
    }

    /// `(degree, partition, multiplicity)` sorted by degree then partition.
    fn entries(&self) -> Vec<(i64, Vec<usize>, u64)> {
        self.0.entries().map(|(d, l, m)| (d, l.parts().to_vec(), m)).collect()
    }

    fn translate(&self, times: u64) -> PyResult<Self> {
        dlcoh::translate_full_twist_times(&self.0, times).map(Self).map_err(err)
    }

    fn is_disjoint(&self) -> bool {
        dlcoh::disjointness_check(&self.0)
    }

    fn has_parity(&self) -> bool {
        dlcoh::parity_check(&self.0)
    }

    fn euler_dim(&self, q: BigInt) -> PyResult<BigInt> {
        dlcoh::euler_dim(&self.0, &q).map_err(err)
    }

    fn to_document(&self) -> String {
        dlcoh::to_document(&self.0)
    }

    fn to_tsv(&self) -> String {
        dlcoh::to_tsv(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &PyCohTable) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("CohTable(n={}, braid={:?}, entries={})", self.0.n, self.0.braid, self.0.len())
    }
}

#[pyfunction]
fn kl_polynomial(x: &PyPermutation, w: &PyPermutation) -> PyResult<Vec<i64>> {
    cells::kl_polynomial(&x.0, &w.0).map(|p| p.coeffs().to_vec()).map_err(err)
}

#[pyfunction]
fn mu(x: &PyPermutation, w: &PyPermutation) -> PyResult<i64> {
    cells::mu(&x.0, &w.0).map_err(err)
}

/// Cells as `(shape, members)` pairs, from `{1}` down to `{w0}`.
#[pyfunction]
#[pyo3(signature = (n, oracle = false))]
fn two_sided_cells(n: usize, oracle: bool) -> PyResult<Vec<(Vec<usize>, Vec<PyPermutation>)>> {
    let method = if oracle { CellMethod::Oracle } else { CellMethod::Fast };
    let dec = cells::two_sided_cells(n, method).map_err(err)?;
    Ok(dec
        .cells
        .into_iter()
        .map(|c| (c.shape.parts().to_vec(), c.members.into_iter().map(PyPermutation).collect()))
        .collect())
}

/// Ascending coefficients of the generic degree.
#[pyfunction]
fn generic_degree(lam: Vec<usize>) -> PyResult<Vec<BigInt>> {
    unipotent::generic_degree(&partition(lam)?)
        .map(|p| p.coeffs().to_vec())
        .map_err(err)
}

/// `(lambda, generic degree coefficients, a, A, chi(1))` for every partition of `n`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn unipotent_characters(n: usize) -> PyResult<Vec<(Vec<usize>, Vec<BigInt>, usize, usize, u64)>> {
    let chars = unipotent::unipotent_characters(n).map_err(err)?;
    Ok(chars
        .into_iter()
        .map(|c| (c.label.parts().to_vec(), c.generic_degree.coeffs().to_vec(), c.a, c.big_a, c.chi_dim))
        .collect())
}

/// Positive `d`-th roots of the full twist on `n` strands.
#[pyfunction]
fn roots_of_pi(n: usize, d: u32) -> PyResult<Vec<PyBraid>> {
    Ok(positive_roots_of_pi(n, d).map_err(err)?.into_iter().map(PyBraid).collect())
}

/// `|X(wF)(F_{q^m})|` for an enriched word such as `"s1 _s2"`.
#[pyfunction]
#[pyo3(signature = (n, word, q, m, jobs = 0))]
fn count_points(py: Python<'_>, n: usize, word: &str, q: u32, m: u32, jobs: usize) -> PyResult<u64> {
    let w = EnrichedWord::parse(n, word).map_err(err)?;
    let opts = CountOptions {
        jobs,
        ..CountOptions::default()
    };
    py.detach(|| dlpoints::count_points_with(&w, q, m, &opts)).map_err(err)
}

/// `(suite, check, passed, detail)` for the named suites, or all of them.
#[pyfunction]
#[pyo3(signature = (suites = None))]
fn verify(suites: Option<Vec<String>>) -> PyResult<Vec<(String, String, bool, String)>> {
    let names = suites.unwrap_or_else(|| dltk_core::verify::SUITES.iter().map(|s| s.to_string()).collect());
    let mut out = Vec::new();
    for name in names {
        for r in dltk_core::verify::run_suite(&name).map_err(err)? {
            out.push((r.suite.to_string(), r.name, r.passed, r.detail));
        }
    }
    Ok(out)
}

#[pymodule]
pub fn dltk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyBraid>()?;
    m.add_class::<PyCohTable>()?;
    m.add_function(wrap_pyfunction!(kl_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(two_sided_cells, m)?)?;
    m.add_function(wrap_pyfunction!(generic_degree, m)?)?;
    m.add_function(wrap_pyfunction!(unipotent_characters, m)?)?;
    m.add_function(wrap_pyfunction!(roots_of_pi, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
