//! Python bindings for `kunion-core`.
//!
//! Rationals cross the boundary as strings (`"3/7"`, `"0.25"`), enclosures as
//! decimal strings, and reports as dictionaries decoded from their JSON form.

use std::sync::Arc;

use kunion_core::analysis::{self, PointK};
use kunion_core::constants::{self, BoundQuery, ConstantsRow};
use kunion_core::numerics::{parse_rational, AlgebraicElement, PhiContext, Rational};
use kunion_core::paperpoly::{self, AlphaPoly};
use kunion_core::report::PaperCheckReport;
use kunion_core::simulate::{self, FamilySpec, SimReport};
use kunion_core::{cli, Error};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    let json = py.import("json")?;
    json.call_method1("loads", (v.to_string(),))
}

/// Result of one check.
#[pyclass(name = "Report", module = "kunion", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyReport {
    inner: PaperCheckReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn claim_id(&self) -> String {
        self.inner.claim_id.clone()
    }

    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.as_str()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn precision_bits(&self) -> u32 {
        self.inner.precision_bits
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable report")
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &serde_json::to_value(&self.inner).expect("serializable report"))
    }

    fn text(&self) -> String {
        self.inner.render_text()
    }

    fn __repr__(&self) -> String {
        format!("Report({:?}, status={:?})", self.inner.claim_id, self.inner.status.as_str())
    }
}

fn report(r: PaperCheckReport) -> PyReport {
    PyReport { inner: r }
}

/// `phi_k, psi_k, z_k, alpha_k, mu_k` as certified enclosures.
#[pyclass(name = "ConstantsRow", module = "kunion", frozen)]
struct PyConstantsRow {
    inner: ConstantsRow,
}

#[pymethods]
impl PyConstantsRow {
    #[new]
    #[pyo3(signature = (k, prec = 128))]
    fn new(k: u64, prec: u32) -> PyResult<Self> {
        Ok(PyConstantsRow { inner: ConstantsRow::compute(k, prec).map_err(err)? })
    }

    #[getter]
    fn k(&self) -> u64 {
        self.inner.k
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi.mid_f64()
    }

    #[getter]
    fn psi(&self) -> f64 {
        self.inner.psi.mid_f64()
    }

    #[getter]
    fn z(&self) -> f64 {
        self.inner.z.mid_f64()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha.mid_f64()
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.inner.mu.mid_f64()
    }

    /// Decimal strings at the row's precision.
    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.to_json())
    }

    fn __repr__(&self) -> String {
        format!("ConstantsRow({})", self.inner.to_text(8).trim())
    }
}

/// An element of `Q[x]/(x^k + x - 1)`, identified with a real number through
/// the root `phi_k`.
#[pyclass(name = "PhiElement", module = "kunion", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPhiElement {
    inner: AlgebraicElement,
}

impl PyPhiElement {
    fn ctx(k: u32) -> PyResult<Arc<PhiContext>> {
        PhiContext::shared(k).map_err(err)
    }
}

#[pymethods]
impl PyPhiElement {
    /// `coords[i]` is the coefficient of `phi^i`, each a rational string.
    #[new]
    fn new(k: u32, coords: Vec<String>) -> PyResult<Self> {
        let ctx = Self::ctx(k)?;
        let c = coords.iter().map(|s| rational(s)).collect::<PyResult<Vec<_>>>()?;
        Ok(PyPhiElement { inner: AlgebraicElement::from_coords(&ctx, &c) })
    }

    #[staticmethod]
    fn phi(k: u32) -> PyResult<Self> {
        Ok(PyPhiElement { inner: AlgebraicElement::phi(&Self::ctx(k)?) })
    }

    #[staticmethod]
    fn alpha(k: u32) -> PyResult<Self> {
        Ok(PyPhiElement { inner: AlgebraicElement::alpha(&Self::ctx(k)?) })
    }

    #[staticmethod]
    fn rational(k: u32, value: &str) -> PyResult<Self> {
        Ok(PyPhiElement { inner: AlgebraicElement::from_rational(&Self::ctx(k)?, &rational(value)?) })
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    fn coords(&self) -> Vec<String> {
        self.inner.coords().iter().map(|c| c.to_string()).collect()
    }

    /// Certified sign: -1, 0 or 1.
    fn sign(&self) -> i32 {
        self.inner.sign().as_i32()
    }

    fn __float__(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __add__(&self, o: &PyPhiElement) -> PyResult<Self> {
        Ok(PyPhiElement { inner: self.inner.checked_add(&o.inner).map_err(err)? })
    }

    fn __sub__(&self, o: &PyPhiElement) -> PyResult<Self> {
        Ok(PyPhiElement { inner: self.inner.checked_sub(&o.inner).map_err(err)? })
    }

    fn __mul__(&self, o: &PyPhiElement) -> PyResult<Self> {
        Ok(PyPhiElement { inner: self.inner.checked_mul(&o.inner).map_err(err)? })
    }

    fn __truediv__(&self, o: &PyPhiElement) -> PyResult<Self> {
        Ok(PyPhiElement { inner: self.inner.checked_div(&o.inner).map_err(err)? })
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Self {
        PyPhiElement { inner: self.inner.pow(e) }
    }

    fn __eq__(&self, o: &PyPhiElement) -> bool {
        self.inner == o.inner
    }

    fn __repr__(&self) -> String {
        format!("PhiElement(k={}, {})", self.inner.k(), self.inner)
    }
}

/// `p_k` with coefficients `a + b alpha_k`.
#[pyclass(name = "AlphaPoly", module = "kunion", frozen)]
struct PyAlphaPoly {
    k: u32,
    inner: AlphaPoly,
}

#[pymethods]
impl PyAlphaPoly {
    #[getter]
    fn k(&self) -> u32 {
        self.k
    }

    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    /// `(a, b)` for each degree, as rational strings.
    fn coefficients(&self) -> Vec<(String, String)> {
        (0..=self.inner.degree().unwrap_or(0))
            .map(|i| {
                let (a, b) = self.inner.coeff(i);
                (a.to_string(), b.to_string())
            })
            .collect()
    }

    fn derivative(&self, n: usize) -> Self {
        PyAlphaPoly { k: self.k, inner: self.inner.nth_derivative(n) }
    }

    /// Value at a rational point as a [`PhiElement`].
    fn eval(&self, x: &str) -> PyResult<PyPhiElement> {
        let ctx = PyPhiElement::ctx(self.k)?;
        Ok(PyPhiElement { inner: self.inner.eval_in(&ctx, &rational(x)?) })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AlphaPoly(p_{} = {})", self.k, self.inner)
    }
}

/// The two-layer extremal family on `n` elements.
#[pyclass(name = "FamilySpec", module = "kunion", frozen)]
struct PyFamilySpec {
    inner: FamilySpec,
}

#[pymethods]
impl PyFamilySpec {
    /// Overlapping layers are accepted when `allow_overlap` is set.
    #[new]
    #[pyo3(signature = (n, k, allow_overlap = false))]
    fn new(n: u32, k: u32, allow_overlap: bool) -> PyResult<Self> {
        let s = if allow_overlap { FamilySpec::with_overlap(n, k) } else { FamilySpec::new(n, k) };
        Ok(PyFamilySpec { inner: s.map_err(err)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter]
    fn t1(&self) -> u32 {
        self.inner.t1
    }

    #[getter]
    fn t2(&self) -> u32 {
        self.inner.t2
    }

    #[getter]
    fn overlap(&self) -> bool {
        self.inner.overlap
    }

    fn element_frequency(&self) -> f64 {
        simulate::element_frequency_f64(&self.inner)
    }

    fn simulate(&self, trials: u64, seed: u64) -> PyResult<PySimReport> {
        Ok(PySimReport { inner: simulate::simulate(&self.inner, trials, seed).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        let s = &self.inner;
        format!("FamilySpec(n={}, k={}, t1={}, t2={}, overlap={})", s.n, s.k, s.t1, s.t2, s.overlap)
    }
}

/// Monte Carlo estimates with their exact companions.
#[pyclass(name = "SimReport", module = "kunion", frozen)]
struct PySimReport {
    inner: SimReport,
}

#[pymethods]
impl PySimReport {
    #[getter]
    fn closure_fraction(&self) -> (f64, f64) {
        (self.inner.closure_fraction.value, self.inner.closure_fraction.half_width)
    }

    #[getter]
    fn element_frequency(&self) -> (f64, f64) {
        (self.inner.element_frequency.value, self.inner.element_frequency.half_width)
    }

    fn check(&self) -> PyReport {
        report(self.inner.check())
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.to_json())
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

#[pyfunction]
#[pyo3(signature = (k, prec = 128))]
fn phi(k: u64, prec: u32) -> PyResult<f64> {
    Ok(constants::phi(k, prec).map_err(err)?.mid_f64())
}

#[pyfunction]
#[pyo3(signature = (k, prec = 128))]
fn z(k: u64, prec: u32) -> PyResult<f64> {
    Ok(constants::z(k, prec).map_err(err)?.mid_f64())
}

#[pyfunction]
#[pyo3(signature = (k, prec = 128))]
fn mu(k: u64, prec: u32) -> PyResult<f64> {
    Ok(constants::mu(k, prec).map_err(err)?.mid_f64())
}

#[pyfunction]
#[pyo3(signature = (ks, prec = 128))]
fn table1(ks: Vec<u64>, prec: u32) -> PyResult<Vec<PyConstantsRow>> {
    Ok(constants::table1(&ks, prec).map_err(err)?.into_iter().map(|inner| PyConstantsRow { inner }).collect())
}

/// Guaranteed element frequency as a dictionary of decimal strings.
#[pyfunction]
#[pyo3(signature = (k, eps, family_size, prec = 128))]
fn frequency_bound<'py>(py: Python<'py>, k: u64, eps: &str, family_size: &str, prec: u32) -> PyResult<Bound<'py, PyAny>> {
    let size: BigUint = family_size.parse().map_err(|_| PyValueError::new_err("family_size must be a positive integer"))?;
    let q = BoundQuery::new(k, rational(eps)?, size).map_err(err)?;
    let b = constants::frequency_bound_with(&q, prec).map_err(err)?;
    json_to_py(py, &b.to_json(&q))
}

#[pyfunction]
fn build_p(k: u32) -> PyResult<PyAlphaPoly> {
    Ok(PyAlphaPoly { k, inner: paperpoly::build_p_parts(k).map_err(err)? })
}

/// `(distinct, with multiplicity)` roots of `p_k` in `(0, 1)`.
#[pyfunction]
fn root_count(k: u32) -> PyResult<(usize, usize)> {
    let c = paperpoly::unit_interval_root_count(k).map_err(err)?;
    Ok((c.distinct, c.with_multiplicity))
}

#[pyfunction]
fn derivative_root_pattern(k: u32) -> PyResult<Vec<usize>> {
    paperpoly::derivative_root_pattern(k).map_err(err)
}

#[pyfunction]
fn discriminant_sign_pattern(k: u32) -> PyResult<Vec<i32>> {
    Ok(paperpoly::discriminant_sign_pattern(k).map_err(err)?.into_iter().map(|s| s.as_i32()).collect())
}

#[pyfunction]
fn h(x: f64) -> f64 {
    analysis::h_f64(x)
}

#[pyfunction]
fn f_k(k: u32, x: f64) -> PyResult<f64> {
    let a = constants::alpha(u64::from(k), 128).map_err(err)?.mid_f64();
    Ok(analysis::f_k_f64(k, a, x))
}

#[pyfunction]
fn m_k(point: Vec<f64>) -> PyResult<f64> {
    Ok(analysis::m_k_f64(&PointK::new(point).map_err(err)?))
}

#[pyfunction]
fn check_table2(k: u32) -> PyResult<PyReport> {
    paperpoly::check_table2(k).map(report).map_err(err)
}

#[pyfunction]
fn check_unit_interval_roots(k: u32) -> PyResult<PyReport> {
    paperpoly::check_unit_interval_roots(k).map(report).map_err(err)
}

#[pyfunction]
fn verify_appendix_a() -> PyResult<PyReport> {
    paperpoly::verify_appendix_a().map(report).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (k, grid_size = 100_000, exclusion_radius = 1e-3))]
fn verify_fk_nonneg(py: Python<'_>, k: u32, grid_size: usize, exclusion_radius: f64) -> PyResult<PyReport> {
    py.detach(|| analysis::verify_fk_nonneg(k, grid_size, exclusion_radius)).map(report).map_err(err)
}

#[pyfunction]
fn verify_lemma_cl(py: Python<'_>, samples: usize, seed: u64) -> PyResult<PyReport> {
    py.detach(|| analysis::verify_lemma_cl(samples, seed)).map(report).map_err(err)
}

#[pyfunction]
fn verify_corollary_main(py: Python<'_>, k: u32, samples: usize, seed: u64) -> PyResult<PyReport> {
    py.detach(|| analysis::verify_corollary_main(k, samples, seed)).map(report).map_err(err)
}

/// `(point, value)` of the best minimum found for `M_k`.
#[pyfunction]
fn minimize_m_k(py: Python<'_>, k: u32, tolerance: f64) -> PyResult<(Vec<f64>, f64)> {
    let m = py.detach(|| analysis::minimize_m_k(k, tolerance)).map_err(err)?;
    Ok((m.point.coords().to_vec(), m.value.mid_f64()))
}

#[pyfunction]
fn verify_lemma_main_small(py: Python<'_>, n: u32, k: u32, trials: usize, seed: u64) -> PyResult<PyReport> {
    py.detach(|| analysis::verify_lemma_main_small(n, k, trials, seed)).map(report).map_err(err)
}

#[pyfunction]
fn verify_prop_zk(py: Python<'_>, kmax: u64) -> PyResult<PyReport> {
    py.detach(|| constants::verify_prop_zk(kmax)).map(report).map_err(err)
}

#[pyfunction]
fn verify_lemma_mu(py: Python<'_>, kmax: u64) -> PyResult<PyReport> {
    py.detach(|| constants::verify_lemma_mu(kmax)).map(report).map_err(err)
}

/// Run the command line in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let mut argv = vec!["kunion".to_string()];
    argv.extend(args);
    let out = py.detach(|| cli::run_args(argv));
    (out.exit_code, out.stdout, out.stderr)
}

#[pymodule]
fn kunion(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyConstantsRow>()?;
    m.add_class::<PyPhiElement>()?;
    m.add_class::<PyAlphaPoly>()?;
    m.add_class::<PyFamilySpec>()?;
    m.add_class::<PySimReport>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(z, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(frequency_bound, m)?)?;
    m.add_function(wrap_pyfunction!(build_p, m)?)?;
    m.add_function(wrap_pyfunction!(root_count, m)?)?;
    m.add_function(wrap_pyfunction!(derivative_root_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant_sign_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(h, m)?)?;
    m.add_function(wrap_pyfunction!(f_k, m)?)?;
    m.add_function(wrap_pyfunction!(m_k, m)?)?;
    m.add_function(wrap_pyfunction!(check_table2, m)?)?;
    m.add_function(wrap_pyfunction!(check_unit_interval_roots, m)?)?;
    m.add_function(wrap_pyfunction!(verify_appendix_a, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fk_nonneg, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma_cl, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corollary_main, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_m_k, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma_main_small, m)?)?;
    m.add_function(wrap_pyfunction!(verify_prop_zk, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma_mu, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
