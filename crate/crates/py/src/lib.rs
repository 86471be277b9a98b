//! Python bindings. Errors from bad input raise ValueError; precision or
//! internal failures raise RuntimeError.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rzint_core::finite::{poly_factorize, FpMatrix, PrimeField};
use rzint_core::formula;
use rzint_core::instance::json::{parse_instance, reduced_to_json, Instance};
use rzint_core::instance::{self, validate_reduced};
use rzint_core::oracle::{self, JordanData};
use rzint_core::padic::{self, PadicScalar, DEFAULT_PRECISION};
use rzint_core::report;

fn err(e: rzint_core::Error) -> PyErr {
    if e.is_precision_or_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// Monic polynomial over F_p, coefficients low to high.
#[pyclass(name = "FpPoly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFpPoly(rzint_core::finite::FpPoly);

#[pymethods]
impl PyFpPoly {
    #[new]
    fn new(p: u64, coeffs: Vec<i64>) -> PyResult<Self> {
        rzint_core::finite::FpPoly::new(p, coeffs).map(PyFpPoly).map_err(err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn coeffs(&self) -> Vec<u64> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn reciprocal(&self) -> PyResult<Self> {
        self.0.reciprocal().map(PyFpPoly).map_err(err)
    }

    fn is_self_reciprocal(&self) -> PyResult<bool> {
        self.0.is_self_reciprocal().map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FpPoly({}, {:?})", self.0.p(), self.0.coeffs())
    }
}

#[pyclass(name = "ReducedInstance", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyReduced(instance::ReducedInstance);

#[pymethods]
impl PyReduced {
    /// Parse either layer; a full instance is reduced first.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let red = match parse_instance(text, None).map_err(err)? {
            Instance::Reduced(r) => r,
            Instance::Full(f) => instance::reduce_instance(&f).map_err(err)?.0,
        };
        Ok(PyReduced(red))
    }

    fn to_json(&self) -> String {
        reduced_to_json(&self.0).to_string()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p
    }

    #[getter]
    fn t(&self) -> usize {
        self.0.t
    }

    #[getter]
    fn poly(&self) -> PyFpPoly {
        PyFpPoly(self.0.poly.clone())
    }

    #[getter]
    fn omega_gram(&self) -> Vec<Vec<u64>> {
        self.0.omega_gram.to_rows()
    }

    #[getter]
    fn gbar(&self) -> Vec<Vec<u64>> {
        self.0.gbar.to_rows()
    }

    /// (check name, passed) pairs.
    fn validate(&self) -> Vec<(String, bool)> {
        validate_reduced(&self.0).into_iter().map(|v| (v.name.to_string(), v.passed)).collect()
    }

    /// Oracle count of k-points, by enumerating invariant subspaces.
    fn oracle_point_count(&self) -> PyResult<u64> {
        report::checked(&self.0).map_err(err)?;
        Ok(oracle::oracle_point_count(&oracle::enumerate_strata(&self.0).map_err(err)?))
    }
}

#[pyclass(name = "IntersectionReport", frozen)]
struct PyReport(formula::IntersectionReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn nonempty(&self) -> bool {
        self.0.nonempty
    }

    #[getter]
    fn q(&self) -> Option<PyFpPoly> {
        self.0.q.clone().map(PyFpPoly)
    }

    #[getter]
    fn m_q(&self) -> Option<usize> {
        self.0.m_q
    }

    #[getter]
    fn point_count(&self) -> u64 {
        self.0.point_count
    }

    #[getter]
    fn c(&self) -> Option<usize> {
        self.0.c
    }

    #[getter]
    fn total(&self) -> Option<u64> {
        self.0.total
    }

    #[getter]
    fn p_gt_c(&self) -> bool {
        self.0.p_gt_c
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __repr__(&self) -> String {
        format!(
            "IntersectionReport(nonempty={}, point_count={}, c={:?}, total={:?})",
            self.0.nonempty, self.0.point_count, self.0.c, self.0.total
        )
    }
}

/// Irreducible factors with multiplicities.
#[pyfunction]
fn factorize(poly: &PyFpPoly) -> PyResult<Vec<(PyFpPoly, usize)>> {
    let fl = poly_factorize(&poly.0).map_err(err)?;
    Ok(fl.factors.into_iter().map(|(f, m)| (PyFpPoly(f), m)).collect())
}

#[pyfunction]
fn reciprocal(poly: &PyFpPoly) -> PyResult<PyFpPoly> {
    poly.reciprocal()
}

#[pyfunction]
fn intersection_number(poly: &PyFpPoly) -> PyResult<PyReport> {
    formula::intersection_number(&poly.0).map(PyReport).map_err(err)
}

#[pyfunction]
fn point_count(poly: &PyFpPoly) -> PyResult<u64> {
    Ok(formula::point_count(&formula::classify_factors(&poly.0).map_err(err)?))
}

/// Full analysis of a JSON instance; returns the JSON document the CLI prints.
#[pyfunction]
#[pyo3(signature = (text, seed = 1, with_oracles = false))]
fn analyze(text: &str, seed: u64, with_oracles: bool) -> PyResult<String> {
    let inst = parse_instance(text, None).map_err(err)?;
    Ok(report::analyze(text, &inst, seed, with_oracles).map_err(err)?.to_json())
}

#[pyfunction]
#[pyo3(signature = (p, shape, seed = 1))]
fn gen_reduced(p: u64, shape: &str, seed: u64) -> PyResult<PyReduced> {
    let shape = instance::parse_shape(shape).map_err(err)?;
    instance::gen_reduced(p, &shape, seed).map(PyReduced).map_err(err)
}

/// Length of the local ring cut out by Jordan data (H1, H2, H4).
#[pyfunction]
fn local_ring_length(p: u64, h1: Vec<Vec<i64>>, h2: Vec<i64>, h4: i64) -> PyResult<usize> {
    let f = PrimeField::new(p).map_err(err)?;
    let h1 = FpMatrix::from_i64(&f, &h1).map_err(err)?;
    let jd = JordanData::new(h1, h2.iter().map(|&x| f.reduce(x)).collect(), f.reduce(h4)).map_err(err)?;
    oracle::local_ring_length(&jd).map_err(err)
}

/// Hilbert symbol (a, b)_p; a and b are integers or rationals as strings.
#[pyfunction]
fn hilbert_symbol(a: &str, b: &str, p: u64) -> PyResult<i8> {
    let a = PadicScalar::parse(a, p, DEFAULT_PRECISION).map_err(err)?;
    let b = PadicScalar::parse(b, p, DEFAULT_PRECISION).map_err(err)?;
    padic::hilbert_symbol(&a, &b).map_err(err)
}

#[pymodule]
fn rzint(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", report::VERSION)?;
    m.add_class::<PyFpPoly>()?;
    m.add_class::<PyReduced>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocal, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_number, m)?)?;
    m.add_function(wrap_pyfunction!(point_count, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(gen_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(local_ring_length, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    Ok(())
}
