//! Python bindings: `fermat_cycles_py`.

use fermat_cycles::characters::{self, FermatContext};
use fermat_cycles::cyclotomic::{self, GaloisElement};
use fermat_cycles::fake_cycles::{self, CertificateOutcome, PRESETS};
use fermat_cycles::polyring::{parse_cyclotomic, Poly};
use fermat_cycles::{qform, report, tangent, Error};
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict, PyList};
use rand::SeedableRng;

fn err(e: Error) -> PyErr {
    if e.is_usage() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

type PeriodList<'py> = Vec<(Vec<u32>, Bound<'py, PyAny>)>;

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

/// Element of the cyclotomic field `Q(ζ_m)`.
#[pyclass(
    name = "CycloNum",
    frozen,
    eq,
    skip_from_py_object,
    module = "fermat_cycles_py"
)]
#[derive(Clone, PartialEq)]
pub struct PyCycloNum(cyclotomic::CycloNum);

#[pymethods]
impl PyCycloNum {
    /// Parse an expression such as `"3/5*z8 + 4/5*z8^3"` in `Q(ζ_m)`.
    #[new]
    fn new(expr: &str, m: u32) -> PyResult<Self> {
        parse_cyclotomic(expr, m).map(PyCycloNum).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (m, k = 1))]
    fn zeta(m: u32, k: i64) -> Self {
        PyCycloNum(cyclotomic::CycloNum::zeta_pow(m, k))
    }

    #[getter]
    fn conductor(&self) -> u32 {
        self.0.conductor()
    }

    /// Power-basis coefficients as `Fraction`s.
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.coeffs().iter().map(|q| fraction(py, q)).collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The value as a `Fraction` if it is rational, else `None`.
    fn as_rational<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        cyclotomic::is_rational(&self.0)
            .map(|q| fraction(py, &q))
            .transpose()
    }

    fn on_unit_circle(&self) -> bool {
        cyclotomic::on_unit_circle(&self.0)
    }

    /// Apply `σ_t: ζ ↦ ζ^t`.
    fn galois(&self, t: i64) -> PyResult<Self> {
        let sigma = GaloisElement::new(self.0.conductor(), t).map_err(err)?;
        cyclotomic::galois_apply(&sigma, &self.0)
            .map(PyCycloNum)
            .map_err(err)
    }

    fn conj(&self) -> Self {
        PyCycloNum(self.0.conj())
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().map(PyCycloNum).map_err(err)
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Self> {
        self.0.pow(e).map(PyCycloNum).map_err(err)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyCycloNum(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyCycloNum(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyCycloNum(&self.0 * &other.0)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_div(&other.0).map(PyCycloNum).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyCycloNum(-&self.0)
    }

    fn __complex__<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        let (re, im) = self.0.approx();
        PyComplex::from_doubles(py, re, im)
    }

    /// Floating-point value (non-authoritative).
    fn approx(&self) -> (f64, f64) {
        self.0.approx()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyCycloNum)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CycloNum('{}', {})", self.0, self.0.conductor())
    }
}

/// The data `(d, n, c, c_λ)` of a candidate fake linear cycle.
#[pyclass(
    name = "FakeCycleSpec",
    frozen,
    skip_from_py_object,
    module = "fermat_cycles_py"
)]
#[derive(Clone)]
pub struct PySpec(fake_cycles::FakeCycleSpec);

#[pymethods]
impl PySpec {
    /// `c` holds one expression per pair, in `Q(ζ_{2d})`.
    #[new]
    #[pyo3(signature = (d, n, c, c_lambda = None))]
    fn new(d: u32, n: u32, c: Vec<String>, c_lambda: Option<String>) -> PyResult<Self> {
        let ctx = FermatContext::new(n, d).map_err(err)?;
        let c = c
            .iter()
            .map(|s| parse_cyclotomic(s, 2 * d))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let cl = c_lambda
            .map(|s| parse_cyclotomic(&s, 2 * d))
            .transpose()
            .map_err(err)?;
        fake_cycles::FakeCycleSpec::new(ctx, c, cl)
            .map(PySpec)
            .map_err(err)
    }

    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        fake_cycles::FakeCycleSpec::preset(name)
            .map(PySpec)
            .ok_or_else(|| PyValueError::new_err(format!("unknown preset {name:?}")))
    }

    /// A random admissible spec, reproducible from `seed`.
    #[staticmethod]
    fn random(d: u32, n: u32, seed: u64) -> PyResult<Self> {
        let ctx = FermatContext::new(n, d).map_err(err)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        fake_cycles::FakeCycleSpec::random(ctx, &mut rng)
            .map(PySpec)
            .map_err(err)
    }

    #[getter]
    fn d(&self) -> u32 {
        self.0.ctx().d
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.ctx().n
    }

    #[getter]
    fn c(&self) -> Vec<PyCycloNum> {
        self.0.c().iter().cloned().map(PyCycloNum).collect()
    }

    #[getter]
    fn c_lambda(&self) -> Option<PyCycloNum> {
        self.0.c_lambda().cloned().map(PyCycloNum)
    }

    fn is_true_linear(&self) -> bool {
        self.0.is_true_linear()
    }

    /// `P_λ` as a string.
    fn p_lambda(&self) -> PyResult<String> {
        self.0.p_lambda().map(|p| p.to_string()).map_err(err)
    }

    /// A copy with `c_λ` solved from the Galois cocycle.
    fn solve(&self) -> PyResult<Self> {
        fake_cycles::solve_spec(self.0.clone())
            .map(PySpec)
            .map_err(err)
    }

    fn with_c_lambda(&self, c_lambda: &PyCycloNum) -> PyResult<Self> {
        self.0
            .clone()
            .with_c_lambda(c_lambda.0.clone())
            .map(PySpec)
            .map_err(err)
    }

    /// Whether every normalized period is rational.
    fn certify(&self) -> PyResult<bool> {
        Ok(fake_cycles::certify_hodge(&self.0)
            .map_err(err)?
            .is_certified())
    }

    /// `[(beta_prime, Fraction)]` when certified, else `None`.
    fn rational_periods<'py>(&self, py: Python<'py>) -> PyResult<Option<PeriodList<'py>>> {
        match fake_cycles::certify_hodge(&self.0).map_err(err)?.outcome {
            CertificateOutcome::Certified { periods } => periods
                .iter()
                .map(|(b, q)| Ok((b.entries().to_vec(), fraction(py, q)?)))
                .collect::<PyResult<Vec<_>>>()
                .map(Some),
            CertificateOutcome::Irrational { .. } => Ok(None),
        }
    }

    fn galois_invariant(&self) -> PyResult<bool> {
        fake_cycles::galois_invariance(&self.0).map_err(err)
    }

    fn tangent_codim(&self) -> PyResult<u64> {
        tangent::tangent_codim(&self.0).map_err(err)
    }

    fn expected_codim(&self) -> u64 {
        tangent::expected_codim(self.0.ctx())
    }

    fn hilbert_function(&self) -> PyResult<Vec<u64>> {
        tangent::hilbert_function(&self.0).map_err(err)
    }

    fn is_gorenstein(&self) -> PyResult<bool> {
        Ok(tangent::gorenstein_check(&self.0)
            .map_err(err)?
            .is_gorenstein)
    }

    fn idealfake_compare(&self, e: u32) -> PyResult<bool> {
        tangent::idealfake_compare(&self.0, e).map_err(err)
    }

    /// Closed form of `q_r(ℓ_i D, ℓ_i D)` for a zero-based pair `i`.
    fn qform_closed_form(&self, pair: usize, d_poly: &str) -> PyResult<String> {
        let dp = Poly::parse(d_poly, self.0.ctx().vars(), self.0.conductor()).map_err(err)?;
        qform::qr_closed_form(pair, &dp, &self.0)
            .map(|p| p.to_string())
            .map_err(err)
    }

    /// Non-reducedness witness as a dict, or `None` for a true linear cycle.
    fn witness<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        let Some(w) = qform::nonreduced_witness(&self.0).map_err(err)? else {
            return Ok(None);
        };
        let out = PyDict::new(py);
        out.set_item("pair", w.pair)?;
        out.set_item("D", w.d_poly.to_string())?;
        out.set_item("candidate_index", w.candidate_index)?;
        out.set_item("complement_basis", w.complement_basis)?;
        let class: Vec<PyCycloNum> = w.class.into_iter().map(PyCycloNum).collect();
        out.set_item("class", PyList::new(py, class)?)?;
        Ok(Some(out))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PySpec)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        let c: Vec<String> = self.0.c().iter().map(|x| format!("'{x}'")).collect();
        format!(
            "FakeCycleSpec(d={}, n={}, c=[{}])",
            self.0.ctx().d,
            self.0.ctx().n,
            c.join(", ")
        )
    }
}

#[pyfunction]
fn hodge_number(n: u32, d: u32, p: u32, q: u32) -> PyResult<u64> {
    let ctx = FermatContext::new(n, d).map_err(err)?;
    characters::hodge_number(&ctx, p, q).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (d, n = 2))]
fn picmax(d: u32, n: u32) -> PyResult<bool> {
    Ok(characters::picmax_check(
        &FermatContext::new(n, d).map_err(err)?,
    ))
}

#[pyfunction]
fn presets() -> Vec<&'static str> {
    PRESETS.to_vec()
}

/// JSON schema of the command-line reports.
#[pyfunction]
fn report_schema() -> String {
    report::report_schema().to_string()
}

#[pyfunction]
fn min_nondividing_prime(d: u64) -> PyResult<(u64, bool)> {
    let (p, case) = characters::min_nondividing_prime(d).map_err(err)?;
    Ok((p, case == characters::PrimeCase::Exceptional))
}

#[pymodule]
fn fermat_cycles_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCycloNum>()?;
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(hodge_number, m)?)?;
    m.add_function(wrap_pyfunction!(picmax, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(report_schema, m)?)?;
    m.add_function(wrap_pyfunction!(min_nondividing_prime, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
