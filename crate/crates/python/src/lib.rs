//! Python bindings. Equations, solutions and instances cross the boundary as
//! JSON text or as the equivalent dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde_json::Value;

use sphereq::dispatch::{self, Command, Reduction, Verb};
use sphereq::json;
use sphereq::mat2::{self, Mat2};
use sphereq::{Rng, SphericalEquation};

create_exception!(sphereq, SphereqError, PyException);

fn err(e: sphereq::Error) -> PyErr {
    SphereqError::new_err(e.to_string())
}

/// Accepts a JSON string or any object `json.dumps` can serialize.
fn text_of(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.cast::<PyString>() {
        return Ok(s.to_str()?.to_string());
    }
    let json = obj.py().import("json")?;
    json.call_method1("dumps", (obj,))?.extract()
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn run<'py>(py: Python<'py>, cmd: Command) -> PyResult<Bound<'py, PyAny>> {
    let v = py.detach(|| dispatch::dispatch(&cmd)).map_err(err)?;
    to_py(py, &v)
}

fn command(verb: Verb, inputs: Vec<String>) -> Command {
    Command::new(verb, inputs)
}

/// Decides solvability. Returns `{"solvable", "method"}`.
#[pyfunction]
#[pyo3(signature = (equation, force_oracle = false))]
fn decide<'py>(equation: &Bound<'py, PyAny>, force_oracle: bool) -> PyResult<Bound<'py, PyAny>> {
    let mut cmd = command(Verb::Decide, vec![text_of(equation)?]);
    cmd.force_oracle = force_oracle;
    run(equation.py(), cmd)
}

/// Decides and, when solvable, adds verified conjugators under `"solution"`.
#[pyfunction]
#[pyo3(signature = (equation, seed = 0, force_oracle = false))]
fn solve<'py>(equation: &Bound<'py, PyAny>, seed: u64, force_oracle: bool) -> PyResult<Bound<'py, PyAny>> {
    let mut cmd = command(Verb::Solve, vec![text_of(equation)?]);
    cmd.seed = seed;
    cmd.force_oracle = force_oracle;
    run(equation.py(), cmd)
}

#[pyfunction]
fn verify(equation: &Bound<'_, PyAny>, solution: &Bound<'_, PyAny>) -> PyResult<bool> {
    let cmd = command(Verb::Verify, vec![text_of(equation)?, text_of(solution)?]);
    let v = dispatch::dispatch(&cmd).map_err(err)?;
    Ok(v["verified"].as_bool().unwrap_or(false))
}

/// Equation of a hardness reduction. `source` is "3part", "partition" or "xcover".
#[pyfunction]
#[pyo3(signature = (source, instance, alternating = false, m = None))]
fn reduce<'py>(
    source: &str,
    instance: &Bound<'py, PyAny>,
    alternating: bool,
    m: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let from = match source {
        "3part" => Reduction::ThreePartition,
        "partition" => Reduction::Partition,
        "xcover" => Reduction::XCover,
        other => return Err(PyValueError::new_err(format!("unknown reduction source {other:?}"))),
    };
    let mut cmd = command(Verb::Reduce, vec![text_of(instance)?]);
    cmd.from = Some(from);
    cmd.alternating = alternating;
    cmd.m = m;
    run(instance.py(), cmd)
}

/// Saturation length of a group, or `None` if it has none.
#[pyfunction]
fn saturation_length(group: &Bound<'_, PyAny>) -> PyResult<Option<u64>> {
    let v = dispatch::dispatch(&command(Verb::Saturation, vec![text_of(group)?])).map_err(err)?;
    Ok(v["saturation_length"].as_u64())
}

/// An equation over one of the supported group families.
#[pyclass(name = "Equation", frozen)]
struct PyEquation {
    inner: SphericalEquation,
}

#[pymethods]
impl PyEquation {
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        let v = json::parse(&text_of(spec)?).map_err(err)?;
        Ok(PyEquation { inner: json::equation_from_json(&v).map_err(err)? })
    }

    #[getter]
    fn num_constants(&self) -> usize {
        self.inner.num_constants()
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.group().family().name()
    }

    #[pyo3(signature = (force_oracle = false))]
    fn decide(&self, py: Python<'_>, force_oracle: bool) -> PyResult<bool> {
        let v = py.detach(|| dispatch::decide(&self.inner, force_oracle)).map_err(err)?;
        Ok(v.solvable)
    }

    /// Conjugators as JSON-shaped Python values, or `None`.
    #[pyo3(signature = (seed = 0, force_oracle = false))]
    fn solve<'py>(&self, py: Python<'py>, seed: u64, force_oracle: bool) -> PyResult<Option<Bound<'py, PyAny>>> {
        let v = py
            .detach(|| dispatch::solve(&self.inner, &mut Rng::new(seed), force_oracle))
            .map_err(err)?;
        v.solution.map(|s| to_py(py, &json::solution_to_json(&s))).transpose()
    }

    fn verify(&self, solution: &Bound<'_, PyAny>) -> PyResult<bool> {
        let v = json::parse(&text_of(solution)?).map_err(err)?;
        let sol = json::solution_from_json(self.inner.group(), &v).map_err(err)?;
        sphereq::verify(&self.inner, &sol).map_err(err)
    }

    fn to_json(&self) -> String {
        json::equation_to_json(&self.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Equation({})", self.to_json())
    }
}

/// A 2×2 matrix over ℤ_p.
#[pyclass(name = "Matrix", frozen)]
struct PyMatrix {
    inner: Mat2,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(p: u64, rows: [[i64; 2]; 2]) -> PyResult<Self> {
        if p < 2 {
            return Err(PyValueError::new_err("modulus must be at least 2"));
        }
        Ok(PyMatrix { inner: Mat2::from_signed(p, rows) })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.modulus()
    }

    #[getter]
    fn rows(&self) -> [[u64; 2]; 2] {
        self.inner.rows()
    }

    fn det(&self) -> u64 {
        self.inner.det()
    }

    fn trace(&self) -> u64 {
        self.inner.trace()
    }

    fn inverse(&self) -> PyResult<PyMatrix> {
        self.inner
            .inv()
            .map(|inner| PyMatrix { inner })
            .ok_or_else(|| PyValueError::new_err("matrix is singular"))
    }

    /// `z⁻¹·self·z`
    fn conj(&self, z: &PyMatrix) -> PyResult<PyMatrix> {
        self.same_field(z)?;
        Ok(PyMatrix { inner: self.inner.conj(&z.inner) })
    }

    /// Conjugacy type, canonical form and basis.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = mat2::classify(&self.inner).map_err(err)?;
        to_py(py, &json::classification_to_json(&self.inner, &t))
    }

    fn is_conjugate_to(&self, other: &PyMatrix) -> PyResult<bool> {
        self.same_field(other)?;
        mat2::conjugate_check(&self.inner, &other.inner).map_err(err)
    }

    fn __mul__(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        self.same_field(other)?;
        Ok(PyMatrix { inner: self.inner.mul(&other.inner) })
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Matrix(p={}, rows={:?})", self.inner.modulus(), self.inner.rows())
    }
}

impl PyMatrix {
    fn same_field(&self, o: &PyMatrix) -> PyResult<()> {
        if self.inner.modulus() == o.inner.modulus() {
            Ok(())
        } else {
            Err(PyValueError::new_err("matrices over different moduli"))
        }
    }
}

#[pymodule(name = "sphereq")]
fn sphereq_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SphereqError", m.py().get_type::<SphereqError>())?;
    m.add_class::<PyEquation>()?;
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(saturation_length, m)?)?;
    Ok(())
}
