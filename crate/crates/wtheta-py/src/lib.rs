//! Python bindings: the model catalog, the theta-series character pipeline,
//! the independent Lie-side constructions, and the verification suites.
//!
//! Exact rationals cross the boundary as strings ("a/b", or "a" for
//! integers), matching the JSON documents of the CLI.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wtheta::models::{
    self, characters_document, lie_document, rat_string, Check, MODEL_NAMES,
};
use wtheta::Error;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownModel(_) | Error::ModelNotSupported(_, _) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// Static data of one model: central charge, weight, and conformal
/// dimensions, all exact.
#[pyclass(frozen)]
struct Model {
    spec: models::ModelSpec,
}

#[pymethods]
impl Model {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(Model { spec: models::model(name).map_err(to_py_err)? })
    }

    #[getter]
    fn name(&self) -> &str {
        self.spec.name
    }

    #[getter]
    fn l(&self) -> u64 {
        self.spec.l
    }

    #[getter]
    fn k(&self) -> i64 {
        self.spec.k
    }

    #[getter]
    fn c(&self) -> String {
        rat_string(&self.spec.c)
    }

    #[getter]
    fn c_tilde(&self) -> String {
        rat_string(&self.spec.c_tilde())
    }

    #[getter]
    fn delta(&self) -> String {
        rat_string(&self.spec.delta())
    }

    #[getter]
    fn h_values(&self) -> Vec<String> {
        self.spec.h_values.iter().map(rat_string).collect()
    }

    /// Solve the model and return the character document as JSON text.
    #[pyo3(signature = (terms = 100))]
    fn characters(&self, py: Python<'_>, terms: usize) -> PyResult<String> {
        let name = self.spec.name;
        py.allow_threads(move || {
            let run = models::run_model(name, terms).map_err(to_py_err)?;
            Ok(serde_json::to_string_pretty(&characters_document(&run)).unwrap())
        })
    }

    /// The independent Lie-theoretic characters as JSON text; raises
    /// ValueError for W28, which has no practical Lie-side construction.
    #[pyo3(signature = (terms = 100))]
    fn lie_characters(&self, py: Python<'_>, terms: usize) -> PyResult<String> {
        let name = self.spec.name;
        py.allow_threads(move || {
            let chars = models::lie_characters(name, terms).map_err(to_py_err)?;
            Ok(serde_json::to_string_pretty(&lie_document(name, &chars).map_err(to_py_err)?)
                .unwrap())
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(name={:?}, l={}, k={}, c={})",
            self.spec.name,
            self.spec.l,
            self.spec.k,
            rat_string(&self.spec.c)
        )
    }
}

/// The five model names in catalog order.
#[pyfunction]
fn model_names() -> Vec<&'static str> {
    MODEL_NAMES.to_vec()
}

/// Spherical polynomial counts and theta span ranks, as
/// [(model, spherical_dim, rank)].
#[pyfunction]
fn dims(py: Python<'_>) -> PyResult<Vec<(String, usize, usize)>> {
    py.allow_threads(|| models::dims_table().map_err(to_py_err))
}

fn checks_out(checks: Vec<Check>) -> Vec<(String, bool, String)> {
    checks.into_iter().map(|c| (c.name, c.pass, c.detail)).collect()
}

/// Run a verification suite ("algebraic", "dims", "characters", "oracle" or
/// "numeric"); returns [(name, passed, detail)].
#[pyfunction]
#[pyo3(signature = (suite, terms = None))]
fn verify(py: Python<'_>, suite: &str, terms: Option<usize>) -> PyResult<Vec<(String, bool, String)>> {
    let suite = suite.to_string();
    py.allow_threads(move || {
        let checks = match suite.as_str() {
            "algebraic" => models::suite_algebraic(),
            "dims" => models::suite_dims(),
            "characters" => models::suite_characters(terms.unwrap_or(100)),
            "oracle" => models::suite_oracle(terms.unwrap_or(60)),
            "numeric" => models::suite_numeric(terms.unwrap_or(60), (0.0, 1.0)),
            other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
        }
        .map_err(to_py_err)?;
        Ok(checks_out(checks))
    })
}

#[pymodule]
fn wtheta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(model_names, m)?)?;
    m.add_function(wrap_pyfunction!(dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
