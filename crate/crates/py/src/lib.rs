//! Python bindings: expression evaluation, single residuals and suite runs.

use coldual::harness::config::RawConfig;
use coldual::harness::{parse_expression, run_suite};
use coldual::{grmat, Colour, Error, Model, ParamPoint};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PySyntaxError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Syntax { .. } => PySyntaxError::new_err(e.to_string()),
        Error::Config { .. } | Error::UnknownIdentifier(_) | Error::NonGroupLikePower(_) | Error::ZeroColour(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn model(s: &str) -> PyResult<Model> {
    s.parse().map_err(py_err)
}

fn colour(s: &str) -> PyResult<Colour> {
    s.parse().map_err(py_err)
}

/// Normal form of `expr` at (theta, phi).
#[pyfunction]
#[pyo3(signature = (model_name, expr, theta = Complex64::new(0.5, 0.0), phi = Complex64::new(0.25, 0.0)))]
fn eval_expr(model_name: &str, expr: &str, theta: Complex64, phi: Complex64) -> PyResult<String> {
    let pt = ParamPoint::new(model(model_name)?, theta, phi);
    parse_expression(expr, &pt).map(|v| v.to_string()).map_err(py_err)
}

/// Coloured Yang–Baxter residual; colours are rational strings such as "1/2".
#[pyfunction]
fn ybe_residual(model_name: &str, theta: Complex64, phi: Complex64, lam: &str, mu: &str, nu: &str) -> PyResult<f64> {
    let m = model(model_name)?;
    let pt = ParamPoint::new(m, theta, phi);
    grmat::coloured_ybe_residual(m, &pt, colour(lam)?, colour(mu)?, colour(nu)?).map_err(py_err)
}

/// Runs suites from `key = value` config text; returns (all_pass, report).
#[pyfunction]
fn verify(config: &str) -> PyResult<(bool, String)> {
    let cfg = RawConfig::parse(config).and_then(|r| r.build()).map_err(py_err)?;
    let report = run_suite(&cfg).map_err(py_err)?;
    Ok((report.all_pass(), report.to_text()))
}

#[pymodule]
fn pycoldual(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(eval_expr, m)?)?;
    m.add_function(wrap_pyfunction!(ybe_residual, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
