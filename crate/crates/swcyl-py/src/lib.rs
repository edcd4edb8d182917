//! Python bindings: kernel coefficients, the Bessel oracle and the verify suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::swcyl::config::RunConfig;
use ::swcyl::swkernel::{builtin, l_coeff as kernel_l_coeff, BUILTIN_NAMES};
use ::swcyl::verify::run_suites;
use ::swcyl::SwError;

fn py_err(e: SwError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `L_n(j)` of a builtin kernel as `(re, im)`.
#[pyfunction]
fn l_coeff(kernel: &str, n: i64, j: f64) -> PyResult<(f64, f64)> {
    let a = builtin(kernel).map_err(py_err)?;
    let l = kernel_l_coeff(&a, n, j);
    Ok((l.re, l.im))
}

#[pyfunction]
fn bessel_j(n: i64, x: f64) -> f64 {
    ::swcyl::bessel::bessel_j(n, x)
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    BUILTIN_NAMES.to_vec()
}

/// Run every suite for a config given as text; returns one JSON report per entry.
#[pyfunction]
#[pyo3(signature = (config_text = ""))]
fn verify(config_text: &str) -> PyResult<Vec<String>> {
    let cfg = RunConfig::parse(config_text, None).map_err(py_err)?;
    let a = cfg.symbol().map_err(py_err)?;
    let mut reports = run_suites(&a, &cfg.suite_settings()).map_err(py_err)?;
    cfg.apply_tolerances(&mut reports);
    Ok(reports.iter().map(|r| r.to_json_line()).collect())
}

#[pymodule]
fn swcyl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(l_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
