//! Python bindings for `paramod`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use paramod::characters::{achisum_bruteforce, achisum_closed, character, enumerate_characters, gauss_sum};
use paramod::eisenstein::{
    eis_epstein_rep, eis_fe_check, eis_lattice_continued, eis_residue, EisensteinParams, FeForm, Representation,
};
use paramod::epstein::{epstein_continued, EpsteinParams};
use paramod::majorant::{Mat4, SiegelPoint};
use paramod::report::{emit_report, Format};
use paramod::suites::{run_suite, SuiteConfig, SuiteName};
use paramod::symplectic::make_hp;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn chi(n: u64, index: usize) -> PyResult<paramod::characters::DirichletCharacter> {
    character(n, index).ok_or_else(|| PyValueError::new_err(format!("no character {index} mod {n}")))
}

fn params(p: u64, n: u64, kappa: u64, chi_index: usize, z: [f64; 6], s: Complex64) -> PyResult<EisensteinParams> {
    let z = SiegelPoint::from_six(z).map_err(value_err)?;
    EisensteinParams::new(p, n, kappa, chi(n, chi_index)?, z, s).map_err(value_err)
}

const II: [f64; 6] = [0.0, 0.0, 0.0, 1.0, 0.0, 1.0];

/// `(index, conductor, order, parity)` for every character mod `n`.
#[pyfunction]
fn characters(n: u64) -> Vec<(usize, u64, u64, i64)> {
    enumerate_characters(n).iter().map(|c| (c.index(), c.conductor(), c.order(), c.parity())).collect()
}

#[pyfunction]
#[pyo3(name = "gauss_sum")]
fn py_gauss_sum(n: u64, index: usize) -> PyResult<Complex64> {
    Ok(gauss_sum(&chi(n, index)?))
}

/// `(brute_force, closed_form)` for `A_{χ,ν}(m)`.
#[pyfunction]
fn achisum(n: u64, index: usize, nu: u64, m: i64) -> PyResult<(Complex64, Complex64)> {
    if nu == 0 || !n.is_multiple_of(nu) {
        return Err(PyValueError::new_err(format!("nu = {nu} does not divide N = {n}")));
    }
    let c = chi(n, index)?;
    Ok((achisum_bruteforce(&c, nu, m), achisum_closed(&c, nu, m)))
}

/// Completed `ζ*(s, u, v; Q)` and its tail bound.
#[pyfunction]
#[pyo3(signature = (form, s, u = [0.0; 4], v = [0.0; 4]))]
fn epstein(form: [[f64; 4]; 4], s: Complex64, u: [f64; 4], v: [f64; 4]) -> PyResult<(Complex64, f64)> {
    let q: Mat4 = form;
    let r = epstein_continued(&EpsteinParams::new(q, u, v, s)).map_err(value_err)?;
    Ok((r.value, r.tail_bound))
}

/// Completed Eisenstein series; `rep` is `lattice`, `second` or `third`.
#[pyfunction]
#[pyo3(signature = (p, n, kappa, chi_index, s, z = II, rep = "second"))]
fn eisenstein(
    p: u64,
    n: u64,
    kappa: u64,
    chi_index: usize,
    s: Complex64,
    z: [f64; 6],
    rep: &str,
) -> PyResult<Complex64> {
    let prm = params(p, n, kappa, chi_index, z, s)?;
    let r = match rep {
        "lattice" => eis_lattice_continued(&prm),
        "second" => eis_epstein_rep(&prm, Representation::Second),
        "third" => eis_epstein_rep(&prm, Representation::Third),
        other => return Err(PyValueError::new_err(format!("unknown representation {other}"))),
    };
    Ok(r.map_err(value_err)?.value)
}

/// `(numeric, expected)` residue at `s = 2`.
#[pyfunction]
#[pyo3(signature = (p, n, kappa, chi_index, z = II))]
fn residue(p: u64, n: u64, kappa: u64, chi_index: usize, z: [f64; 6]) -> PyResult<(f64, f64)> {
    let prm = params(p, n, kappa, chi_index, z, Complex64::new(2.6, 0.0))?;
    let r = eis_residue(&prm).map_err(value_err)?;
    Ok((r.numeric, r.expected))
}

/// `(lhs, rhs, abs_err)` of the functional equation.
#[pyfunction]
#[pyo3(signature = (p, n, kappa, chi_index, s, z = II, corollary = false))]
fn fe_check(
    p: u64,
    n: u64,
    kappa: u64,
    chi_index: usize,
    s: Complex64,
    z: [f64; 6],
    corollary: bool,
) -> PyResult<(Complex64, Complex64, f64)> {
    let prm = params(p, n, kappa, chi_index, z, s)?;
    let form = if corollary { FeForm::Corollary } else { FeForm::Proposition };
    let c = eis_fe_check(&prm, form).map_err(value_err)?;
    Ok((c.lhs, c.rhs, c.abs_err))
}

/// `H_p(N)` as 16 space-separated entries.
#[pyfunction]
fn hp_matrix(p: u64, n: u64) -> PyResult<String> {
    Ok(make_hp(p, n).map_err(value_err)?.to_text())
}

/// Run a named suite and return the JSON report.
#[pyfunction]
#[pyo3(signature = (name, max_modulus = None, seed = None))]
fn suite(py: Python<'_>, name: &str, max_modulus: Option<u64>, seed: Option<u64>) -> PyResult<String> {
    let which = parse_suite(name).ok_or_else(|| PyValueError::new_err(format!("unknown suite {name}")))?;
    let cfg = SuiteConfig { max_modulus, seed, ..SuiteConfig::default() };
    let report = py.detach(|| run_suite(which, &cfg)).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(emit_report(&report, Format::Json))
}

fn parse_suite(name: &str) -> Option<SuiteName> {
    [
        SuiteName::Group,
        SuiteName::Chars,
        SuiteName::Achisum,
        SuiteName::Epstein,
        SuiteName::Eisenstein,
        SuiteName::Fe,
        SuiteName::Smartsum,
        SuiteName::Diff,
        SuiteName::Series,
        SuiteName::All,
    ]
    .into_iter()
    .find(|s| s.as_str() == name)
}

#[pymodule]
fn pyparamod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(characters, m)?)?;
    m.add_function(wrap_pyfunction!(py_gauss_sum, m)?)?;
    m.add_function(wrap_pyfunction!(achisum, m)?)?;
    m.add_function(wrap_pyfunction!(epstein, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein, m)?)?;
    m.add_function(wrap_pyfunction!(residue, m)?)?;
    m.add_function(wrap_pyfunction!(fe_check, m)?)?;
    m.add_function(wrap_pyfunction!(hp_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    Ok(())
}
