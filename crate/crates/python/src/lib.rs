use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::pointsep::approx::{approx_mult_add, approx_plus_k, approx_plus_one, ApproxError, ApproxParams};
use ::pointsep::exact::{exact_solve, separation_check};
use ::pointsep::instance_io::{generate as gen_instance, parse_instance, serialize_instance, Family, GenParams};
use ::pointsep::lift::LiftedInstance;
use ::pointsep::sssp::OracleKind;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn oracle(name: &str) -> PyResult<OracleKind> {
    match name {
        "auto" => Ok(OracleKind::Auto),
        "explicit" => Ok(OracleKind::Explicit),
        "rectilinear" => Ok(OracleKind::Rectilinear),
        "diskgrid" => Ok(OracleKind::DiskGrid { cell_size: None }),
        _ => Err(err(format!("unknown oracle {name:?}"))),
    }
}

/// Generate a random instance of `family` with `n` objects, as JSON text.
#[pyfunction]
#[pyo3(signature = (family, n, seed = 0))]
fn generate(family: &str, n: usize, seed: u64) -> PyResult<String> {
    let family: Family = family.parse().map_err(err)?;
    if n == 0 {
        return Err(err("n must be at least 1"));
    }
    Ok(serialize_instance(&gen_instance(family, n, seed, &GenParams::for_size(n))))
}

/// Solve an instance given as JSON text. Returns the separating objects in
/// file numbering, or `None` when no subset separates.
#[pyfunction]
#[pyo3(signature = (text, algo = "exact", epsilon = 1.0, k = 1, alpha = 1.0, seed = 0, oracle = "auto"))]
fn solve(
    text: &str,
    algo: &str,
    epsilon: f64,
    k: usize,
    alpha: f64,
    seed: u64,
    oracle: &str,
) -> PyResult<Option<Vec<usize>>> {
    let kind = self::oracle(oracle)?;
    let parsed = parse_instance(text).map_err(err)?;
    if let Some(&i) = parsed.report.trivial_separators.first() {
        return Ok(Some(vec![i]));
    }
    let inst = &parsed.instance;
    let outcome = match algo {
        "exact" => {
            let li = LiftedInstance::new(inst.clone()).map_err(err)?;
            let set = exact_solve(&li, kind).map_err(err)?.optimum;
            return Ok(set.map(|s| inst.to_original(&s.objects)));
        }
        "plus1" => approx_plus_one(inst, &ApproxParams { alpha, seed, ..ApproxParams::default() }, kind),
        "multadd" => approx_mult_add(inst, epsilon, kind),
        "plusk" => approx_plus_k(inst, k, kind),
        _ => return Err(err(format!("unknown algorithm {algo:?}"))),
    };
    match outcome {
        Ok(o) => Ok(Some(inst.to_original(&o.set.objects))),
        Err(ApproxError::Infeasible) => Ok(None),
        Err(e) => Err(err(e)),
    }
}

/// Whether the objects at `subset` (file numbering) separate s from t.
#[pyfunction]
fn is_separating(text: &str, subset: Vec<usize>) -> PyResult<bool> {
    let parsed = parse_instance(text).map_err(err)?;
    let input_count = parsed.report.input_count;
    if let Some(&i) = subset.iter().find(|&&i| i >= input_count) {
        return Err(err(format!("object {i} out of range")));
    }
    if subset.iter().any(|i| parsed.report.trivial_separators.contains(i)) {
        return Ok(true);
    }
    let inst = &parsed.instance;
    let kept: Vec<usize> = subset.iter().filter_map(|i| inst.original_index.binary_search(i).ok()).collect();
    let li = LiftedInstance::new(inst.clone()).map_err(err)?;
    Ok(separation_check(&li, &kept))
}

#[pymodule]
fn pointsep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(is_separating, m)?)?;
    Ok(())
}
