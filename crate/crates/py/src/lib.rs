//! Python bindings: thin wrappers over the core library, returning
//! plain dicts/lists so results drop straight into numpy/pandas.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use qcc_core::classical::{self, DeterministicStrategy};
use qcc_core::measure::cglmp_standard_settings;
use qcc_core::metrics::{self, SettingDistributions};
use qcc_core::optim::{optimize_settings, optimize_state_and_settings, SearchMode, SearchSpace};
use qcc_core::protocol::{monte_carlo, OutcomeSampler, SamplerSource};
use qcc_core::qubit;
use qcc_core::state::gamma_state;
use qcc_core::trit::Trit;

fn core_err(e: qcc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<SearchMode> {
    match mode {
        "single-alpha" => Ok(SearchMode::SingleAlpha),
        "phase-triples" => Ok(SearchMode::PhaseTriples),
        "general-bases" => Ok(SearchMode::GeneralBases),
        _ => Err(PyValueError::new_err(format!(
            "unknown mode {mode:?}; expected single-alpha, phase-triples, or general-bases"
        ))),
    }
}

fn scores_dict<'py>(py: Python<'py>, sd: &SettingDistributions) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("p_f1", metrics::p_f1(sd))?;
    d.set_item("p_f2", metrics::p_f2(sd))?;
    d.set_item("delta", metrics::delta(sd))?;
    d.set_item("i3", metrics::i3(sd))?;
    d.set_item("i2", metrics::i2(sd))?;
    Ok(d)
}

/// The state parameter maximizing I3, (sqrt(11) - sqrt(3)) / 2.
#[pyfunction]
fn gamma_star() -> f64 {
    qcc_core::state::gamma_star()
}

/// Exact scores for the gamma-state under the standard settings.
#[pyfunction]
fn exact_scores(py: Python<'_>, gamma: f64) -> PyResult<Bound<'_, PyDict>> {
    let state = gamma_state(gamma).map_err(core_err)?;
    let sd = SettingDistributions::from_quantum(&state, &cglmp_standard_settings());
    scores_dict(py, &sd)
}

/// All 81 deterministic classical strategies with their hit counts.
#[pyfunction]
fn classical_scan(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let rows = PyList::empty(py);
    for score in classical::enumerate_all() {
        let d = PyDict::new(py);
        d.set_item("a", [score.strategy.a[0].exponent(), score.strategy.a[1].exponent()])?;
        d.set_item("b", [score.strategy.b[0].exponent(), score.strategy.b[1].exponent()])?;
        d.set_item("hits_f1", score.hits_f1)?;
        d.set_item("hits_f2", score.hits_f2)?;
        d.set_item("delta", score.delta())?;
        d.set_item("p_f1", score.p_f1())?;
        rows.append(d)?;
    }
    Ok(rows)
}

/// Scores of one deterministic strategy given as exponent lists.
#[pyfunction]
fn strategy_scores(py: Python<'_>, a: [i64; 2], b: [i64; 2]) -> PyResult<Bound<'_, PyDict>> {
    let s = DeterministicStrategy::new(
        [Trit::new(a[0]), Trit::new(a[1])],
        [Trit::new(b[0]), Trit::new(b[1])],
    );
    scores_dict(py, &classical::strategy_to_distributions(&s))
}

/// Maximize I3 over measurement settings; gamma=None also optimizes
/// the state parameter.
#[pyfunction]
#[pyo3(signature = (gamma=None, mode="single-alpha", restarts=20, seed=0, tol=1e-6))]
fn optimize<'py>(
    py: Python<'py>,
    gamma: Option<f64>,
    mode: &str,
    restarts: u32,
    seed: u64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = parse_mode(mode)?;
    let result = match gamma {
        Some(g) => {
            let state = gamma_state(g).map_err(core_err)?;
            optimize_settings(&state, &SearchSpace::settings_only(mode), restarts, tol, seed)
        }
        None => optimize_state_and_settings(&SearchSpace::with_gamma(mode), restarts, tol, seed),
    }
    .map_err(core_err)?;
    let d = PyDict::new(py);
    d.set_item("best_i3", result.best_i3)?;
    d.set_item("best_delta", result.best_delta)?;
    d.set_item("gamma", result.gamma)?;
    d.set_item("params", result.params.clone())?;
    d.set_item("restarts_used", result.restarts_used)?;
    d.set_item("converged", result.converged)?;
    d.set_item("seed", result.seed)?;
    Ok(d)
}

/// Monte Carlo run of the protocol with the gamma-state quantum
/// sampler and standard settings.
#[pyfunction]
#[pyo3(signature = (gamma=None, rounds=1_000_000, seed=0))]
fn simulate(py: Python<'_>, gamma: Option<f64>, rounds: u64, seed: u64) -> PyResult<Bound<'_, PyDict>> {
    let g = gamma.unwrap_or_else(qcc_core::state::gamma_star);
    let sampler = OutcomeSampler::new(SamplerSource::Quantum {
        state: gamma_state(g).map_err(core_err)?,
        settings: cglmp_standard_settings(),
    });
    let report = monte_carlo(&sampler, rounds, seed)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let (p1, p2, delta) = qcc_core::protocol::exact_scores(&sampler);
    let d = PyDict::new(py);
    d.set_item("n_rounds", report.n_rounds)?;
    d.set_item("p_f1_hat", report.p_f1_hat)?;
    d.set_item("p_f2_hat", report.p_f2_hat)?;
    d.set_item("delta_hat", report.delta_hat)?;
    d.set_item("se_f1", report.se_f1)?;
    d.set_item("se_f2", report.se_f2)?;
    d.set_item("seed", report.seed)?;
    d.set_item("exact", (p1, p2, delta))?;
    Ok(d)
}

/// The two-qubit comparison game: classical max, quantum optimum, and
/// the gap report against the qutrit game.
#[pyfunction]
#[pyo3(signature = (restarts=20, seed=0))]
fn baseline(py: Python<'_>, restarts: u32, seed: u64) -> PyResult<Bound<'_, PyDict>> {
    let (hits, rows) = qubit::classical_max_qubit();
    let quantum = qubit::quantum_max_qubit(restarts, 1e-7, seed).map_err(core_err)?;
    let sd = SettingDistributions::from_quantum(
        &gamma_state(qcc_core::state::gamma_star()).map_err(core_err)?,
        &cglmp_standard_settings(),
    );
    let gaps = qubit::gap_comparison(metrics::delta(&sd), quantum.best_success);
    let d = PyDict::new(py);
    d.set_item("classical_max", f64::from(hits) / f64::from(rows))?;
    d.set_item("quantum_max", quantum.best_success)?;
    d.set_item("planar_max", quantum.planar_success)?;
    d.set_item("qutrit_gap", gaps.qutrit_gap)?;
    d.set_item("qubit_gap", gaps.qubit_gap)?;
    Ok(d)
}

#[pymodule]
fn qcc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma_star, m)?)?;
    m.add_function(wrap_pyfunction!(exact_scores, m)?)?;
    m.add_function(wrap_pyfunction!(classical_scan, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_scores, m)?)?;
    m.add_function(wrap_pyfunction!(optimize, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(baseline, m)?)?;
    Ok(())
}
