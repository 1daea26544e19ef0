//! Maximization of I3 over measurement settings and, optionally, the
//! state parameter γ.
//!
//! Three nested search spaces are available: the single-alpha Fourier
//! family (4 parameters), full phase triples with the first phase
//! gauge-fixed to zero (8 parameters), and fully general bases built
//! from parameterized unitaries (32 parameters). Restarts are seeded
//! from a counter-based generator so runs are reproducible bit-for-bit.

pub mod nelder_mead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{
    basis_from_unitary, fourier_basis_alice, fourier_basis_bob, unitary_from_params, GameSettings,
    PhaseTriple,
};
use crate::metrics::{i3, SettingDistributions};
use crate::rng::CounterRng;
use crate::state::{gamma_state, PureState};
use nelder_mead::NelderMead;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    SingleAlpha,
    PhaseTriples,
    GeneralBases,
}

impl SearchMode {
    pub fn param_count(self) -> usize {
        match self {
            SearchMode::SingleAlpha => 4,
            SearchMode::PhaseTriples => 8,
            SearchMode::GeneralBases => 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSpace {
    pub mode: SearchMode,
    pub optimize_gamma: bool,
    pub gamma_bounds: (f64, f64),
}

impl SearchSpace {
    pub fn settings_only(mode: SearchMode) -> SearchSpace {
        SearchSpace {
            mode,
            optimize_gamma: false,
            gamma_bounds: (0.0, 4.0),
        }
    }

    pub fn with_gamma(mode: SearchMode) -> SearchSpace {
        SearchSpace {
            mode,
            optimize_gamma: true,
            gamma_bounds: (0.0, 4.0),
        }
    }

    pub fn param_count(&self) -> usize {
        self.mode.param_count() + usize::from(self.optimize_gamma)
    }

    fn clamp_gamma(&self, g: f64) -> f64 {
        g.clamp(self.gamma_bounds.0, self.gamma_bounds.1)
    }
}

/// Builds the four bases from a flat parameter vector.
pub fn settings_from_params(mode: SearchMode, params: &[f64]) -> GameSettings {
    match mode {
        SearchMode::SingleAlpha => GameSettings {
            a0: fourier_basis_alice(PhaseTriple::from_alpha(params[0])),
            a1: fourier_basis_alice(PhaseTriple::from_alpha(params[1])),
            b0: fourier_basis_bob(PhaseTriple::from_alpha(params[2])),
            b1: fourier_basis_bob(PhaseTriple::from_alpha(params[3])),
        },
        SearchMode::PhaseTriples => GameSettings {
            a0: fourier_basis_alice(PhaseTriple(0.0, params[0], params[1])),
            a1: fourier_basis_alice(PhaseTriple(0.0, params[2], params[3])),
            b0: fourier_basis_bob(PhaseTriple(0.0, params[4], params[5])),
            b1: fourier_basis_bob(PhaseTriple(0.0, params[6], params[7])),
        },
        SearchMode::GeneralBases => {
            let u = |chunk: &[f64]| {
                let mut p = [0.0; 8];
                p.copy_from_slice(chunk);
                basis_from_unitary(&unitary_from_params(&p))
                    .expect("parameterized unitary yields a valid basis")
            };
            GameSettings {
                a0: u(&params[0..8]),
                a1: u(&params[8..16]),
                b0: u(&params[16..24]),
                b1: u(&params[24..32]),
            }
        }
    }
}

/// The optimizer's objective: I3 of the given state under the settings
/// encoded by `params` (settings parameters only; γ handled separately).
pub fn objective(params: &[f64], mode: SearchMode, state: &PureState) -> f64 {
    let settings = settings_from_params(mode, params);
    i3(&SettingDistributions::from_quantum(state, &settings))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_i3: f64,
    pub best_delta: f64,
    pub mode: SearchMode,
    /// Settings parameters at the optimum (γ excluded).
    pub params: Vec<f64>,
    pub gamma: Option<f64>,
    pub restarts_used: u32,
    pub converged: bool,
    pub seed: u64,
}

impl OptimizationResult {
    pub fn settings(&self) -> GameSettings {
        settings_from_params(self.mode, &self.params)
    }
}

const RESTART_AGREEMENT_TOL: f64 = 1e-4;

fn run_restarts<F>(
    space: &SearchSpace,
    restarts: u32,
    tol: f64,
    seed: u64,
    mut eval: F,
) -> (Vec<f64>, f64, bool)
where
    F: FnMut(&[f64]) -> f64,
{
    let n = space.param_count();
    let root = CounterRng::new(seed, 0);
    let mut best_per_restart: Vec<f64> = Vec::with_capacity(restarts as usize);
    let mut best_x: Option<Vec<f64>> = None;
    let mut best_f = f64::INFINITY;

    // The I3 landscape has a handful of local maxima with sizable
    // basins, so one simplex run per restart is not reliable. Each
    // restart races several candidate starts through a coarse pass,
    // then polishes the winner with fresh, tighter simplexes.
    const CANDIDATE_STARTS: usize = 6;
    const POLISH_ROUNDS: usize = 3;

    for r in 0..restarts {
        let mut rng = root.split(u64::from(r) + 1);
        let coarse = NelderMead {
            step: 0.4,
            f_tol: tol * 1e-2,
            max_iters: 0,
        };
        let mut winner: Option<(Vec<f64>, f64)> = None;
        for _ in 0..CANDIDATE_STARTS {
            let mut x0 = vec![0.0; n];
            let mut idx = 0;
            if space.optimize_gamma {
                x0[0] = space.gamma_bounds.0
                    + rng.next_f64() * (space.gamma_bounds.1 - space.gamma_bounds.0);
                idx = 1;
            }
            for v in x0.iter_mut().skip(idx) {
                *v = (rng.next_f64() - 0.5) * 2.0 * std::f64::consts::PI;
            }
            let res = coarse.minimize(&x0, &mut eval);
            if winner.as_ref().map_or(true, |(_, f)| res.f < *f) {
                winner = Some((res.x, res.f));
            }
        }
        let (mut x, mut f) = winner.expect("at least one candidate");
        for round in 0..POLISH_ROUNDS {
            let fine = NelderMead {
                step: if round == 0 { 0.05 } else { 0.01 },
                f_tol: tol * 1e-4,
                max_iters: 0,
            }
            .minimize(&x, &mut eval);
            let improved = f - fine.f;
            x = fine.x;
            f = fine.f;
            if improved < tol * 1e-3 {
                break;
            }
        }

        best_per_restart.push(f);
        if f < best_f {
            best_f = f;
            best_x = Some(x);
        }
    }

    best_per_restart.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let converged = best_per_restart.len() >= 2
        && (best_per_restart[1] - best_per_restart[0]).abs() < RESTART_AGREEMENT_TOL;
    (best_x.expect("at least one restart"), best_f, converged)
}

/// Maximizes I3 over measurement settings for a fixed state.
pub fn optimize_settings(
    state: &PureState,
    space: &SearchSpace,
    restarts: u32,
    tol: f64,
    seed: u64,
) -> Result<OptimizationResult> {
    if restarts == 0 {
        return Err(Error::InvalidConfig("restarts must be >= 1".into()));
    }
    if space.optimize_gamma {
        return Err(Error::InvalidConfig(
            "use optimize_state_and_settings for joint gamma search".into(),
        ));
    }
    let (x, f, converged) = run_restarts(space, restarts, tol, seed, |p| {
        -objective(p, space.mode, state)
    });
    let best_i3 = -f;
    Ok(OptimizationResult {
        best_i3,
        best_delta: best_i3 / 4.0,
        mode: space.mode,
        params: x,
        gamma: None,
        restarts_used: restarts,
        converged,
        seed,
    })
}

/// Joint maximization of I3 over γ and the measurement settings.
pub fn optimize_state_and_settings(
    space: &SearchSpace,
    restarts: u32,
    tol: f64,
    seed: u64,
) -> Result<OptimizationResult> {
    if restarts == 0 {
        return Err(Error::InvalidConfig("restarts must be >= 1".into()));
    }
    if !space.optimize_gamma {
        return Err(Error::InvalidConfig(
            "search space does not include gamma".into(),
        ));
    }
    let (x, f, converged) = run_restarts(space, restarts, tol, seed, |p| {
        let gamma = space.clamp_gamma(p[0]);
        let state = gamma_state(gamma).expect("clamped gamma is valid");
        -objective(&p[1..], space.mode, &state)
    });
    let best_i3 = -f;
    let gamma = space.clamp_gamma(x[0]);
    Ok(OptimizationResult {
        best_i3,
        best_delta: best_i3 / 4.0,
        mode: space.mode,
        params: x[1..].to_vec(),
        gamma: Some(gamma),
        restarts_used: restarts,
        converged,
        seed,
    })
}
