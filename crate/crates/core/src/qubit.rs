//! The two-qubit comparison game: classical bound 3/4, quantum optimum
//! cos²(π/8), and the gap report against the qutrit game.
//!
//! Outcomes ±1 are exponents mod 2 of (−1), so the scoring reuses the
//! same product-exponent counting as the qutrit game.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{phase, zero, CMat};
use crate::metrics::row_success;
use crate::optim::nelder_mead::NelderMead;
use crate::rng::CounterRng;
use crate::state::{born_joint_generic, Basis, JointDist};

/// ±1-valued input or outcome, stored as the exponent of (−1).
pub type Sign = i8;

/// A deterministic classical strategy for the qubit game: each party
/// maps its bit input to a ±1 answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitStrategy {
    /// Exponents mod 2 of Alice's answers for x0 = 0, 1.
    pub a: [u8; 2],
    pub b: [u8; 2],
}

/// f(x, y) = x1 · y1 · (−1)^(x0·y0) with x1, y1 ∈ {−1, +1}.
pub fn f_qubit(x0: u8, x1: Sign, y0: u8, y1: Sign) -> Sign {
    debug_assert!(x1 == 1 || x1 == -1);
    debug_assert!(y1 == 1 || y1 == -1);
    let sign = if x0 * y0 == 1 { -1 } else { 1 };
    x1 * y1 * sign
}

/// Success rows of a deterministic strategy: how many of the four
/// (x0, y0) rows satisfy a(x0)·b(y0) = (−1)^(x0·y0). As in the qutrit
/// game the x1·y1 factor cancels against the relayed messages.
pub fn bit_strategy_hits(s: &BitStrategy) -> u8 {
    let mut hits = 0;
    for x0 in 0..2usize {
        for y0 in 0..2usize {
            if (s.a[x0] + s.b[y0]) % 2 == ((x0 * y0) % 2) as u8 {
                hits += 1;
            }
        }
    }
    hits
}

/// Exhaustive classical maximum: exactly 3/4.
pub fn classical_max_qubit() -> (u8, u8) {
    let mut best = 0;
    for a0 in 0..2u8 {
        for a1 in 0..2u8 {
            for b0 in 0..2u8 {
                for b1 in 0..2u8 {
                    let s = BitStrategy {
                        a: [a0, a1],
                        b: [b0, b1],
                    };
                    best = best.max(bit_strategy_hits(&s));
                }
            }
        }
    }
    (best, 4)
}

/// The maximally entangled two-qubit amplitude matrix.
fn bell_state() -> CMat<2> {
    let mut amps = zero::<2>();
    let v = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0][0] = v;
    amps[1][1] = v;
    amps
}

/// Planar (real) measurement basis at angle θ.
fn planar_basis(theta: f64) -> Basis<2> {
    let (s, c) = theta.sin_cos();
    Basis::new([
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
    ])
    .expect("rotation is orthonormal")
}

/// General qubit basis from (θ, φ), covering all bases up to
/// per-vector global phases.
fn general_basis(theta: f64, phi: f64) -> Basis<2> {
    let (s, c) = theta.sin_cos();
    Basis::new([
        [Complex64::new(c, 0.0), phase(phi) * s],
        [-phase(-phi) * s, Complex64::new(c, 0.0)],
    ])
    .expect("parameterized qubit basis is orthonormal")
}

fn game_success(bases: [&Basis<2>; 4]) -> f64 {
    let [a0, a1, b0, b1] = bases;
    let amps = bell_state();
    let dists: [JointDist<2>; 4] = [
        born_joint_generic(&amps, a0, b0),
        born_joint_generic(&amps, a0, b1),
        born_joint_generic(&amps, a1, b0),
        born_joint_generic(&amps, a1, b1),
    ];
    // Rows (x0,y0) = (0,0), (0,1), (1,0), (1,1); targets (x0·y0) mod 2.
    row_success(
        [&dists[0], &dists[1], &dists[2], &dists[3]],
        [0, 0, 0, 1],
    )
}

/// Success probability of planar angles (θ_A0, θ_A1, θ_B0, θ_B1).
pub fn planar_success(angles: &[f64; 4]) -> f64 {
    game_success([
        &planar_basis(angles[0]),
        &planar_basis(angles[1]),
        &planar_basis(angles[2]),
        &planar_basis(angles[3]),
    ])
}

fn general_success(p: &[f64; 8]) -> f64 {
    game_success([
        &general_basis(p[0], p[1]),
        &general_basis(p[2], p[3]),
        &general_basis(p[4], p[5]),
        &general_basis(p[6], p[7]),
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct QubitOptimum {
    pub best_success: f64,
    /// Best value found in the planar search.
    pub planar_success: f64,
    /// Best value found in the confirmation pass over general bases.
    pub general_success: f64,
    pub converged: bool,
    pub seed: u64,
}

/// Maximizes the success probability over measurement bases of the
/// maximally entangled state. Planar angles first, then general bases
/// as a confirmation pass.
pub fn quantum_max_qubit(restarts: u32, tol: f64, seed: u64) -> Result<QubitOptimum> {
    if restarts == 0 {
        return Err(Error::InvalidConfig("restarts must be >= 1".into()));
    }
    let root = CounterRng::new(seed, 0);
    let run = |dim: usize, eval: &dyn Fn(&[f64]) -> f64, stream_base: u64| -> f64 {
        let mut best = f64::NEG_INFINITY;
        for r in 0..restarts {
            let mut rng = root.split(stream_base + u64::from(r));
            let x0: Vec<f64> = (0..dim)
                .map(|_| (rng.next_f64() - 0.5) * 2.0 * std::f64::consts::PI)
                .collect();
            let nm = NelderMead {
                step: 0.3,
                f_tol: tol * 1e-4,
                max_iters: 0,
            };
            let res = nm.minimize(&x0, |p| -eval(p));
            best = best.max(-res.f);
        }
        best
    };

    let planar = run(
        4,
        &|p: &[f64]| planar_success(&[p[0], p[1], p[2], p[3]]),
        1,
    );
    let general = run(
        8,
        &|p: &[f64]| {
            let mut arr = [0.0; 8];
            arr.copy_from_slice(p);
            general_success(&arr)
        },
        1000,
    );
    let best = planar.max(general);
    Ok(QubitOptimum {
        best_success: best,
        planar_success: planar,
        general_success: general,
        converged: (planar - general).abs() < 1e-3,
        seed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub qutrit_delta_quantum: f64,
    pub qutrit_delta_classical: f64,
    pub qutrit_gap: f64,
    pub qubit_p_quantum: f64,
    pub qubit_p_classical: f64,
    pub qubit_gap: f64,
}

/// Gap comparison between the two games, recomputed from stored optima
/// (no re-optimization).
pub fn gap_comparison(qutrit_delta_quantum: f64, qubit_p_quantum: f64) -> GapReport {
    let qutrit_delta_classical = 0.5;
    let qubit_p_classical = 0.75;
    GapReport {
        qutrit_delta_quantum,
        qutrit_delta_classical,
        qutrit_gap: qutrit_delta_quantum - qutrit_delta_classical,
        qubit_p_quantum,
        qubit_p_classical,
        qubit_gap: qubit_p_quantum - qubit_p_classical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn f_qubit_examples() {
        assert_eq!(f_qubit(0, 1, 0, 1), 1);
        assert_eq!(f_qubit(1, 1, 1, -1), 1);
        assert_eq!(f_qubit(1, -1, 1, 1), 1);
    }

    #[test]
    fn classical_max_is_three_quarters_exact() {
        assert_eq!(classical_max_qubit(), (3, 4));
    }

    #[test]
    fn constant_strategy_hits_three_rows() {
        let s = BitStrategy { a: [0; 2], b: [0; 2] };
        assert_eq!(bit_strategy_hits(&s), 3);
    }

    #[test]
    fn alternating_alice_hits_three_rows() {
        // a(x0) = (−1)^x0, b ≡ +1: rows (0,0), (0,1), (1,1) score.
        let s = BitStrategy { a: [0, 1], b: [0; 2] };
        assert_eq!(bit_strategy_hits(&s), 3);
    }

    #[test]
    fn anti_aligned_bob_hits_one_row() {
        // a ≡ +1, b ≡ −1 misses every row except (1,1).
        let s = BitStrategy { a: [0; 2], b: [1; 2] };
        assert_eq!(bit_strategy_hits(&s), 1);
    }

    #[test]
    fn quantum_optimum_is_cos_squared_pi_over_eight() {
        let r = quantum_max_qubit(20, 1e-6, 4).unwrap();
        let expected = (std::f64::consts::PI / 8.0).cos().powi(2);
        assert_abs_diff_eq!(r.best_success, expected, epsilon = 1e-3);
        assert!(r.converged);
        assert!(r.best_success >= 0.75);
    }

    #[test]
    fn degenerate_settings_stay_classical() {
        // A0 = A1 and B0 = B1 cannot beat the classical bound.
        let mut best: f64 = 0.0;
        for i in 0..64 {
            let ta = i as f64 * 0.1;
            for j in 0..8 {
                let tb = j as f64 * 0.4;
                best = best.max(planar_success(&[ta, ta, tb, tb]));
            }
        }
        assert!(best <= 0.75 + 1e-6);
    }

    #[test]
    fn gap_report_matches_reported_approximations() {
        let qutrit_delta = (1.0 + (11.0f64 / 3.0).sqrt()) / 4.0;
        let qubit_p = (std::f64::consts::PI / 8.0).cos().powi(2);
        let g = gap_comparison(qutrit_delta, qubit_p);
        assert_abs_diff_eq!(g.qutrit_gap, 0.23, epsilon = 5e-3);
        assert_abs_diff_eq!(g.qubit_gap, 0.1, epsilon = 5e-3);
    }
}
