//! The Fourier-phase family of qutrit observables and general basis
//! construction for the optimizer.
//!
//! Outcome-k vectors are (1/√3) Σ_j e^{iφ_j} ω^{jk} |j⟩ for both
//! parties. With this shared kernel a Schmidt-diagonal state
//! concentrates probability on outcome pairs with k + l ≡ 0 (mod 3),
//! i.e. on a·b = 1, which is what three of the four scored terms
//! reward near the optimum.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{phase, zero, CMat};
use crate::state::Basis;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Per-component phases (φ0, φ1, φ2) applied to the Fourier kernel.
/// Canonical form pins φ0 = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTriple(pub f64, pub f64, pub f64);

impl PhaseTriple {
    /// The single-parameter family φ_j = 2π·j·alpha/3 used by the
    /// standard settings.
    pub fn from_alpha(alpha: f64) -> PhaseTriple {
        PhaseTriple(0.0, TWO_PI * alpha / 3.0, TWO_PI * 2.0 * alpha / 3.0)
    }

    fn get(&self, j: usize) -> f64 {
        match j {
            0 => self.0,
            1 => self.1,
            _ => self.2,
        }
    }
}

fn fourier_basis(phases: PhaseTriple) -> Basis<3> {
    let scale = 1.0 / 3.0f64.sqrt();
    let mut v = zero::<3>();
    for k in 0..3 {
        for j in 0..3 {
            let theta = phases.get(j) + TWO_PI * (j * k) as f64 / 3.0;
            v[k][j] = scale * phase(theta);
        }
    }
    Basis::new(v).expect("Fourier construction is orthonormal")
}

/// Alice's phased Fourier basis.
pub fn fourier_basis_alice(phases: PhaseTriple) -> Basis<3> {
    fourier_basis(phases)
}

/// Bob's phased Fourier basis (same kernel as Alice's; see module docs).
pub fn fourier_basis_bob(phases: PhaseTriple) -> Basis<3> {
    fourier_basis(phases)
}

/// The two observables per party used in one run of the game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSettings {
    pub a0: Basis<3>,
    pub a1: Basis<3>,
    pub b0: Basis<3>,
    pub b1: Basis<3>,
}

/// The literature-standard settings that maximize I3 over the
/// single-alpha family: Alice α = (0, −1/2), Bob β = (−1/4, +1/4).
pub fn cglmp_standard_settings() -> GameSettings {
    GameSettings {
        a0: fourier_basis_alice(PhaseTriple::from_alpha(0.0)),
        a1: fourier_basis_alice(PhaseTriple::from_alpha(-0.5)),
        b0: fourier_basis_bob(PhaseTriple::from_alpha(-0.25)),
        b1: fourier_basis_bob(PhaseTriple::from_alpha(0.25)),
    }
}

/// Basis whose outcome vectors are the columns of a unitary matrix.
pub fn basis_from_unitary(u: &CMat<3>) -> Result<Basis<3>> {
    let mut rows = zero::<3>();
    for k in 0..3 {
        for j in 0..3 {
            rows[k][j] = u[j][k];
        }
    }
    Basis::new(rows)
}

/// The 3×3 Fourier matrix (columns are the zero-phase Fourier vectors).
pub fn fourier_matrix() -> CMat<3> {
    let scale = 1.0 / 3.0f64.sqrt();
    let mut m = zero::<3>();
    for j in 0..3 {
        for k in 0..3 {
            m[j][k] = scale * phase(TWO_PI * (j * k) as f64 / 3.0);
        }
    }
    m
}

/// A 3×3 unitary from 8 real parameters: two row phases followed by
/// three complex Givens rotations on the (0,1), (0,2), (1,2) planes.
/// Surjective onto measurement bases up to per-vector global phases.
pub fn unitary_from_params(p: &[f64; 8]) -> CMat<3> {
    let mut u = zero::<3>();
    u[0][0] = Complex64::new(1.0, 0.0);
    u[1][1] = phase(p[0]);
    u[2][2] = phase(p[1]);
    let planes = [(0usize, 1usize), (0, 2), (1, 2)];
    for (idx, &(a, b)) in planes.iter().enumerate() {
        let theta = p[2 + 2 * idx];
        let phi = p[3 + 2 * idx];
        let mut g = crate::linalg::identity::<3>();
        g[a][a] = Complex64::new(theta.cos(), 0.0);
        g[a][b] = -phase(-phi) * theta.sin();
        g[b][a] = phase(phi) * theta.sin();
        g[b][b] = Complex64::new(theta.cos(), 0.0);
        u = crate::linalg::mat_mul(&u, &g);
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, unitarity_deviation};
    use crate::state::{born_joint, gamma_state, JointDist};
    use approx::assert_abs_diff_eq;

    fn basis_deviation(a: &Basis<3>, b: &Basis<3>) -> f64 {
        let mut dev: f64 = 0.0;
        for k in 0..3 {
            for j in 0..3 {
                dev = dev.max((a.vector(k)[j] - b.vector(k)[j]).norm());
            }
        }
        dev
    }

    #[test]
    fn zero_phases_give_fourier_basis() {
        let b = fourier_basis_alice(PhaseTriple(0.0, 0.0, 0.0));
        // Orthonormality is enforced by the constructor; check one entry.
        assert_abs_diff_eq!(b.vector(0)[0].re, 1.0 / 3.0f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            b.vector(1)[1].re,
            (TWO_PI / 3.0).cos() / 3.0f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn alpha_one_relabels_outcomes_cyclically() {
        let shifted = fourier_basis_alice(PhaseTriple(
            0.0,
            TWO_PI / 3.0,
            2.0 * TWO_PI / 3.0,
        ));
        let base = fourier_basis_alice(PhaseTriple(0.0, 0.0, 0.0));
        // phases (0, 2π/3, 4π/3) shift k by one: outcome k of the shifted
        // basis equals outcome k+1 of the plain Fourier basis.
        let relabeled = base.permuted([1, 2, 0]);
        assert!(basis_deviation(&shifted, &relabeled) < 1e-12);
    }

    #[test]
    fn pi_phase_basis_is_orthonormal_but_distinct() {
        let b = fourier_basis_alice(PhaseTriple(0.0, std::f64::consts::PI, 0.0));
        let base = fourier_basis_alice(PhaseTriple(0.0, 0.0, 0.0));
        assert!(basis_deviation(&b, &base) > 0.1);
    }

    #[test]
    fn matched_canonical_phases_concentrate_on_unit_product() {
        // With the shared kernel, the maximally entangled state lands
        // entirely on outcome pairs with k + l ≡ 0, i.e. a·b = 1.
        let s = gamma_state(1.0).unwrap();
        let d = born_joint(
            &s,
            &fourier_basis_alice(PhaseTriple(0.0, 0.0, 0.0)),
            &fourier_basis_bob(PhaseTriple(0.0, 0.0, 0.0)),
        );
        let mut on_unit = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                if (k + l) % 3 == 0 {
                    on_unit += d.prob(k, l);
                }
            }
        }
        assert_abs_diff_eq!(on_unit, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn global_phase_shift_leaves_distribution_unchanged(){
        let s = gamma_state(0.7).unwrap();
        let a = fourier_basis_alice(PhaseTriple(0.0, 0.3, 1.1));
        let b1 = fourier_basis_bob(PhaseTriple(0.0, -0.2, 0.4));
        let b2 = fourier_basis_bob(PhaseTriple(0.9, 0.7, 1.3));
        let d1 = born_joint(&s, &a, &b1);
        let d2 = born_joint(&s, &a, &b2);
        for k in 0..3 {
            for l in 0..3 {
                assert_abs_diff_eq!(d1.prob(k, l), d2.prob(k, l), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn standard_settings_are_orthonormal() {
        // Constructors enforce orthonormality; just make sure all four
        // build without panicking and are pairwise distinct.
        let s = cglmp_standard_settings();
        assert_ne!(s.a0, s.a1);
        assert_ne!(s.b0, s.b1);
    }

    #[test]
    fn identity_unitary_gives_computational_basis() {
        let b = basis_from_unitary(&identity()).unwrap();
        assert_abs_diff_eq!(b.vector(0)[0].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.vector(1)[1].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn fourier_matrix_columns_match_fourier_basis() {
        let b = basis_from_unitary(&fourier_matrix()).unwrap();
        let f = fourier_basis_alice(PhaseTriple(0.0, 0.0, 0.0));
        assert!(basis_deviation(&b, &f) < 1e-12);
    }

    #[test]
    fn parameterized_unitaries_are_unitary() {
        let mut rng = crate::rng::CounterRng::new(11, 0);
        for _ in 0..50 {
            let mut p = [0.0; 8];
            for v in p.iter_mut() {
                *v = rng.next_f64() * TWO_PI;
            }
            let u = unitary_from_params(&p);
            assert!(unitarity_deviation(&u) < 1e-12);
            assert!(basis_from_unitary(&u).is_ok());
        }
    }

    #[test]
    fn outcome_relabeling_permutes_distribution_rows() {
        let s = gamma_state(0.7923).unwrap();
        let settings = cglmp_standard_settings();
        let d = born_joint(&s, &settings.a0, &settings.b1);
        let perm = [2usize, 0, 1];
        let dp: JointDist<3> = born_joint(&s, &settings.a0.permuted(perm), &settings.b1);
        for k in 0..3 {
            for l in 0..3 {
                assert_abs_diff_eq!(dp.prob(k, l), d.prob(perm[k], l), epsilon = 1e-12);
            }
        }
    }
}
