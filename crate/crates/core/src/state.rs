//! Bipartite pure states and Born-rule joint outcome distributions.
//!
//! The game fixes dimension 3 per party ([`PureState`]); the generic
//! machinery over the local dimension is shared with the two-qubit
//! baseline game.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{mat_mul, unitarity_deviation, zero, CMat};
use crate::trit::Trit;

pub const ORTHONORMALITY_TOL: f64 = 1e-10;
pub const UNITARITY_TOL: f64 = 1e-10;
pub const PROB_CLAMP: f64 = 1e-12;
pub const DIST_NORM_TOL: f64 = 1e-10;

/// An orthonormal measurement basis for a D-level system. Row k is the
/// outcome-k vector; for qutrits outcome k is labeled by the trit ω^k.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis<const D: usize> {
    vectors: CMat<D>,
}

impl<const D: usize> Basis<D> {
    /// Validates pairwise orthogonality and unit norms before accepting.
    pub fn new(vectors: CMat<D>) -> Result<Basis<D>> {
        let mut dev: f64 = 0.0;
        for i in 0..D {
            for j in 0..D {
                let mut inner = Complex64::new(0.0, 0.0);
                for k in 0..D {
                    inner += vectors[i][k].conj() * vectors[j][k];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((inner - target).norm());
            }
        }
        if dev > ORTHONORMALITY_TOL {
            return Err(Error::NotOrthonormal {
                deviation: dev,
                tolerance: ORTHONORMALITY_TOL,
            });
        }
        Ok(Basis { vectors })
    }

    pub fn vector(&self, outcome: usize) -> &[Complex64; D] {
        &self.vectors[outcome]
    }

    pub fn vectors(&self) -> &CMat<D> {
        &self.vectors
    }

    /// Reorders the outcome vectors; `perm[new] = old`.
    pub fn permuted(&self, perm: [usize; D]) -> Basis<D> {
        let mut v = zero::<D>();
        for (new, &old) in perm.iter().enumerate() {
            v[new] = self.vectors[old];
        }
        Basis { vectors: v }
    }
}

/// Joint outcome distribution over the D×D outcome grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist<const D: usize> {
    p: [[f64; D]; D],
}

impl<const D: usize> JointDist<D> {
    /// Accepts a probability table, clamping tiny negative entries from
    /// floating-point cancellation and checking normalization.
    pub fn new(mut p: [[f64; D]; D]) -> Result<JointDist<D>> {
        let mut sum = 0.0;
        for row in p.iter_mut() {
            for v in row.iter_mut() {
                if *v < 0.0 {
                    if *v < -PROB_CLAMP {
                        return Err(Error::InvalidConfig(format!(
                            "negative probability {v} below clamp threshold"
                        )));
                    }
                    *v = 0.0;
                }
                sum += *v;
            }
        }
        if (sum - 1.0).abs() > DIST_NORM_TOL {
            return Err(Error::InvalidConfig(format!(
                "joint distribution sums to {sum}, not 1"
            )));
        }
        Ok(JointDist { p })
    }

    /// Point mass on one outcome pair.
    pub fn point(k: usize, l: usize) -> JointDist<D> {
        let mut p = [[0.0; D]; D];
        p[k][l] = 1.0;
        JointDist { p }
    }

    pub fn uniform() -> JointDist<D> {
        JointDist {
            p: [[1.0 / (D * D) as f64; D]; D],
        }
    }

    pub fn prob(&self, k: usize, l: usize) -> f64 {
        self.p[k][l]
    }

    pub fn table(&self) -> &[[f64; D]; D] {
        &self.p
    }

    /// Marginal over Alice's outcome index.
    pub fn alice_marginal(&self) -> [f64; D] {
        let mut m = [0.0; D];
        for k in 0..D {
            for l in 0..D {
                m[k] += self.p[k][l];
            }
        }
        m
    }

    /// Marginal over Bob's outcome index.
    pub fn bob_marginal(&self) -> [f64; D] {
        let mut m = [0.0; D];
        for k in 0..D {
            for l in 0..D {
                m[l] += self.p[k][l];
            }
        }
        m
    }
}

/// p(k,l) = |⟨k_A| ⊗ ⟨l_B | ψ⟩|² for a bipartite amplitude matrix
/// indexed (j, j').
pub fn born_joint_generic<const D: usize>(
    amplitudes: &CMat<D>,
    basis_a: &Basis<D>,
    basis_b: &Basis<D>,
) -> JointDist<D> {
    let mut p = [[0.0; D]; D];
    for k in 0..D {
        for l in 0..D {
            let mut amp = Complex64::new(0.0, 0.0);
            for j in 0..D {
                for jp in 0..D {
                    amp += basis_a.vector(k)[j].conj()
                        * basis_b.vector(l)[jp].conj()
                        * amplitudes[j][jp];
                }
            }
            p[k][l] = amp.norm_sqr();
        }
    }
    // Valid bases and a normalized state cannot produce an invalid table.
    JointDist::new(p).expect("Born rule output normalized")
}

/// A normalized two-qutrit pure state, amplitudes indexed (j, k).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CMat<3>,
}

pub const STATE_NORM_TOL: f64 = 1e-12;

impl PureState {
    pub fn new(amplitudes: CMat<3>) -> Result<PureState> {
        let norm_sq: f64 = amplitudes
            .iter()
            .flatten()
            .map(|a| a.norm_sqr())
            .sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidConfig(format!(
                "state norm² = {norm_sq}, not 1"
            )));
        }
        Ok(PureState { amplitudes })
    }

    /// Normalizes an arbitrary nonzero amplitude table.
    pub fn normalized(amplitudes: CMat<3>) -> Result<PureState> {
        let norm_sq: f64 = amplitudes
            .iter()
            .flatten()
            .map(|a| a.norm_sqr())
            .sum();
        if !norm_sq.is_finite() || norm_sq <= 0.0 {
            return Err(Error::InvalidConfig(
                "cannot normalize zero or non-finite state".into(),
            ));
        }
        let scale = norm_sq.sqrt().recip();
        let mut amps = amplitudes;
        for row in amps.iter_mut() {
            for a in row.iter_mut() {
                *a *= scale;
            }
        }
        Ok(PureState { amplitudes: amps })
    }

    pub fn amplitude(&self, j: usize, k: usize) -> Complex64 {
        self.amplitudes[j][k]
    }

    pub fn amplitudes(&self) -> &CMat<3> {
        &self.amplitudes
    }
}

/// The asymmetric family (|00⟩ + γ|11⟩ + |22⟩)/√(2+γ²).
pub fn gamma_state(gamma: f64) -> Result<PureState> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidGamma(gamma));
    }
    let norm = (2.0 + gamma * gamma).sqrt();
    let mut amps = zero::<3>();
    amps[0][0] = Complex64::new(1.0 / norm, 0.0);
    amps[1][1] = Complex64::new(gamma / norm, 0.0);
    amps[2][2] = Complex64::new(1.0 / norm, 0.0);
    PureState::new(amps)
}

/// The state parameter at which the game's quantum optimum is reached:
/// γ* = (√11 − √3)/2.
pub fn gamma_star() -> f64 {
    (11.0f64.sqrt() - 3.0f64.sqrt()) / 2.0
}

/// Joint outcome distribution for a two-qutrit state.
pub fn born_joint(state: &PureState, basis_a: &Basis<3>, basis_b: &Basis<3>) -> JointDist<3> {
    born_joint_generic(&state.amplitudes, basis_a, basis_b)
}

/// Applies uA ⊗ uB to the state. Both matrices must be unitary.
pub fn apply_local_unitaries(state: &PureState, u_a: &CMat<3>, u_b: &CMat<3>) -> Result<PureState> {
    for u in [u_a, u_b] {
        let dev = unitarity_deviation(u);
        if dev > UNITARITY_TOL {
            return Err(Error::NotUnitary {
                deviation: dev,
                tolerance: UNITARITY_TOL,
            });
        }
    }
    // (uA ⊗ uB) ψ = uA · ψ · uBᵀ on the amplitude matrix.
    let mut ubt = zero::<3>();
    for i in 0..3 {
        for j in 0..3 {
            ubt[i][j] = u_b[j][i];
        }
    }
    let rotated = mat_mul(&mat_mul(u_a, &state.amplitudes), &ubt);
    PureState::normalized(rotated)
}

/// Outcome index k carries the trit label ω^k.
pub fn outcome_label(k: usize) -> Trit {
    Trit::new(k as i64)
}
