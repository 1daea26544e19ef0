//! Scores of the game — P(f1), P(f2), Δ, I3, I2 — computed from the
//! four per-setting joint distributions, independently of whether the
//! distributions came from quantum measurements, a classical strategy,
//! or a fixed table.

use serde::{Deserialize, Serialize};

use crate::measure::GameSettings;
use crate::state::{born_joint, JointDist, PureState};
use crate::trit::Trit;

/// Which observable each party uses. Bob's labeling is inverted on
/// purpose: y0 = 0 selects B1 and y0 = 1 selects B0, matching the way
/// the scored probability combinations are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AliceSetting {
    A0,
    A1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BobSetting {
    B0,
    B1,
}

pub fn alice_setting_for(x0: u8) -> AliceSetting {
    if x0 == 0 {
        AliceSetting::A0
    } else {
        AliceSetting::A1
    }
}

pub fn bob_setting_for(y0: u8) -> BobSetting {
    if y0 == 0 {
        BobSetting::B1
    } else {
        BobSetting::B0
    }
}

/// The four joint distributions, one per observable pair the game can
/// select.
#[derive(Debug, Clone, PartialEq)]
pub struct SettingDistributions {
    pub a0b1: JointDist<3>,
    pub a0b0: JointDist<3>,
    pub a1b1: JointDist<3>,
    pub a1b0: JointDist<3>,
}

impl SettingDistributions {
    pub fn get(&self, a: AliceSetting, b: BobSetting) -> &JointDist<3> {
        match (a, b) {
            (AliceSetting::A0, BobSetting::B1) => &self.a0b1,
            (AliceSetting::A0, BobSetting::B0) => &self.a0b0,
            (AliceSetting::A1, BobSetting::B1) => &self.a1b1,
            (AliceSetting::A1, BobSetting::B0) => &self.a1b0,
        }
    }

    /// Born-rule distributions of a state under game settings.
    pub fn from_quantum(state: &PureState, settings: &GameSettings) -> SettingDistributions {
        SettingDistributions {
            a0b1: born_joint(state, &settings.a0, &settings.b1),
            a0b0: born_joint(state, &settings.a0, &settings.b0),
            a1b1: born_joint(state, &settings.a1, &settings.b1),
            a1b0: born_joint(state, &settings.a1, &settings.b0),
        }
    }

    pub fn uniform() -> SettingDistributions {
        SettingDistributions {
            a0b1: JointDist::uniform(),
            a0b0: JointDist::uniform(),
            a1b1: JointDist::uniform(),
            a1b0: JointDist::uniform(),
        }
    }
}

/// Weight of cells whose outcome exponents sum to `target` mod D, i.e.
/// the probability that the product of the two group-valued outcomes is
/// the target element. Shared by the qutrit game (D = 3) and the qubit
/// baseline (D = 2).
pub fn prob_product_exponent<const D: usize>(d: &JointDist<D>, target: usize) -> f64 {
    let mut sum = 0.0;
    for k in 0..D {
        for l in 0..D {
            if (k + l) % D == target % D {
                sum += d.prob(k, l);
            }
        }
    }
    sum
}

/// Mean success over four equally likely rows, one distribution and one
/// target product exponent per row.
pub fn row_success<const D: usize>(dists: [&JointDist<D>; 4], targets: [usize; 4]) -> f64 {
    dists
        .iter()
        .zip(targets)
        .map(|(d, t)| prob_product_exponent(d, t))
        .sum::<f64>()
        / 4.0
}

/// Probability that the outcome product a·b equals `target`.
pub fn prob_ab_equals(d: &JointDist<3>, target: Trit) -> f64 {
    prob_product_exponent(d, usize::from(target.exponent()))
}

fn row_dists(sd: &SettingDistributions) -> [&JointDist<3>; 4] {
    // Row order (x0, y0) = (0,0), (0,1), (1,0), (1,1) under the
    // inverted Bob labeling.
    [&sd.a0b1, &sd.a0b0, &sd.a1b1, &sd.a1b0]
}

/// Probability of both parties broadcasting the correct value of f1.
/// Per-row targets are the exponents of ω^(x0·y0).
pub fn p_f1(sd: &SettingDistributions) -> f64 {
    row_success(row_dists(sd), [0, 0, 0, 1])
}

/// Probability of both parties broadcasting the correct value of f2.
/// Per-row targets are the exponents of ω^(2−x0−y0).
pub fn p_f2(sd: &SettingDistributions) -> f64 {
    row_success(row_dists(sd), [2, 1, 1, 0])
}

/// The success measure Δ = P(f1) − P(f2).
pub fn delta(sd: &SettingDistributions) -> f64 {
    p_f1(sd) - p_f2(sd)
}

/// The three-outcome Bell combination; Δ = I3/4 and local realistic
/// models satisfy I3 ≤ 2.
pub fn i3(sd: &SettingDistributions) -> f64 {
    4.0 * delta(sd)
}

/// The companion combination 4·P(f1); classically bounded by 3.
pub fn i2(sd: &SettingDistributions) -> f64 {
    4.0 * p_f1(sd)
}
