//! The classical protocol family: each party computes a local trit from
//! its bit input (plus shared randomness), sends one trit, and both
//! broadcast the product of the two messages.
//!
//! Because the broadcast is a·b·x1·y1 and both target functions carry
//! the factor x1·y1, correctness depends only on (x0, y0); scores are
//! exact integer counts over the four equally likely rows.

use crate::error::{Error, Result};
use crate::metrics::SettingDistributions;
use crate::state::JointDist;
use crate::trit::Trit;

/// One deterministic λ-section of the classical family: Alice's answer
/// trit as a function of x0, Bob's as a function of y0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    pub a: [Trit; 2],
    pub b: [Trit; 2],
}

impl DeterministicStrategy {
    pub fn new(a: [Trit; 2], b: [Trit; 2]) -> DeterministicStrategy {
        DeterministicStrategy { a, b }
    }

    /// First intuitive protocol: a ≡ 1, b ≡ 1 (both parties just relay
    /// their input trits).
    pub fn preset_relay() -> DeterministicStrategy {
        DeterministicStrategy::new([Trit::ONE; 2], [Trit::ONE; 2])
    }

    /// Second intuitive protocol: exploit the factorization of f2 and
    /// broadcast a deliberately wrong value of it.
    pub fn preset_factorized() -> DeterministicStrategy {
        DeterministicStrategy::new(
            [Trit::new(1), Trit::new(0)],  // a(x0) = ω^(1−x0)
            [Trit::new(0), Trit::new(-1)], // b(y0) = ω^(−y0)
        )
    }

    pub fn alice(&self, x0: u8) -> Trit {
        self.a[usize::from(x0)]
    }

    pub fn bob(&self, y0: u8) -> Trit {
        self.b[usize::from(y0)]
    }
}

/// Hit counts over the four (x0, y0) rows: how often the broadcast
/// equals f1 and f2 respectively. Exact integers in 0..=4.
pub fn strategy_counts(s: &DeterministicStrategy) -> (u8, u8) {
    let mut hits_f1 = 0;
    let mut hits_f2 = 0;
    for x0 in 0..2u8 {
        for y0 in 0..2u8 {
            let answer = s.alice(x0) * s.bob(y0);
            if answer == Trit::new(i64::from(x0) * i64::from(y0)) {
                hits_f1 += 1;
            }
            if answer == Trit::new(2 - i64::from(x0) - i64::from(y0)) {
                hits_f2 += 1;
            }
        }
    }
    (hits_f1, hits_f2)
}

/// Δ in exact quarters: returns hits_f1 − hits_f2, i.e. 4·Δ.
pub fn strategy_delta_quarters(s: &DeterministicStrategy) -> i8 {
    let (h1, h2) = strategy_counts(s);
    h1 as i8 - h2 as i8
}

pub fn strategy_delta(s: &DeterministicStrategy) -> f64 {
    f64::from(strategy_delta_quarters(s)) / 4.0
}

/// One row of the exhaustive strategy table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyScore {
    pub strategy: DeterministicStrategy,
    pub hits_f1: u8,
    pub hits_f2: u8,
}

impl StrategyScore {
    pub fn delta_quarters(&self) -> i8 {
        self.hits_f1 as i8 - self.hits_f2 as i8
    }

    pub fn delta(&self) -> f64 {
        f64::from(self.delta_quarters()) / 4.0
    }

    pub fn p_f1(&self) -> f64 {
        f64::from(self.hits_f1) / 4.0
    }

    pub fn p_f2(&self) -> f64 {
        f64::from(self.hits_f2) / 4.0
    }
}

/// Scores all 81 deterministic strategies in a fixed lexicographic
/// order of (a(0), a(1), b(0), b(1)) exponents.
pub fn enumerate_all() -> Vec<StrategyScore> {
    let mut out = Vec::with_capacity(81);
    for a0 in Trit::all() {
        for a1 in Trit::all() {
            for b0 in Trit::all() {
                for b1 in Trit::all() {
                    let s = DeterministicStrategy::new([a0, a1], [b0, b1]);
                    let (hits_f1, hits_f2) = strategy_counts(&s);
                    out.push(StrategyScore {
                        strategy: s,
                        hits_f1,
                        hits_f2,
                    });
                }
            }
        }
    }
    out
}

/// Shared randomness: a finite probability mixture over deterministic
/// strategies (λ_A, λ_B collapse to an index into this table).
#[derive(Debug, Clone, PartialEq)]
pub struct SharedRandomness {
    entries: Vec<(DeterministicStrategy, f64)>,
}

impl SharedRandomness {
    pub fn new(entries: Vec<(DeterministicStrategy, f64)>) -> Result<SharedRandomness> {
        if entries.is_empty() {
            return Err(Error::InvalidWeights("empty mixture".into()));
        }
        let mut sum = 0.0;
        for &(_, w) in &entries {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeights(format!("weight {w}")));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(SharedRandomness { entries })
    }

    pub fn point_mass(s: DeterministicStrategy) -> SharedRandomness {
        SharedRandomness {
            entries: vec![(s, 1.0)],
        }
    }

    pub fn entries(&self) -> &[(DeterministicStrategy, f64)] {
        &self.entries
    }
}

/// Weight-averaged (Δ, P(f1)) of a mixture.
pub fn mixture_scores(m: &SharedRandomness) -> (f64, f64) {
    let mut d = 0.0;
    let mut p1 = 0.0;
    for &(s, w) in m.entries() {
        let (h1, h2) = strategy_counts(&s);
        d += w * f64::from(i16::from(h1) - i16::from(h2)) / 4.0;
        p1 += w * f64::from(h1) / 4.0;
    }
    (d, p1)
}

/// The local-realistic model induced by a deterministic strategy: for
/// each observable pair the outcome pair is fixed, so each distribution
/// is a point mass. Uses the same input-to-setting map as the quantum
/// protocol (y0 = 0 selects B1).
pub fn strategy_to_distributions(s: &DeterministicStrategy) -> SettingDistributions {
    let point = |x0: u8, y0: u8| -> JointDist<3> {
        JointDist::point(
            usize::from(s.alice(x0).exponent()),
            usize::from(s.bob(y0).exponent()),
        )
    };
    SettingDistributions {
        a0b1: point(0, 0),
        a0b0: point(0, 1),
        a1b1: point(1, 0),
        a1b0: point(1, 1),
    }
}

/// CSV header and rows for the exhaustive table.
pub fn enumeration_csv() -> String {
    let mut out = String::from("a0,a1,b0,b1,hits_f1,hits_f2,delta,p_f1\n");
    for row in enumerate_all() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.strategy.a[0].exponent(),
            row.strategy.a[1].exponent(),
            row.strategy.b[0].exponent(),
            row.strategy.b[1].exponent(),
            row.hits_f1,
            row.hits_f2,
            row.delta(),
            row.p_f1(),
        ));
    }
    out
}
