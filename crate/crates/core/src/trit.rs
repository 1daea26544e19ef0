//! Exact arithmetic on the cube roots of unity and the two target
//! functions of the game.
//!
//! Outcomes, messages and answers all live in the multiplicative group
//! {1, ω, ω²} with ω = e^{i2π/3}. A [`Trit`] stores only the exponent
//! mod 3, so every score in the game is computed in integer arithmetic.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// An element ω^k of the order-3 cyclic group, stored as k ∈ {0,1,2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trit(u8);

impl Trit {
    pub const ONE: Trit = Trit(0);
    pub const OMEGA: Trit = Trit(1);
    pub const OMEGA_SQ: Trit = Trit(2);

    /// Builds ω^exponent, reducing the exponent mod 3.
    pub fn new(exponent: i64) -> Trit {
        Trit(exponent.rem_euclid(3) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Trit {
        Trit::new(-(self.0 as i64))
    }

    pub fn all() -> [Trit; 3] {
        [Trit(0), Trit(1), Trit(2)]
    }

    /// The complex value ω^k this trit represents.
    pub fn to_complex(self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * f64::from(self.0) / 3.0;
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl Mul for Trit {
    type Output = Trit;

    fn mul(self, rhs: Trit) -> Trit {
        Trit::new(i64::from(self.0) + i64::from(rhs.0))
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "1"),
            1 => write!(f, "w"),
            _ => write!(f, "w2"),
        }
    }
}

/// Alice's input: a bit x0 and a trit x1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InputA {
    pub x0: u8,
    pub x1: Trit,
}

/// Bob's input: a bit y0 and a trit y1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InputB {
    pub y0: u8,
    pub y1: Trit,
}

impl InputA {
    pub fn new(x0: u8, x1: Trit) -> InputA {
        debug_assert!(x0 <= 1);
        InputA { x0, x1 }
    }
}

impl InputB {
    pub fn new(y0: u8, y1: Trit) -> InputB {
        debug_assert!(y0 <= 1);
        InputB { y0, y1 }
    }
}

/// All 36 input pairs, in row-major (x0, x1, y0, y1) order.
pub fn all_inputs() -> Vec<(InputA, InputB)> {
    let mut out = Vec::with_capacity(36);
    for x0 in 0..2u8 {
        for x1 in Trit::all() {
            for y0 in 0..2u8 {
                for y1 in Trit::all() {
                    out.push((InputA::new(x0, x1), InputB::new(y0, y1)));
                }
            }
        }
    }
    out
}

/// First target function: x1 · y1 · ω^(x0·y0).
pub fn f1(x: InputA, y: InputB) -> Trit {
    x.x1 * y.y1 * Trit::new(i64::from(x.x0) * i64::from(y.y0))
}

/// Second target function: x1 · y1 · ω^(2−x0−y0).
pub fn f2(x: InputA, y: InputB) -> Trit {
    x.x1 * y.y1 * Trit::new(2 - i64::from(x.x0) - i64::from(y.y0))
}

/// The two local factors of f2; their product equals `f2(x, y)`.
pub fn f2_factorized(x: InputA, y: InputB) -> (Trit, Trit) {
    let alice = x.x1 * Trit::new(1 - i64::from(x.x0));
    let bob = y.y1 * Trit::new(1 - i64::from(y.y0));
    (alice, bob)
}
