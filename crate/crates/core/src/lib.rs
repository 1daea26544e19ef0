//! Simulator and optimization toolkit for a two-party
//! communication-complexity game played with entangled qutrits.
//!
//! The game hands Alice a bit–trit pair x = (x0, x1) and Bob a pair
//! y = (y0, y1), lets each send a single trit, and requires both to
//! broadcast the same answer. The score is Δ = P(f1) − P(f2), the
//! probability of matching the first target function minus that of
//! matching the second. This crate provides:
//!
//! - exact integer scoring of the classical protocol family and its
//!   exhaustive 81-strategy enumeration (Δ ≤ 1/2),
//! - Born-rule evaluation of the quantum protocol for the γ-family of
//!   entangled states, where Δ = I3/4 links the score to a two-qutrit
//!   Bell expression with local-realistic bound I3 ≤ 2,
//! - derivative-free maximization of I3 over measurement settings and
//!   the state parameter (optimum 1 + √(11/3) ≈ 2.9149 at γ ≈ 0.7923),
//! - a round-by-round protocol engine with an enforced one-trit
//!   communication budget and reproducible Monte Carlo estimation,
//! - the two-qubit game as a comparison baseline.

pub mod classical;
pub mod error;
pub mod linalg;
pub mod measure;
pub mod metrics;
pub mod optim;
pub mod protocol;
pub mod qubit;
pub mod rng;
pub mod state;
pub mod trit;

pub use error::{Error, Result};
