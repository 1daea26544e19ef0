//! Executable two-party protocol: per-round state, a trit channel with
//! an enforced one-send-per-direction budget, and Monte Carlo
//! estimation of P(f1), P(f2) and Δ.
//!
//! All randomness in round i derives from (seed, stream, i), with input
//! sampling and outcome sampling on disjoint streams, so transcripts are
//! reproducible and chunking-invariant.

use serde::Serialize;

use crate::classical::{strategy_to_distributions, DeterministicStrategy};
use crate::error::{Error, Result};
use crate::measure::GameSettings;
use crate::metrics::{
    alice_setting_for, bob_setting_for, AliceSetting, BobSetting, SettingDistributions,
};
use crate::rng::CounterRng;
use crate::state::{outcome_label, PureState};
use crate::trit::{f1, f2, InputA, InputB, Trit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PartyRole {
    Alice,
    Bob,
}

/// The one-trit-per-direction channel. A second send in either
/// direction is a hard protocol error.
#[derive(Debug, Default)]
pub struct TritChannel {
    alice_to_bob: Option<Trit>,
    bob_to_alice: Option<Trit>,
}

impl TritChannel {
    pub fn new() -> TritChannel {
        TritChannel::default()
    }

    pub fn send(&mut self, from: PartyRole, message: Trit) -> Result<()> {
        let slot = match from {
            PartyRole::Alice => &mut self.alice_to_bob,
            PartyRole::Bob => &mut self.bob_to_alice,
        };
        if slot.is_some() {
            return Err(Error::BudgetExceeded {
                party: match from {
                    PartyRole::Alice => "Alice",
                    PartyRole::Bob => "Bob",
                },
            });
        }
        *slot = Some(message);
        Ok(())
    }

    pub fn sends_used(&self) -> (u8, u8) {
        (
            u8::from(self.alice_to_bob.is_some()),
            u8::from(self.bob_to_alice.is_some()),
        )
    }

    fn received_by_bob(&self) -> Option<Trit> {
        self.alice_to_bob
    }

    fn received_by_alice(&self) -> Option<Trit> {
        self.bob_to_alice
    }
}

/// Full record of one protocol round.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundRecord {
    pub x0: u8,
    pub x1: u8,
    pub y0: u8,
    pub y1: u8,
    pub alice_setting: AliceSetting,
    pub bob_setting: BobSetting,
    /// Alice's measurement outcome exponent.
    pub a: u8,
    /// Bob's measurement outcome exponent.
    pub b: u8,
    pub e_a: u8,
    pub e_b: u8,
    pub broadcast_alice: u8,
    pub broadcast_bob: u8,
    pub f1_value: u8,
    pub f2_value: u8,
    pub hit_f1: bool,
    pub hit_f2: bool,
    pub alice_sends: u8,
    pub bob_sends: u8,
}

/// Where the per-round outcomes come from.
#[derive(Debug, Clone)]
pub enum SamplerSource {
    Quantum {
        state: PureState,
        settings: GameSettings,
    },
    Classical(DeterministicStrategy),
    Fixed(SettingDistributions),
}

/// Draws outcome pairs for rounds. Quantum and fixed sources sample the
/// precomputed joint distribution of the selected setting pair by
/// inverse CDF in row-major cell order.
#[derive(Debug, Clone)]
pub struct OutcomeSampler {
    source: SamplerSource,
    dists: SettingDistributions,
}

impl OutcomeSampler {
    pub fn new(source: SamplerSource) -> OutcomeSampler {
        let dists = match &source {
            SamplerSource::Quantum { state, settings } => {
                SettingDistributions::from_quantum(state, settings)
            }
            SamplerSource::Classical(s) => strategy_to_distributions(s),
            SamplerSource::Fixed(sd) => sd.clone(),
        };
        OutcomeSampler { source, dists }
    }

    pub fn source(&self) -> &SamplerSource {
        &self.source
    }

    pub fn distributions(&self) -> &SettingDistributions {
        &self.dists
    }

    fn draw(&self, a: AliceSetting, b: BobSetting, u: f64) -> (u8, u8) {
        match &self.source {
            // Deterministic strategies need no randomness.
            SamplerSource::Classical(s) => {
                let x0 = u8::from(a == AliceSetting::A1);
                let y0 = u8::from(b == BobSetting::B0);
                (s.alice(x0).exponent(), s.bob(y0).exponent())
            }
            _ => {
                let d = self.dists.get(a, b);
                let mut acc = 0.0;
                for k in 0..3u8 {
                    for l in 0..3u8 {
                        acc += d.prob(usize::from(k), usize::from(l));
                        if u < acc {
                            return (k, l);
                        }
                    }
                }
                (2, 2)
            }
        }
    }
}

/// Exact (p_f1, p_f2, delta) of a sampler source, computed analytically
/// from its setting distributions. This is the oracle the Monte Carlo
/// estimates converge to.
pub fn exact_scores(sampler: &OutcomeSampler) -> (f64, f64, f64) {
    let sd = sampler.distributions();
    let p1 = crate::metrics::p_f1(sd);
    let p2 = crate::metrics::p_f2(sd);
    (p1, p2, p1 - p2)
}

fn run_round_inner(
    x: InputA,
    y: InputB,
    sampler: &OutcomeSampler,
    outcome_u: f64,
    inject_extra_alice_send: bool,
) -> Result<RoundRecord> {
    let alice_setting = alice_setting_for(x.x0);
    let bob_setting = bob_setting_for(y.y0);
    let (a_idx, b_idx) = sampler.draw(alice_setting, bob_setting, outcome_u);
    let a = outcome_label(usize::from(a_idx));
    let b = outcome_label(usize::from(b_idx));

    let mut channel = TritChannel::new();
    let e_a = x.x1 * a;
    let e_b = y.y1 * b;
    channel.send(PartyRole::Alice, e_a)?;
    channel.send(PartyRole::Bob, e_b)?;
    if inject_extra_alice_send {
        channel.send(PartyRole::Alice, e_a)?;
    }

    // Each party multiplies its own message by the one it received.
    let broadcast_alice = e_a * channel.received_by_alice().expect("Bob sent");
    let broadcast_bob = e_b * channel.received_by_bob().expect("Alice sent");
    debug_assert_eq!(broadcast_alice, broadcast_bob);

    let f1_value = f1(x, y);
    let f2_value = f2(x, y);
    let (alice_sends, bob_sends) = channel.sends_used();
    Ok(RoundRecord {
        x0: x.x0,
        x1: x.x1.exponent(),
        y0: y.y0,
        y1: y.y1.exponent(),
        alice_setting,
        bob_setting,
        a: a.exponent(),
        b: b.exponent(),
        e_a: e_a.exponent(),
        e_b: e_b.exponent(),
        broadcast_alice: broadcast_alice.exponent(),
        broadcast_bob: broadcast_bob.exponent(),
        f1_value: f1_value.exponent(),
        f2_value: f2_value.exponent(),
        hit_f1: broadcast_alice == f1_value,
        hit_f2: broadcast_alice == f2_value,
        alice_sends,
        bob_sends,
    })
}

/// Runs one round with externally supplied inputs. `outcome_u` is the
/// uniform draw consumed by outcome sampling.
pub fn run_round(
    x: InputA,
    y: InputB,
    sampler: &OutcomeSampler,
    outcome_u: f64,
) -> Result<RoundRecord> {
    run_round_inner(x, y, sampler, outcome_u, false)
}

/// Same as [`run_round`] but Alice attempts a second send; always fails
/// with a budget error. Exists so the budget enforcement can be audited
/// end to end.
pub fn run_round_with_injected_double_send(
    x: InputA,
    y: InputB,
    sampler: &OutcomeSampler,
    outcome_u: f64,
) -> Result<RoundRecord> {
    run_round_inner(x, y, sampler, outcome_u, true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub n_rounds: u64,
    pub p_f1_hat: f64,
    pub p_f2_hat: f64,
    pub delta_hat: f64,
    pub se_f1: f64,
    pub se_f2: f64,
    pub seed: u64,
}

const INPUT_STREAM: u64 = 1;
const OUTCOME_STREAM: u64 = 2;

fn input_from_index(idx: u64) -> (InputA, InputB) {
    debug_assert!(idx < 36);
    let x0 = (idx / 18) as u8;
    let x1 = Trit::new(((idx / 6) % 3) as i64);
    let y0 = ((idx / 3) % 2) as u8;
    let y1 = Trit::new((idx % 3) as i64);
    (InputA::new(x0, x1), InputB::new(y0, y1))
}

/// Monte Carlo estimate of the scores, with a per-round observer for
/// transcript logging. Inputs are uniform over the 36 pairs.
pub fn monte_carlo_with<F>(
    sampler: &OutcomeSampler,
    n_rounds: u64,
    seed: u64,
    mut observer: F,
) -> Result<MonteCarloReport>
where
    F: FnMut(&RoundRecord),
{
    if n_rounds == 0 {
        return Err(Error::InvalidConfig("n_rounds must be >= 1".into()));
    }
    let root = CounterRng::new(seed, 0);
    let inputs = root.split(INPUT_STREAM);
    let outcomes = root.split(OUTCOME_STREAM);

    let mut hits_f1 = 0u64;
    let mut hits_f2 = 0u64;
    for i in 0..n_rounds {
        let idx = inputs.at(i).next_below(36);
        let (x, y) = input_from_index(idx);
        let u = outcomes.at(i).next_f64();
        let record = run_round(x, y, sampler, u)?;
        hits_f1 += u64::from(record.hit_f1);
        hits_f2 += u64::from(record.hit_f2);
        observer(&record);
    }

    let n = n_rounds as f64;
    let p1 = hits_f1 as f64 / n;
    let p2 = hits_f2 as f64 / n;
    Ok(MonteCarloReport {
        n_rounds,
        p_f1_hat: p1,
        p_f2_hat: p2,
        delta_hat: p1 - p2,
        se_f1: (p1 * (1.0 - p1) / n).sqrt(),
        se_f2: (p2 * (1.0 - p2) / n).sqrt(),
        seed,
    })
}

pub fn monte_carlo(sampler: &OutcomeSampler, n_rounds: u64, seed: u64) -> Result<MonteCarloReport> {
    monte_carlo_with(sampler, n_rounds, seed, |_| {})
}
