//! Settings-file loading: per-observable phase triples or explicit
//! unitaries, JSON-encoded so runs are replayable and diffable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qcc_core::linalg::CMat;
use qcc_core::measure::{
    basis_from_unitary, fourier_basis_alice, fourier_basis_bob, GameSettings, PhaseTriple,
};
use qcc_core::state::Basis;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "kebab-case")]
pub enum ObservableSpec {
    /// Phased Fourier basis; phases in radians, first phase is the gauge.
    Fourier { phases: [f64; 3] },
    /// Explicit 3×3 unitary, entries as [re, im] pairs, columns are the
    /// outcome vectors.
    GeneralUnitary { matrix: [[[f64; 2]; 3]; 3] },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SettingsFile {
    pub a0: ObservableSpec,
    pub a1: ObservableSpec,
    pub b0: ObservableSpec,
    pub b1: ObservableSpec,
}

fn build(spec: &ObservableSpec, bob: bool) -> Result<Basis<3>, String> {
    match spec {
        ObservableSpec::Fourier { phases } => {
            let t = PhaseTriple(phases[0], phases[1], phases[2]);
            Ok(if bob {
                fourier_basis_bob(t)
            } else {
                fourier_basis_alice(t)
            })
        }
        ObservableSpec::GeneralUnitary { matrix } => {
            let mut u: CMat<3> = Default::default();
            for (i, row) in matrix.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    u[i][j] = Complex64::new(entry[0], entry[1]);
                }
            }
            basis_from_unitary(&u).map_err(|e| e.to_string())
        }
    }
}

impl SettingsFile {
    pub fn to_game_settings(&self) -> Result<GameSettings, String> {
        Ok(GameSettings {
            a0: build(&self.a0, false)?,
            a1: build(&self.a1, false)?,
            b0: build(&self.b0, true)?,
            b1: build(&self.b1, true)?,
        })
    }

    /// The standard settings expressed in the file schema.
    pub fn standard() -> SettingsFile {
        let alpha = |a: f64| {
            let t = PhaseTriple::from_alpha(a);
            ObservableSpec::Fourier {
                phases: [t.0, t.1, t.2],
            }
        };
        SettingsFile {
            a0: alpha(0.0),
            a1: alpha(-0.5),
            b0: alpha(-0.25),
            b1: alpha(0.25),
        }
    }
}

/// Resolves `--settings standard` or a JSON file path.
pub fn load_settings(arg: &str) -> Result<(GameSettings, SettingsFile), String> {
    let file = if arg == "standard" {
        SettingsFile::standard()
    } else {
        let text = std::fs::read_to_string(arg)
            .map_err(|e| format!("cannot read settings file {arg}: {e}"))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid settings file {arg}: {e}"))?
    };
    let settings = file.to_game_settings()?;
    Ok((settings, file))
}
