//! JSON description of a plane-wave field, as read and written by the CLI.
//!
//! ```json
//! {"mass": 1.0, "picture": "spinor",
//!  "modes": [{"p3": [0,0,0], "energy_sign": "+", "amplitude": {"u": {"spin": "up"}}},
//!            {"p3": [0.5,0,0], "energy_sign": "-", "amplitude": [[0,0],[0,0],[1,0],[0,0]]}]}
//! ```
//!
//! `amplitude` is either four `[re, im]` pairs or a request for a constructed
//! solution spinor (`{"u": {...}}` or `{"v": {...}}`). A mode may pin `p0`;
//! it must then agree with the mass shell.

use serde::{Deserialize, Serialize};

use crate::clifford::Picture;
use crate::error::{Error, Result};
use crate::linalg::{c, Spinor};
use crate::lorentz::FourVector;
use crate::planewave::{u_spinor, v_spinor, DiracField, EnergySign, PlaneWaveMode, Spin};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub mass: f64,
    #[serde(default = "default_picture")]
    pub picture: Picture,
    pub modes: Vec<ModeSpec>,
}

fn default_picture() -> Picture {
    Picture::Spinor
}

fn default_sign() -> EnergySign {
    EnergySign::Positive
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub p3: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p0: Option<f64>,
    #[serde(default = "default_sign")]
    pub energy_sign: EnergySign,
    pub amplitude: AmplitudeSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmplitudeSpec {
    Explicit([[f64; 2]; 4]),
    U { u: SolutionSpec },
    V { v: SolutionSpec },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p3: Option<[f64; 3]>,
    #[serde(default = "default_spin")]
    pub spin: Spin,
    /// Complex coefficient `[re, im]`, default 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<[f64; 2]>,
}

fn default_spin() -> Spin {
    Spin::Up
}

impl FieldSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Input(format!("field spec at line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Lab-frame field described by this spec, with the field invariants checked.
    pub fn to_field(&self) -> Result<DiracField> {
        let modes = self
            .modes
            .iter()
            .enumerate()
            .map(|(k, m)| m.to_mode(self.mass, k))
            .collect::<Result<Vec<_>>>()?;
        DiracField::new(self.mass, modes, self.picture)
    }

    /// Spec with explicit amplitudes and pinned energies for an existing field.
    pub fn from_field(f: &DiracField) -> Self {
        FieldSpec {
            mass: f.mass,
            picture: f.picture,
            modes: f
                .modes
                .iter()
                .map(|m| ModeSpec {
                    p3: m.momentum.spatial(),
                    p0: Some(m.momentum[0]),
                    energy_sign: m.energy_sign,
                    amplitude: AmplitudeSpec::Explicit(std::array::from_fn(|k| {
                        [m.amplitude[k].re, m.amplitude[k].im]
                    })),
                })
                .collect(),
        }
    }

    /// Rest-frame spin-up positive-energy mode with `m = 1`.
    pub fn demo() -> Self {
        FieldSpec {
            mass: 1.0,
            picture: Picture::Spinor,
            modes: vec![ModeSpec {
                p3: [0.0; 3],
                p0: None,
                energy_sign: EnergySign::Positive,
                amplitude: AmplitudeSpec::U {
                    u: SolutionSpec { p3: None, spin: Spin::Up, scale: None },
                },
            }],
        }
    }
}

impl ModeSpec {
    fn to_mode(&self, mass: f64, index: usize) -> Result<PlaneWaveMode> {
        let mut momentum = FourVector::on_shell(self.p3, mass);
        if let Some(p0) = self.p0 {
            momentum.components[0] = p0;
        }
        let amplitude = match &self.amplitude {
            AmplitudeSpec::Explicit(pairs) => Spinor::from_iterator(pairs.iter().map(|[re, im]| c(*re, *im))),
            AmplitudeSpec::U { u } => u.build(self, mass, index, EnergySign::Positive)?,
            AmplitudeSpec::V { v } => v.build(self, mass, index, EnergySign::Negative)?,
        };
        Ok(PlaneWaveMode::new(momentum, self.energy_sign, amplitude))
    }
}

impl SolutionSpec {
    fn build(&self, mode: &ModeSpec, mass: f64, index: usize, sign: EnergySign) -> Result<Spinor> {
        if mode.energy_sign != sign {
            return Err(Error::validation(
                "energy-sign",
                format!("mode {index}: u spinors need energy_sign \"+\" and v spinors \"-\""),
            ));
        }
        if let Some(p3) = self.p3 {
            if p3 != mode.p3 {
                return Err(Error::validation(
                    "solution-momentum",
                    format!("mode {index}: solution p3 {p3:?} differs from mode p3 {:?}", mode.p3),
                ));
            }
        }
        let [re, im] = self.scale.unwrap_or([1.0, 0.0]);
        let s = match sign {
            EnergySign::Positive => u_spinor(mode.p3, self.spin, mass)?,
            EnergySign::Negative => v_spinor(mode.p3, self.spin, mass)?,
        };
        Ok(s * c(re, im))
    }
}
