//! Exact on-shell plane-wave Dirac fields.
//!
//! A field is a finite sum of modes `a · exp(−i s p·x)` with `s = ±1`. Values,
//! first and second derivatives are all closed-form, so covariance and
//! conservation identities can be checked pointwise at round-off level.
//!
//! Stored momenta are always components in the field's own frame, with
//! `p⁰ > 0`; the energy sign only selects the phase.

use serde::{Deserialize, Serialize};

use crate::clifford::{gamma0, standard_gammas, Picture};
use crate::error::{Error, Result};
use crate::linalg::{c, max_abs_vec, Spinor, C64};
use crate::lorentz::{FourVector, LorentzTransform};
use crate::spinor_rep::spinor_rep_for_transform;

/// Relative tolerance on `p·p = m²` for modes accepted into a field.
pub const MASS_SHELL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnergySign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl EnergySign {
    pub fn sign(self) -> f64 {
        match self {
            EnergySign::Positive => 1.0,
            EnergySign::Negative => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveMode {
    pub momentum: FourVector,
    pub energy_sign: EnergySign,
    pub amplitude: Spinor,
}

impl PlaneWaveMode {
    pub fn new(momentum: FourVector, energy_sign: EnergySign, amplitude: Spinor) -> Self {
        PlaneWaveMode { momentum, energy_sign, amplitude }
    }

    /// Positive-energy solution `u(p, spin)` scaled by `coeff`.
    pub fn positive(p3: [f64; 3], spin: Spin, mass: f64, coeff: C64) -> Result<Self> {
        Ok(PlaneWaveMode {
            momentum: FourVector::on_shell(p3, mass),
            energy_sign: EnergySign::Positive,
            amplitude: u_spinor(p3, spin, mass)? * coeff,
        })
    }

    /// Negative-energy solution `v(p, spin)` scaled by `coeff`.
    pub fn negative(p3: [f64; 3], spin: Spin, mass: f64, coeff: C64) -> Result<Self> {
        Ok(PlaneWaveMode {
            momentum: FourVector::on_shell(p3, mass),
            energy_sign: EnergySign::Negative,
            amplitude: v_spinor(p3, spin, mass)? * coeff,
        })
    }

    fn phase(&self, x: &FourVector) -> C64 {
        let arg = -self.energy_sign.sign() * self.momentum.dot(x);
        C64::from_polar(1.0, arg)
    }

    /// `−i s p_μ`, the factor one derivative pulls down.
    fn derivative_factor(&self, mu: usize) -> C64 {
        c(0.0, -self.energy_sign.sign() * self.momentum.lower()[mu])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiracField {
    pub mass: f64,
    pub modes: Vec<PlaneWaveMode>,
    pub picture: Picture,
    /// Transform that takes the lab frame to this field's frame.
    pub frame: LorentzTransform,
}

impl DiracField {
    /// Builds a lab-frame field, checking that every mode lies on the mass shell.
    pub fn new(mass: f64, modes: Vec<PlaneWaveMode>, picture: Picture) -> Result<Self> {
        let f = Self::new_unchecked(mass, modes, picture);
        f.validate()?;
        Ok(f)
    }

    /// Builds a field without the mass-shell check, for probing how the
    /// conservation checks react to off-shell modes.
    pub fn new_unchecked(mass: f64, modes: Vec<PlaneWaveMode>, picture: Picture) -> Self {
        DiracField { mass, modes, picture, frame: LorentzTransform::identity() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(Error::validation("mass", format!("mass must be finite and ≥ 0, got {}", self.mass)));
        }
        let m2 = self.mass * self.mass;
        for (k, mode) in self.modes.iter().enumerate() {
            let p = &mode.momentum;
            if !p.components.iter().all(|x| x.is_finite())
                || !mode.amplitude.iter().all(|z| z.re.is_finite() && z.im.is_finite())
            {
                return Err(Error::validation("finite-mode", format!("mode {k} has non-finite data")));
            }
            if p[0] <= 0.0 {
                return Err(Error::validation("positive-p0", format!("mode {k} has p⁰ = {} ≤ 0", p[0])));
            }
            let err = (p.norm_sq() - m2).abs();
            if err > MASS_SHELL_TOL * (p[0] * p[0]).max(1.0) {
                return Err(Error::validation(
                    "mass-shell",
                    format!("mode {k}: p·p = {} but m² = {m2}", p.norm_sq()),
                ));
            }
        }
        Ok(())
    }

    pub fn with_picture(mut self, picture: Picture) -> Self {
        self.picture = picture;
        self
    }

    /// Euclidean scale of the amplitudes, used to make residuals relative.
    pub fn amplitude_scale(&self) -> f64 {
        self.modes.iter().map(|m| max_abs_vec(&m.amplitude)).sum()
    }
}

fn chi(spin: Spin) -> [C64; 2] {
    match spin {
        Spin::Up => [c(1.0, 0.0), c(0.0, 0.0)],
        Spin::Down => [c(0.0, 0.0), c(1.0, 0.0)],
    }
}

/// `σ·p χ` for a two-component `χ`.
fn sigma_dot(p3: [f64; 3], chi: [C64; 2]) -> [C64; 2] {
    let [px, py, pz] = p3;
    [
        chi[0] * pz + chi[1] * c(px, -py),
        chi[0] * c(px, py) - chi[1] * pz,
    ]
}

fn check_mass(mass: f64) -> Result<()> {
    if mass > 0.0 && mass.is_finite() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("solution spinors need a finite mass > 0, got {mass}")))
    }
}

/// Positive-energy spinor `√(E+m) (χ, σ·p χ/(E+m))`, normalised to `ūu = 2m`.
pub fn u_spinor(p3: [f64; 3], spin: Spin, mass: f64) -> Result<Spinor> {
    check_mass(mass)?;
    let e = FourVector::on_shell(p3, mass)[0];
    let n = (e + mass).sqrt();
    let up = chi(spin);
    let low = sigma_dot(p3, up);
    let k = 1.0 / (e + mass);
    Ok(Spinor::new(up[0] * n, up[1] * n, low[0] * (n * k), low[1] * (n * k)))
}

/// Negative-energy spinor `√(E+m) (σ·p χ/(E+m), χ)`, normalised to `v̄v = −2m`.
pub fn v_spinor(p3: [f64; 3], spin: Spin, mass: f64) -> Result<Spinor> {
    check_mass(mass)?;
    let e = FourVector::on_shell(p3, mass)[0];
    let n = (e + mass).sqrt();
    let low = chi(spin);
    let up = sigma_dot(p3, low);
    let k = 1.0 / (e + mass);
    Ok(Spinor::new(up[0] * (n * k), up[1] * (n * k), low[0] * n, low[1] * n))
}

pub fn evaluate(f: &DiracField, x: &FourVector) -> Spinor {
    f.modes
        .iter()
        .fold(Spinor::zeros(), |acc, m| acc + m.amplitude * m.phase(x))
}

/// Analytic `∂_μ ψ` (lower index).
pub fn derivative(f: &DiracField, x: &FourVector, mu: usize) -> Spinor {
    f.modes.iter().fold(Spinor::zeros(), |acc, m| {
        acc + m.amplitude * (m.derivative_factor(mu) * m.phase(x))
    })
}

/// Analytic `∂_μ ∂_ν ψ`.
pub fn second_derivative(f: &DiracField, x: &FourVector, mu: usize, nu: usize) -> Spinor {
    f.modes.iter().fold(Spinor::zeros(), |acc, m| {
        acc + m.amplitude * (m.derivative_factor(mu) * m.derivative_factor(nu) * m.phase(x))
    })
}

/// Analytic `∂^μ ∂_μ ψ`.
pub fn dalembertian(f: &DiracField, x: &FourVector) -> Spinor {
    let eta = crate::lorentz::MetricTensor::DIAGONAL;
    (0..4).fold(Spinor::zeros(), |acc, mu| {
        acc + second_derivative(f, x, mu, mu) * c(eta[mu], 0.0)
    })
}

/// `(iγᵘ∂_μ − m)ψ` with the fixed gamma matrices.
pub fn spinor_dirac_residual(f: &DiracField, x: &FourVector) -> Spinor {
    let g = standard_gammas();
    let mut r = evaluate(f, x) * c(-f.mass, 0.0);
    for mu in 0..4 {
        r += g.get(mu) * derivative(f, x, mu) * c(0.0, 1.0);
    }
    r
}

/// Moves a field into the frame reached by `lt`.
///
/// Momenta become `Λ⁻¹p`. In the spinor picture amplitudes pick up `S(Λ)`, so
/// that `ψ'(Λ⁻¹x) = S ψ(x)`; in the vector picture the field is a scalar and
/// amplitudes are untouched.
pub fn transform_field(f: &DiracField, lt: &LorentzTransform) -> Result<DiracField> {
    let inv = lt.inverse();
    let s = match f.picture {
        Picture::Spinor => Some(spinor_rep_for_transform(lt)?.matrix),
        Picture::Vector => None,
    };
    let modes = f
        .modes
        .iter()
        .map(|m| PlaneWaveMode {
            momentum: inv.apply(&m.momentum),
            energy_sign: m.energy_sign,
            amplitude: match &s {
                Some(s) => s * m.amplitude,
                None => m.amplitude,
            },
        })
        .collect();
    Ok(DiracField {
        mass: f.mass,
        modes,
        picture: f.picture,
        frame: f.frame.compose(lt),
    })
}

/// Rest-frame positive-energy spin-up mode with unit coefficient.
pub fn rest_mode(mass: f64) -> Result<PlaneWaveMode> {
    PlaneWaveMode::positive([0.0; 3], Spin::Up, mass, c(1.0, 0.0))
}

/// `ψ̄ψ` for a bare spinor.
pub fn bar_product(psi: &Spinor) -> C64 {
    (psi.adjoint() * gamma0() * psi)[(0, 0)]
}
