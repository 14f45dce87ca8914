//! Spinor representation `S(Λ)` of a Lorentz transform.
//!
//! `S` is defined by the intertwining relation `S γᵅ S⁻¹ = γᵘ Λᵅ_μ`. It is
//! built by exponentiating the spinor generator that corresponds to the same
//! generator parameters as `Λ`:
//!
//! ```text
//! ω_{μν} = η_{μα} Gᵅ_ν,     S = exp((i/4) ω_{μν} σ^{μν})
//! ```
//!
//! where `G` is the vector generator with `Λ = exp(G)`. For a transform built
//! from several steps `Λ = exp(G₁)⋯exp(Gₙ)` the relation above makes `S`
//! reverse the order, `S(Λ) = S(Gₙ)⋯S(G₁)`. Building from the lineage instead
//! of a matrix logarithm also fixes the double-cover sign: a full turn gives
//! `S = −I` even though `Λ = I`.

use nalgebra::Cholesky;

use crate::clifford::{gamma0, sigma_generators, standard_gammas, GammaSet};
use crate::error::{Error, Result};
use crate::linalg::{c, expm, max_abs, nan_max, CMatrix};
use crate::lorentz::{GeneratorParams, LorentzTransform, MetricTensor};

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorRep {
    pub matrix: CMatrix,
    pub lineage: Vec<GeneratorParams>,
}

impl SpinorRep {
    pub fn identity() -> Self {
        SpinorRep { matrix: CMatrix::identity(), lineage: Vec::new() }
    }

    /// `S⁻¹ = γ⁰ S† γ⁰`.
    pub fn inverse_matrix(&self) -> CMatrix {
        let g0 = gamma0();
        g0 * self.matrix.adjoint() * g0
    }

    /// `S⁻¹` by LU factorisation, independent of the pseudo-unitarity identity.
    pub fn lu_inverse(&self) -> Result<CMatrix> {
        self.matrix
            .try_inverse()
            .ok_or_else(|| Error::Numeric("spinor representation is singular".into()))
    }

    pub fn determinant(&self) -> crate::linalg::C64 {
        self.matrix.determinant()
    }

    /// `‖S†S − I‖_max`; zero exactly when `S` is unitary.
    pub fn non_unitarity(&self) -> f64 {
        max_abs(&(self.matrix.adjoint() * self.matrix - CMatrix::identity()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        max_abs(&(self.matrix - self.matrix.adjoint())) < tol
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_hermitian(1e-10) && Cholesky::new(self.matrix).is_some()
    }

    /// Conjugates a gamma set: `S⁻¹ gᵘ S` for every μ.
    pub fn conjugate_gammas(&self, g: &GammaSet) -> [CMatrix; 4] {
        let inv = self.inverse_matrix();
        g.matrices.map(|m| inv * m * self.matrix)
    }
}

/// Spinor generator `(i/4) ω_{μν} σ^{μν}` for one set of parameters.
pub fn spinor_generator(params: &GeneratorParams) -> CMatrix {
    let g = params.generator();
    let sigma = sigma_generators(&standard_gammas());
    let mut x = CMatrix::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            let omega = MetricTensor::DIAGONAL[mu] * g[(mu, nu)];
            if omega != 0.0 {
                x += sigma.get(mu, nu) * c(0.0, 0.25 * omega);
            }
        }
    }
    x
}

pub fn spinor_rep_for(params: &GeneratorParams) -> Result<SpinorRep> {
    params.validate()?;
    let matrix = expm(&spinor_generator(params))
        .ok_or_else(|| Error::Numeric(format!("spinor exponential diverged for {params:?}")))?;
    Ok(SpinorRep { matrix, lineage: vec![*params] })
}

/// `S(Λ)` from the lineage of `Λ`. Transforms without lineage (raw matrices)
/// are rejected.
pub fn spinor_rep_for_transform(lt: &LorentzTransform) -> Result<SpinorRep> {
    let lineage = lt.lineage().ok_or_else(|| {
        Error::Unsupported("transform has no generator lineage; raw matrices cannot be lifted".into())
    })?;
    let mut matrix = CMatrix::identity();
    for p in lineage {
        matrix = spinor_rep_for(p)?.matrix * matrix;
    }
    Ok(SpinorRep { matrix, lineage: lineage.to_vec() })
}

/// Largest residual of `S γᵅ S⁻¹ = γᵘ Λᵅ_μ` and of its inverse form
/// `S⁻¹ γᵅ S = γᵘ (Λ⁻¹)ᵅ_μ`, with `S⁻¹` taken by LU.
pub fn verify_intertwining(s: &SpinorRep, lt: &LorentzTransform) -> f64 {
    let Ok(inv) = s.lu_inverse() else {
        return f64::INFINITY;
    };
    let g = standard_gammas();
    let lam = lt.matrix();
    let lam_inv = lt.inverse();
    let mut worst = 0.0f64;
    for alpha in 0..4 {
        let fwd = s.matrix * g.get(alpha) * inv;
        let bwd = inv * g.get(alpha) * s.matrix;
        let mut fwd_target = CMatrix::zeros();
        let mut bwd_target = CMatrix::zeros();
        for mu in 0..4 {
            fwd_target += g.get(mu) * c(lam[(alpha, mu)], 0.0);
            bwd_target += g.get(mu) * c(lam_inv.component(alpha, mu), 0.0);
        }
        worst = nan_max(worst, max_abs(&(fwd - fwd_target)));
        worst = nan_max(worst, max_abs(&(bwd - bwd_target)));
    }
    worst
}

/// Largest residual of `S⁻¹ = γ⁰S†γ⁰` and `γ⁰S⁻¹ = S†γ⁰`, with `S⁻¹` by LU.
pub fn verify_pseudo_unitarity(s: &SpinorRep) -> f64 {
    let Ok(inv) = s.lu_inverse() else {
        return f64::INFINITY;
    };
    let g0 = gamma0();
    let dag = s.matrix.adjoint();
    let a = max_abs(&(inv - g0 * dag * g0));
    let b = max_abs(&(g0 * inv - dag * g0));
    nan_max(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{C64, I};
    use std::f64::consts::PI;

    /// Unscaled Taylor series, independent of `expm`.
    fn series_exp(x: &CMatrix) -> CMatrix {
        let mut sum = CMatrix::identity();
        let mut term = CMatrix::identity();
        for k in 1..80 {
            term = term * x * c(1.0 / k as f64, 0.0);
            sum += term;
        }
        sum
    }

    #[test]
    fn zero_params_give_identity() {
        let s = spinor_rep_for(&GeneratorParams::default()).unwrap();
        assert_eq!(s.matrix, CMatrix::identity());
    }

    #[test]
    fn unit_boost_closed_form() {
        let p = GeneratorParams::boost([1.0, 0.0, 0.0]);
        let s = spinor_rep_for(&p).unwrap();
        let g = standard_gammas();
        let g0g1 = g.get(0) * g.get(1);
        // γ⁰γ¹ squares to I, so the series oracle collapses to cosh/sinh
        let oracle = series_exp(&(g0g1 * c(-0.5, 0.0)));
        assert!(max_abs(&(s.matrix - oracle)) < 1e-14);
        let closed = CMatrix::identity() * c(0.5f64.cosh(), 0.0) - g0g1 * c(0.5f64.sinh(), 0.0);
        assert!(max_abs(&(s.matrix - closed)) < 1e-14);
        assert!((s.matrix[(0, 0)].re - 1.1276259652).abs() < 1e-10);
        assert!((s.matrix[(0, 3)].re.abs() - 0.5210953055).abs() < 1e-10);
        let lt = LorentzTransform::from_params(p).unwrap();
        assert!(verify_intertwining(&s, &lt) < 1e-10);
    }

    #[test]
    fn full_turn_is_minus_identity() {
        let p = GeneratorParams::rotation([0.0, 0.0, 2.0 * PI]);
        let s = spinor_rep_for(&p).unwrap();
        assert!(max_abs(&(s.matrix + CMatrix::identity())) < 1e-10);
        assert!(LorentzTransform::from_params(p).unwrap().is_identity(1e-10));
    }

    #[test]
    fn identity_transform_lifts_to_identity() {
        let s = spinor_rep_for_transform(&LorentzTransform::identity()).unwrap();
        assert_eq!(s.matrix, CMatrix::identity());
        assert_eq!(verify_intertwining(&s, &LorentzTransform::identity()), 0.0);
    }

    #[test]
    fn composed_transform_reverses_order() {
        let b = LorentzTransform::boost([1.0, 0.0, 0.0]).unwrap();
        let r = LorentzTransform::rotation([0.0, 0.0, PI]).unwrap();
        let lt = b.compose(&r);
        let s = spinor_rep_for_transform(&lt).unwrap();
        let sb = spinor_rep_for_transform(&b).unwrap();
        let sr = spinor_rep_for_transform(&r).unwrap();
        assert_eq!(s.matrix, sr.matrix * sb.matrix);
        assert!(verify_intertwining(&s, &lt) < 1e-9);
        // the other order is not a representation of this Λ
        let wrong = SpinorRep { matrix: sb.matrix * sr.matrix, lineage: vec![] };
        assert!(verify_intertwining(&wrong, &lt) > 0.1);
    }

    #[test]
    fn transform_then_inverse_lifts_to_identity() {
        let lt = LorentzTransform::from_lineage(&[
            GeneratorParams { rapidity: [0.4, -1.1, 0.3], rotation: [0.2, 0.0, -2.0] },
            GeneratorParams::boost([0.0, 0.7, 0.0]),
        ])
        .unwrap();
        let s = spinor_rep_for_transform(&lt).unwrap();
        let si = spinor_rep_for_transform(&lt.inverse()).unwrap();
        assert!(max_abs(&(s.matrix * si.matrix - CMatrix::identity())) < 1e-10);
    }

    #[test]
    fn raw_matrix_rejected() {
        let b = LorentzTransform::boost([0.5, 0.0, 0.0]).unwrap();
        let raw = LorentzTransform::from_raw_matrix(*b.matrix()).unwrap();
        assert!(matches!(spinor_rep_for_transform(&raw), Err(Error::Unsupported(_))));
    }

    #[test]
    fn mismatched_pair_residual() {
        let s = spinor_rep_for(&GeneratorParams::boost([1.0, 0.0, 0.0])).unwrap();
        let lt = LorentzTransform::boost([2.0, 0.0, 0.0]).unwrap();
        // γ⁰ and γ¹ occupy disjoint entries, so the max-abs residual is the
        // larger of the cosh and sinh mismatches
        let expected = (2.0f64.cosh() - 1.0f64.cosh()).max(2.0f64.sinh() - 1.0f64.sinh());
        let r = verify_intertwining(&s, &lt);
        assert!((r - expected).abs() < 1e-9, "{r} vs {expected}");
        assert!(r > 2.2188);
    }

    #[test]
    fn rotations_are_unitary() {
        let s = spinor_rep_for(&GeneratorParams::rotation([0.3, -1.2, 2.5])).unwrap();
        assert!(verify_pseudo_unitarity(&s) < 1e-12);
        assert!(s.non_unitarity() < 1e-12);
    }

    #[test]
    fn boosts_are_hermitian_positive_but_not_unitary() {
        let s = spinor_rep_for(&GeneratorParams::boost([1.0, 0.0, 0.0])).unwrap();
        assert!(verify_pseudo_unitarity(&s) < 1e-10);
        assert!(s.is_hermitian(1e-12));
        assert!(s.is_positive_definite());
        // S†S = cosh(1) I − sinh(1) γ⁰γ¹: diagonal off by cosh(1) − 1, the
        // off-diagonal block by sinh(1)
        let n = s.non_unitarity();
        assert!((n - 1.0f64.sinh()).abs() < 1e-12, "{n}");
        let sds = s.matrix.adjoint() * s.matrix;
        assert!((sds[(0, 0)].re - 1.0 - (1.0f64.cosh() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn unimodular() {
        let s = spinor_rep_for(&GeneratorParams { rapidity: [1.0, 2.0, -0.5], rotation: [4.0, 1.0, 0.0] })
            .unwrap();
        let d: C64 = s.determinant();
        assert!((d - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn pseudo_inverse_matches_lu() {
        let s = spinor_rep_for(&GeneratorParams { rapidity: [0.9, -0.4, 1.3], rotation: [0.1, 2.0, -3.0] })
            .unwrap();
        assert!(max_abs(&(s.inverse_matrix() - s.lu_inverse().unwrap())) < 1e-10);
        let _ = I;
    }
}
