//! Minkowski metric, four-vectors and proper orthochronous Lorentz transforms.
//!
//! Frame convention: a transform `Λ` relates old coordinates `x` to new
//! coordinates `x'` by `x = Λ x'`, so the new-frame components of an event are
//! `x' = Λ⁻¹ x` (see [`LorentzTransform::to_frame`]). Momenta follow the same
//! rule.
//!
//! Transforms are only ever built from generators (boosts, rotations and their
//! compositions). Each keeps the ordered list of generator parameters it was
//! built from, which is what the spinor representation is constructed from.

use std::ops::Index;

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{expm, max_abs, RMatrix};

/// Tolerance used when validating that a matrix is a proper orthochronous
/// Lorentz transform.
pub const METRIC_TOL: f64 = 1e-10;

/// Spacetime or momentum four-vector, index 0 is time (c = 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector {
    pub components: [f64; 4],
}

impl FourVector {
    pub const ZERO: FourVector = FourVector { components: [0.0; 4] };

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { components: [t, x, y, z] }
    }

    /// On-shell momentum `(√(|p|² + m²), p)`.
    pub fn on_shell(p3: [f64; 3], mass: f64) -> Self {
        let e = (p3[0] * p3[0] + p3[1] * p3[1] + p3[2] * p3[2] + mass * mass).sqrt();
        FourVector::new(e, p3[0], p3[1], p3[2])
    }

    /// Minkowski product `η_{μν} aᵘ bᵛ`.
    pub fn dot(&self, other: &FourVector) -> f64 {
        let (a, b) = (&self.components, &other.components);
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// Components with the index lowered by the metric.
    pub fn lower(&self) -> [f64; 4] {
        let a = &self.components;
        [a[0], -a[1], -a[2], -a[3]]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.components[1], self.components[2], self.components[3]]
    }

    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::from(self.components)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        FourVector { components: [v[0], v[1], v[2], v[3]] }
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

impl Index<usize> for FourVector {
    type Output = f64;

    fn index(&self, mu: usize) -> &f64 {
        &self.components[mu]
    }
}

/// The Minkowski metric `diag(1, −1, −1, −1)`. It is its own inverse.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MetricTensor;

impl MetricTensor {
    pub const DIAGONAL: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

    pub fn component(mu: usize, nu: usize) -> f64 {
        if mu == nu {
            Self::DIAGONAL[mu]
        } else {
            0.0
        }
    }

    pub fn matrix() -> RMatrix {
        RMatrix::from_diagonal(&Vector4::from(Self::DIAGONAL))
    }
}

/// Coefficients of the three boost and three rotation generators.
///
/// Rapidity is dimensionless, rotation angles are in radians. Rotations are
/// active and right-handed about their axis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub rapidity: [f64; 3],
    pub rotation: [f64; 3],
}

impl GeneratorParams {
    pub fn boost(rapidity: [f64; 3]) -> Self {
        GeneratorParams { rapidity, rotation: [0.0; 3] }
    }

    pub fn rotation(angles: [f64; 3]) -> Self {
        GeneratorParams { rapidity: [0.0; 3], rotation: angles }
    }

    pub fn negated(&self) -> Self {
        GeneratorParams {
            rapidity: self.rapidity.map(|x| -x),
            rotation: self.rotation.map(|x| -x),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rapidity.iter().chain(&self.rotation).all(|&x| x == 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rapidity.iter().chain(&self.rotation).all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "generator parameters must be finite, got {self:?}"
            )))
        }
    }

    /// The Lie-algebra element `Σ rₖ Kₖ + Σ aₖ Jₖ` with mixed indices (row
    /// upper, column lower).
    ///
    /// `(Kₖ)⁰ₖ = (Kₖ)ᵏ₀ = 1` and `(Jₖ)ⁱⱼ = −ε_{ijk}`.
    pub fn generator(&self) -> RMatrix {
        let mut g = RMatrix::zeros();
        for k in 0..3 {
            g[(0, k + 1)] += self.rapidity[k];
            g[(k + 1, 0)] += self.rapidity[k];
        }
        let [ax, ay, az] = self.rotation;
        g[(1, 2)] -= az;
        g[(2, 1)] += az;
        g[(2, 3)] -= ax;
        g[(3, 2)] += ax;
        g[(3, 1)] -= ay;
        g[(1, 3)] += ay;
        g
    }
}

/// A proper orthochronous Lorentz transform `Λᵘ_ν` (row μ, column ν).
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzTransform {
    matrix: RMatrix,
    params: Option<GeneratorParams>,
    lineage: Option<Vec<GeneratorParams>>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        LorentzTransform {
            matrix: RMatrix::identity(),
            params: None,
            lineage: Some(Vec::new()),
        }
    }

    /// `Λ = exp(Σ rₖ Kₖ + Σ aₖ Jₖ)` as a single exponential.
    pub fn from_params(params: GeneratorParams) -> Result<Self> {
        params.validate()?;
        let matrix = expm(&params.generator())
            .ok_or_else(|| Error::Numeric(format!("exponential diverged for {params:?}")))?;
        Ok(LorentzTransform {
            matrix,
            params: Some(params),
            lineage: Some(vec![params]),
        })
    }

    pub fn boost(rapidity: [f64; 3]) -> Result<Self> {
        Self::from_params(GeneratorParams::boost(rapidity))
    }

    pub fn rotation(angles: [f64; 3]) -> Result<Self> {
        Self::from_params(GeneratorParams::rotation(angles))
    }

    /// Composition of a list of generator steps, applied left to right:
    /// `Λ = exp(g₁) · exp(g₂) · …`.
    pub fn from_lineage(steps: &[GeneratorParams]) -> Result<Self> {
        steps.iter().try_fold(Self::identity(), |acc, p| {
            Ok(acc.compose(&Self::from_params(*p)?))
        })
    }

    /// Wraps a raw matrix after checking it is proper orthochronous.
    ///
    /// The result carries no lineage, so it cannot be lifted to a spinor
    /// representation.
    pub fn from_raw_matrix(matrix: RMatrix) -> Result<Self> {
        let t = LorentzTransform { matrix, params: None, lineage: None };
        t.validate()?;
        Ok(t)
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn params(&self) -> Option<&GeneratorParams> {
        self.params.as_ref()
    }

    pub fn lineage(&self) -> Option<&[GeneratorParams]> {
        self.lineage.as_deref()
    }

    /// `Λᵘ_ν`.
    pub fn component(&self, mu: usize, nu: usize) -> f64 {
        self.matrix[(mu, nu)]
    }

    /// Matrix product `a · b`; lineages are concatenated.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        let lineage: Option<Vec<GeneratorParams>> = match (&self.lineage, &other.lineage) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        let params = match lineage.as_deref() {
            Some([only]) => Some(*only),
            _ => None,
        };
        LorentzTransform {
            matrix: self.matrix * other.matrix,
            params,
            lineage,
        }
    }

    /// `Λ⁻¹ = η Λᵀ η`, with the lineage reversed and negated.
    pub fn inverse(&self) -> LorentzTransform {
        let eta = MetricTensor::matrix();
        LorentzTransform {
            matrix: eta * self.matrix.transpose() * eta,
            params: self.params.map(|p| p.negated()),
            lineage: self
                .lineage
                .as_ref()
                .map(|l| l.iter().rev().map(GeneratorParams::negated).collect()),
        }
    }

    /// `(Λx)ᵘ = Λᵘ_ν xᵛ`.
    pub fn apply(&self, x: &FourVector) -> FourVector {
        FourVector::from_vector(&(self.matrix * x.as_vector()))
    }

    /// New-frame components `x' = Λ⁻¹ x` of an event or momentum given in the
    /// old frame.
    pub fn to_frame(&self, x: &FourVector) -> FourVector {
        self.inverse().apply(x)
    }

    /// `‖ΛᵀηΛ − η‖_max`.
    pub fn metric_residual(&self) -> f64 {
        let eta = MetricTensor::matrix();
        max_abs(&(self.matrix.transpose() * eta * self.matrix - eta))
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.matrix.iter().all(|x| x.is_finite()) {
            return Err(Error::validation("finite-entries", "transform has non-finite entries"));
        }
        let r = self.metric_residual();
        if r >= METRIC_TOL {
            return Err(Error::validation(
                "metric-preservation",
                format!("‖ΛᵀηΛ − η‖ = {r:e}"),
            ));
        }
        let det = self.determinant();
        if (det - 1.0).abs() >= METRIC_TOL {
            return Err(Error::validation("proper", format!("det Λ = {det}")));
        }
        if self.matrix[(0, 0)] < 1.0 - METRIC_TOL {
            return Err(Error::validation(
                "orthochronous",
                format!("Λ⁰₀ = {}", self.matrix[(0, 0)]),
            ));
        }
        Ok(())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        max_abs(&(self.matrix - Matrix4::identity())) < tol
    }
}

impl Default for LorentzTransform {
    fn default() -> Self {
        Self::identity()
    }
}
