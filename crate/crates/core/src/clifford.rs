//! Gamma-matrix algebra in the Dirac representation.

use std::fmt;

use nalgebra::RowVector4;
use serde::{Deserialize, Serialize};

use crate::linalg::{c, max_abs, CMatrix, Spinor, C64, I};
use crate::lorentz::{FourVector, MetricTensor};

/// Which of the two equivalent pictures an object belongs to.
///
/// In the spinor picture the wave function transforms with `S` and the gamma
/// matrices are fixed. In the vector picture the wave function is a scalar
/// and the gamma matrices transform as the components of a four-vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Spinor,
    Vector,
}

impl fmt::Display for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Picture::Spinor => f.write_str("spinor"),
            Picture::Vector => f.write_str("vector"),
        }
    }
}

/// Four 4×4 matrices `gᵘ` indexed by an upper spacetime index.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    pub matrices: [CMatrix; 4],
    pub picture: Picture,
    pub frame_label: String,
}

impl GammaSet {
    pub fn new(matrices: [CMatrix; 4], picture: Picture, frame_label: impl Into<String>) -> Self {
        GammaSet { matrices, picture, frame_label: frame_label.into() }
    }

    pub fn get(&self, mu: usize) -> &CMatrix {
        &self.matrices[mu]
    }

    /// `gᵘ p_μ`.
    pub fn slash(&self, p: &FourVector) -> CMatrix {
        let lower = p.lower();
        (0..4).fold(CMatrix::zeros(), |acc, mu| acc + self.matrices[mu] * c(lower[mu], 0.0))
    }

    /// Largest entry-wise distance to another set, ignoring tags.
    pub fn max_distance(&self, other: &GammaSet) -> f64 {
        (0..4)
            .map(|mu| max_abs(&(self.matrices[mu] - other.matrices[mu])))
            .fold(0.0, crate::linalg::nan_max)
    }
}

fn pauli() -> [[[C64; 2]; 2]; 3] {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    [
        [[o, l], [l, o]],
        [[o, -I], [I, o]],
        [[l, o], [o, -l]],
    ]
}

/// Dirac-representation gamma matrices: `γ⁰ = diag(1, 1, −1, −1)` and
/// `γᵏ = [[0, σₖ], [−σₖ, 0]]`.
pub fn standard_gammas() -> GammaSet {
    let mut g0 = CMatrix::zeros();
    for (k, s) in [1.0, 1.0, -1.0, -1.0].into_iter().enumerate() {
        g0[(k, k)] = c(s, 0.0);
    }
    let mut mats = [g0, CMatrix::zeros(), CMatrix::zeros(), CMatrix::zeros()];
    for (k, sigma) in pauli().iter().enumerate() {
        let g = &mut mats[k + 1];
        for r in 0..2 {
            for col in 0..2 {
                g[(r, col + 2)] = sigma[r][col];
                g[(r + 2, col)] = -sigma[r][col];
            }
        }
    }
    GammaSet::new(mats, Picture::Spinor, "fixed")
}

/// The fixed `γ⁰`, used for Dirac adjoints in both pictures.
pub fn gamma0() -> CMatrix {
    standard_gammas().matrices[0]
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `σ^{μν} = (i/2)[gᵘ, gᵛ]`, antisymmetric by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaGenerators {
    pub sigma: [[CMatrix; 4]; 4],
}

impl SigmaGenerators {
    pub fn get(&self, mu: usize, nu: usize) -> &CMatrix {
        &self.sigma[mu][nu]
    }
}

pub fn sigma_generators(g: &GammaSet) -> SigmaGenerators {
    let mut sigma = [[CMatrix::zeros(); 4]; 4];
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let s = commutator(g.get(mu), g.get(nu)) * c(0.0, 0.5);
            sigma[mu][nu] = s;
            sigma[nu][mu] = -s;
        }
    }
    SigmaGenerators { sigma }
}

/// `max_{μν} ‖{gᵘ, gᵛ} − 2η^{μν} I‖_max`.
pub fn verify_clifford(g: &GammaSet) -> f64 {
    let mut worst = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let target = CMatrix::identity() * c(2.0 * MetricTensor::component(mu, nu), 0.0);
            let r = max_abs(&(anticommutator(g.get(mu), g.get(nu)) - target));
            worst = crate::linalg::nan_max(worst, r);
        }
    }
    worst
}

/// `(gᵘ p_μ)²`, which the Clifford relation forces to equal `(p·p) I`.
pub fn square_dirac_operator(g: &GammaSet, p: &FourVector) -> CMatrix {
    let s = g.slash(p);
    s * s
}

/// Relative residual `‖(gᵘp_μ)² − (p·p) I‖_max / max(|p|², 1)` with
/// `|p|²` the Euclidean square of the components.
pub fn linearization_residual(g: &GammaSet, p: &FourVector) -> f64 {
    let sq = square_dirac_operator(g, p);
    let target = CMatrix::identity() * c(p.norm_sq(), 0.0);
    let scale = p.components.iter().map(|x| x * x).sum::<f64>().max(1.0);
    max_abs(&(sq - target)) / scale
}

/// `ψ̄ = ψ† γ⁰`.
pub fn dirac_adjoint(psi: &Spinor, g0: &CMatrix) -> RowVector4<C64> {
    psi.adjoint() * g0
}

pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn anti_hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs(&(m + m.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero() -> CMatrix {
        CMatrix::zeros()
    }

    #[test]
    fn standard_set_satisfies_clifford_exactly() {
        let g = standard_gammas();
        assert_eq!(verify_clifford(&g), 0.0);
        let two = CMatrix::identity() * c(2.0, 0.0);
        assert_eq!(anticommutator(g.get(0), g.get(0)), two);
        assert_eq!(anticommutator(g.get(1), g.get(2)), zero());
        assert_eq!(anticommutator(g.get(1), g.get(1)), -two);
        assert_eq!(anticommutator(g.get(0), g.get(1)), zero());
    }

    #[test]
    fn squares_are_exact() {
        let g = standard_gammas();
        assert_eq!(g.get(0) * g.get(0), CMatrix::identity());
        for k in 1..4 {
            assert_eq!(g.get(k) * g.get(k), -CMatrix::identity());
        }
    }

    #[test]
    fn hermiticity_pattern_of_fixed_set() {
        let g = standard_gammas();
        assert_eq!(hermiticity_residual(g.get(0)), 0.0);
        for k in 1..4 {
            assert_eq!(anti_hermiticity_residual(g.get(k)), 0.0);
        }
    }

    #[test]
    fn anticommutator_of_identity_and_symmetry() {
        let id = CMatrix::identity();
        assert_eq!(anticommutator(&id, &id), id * c(2.0, 0.0));
        let a = CMatrix::from_fn(|r, k| c(r as f64 + 0.5, k as f64 - 1.0));
        let b = CMatrix::from_fn(|r, k| c((r * k) as f64, 0.25 * r as f64));
        assert_eq!(anticommutator(&a, &b), anticommutator(&b, &a));
    }

    #[test]
    fn sigma_generators_structure() {
        let g = standard_gammas();
        let s = sigma_generators(&g);
        for mu in 0..4 {
            assert_eq!(*s.get(mu, mu), zero());
            for nu in 0..4 {
                assert_eq!(*s.get(mu, nu), -s.get(nu, mu));
            }
        }
        // γ⁰γ¹ = −γ¹γ⁰ so σ⁰¹ = (i/2)(2γ⁰γ¹)
        let oracle = g.get(0) * g.get(1) * I;
        assert!(max_abs(&(s.get(0, 1) - oracle)) < 1e-15);
        assert!(hermiticity_residual(s.get(1, 2)) < 1e-14);
        for k in 1..4 {
            assert!(anti_hermiticity_residual(s.get(0, k)) < 1e-12);
            for j in 1..4 {
                assert!(hermiticity_residual(s.get(j, k)) < 1e-12);
            }
        }
    }

    #[test]
    fn scaled_gamma_breaks_clifford_by_known_amount() {
        let mut g = standard_gammas();
        g.matrices[1] *= c(1.01, 0.0);
        let r = verify_clifford(&g);
        assert!((r - 0.0402).abs() < 1e-12, "{r}");
    }

    #[test]
    fn dirac_operator_squares_to_mass_shell() {
        let g = standard_gammas();
        let m = 1.7;
        let sq = square_dirac_operator(&g, &FourVector::new(m, 0.0, 0.0, 0.0));
        assert!(max_abs(&(sq - CMatrix::identity() * c(m * m, 0.0))) < 1e-14);

        let p = FourVector::on_shell([0.8, 0.0, 0.0], 1.0);
        let sq = square_dirac_operator(&g, &p);
        assert!(max_abs(&(sq - CMatrix::identity())) < 1e-12);

        let off = FourVector::new(0.3, 2.0, -1.5, 4.0);
        let expected = 0.09 - 4.0 - 2.25 - 16.0;
        let sq = square_dirac_operator(&g, &off);
        assert!(max_abs(&(sq - CMatrix::identity() * c(expected, 0.0))) < 1e-12);
        assert!(linearization_residual(&g, &off) < 1e-14);
    }

    #[test]
    fn adjoint_examples() {
        let g0 = gamma0();
        let up = Spinor::new(c(1.0, 0.0), zero()[(0, 0)], zero()[(0, 0)], zero()[(0, 0)]);
        let adj = dirac_adjoint(&up, &g0);
        assert_eq!(adj, RowVector4::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));

        let low = Spinor::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let adj = dirac_adjoint(&low, &g0);
        assert_eq!(adj, RowVector4::new(c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)));

        let phased = up * I;
        assert_eq!(dirac_adjoint(&phased, &g0)[0], -I);
    }
}
