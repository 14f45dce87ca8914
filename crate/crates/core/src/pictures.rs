//! Conversion between the spinor and vector pictures, bilinear covariants and
//! conserved currents.
//!
//! A [`PictureBundle`] pairs a field with the gamma matrices it is to be used
//! with. Spinor-picture bundles always carry the fixed Dirac matrices. Vector
//! bundles carry `Γᵘ`, which equal the fixed matrices in the lab frame and
//! transform as a four-vector elsewhere.
//!
//! Dirac adjoints use the fixed `γ⁰` in both pictures.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::clifford::{gamma0, standard_gammas, verify_clifford, GammaSet, Picture};
use crate::error::{Error, Result};
use crate::linalg::{c, max_abs_vec, nan_max, CMatrix, Spinor, C64, I};
use crate::lorentz::{FourVector, LorentzTransform, MetricTensor};
use crate::planewave::{dalembertian, derivative, evaluate, transform_field, DiracField};
use crate::spinor_rep::spinor_rep_for_transform;

/// Clifford tolerance for gamma sets accepted into a vector bundle.
pub const CLIFFORD_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct PictureBundle {
    pub field: DiracField,
    pub gammas: GammaSet,
}

fn frame_label(lt: &LorentzTransform) -> String {
    if lt.is_identity(1e-15) {
        "lab".to_string()
    } else {
        format!("lab+{}", lt.lineage().map_or(0, <[_]>::len))
    }
}

impl PictureBundle {
    pub fn new(field: DiracField, gammas: GammaSet) -> Result<Self> {
        let b = PictureBundle { field, gammas };
        b.validate()?;
        Ok(b)
    }

    /// Spinor-picture bundle with the fixed gamma matrices.
    pub fn spinor(field: DiracField) -> Result<Self> {
        let mut gammas = standard_gammas();
        gammas.frame_label = frame_label(&field.frame);
        Self::new(field.with_picture(Picture::Spinor), gammas)
    }

    /// Vector-picture bundle anchored in the lab frame: `Γᵘ_lab = γᵘ` and
    /// `Ψ = ψ_lab`, so no spinor representation is involved.
    pub fn vector_in_lab(field: DiracField) -> Result<Self> {
        if !field.frame.is_identity(1e-15) {
            return Err(Error::Precondition(
                "lab anchoring needs a field whose frame is the lab frame".into(),
            ));
        }
        let mut gammas = standard_gammas();
        gammas.picture = Picture::Vector;
        gammas.frame_label = "lab".into();
        Self::new(field.with_picture(Picture::Vector), gammas)
    }

    pub fn picture(&self) -> Picture {
        self.field.picture
    }

    pub fn frame(&self) -> &LorentzTransform {
        &self.field.frame
    }

    pub fn validate(&self) -> Result<()> {
        if self.field.picture != self.gammas.picture {
            return Err(Error::validation(
                "picture-agreement",
                format!("field is {} but gammas are {}", self.field.picture, self.gammas.picture),
            ));
        }
        match self.field.picture {
            Picture::Spinor => {
                if self.gammas.max_distance(&standard_gammas()) != 0.0 {
                    return Err(Error::validation(
                        "fixed-gammas",
                        "spinor-picture bundles must carry the fixed Dirac matrices",
                    ));
                }
            }
            Picture::Vector => {
                let r = verify_clifford(&self.gammas);
                if r.is_nan() || r >= CLIFFORD_TOL {
                    return Err(Error::validation("clifford", format!("Clifford residual {r:e}")));
                }
            }
        }
        Ok(())
    }
}

fn map_amplitudes(f: &DiracField, m: &CMatrix, picture: Picture) -> DiracField {
    let mut out = f.clone();
    for mode in &mut out.modes {
        mode.amplitude = m * mode.amplitude;
    }
    out.picture = picture;
    out
}

/// `Ψ = S⁻¹ψ`, `Γᵘ = S⁻¹γᵘS` with `S` the spinor representation of the
/// bundle's frame relative to the lab.
pub fn to_vector_picture(b: &PictureBundle) -> Result<PictureBundle> {
    if b.picture() != Picture::Spinor {
        return Err(Error::Precondition("to_vector_picture needs a spinor-picture bundle".into()));
    }
    let s = spinor_rep_for_transform(b.frame())?;
    let field = map_amplitudes(&b.field, &s.inverse_matrix(), Picture::Vector);
    let gammas = GammaSet::new(
        s.conjugate_gammas(&standard_gammas()),
        Picture::Vector,
        frame_label(b.frame()),
    );
    Ok(PictureBundle { field, gammas })
}

/// Exact inverse of [`to_vector_picture`]: `ψ = SΨ` with fixed gammas.
pub fn to_spinor_picture(b: &PictureBundle) -> Result<PictureBundle> {
    if b.picture() != Picture::Vector {
        return Err(Error::Precondition("to_spinor_picture needs a vector-picture bundle".into()));
    }
    let s = spinor_rep_for_transform(b.frame())?;
    let field = map_amplitudes(&b.field, &s.matrix, Picture::Spinor);
    let mut gammas = standard_gammas();
    gammas.frame_label = frame_label(b.frame());
    Ok(PictureBundle { field, gammas })
}

/// Vector-law transform `Γ'ᵘ = (Λ⁻¹)ᵘ_ν Γᵛ` by index contraction only.
pub fn transform_gammas(g: &GammaSet, lt: &LorentzTransform) -> Result<GammaSet> {
    if g.picture != Picture::Vector {
        return Err(Error::Precondition("the fixed spinor-picture gammas do not transform".into()));
    }
    let inv = lt.inverse();
    let mut out = [CMatrix::zeros(); 4];
    for (mu, slot) in out.iter_mut().enumerate() {
        for nu in 0..4 {
            *slot += g.get(nu) * c(inv.component(mu, nu), 0.0);
        }
    }
    Ok(GammaSet::new(out, Picture::Vector, frame_label(lt)))
}

/// `Γᵘ = S⁻¹γᵘS` for the frame reached from the lab by `lt`; the conjugation
/// route, cross-checked against [`transform_gammas`].
pub fn gammas_by_conjugation(lt: &LorentzTransform) -> Result<GammaSet> {
    let s = spinor_rep_for_transform(lt)?;
    Ok(GammaSet::new(
        s.conjugate_gammas(&standard_gammas()),
        Picture::Vector,
        frame_label(lt),
    ))
}

/// Moves a bundle to the frame reached by `lt`. Vector bundles transform the
/// gammas by index contraction and never touch `S`.
pub fn transform_bundle(b: &PictureBundle, lt: &LorentzTransform) -> Result<PictureBundle> {
    let field = transform_field(&b.field, lt)?;
    let gammas = match b.picture() {
        Picture::Spinor => {
            let mut g = standard_gammas();
            g.frame_label = frame_label(&field.frame);
            g
        }
        Picture::Vector => {
            let mut g = transform_gammas(&b.gammas, lt)?;
            g.frame_label = frame_label(&field.frame);
            g
        }
    };
    Ok(PictureBundle { field, gammas })
}

/// `gᵘ ∂_μ ψ` at `x`.
pub fn dirac_operator(b: &PictureBundle, x: &FourVector) -> Spinor {
    (0..4).fold(Spinor::zeros(), |acc, mu| {
        acc + b.gammas.get(mu) * derivative(&b.field, x, mu)
    })
}

/// `(i gᵘ ∂_μ − m) ψ` at `x`, with the bundle's own gamma matrices.
pub fn dirac_residual(b: &PictureBundle, x: &FourVector) -> Spinor {
    dirac_operator(b, x) * I - evaluate(&b.field, x) * c(b.field.mass, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BilinearReport {
    /// `ψ̄ψ`
    pub scalar_bar: C64,
    /// `ψ†ψ`
    pub density: f64,
    /// `ψ̄ gᵘ ψ`, upper index.
    pub vector_current: [C64; 4],
    /// `(i/2) ψ† ∂_μ↔ ψ`, lower index.
    pub kg_current: [C64; 4],
    pub evaluated_at: FourVector,
}

impl BilinearReport {
    /// `j^μ` from the lowered Klein–Gordon current.
    pub fn kg_current_upper(&self) -> [C64; 4] {
        let eta = MetricTensor::DIAGONAL;
        std::array::from_fn(|mu| self.kg_current[mu] * eta[mu])
    }
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

impl Serialize for BilinearReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BilinearReport", 5)?;
        st.serialize_field("scalar_bar", &pair(&self.scalar_bar))?;
        st.serialize_field("density", &self.density)?;
        st.serialize_field("vector_current", &self.vector_current.each_ref().map(pair))?;
        st.serialize_field("kg_current", &self.kg_current.each_ref().map(pair))?;
        st.serialize_field("event", &self.evaluated_at)?;
        st.end()
    }
}

fn sandwich(left: &Spinor, m: &CMatrix, right: &Spinor) -> C64 {
    (left.adjoint() * m * right)[(0, 0)]
}

pub fn bilinears(b: &PictureBundle, x: &FourVector) -> BilinearReport {
    let psi = evaluate(&b.field, x);
    let g0 = gamma0();
    let scalar_bar = sandwich(&psi, &g0, &psi);
    let density = psi.norm_squared();
    let vector_current = std::array::from_fn(|mu| sandwich(&psi, &(g0 * b.gammas.get(mu)), &psi));
    let kg_current = std::array::from_fn(|mu| {
        let d = derivative(&b.field, x, mu);
        let a = psi.dotc(&d);
        let bb = d.dotc(&psi);
        (a - bb) * c(0.0, 0.5)
    });
    BilinearReport { scalar_bar, density, vector_current, kg_current, evaluated_at: *x }
}

/// Residuals of the picture-equivalence identities at one event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearEqualities {
    /// `|Ψ̄Ψ − ψ̄ψ|`
    pub scalar: f64,
    /// `max_μ |Ψ̄ΓᵘΨ − ψ̄γᵘψ|`
    pub vector: f64,
    /// `|Ψ†Ψ − ψ†ψ|`, expected to be non-zero away from the lab frame.
    pub density_witness: f64,
    pub spinor_density: f64,
    pub vector_density: f64,
}

fn check_partners(spinor: &PictureBundle, vector: &PictureBundle) -> Result<()> {
    if spinor.picture() != Picture::Spinor || vector.picture() != Picture::Vector {
        return Err(Error::Precondition("expected a (spinor, vector) bundle pair".into()));
    }
    let (fs, fv) = (spinor.frame(), vector.frame());
    let same_frame = crate::linalg::max_abs(&(fs.matrix() - fv.matrix())) < 1e-12
        && fs.lineage() == fv.lineage();
    if !same_frame || spinor.field.modes.len() != vector.field.modes.len() {
        return Err(Error::Precondition("bundles are not picture partners".into()));
    }
    let s_inv = spinor_rep_for_transform(fs)?.inverse_matrix();
    for (a, b) in spinor.field.modes.iter().zip(&vector.field.modes) {
        let scale = max_abs_vec(&a.amplitude).max(1.0);
        if a.momentum != b.momentum
            || a.energy_sign != b.energy_sign
            || max_abs_vec(&(s_inv * a.amplitude - b.amplitude)) > 1e-9 * scale
        {
            return Err(Error::Precondition("bundles are not picture partners".into()));
        }
    }
    Ok(())
}

pub fn check_bilinear_equalities(
    spinor: &PictureBundle,
    vector: &PictureBundle,
    x: &FourVector,
) -> Result<BilinearEqualities> {
    check_partners(spinor, vector)?;
    let s = bilinears(spinor, x);
    let v = bilinears(vector, x);
    let vec_res = (0..4)
        .map(|mu| (v.vector_current[mu] - s.vector_current[mu]).norm())
        .fold(0.0, nan_max);
    Ok(BilinearEqualities {
        scalar: (v.scalar_bar - s.scalar_bar).norm(),
        vector: vec_res,
        density_witness: (v.density - s.density).abs(),
        spinor_density: s.density,
        vector_density: v.density,
    })
}

/// `∂_μ(ψ̄gᵘψ)` and `∂^μ j_μ` at `x`, both from closed-form derivatives.
pub fn current_divergence(b: &PictureBundle, x: &FourVector) -> (C64, C64) {
    let psi = evaluate(&b.field, x);
    let g0 = gamma0();
    let mut dirac = c(0.0, 0.0);
    for mu in 0..4 {
        let d = derivative(&b.field, x, mu);
        let m = g0 * b.gammas.get(mu);
        dirac += sandwich(&d, &m, &psi) + sandwich(&psi, &m, &d);
    }
    let box_psi = dalembertian(&b.field, x);
    let kg = (psi.dotc(&box_psi) - box_psi.dotc(&psi)) * c(0.0, 0.5);
    (dirac, kg)
}

/// Residuals of the vector-picture transformation laws under a frame change.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameInvariance {
    /// `|ρ'(x') − ρ(x)|`
    pub rho: f64,
    /// `max_μ |j'_μ(x') − Λᵅ_μ j_α(x)|`
    pub kg_current: f64,
    /// `max_μ |Ψ̄'Γ'ᵘΨ'(x') − (Λ⁻¹)ᵘ_ν Ψ̄ΓᵛΨ(x)|`
    pub vector_current: f64,
    pub rho_before: f64,
    pub rho_after: f64,
    /// `ψ†ψ` of the spinor-picture partner in the new frame at `x'`.
    pub spinor_density_after: f64,
}

impl FrameInvariance {
    pub fn max_residual(&self) -> f64 {
        nan_max(nan_max(self.rho, self.kg_current), self.vector_current)
    }
}

pub fn frame_invariance_of_rho_and_j(
    b: &PictureBundle,
    lt: &LorentzTransform,
    x: &FourVector,
) -> Result<FrameInvariance> {
    if b.picture() != Picture::Vector {
        return Err(Error::Precondition("frame invariance of ρ and j is a vector-picture check".into()));
    }
    let moved = transform_bundle(b, lt)?;
    let xp = lt.to_frame(x);
    let before = bilinears(b, x);
    let after = bilinears(&moved, &xp);
    let lam = lt.matrix();
    let inv = lt.inverse();

    let mut kg = 0.0f64;
    let mut vc = 0.0f64;
    for mu in 0..4 {
        let expected_j: C64 = (0..4).map(|a| before.kg_current[a] * lam[(a, mu)]).sum();
        kg = nan_max(kg, (after.kg_current[mu] - expected_j).norm());
        let expected_v: C64 = (0..4).map(|nu| before.vector_current[nu] * inv.component(mu, nu)).sum();
        vc = nan_max(vc, (after.vector_current[mu] - expected_v).norm());
    }
    let spinor_after = to_spinor_picture(&moved)?;
    Ok(FrameInvariance {
        rho: (after.density - before.density).abs(),
        kg_current: kg,
        vector_current: vc,
        rho_before: before.density,
        rho_after: after.density,
        spinor_density_after: evaluate(&spinor_after.field, &xp).norm_squared(),
    })
}

/// Spinor-picture transformation laws of `ψ̄ψ`, `ψ̄γᵘψ` and `ψ†ψ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorBilinearLaws {
    /// `|ψ̄'ψ'(x') − ψ̄ψ(x)|`
    pub scalar: f64,
    /// `max_μ |ψ̄'γᵘψ'(x') − (Λ⁻¹)ᵘ_ν ψ̄γᵛψ(x)|`
    pub vector: f64,
    pub scalar_before: f64,
    pub density_before: f64,
    pub density_after: f64,
}

pub fn spinor_bilinear_laws(
    b: &PictureBundle,
    lt: &LorentzTransform,
    x: &FourVector,
) -> Result<SpinorBilinearLaws> {
    if b.picture() != Picture::Spinor {
        return Err(Error::Precondition("expected a spinor-picture bundle".into()));
    }
    let moved = transform_bundle(b, lt)?;
    let before = bilinears(b, x);
    let after = bilinears(&moved, &lt.to_frame(x));
    let inv = lt.inverse();
    let vector = (0..4)
        .map(|mu| {
            let expected: C64 = (0..4).map(|nu| before.vector_current[nu] * inv.component(mu, nu)).sum();
            (after.vector_current[mu] - expected).norm()
        })
        .fold(0.0, nan_max);
    Ok(SpinorBilinearLaws {
        scalar: (after.scalar_bar - before.scalar_bar).norm(),
        vector,
        scalar_before: before.scalar_bar.re,
        density_before: before.density,
        density_after: after.density,
    })
}

/// `|Γ'ᵘ∂'_μΨ'(x') − Γᵘ∂_μΨ(x)|` for a vector bundle moved by `lt`, using the
/// index-contraction gamma transform and the scalar field law only.
pub fn vector_covariance_residual(
    b: &PictureBundle,
    lt: &LorentzTransform,
    x: &FourVector,
) -> Result<f64> {
    if b.picture() != Picture::Vector {
        return Err(Error::Precondition("covariance check needs a vector-picture bundle".into()));
    }
    let moved = transform_bundle(b, lt)?;
    let lhs = dirac_operator(&moved, &lt.to_frame(x));
    let rhs = dirac_operator(b, x);
    Ok(max_abs_vec(&(lhs - rhs)))
}
