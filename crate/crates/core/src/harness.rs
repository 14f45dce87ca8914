//! The verification suite: a catalogue of identity checks run against a field
//! and a transform, aggregated into a deterministic report.
//!
//! Each check returns one number. For `below` checks it is a maximum residual
//! that must stay under the tolerance; for `above` checks it is a witness that
//! must exceed the threshold (for example the amount by which `ψ†ψ` fails to
//! be invariant). Residuals of bilinears are divided by `max(1, A)²` and Dirac
//! residuals by `max(1, A)·max(1, E)`, where `A` is the summed max-abs
//! amplitude of the field and `E` its largest mode energy.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::clifford::{square_dirac_operator, standard_gammas, verify_clifford, GammaSet, Picture};
use crate::error::{Error, Result};
use crate::fieldspec::FieldSpec;
use crate::linalg::{c, max_abs, max_abs_vec, nan_max, CMatrix};
use crate::lorentz::{FourVector, GeneratorParams, LorentzTransform};
use crate::pictures::{
    bilinears, check_bilinear_equalities, current_divergence, dirac_residual,
    frame_invariance_of_rho_and_j, gammas_by_conjugation, spinor_bilinear_laws, to_spinor_picture,
    to_vector_picture, transform_gammas, vector_covariance_residual, PictureBundle,
};
use crate::planewave::{
    derivative, evaluate, rest_mode, transform_field, DiracField, EnergySign, PlaneWaveMode,
};
use crate::rng::{stream_id, DrawRng};
use crate::spinor_rep::{
    spinor_rep_for, spinor_rep_for_transform, verify_intertwining, verify_pseudo_unitarity,
};
use crate::sweep::{max_over, try_max_over, Execution};

/// Half-width of the box random events are drawn from.
pub const EVENT_HALF_WIDTH: f64 = 10.0;
/// Rapidity of the reference boost used by the non-invariance witnesses.
pub const REFERENCE_RAPIDITY: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub check_id: String,
    pub paper_eq: String,
    pub tolerance: f64,
    pub sweep_size: u64,
    pub rng_seed: u64,
}

impl CheckSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::validation(
                "tolerance-positive",
                format!("{}: tolerance must be finite and > 0", self.check_id),
            ));
        }
        if self.sweep_size == 0 {
            return Err(Error::validation(
                "sweep-size",
                format!("{}: sweep_size must be ≥ 1", self.check_id),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Passes when the residual is strictly below the tolerance.
    Below,
    /// Passes when the witness strictly exceeds the tolerance.
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub paper_eq: String,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    pub seed: Option<u64>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Inputs {
    pub mass: f64,
    pub modes: usize,
    pub transforms: Vec<GeneratorParams>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub inputs: Inputs,
    pub environment: Environment,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }

    pub fn get(&self, check_id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == check_id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ch in &self.checks {
            let cmp = match ch.bound {
                Bound::Below => "<",
                Bound::Above => ">",
            };
            let value = ch.max_residual.map_or("n/a".to_string(), |v| format!("{v:.3e}"));
            let _ = write!(
                out,
                "{} {:<38} {:>11} {} {:<8.1e} {}",
                if ch.pass { "PASS" } else { "FAIL" },
                ch.check_id,
                value,
                cmp,
                ch.tolerance,
                ch.paper_eq
            );
            if let Some(e) = &ch.error {
                let _ = write!(out, "  ({e})");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} of {} checks passed (seed {}, version {})",
            self.summary.passed,
            self.summary.total,
            self.environment.seed.map_or("mixed".to_string(), |s| s.to_string()),
            self.environment.version
        );
        out
    }
}

struct Ctx {
    lab: DiracField,
    transform: LorentzTransform,
    exec: Execution,
}

type Runner = fn(&Ctx, &CheckSpec) -> Result<f64>;

struct CheckDef {
    id: &'static str,
    eq: &'static str,
    tolerance: f64,
    sweep: u64,
    bound: Bound,
    run: Runner,
}

const fn def(id: &'static str, eq: &'static str, tolerance: f64, sweep: u64, bound: Bound, run: Runner) -> CheckDef {
    CheckDef { id, eq, tolerance, sweep, bound, run }
}

const CATALOGUE: &[CheckDef] = &[
    def("clifford.fixed", "Eq. (2)", 1e-15, 1, Bound::Below, clifford_fixed),
    def("clifford.transformed_sweep", "Eq. (2), (41)", 1e-10, 200, Bound::Below, clifford_sweep),
    def("clifford.frame_gammas", "Eq. (23), (25)", 1e-10, 1, Bound::Below, clifford_frame),
    def("lorentz.metric_given", "Eq. (3), (5)", 1e-10, 1, Bound::Below, metric_given),
    def("lorentz.metric_sweep", "Eq. (3), (5)", 1e-10, 200, Bound::Below, metric_sweep),
    def("lorentz.compose_associative", "plumbing", 1e-12, 100, Bound::Below, compose_associative),
    def("lorentz.derivative_chain_rule", "Eq. (6)-(8)", 1e-9, 100, Bound::Below, chain_rule),
    def("planewave.finite_difference", "plumbing", 1e-7, 1000, Bound::Below, finite_difference),
    def("spinor.intertwining_given", "Eq. (11), (12)", 1e-9, 1, Bound::Below, intertwining_given),
    def("spinor.intertwining_sweep", "Eq. (11), (12)", 1e-9, 200, Bound::Below, intertwining_sweep),
    def("spinor.pseudo_unitarity_given", "Eq. (13), (14)", 1e-9, 1, Bound::Below, pseudo_given),
    def("spinor.pseudo_unitarity_sweep", "Eq. (13), (14)", 1e-9, 200, Bound::Below, pseudo_sweep),
    def("spinor.unimodular_sweep", "plumbing", 1e-8, 200, Bound::Below, unimodular_sweep),
    def("spinor.double_cover", "plumbing", 1e-10, 1, Bound::Below, double_cover),
    def("spinor.non_unitarity_witness", "Eq. (15)", 0.5, 50, Bound::Above, non_unitarity),
    def("spinor.pointwise_covariance", "Eq. (9)", 1e-9, 100, Bound::Below, pointwise_covariance),
    def("bilinear.scalar_law", "Eq. (16), (17)", 1e-10, 100, Bound::Below, scalar_law),
    def("bilinear.vector_law", "Eq. (18)-(21)", 1e-9, 100, Bound::Below, vector_law),
    def("bilinear.density_not_scalar", "Eq. (15)", 0.1, 1, Bound::Above, density_not_scalar),
    def("vector.covariance", "Eq. (27)", 1e-9, 100, Bound::Below, vector_covariance),
    def("vector.covariance_sweep", "Eq. (27)", 1e-9, 100, Bound::Below, vector_covariance_sweep),
    def("pictures.gamma_routes", "Eq. (25), (A.7)", 1e-9, 200, Bound::Below, gamma_routes),
    def("pictures.round_trip", "Eq. (A.2), (A.7)", 1e-12, 1, Bound::Below, round_trip),
    def("pictures.dirac_residual", "Eq. (1), (22), (29)-(31)", 1e-9, 100, Bound::Below, picture_residuals),
    def("pictures.bilinear_equalities", "Eq. (31), (A.10)", 1e-10, 100, Bound::Below, bilinear_equalities),
    def("pictures.density_witness", "Eq. (A.11)", 0.1, 1, Bound::Above, appendix_witness),
    def("kg.rho_j_laws", "Eq. (32), (33)", 1e-8, 100, Bound::Below, rho_j_laws),
    def("kg.single_mode_closed_form", "Eq. (33)", 1e-10, 1, Bound::Below, kg_closed_form),
    def("kg.non_contradiction", "Eq. (35), (36)", 0.1, 1, Bound::Above, non_contradiction),
    def("conservation.field", "Sec. 4 currents", 1e-9, 100, Bound::Below, conservation_field),
    def("conservation.random_fields", "Sec. 4 currents", 1e-9, 100, Bound::Below, conservation_random),
    def("conservation.off_shell_detected", "Sec. 4 currents", 1e-3, 20, Bound::Above, off_shell_detected),
    def("linearization.sweep", "Eq. (39)-(41)", 1e-10, 1000, Bound::Below, linearization),
];

/// Catalogue of check ids with their equation labels, default tolerances and
/// sweep sizes, in execution order.
pub fn default_config(seed: u64) -> Vec<CheckSpec> {
    CATALOGUE
        .iter()
        .map(|d| CheckSpec {
            check_id: d.id.to_string(),
            paper_eq: d.eq.to_string(),
            tolerance: d.tolerance,
            sweep_size: d.sweep,
            rng_seed: seed,
        })
        .collect()
}

pub fn check_bound(check_id: &str) -> Option<Bound> {
    CATALOGUE.iter().find(|d| d.id == check_id).map(|d| d.bound)
}

/// Runs `config` against a lab-frame field moved by the composition of
/// `transforms` (applied left to right).
pub fn run_suite(
    config: &[CheckSpec],
    field: &DiracField,
    transforms: &[GeneratorParams],
) -> Result<VerificationReport> {
    run_suite_with(config, field, transforms, Execution::default())
}

pub fn run_suite_from_path(
    config: &[CheckSpec],
    field_spec_path: &Path,
    transforms: &[GeneratorParams],
) -> Result<VerificationReport> {
    let field = FieldSpec::from_path(field_spec_path)?.to_field()?;
    run_suite(config, &field, transforms)
}

pub fn run_suite_with(
    config: &[CheckSpec],
    field: &DiracField,
    transforms: &[GeneratorParams],
    exec: Execution,
) -> Result<VerificationReport> {
    field.validate()?;
    if !field.frame.is_identity(1e-15) {
        return Err(Error::Precondition("the suite expects a lab-frame field".into()));
    }
    for t in transforms {
        t.validate()?;
    }
    let defs = config
        .iter()
        .map(|spec| {
            spec.validate()?;
            CATALOGUE
                .iter()
                .find(|d| d.id == spec.check_id)
                .ok_or_else(|| Error::Input(format!("unknown check id {:?}", spec.check_id)))
        })
        .collect::<Result<Vec<_>>>()?;

    // in the lab frame Ψ = ψ, so the picture tag of the input does not matter
    let ctx = Ctx {
        lab: field.clone().with_picture(Picture::Spinor),
        transform: LorentzTransform::from_lineage(transforms)?,
        exec,
    };

    let checks: Vec<CheckResult> = config
        .iter()
        .zip(defs)
        .map(|(spec, d)| {
            let outcome = (d.run)(&ctx, spec);
            let (value, error) = match outcome {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let pass = match (value, d.bound) {
                (Some(v), Bound::Below) => v < spec.tolerance,
                (Some(v), Bound::Above) => v > spec.tolerance,
                (None, _) => false,
            };
            CheckResult {
                check_id: spec.check_id.clone(),
                paper_eq: spec.paper_eq.clone(),
                max_residual: value.filter(|v| v.is_finite()),
                tolerance: spec.tolerance,
                bound: d.bound,
                pass,
                error: error.or_else(|| {
                    value.filter(|v| !v.is_finite()).map(|v| format!("non-finite value {v}"))
                }),
            }
        })
        .collect();

    let passed = checks.iter().filter(|c| c.pass).count();
    let seed = config.first().map(|s| s.rng_seed);
    let shared_seed = seed.filter(|s| config.iter().all(|x| x.rng_seed == *s));
    Ok(VerificationReport {
        summary: Summary {
            passed,
            failed: checks.len() - passed,
            total: checks.len(),
            all_pass: passed == checks.len(),
        },
        checks,
        inputs: Inputs {
            mass: field.mass,
            modes: field.modes.len(),
            transforms: transforms.to_vec(),
        },
        environment: Environment {
            seed: shared_seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    })
}

// ---------------------------------------------------------------------------
// context helpers

impl Ctx {
    fn rng(&self, spec: &CheckSpec, index: u64) -> DrawRng {
        DrawRng::new(spec.rng_seed, stream_id(&spec.check_id), index)
    }

    /// Mass used for probes that need a massive solution spinor.
    fn probe_mass(&self) -> f64 {
        if self.lab.mass > 0.0 {
            self.lab.mass
        } else {
            1.0
        }
    }

    fn spinor_lab(&self) -> Result<PictureBundle> {
        PictureBundle::spinor(self.lab.clone())
    }

    fn vector_lab(&self) -> Result<PictureBundle> {
        PictureBundle::vector_in_lab(self.lab.clone())
    }

    fn spinor_moved(&self) -> Result<PictureBundle> {
        PictureBundle::spinor(transform_field(&self.lab, &self.transform)?)
    }

    fn amplitude_scale(&self) -> f64 {
        self.lab.amplitude_scale().max(1.0)
    }

    fn energy_scale(&self, f: &DiracField) -> f64 {
        f.modes.iter().map(|m| m.momentum[0]).fold(f.mass.max(1.0), f64::max)
    }
}

fn vector_gammas() -> GammaSet {
    let mut g = standard_gammas();
    g.picture = Picture::Vector;
    g
}

fn metric_defect(lt: &LorentzTransform) -> f64 {
    let m = lt.matrix();
    [
        lt.metric_residual(),
        (lt.determinant() - 1.0).abs(),
        (1.0 - m[(0, 0)]).max(0.0),
    ]
    .into_iter()
    .fold(0.0, nan_max)
}

// ---------------------------------------------------------------------------
// checks

fn clifford_fixed(_: &Ctx, _: &CheckSpec) -> Result<f64> {
    Ok(verify_clifford(&standard_gammas()))
}

fn clifford_sweep(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let lt = ctx.rng(spec, i).transform();
        let by_index = transform_gammas(&vector_gammas(), &lt)?;
        let by_conj = gammas_by_conjugation(&lt)?;
        Ok(nan_max(verify_clifford(&by_index), verify_clifford(&by_conj)))
    })
}

fn clifford_frame(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    let v = to_vector_picture(&ctx.spinor_moved()?)?;
    Ok(verify_clifford(&v.gammas))
}

fn metric_given(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    Ok(metric_defect(&ctx.transform))
}

fn metric_sweep(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    Ok(max_over(ctx.exec, spec.sweep_size, |i| metric_defect(&ctx.rng(spec, i).transform())))
}

fn compose_associative(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    Ok(max_over(ctx.exec, spec.sweep_size, |i| {
        let mut r = ctx.rng(spec, i);
        let (a, b, cc) = (r.transform(), r.transform(), r.transform());
        let left = a.compose(&b).compose(&cc);
        let right = a.compose(&b.compose(&cc));
        let scale = max_abs(left.matrix()).max(1.0);
        max_abs(&(left.matrix() - right.matrix())) / scale
    }))
}

/// `∂'_μ Ψ'(x') = Λᵅ_μ ∂_α Ψ(x)` for the scalar vector-picture field.
fn chain_rule(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let v = ctx.vector_lab()?;
    let scale = ctx.amplitude_scale() * ctx.energy_scale(&ctx.lab);
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let mut r = ctx.rng(spec, i);
        let lt = r.transform();
        let x = r.event(EVENT_HALF_WIDTH);
        let moved = transform_field(&v.field, &lt)?;
        let xp = lt.to_frame(&x);
        let lam = lt.matrix();
        let mut worst = 0.0f64;
        for mu in 0..4 {
            let lhs = derivative(&moved, &xp, mu);
            let rhs = (0..4).fold(crate::linalg::Spinor::zeros(), |acc, a| {
                acc + derivative(&v.field, &x, a) * c(lam[(a, mu)], 0.0)
            });
            let frame_scale = max_abs(lam).max(1.0);
            worst = nan_max(worst, max_abs_vec(&(lhs - rhs)) / (scale * frame_scale));
        }
        Ok(worst)
    })
}

fn finite_difference(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let f = &ctx.lab;
    let h = 1e-5;
    let energy = ctx.energy_scale(f);
    // central differences on the unit-energy scale keep truncation error ~h²E³
    let scale = ctx.amplitude_scale() * energy.powi(3).max(1.0);
    Ok(max_over(ctx.exec, spec.sweep_size, |i| {
        let mut r = ctx.rng(spec, i);
        let x = r.event(EVENT_HALF_WIDTH);
        let mut worst = 0.0f64;
        for mu in 0..4 {
            let (mut xp, mut xm) = (x, x);
            xp.components[mu] += h;
            xm.components[mu] -= h;
            let fd = (evaluate(f, &xp) - evaluate(f, &xm)) * c(0.5 / h, 0.0);
            let exact = derivative(f, &x, mu);
            worst = nan_max(worst, max_abs_vec(&(fd - exact)) / scale);
        }
        worst
    }))
}

fn intertwining_given(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    Ok(verify_intertwining(&spinor_rep_for_transform(&ctx.transform)?, &ctx.transform))
}

fn intertwining_sweep(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let lt = ctx.rng(spec, i).transform();
        Ok(verify_intertwining(&spinor_rep_for_transform(&lt)?, &lt))
    })
}

fn pseudo_given(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    Ok(verify_pseudo_unitarity(&spinor_rep_for_transform(&ctx.transform)?))
}

fn pseudo_sweep(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let lt = ctx.rng(spec, i).transform();
        Ok(verify_pseudo_unitarity(&spinor_rep_for_transform(&lt)?))
    })
}

fn unimodular_sweep(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let lt = ctx.rng(spec, i).transform();
        Ok((spinor_rep_for_transform(&lt)?.determinant() - c(1.0, 0.0)).norm())
    })
}

fn double_cover(_: &Ctx, _: &CheckSpec) -> Result<f64> {
    let p = GeneratorParams::rotation([0.0, 0.0, 2.0 * std::f64::consts::PI]);
    let s = spinor_rep_for(&p)?;
    let lt = LorentzTransform::from_params(p)?;
    Ok(nan_max(
        max_abs(&(s.matrix + CMatrix::identity())),
        max_abs(&(lt.matrix() - crate::linalg::RMatrix::identity())),
    ))
}

/// Largest `‖S†S − I‖` over the reference boost and a sweep of random boosts.
fn non_unitarity(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let reference = spinor_rep_for(&GeneratorParams::boost([REFERENCE_RAPIDITY, 0.0, 0.0]))?;
    let swept = try_max_over(ctx.exec, spec.sweep_size, |i| {
        let p = ctx.rng(spec, i).pure_boost(crate::rng::MAX_RAPIDITY);
        Ok(spinor_rep_for(&p)?.non_unitarity())
    })?;
    Ok(nan_max(reference.non_unitarity(), swept))
}

/// `ψ'(Λ⁻¹x) = S ψ(x)` for the given transform.
fn pointwise_covariance(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let moved = transform_field(&ctx.lab, &ctx.transform)?;
    let s = spinor_rep_for_transform(&ctx.transform)?.matrix;
    let scale = ctx.amplitude_scale() * max_abs(&s).max(1.0);
    Ok(max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        let lhs = evaluate(&moved, &ctx.transform.to_frame(&x));
        max_abs_vec(&(lhs - s * evaluate(&ctx.lab, &x))) / scale
    }))
}

fn scalar_law(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let b = ctx.spinor_lab()?;
    let scale = ctx.amplitude_scale().powi(2);
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        Ok(spinor_bilinear_laws(&b, &ctx.transform, &x)?.scalar / scale)
    })
}

fn vector_law(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let b = ctx.spinor_lab()?;
    let scale = ctx.amplitude_scale().powi(2) * max_abs(ctx.transform.matrix()).max(1.0);
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        Ok(spinor_bilinear_laws(&b, &ctx.transform, &x)?.vector / scale)
    })
}

fn reference_rest_bundle(ctx: &Ctx) -> Result<(PictureBundle, LorentzTransform)> {
    let m = ctx.probe_mass();
    let lab = DiracField::new(m, vec![rest_mode(m)?], Picture::Spinor)?;
    let boost = LorentzTransform::boost([REFERENCE_RAPIDITY, 0.0, 0.0])?;
    Ok((PictureBundle::spinor(lab)?, boost))
}

/// Change of `ψ†ψ` at the origin when the rest mode is seen from the
/// reference boost.
fn density_not_scalar(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    let (b, boost) = reference_rest_bundle(ctx)?;
    let laws = spinor_bilinear_laws(&b, &boost, &FourVector::ZERO)?;
    Ok((laws.density_after - laws.density_before).abs())
}

fn vector_covariance(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let v = ctx.vector_lab()?;
    let scale = ctx.amplitude_scale() * ctx.energy_scale(&ctx.lab);
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        Ok(vector_covariance_residual(&v, &ctx.transform, &x)? / scale)
    })
}

fn vector_covariance_sweep(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let v = ctx.vector_lab()?;
    let scale = ctx.amplitude_scale() * ctx.energy_scale(&ctx.lab);
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let mut r = ctx.rng(spec, i);
        let lt = r.transform();
        let x = r.event(EVENT_HALF_WIDTH);
        Ok(vector_covariance_residual(&v, &lt, &x)? / scale)
    })
}

fn gamma_routes(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let one = |lt: &LorentzTransform| -> Result<f64> {
        let by_index = transform_gammas(&vector_gammas(), lt)?;
        let by_conj = gammas_by_conjugation(lt)?;
        Ok(by_index.max_distance(&by_conj))
    };
    let given = one(&ctx.transform)?;
    let swept = try_max_over(ctx.exec, spec.sweep_size, |i| one(&ctx.rng(spec, i).transform()))?;
    Ok(nan_max(given, swept))
}

fn round_trip(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    let b = ctx.spinor_moved()?;
    let v = to_vector_picture(&b)?;
    let back = to_spinor_picture(&v)?;
    let again = to_vector_picture(&back)?;
    let mut worst = 0.0f64;
    for k in 0..b.field.modes.len() {
        let s_res = max_abs_vec(&(b.field.modes[k].amplitude - back.field.modes[k].amplitude));
        let v_res = max_abs_vec(&(v.field.modes[k].amplitude - again.field.modes[k].amplitude));
        let scale = max_abs_vec(&b.field.modes[k].amplitude).max(1.0);
        worst = nan_max(worst, nan_max(s_res, v_res) / scale);
    }
    Ok(worst)
}

fn picture_residuals(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let b = ctx.spinor_moved()?;
    let v = to_vector_picture(&b)?;
    let scale = ctx.amplitude_scale()
        * ctx.energy_scale(&b.field)
        * max_abs(&spinor_rep_for_transform(&ctx.transform)?.matrix).max(1.0);
    Ok(max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        let rs = max_abs_vec(&dirac_residual(&b, &x));
        let rv = max_abs_vec(&dirac_residual(&v, &x));
        nan_max(rs, rv) / scale
    }))
}

fn bilinear_equalities(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let b = ctx.spinor_moved()?;
    let v = to_vector_picture(&b)?;
    let scale = ctx.amplitude_scale().powi(2) * max_abs(ctx.transform.matrix()).max(1.0);
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        let e = check_bilinear_equalities(&b, &v, &x)?;
        Ok(nan_max(e.scalar, e.vector) / scale)
    })
}

/// `|Ψ†Ψ − ψ†ψ|` for the rest mode in the reference boosted frame.
fn appendix_witness(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    let (b, boost) = reference_rest_bundle(ctx)?;
    let moved = PictureBundle::spinor(transform_field(&b.field, &boost)?)?;
    let v = to_vector_picture(&moved)?;
    Ok(check_bilinear_equalities(&moved, &v, &FourVector::ZERO)?.density_witness)
}

fn rho_j_laws(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let v = ctx.vector_lab()?;
    let scale = ctx.amplitude_scale().powi(2) * ctx.energy_scale(&ctx.lab);
    let given = frame_invariance_of_rho_and_j(&v, &ctx.transform, &FourVector::ZERO)?.max_residual();
    let swept = try_max_over(ctx.exec, spec.sweep_size, |i| {
        let mut r = ctx.rng(spec, i);
        let lt = r.transform();
        let x = r.event(EVENT_HALF_WIDTH);
        Ok(frame_invariance_of_rho_and_j(&v, &lt, &x)?.max_residual())
    })?;
    Ok(nan_max(given, swept) / scale)
}

/// Each mode alone: `j_μ = s p_μ a†a` against the analytic-derivative current.
fn kg_closed_form(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    let moved = transform_field(&ctx.lab, &ctx.transform)?;
    let mut worst = 0.0f64;
    for mode in &moved.modes {
        let single = DiracField::new_unchecked(moved.mass, vec![mode.clone()], Picture::Vector);
        let b = PictureBundle { field: single, gammas: vector_gammas() };
        let report = bilinears(&b, &FourVector::new(0.3, -0.7, 1.1, 2.0));
        let lower = mode.momentum.lower();
        let norm = mode.amplitude.norm_squared();
        let scale = (norm * mode.momentum[0]).max(1.0);
        for mu in 0..4 {
            let expected = mode.energy_sign.sign() * lower[mu] * norm;
            worst = nan_max(worst, (report.kg_current[mu] - c(expected, 0.0)).norm() / scale);
        }
    }
    Ok(worst)
}

/// `|ψ†ψ − Ψ†Ψ|` in the reference boosted frame: the spinor-picture density
/// moves with the frame while `ρ` stays put.
fn non_contradiction(ctx: &Ctx, _: &CheckSpec) -> Result<f64> {
    let (b, boost) = reference_rest_bundle(ctx)?;
    let v = PictureBundle::vector_in_lab(b.field)?;
    let r = frame_invariance_of_rho_and_j(&v, &boost, &FourVector::ZERO)?;
    if r.rho > 1e-9 {
        return Err(Error::Numeric(format!("ρ changed by {:e} under the reference boost", r.rho)));
    }
    Ok((r.spinor_density_after - r.rho_after).abs())
}

fn divergence_pair(b: &PictureBundle, x: &FourVector) -> f64 {
    let (d, k) = current_divergence(b, x);
    nan_max(d.norm(), k.norm())
}

fn conservation_field(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let b = ctx.spinor_moved()?;
    let v = to_vector_picture(&b)?;
    let scale = ctx.amplitude_scale().powi(2)
        * ctx.energy_scale(&b.field).powi(2)
        * max_abs(&spinor_rep_for_transform(&ctx.transform)?.matrix).max(1.0).powi(2);
    Ok(max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        nan_max(divergence_pair(&b, &x), divergence_pair(&v, &x)) / scale
    }))
}

/// Random five-mode solution fields in random frames, both pictures.
fn conservation_random(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let m = ctx.probe_mass();
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let mut r = ctx.rng(spec, i);
        let modes = (0..5).map(|_| r.solution_mode(m, 1.5)).collect();
        let lab = DiracField::new(m, modes, Picture::Spinor)?;
        let lt = r.transform();
        let x = r.event(EVENT_HALF_WIDTH);
        let b = PictureBundle::spinor(transform_field(&lab, &lt)?)?;
        let v = to_vector_picture(&b)?;
        Ok(nan_max(divergence_pair(&b, &x), divergence_pair(&v, &x)))
    })
}

/// The field plus one mode pushed off the mass shell; the Klein–Gordon
/// divergence must light up at some sampled event.
fn off_shell_detected(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    let m = ctx.probe_mass();
    let mut modes = ctx.lab.modes.clone();
    let mut base = rest_mode(m)?;
    if modes.is_empty() {
        modes.push(base.clone());
    }
    base.momentum = FourVector::new(1.5 * m, 0.2 * m, 0.0, 0.0);
    base.energy_sign = EnergySign::Positive;
    modes.push(PlaneWaveMode { amplitude: base.amplitude * c(0.5, 0.5), ..base });
    let f = DiracField::new_unchecked(m, modes, Picture::Vector);
    let b = PictureBundle { field: f, gammas: vector_gammas() };
    Ok(max_over(ctx.exec, spec.sweep_size, |i| {
        let x = ctx.rng(spec, i).event(EVENT_HALF_WIDTH);
        current_divergence(&b, &x).1.norm()
    }))
}

/// `(Γᵘp_μ)² = (p·p) I` for random `p` and random frame gammas.
fn linearization(ctx: &Ctx, spec: &CheckSpec) -> Result<f64> {
    try_max_over(ctx.exec, spec.sweep_size, |i| {
        let mut r = ctx.rng(spec, i);
        let p = r.event(10.0);
        let g = transform_gammas(&vector_gammas(), &r.transform())?;
        let sq = square_dirac_operator(&g, &p);
        let target = CMatrix::identity() * c(p.norm_sq(), 0.0);
        // Γ entries grow with the frame, so normalise by the size of the terms
        let terms: f64 = (0..4)
            .map(|mu| max_abs(g.get(mu)) * p[mu].abs())
            .sum::<f64>()
            .powi(2)
            .max(1.0);
        Ok(max_abs(&(sq - target)) / terms)
    })
}
