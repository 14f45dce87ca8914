//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines show up in plain `cargo test` output.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::Matrix4;

use dirac_pictures::clifford::{standard_gammas, verify_clifford, GammaSet, Picture};
use dirac_pictures::fieldspec::FieldSpec;
use dirac_pictures::harness::{default_config, run_suite, run_suite_with};
use dirac_pictures::linalg::{c, max_abs, max_abs_vec, CMatrix, Spinor, C64};
use dirac_pictures::lorentz::{FourVector, GeneratorParams, LorentzTransform};
use dirac_pictures::pictures::{
    bilinears, check_bilinear_equalities, current_divergence, dirac_residual,
    frame_invariance_of_rho_and_j, gammas_by_conjugation, spinor_bilinear_laws,
    to_spinor_picture, to_vector_picture, transform_gammas, PictureBundle,
};
use dirac_pictures::planewave::{
    derivative, rest_mode, transform_field, DiracField, EnergySign, PlaneWaveMode,
};
use dirac_pictures::rng::{stream_id, DrawRng};
use dirac_pictures::spinor_rep::{
    spinor_rep_for, spinor_rep_for_transform, verify_intertwining, verify_pseudo_unitarity,
};
use dirac_pictures::sweep::Execution;

const SEED: u64 = 20240917;

fn rng(tag: &str, i: u64) -> DrawRng {
    DrawRng::new(SEED, stream_id(tag), i)
}

fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0))
}

fn vector_gammas() -> GammaSet {
    let mut g = standard_gammas();
    g.picture = Picture::Vector;
    g
}

/// `{gᵘ, gᵛ} − 2ηᵘᵛ` written out without the library helper.
fn clifford_oracle(g: &GammaSet) -> f64 {
    let mut worst = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let (a, b) = (g.get(mu), g.get(nu));
            let target = CMatrix::identity() * c(2.0 * eta()[(mu, nu)], 0.0);
            worst = worst.max(max_abs(&(a * b + b * a - target)));
        }
    }
    worst
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rest_field(m: f64) -> DiracField {
    DiracField::new(m, vec![rest_mode(m).unwrap()], Picture::Spinor).unwrap()
}

fn crit1() -> Outcome {
    let fixed = verify_clifford(&standard_gammas());
    let fixed_oracle = clifford_oracle(&standard_gammas());
    let mut sweep = 0.0f64;
    for i in 0..200 {
        let lt = rng("acc.clifford", i).transform();
        let g = transform_gammas(&vector_gammas(), &lt).unwrap();
        sweep = sweep.max(verify_clifford(&g)).max(clifford_oracle(&g));
    }
    outcome(
        fixed == 0.0 && fixed_oracle == 0.0 && sweep < 1e-10,
        format!("fixed residual {fixed:e}, 200 transformed sets max {sweep:.3e} < 1e-10"),
    )
}

fn crit2() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..200 {
        let lt = rng("acc.metric", i).transform();
        let m = lt.matrix();
        worst = worst.max((m.transpose() * eta() * m - eta()).abs().max());
        worst = worst.max(lt.metric_residual());
    }
    outcome(worst < 1e-10, format!("200 composed Λ, max ‖ΛᵀηΛ − η‖ = {worst:.3e} < 1e-10"))
}

/// `S γᵅ S⁻¹ − Λᵅ_μ γᵘ` with a plain LU inverse.
fn intertwining_oracle(s: &CMatrix, lt: &LorentzTransform) -> f64 {
    let g = standard_gammas();
    let s_inv = s.try_inverse().expect("S is invertible");
    let lam = lt.matrix();
    let mut worst = 0.0f64;
    for a in 0..4 {
        let lhs = s * g.get(a) * s_inv;
        let rhs = (0..4).fold(CMatrix::zeros(), |acc, mu| acc + g.get(mu) * c(lam[(a, mu)], 0.0));
        worst = worst.max(max_abs(&(lhs - rhs)));
    }
    worst
}

fn crit3() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..200 {
        let lt = rng("acc.intertwining", i).transform();
        let s = spinor_rep_for_transform(&lt).unwrap();
        worst = worst.max(verify_intertwining(&s, &lt)).max(intertwining_oracle(&s.matrix, &lt));
    }
    outcome(worst < 1e-9, format!("200 Λ with lineage, max residual {worst:.3e} < 1e-9"))
}

fn crit4() -> Outcome {
    let g0 = standard_gammas().get(0).to_owned();
    let mut worst = 0.0f64;
    for i in 0..200 {
        let lt = rng("acc.intertwining", i).transform();
        let s = spinor_rep_for_transform(&lt).unwrap();
        let oracle = max_abs(&(s.matrix.adjoint() * g0 * s.matrix - g0));
        worst = worst.max(verify_pseudo_unitarity(&s)).max(oracle);
    }
    let boost = spinor_rep_for(&GeneratorParams::boost([1.0, 0.0, 0.0])).unwrap();
    let witness = boost.non_unitarity();
    outcome(
        worst < 1e-9 && witness > 0.5,
        format!("S†γ⁰S = γ⁰ max residual {worst:.3e} < 1e-9; boost η=1 ‖S†S − I‖ = {witness:.4} > 0.5"),
    )
}

fn crit5() -> Outcome {
    let lab = PictureBundle::spinor(rest_field(1.0)).unwrap();
    let boost = LorentzTransform::boost([1.0, 0.0, 0.0]).unwrap();
    let mut scalar = 0.0f64;
    let mut vector = 0.0f64;
    let mut laws0 = None;
    for i in 0..100 {
        let x = if i == 0 { FourVector::ZERO } else { rng("acc.ledger", i).event(10.0) };
        let laws = spinor_bilinear_laws(&lab, &boost, &x).unwrap();
        scalar = scalar.max(laws.scalar).max((laws.scalar_before - 2.0).abs());
        vector = vector.max(laws.vector);
        laws0.get_or_insert(laws);
    }
    let laws0 = laws0.unwrap();
    // independent value: boosted rest spinor has ψ†ψ = 2E = 2 cosh η
    let moved = PictureBundle::spinor(transform_field(&lab.field, &boost).unwrap()).unwrap();
    let after = bilinears(&moved, &FourVector::ZERO);
    let expected = 2.0 * 1f64.cosh();
    let density_ok = (laws0.density_before - 2.0).abs() < 1e-10
        && (laws0.density_after - expected).abs() < 1e-6
        && (after.density - 3.0861612).abs() < 1e-6
        && (after.scalar_bar - c(2.0, 0.0)).norm() < 1e-10;
    outcome(
        scalar < 1e-10 && vector < 1e-9 && density_ok,
        format!(
            "ψ̄ψ = 2 invariant ({scalar:.1e}); vector law {vector:.1e}; ψ†ψ {:.7} → {:.7}",
            laws0.density_before, after.density
        ),
    )
}

/// `Γ'ᵘ ∂'_μ Ψ'(x') − Γᵘ ∂_μ Ψ(x)` built from index-contracted gammas and
/// untouched amplitudes only.
fn vector_covariance_oracle(v: &PictureBundle, lt: &LorentzTransform, x: &FourVector) -> f64 {
    let moved = transform_field(&v.field, lt).unwrap();
    let g_new = transform_gammas(&v.gammas, lt).unwrap();
    let xp = lt.to_frame(x);
    let op = |g: &GammaSet, f: &DiracField, y: &FourVector| {
        (0..4).fold(Spinor::zeros(), |acc, mu| acc + g.get(mu) * derivative(f, y, mu))
    };
    max_abs_vec(&(op(&g_new, &moved, &xp) - op(&v.gammas, &v.field, x)))
}

fn crit6() -> Outcome {
    let v = PictureBundle::vector_in_lab(FieldSpec::demo().to_field().unwrap()).unwrap();
    let given = LorentzTransform::boost([1.0, 0.0, 0.0]).unwrap();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let mut r = rng("acc.vector", i);
        let x = r.event(10.0);
        worst = worst.max(vector_covariance_oracle(&v, &given, &x));
        worst = worst.max(vector_covariance_oracle(&v, &r.transform(), &x));
    }
    outcome(worst < 1e-9, format!("100 events, index route only, max residual {worst:.3e} < 1e-9"))
}

fn crit7() -> Outcome {
    let lab = rest_field(1.0);
    let mut round = 0.0f64;
    let mut dirac = 0.0f64;
    let mut equal = 0.0f64;
    for i in 0..100 {
        let mut r = rng("acc.pictures", i);
        let lt = r.transform();
        let x = r.event(10.0);
        let b = PictureBundle::spinor(transform_field(&lab, &lt).unwrap()).unwrap();
        let v = to_vector_picture(&b).unwrap();
        let back = to_spinor_picture(&v).unwrap();
        let scale = max_abs_vec(&b.field.modes[0].amplitude).max(1.0);
        round = round.max(max_abs_vec(&(back.field.modes[0].amplitude - b.field.modes[0].amplitude)) / scale);
        let s_scale = b.field.modes[0].momentum[0] * scale;
        dirac = dirac
            .max(max_abs_vec(&dirac_residual(&b, &x)) / s_scale)
            .max(max_abs_vec(&dirac_residual(&v, &x)) / s_scale);
        let e = check_bilinear_equalities(&b, &v, &x).unwrap();
        equal = equal.max(e.scalar).max(e.vector / max_abs(lt.matrix()));
    }
    let mut witness = 0.0f64;
    for eta_val in [0.25, 1.0, 2.0] {
        let boost = LorentzTransform::boost([eta_val, 0.0, 0.0]).unwrap();
        let b = PictureBundle::spinor(transform_field(&lab, &boost).unwrap()).unwrap();
        let v = to_vector_picture(&b).unwrap();
        let w = check_bilinear_equalities(&b, &v, &FourVector::ZERO).unwrap().density_witness;
        witness = witness.max((w - 2.0 * (eta_val.cosh() - 1.0)).abs());
    }
    outcome(
        round < 1e-12 && dirac < 1e-9 && equal < 1e-10 && witness < 1e-6,
        format!(
            "round trip {round:.1e}; Dirac residual {dirac:.1e}; Ψ̄Ψ, Ψ̄ΓΨ equalities {equal:.1e}; witness error {witness:.1e}"
        ),
    )
}

fn crit8() -> Outcome {
    let v = PictureBundle::vector_in_lab(rest_field(1.0)).unwrap();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let mut r = rng("acc.rho", i);
        let lt = r.transform();
        let x = r.event(10.0);
        worst = worst.max(frame_invariance_of_rho_and_j(&v, &lt, &x).unwrap().max_residual());
    }
    let mut closed = 0.0f64;
    for i in 0..20 {
        let mut r = rng("acc.kg", i);
        let mode = r.solution_mode(1.0, 2.0);
        let f = DiracField::new_unchecked(1.0, vec![mode.clone()], Picture::Vector);
        let b = PictureBundle { field: f, gammas: vector_gammas() };
        let rep = bilinears(&b, &r.event(10.0));
        let norm = mode.amplitude.norm_squared();
        let lower = eta() * mode.momentum.as_vector();
        for mu in 0..4 {
            let expected = mode.energy_sign.sign() * lower[mu] * norm;
            closed = closed.max((rep.kg_current[mu] - c(expected, 0.0)).norm() / (norm * mode.momentum[0]).max(1.0));
        }
    }
    outcome(
        worst < 1e-8 && closed < 1e-10,
        format!("ρ/j residual over 100 Λ {worst:.3e} < 1e-8; single-mode j_μ = s p_μ a†a {closed:.1e} < 1e-10"),
    )
}

fn crit9() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..100 {
        let mut r = rng("acc.conservation", i);
        let modes = (0..5).map(|_| r.solution_mode(1.0, 1.5)).collect();
        let lab = DiracField::new(1.0, modes, Picture::Spinor).unwrap();
        let lt = r.transform();
        let x = r.event(10.0);
        let b = PictureBundle::spinor(transform_field(&lab, &lt).unwrap()).unwrap();
        let v = to_vector_picture(&b).unwrap();
        for bundle in [&b, &v] {
            let (d, k) = current_divergence(bundle, &x);
            worst = worst.max(d.norm()).max(k.norm());
        }
    }
    let mut modes = vec![rest_mode(1.0).unwrap()];
    modes.push(PlaneWaveMode::new(
        FourVector::new(1.5, 0.2, 0.0, 0.0),
        EnergySign::Positive,
        Spinor::new(c(0.5, 0.5), C64::default(), C64::default(), C64::default()),
    ));
    let off = PictureBundle {
        field: DiracField::new_unchecked(1.0, modes, Picture::Vector),
        gammas: vector_gammas(),
    };
    let detected = (0..20)
        .map(|i| current_divergence(&off, &rng("acc.offshell", i).event(10.0)).1.norm())
        .fold(0.0f64, f64::max);
    outcome(
        worst < 1e-9 && detected > 1e-3,
        format!("on-shell divergences {worst:.3e} < 1e-9; off-shell divergence {detected:.3} > 1e-3"),
    )
}

fn crit10() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let mut r = rng("acc.linearization", i);
        let p = r.event(10.0);
        let g = if i % 2 == 0 {
            transform_gammas(&vector_gammas(), &r.transform()).unwrap()
        } else {
            gammas_by_conjugation(&r.transform()).unwrap()
        };
        let slash = (0..4).fold(CMatrix::zeros(), |acc, mu| {
            acc + g.get(mu) * c((eta() * p.as_vector())[mu], 0.0)
        });
        let p2 = p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
        let terms: f64 = (0..4).map(|mu| max_abs(g.get(mu)) * p[mu].abs()).sum::<f64>().powi(2).max(1.0);
        worst = worst.max(max_abs(&(slash * slash - CMatrix::identity() * c(p2, 0.0))) / terms);
    }
    outcome(worst < 1e-10, format!("1000 random p, max relative residual {worst:.3e} < 1e-10"))
}

fn crit11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_dirac-pictures");
    let run = || Command::new(bin).args(["check", "--demo", "--seed", "42"]).output().expect("binary runs");
    let (a, b) = (run(), run());
    let identical = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();

    let field = FieldSpec::demo().to_field().unwrap();
    let t = [GeneratorParams::boost([1.0, 0.0, 0.0])];
    let start = Instant::now();
    let report = run_suite(&default_config(42), &field, &t).unwrap();
    let elapsed = start.elapsed();
    let seq = run_suite_with(&default_config(42), &field, &t, Execution::Sequential).unwrap();
    let par = run_suite_with(&default_config(42), &field, &t, Execution::Parallel).unwrap();
    let modes_agree = seq.to_json() == par.to_json();
    outcome(
        identical && modes_agree && report.all_pass() && elapsed < Duration::from_secs(10),
        format!(
            "two CLI runs byte-identical: {identical}; sequential = parallel: {modes_agree}; suite {:.2} s < 10 s",
            elapsed.as_secs_f64()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Clifford relation", crit1),
        ("metric preservation", crit2),
        ("intertwining", crit3),
        ("pseudo-unitarity and non-unitarity witness", crit4),
        ("bilinear ledger", crit5),
        ("vector-picture covariance", crit6),
        ("picture equivalence", crit7),
        ("ρ scalar and j vector", crit8),
        ("current conservation", crit9),
        ("linearization", crit10),
        ("determinism and wall-clock", crit11),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, n + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
