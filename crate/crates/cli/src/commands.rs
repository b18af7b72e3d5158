//! Command implementations. Every handler maps a parsed input document to
//! a Report plus optional extra text lines (printed only in text format).
//! Sampling is seeded with a fixed constant so identical inputs and flags
//! give identical reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linflow::algebra::LieAlgebra;
use linflow::cocycle::{check_cocycle_identity, lemma_gamma_harness};
use linflow::docs::{delta_subspace, AlgebraDoc, InputDoc, MatrixDoc, Mode, ModelDoc};
use linflow::grading::{check_grading, subalgebra_nilpotent, weight_grading_exact, weight_grading_f64};
use linflow::groups::{
    ad_conjugation_identity, automorphism_flow_checks, catmap_generator_check,
    fix_intersection_certificate, recurrent_set_certificate, GroupModel, ProbeConfig,
};
use linflow::isometry::{
    arc_length_preservation, automorphic_isometry_algebra, cartan_checks, cartan_data_sl,
    generated_subalgebra, killing_adjoint_identity, skew_on_delta, SampledCurve,
};
use linflow::jordan::{
    derivation_parts_exact, derivation_parts_f64, jordan_exact, jordan_f64_default,
    verify_jordan_exact, verify_jordan_f64, JordanParts,
};
use linflow::report::{Check, Report};
use linflow::spectrum::DEFAULT_CLUSTER_REL;
use linflow::subspace::Subspace;
use linflow::{Error, Matrix, MatrixF, Result, Scalar};

pub const SEED: u64 = 2024;
/// Boundedness threshold for the cocycle harness.
pub const GAMMA_BOUND: f64 = 1e3;
/// Denominator bound for the torus periodicity scan.
pub const SCAN_DENOMINATOR_MAX: i64 = 50;

#[derive(Clone, Copy)]
pub struct Flags {
    pub mode: Option<Mode>,
    pub tol: f64,
    pub tmax: f64,
    pub eps: f64,
}

impl Flags {
    fn resolve_mode(&self, doc: &InputDoc) -> Mode {
        self.mode.or(doc.mode()).unwrap_or(Mode::Float)
    }
}

fn merge_prefixed(into: &mut Report, from: Report, prefix: &str) {
    for c in from.checks {
        into.push(Check {
            name: format!("{prefix}_{}", c.name),
            ..c
        });
    }
}

fn full_space(n: usize) -> Result<Subspace<f64>> {
    let basis: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    Subspace::from_spanning(n, &basis, 1e-12)
}

fn render_matrix<T: Scalar + std::fmt::Display>(label: &str, m: &Matrix<T>) -> Vec<String> {
    let mut lines = vec![format!("{label}:")];
    let n = m.dim().unwrap_or(0);
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{}", m[(i, j)])).collect();
        lines.push(format!("  {}", row.join(" ")));
    }
    lines
}

fn render_parts<T: Scalar + std::fmt::Display>(parts: &JordanParts<T>) -> Vec<String> {
    let mut lines = render_matrix("elliptic", &parts.elliptic);
    lines.extend(render_matrix("hyperbolic", &parts.hyperbolic));
    lines.extend(render_matrix("nilpotent", &parts.nilpotent));
    lines
}

fn algebra_derivation_doc(a: &AlgebraDoc) -> Result<&MatrixDoc> {
    a.derivation
        .as_ref()
        .ok_or_else(|| Error::Parse("algebra document needs a derivation matrix".into()))
}

// ---------------------------------------------------------------------------
// jordan
// ---------------------------------------------------------------------------

pub fn cmd_jordan(doc: &InputDoc, flags: &Flags) -> Result<(Report, Vec<String>)> {
    match doc {
        InputDoc::Matrix(m) => match flags.resolve_mode(doc) {
            Mode::Exact => {
                let aq = m.to_exact()?;
                let (parts, _cert) = jordan_exact(&aq)?;
                let report = verify_jordan_exact(&aq, &parts, flags.tol)?;
                Ok((report, render_parts(&parts)))
            }
            Mode::Float => {
                let af = m.to_f64()?;
                let parts = jordan_f64_default(&af)?;
                let report = verify_jordan_f64(&af, &parts, flags.tol)?;
                Ok((report, render_parts(&parts)))
            }
        },
        InputDoc::Algebra(a) => match flags.resolve_mode(doc) {
            Mode::Exact => {
                let alg = a.to_exact()?;
                let dq = algebra_derivation_doc(a)?.to_exact()?;
                let (parts, report) = derivation_parts_exact(&alg, &dq, flags.tol)?;
                Ok((report, render_parts(&parts)))
            }
            Mode::Float => {
                let alg = a.to_f64()?;
                let df = algebra_derivation_doc(a)?.to_f64()?;
                let (parts, report) =
                    derivation_parts_f64(&alg, &df, DEFAULT_CLUSTER_REL, flags.tol)?;
                Ok((report, render_parts(&parts)))
            }
        },
        _ => Err(Error::Parse(
            "jordan needs a matrix or algebra document".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// grade
// ---------------------------------------------------------------------------

pub fn cmd_grade(doc: &InputDoc, flags: &Flags) -> Result<(Report, Vec<String>)> {
    let a = match doc {
        InputDoc::Algebra(a) => a,
        _ => return Err(Error::Parse("grade needs an algebra document with a derivation".into())),
    };
    match flags.resolve_mode(doc) {
        Mode::Exact => {
            let alg = a.to_exact()?;
            let dq = algebra_derivation_doc(a)?.to_exact()?;
            let (parts, mut report) = derivation_parts_exact(&alg, &dq, flags.tol)?;
            let grading = weight_grading_exact(&parts.hyperbolic)?;
            grade_common(&alg, &grading, &mut report, 0.0, 0.0)?;
            Ok((report, Vec::new()))
        }
        Mode::Float => {
            let alg = a.to_f64()?;
            let df = algebra_derivation_doc(a)?.to_f64()?;
            let (parts, mut report) =
                derivation_parts_f64(&alg, &df, DEFAULT_CLUSTER_REL, flags.tol)?;
            let grading = weight_grading_f64(&parts.hyperbolic, DEFAULT_CLUSTER_REL, flags.tol)?;
            grade_common(&alg, &grading, &mut report, flags.tol, 1e-6)?;
            Ok((report, Vec::new()))
        }
    }
}

fn grade_common<T: Scalar>(
    alg: &LieAlgebra<T>,
    grading: &linflow::grading::Grading<T>,
    report: &mut Report,
    tol: f64,
    weight_tol: f64,
) -> Result<()> {
    report.merge(check_grading(alg, grading, tol, weight_tol)?);
    report.add(
        "weight_dims_sum",
        grading.total_dim() as f64 - alg.dim() as f64,
        0.0,
    );
    let split = grading.sign_split(tol)?;
    merge_prefixed(
        report,
        subalgebra_nilpotent(alg, &split.positive, tol)?,
        "positive_part",
    );
    merge_prefixed(
        report,
        subalgebra_nilpotent(alg, &split.negative, tol)?,
        "negative_part",
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// recurrent / flow
// ---------------------------------------------------------------------------

fn required_derivation(m: &ModelDoc, d: Option<&MatrixDoc>) -> Result<MatrixF> {
    d.ok_or_else(|| Error::Parse(format!("{} model needs a derivation matrix", m.name())))?
        .to_f64()
}

fn model_and_derivation(m: &ModelDoc) -> Result<(GroupModel, MatrixF)> {
    match m {
        ModelDoc::Heisenberg { derivation } => {
            Ok((GroupModel::HeisenbergExp, required_derivation(m, derivation.as_ref())?))
        }
        ModelDoc::Abelian { n, derivation } => {
            let d = required_derivation(m, derivation.as_ref())?;
            if d.dim()? != *n {
                return Err(Error::DimensionMismatch { expected: *n, found: d.dim()? });
            }
            Ok((GroupModel::EuclideanAbelian { n: *n }, d))
        }
        ModelDoc::Semidirect { .. } => {
            let sd = m.to_semidirect()?;
            let d = sd.derivation();
            Ok((GroupModel::SemidirectRxR2(sd), d))
        }
        ModelDoc::Torus2 { .. } => Err(Error::UnsupportedModel(
            "the torus model is discrete-time; use catmap".into(),
        )),
        ModelDoc::Sl { .. } => Err(Error::Parse(
            "sl models carry algebra-level data; use grade or isometry".into(),
        )),
    }
}

fn group_model_doc<'a>(doc: &'a InputDoc, what: &str) -> Result<&'a ModelDoc> {
    match doc {
        InputDoc::Model(m) => Ok(m),
        _ => Err(Error::Parse(format!("{what} needs a group model document"))),
    }
}

pub fn cmd_recurrent(doc: &InputDoc, flags: &Flags) -> Result<(Report, Vec<String>)> {
    let (model, d) = model_and_derivation(group_model_doc(doc, "recurrent")?)?;
    let cfg = ProbeConfig {
        eps: flags.eps,
        t_max: flags.tmax,
        samples: 100,
        seed: SEED,
    };
    let mut report = recurrent_set_certificate(&model, &d, &cfg)?;
    report.merge(fix_intersection_certificate(&model, &d, flags.tol)?);
    Ok((report, Vec::new()))
}

pub fn cmd_flow(doc: &InputDoc, flags: &Flags) -> Result<(Report, Vec<String>)> {
    let (model, d) = model_and_derivation(group_model_doc(doc, "flow")?)?;
    let mut report = automorphism_flow_checks(&model, &d, 100, SEED, flags.tol)?;
    if !matches!(model, GroupModel::EuclideanAbelian { .. }) {
        report.merge(ad_conjugation_identity(&model, &d, 20, SEED, flags.tol)?);
    }
    Ok((report, Vec::new()))
}

// ---------------------------------------------------------------------------
// cocycle
// ---------------------------------------------------------------------------

pub fn cmd_cocycle(doc: &InputDoc, flags: &Flags) -> Result<(Report, Vec<String>)> {
    let c = match doc {
        InputDoc::Cocycle(c) => c.to_spec()?,
        _ => return Err(Error::Parse("cocycle needs a document with fields A and b".into())),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pairs: Vec<(f64, f64)> = (0..1000)
        .map(|_| (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect();
    let mut report = check_cocycle_identity(&c, &pairs, flags.tol)?;
    report.merge(lemma_gamma_harness(&c, flags.tmax, GAMMA_BOUND, flags.tol, DEFAULT_CLUSTER_REL)?);
    Ok((report, Vec::new()))
}

// ---------------------------------------------------------------------------
// catmap
// ---------------------------------------------------------------------------

pub fn cmd_catmap(doc: &InputDoc, flags: &Flags) -> Result<(Report, Vec<String>)> {
    let torus = match doc {
        InputDoc::Model(m @ ModelDoc::Torus2 { .. }) => m.to_torus()?,
        _ => return Err(Error::Parse("catmap needs a torus2 model document".into())),
    };
    let mut report = torus.periodicity_scan(SCAN_DENOMINATOR_MAX)?;
    if torus.entries == [[1, 1], [1, 2]] {
        report.merge(catmap_generator_check(flags.tol)?);
    }
    Ok((report, Vec::new()))
}

// ---------------------------------------------------------------------------
// isometry
// ---------------------------------------------------------------------------

fn neg_ad(alg: &LieAlgebra<f64>, x: &[f64]) -> Result<MatrixF> {
    Ok(alg.ad_operator(x)?.scale(&-1.0))
}

fn sl_isometry(
    n: usize,
    derivation: Option<&MatrixDoc>,
    delta: Option<&Vec<Vec<linflow::docs::ScalarDoc>>>,
    flags: &Flags,
) -> Result<Report> {
    let (alg, cartan) = cartan_data_sl(n)?;
    let dim = alg.dim();
    let mut report = cartan_checks(&alg, &cartan, flags.tol)?;

    let delta_sub = match delta {
        Some(vecs) => delta_subspace(dim, vecs)?,
        None => full_space(dim)?,
    };
    let (generated, _steps) = generated_subalgebra(&alg, &delta_sub, 1e-9)?;
    report.push(Check::new("generated_dimension", generated.dim() as f64, f64::INFINITY));

    let iso = automorphic_isometry_algebra(&alg, &cartan, &delta_sub, 1e-9)?;
    report.push(Check::new("isometry_algebra_dim", iso.dim() as f64, f64::INFINITY));
    let mut inv_worst = 0.0f64;
    let mut skew_worst = 0.0f64;
    for x in iso.basis() {
        let d = neg_ad(&alg, x)?;
        let member = skew_on_delta(&d, &delta_sub, &cartan.inner, flags.tol)?;
        for c in &member.checks {
            match c.name.as_str() {
                "delta_invariant" => inv_worst = inv_worst.max(c.residual),
                "skew_symmetric" => skew_worst = skew_worst.max(c.residual),
                _ => {}
            }
        }
    }
    report.add("members_delta_invariant", inv_worst, flags.tol);
    report.add("members_skew_symmetric", skew_worst, flags.tol);

    let d = match derivation {
        Some(md) => md.to_f64()?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            neg_ad(&alg, &x)?
        }
    };
    report.merge(killing_adjoint_identity(&alg, &cartan, &d, 100, SEED, flags.tol)?);
    Ok(report)
}

/// Unit-speed circle in the plane lifted to a horizontal curve.
fn horizontal_helix() -> SampledCurve {
    let tau = std::f64::consts::TAU;
    SampledCurve::from_fn(10_000, move |s| {
        (
            vec![(tau * s).cos(), (tau * s).sin(), std::f64::consts::PI * s],
            vec![-tau * (tau * s).sin(), tau * (tau * s).cos(), std::f64::consts::PI],
        )
    })
}

fn heisenberg_isometry(derivation: Option<&MatrixDoc>, flags: &Flags) -> Result<Report> {
    let model = GroupModel::HeisenbergExp;
    let d = derivation
        .ok_or_else(|| Error::Parse("heisenberg model needs a derivation matrix".into()))?
        .to_f64()?;
    let delta = Subspace::from_spanning(
        3,
        &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
        1e-12,
    )?;
    let inner: MatrixF = Matrix::identity(3);
    let mut report = Report::new("isometry");

    // Skew derivations must preserve lengths; for the rest the premise
    // and the drifts are recorded for information and the implication
    // holds vacuously.
    let skew = skew_on_delta(&d, &delta, &inner, flags.tol)?;
    let is_skew = skew.pass();
    for c in skew.checks {
        if is_skew {
            report.push(c);
        } else {
            report.push(Check::new(c.name, c.residual, f64::INFINITY));
        }
    }
    let curve = horizontal_helix();
    let mut implied = true;
    for t in [0.5, 1.0, 3.0] {
        let rep = arc_length_preservation(&model, &d, &inner, &delta, &curve, t, 1e-6)?;
        let drift = rep
            .checks
            .iter()
            .find(|c| c.name == "relative_length_drift")
            .map(|c| c.residual)
            .unwrap_or(f64::NAN);
        if is_skew {
            report.push(Check::new(format!("length_drift_t{t}"), drift, 1e-6));
            implied = implied && drift <= 1e-6;
        } else {
            report.push(Check::new(format!("length_drift_t{t}"), drift, f64::INFINITY));
        }
    }
    report.push(Check::holds("skew_implies_isometry", !is_skew || implied));
    Ok(report)
}

pub fn cmd_isometry(doc: &InputDoc, flags: &Flags) -> Result<(Report, Vec<String>)> {
    match group_model_doc(doc, "isometry")? {
        ModelDoc::Sl { n, derivation, delta } => Ok((
            sl_isometry(*n, derivation.as_ref(), delta.as_ref(), flags)?,
            Vec::new(),
        )),
        ModelDoc::Heisenberg { derivation } => {
            Ok((heisenberg_isometry(derivation.as_ref(), flags)?, Vec::new()))
        }
        m => Err(Error::Parse(format!(
            "isometry checks run on sl or heisenberg models, not {}",
            m.name()
        ))),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// The full property suite for one document. Model documents get the
/// model-specific suites; plain matrices also cross-check the exact and
/// float decompositions against each other when exact mode applies.
pub fn verify_one(doc: &InputDoc, flags: &Flags) -> Result<Report> {
    match doc {
        InputDoc::Matrix(m) => {
            let (mut report, _) = cmd_jordan(doc, flags)?;
            if flags.resolve_mode(doc) == Mode::Exact {
                let (parts_q, _) = jordan_exact(&m.to_exact()?)?;
                let qf = parts_q.to_f64();
                let parts_f = jordan_f64_default(&m.to_f64()?)?;
                let gap = (&qf.elliptic - &parts_f.elliptic)
                    .max_abs()
                    .max((&qf.hyperbolic - &parts_f.hyperbolic).max_abs())
                    .max((&qf.nilpotent - &parts_f.nilpotent).max_abs());
                report.add("exact_float_agreement", gap, 1e-8);
            }
            Ok(report)
        }
        InputDoc::Algebra(_) => Ok(cmd_grade(doc, flags)?.0),
        InputDoc::Cocycle(_) => Ok(cmd_cocycle(doc, flags)?.0),
        InputDoc::Model(m) => match m {
            ModelDoc::Torus2 { .. } => Ok(cmd_catmap(doc, flags)?.0),
            ModelDoc::Sl { .. } => Ok(cmd_isometry(doc, flags)?.0),
            ModelDoc::Heisenberg { .. } | ModelDoc::Abelian { .. } | ModelDoc::Semidirect { .. } => {
                let (model, d) = model_and_derivation(m)?;
                let alg = model.algebra_f64()?;
                let (_parts, mut report) =
                    derivation_parts_f64(&alg, &d, DEFAULT_CLUSTER_REL, flags.tol)?;
                report.merge(cmd_recurrent(doc, flags)?.0);
                report.merge(cmd_flow(doc, flags)?.0);
                if matches!(m, ModelDoc::Heisenberg { .. }) {
                    merge_prefixed(&mut report, cmd_isometry(doc, flags)?.0, "isometry");
                }
                Ok(report)
            }
        },
    }
}
