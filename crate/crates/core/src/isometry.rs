//! Isometry criteria for left-invariant (sub-)Riemannian structures.
//!
//! A flow of automorphisms is a one-parameter isometry group when the
//! distribution is invariant under the generating derivation and the
//! derivation restricts skew-symmetrically to it. On a semisimple algebra
//! with Cartan decomposition g = l + p the automorphic isometries fixing
//! the origin come from l intersected with the normalizer of the
//! distribution; the inner product throughout is -B(Y, theta Z) built from
//! the Killing form B and the Cartan involution theta.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, LieAlgebra};
use crate::error::{Error, Result};
use crate::groups::GroupModel;
use crate::matrix::{vec_ops, Matrix};
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Cartan decomposition data: the involution, its eigenspaces, and the
/// Gram matrix of the associated inner product on basis coordinates.
#[derive(Clone, Debug)]
pub struct CartanData {
    /// Involutive automorphism, +1 on l and -1 on p.
    pub theta: Matrix<f64>,
    /// Compact part: +1 eigenspace of theta.
    pub l: Subspace<f64>,
    /// -1 eigenspace of theta.
    pub p: Subspace<f64>,
    /// Gram matrix of <Y, Z> = -B(Y, theta Z).
    pub inner: Matrix<f64>,
}

/// sl(n, R) with the involution theta(X) = -X^T: l is the antisymmetric
/// part, p the symmetric traceless part.
pub fn cartan_data_sl(n: usize) -> Result<(LieAlgebra<f64>, CartanData)> {
    if n < 2 {
        return Err(Error::Invalid("sl(n) needs n >= 2".into()));
    }
    let alg = algebra::standard::sl_algebra(n)?.to_f64();
    let dim = alg.dim();
    let basis = algebra::standard::sl_basis(n);
    let mut cols = Vec::with_capacity(dim);
    for b in &basis {
        let neg_t = b.transpose().scale(&crate::scalar::Rational::from_int(-1));
        let coords = algebra::standard::sl_coords(&neg_t)?;
        cols.push(coords.iter().map(Scalar::as_f64).collect::<Vec<f64>>());
    }
    let theta = Matrix::from_cols(&cols)?;
    let id = Matrix::identity(dim);
    let l = Subspace::kernel_of(&(&theta - &id), 1e-9)?;
    let p = Subspace::kernel_of(&(&theta + &id), 1e-9)?;
    let inner = (&alg.killing_gram()? * &theta).scale(&-1.0);
    Ok((alg, CartanData { theta, l, p, inner }))
}

/// Structural checks on Cartan data: involution, automorphism property,
/// eigenspace split, and positive-definiteness of the inner product.
pub fn cartan_checks(alg: &LieAlgebra<f64>, c: &CartanData, tol: f64) -> Result<Report> {
    let n = alg.dim();
    let mut r = Report::new("cartan_data");
    r.add("involution", (&(&c.theta * &c.theta) - &Matrix::identity(n)).max_abs(), tol);

    let mut auto_worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let x = alg.basis_vector(i);
            let y = alg.basis_vector(j);
            let lhs = c.theta.mul_vec(&alg.bracket(&x, &y)?)?;
            let rhs = alg.bracket(&c.theta.mul_vec(&x)?, &c.theta.mul_vec(&y)?)?;
            auto_worst = auto_worst.max(vec_ops::max_abs(&vec_ops::sub(&lhs, &rhs)));
        }
    }
    r.add("automorphism", auto_worst, tol);

    let split = crate::subspace::is_direct_sum(&[&c.l, &c.p], n, 1e-9)?;
    r.push(Check::holds("eigenspace_split", split));
    r.add("inner_symmetric", (&c.inner - &c.inner.transpose()).max_abs(), tol);

    let eigs = crate::spectrum::eigenvalues(&c.inner)?;
    let min_eig = eigs.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    r.push(Check {
        name: "inner_positive_definite".into(),
        residual: min_eig,
        threshold: 0.0,
        pass: min_eig > 0.0,
    });
    Ok(r)
}

/// Subalgebra generated by a subspace, with the number of growth rounds
/// until the span stabilizes.
pub fn generated_subalgebra(
    alg: &LieAlgebra<f64>,
    delta: &Subspace<f64>,
    tol: f64,
) -> Result<(Subspace<f64>, usize)> {
    let mut span = delta.clone();
    let mut steps = 0usize;
    loop {
        let mut vecs: Vec<Vec<f64>> = span.basis().to_vec();
        for i in 0..span.dim() {
            for j in i + 1..span.dim() {
                vecs.push(alg.bracket(&span.basis()[i], &span.basis()[j])?);
            }
        }
        let grown = Subspace::from_spanning(alg.dim(), &vecs, tol)?;
        if grown.dim() == span.dim() {
            return Ok((span, steps));
        }
        span = grown;
        steps += 1;
    }
}

/// Does the subspace bracket-generate the whole algebra?
pub fn bracket_generating_check(
    alg: &LieAlgebra<f64>,
    delta: &Subspace<f64>,
    tol: f64,
) -> Result<Report> {
    let (span, steps) = generated_subalgebra(alg, delta, tol)?;
    let mut r = Report::new("bracket_generating");
    r.push(Check::new("growth_steps", steps as f64, f64::INFINITY));
    r.push(Check::new("stable_dimension", span.dim() as f64, f64::INFINITY));
    r.push(Check::holds("generates_algebra", span.dim() == alg.dim()));
    Ok(r)
}

/// Invariance of delta under the map and skew-symmetry of its restriction
/// with respect to the Gram matrix.
pub fn skew_on_delta(
    d: &Matrix<f64>,
    delta: &Subspace<f64>,
    inner: &Matrix<f64>,
    tol: f64,
) -> Result<Report> {
    let mut inv_worst = 0.0f64;
    for b in delta.basis() {
        inv_worst = inv_worst.max(delta.distance_to(&d.mul_vec(b)?, 1e-12)?);
    }
    let mut skew_worst = 0.0f64;
    for x in delta.basis() {
        for y in delta.basis() {
            let s = vec_ops::dot(&d.mul_vec(x)?, &inner.mul_vec(y)?)
                + vec_ops::dot(x, &inner.mul_vec(&d.mul_vec(y)?)?);
            skew_worst = skew_worst.max(s.abs());
        }
    }
    let mut r = Report::new("skew_on_delta");
    r.add("delta_invariant", inv_worst, tol);
    r.add("skew_symmetric", skew_worst, tol);
    Ok(r)
}

fn require_semisimple(alg: &LieAlgebra<f64>) -> Result<Matrix<f64>> {
    let k = alg.killing_gram()?;
    if k.det()?.abs() <= 1e-8 {
        return Err(Error::Invalid("Killing form is degenerate".into()));
    }
    Ok(k)
}

/// The transpose rule of derivations with respect to -B(., theta .):
/// <D Y, Z> = -<Y, (theta D theta) Z> on sampled pairs.
pub fn killing_adjoint_identity(
    alg: &LieAlgebra<f64>,
    cartan: &CartanData,
    d: &Matrix<f64>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    require_semisimple(alg)?;
    let n = alg.dim();
    // <DY,Z> + <Y, theta D theta Z> = Y^T (D^T G + G theta D theta) Z.
    let tdt = &(&cartan.theta * d) * &cartan.theta;
    let resid = &(&d.transpose() * &cartan.inner) + &(&cartan.inner * &tdt);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        worst = worst.max(vec_ops::dot(&y, &resid.mul_vec(&z)?).abs());
    }
    let mut r = Report::new("killing_adjoint");
    r.add("transpose_identity", worst, tol);
    Ok(r)
}

/// Commutation of D with theta propagates from a bracket-generating
/// subspace to everything it generates. Reports the residual on delta,
/// per growth level, and on the full generated span.
pub fn theta_commutation_propagation(
    alg: &LieAlgebra<f64>,
    theta: &Matrix<f64>,
    d: &Matrix<f64>,
    delta: &Subspace<f64>,
    tol: f64,
) -> Result<Report> {
    let comm = &(d * theta) - &(theta * d);
    let resid = |v: &[f64]| -> Result<f64> { Ok(vec_ops::max_abs(&comm.mul_vec(v)?)) };

    let mut r = Report::new("theta_commutation");
    let mut delta_worst = 0.0f64;
    for b in delta.basis() {
        delta_worst = delta_worst.max(resid(b)?);
    }
    r.add("commutes_on_delta", delta_worst, tol);

    let mut span = delta.clone();
    let mut level = 0usize;
    loop {
        let mut vecs: Vec<Vec<f64>> = span.basis().to_vec();
        let mut level_worst = 0.0f64;
        for i in 0..span.dim() {
            for j in i + 1..span.dim() {
                let v = alg.bracket(&span.basis()[i], &span.basis()[j])?;
                level_worst = level_worst.max(resid(&v)?);
                vecs.push(v);
            }
        }
        let grown = Subspace::from_spanning(alg.dim(), &vecs, tol.max(1e-9))?;
        if grown.dim() == span.dim() {
            break;
        }
        level += 1;
        r.push(Check::new(format!("bracket_level_{level}"), level_worst, f64::INFINITY));
        span = grown;
    }
    let mut full_worst = 0.0f64;
    for b in span.basis() {
        full_worst = full_worst.max(resid(b)?);
    }
    r.add("commutes_on_generated", full_worst, tol * 10.0);
    r.push(Check::holds(
        "propagation_implication",
        delta_worst > tol || full_worst <= tol * 10.0,
    ));
    Ok(r)
}

/// Normalizer n = {X : [X, delta] inside delta}, as the kernel of the
/// bracket maps composed with the projection onto the complement of delta.
pub fn normalizer(
    alg: &LieAlgebra<f64>,
    delta: &Subspace<f64>,
    tol: f64,
) -> Result<Subspace<f64>> {
    let n = alg.dim();
    if delta.dim() == 0 {
        return Ok(Subspace::full(n));
    }
    let a = delta.basis_matrix()?;
    let at = a.transpose();
    let p_delta = &(&a * &(&at * &a).inverse(1e-12)?) * &at;
    let p_perp = &Matrix::identity(n) - &p_delta;
    let mut stacked: Option<Matrix<f64>> = None;
    for dvec in delta.basis() {
        // X -> [X, d] is -ad(d) applied to X.
        let block = &p_perp * &alg.ad_operator(dvec)?.scale(&-1.0);
        stacked = Some(match stacked {
            None => block,
            Some(b) => b.vcat(&block)?,
        });
    }
    Subspace::kernel_of(&stacked.unwrap(), tol)
}

/// l intersect n: the algebra of isometric automorphism generators fixing
/// the origin, for a sub-Riemannian structure on delta.
pub fn automorphic_isometry_algebra(
    alg: &LieAlgebra<f64>,
    cartan: &CartanData,
    delta: &Subspace<f64>,
    tol: f64,
) -> Result<Subspace<f64>> {
    require_semisimple(alg)?;
    let norm = normalizer(alg, delta, tol)?;
    cartan.l.intersect(&norm, tol)
}

// ---------------------------------------------------------------------------
// Arc length under the flow
// ---------------------------------------------------------------------------

/// A curve given by parameter samples on [0, 1]: coordinates and tangent
/// vectors at each sample.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    pub points: Vec<Vec<f64>>,
    pub tangents: Vec<Vec<f64>>,
}

impl SampledCurve {
    pub fn from_fn(samples: usize, f: impl Fn(f64) -> (Vec<f64>, Vec<f64>)) -> Self {
        let mut points = Vec::with_capacity(samples + 1);
        let mut tangents = Vec::with_capacity(samples + 1);
        for k in 0..=samples {
            let (p, v) = f(k as f64 / samples as f64);
            points.push(p);
            tangents.push(v);
        }
        SampledCurve { points, tangents }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Tangent vector moved to the identity by the differential of left
/// translation by g^-1.
pub fn left_pullback(model: &GroupModel, g: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    match model {
        GroupModel::EuclideanAbelian { .. } => Ok(v.to_vec()),
        GroupModel::HeisenbergExp => {
            // d(L_{-g}) at g shifts the central component by half the
            // symplectic pairing with the base point.
            Ok(vec![v[0], v[1], v[2] + 0.5 * (g[1] * v[0] - g[0] * v[1])])
        }
        _ => Err(Error::UnsupportedModel(format!(
            "left_pullback is undefined on {}",
            model.name()
        ))),
    }
}

fn pulled_speeds(
    model: &GroupModel,
    inner: &Matrix<f64>,
    curve: &SampledCurve,
) -> Result<Vec<(f64, Vec<f64>)>> {
    curve
        .points
        .iter()
        .zip(&curve.tangents)
        .map(|(p, v)| {
            let w = left_pullback(model, p, v)?;
            let speed = vec_ops::dot(&w, &inner.mul_vec(&w)?).max(0.0).sqrt();
            Ok((speed, w))
        })
        .collect()
}

fn trapezoid(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let h = 1.0 / (values.len() - 1) as f64;
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    h * (0.5 * values[0] + inner + 0.5 * values[values.len() - 1])
}

/// Arc length of the curve and of its image under the flow at time t,
/// measured with the left-invariant metric from the Gram matrix. The curve
/// must be admissible: pulled-back tangents inside delta.
pub fn arc_length_preservation(
    model: &GroupModel,
    d: &Matrix<f64>,
    inner: &Matrix<f64>,
    delta: &Subspace<f64>,
    curve: &SampledCurve,
    t: f64,
    tol: f64,
) -> Result<Report> {
    if curve.points.len() != curve.tangents.len() || curve.len() < 2 {
        return Err(Error::Invalid("curve needs matching point/tangent samples".into()));
    }
    let alg = model.algebra_f64()?;
    let der = alg.is_derivation(d, 1e-9)?;
    if !der.pass {
        return Err(Error::NotDerivation { residual: der.residual });
    }

    let speeds = pulled_speeds(model, inner, curve)?;
    for (_, w) in &speeds {
        let off = delta.distance_to(w, 1e-12)?;
        if off > 1e-8 * vec_ops::norm(w).max(1.0) {
            return Err(Error::Invalid(
                "curve is not admissible: tangent leaves the distribution".into(),
            ));
        }
    }
    let before: Vec<f64> = speeds.iter().map(|(s, _)| *s).collect();

    // Coordinates flow linearly, so points and tangents both move by e^(tD).
    let phi = d.scale(&t).expm()?;
    let image = SampledCurve {
        points: curve.points.iter().map(|p| phi.mul_vec(p)).collect::<Result<_>>()?,
        tangents: curve.tangents.iter().map(|v| phi.mul_vec(v)).collect::<Result<_>>()?,
    };
    let after: Vec<f64> = pulled_speeds(model, inner, &image)?
        .iter()
        .map(|(s, _)| *s)
        .collect();

    let l0 = trapezoid(&before);
    let l1 = trapezoid(&after);
    let mut r = Report::new("arc_length");
    r.push(Check::new("curve_length", l0, f64::INFINITY));
    r.add("relative_length_drift", (l1 - l0).abs() / l0.max(1e-300), tol);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard;

    fn fm(rows: Vec<Vec<f64>>) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    fn span(alg_dim: usize, vecs: &[Vec<f64>]) -> Subspace<f64> {
        Subspace::from_spanning(alg_dim, vecs, 1e-12).unwrap()
    }

    #[test]
    fn sl2_cartan_split_has_the_expected_shapes() {
        let (alg, c) = cartan_data_sl(2).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(c.l.dim(), 1);
        assert_eq!(c.p.dim(), 2);
        // Basis order is E12, E21, H; the compact part is spanned by E - F.
        assert!(c.l.contains(&[1.0, -1.0, 0.0], 1e-12));
        // theta fixes nothing symmetric: H goes to -H.
        let th = c.theta.mul_vec(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(th, vec![0.0, 0.0, -1.0]);
        let r = cartan_checks(&alg, &c, 1e-12).unwrap();
        assert!(r.pass(), "{}", r.render());
    }

    #[test]
    fn sl3_cartan_data_is_consistent_and_positive() {
        let (alg, c) = cartan_data_sl(3).unwrap();
        assert_eq!(alg.dim(), 8);
        assert_eq!(c.l.dim(), 3);
        assert_eq!(c.p.dim(), 5);
        let r = cartan_checks(&alg, &c, 1e-10).unwrap();
        assert!(r.pass(), "{}", r.render());
        assert!(cartan_data_sl(1).is_err());
    }

    #[test]
    fn bracket_generation_counts_growth_steps() {
        let (alg, _) = cartan_data_sl(2).unwrap();
        // E and F bracket to H in one round.
        let ef = span(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let r = bracket_generating_check(&alg, &ef, 1e-10).unwrap();
        assert!(r.pass(), "{}", r.render());
        let steps = r.checks.iter().find(|c| c.name == "growth_steps").unwrap();
        assert_eq!(steps.residual, 1.0);

        let full = Subspace::full(3);
        let r0 = bracket_generating_check(&alg, &full, 1e-10).unwrap();
        assert!(r0.pass());
        assert_eq!(r0.checks.iter().find(|c| c.name == "growth_steps").unwrap().residual, 0.0);

        // A single line in the Heisenberg algebra generates nothing new.
        let h3 = standard::heisenberg().to_f64();
        let line = span(3, &[vec![1.0, 0.0, 0.0]]);
        let rh = bracket_generating_check(&h3, &line, 1e-10).unwrap();
        assert!(!rh.pass());
        assert_eq!(rh.checks.iter().find(|c| c.name == "stable_dimension").unwrap().residual, 1.0);
    }

    #[test]
    fn skewness_report_matches_hand_checks() {
        let rot = fm(vec![
            vec![0.0, -1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        let full = Subspace::full(3);
        let id = Matrix::identity(3);
        let r = skew_on_delta(&rot, &full, &id, 1e-12).unwrap();
        assert!(r.pass(), "{}", r.render());
        // The rotation generator really is a derivation of the Heisenberg
        // algebra, so this witnesses an isometric flow.
        let h3 = standard::heisenberg().to_f64();
        assert!(h3.is_derivation(&rot, 1e-12).unwrap().pass);

        let hyp = fm(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        let rh = skew_on_delta(&hyp, &full, &id, 1e-12).unwrap();
        assert!(!rh.pass());
        assert!(!rh.checks.iter().find(|c| c.name == "skew_symmetric").unwrap().pass);

        let rz = skew_on_delta(&Matrix::zeros(3, 3), &full, &id, 1e-12).unwrap();
        assert!(rz.pass());
    }

    #[test]
    fn derivation_transpose_identity_on_sl2_and_sl3() {
        let (alg2, c2) = cartan_data_sl(2).unwrap();
        // D = -ad(H), H = third basis vector.
        let d = alg2.ad_operator(&[0.0, 0.0, 1.0]).unwrap().scale(&-1.0);
        let r = killing_adjoint_identity(&alg2, &c2, &d, 50, 5, 1e-10).unwrap();
        assert!(r.pass(), "{}", r.render());
        let rz =
            killing_adjoint_identity(&alg2, &c2, &Matrix::zeros(3, 3), 10, 5, 1e-12).unwrap();
        assert!(rz.pass());

        let (alg3, c3) = cartan_data_sl(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let x: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let dx = alg3.ad_operator(&x).unwrap().scale(&-1.0);
            let ri = killing_adjoint_identity(&alg3, &c3, &dx, 40, 7, 1e-10).unwrap();
            assert!(ri.pass(), "{}", ri.render());
        }

        // Compact-part derivations are furthermore skew for the inner product.
        let d_ef = alg2.ad_operator(&[1.0, -1.0, 0.0]).unwrap().scale(&-1.0);
        let skew = (&(&d_ef.transpose() * &c2.inner) + &(&c2.inner * &d_ef)).max_abs();
        assert!(skew < 1e-12, "skew residual {skew}");

        // Nilpotent algebras have degenerate Killing form.
        let h3 = standard::heisenberg().to_f64();
        let hc = CartanData {
            theta: Matrix::identity(3),
            l: Subspace::full(3),
            p: Subspace::zero(3),
            inner: Matrix::identity(3),
        };
        assert!(killing_adjoint_identity(&h3, &hc, &Matrix::zeros(3, 3), 5, 1, 1e-10).is_err());
    }

    #[test]
    fn theta_commutation_propagates_from_generators() {
        let (alg, c) = cartan_data_sl(2).unwrap();
        let ef = span(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);

        let d_lf = alg.ad_operator(&[1.0, -1.0, 0.0]).unwrap().scale(&-1.0);
        let r = theta_commutation_propagation(&alg, &c.theta, &d_lf, &ef, 1e-10).unwrap();
        assert!(r.pass(), "{}", r.render());

        let d_h = alg.ad_operator(&[0.0, 0.0, 1.0]).unwrap().scale(&-1.0);
        let rh = theta_commutation_propagation(&alg, &c.theta, &d_h, &ef, 1e-10).unwrap();
        assert!(!rh.checks.iter().find(|c| c.name == "commutes_on_delta").unwrap().pass);

        let rz = theta_commutation_propagation(
            &alg,
            &c.theta,
            &Matrix::zeros(3, 3),
            &ef,
            1e-10,
        )
        .unwrap();
        assert!(rz.pass());
    }

    #[test]
    fn normalizer_matches_bracket_oracle_on_sl2() {
        // Structure-constant basis (H, E, F).
        let alg = standard::sl2().to_f64();
        let e_line = span(3, &[vec![0.0, 1.0, 0.0]]);
        let n = normalizer(&alg, &e_line, 1e-10).unwrap();
        assert_eq!(n.dim(), 2);
        assert!(n.contains(&[1.0, 0.0, 0.0], 1e-9));
        assert!(n.contains(&[0.0, 1.0, 0.0], 1e-9));
        assert!(!n.contains(&[0.0, 0.0, 1.0], 1e-9));

        assert_eq!(normalizer(&alg, &Subspace::full(3), 1e-10).unwrap().dim(), 3);

        // Oracle for span{E, F}: write X = aH + bE + cF and keep [X, E],
        // [X, F] inside the span; [E, F] = H forces b = c = 0.
        let ef = span(3, &[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let nef = normalizer(&alg, &ef, 1e-10).unwrap();
        assert_eq!(nef.dim(), 1);
        assert!(nef.contains(&[1.0, 0.0, 0.0], 1e-9));

        // Normalizers are closed under the bracket.
        for x in n.basis() {
            for y in n.basis() {
                let b = alg.bracket(x, y).unwrap();
                assert!(n.distance_to(&b, 1e-12).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn automorphic_isometries_of_sl2_lines() {
        let (alg, c) = cartan_data_sl(2).unwrap();
        // Basis (E, F, H). The E line admits no automorphic isometries.
        let e_line = span(3, &[vec![1.0, 0.0, 0.0]]);
        let zero = automorphic_isometry_algebra(&alg, &c, &e_line, 1e-10).unwrap();
        assert_eq!(zero.dim(), 0);

        // The full distribution keeps the whole compact part.
        let all = automorphic_isometry_algebra(&alg, &c, &Subspace::full(3), 1e-10).unwrap();
        assert_eq!(all.dim(), 1);
        assert!(all.contains(&[1.0, -1.0, 0.0], 1e-9));

        // Members generate flows that preserve the line and act skewly.
        for x in all.basis() {
            let d = alg.ad_operator(x).unwrap().scale(&-1.0);
            let r = skew_on_delta(&d, &Subspace::full(3), &c.inner, 1e-9).unwrap();
            assert!(r.pass(), "{}", r.render());
        }
        // E - F normalizes nothing along the E line: invariance fails.
        let d_lf = alg.ad_operator(&[1.0, -1.0, 0.0]).unwrap().scale(&-1.0);
        let bad = skew_on_delta(&d_lf, &e_line, &c.inner, 1e-9).unwrap();
        assert!(!bad.checks.iter().find(|c| c.name == "delta_invariant").unwrap().pass);
    }

    #[test]
    fn symmetric_part_of_sl3_keeps_the_full_compact_algebra() {
        let (alg, c) = cartan_data_sl(3).unwrap();
        let iso = automorphic_isometry_algebra(&alg, &c, &c.p, 1e-9).unwrap();
        assert_eq!(iso.dim(), 3);
        for x in iso.basis() {
            let d = alg.ad_operator(x).unwrap().scale(&-1.0);
            let r = skew_on_delta(&d, &c.p, &c.inner, 1e-8).unwrap();
            assert!(r.pass(), "{}", r.render());
        }
        // A symmetric-part direction is not skew on p.
        let d_bad = alg.ad_operator(c.p.basis().first().unwrap()).unwrap().scale(&-1.0);
        let rb = skew_on_delta(&d_bad, &c.p, &c.inner, 1e-8).unwrap();
        assert!(!rb.pass());
    }

    #[test]
    fn elliptic_flow_preserves_arc_length_and_hyperbolic_does_not() {
        let m = GroupModel::HeisenbergExp;
        let rot = fm(vec![
            vec![0.0, -1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        let id = Matrix::identity(3);
        let full = Subspace::full(3);
        let tau = std::f64::consts::TAU;
        let curve = SampledCurve::from_fn(10_000, |s| {
            (
                vec![(tau * s).cos(), (tau * s).sin(), 0.3 * s],
                vec![-tau * (tau * s).sin(), tau * (tau * s).cos(), 0.3],
            )
        });
        for t in [0.0, 0.5, 1.0, 3.0] {
            let r = arc_length_preservation(&m, &rot, &id, &full, &curve, t, 1e-6).unwrap();
            assert!(r.pass(), "t = {t}\n{}", r.render());
        }

        let hyp = fm(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        let rh = arc_length_preservation(&m, &hyp, &id, &full, &curve, 0.5, 1e-6).unwrap();
        let drift = rh.checks.iter().find(|c| c.name == "relative_length_drift").unwrap();
        assert!(!drift.pass);
        assert!(drift.residual > 1e-2, "control drift {}", drift.residual);
    }

    #[test]
    fn horizontal_curves_only_for_strict_distributions() {
        let m = GroupModel::HeisenbergExp;
        let rot = fm(vec![
            vec![0.0, -1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        let id = Matrix::identity(3);
        let plane = span(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let tau = std::f64::consts::TAU;

        // The planar circle is not horizontal: its central pullback
        // component is the enclosed-area rate.
        let flat = SampledCurve::from_fn(200, |s| {
            (
                vec![(tau * s).cos(), (tau * s).sin(), 0.0],
                vec![-tau * (tau * s).sin(), tau * (tau * s).cos(), 0.0],
            )
        });
        assert!(matches!(
            arc_length_preservation(&m, &rot, &id, &plane, &flat, 1.0, 1e-6),
            Err(Error::Invalid(_))
        ));

        // Lifting with dz = pi ds cancels that component exactly.
        let lifted = SampledCurve::from_fn(10_000, |s| {
            (
                vec![(tau * s).cos(), (tau * s).sin(), std::f64::consts::PI * s],
                vec![-tau * (tau * s).sin(), tau * (tau * s).cos(), std::f64::consts::PI],
            )
        });
        let r = arc_length_preservation(&m, &rot, &id, &plane, &lifted, 2.0, 1e-6).unwrap();
        assert!(r.pass(), "{}", r.render());
    }
}
