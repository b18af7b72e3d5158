//! Concrete group models with explicit flows of linear vector fields:
//! abelian R^n, the Heisenberg group in exponential coordinates, the
//! semidirect product R x_rho R^2 with its closed-form flow, and the torus
//! Z^2-quotient driven by an integer matrix (discrete time).
//!
//! The recurrence machinery lives here too: the candidate recurrent set is
//! the common zero set of the hyperbolic- and nilpotent-part vector fields,
//! and a sampling probe confirms both that candidate points return to
//! themselves and that offset points do not.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, LieAlgebra};
use crate::error::{Error, Result};
use crate::jordan::{self, JordanParts};
use crate::matrix::{vec_ops, Matrix};
use crate::report::{Check, Report};
use crate::scalar::{Rational, Scalar};
use crate::subspace::Subspace;

/// 2x2 rotation generator.
fn theta_gen() -> Matrix<f64> {
    Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap()
}

fn rotation(t: f64) -> Matrix<f64> {
    Matrix::from_rows(vec![
        vec![t.cos(), -t.sin()],
        vec![t.sin(), t.cos()],
    ])
    .unwrap()
}

// ---------------------------------------------------------------------------
// Models and group laws
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum GroupModel {
    EuclideanAbelian { n: usize },
    HeisenbergExp,
    SemidirectRxR2(Semidirect),
    Torus2(Torus2),
}

impl GroupModel {
    pub fn dim(&self) -> usize {
        match self {
            GroupModel::EuclideanAbelian { n } => *n,
            GroupModel::HeisenbergExp => 3,
            GroupModel::SemidirectRxR2(_) => 3,
            GroupModel::Torus2(_) => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupModel::EuclideanAbelian { .. } => "euclidean",
            GroupModel::HeisenbergExp => "heisenberg",
            GroupModel::SemidirectRxR2(_) => "semidirect",
            GroupModel::Torus2(_) => "torus2",
        }
    }

    /// Structure constants of the model's Lie algebra, over floats.
    pub fn algebra_f64(&self) -> Result<LieAlgebra<f64>> {
        match self {
            GroupModel::EuclideanAbelian { n } => Ok(LieAlgebra::abelian(*n)),
            GroupModel::HeisenbergExp => Ok(algebra::standard::heisenberg().to_f64()),
            GroupModel::SemidirectRxR2(_) => Ok(semidirect_algebra().to_f64()),
            GroupModel::Torus2(_) => Ok(LieAlgebra::abelian(2)),
        }
    }

    pub fn identity(&self) -> Vec<f64> {
        vec![0.0; self.dim()]
    }

    fn check_dim(&self, g: &[f64]) -> Result<()> {
        if g.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: g.len() });
        }
        Ok(())
    }

    pub fn multiply(&self, g: &[f64], h: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(g)?;
        self.check_dim(h)?;
        match self {
            GroupModel::EuclideanAbelian { .. } => Ok(vec_ops::add(g, h)),
            GroupModel::HeisenbergExp => {
                // Exponential coordinates (x, y, z) with the exact 2-step law:
                // the central coordinate picks up half the symplectic area.
                let z = g[2] + h[2] + 0.5 * (g[0] * h[1] - g[1] * h[0]);
                Ok(vec![g[0] + h[0], g[1] + h[1], z])
            }
            GroupModel::SemidirectRxR2(_) => {
                let rot = rotation(g[0]);
                let v = rot.mul_vec(&[h[1], h[2]])?;
                Ok(vec![g[0] + h[0], g[1] + v[0], g[2] + v[1]])
            }
            GroupModel::Torus2(_) => {
                Ok(vec![(g[0] + h[0]).rem_euclid(1.0), (g[1] + h[1]).rem_euclid(1.0)])
            }
        }
    }

    pub fn inverse(&self, g: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(g)?;
        match self {
            GroupModel::EuclideanAbelian { .. } | GroupModel::HeisenbergExp => {
                // In exponential coordinates the inverse is the negative.
                Ok(g.iter().map(|x| -x).collect())
            }
            GroupModel::SemidirectRxR2(_) => {
                let rot = rotation(-g[0]);
                let v = rot.mul_vec(&[-g[1], -g[2]])?;
                Ok(vec![-g[0], v[0], v[1]])
            }
            GroupModel::Torus2(_) => {
                Ok(vec![(-g[0]).rem_euclid(1.0), (-g[1]).rem_euclid(1.0)])
            }
        }
    }

    /// Left-invariant displacement coordinates log(g^-1 h), used by the
    /// probe metric.
    pub fn displacement(&self, g: &[f64], h: &[f64]) -> Result<Vec<f64>> {
        match self {
            GroupModel::Torus2(_) => {
                // Shortest representative on the torus.
                Ok((0..2)
                    .map(|i| {
                        let d = (h[i] - g[i]).rem_euclid(1.0);
                        if d > 0.5 {
                            d - 1.0
                        } else {
                            d
                        }
                    })
                    .collect())
            }
            _ => self.multiply(&self.inverse(g)?, h),
        }
    }
}

/// The flow of the linear vector field with derivation d on exponential
/// models: coordinates move by e^(t d). Requires d to be a derivation of
/// the model's algebra.
pub fn linear_flow(
    model: &GroupModel,
    d: &Matrix<f64>,
    t: f64,
    g: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    match model {
        GroupModel::EuclideanAbelian { .. } | GroupModel::HeisenbergExp => {
            let alg = model.algebra_f64()?;
            let check = alg.is_derivation(d, tol)?;
            if !check.pass {
                return Err(Error::NotDerivation { residual: check.residual });
            }
            model.check_dim(g)?;
            d.scale(&t).expm()?.mul_vec(g)
        }
        _ => Err(Error::UnsupportedModel(format!(
            "linear_flow is undefined on {}",
            model.name()
        ))),
    }
}

/// Fixed algebra of R x_rho R^2: [e0, e1] = e2, [e0, e2] = -e1.
pub fn semidirect_algebra() -> LieAlgebra<Rational> {
    LieAlgebra::new(
        vec!["t".into(), "x".into(), "y".into()],
        &[
            (0, 1, 2, Rational::from_int(1)),
            (0, 2, 1, Rational::from_int(-1)),
        ],
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Semidirect product R x_rho R^2
// ---------------------------------------------------------------------------

/// Parameters of the semidirect model: the plane part of the derivation is
/// A = lambda I + mu J (J the rotation generator) and xi is the drift
/// column. A must be invertible, i.e. lambda^2 + mu^2 != 0.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub lambda: f64,
    pub mu: f64,
    pub xi: [f64; 2],
}

impl Semidirect {
    pub fn new(lambda: f64, mu: f64, xi: [f64; 2]) -> Result<Self> {
        if lambda * lambda + mu * mu == 0.0 {
            return Err(Error::Invalid(
                "semidirect model needs lambda^2 + mu^2 != 0".into(),
            ));
        }
        Ok(Semidirect { lambda, mu, xi })
    }

    pub fn a_matrix(&self) -> Matrix<f64> {
        Matrix::from_rows(vec![
            vec![self.lambda, -self.mu],
            vec![self.mu, self.lambda],
        ])
        .unwrap()
    }

    /// The full derivation [[0, 0], [xi, A]] on the 3-dimensional algebra.
    pub fn derivation(&self) -> Matrix<f64> {
        let a = self.a_matrix();
        Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, _) => 0.0,
            (i, 0) => self.xi[i - 1],
            (i, j) => a[(i - 1, j - 1)],
        })
    }

    /// Lambda_t = (rho_t - 1) J^(-1).
    pub fn lambda_t(t: f64) -> Matrix<f64> {
        let j_inv = theta_gen().inverse(1e-12).unwrap();
        let one = Matrix::identity(2);
        &(&rotation(t) - &one) * &j_inv
    }

    /// The vector field (0, A v + Lambda_t xi) at g = (t, v).
    pub fn vector_field(&self, g: &[f64]) -> Result<Vec<f64>> {
        self.part_field(&self.a_matrix(), &self.xi, g)
    }

    /// A part field (0, A_p v + Lambda_t xi_p) for a 2x2 part block and its
    /// drift column.
    pub fn part_field(&self, a_p: &Matrix<f64>, xi_p: &[f64; 2], g: &[f64]) -> Result<Vec<f64>> {
        if g.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: g.len() });
        }
        let v = [g[1], g[2]];
        let av = a_p.mul_vec(&v)?;
        let drift = Self::lambda_t(g[0]).mul_vec(xi_p)?;
        Ok(vec![0.0, av[0] + drift[0], av[1] + drift[1]])
    }

    /// Drift column of a part block: xi_p = A_p A^(-1) xi.
    pub fn part_xi(&self, a_p: &Matrix<f64>) -> Result<[f64; 2]> {
        let a_inv = self.a_matrix().inverse(1e-12)?;
        let v = (a_p * &a_inv).mul_vec(&self.xi)?;
        Ok([v[0], v[1]])
    }

    /// Closed-form flow: (t, e^(sA) v + (e^(sA) - 1) A^(-1) Lambda_t xi).
    pub fn flow(&self, s: f64, g: &[f64]) -> Result<Vec<f64>> {
        if g.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: g.len() });
        }
        let a = self.a_matrix();
        let esa = a.scale(&s).expm()?;
        let one = Matrix::identity(2);
        let a_inv = a.inverse(1e-12)?;
        let drift = (&(&esa - &one) * &a_inv)
            .mul_vec(&Self::lambda_t(g[0]).mul_vec(&self.xi)?)?;
        let v = esa.mul_vec(&[g[1], g[2]])?;
        Ok(vec![g[0], v[0] + drift[0], v[1] + drift[1]])
    }

    /// The unique zero of the vector field over each base time t:
    /// v(t) = -A^(-1) Lambda_t xi.
    pub fn fixed_points(&self, t_grid: &[f64]) -> Result<Vec<Vec<f64>>> {
        let a_inv = self.a_matrix().inverse(1e-12)?;
        t_grid
            .iter()
            .map(|&t| {
                let v = a_inv.mul_vec(&Self::lambda_t(t).mul_vec(&self.xi)?)?;
                Ok(vec![t, -v[0], -v[1]])
            })
            .collect()
    }

    /// Adjoint representation at g = (t, v): [[1, 0], [-J v, rho_t]].
    pub fn adjoint(&self, g: &[f64]) -> Result<Matrix<f64>> {
        if g.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: g.len() });
        }
        let jv = theta_gen().mul_vec(&[g[1], g[2]])?;
        let rot = rotation(g[0]);
        Ok(Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (0, _) => 0.0,
            (i, 0) => -jv[i - 1],
            (i, j) => rot[(i - 1, j - 1)],
        }))
    }
}

// ---------------------------------------------------------------------------
// Probe metric and recurrence
// ---------------------------------------------------------------------------

/// Gram matrix of an inner product invariant under the elliptic flow
/// e^(tE), computed as a long-time quadrature average of the pulled-back
/// Euclidean Gram. For E = 0 this is the identity.
pub fn elliptic_invariant_gram(e: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = e.dim()?;
    if e.max_abs() == 0.0 {
        return Ok(Matrix::identity(n));
    }
    let evs = crate::spectrum::eigenvalues(e)?;
    let omega_min = evs
        .iter()
        .map(|z| z.im.abs())
        .filter(|w| *w > 1e-9)
        .fold(f64::INFINITY, f64::min);
    if !omega_min.is_finite() {
        return Ok(Matrix::identity(n));
    }
    let period = 2.0 * std::f64::consts::PI / omega_min;
    let total = 16.0 * period;
    let steps = 2048usize;
    let mut acc: Matrix<f64> = Matrix::zeros(n, n);
    for k in 0..steps {
        let s = total * (k as f64 + 0.5) / steps as f64;
        let ets = e.scale(&s).expm()?;
        acc = &acc + &(&ets.transpose() * &ets);
    }
    Ok(acc.scale(&(1.0 / steps as f64)))
}

fn gram_norm(g: &Matrix<f64>, v: &[f64]) -> f64 {
    let gv = g.mul_vec(v).unwrap_or_else(|_| v.to_vec());
    vec_ops::dot(v, &gv).max(0.0).sqrt()
}

/// Probe configuration: a point counts as recurrent when the flow comes
/// back within eps (probe metric) at some positive time up to t_max.
#[derive(Clone, Debug)]
pub struct ProbeConfig {
    pub eps: f64,
    pub t_max: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { eps: 1e-6, t_max: 100.0, samples: 100, seed: 17 }
    }
}

/// Scan return times: multiples of each elliptic period plus a uniform
/// grid bounded away from zero. Returns the smallest displacement seen.
fn probe_min_distance(
    mut dist_at: impl FnMut(f64) -> Result<f64>,
    frequencies: &[f64],
    t_max: f64,
) -> Result<f64> {
    let mut best = f64::INFINITY;
    for &w in frequencies {
        if w <= 1e-9 {
            continue;
        }
        let period = 2.0 * std::f64::consts::PI / w;
        let mut k = 1usize;
        while k as f64 * period <= t_max && k <= 10_000 {
            best = best.min(dist_at(k as f64 * period)?);
            k += 1;
        }
    }
    let t_min = 0.5f64.min(t_max / 2.0);
    let grid = 512usize;
    for i in 0..=grid {
        let t = t_min + (t_max - t_min) * i as f64 / grid as f64;
        best = best.min(dist_at(t)?);
    }
    Ok(best)
}

struct ModelFlow<'a> {
    model: &'a GroupModel,
    derivation: Matrix<f64>,
    parts: JordanParts<f64>,
    gram: Matrix<f64>,
    frequencies: Vec<f64>,
}

impl<'a> ModelFlow<'a> {
    fn new(model: &'a GroupModel, d: &Matrix<f64>, cluster_rel: f64) -> Result<Self> {
        let parts = jordan::jordan_f64(d, cluster_rel)?;
        let sp = crate::spectrum::cluster_spectrum(d, cluster_rel)?;
        let frequencies = sp.frequencies();
        let eblock = match model {
            GroupModel::SemidirectRxR2(_) => {
                // The metric weighs the plane factor; base displacement is
                // handled separately.
                Matrix::from_fn(2, 2, |i, j| parts.elliptic[(i + 1, j + 1)])
            }
            _ => parts.elliptic.clone(),
        };
        // Elliptic parts at rounding level are really zero.
        let gram = if eblock.max_abs() <= 1e-12 * d.max_abs().max(1.0) {
            Matrix::identity(eblock.dim()?)
        } else {
            elliptic_invariant_gram(&eblock)?
        };
        Ok(ModelFlow { model, derivation: d.clone(), parts, gram, frequencies })
    }

    fn at(&self, t: f64, g: &[f64]) -> Result<Vec<f64>> {
        match self.model {
            GroupModel::SemidirectRxR2(sd) => sd.flow(t, g),
            _ => self.derivation.scale(&t).expm()?.mul_vec(g),
        }
    }

    fn distance(&self, g: &[f64], h: &[f64]) -> Result<f64> {
        let d = self.model.displacement(g, h)?;
        Ok(match self.model {
            GroupModel::SemidirectRxR2(_) => {
                d[0].abs().max(gram_norm(&self.gram, &[d[1], d[2]]))
            }
            _ => gram_norm(&self.gram, &d),
        })
    }

    fn min_return_distance(&self, g: &[f64], t_max: f64) -> Result<f64> {
        probe_min_distance(
            |t| {
                let image = self.at(t, g)?;
                self.distance(g, &image)
            },
            &self.frequencies,
            t_max,
        )
    }
}

/// Verify the recurrent-set characterization on one model: points where
/// the hyperbolic- and nilpotent-part fields both vanish probe as
/// recurrent, and points offset from that set (norm >= 0.1) do not.
pub fn recurrent_set_certificate(
    model: &GroupModel,
    d: &Matrix<f64>,
    cfg: &ProbeConfig,
) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = Report::new("recurrent_set");
    match model {
        GroupModel::EuclideanAbelian { .. } | GroupModel::HeisenbergExp => {
            let alg = model.algebra_f64()?;
            let der = alg.is_derivation(d, 1e-9)?;
            if !der.pass {
                return Err(Error::NotDerivation { residual: der.residual });
            }
            let flow = ModelFlow::new(model, d, 1e-6)?;
            let n = model.dim();
            let ker_h = Subspace::kernel_of(&flow.parts.hyperbolic, 1e-9)?;
            let ker_n = Subspace::kernel_of(&flow.parts.nilpotent, 1e-9)?;
            let candidate = ker_h.intersect(&ker_n, 1e-9)?;

            let mut field_residual = 0.0f64;
            let mut worst_candidate = 0.0f64;
            for _ in 0..cfg.samples {
                let g = random_in_subspace(&candidate, &mut rng);
                field_residual = field_residual
                    .max(vec_ops::max_abs(&flow.parts.hyperbolic.mul_vec(&g)?))
                    .max(vec_ops::max_abs(&flow.parts.nilpotent.mul_vec(&g)?));
                worst_candidate = worst_candidate.max(flow.min_return_distance(&g, cfg.t_max)?);
            }
            report.add("candidate_field_residual", field_residual, 1e-9);
            report.add("candidates_recurrent", worst_candidate, cfg.eps);

            if candidate.dim() < n {
                let mut min_off = f64::INFINITY;
                for _ in 0..cfg.samples {
                    let base = random_in_subspace(&candidate, &mut rng);
                    let off = random_offset(&candidate, n, &mut rng);
                    let g = vec_ops::add(&base, &off);
                    min_off = min_off.min(flow.min_return_distance(&g, cfg.t_max)?);
                }
                report.push(Check {
                    name: "off_point_separation".into(),
                    residual: min_off,
                    threshold: cfg.eps,
                    pass: min_off > cfg.eps,
                });
            } else {
                // Every direction is recurrent; the off-set direction is empty.
                report.push(Check::holds("off_point_separation", true));
            }
        }
        GroupModel::SemidirectRxR2(sd) => {
            let consistency = (&sd.derivation() - d).max_abs();
            if consistency > 1e-12 {
                return Err(Error::Invalid(
                    "derivation does not match the semidirect parameters".into(),
                ));
            }
            let flow = ModelFlow::new(model, d, 1e-6)?;
            let a_h = Matrix::from_fn(2, 2, |i, j| flow.parts.hyperbolic[(i + 1, j + 1)]);
            let nil_norm = flow.parts.nilpotent.max_abs();
            report.add("nilpotent_part_field", nil_norm, 1e-10);

            let mut field_residual = 0.0f64;
            let mut worst_candidate = 0.0f64;
            let mut min_off = f64::INFINITY;
            for _ in 0..cfg.samples {
                let t = rng.gen_range(-5.0..5.0);
                let g = sd.fixed_points(&[t])?.remove(0);
                let xi_h = sd.part_xi(&a_h)?;
                field_residual = field_residual
                    .max(vec_ops::max_abs(&sd.part_field(&a_h, &xi_h, &g)?));
                worst_candidate = worst_candidate.max(flow.min_return_distance(&g, cfg.t_max)?);

                let angle = rng.gen_range(0.0..std::f64::consts::TAU);
                let radius = rng.gen_range(0.1..1.0);
                let off = vec![
                    g[0],
                    g[1] + radius * angle.cos(),
                    g[2] + radius * angle.sin(),
                ];
                min_off = min_off.min(flow.min_return_distance(&off, cfg.t_max)?);
            }
            report.add("candidate_field_residual", field_residual, 1e-12);
            report.add("candidates_recurrent", worst_candidate, cfg.eps);
            report.push(Check {
                name: "off_point_separation".into(),
                residual: min_off,
                threshold: cfg.eps,
                pass: min_off > cfg.eps,
            });
        }
        GroupModel::Torus2(_) => {
            return Err(Error::UnsupportedModel(
                "recurrence certificate needs a continuous-time flow".into(),
            ));
        }
    }
    Ok(report)
}

fn random_in_subspace(s: &Subspace<f64>, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut v = vec![0.0; s.ambient()];
    for b in s.basis() {
        let c = rng.gen_range(-2.0..2.0);
        for (vi, bi) in v.iter_mut().zip(b.iter()) {
            *vi += c * bi;
        }
    }
    v
}

/// A direction bounded away from the subspace: unit vector with distance
/// at least 0.3, rescaled to a random length in [0.5, 2].
fn random_offset(avoid: &Subspace<f64>, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = vec_ops::norm(&raw);
        if norm < 1e-3 {
            continue;
        }
        let unit: Vec<f64> = raw.iter().map(|x| x / norm).collect();
        if avoid.distance_to(&unit, 1e-12).unwrap_or(0.0) >= 0.3 {
            let len = rng.gen_range(0.5..2.0);
            return unit.iter().map(|x| x * len).collect();
        }
    }
}

/// Verify fix(full field) = fix(elliptic) ∩ fix(hyperbolic) ∩ fix(nilpotent).
pub fn fix_intersection_certificate(
    model: &GroupModel,
    d: &Matrix<f64>,
    tol: f64,
) -> Result<Report> {
    let mut report = Report::new("fix_intersection");
    match model {
        GroupModel::EuclideanAbelian { .. } | GroupModel::HeisenbergExp => {
            let parts = jordan::jordan_f64(d, 1e-6)?;
            let full = Subspace::kernel_of(d, tol.max(1e-10))?;
            let ke = Subspace::kernel_of(&parts.elliptic, tol.max(1e-10))?;
            let kh = Subspace::kernel_of(&parts.hyperbolic, tol.max(1e-10))?;
            let kn = Subspace::kernel_of(&parts.nilpotent, tol.max(1e-10))?;
            let inter = ke.intersect(&kh, 1e-10)?.intersect(&kn, 1e-10)?;
            let mut worst = 0.0f64;
            for b in full.basis() {
                worst = worst.max(inter.distance_to(b, 1e-12)?);
            }
            for b in inter.basis() {
                worst = worst.max(full.distance_to(b, 1e-12)?);
            }
            report.add("zero_sets_coincide", worst, tol.max(1e-10));
        }
        GroupModel::SemidirectRxR2(sd) => {
            let parts = jordan::jordan_f64(&sd.derivation(), 1e-6)?;
            let blocks: Vec<Matrix<f64>> = [&parts.elliptic, &parts.hyperbolic]
                .iter()
                .map(|m| Matrix::from_fn(2, 2, |i, j| m[(i + 1, j + 1)]))
                .collect();
            report.add("nilpotent_part_vanishes", parts.nilpotent.max_abs(), tol.max(1e-10));
            let mut worst = 0.0f64;
            for &t in &[-3.0, -1.0, 0.0, 1.0, 2.5] {
                let g = sd.fixed_points(&[t])?.remove(0);
                worst = worst.max(vec_ops::max_abs(&sd.vector_field(&g)?));
                for b in &blocks {
                    if b.max_abs() == 0.0 {
                        continue; // identically zero part field vanishes everywhere
                    }
                    let xi_p = sd.part_xi(b)?;
                    worst = worst.max(vec_ops::max_abs(&sd.part_field(b, &xi_p, &g)?));
                }
            }
            report.add("part_fields_vanish_on_fix", worst, tol.max(1e-10));
        }
        GroupModel::Torus2(_) => {
            return Err(Error::UnsupportedModel(
                "fixed-set intersection needs a continuous-time flow".into(),
            ));
        }
    }
    Ok(report)
}

/// Verify Ad(flow_t(g)) = e^(t ad(D)) Ad(g) on sampled (g, t).
pub fn ad_conjugation_identity(
    model: &GroupModel,
    d: &Matrix<f64>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    match model {
        GroupModel::HeisenbergExp => {
            let alg = model.algebra_f64()?;
            let der = alg.is_derivation(d, 1e-9)?;
            if !der.pass {
                return Err(Error::NotDerivation { residual: der.residual });
            }
            let ad_d = algebra::ad_of_map(d)?;
            for _ in 0..samples {
                let g: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.5..1.5)).collect();
                let t = rng.gen_range(-2.0..2.0);
                // Ad in exponential coordinates of a 2-step group:
                // Ad(exp Y) = I + ad(Y).
                let adjoint = |p: &[f64]| -> Result<Matrix<f64>> {
                    Ok(&Matrix::identity(3) + &alg.ad_operator(p)?)
                };
                let moved = linear_flow(model, d, t, &g, 1e-9)?;
                let lhs = adjoint(&moved)?;
                let pushed = crate::algebra::unvec(
                    &ad_d.scale(&t).expm()?.mul_vec(&crate::algebra::vec_mat(&adjoint(&g)?))?,
                    3,
                );
                worst = worst.max((&lhs - &pushed).max_abs());
            }
        }
        GroupModel::SemidirectRxR2(sd) => {
            let dd = sd.derivation();
            if (&dd - d).max_abs() > 1e-12 {
                return Err(Error::Invalid(
                    "derivation does not match the semidirect parameters".into(),
                ));
            }
            let ad_d = algebra::ad_of_map(d)?;
            for _ in 0..samples {
                let g: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.5..1.5)).collect();
                let t = rng.gen_range(-2.0..2.0);
                let moved = sd.flow(t, &g)?;
                let lhs = sd.adjoint(&moved)?;
                let pushed = crate::algebra::unvec(
                    &ad_d.scale(&t).expm()?.mul_vec(&crate::algebra::vec_mat(&sd.adjoint(&g)?))?,
                    3,
                );
                worst = worst.max((&lhs - &pushed).max_abs());
            }
        }
        _ => {
            return Err(Error::UnsupportedModel(
                "adjoint conjugation needs a computable adjoint representation".into(),
            ));
        }
    }
    let mut r = Report::new("ad_conjugation");
    r.add("conjugation_identity", worst, tol);
    Ok(r)
}

/// Automorphism and flow-property residuals on random samples.
pub fn automorphism_flow_checks(
    model: &GroupModel,
    d: &Matrix<f64>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = model.dim();
    let flow = |t: f64, g: &[f64]| -> Result<Vec<f64>> {
        match model {
            GroupModel::SemidirectRxR2(sd) => sd.flow(t, g),
            _ => linear_flow(model, d, t, g, 1e-9),
        }
    };
    let mut auto_worst = 0.0f64;
    let mut flow_worst = 0.0f64;
    for _ in 0..samples {
        let g: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let h: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let t = rng.gen_range(-2.0..2.0);
        let s = rng.gen_range(-2.0..2.0);

        let lhs = flow(t, &model.multiply(&g, &h)?)?;
        let rhs = model.multiply(&flow(t, &g)?, &flow(t, &h)?)?;
        auto_worst = auto_worst.max(vec_ops::max_abs(&vec_ops::sub(&lhs, &rhs)));

        let once = flow(t + s, &g)?;
        let twice = flow(t, &flow(s, &g)?)?;
        flow_worst = flow_worst.max(vec_ops::max_abs(&vec_ops::sub(&once, &twice)));
    }
    let mut r = Report::new("automorphism_flow");
    r.add("automorphism_identity", auto_worst, tol);
    r.add("flow_property", flow_worst, tol);
    Ok(r)
}

// ---------------------------------------------------------------------------
// Torus2: discrete-time integer-matrix dynamics, exact
// ---------------------------------------------------------------------------

/// The 2-torus with an integer matrix of determinant +-1 acting on it.
/// Rational points have exact orbits.
#[derive(Clone, Debug)]
pub struct Torus2 {
    pub entries: [[i64; 2]; 2],
}

impl Torus2 {
    pub fn new(entries: [[i64; 2]; 2]) -> Result<Self> {
        let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
        if det.abs() != 1 {
            return Err(Error::Invalid(format!(
                "torus matrix must have determinant +-1, got {det}"
            )));
        }
        Ok(Torus2 { entries })
    }

    pub fn cat_map() -> Torus2 {
        Torus2 { entries: [[1, 1], [1, 2]] }
    }

    fn reduce(x: &Rational) -> Rational {
        x - x.floor()
    }

    pub fn step(&self, p: &(Rational, Rational)) -> (Rational, Rational) {
        let m = &self.entries;
        let x = Rational::from_int(m[0][0]) * p.0.clone()
            + Rational::from_int(m[0][1]) * p.1.clone();
        let y = Rational::from_int(m[1][0]) * p.0.clone()
            + Rational::from_int(m[1][1]) * p.1.clone();
        (Self::reduce(&x), Self::reduce(&y))
    }

    pub fn iterate(&self, p: &(Rational, Rational), n: usize) -> (Rational, Rational) {
        let mut q = (Self::reduce(&p.0), Self::reduce(&p.1));
        for _ in 0..n {
            q = self.step(&q);
        }
        q
    }

    /// Exact period of a rational point. A denominator-q point lives in the
    /// finite set (Z/q)^2 where the map is a bijection, so the orbit closes
    /// within q^2 steps.
    pub fn period(&self, p: &(Rational, Rational)) -> Result<usize> {
        let p = (Self::reduce(&p.0), Self::reduce(&p.1));
        let qx = p.0.denom().to_i64().ok_or(Error::Invalid("denominator too large".into()))?;
        let qy = p.1.denom().to_i64().ok_or(Error::Invalid("denominator too large".into()))?;
        let q = lcm(qx, qy);
        let ax = (p.0.numer().to_i64().unwrap() * (q / qx)).rem_euclid(q);
        let ay = (p.1.numer().to_i64().unwrap() * (q / qy)).rem_euclid(q);
        self.period_mod(ax, ay, q)
    }

    fn period_mod(&self, a0: i64, b0: i64, q: i64) -> Result<usize> {
        let m = &self.entries;
        let (mut a, mut b) = (a0, b0);
        let cap = (q * q) as usize + 1;
        for k in 1..=cap {
            let na = (m[0][0] * a + m[0][1] * b).rem_euclid(q);
            let nb = (m[1][0] * a + m[1][1] * b).rem_euclid(q);
            a = na;
            b = nb;
            if a == a0 && b == b0 {
                return Ok(k);
            }
        }
        Err(Error::Invalid("orbit did not close within the denominator bound".into()))
    }

    /// Exhaustive scan over all rational points with denominator <= q_max:
    /// every orbit must be periodic, and the only fixed point of one step
    /// must be the origin. Integer arithmetic mod q keeps this exact.
    pub fn periodicity_scan(&self, q_max: i64) -> Result<Report> {
        let mut non_periodic = 0usize;
        let mut extra_fixed = 0usize;
        let mut max_period = 0usize;
        let mut scanned = 0usize;
        let m = &self.entries;
        for q in 1..=q_max {
            for a in 0..q {
                for b in 0..q {
                    scanned += 1;
                    match self.period_mod(a, b, q) {
                        Ok(p) => {
                            max_period = max_period.max(p);
                            if p == 1 {
                                let fa = (m[0][0] * a + m[0][1] * b).rem_euclid(q);
                                let fb = (m[1][0] * a + m[1][1] * b).rem_euclid(q);
                                debug_assert_eq!((fa, fb), (a, b));
                                if !(a == 0 && b == 0) {
                                    extra_fixed += 1;
                                }
                            }
                        }
                        Err(_) => non_periodic += 1,
                    }
                }
            }
        }
        let mut r = Report::new("torus_periodicity");
        r.add("non_periodic_points", non_periodic as f64, 0.0);
        r.add("fixed_points_besides_origin", extra_fixed as f64, 0.0);
        r.push(Check::new("scanned_points", scanned as f64, f64::INFINITY));
        r.push(Check::new("max_period", max_period as f64, f64::INFINITY));
        Ok(r)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 1;
    }
    (a / gcd(a, b)) * b
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// The hyperbolic generator whose time-1 map is the torus matrix
/// [[1,1],[1,2]]: D = P diag(log s, -log s) P^(-1) with s = (3 + sqrt 5)/2
/// and P the eigenvector matrix. Checks e^D against the integer matrix,
/// the zero trace, and that the decomposition of D is purely hyperbolic.
pub fn catmap_generator_check(tol: f64) -> Result<Report> {
    let s5 = 5.0f64.sqrt();
    let l1 = ((3.0 + s5) / 2.0).ln();
    let l2 = ((3.0 - s5) / 2.0).ln();
    let p = Matrix::from_rows(vec![vec![2.0, 2.0], vec![1.0 + s5, 1.0 - s5]]).unwrap();
    let diag = Matrix::from_rows(vec![vec![l1, 0.0], vec![0.0, l2]]).unwrap();
    let d = &(&p * &diag) * &p.inverse(1e-12)?;
    let target =
        Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
    let mut r = Report::new("catmap_generator");
    r.add("exp_matches_integer_matrix", (&d.expm()? - &target).max_abs(), tol);
    r.add("trace_zero", d.trace().abs(), tol);
    let parts = jordan::jordan_f64(&d, 1e-6)?;
    r.add("elliptic_part_zero", parts.elliptic.max_abs(), 1e-10);
    r.add("nilpotent_part_zero", parts.nilpotent.max_abs(), 1e-10);
    r.add("hyperbolic_part_is_all", (&parts.hyperbolic - &d).max_abs(), 1e-10);
    Ok(r)
}
