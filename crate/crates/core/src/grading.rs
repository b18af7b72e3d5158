//! Weight-space structure induced by a hyperbolic (real-semisimple) map:
//! the negative/zero/positive sign split of the ambient space, eigenvalue
//! gradings of Lie algebras, additivity of weights under the bracket, and
//! nilpotency of the signed parts.

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{real_part, to_complex, vec_ops, Matrix};
use crate::poly::char_poly;
use crate::report::{Check, Report};
use crate::scalar::{Rational, Scalar};
use crate::spectrum::{cluster_spectrum, NewtonInterp};
use crate::subspace::{is_direct_sum, Subspace};
use num_complex::Complex64;

/// Eigenspaces of a hyperbolic map grouped by the sign of the eigenvalue.
#[derive(Clone, Debug)]
pub struct SignSplit<T> {
    pub negative: Subspace<T>,
    pub zero: Subspace<T>,
    pub positive: Subspace<T>,
}

impl<T: Scalar> SignSplit<T> {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.negative.dim(), self.zero.dim(), self.positive.dim())
    }

    /// The nonnegative part V^0 + V^+.
    pub fn nonnegative(&self, tol: f64) -> Result<Subspace<T>> {
        self.zero.sum(&self.positive, tol)
    }
}

/// Decomposition into eigenspaces indexed by their (real) weight,
/// sorted ascending.
#[derive(Clone, Debug)]
pub struct Grading<T> {
    pub pieces: Vec<(T, Subspace<T>)>,
}

impl<T: Scalar> Grading<T> {
    pub fn weights(&self) -> Vec<&T> {
        self.pieces.iter().map(|(w, _)| w).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|(_, p)| p.dim()).sum()
    }

    pub fn ambient(&self) -> usize {
        self.pieces.first().map(|(_, p)| p.ambient()).unwrap_or(0)
    }

    /// The piece whose weight matches w within weight_tol (exactly for
    /// exact scalars).
    pub fn piece_for(&self, w: &T, weight_tol: f64) -> Option<&Subspace<T>> {
        self.pieces
            .iter()
            .find(|(u, _)| (u.clone() - w.clone()).is_small(weight_tol))
            .map(|(_, p)| p)
    }

    /// Sum of the pieces whose weight sign matches. sign = 0 selects the
    /// kernel weight.
    pub fn signed_sum(&self, sign: i8, tol: f64) -> Result<Subspace<T>> {
        let n = self.ambient();
        let mut acc = Subspace::zero(n);
        for (w, p) in &self.pieces {
            let s: i8 = if w.is_small(0.0) {
                0
            } else if w.as_f64() > 0.0 {
                1
            } else {
                -1
            };
            if s == sign {
                acc = acc.sum(p, tol)?;
            }
        }
        Ok(acc)
    }

    pub fn sign_split(&self, tol: f64) -> Result<SignSplit<T>> {
        Ok(SignSplit {
            negative: self.signed_sum(-1, tol)?,
            zero: self.signed_sum(0, tol)?,
            positive: self.signed_sum(1, tol)?,
        })
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Exact grading of the ambient space by the eigenvalues of h. Requires h
/// semisimple with all-rational spectrum; irrational real eigenvalues give
/// eigenspaces that are not rational subspaces, so they are refused rather
/// than approximated.
pub fn weight_grading_exact(h: &Matrix<Rational>) -> Result<Grading<Rational>> {
    let n = h.dim()?;
    let g = char_poly(h)?.squarefree_part();
    let residual = g.eval_matrix(h)?.max_abs();
    if residual != 0.0 {
        return Err(Error::NotSemisimple { residual });
    }
    let roots = g.rational_roots();
    if roots.len() != g.degree().unwrap_or(0) {
        return Err(Error::IrrationalSpectrum);
    }
    let mut pieces = Vec::with_capacity(roots.len());
    for (r, _) in roots {
        let shifted = h - &Matrix::identity(n).scale(&r);
        let ker = Subspace::kernel_of(&shifted, 0.0)?;
        pieces.push((r, ker));
    }
    pieces.sort_by(|a, b| a.0.as_f64().partial_cmp(&b.0.as_f64()).unwrap());
    let grading = Grading { pieces };
    if grading.total_dim() != n {
        return Err(Error::NotSemisimple { residual: 1.0 });
    }
    Ok(grading)
}

/// Float grading via spectral projectors: for each eigenvalue cluster the
/// interpolant that is 1 there and 0 on the others is evaluated at h, and
/// the image of the resulting projector is the weight space. Weights within
/// the cluster radius of zero are snapped to exactly 0.0.
pub fn weight_grading_f64(h: &Matrix<f64>, cluster_rel: f64, tol: f64) -> Result<Grading<f64>> {
    let n = h.dim()?;
    let sp = cluster_spectrum(h, cluster_rel)?;
    let im_res = sp.max_im();
    if im_res > sp.radius.max(tol) {
        return Err(Error::NotHyperbolic { residual: im_res });
    }
    let zero_eps = sp.radius.max(tol);
    let nodes: Vec<(Complex64, usize)> =
        sp.clusters.iter().map(|c| (c.mean, c.multiplicity)).collect();
    let hc = to_complex(h);
    let mut pieces = Vec::with_capacity(nodes.len());
    for k in 0..nodes.len() {
        let values: Vec<Complex64> = (0..nodes.len())
            .map(|j| if j == k { Complex64::new(1.0, 0.0) } else { Complex64::zero() })
            .collect();
        let proj = real_part(&NewtonInterp::hermite(&nodes, &values).eval_matrix(&hc)?);
        let cols: Vec<Vec<f64>> = (0..n).map(|j| proj.col_vec(j)).collect();
        let space = Subspace::from_spanning(n, &cols, tol.max(1e-12))?;
        if space.dim() != nodes[k].1 {
            return Err(Error::NotSemisimple { residual: 1.0 });
        }
        let weight = if nodes[k].0.re.abs() <= zero_eps { 0.0 } else { nodes[k].0.re };
        // Eigenspace residual: a defective h would leave (h - w) nonzero
        // on the projector image.
        let shifted = h - &Matrix::identity(n).scale(&weight);
        for b in space.basis() {
            let r = vec_ops::max_abs(&shifted.mul_vec(b)?);
            let scale = h.max_abs().max(1.0);
            if r > (tol * 100.0).max(sp.radius * 10.0) * scale {
                return Err(Error::NotSemisimple { residual: r });
            }
        }
        pieces.push((weight, space));
    }
    pieces.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(Grading { pieces })
}

pub fn sign_split_exact(h: &Matrix<Rational>) -> Result<SignSplit<Rational>> {
    weight_grading_exact(h)?.sign_split(0.0)
}

pub fn sign_split_f64(h: &Matrix<f64>, cluster_rel: f64, tol: f64) -> Result<SignSplit<f64>> {
    weight_grading_f64(h, cluster_rel, tol)?.sign_split(tol)
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Check that the grading decomposes the algebra and that brackets add
/// weights: [g_a, g_b] lies in g_(a+b), or vanishes when a+b is not a
/// weight. Residuals are distances of bracket vectors to their target
/// piece.
pub fn check_grading<T: Scalar>(
    alg: &LieAlgebra<T>,
    grading: &Grading<T>,
    tol: f64,
    weight_tol: f64,
) -> Result<Report> {
    let n = alg.dim();
    let mut report = Report::new("grading");
    let parts: Vec<&Subspace<T>> = grading.pieces.iter().map(|(_, p)| p).collect();
    report.push(Check::holds("direct_sum", is_direct_sum(&parts, n, tol)?));
    let mut worst = 0.0f64;
    for (wi, pi) in &grading.pieces {
        for (wj, pj) in &grading.pieces {
            let target = wi.clone() + wj.clone();
            for x in pi.basis() {
                for y in pj.basis() {
                    let z = alg.bracket(x, y)?;
                    let r = match grading.piece_for(&target, weight_tol) {
                        Some(p) => p.distance_to(&z, tol)?,
                        None => vec_ops::max_abs(&z),
                    };
                    worst = worst.max(r);
                }
            }
        }
    }
    report.add("bracket_weights", worst, tol);
    Ok(report)
}

/// Check that the span is closed under the bracket and that its lower
/// central series reaches zero, i.e. the subalgebra is nilpotent.
pub fn subalgebra_nilpotent<T: Scalar>(
    alg: &LieAlgebra<T>,
    v: &Subspace<T>,
    tol: f64,
) -> Result<Report> {
    let n = alg.dim();
    let mut report = Report::new("nilpotency");
    let mut closure = 0.0f64;
    for x in v.basis() {
        for y in v.basis() {
            let z = alg.bracket(x, y)?;
            closure = closure.max(v.distance_to(&z, tol)?);
        }
    }
    report.add("subalgebra_closed", closure, tol.max(1e-9));
    let mut current = v.clone();
    let mut vanished = false;
    for _ in 0..=n {
        if current.dim() == 0 {
            vanished = true;
            break;
        }
        let mut spans = Vec::new();
        for x in v.basis() {
            for y in current.basis() {
                spans.push(alg.bracket(x, y)?);
            }
        }
        let next = Subspace::from_spanning(n, &spans, tol.max(1e-12))?;
        if next.dim() >= current.dim() {
            break;
        }
        current = next;
    }
    report.push(Check::holds("lower_central_series", vanished));
    Ok(report)
}
