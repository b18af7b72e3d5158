//! Additive Jordan decomposition A = E + H + N into commuting elliptic,
//! hyperbolic, and nilpotent parts, over floats and over exact rationals.
//!
//! Both paths build every part as a polynomial in the input matrix, so the
//! three parts commute with A and each other by construction; the residuals
//! reported by the verifier measure only arithmetic error.
//!
//! Float path: cluster the computed spectrum, then evaluate Hermite
//! interpolants through the cluster means (value lambda for the semisimple
//! projection, value Re lambda for the hyperbolic one, derivatives zero up
//! to cluster multiplicity).
//!
//! Exact path: the semisimple/nilpotent split is the Newton iteration
//! X <- X - g(X) u(X) on the squarefree part g of the characteristic
//! polynomial, with u an inverse of g' mod g. Each step squares the
//! nilpotent ideal membership of g(X), so log2(dim) steps reach g(X) = 0
//! exactly. The elliptic/hyperbolic split of the semisimple part is exact
//! whenever the needed real parts are rational (all-real spectra certified
//! by Sturm counts, single complex pairs); otherwise eigenvalues are refined
//! to >= 106-bit dyadic rationals with certified root disks, the number of
//! purely imaginary eigenvalues is certified exactly, and the split is
//! assembled by an exact linear solve through those nodes.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{real_part, to_complex, Matrix};
use crate::poly::{char_poly, round_dyadic, QPoly};
use crate::report::{Check, Report};
use crate::scalar::{Rational, Scalar};
use crate::spectrum::{cluster_spectrum, NewtonInterp, DEFAULT_CLUSTER_REL};

/// The three commuting parts. E semisimple with purely imaginary spectrum,
/// H semisimple with real spectrum, N nilpotent.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanParts<T> {
    pub elliptic: Matrix<T>,
    pub hyperbolic: Matrix<T>,
    pub nilpotent: Matrix<T>,
}

impl<T: Scalar> JordanParts<T> {
    pub fn semisimple(&self) -> Matrix<T> {
        &self.elliptic + &self.hyperbolic
    }

    pub fn sum(&self) -> Matrix<T> {
        &self.semisimple() + &self.nilpotent
    }

    pub fn dim(&self) -> usize {
        self.elliptic.rows()
    }
}

impl JordanParts<Rational> {
    pub fn to_f64(&self) -> JordanParts<f64> {
        JordanParts {
            elliptic: self.elliptic.map(Scalar::as_f64),
            hyperbolic: self.hyperbolic.map(Scalar::as_f64),
            nilpotent: self.nilpotent.map(Scalar::as_f64),
        }
    }
}

/// What the exact elliptic/hyperbolic split could certify about the
/// spectrum of the semisimple part.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumCertificate {
    /// Every eigenvalue is a rational number.
    pub rational_spectrum: bool,
    /// Every eigenvalue is real (certified by a Sturm count).
    pub all_real: bool,
    /// Certified number of purely imaginary conjugate pairs among the
    /// irrational eigenvalues.
    pub imaginary_pairs: usize,
    /// Dyadic precision used for irrational eigenvalue nodes, if any.
    pub precision_bits: Option<u64>,
}

// ---------------------------------------------------------------------------
// Float path
// ---------------------------------------------------------------------------

/// Semisimple + nilpotent split over floats.
pub fn semisimple_nilpotent_split_f64(
    a: &Matrix<f64>,
    cluster_rel: f64,
) -> Result<(Matrix<f64>, Matrix<f64>)> {
    let sp = cluster_spectrum(a, cluster_rel)?;
    let nodes: Vec<(Complex64, usize)> =
        sp.clusters.iter().map(|c| (c.mean, c.multiplicity)).collect();
    let values: Vec<Complex64> = sp.clusters.iter().map(|c| c.mean).collect();
    let h = NewtonInterp::hermite(&nodes, &values);
    let s = real_part(&h.eval_matrix(&to_complex(a))?);
    let n = a - &s;
    Ok((s, n))
}

/// Elliptic + hyperbolic split of a semisimple float matrix. Rejects input
/// whose nilpotent residue exceeds tol.
pub fn elliptic_hyperbolic_split_f64(
    s: &Matrix<f64>,
    cluster_rel: f64,
    tol: f64,
) -> Result<(Matrix<f64>, Matrix<f64>)> {
    let (_, n) = semisimple_nilpotent_split_f64(s, cluster_rel)?;
    let residual = n.max_abs();
    if residual > tol * s.max_abs().max(1.0) {
        return Err(Error::NotSemisimple { residual });
    }
    let sp = cluster_spectrum(s, cluster_rel)?;
    let nodes: Vec<(Complex64, usize)> =
        sp.clusters.iter().map(|c| (c.mean, c.multiplicity)).collect();
    let values: Vec<Complex64> =
        sp.clusters.iter().map(|c| Complex64::new(c.mean.re, 0.0)).collect();
    let interp = NewtonInterp::hermite(&nodes, &values);
    let h = real_part(&interp.eval_matrix(&to_complex(s))?);
    let e = s - &h;
    Ok((e, h))
}

/// Full float decomposition. Every part is a real polynomial in A.
pub fn jordan_f64(a: &Matrix<f64>, cluster_rel: f64) -> Result<JordanParts<f64>> {
    let sp = cluster_spectrum(a, cluster_rel)?;
    let nodes: Vec<(Complex64, usize)> =
        sp.clusters.iter().map(|c| (c.mean, c.multiplicity)).collect();
    let s_values: Vec<Complex64> = sp.clusters.iter().map(|c| c.mean).collect();
    let h_values: Vec<Complex64> =
        sp.clusters.iter().map(|c| Complex64::new(c.mean.re, 0.0)).collect();
    let ac = to_complex(a);
    let s = real_part(&NewtonInterp::hermite(&nodes, &s_values).eval_matrix(&ac)?);
    let hyperbolic = real_part(&NewtonInterp::hermite(&nodes, &h_values).eval_matrix(&ac)?);
    let elliptic = &s - &hyperbolic;
    let nilpotent = a - &s;
    Ok(JordanParts { elliptic, hyperbolic, nilpotent })
}

pub fn jordan_f64_default(a: &Matrix<f64>) -> Result<JordanParts<f64>> {
    jordan_f64(a, DEFAULT_CLUSTER_REL)
}

// ---------------------------------------------------------------------------
// Exact path
// ---------------------------------------------------------------------------

/// Exact semisimple + nilpotent split over the rationals.
pub fn semisimple_nilpotent_split_exact(
    a: &Matrix<Rational>,
) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
    let n = a.dim()?;
    let p = char_poly(a)?;
    let g = p.squarefree_part();
    let (d, u, _) = QPoly::extended_gcd(&g.derivative(), &g);
    if d.degree() != Some(0) {
        // g squarefree makes gcd(g, g') a nonzero constant; anything else
        // means the polynomial arithmetic is broken.
        return Err(Error::Invalid("squarefree part shares a factor with its derivative".into()));
    }
    let mut x = a.clone();
    // g(X) starts in the ideal of the nilpotent g(A) and squares each step.
    let max_iter = usize::BITS as usize - (n.max(2) - 1).leading_zeros() as usize + 2;
    for _ in 0..max_iter {
        let gx = g.eval_matrix(&x)?;
        if gx.max_abs() == 0.0 {
            break;
        }
        let ux = u.eval_matrix(&x)?;
        x = &x - &(&gx * &ux);
    }
    if g.eval_matrix(&x)?.max_abs() != 0.0 {
        return Err(Error::Invalid("semisimple iteration did not terminate".into()));
    }
    let nil = a - &x;
    Ok((x, nil))
}

/// Complex number with rational parts, for high-precision root refinement.
#[derive(Clone, Debug)]
struct QC {
    re: Rational,
    im: Rational,
}

impl QC {
    fn from_c64(z: Complex64) -> Option<QC> {
        Some(QC { re: Rational::from_float(z.re)?, im: Rational::from_float(z.im)? })
    }

    fn sub(&self, o: &QC) -> QC {
        QC { re: self.re.clone() - o.re.clone(), im: self.im.clone() - o.im.clone() }
    }

    fn mul(&self, o: &QC) -> QC {
        QC {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        }
    }

    fn div(&self, o: &QC) -> Option<QC> {
        let den = o.re.clone() * o.re.clone() + o.im.clone() * o.im.clone();
        if den.is_zero() {
            return None;
        }
        let num = self.mul(&QC { re: o.re.clone(), im: -o.im.clone() });
        Some(QC { re: num.re / den.clone(), im: num.im / den })
    }

    fn round(&self, bits: u64) -> QC {
        QC { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }

    /// |z| <= |re| + |im| (upper bound without square roots).
    fn norm_upper(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    /// |z| >= max(|re|, |im|) (lower bound).
    fn norm_lower(&self) -> Rational {
        let r = self.re.abs();
        let i = self.im.abs();
        if r >= i {
            r
        } else {
            i
        }
    }
}

fn qc_eval(p: &QPoly, z: &QC) -> QC {
    let mut acc = QC { re: Rational::zero(), im: Rational::zero() };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += c.clone();
    }
    acc
}

/// A refined eigenvalue node with a certified disk radius: the disk
/// |w - z| <= radius is guaranteed to contain a root of the polynomial
/// (classical bound: the nearest root is within deg * |f(z)/f'(z)|).
#[derive(Clone, Debug)]
struct CertifiedRoot {
    z: QC,
    radius: Rational,
}

fn refine_root(f: &QPoly, df: &QPoly, seed: Complex64, bits: u64) -> Option<CertifiedRoot> {
    let deg = f.degree()?;
    let mut z = QC::from_c64(seed)?.round(64);
    for _ in 0..12 {
        let fz = qc_eval(f, &z);
        let dfz = qc_eval(df, &z);
        let step = fz.div(&dfz)?;
        z = z.sub(&step).round(bits);
    }
    let fz = qc_eval(f, &z);
    let dfz = qc_eval(df, &z);
    let lower = dfz.norm_lower();
    if lower.is_zero() {
        return None;
    }
    let radius = Rational::from_int(deg as i64) * fz.norm_upper() / lower;
    Some(CertifiedRoot { z, radius })
}

/// Interpolation data for the hyperbolic projection: eigenvalue nodes with
/// their prescribed (real, rational) values.
#[derive(Clone, Debug)]
enum HNode {
    /// Real eigenvalue a: h(a) = a.
    Real(Rational),
    /// Conjugate pair a +/- sqrt(d) i with d > 0: h = a on both.
    Pair { a: Rational, d: Rational },
}

/// Coefficients of the unique real polynomial of matching degree taking the
/// value Re(lambda) at every node. Solved exactly: a real node contributes
/// the row sum c_k a^k = a; a pair contributes the real and imaginary rows
/// of sum c_k (a + sqrt(d) i)^k = a, with powers expanded by the rational
/// recurrence x_(k+1) = a x_k - d y_k, y_(k+1) = x_k + a y_k.
fn hyperbolic_interpolant(nodes: &[HNode]) -> Result<QPoly> {
    let m: usize = nodes.iter().map(|n| if matches!(n, HNode::Real(_)) { 1 } else { 2 }).sum();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for node in nodes {
        match node {
            HNode::Real(a) => {
                let mut row = Vec::with_capacity(m);
                let mut p = Rational::from_int(1);
                for _ in 0..m {
                    row.push(p.clone());
                    p *= a.clone();
                }
                rows.push(row);
                rhs.push(a.clone());
            }
            HNode::Pair { a, d } => {
                let mut xr = Vec::with_capacity(m);
                let mut yr = Vec::with_capacity(m);
                let mut x = Rational::from_int(1);
                let mut y = Rational::zero();
                for _ in 0..m {
                    xr.push(x.clone());
                    yr.push(y.clone());
                    let nx = a.clone() * x.clone() - d.clone() * y.clone();
                    let ny = x.clone() + a.clone() * y.clone();
                    x = nx;
                    y = ny;
                }
                rows.push(xr);
                rhs.push(a.clone());
                rows.push(yr);
                rhs.push(Rational::zero());
            }
        }
    }
    let mat = Matrix::from_rows(rows)?;
    let coeffs = mat.solve(&rhs, 0.0)?;
    Ok(QPoly::new(coeffs))
}

/// Number of purely imaginary conjugate pairs among the roots of f,
/// certified exactly: f(iy) splits into rational polynomials
/// P_re(y) + i P_im(y); common real roots of the pair are exactly the
/// imaginary eigenvalues, counted by a Sturm chain on their gcd.
fn imaginary_pair_count(f: &QPoly) -> usize {
    let coeffs = f.coeffs();
    let mut p_re = vec![Rational::zero(); coeffs.len()];
    let mut p_im = vec![Rational::zero(); coeffs.len()];
    for (k, c) in coeffs.iter().enumerate() {
        match k % 4 {
            0 => p_re[k] = c.clone(),
            1 => p_im[k] = c.clone(),
            2 => p_re[k] = -c.clone(),
            _ => p_im[k] = -c.clone(),
        }
    }
    let g = QPoly::gcd(&QPoly::new(p_re), &QPoly::new(p_im));
    // Real roots of g come in +/- pairs (g inherits parity symmetry), and
    // y = 0 cannot occur when f(0) != 0.
    g.count_distinct_real_roots() / 2
}

/// Exact elliptic + hyperbolic split of a semisimple rational matrix.
pub fn elliptic_hyperbolic_split_exact(
    s: &Matrix<Rational>,
) -> Result<(Matrix<Rational>, Matrix<Rational>, SpectrumCertificate)> {
    let p = char_poly(s)?;
    let g = p.squarefree_part();
    let min_poly_residual = g.eval_matrix(s)?.max_abs();
    if min_poly_residual != 0.0 {
        return Err(Error::NotSemisimple { residual: min_poly_residual });
    }
    let deg = g.degree().unwrap_or(0);
    let n = s.dim()?;

    // All-real spectrum (certified): the hyperbolic part is the whole map.
    if g.count_distinct_real_roots() == deg {
        let rational = g.rational_roots().len() == deg;
        let cert = SpectrumCertificate {
            rational_spectrum: rational,
            all_real: true,
            imaginary_pairs: 0,
            precision_bits: None,
        };
        return Ok((Matrix::zeros(n, n), s.clone(), cert));
    }

    // Strip rational (hence real) roots; f keeps the irrational ones.
    let rr = g.rational_roots();
    let mut nodes: Vec<HNode> = rr.iter().map(|(r, _)| HNode::Real(r.clone())).collect();
    let mut f = g.clone();
    for (r, _) in &rr {
        f = f.deflate(r)?;
    }
    let fdeg = f.degree().unwrap_or(0);

    if fdeg == 2 {
        // Single conjugate pair x^2 + bx + c: real part -b/2 is rational,
        // the split stays exact. (A real irrational pair would have been
        // caught by the all-real branch.)
        let b = f.coeffs()[1].clone();
        let c = f.coeffs()[0].clone();
        let a = -b.clone() / Rational::from_int(2);
        let d = c - a.clone() * a.clone();
        if !d.is_positive() {
            return Err(Error::Invalid("quadratic factor is not a conjugate pair".into()));
        }
        nodes.push(HNode::Pair { a, d });
        let h_poly = hyperbolic_interpolant(&nodes)?;
        let h = h_poly.eval_matrix(s)?;
        let e = s - &h;
        let cert = SpectrumCertificate {
            rational_spectrum: false,
            all_real: false,
            imaginary_pairs: imaginary_pair_count(&f),
            precision_bits: None,
        };
        return Ok((e, h, cert));
    }

    // General irrational case: high-precision certified nodes.
    let imag_pairs = imaginary_pair_count(&f);
    let df = f.derivative();
    for bits in [120u64, 240] {
        match split_with_precision(s, &f, &df, &nodes, imag_pairs, bits)? {
            Some((e, h)) => {
                let cert = SpectrumCertificate {
                    rational_spectrum: false,
                    all_real: false,
                    imaginary_pairs: imag_pairs,
                    precision_bits: Some(bits),
                };
                return Ok((e, h, cert));
            }
            None => continue,
        }
    }
    Err(Error::IrrationalSpectrum)
}

/// One attempt at the irrational split at a given dyadic precision.
/// Returns Ok(None) when the certification (disjoint root disks, imaginary
/// count agreement) fails at this precision.
fn split_with_precision(
    s: &Matrix<Rational>,
    f: &QPoly,
    df: &QPoly,
    rational_nodes: &[HNode],
    imag_pairs: usize,
    bits: u64,
) -> Result<Option<(Matrix<Rational>, Matrix<Rational>)>> {
    let mut certified: Vec<CertifiedRoot> = Vec::new();
    for seed in f.float_roots() {
        match refine_root(f, df, seed, bits) {
            Some(r) => certified.push(r),
            None => return Ok(None),
        }
    }
    if certified.len() != f.degree().unwrap_or(0) {
        return Ok(None);
    }
    // Disk disjointness: every disk then holds exactly one root.
    for i in 0..certified.len() {
        for j in i + 1..certified.len() {
            let dz = certified[i].z.sub(&certified[j].z);
            let dist_sq = dz.re.clone() * dz.re.clone() + dz.im.clone() * dz.im.clone();
            let rsum = certified[i].radius.clone() + certified[j].radius.clone();
            if dist_sq <= rsum.clone() * rsum {
                return Ok(None);
            }
        }
    }
    // Realness certification by counting. A disk holding a real root must
    // cross the real axis, so the real-axis straddlers are at least the
    // Sturm real-root count; when the numbers agree, each straddler holds
    // exactly one real root. The same pigeonhole certifies the imaginary
    // straddlers among the remaining (strictly complex) upper-half disks.
    let real_count = f.count_distinct_real_roots();
    let fdeg = f.degree().unwrap_or(0);
    let mut reals: Vec<Rational> = Vec::new();
    let mut uppers: Vec<&CertifiedRoot> = Vec::new();
    for root in &certified {
        if root.z.im.abs() <= root.radius {
            reals.push(root.z.re.clone());
        } else if root.z.im.is_positive() {
            uppers.push(root);
        }
    }
    if reals.len() != real_count || reals.len() + 2 * uppers.len() != fdeg {
        return Ok(None);
    }
    let straddlers = uppers.iter().filter(|r| r.z.re.abs() <= r.radius).count();
    if straddlers != imag_pairs {
        return Ok(None);
    }
    let mut nodes = rational_nodes.to_vec();
    nodes.extend(reals.into_iter().map(HNode::Real));
    for root in uppers {
        let d = root.z.im.clone() * root.z.im.clone();
        let a = if root.z.re.abs() <= root.radius {
            Rational::zero()
        } else {
            root.z.re.clone()
        };
        nodes.push(HNode::Pair { a, d });
    }
    let h_poly = hyperbolic_interpolant(&nodes)?;
    let h = h_poly.eval_matrix(s)?;
    let e = s - &h;
    Ok(Some((e, h)))
}

/// Full exact decomposition with its spectrum certificate.
pub fn jordan_exact(
    a: &Matrix<Rational>,
) -> Result<(JordanParts<Rational>, SpectrumCertificate)> {
    let (s, nilpotent) = semisimple_nilpotent_split_exact(a)?;
    let (elliptic, hyperbolic, cert) = elliptic_hyperbolic_split_exact(&s)?;
    Ok((JordanParts { elliptic, hyperbolic, nilpotent }, cert))
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Smallest k <= dim with ||N^k|| below tol (relative); None if N is not
/// nilpotent at that tolerance.
pub fn nilpotency_index<T: Scalar>(n: &Matrix<T>, tol: f64) -> Option<usize> {
    let dim = n.dim().ok()?;
    let scale = n.max_abs().max(1.0);
    let mut p = Matrix::<T>::identity(dim);
    for k in 0..=dim {
        if p.max_abs() <= tol * scale.powi(k as i32) {
            return Some(k);
        }
        p = &p * n;
    }
    None
}

fn spectral_residual_f64(m: &Matrix<f64>, imaginary_expected: bool) -> f64 {
    match crate::spectrum::eigenvalues(m) {
        Ok(evs) => evs
            .iter()
            .map(|z| if imaginary_expected { z.re.abs() } else { z.im.abs() })
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

/// The six defining residuals: sum, three pairwise commutators, nilpotency
/// of N at the dimension power, and the spectral classification of E and H.
pub fn verify_jordan_f64(a: &Matrix<f64>, parts: &JordanParts<f64>, tol: f64) -> Result<Report> {
    let n = a.dim()?;
    let mut r = Report::new("jordan");
    r.add("sum", (&parts.sum() - a).max_abs(), tol);
    r.add(
        "commutator_eh",
        Matrix::commutator(&parts.elliptic, &parts.hyperbolic).max_abs(),
        tol,
    );
    r.add(
        "commutator_en",
        Matrix::commutator(&parts.elliptic, &parts.nilpotent).max_abs(),
        tol,
    );
    r.add(
        "commutator_hn",
        Matrix::commutator(&parts.hyperbolic, &parts.nilpotent).max_abs(),
        tol,
    );
    // Nilpotency residual is scaled by ||A||^dim so the tolerance reads the
    // same for matrices of any magnitude.
    let scale = a.max_abs().max(1.0).powi(n as i32);
    r.add("nilpotency", parts.nilpotent.pow(n)?.max_abs() / scale, tol);
    let spectral = spectral_residual_f64(&parts.elliptic, true)
        .max(spectral_residual_f64(&parts.hyperbolic, false));
    r.add("spectral_classification", spectral, tol);
    Ok(r)
}

/// True when every root of the characteristic polynomial is real,
/// certified by a Sturm count on the squarefree part.
fn spectrum_all_real_exact(m: &Matrix<Rational>) -> Result<bool> {
    let g = char_poly(m)?.squarefree_part();
    Ok(g.count_distinct_real_roots() == g.degree().unwrap_or(0))
}

/// True when every root is purely imaginary (or zero), certified exactly.
fn spectrum_all_imaginary_exact(m: &Matrix<Rational>) -> Result<bool> {
    let mut g = char_poly(m)?.squarefree_part();
    let zero = Rational::zero();
    if g.root_multiplicity(&zero) > 0 {
        g = g.deflate(&zero)?;
    }
    let deg = g.degree().unwrap_or(0);
    Ok(imaginary_pair_count(&g) * 2 == deg)
}

/// Exact-path verification. Sum, commutators, and nilpotency are exact
/// rational computations (zero residual means literally zero). Spectral
/// classification first tries the exact certificates; if a part's spectrum
/// is only approximately classified (the high-precision fallback), the
/// residual falls back to float eigenvalues.
pub fn verify_jordan_exact(
    a: &Matrix<Rational>,
    parts: &JordanParts<Rational>,
    tol: f64,
) -> Result<Report> {
    let n = a.dim()?;
    let mut r = Report::new("jordan_exact");
    r.add("sum", (&parts.sum() - a).max_abs(), tol);
    r.add(
        "commutator_eh",
        Matrix::commutator(&parts.elliptic, &parts.hyperbolic).max_abs(),
        tol,
    );
    r.add(
        "commutator_en",
        Matrix::commutator(&parts.elliptic, &parts.nilpotent).max_abs(),
        tol,
    );
    r.add(
        "commutator_hn",
        Matrix::commutator(&parts.hyperbolic, &parts.nilpotent).max_abs(),
        tol,
    );
    r.add("nilpotency", parts.nilpotent.pow(n)?.max_abs(), tol);
    let e_ok = spectrum_all_imaginary_exact(&parts.elliptic)?;
    let h_ok = spectrum_all_real_exact(&parts.hyperbolic)?;
    let spectral = if e_ok && h_ok {
        0.0
    } else {
        let ef = parts.elliptic.map(Scalar::as_f64);
        let hf = parts.hyperbolic.map(Scalar::as_f64);
        spectral_residual_f64(&ef, true).max(spectral_residual_f64(&hf, false))
    };
    r.add("spectral_classification", spectral, tol);
    Ok(r)
}

// ---------------------------------------------------------------------------
// Derivations and the commutator operator
// ---------------------------------------------------------------------------

/// Decompose a derivation and certify that each part is again a derivation
/// of the same algebra.
pub fn derivation_parts_f64(
    alg: &LieAlgebra<f64>,
    d: &Matrix<f64>,
    cluster_rel: f64,
    tol: f64,
) -> Result<(JordanParts<f64>, Report)> {
    let pre = alg.is_derivation(d, tol)?;
    if !pre.pass {
        return Err(Error::NotDerivation { residual: pre.residual });
    }
    let parts = jordan_f64(d, cluster_rel)?;
    let mut report = verify_jordan_f64(d, &parts, tol)?;
    for (name, m) in [
        ("elliptic_derivation", &parts.elliptic),
        ("hyperbolic_derivation", &parts.hyperbolic),
        ("nilpotent_derivation", &parts.nilpotent),
    ] {
        let c = alg.is_derivation(m, tol)?;
        report.push(Check::new(name, c.residual, tol));
    }
    Ok((parts, report))
}

pub fn derivation_parts_exact(
    alg: &LieAlgebra<Rational>,
    d: &Matrix<Rational>,
    tol: f64,
) -> Result<(JordanParts<Rational>, Report)> {
    let pre = alg.is_derivation(d, tol)?;
    if !pre.pass {
        return Err(Error::NotDerivation { residual: pre.residual });
    }
    let (parts, _) = jordan_exact(d)?;
    let mut report = verify_jordan_exact(d, &parts, tol)?;
    for (name, m) in [
        ("elliptic_derivation", &parts.elliptic),
        ("hyperbolic_derivation", &parts.hyperbolic),
        ("nilpotent_derivation", &parts.nilpotent),
    ] {
        let c = alg.is_derivation(m, tol)?;
        report.push(Check::new(name, c.residual, tol));
    }
    Ok((parts, report))
}

/// Check that decomposing the commutator operator ad(A) = A(.) - (.)A gives
/// exactly the commutator operators of the parts of A.
pub fn ad_jordan_consistency(a: &Matrix<f64>, cluster_rel: f64, tol: f64) -> Result<Report> {
    let parts = jordan_f64(a, cluster_rel)?;
    let big = crate::algebra::ad_of_map(a)?;
    let big_parts = jordan_f64(&big, cluster_rel)?;
    let mut r = Report::new("ad_consistency");
    r.add(
        "ad_elliptic",
        (&big_parts.elliptic - &crate::algebra::ad_of_map(&parts.elliptic)?).max_abs(),
        tol,
    );
    r.add(
        "ad_hyperbolic",
        (&big_parts.hyperbolic - &crate::algebra::ad_of_map(&parts.hyperbolic)?).max_abs(),
        tol,
    );
    r.add(
        "ad_nilpotent",
        (&big_parts.nilpotent - &crate::algebra::ad_of_map(&parts.nilpotent)?).max_abs(),
        tol,
    );
    Ok(r)
}
