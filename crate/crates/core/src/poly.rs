//! Polynomials over the rationals.
//!
//! This backs the exact code path: characteristic polynomials via the
//! Faddeev-LeVerrier recurrence, squarefree parts, Bezout cofactors for the
//! Newton iteration that splits off the nilpotent part, Sturm chains for
//! certified real-root counts, and exact recovery of rational roots from
//! floating-point seeds.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Euclid, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

/// Polynomial with rational coefficients, ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    /// x - r
    pub fn linear(r: &Rational) -> Self {
        QPoly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => QPoly::zero(),
            Some(lc) => {
                let inv = Rational::one() / lc.clone();
                QPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() < 2 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.as_f64();
        }
        acc
    }

    pub fn eval_matrix(&self, a: &Matrix<Rational>) -> Result<Matrix<Rational>> {
        let n = a.dim()?;
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + &Matrix::identity(n).scale(c);
        }
        Ok(acc)
    }

    /// Quotient and remainder of self / d.
    pub fn divmod(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = Rational::one() / d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), QPoly::new(rem));
        }
        let qn = rem.len() - dd;
        let mut quot = vec![Rational::zero(); qn];
        for k in (0..qn).rev() {
            let f = rem[k + dd].clone() * lc_inv.clone();
            if f.is_zero() {
                continue;
            }
            quot[k] = f.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let upd = rem[k + j].clone() - f.clone() * dc.clone();
                rem[k + j] = upd;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divmod(d).1
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// (g, u, v) with u*a + v*b = g and g the monic gcd.
    pub fn extended_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut u0 = QPoly::constant(Rational::one());
        let mut u1 = QPoly::zero();
        let mut v0 = QPoly::zero();
        let mut v1 = QPoly::constant(Rational::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let u = &u0 - &(&q * &u1);
            let v = &v0 - &(&q * &v1);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        match r0.leading() {
            None => (QPoly::zero(), QPoly::zero(), QPoly::zero()),
            Some(lc) => {
                let s = QPoly::constant(Rational::one() / lc.clone());
                (r0.monic(), &s * &u0, &s * &v0)
            }
        }
    }

    /// p / gcd(p, p'): same roots, all simple. Monic.
    pub fn squarefree_part(&self) -> QPoly {
        let g = QPoly::gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.divmod(&g).0.monic()
    }

    /// Exact division by (x - r); errors if r is not a root.
    pub fn deflate(&self, r: &Rational) -> Result<QPoly> {
        let (q, rem) = self.divmod(&QPoly::linear(r));
        if rem.is_zero() {
            Ok(q)
        } else {
            Err(Error::Invalid("deflation by a non-root".into()))
        }
    }

    /// Multiplicity of r as a root (0 if not a root).
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while let Ok(q) = p.deflate(r) {
            m += 1;
            p = q;
            if p.is_zero() {
                break;
            }
        }
        m
    }

    /// Complex roots from the companion matrix, floating point.
    pub fn float_roots(&self) -> Vec<Complex64> {
        let n = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(n) => n,
        };
        let monic = self.monic();
        let mut comp = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -monic.coeffs[i].as_f64();
        }
        comp.complex_eigenvalues().iter().copied().collect()
    }

    /// All rational roots with multiplicities. Roots are located from float
    /// seeds, polished by a rational Newton iteration, snapped to nearby
    /// rationals through continued-fraction convergents, and finally checked
    /// by exact evaluation, so no false roots survive.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        let g = self.squarefree_part();
        if g.degree().map_or(true, |d| d == 0) {
            return Vec::new();
        }
        let dg = g.derivative();
        let scale = 1.0 + g.coeffs.iter().map(Scalar::abs_f64).fold(0.0, f64::max);
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for z in g.float_roots() {
            if z.im.abs() > 1e-6 * scale {
                continue;
            }
            let Some(seed) = Rational::from_float(z.re) else { continue };
            let Some(root) = polish_to_rational(&g, &dg, seed) else { continue };
            if out.iter().any(|(r, _)| *r == root) {
                continue;
            }
            let m = self.root_multiplicity(&root);
            if m > 0 {
                out.push((root, m));
            }
        }
        out
    }

    /// Number of distinct real roots, certified by a Sturm chain.
    pub fn count_distinct_real_roots(&self) -> usize {
        let p = self.squarefree_part();
        match p.degree() {
            None | Some(0) => return 0,
            _ => {}
        }
        let chain = sturm_chain(&p);
        let at = |neg: bool| -> usize {
            // Sign at +/- infinity from the leading coefficient and parity.
            let signs: Vec<i32> = chain
                .iter()
                .filter_map(|q| {
                    let d = q.degree()?;
                    let lc = q.leading().unwrap();
                    let mut s = if lc.is_positive() { 1 } else { -1 };
                    if neg && d % 2 == 1 {
                        s = -s;
                    }
                    Some(s)
                })
                .collect();
            sign_variations(&signs)
        };
        at(true) - at(false)
    }
}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[k - 2].rem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(&QPoly::zero() - &r);
    }
    chain
}

fn sign_variations(signs: &[i32]) -> usize {
    signs
        .windows(2)
        .filter(|w| w[0] != 0 && w[1] != 0 && w[0] != w[1])
        .count()
}

/// Round to the nearest multiple of 2^-bits. Caps coefficient growth during
/// the rational Newton iteration.
pub fn round_dyadic(x: &Rational, bits: u64) -> Rational {
    let two_pow = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(two_pow.clone());
    scaled.round() / Rational::from_integer(two_pow)
}

/// Newton-polish a float seed in exact arithmetic, then snap to the simplest
/// nearby rational that is an exact root of g. Returns None when the tracked
/// root is irrational.
fn polish_to_rational(g: &QPoly, dg: &QPoly, seed: Rational) -> Option<Rational> {
    let mut x = round_dyadic(&seed, 64);
    for _ in 0..5 {
        let num = g.eval(&x);
        if num.is_zero() {
            return Some(x);
        }
        let den = dg.eval(&x);
        if den.is_zero() {
            break;
        }
        x = round_dyadic(&(x.clone() - num / den), 256);
    }
    for c in convergents(&x, 200) {
        if g.eval(&c).is_zero() {
            return Some(c);
        }
    }
    None
}

/// Continued-fraction convergents of x with denominators below 2^max_bits.
fn convergents(x: &Rational, max_bits: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut h0 = BigInt::one();
    let mut h1 = BigInt::zero();
    let mut k0 = BigInt::zero();
    let mut k1 = BigInt::one();
    while !den.is_zero() {
        let a = num.div_euclid(&den);
        let r = num - &a * &den;
        num = den;
        den = r;
        let h = &a * &h0 + &h1;
        let k = &a * &k0 + &k1;
        if k.bits() > max_bits {
            break;
        }
        out.push(Rational::new(h.clone(), k.clone()));
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        if out.len() > 400 {
            break;
        }
    }
    out
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence.
/// Always monic, exact over the rationals.
pub fn char_poly(a: &Matrix<Rational>) -> Result<QPoly> {
    let n = a.dim()?;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::identity(n);
    for k in 1..=n {
        let am = a * &m;
        let c = -am.trace() / Rational::from_int(k as i64);
        coeffs[n - k] = c.clone();
        m = &am + &Matrix::identity(n).scale(&c);
    }
    Ok(QPoly::new(coeffs))
}

impl std::ops::Add for &QPoly {
    type Output = QPoly;
    fn add(self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl std::ops::Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    a - b
                })
                .collect(),
        )
    }
}

impl std::ops::Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let upd = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = upd;
            }
        }
        QPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn rand_poly(rng: &mut ChaCha8Rng, deg: usize) -> QPoly {
        let mut c: Vec<Rational> =
            (0..=deg).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect();
        c[deg] = q(1, 1);
        QPoly::new(c)
    }

    #[test]
    fn division_identity_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..25 {
            let p = rand_poly(&mut rng, 6);
            let deg = rng.gen_range(1..=4);
            let d = rand_poly(&mut rng, deg);
            let (quot, rem) = p.divmod(&d);
            let back = &(&quot * &d) + &rem;
            assert_eq!(back, p);
            assert!(rem.degree().map_or(true, |r| r < d.degree().unwrap()));
        }
    }

    #[test]
    fn gcd_of_polys_with_a_shared_factor() {
        let shared = QPoly::from_ints(&[-1, 1]); // x - 1
        let a = &(&shared * &shared) * &QPoly::from_ints(&[2, 1]);
        let b = &shared * &QPoly::from_ints(&[3, 1]);
        assert_eq!(QPoly::gcd(&a, &b), shared);
    }

    #[test]
    fn extended_gcd_satisfies_bezout() {
        let a = QPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        let b = QPoly::from_ints(&[1, 0, 1]); // x^2 + 1
        let (g, u, v) = QPoly::extended_gcd(&a, &b);
        assert_eq!(g, QPoly::from_ints(&[1])); // coprime
        let lhs = &(&u * &a) + &(&v * &b);
        assert_eq!(lhs, g);
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let x1 = QPoly::from_ints(&[-1, 1]);
        let x2 = QPoly::from_ints(&[2, 1]);
        let p = &(&(&x1 * &x1) * &x1) * &x2; // (x-1)^3 (x+2)
        assert_eq!(p.squarefree_part(), &x1 * &x2);
    }

    #[test]
    fn char_poly_of_companion_recovers_coefficients() {
        // Companion of x^3 - 2x^2 + 3x - 5.
        let a = Matrix::from_rows(vec![
            vec![q(0, 1), q(0, 1), q(5, 1)],
            vec![q(1, 1), q(0, 1), q(-3, 1)],
            vec![q(0, 1), q(1, 1), q(2, 1)],
        ])
        .unwrap();
        let p = char_poly(&a).unwrap();
        assert_eq!(p, QPoly::from_ints(&[-5, 3, -2, 1]));
    }

    #[test]
    fn cayley_hamilton_holds_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = Matrix::from_fn(4, 4, |_, _| q(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
        let p = char_poly(&a).unwrap();
        let pa = p.eval_matrix(&a).unwrap();
        assert!(pa.max_abs() == 0.0);
    }

    #[test]
    fn rational_roots_found_with_multiplicity() {
        // (2x - 1)^2 (x + 3) = 4x^3 + 8x^2 - 11x + 3
        let p = QPoly::from_ints(&[3, -11, 8, 4]);
        let mut roots = p.rational_roots();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, vec![(q(-3, 1), 1), (q(1, 2), 2)]);
    }

    #[test]
    fn irrational_roots_are_not_misreported() {
        let p = QPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        assert!(p.rational_roots().is_empty());
    }

    #[test]
    fn sturm_count_on_mixed_spectrum() {
        // (x^2 - 2)(x^2 + 1): two real roots, two imaginary.
        let p = &QPoly::from_ints(&[-2, 0, 1]) * &QPoly::from_ints(&[1, 0, 1]);
        assert_eq!(p.count_distinct_real_roots(), 2);
        assert_eq!(QPoly::from_ints(&[1, 0, 1]).count_distinct_real_roots(), 0);
        assert_eq!(QPoly::from_ints(&[0, 1]).count_distinct_real_roots(), 1);
    }

    #[test]
    fn dyadic_rounding_caps_denominators() {
        let x = q(1, 3);
        let r = round_dyadic(&x, 10);
        assert_eq!(r, q(341, 1024));
    }

    #[test]
    fn float_roots_of_quadratic() {
        let p = QPoly::from_ints(&[-6, 1, 1]); // (x+3)(x-2)
        let mut roots: Vec<f64> = p.float_roots().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 3.0).abs() < 1e-9);
        assert!((roots[1] - 2.0).abs() < 1e-9);
    }
}
