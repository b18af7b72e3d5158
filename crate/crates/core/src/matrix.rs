//! Dense matrices over an arbitrary [`Scalar`], with the elimination,
//! inversion, and exponential routines the decomposition code relies on.
//!
//! Row-major storage. Dimensions in this crate stay small (Lie algebras of
//! dimension <= 16 or so), so everything is straightforward O(n^3) dense code
//! with partial pivoting by scalar magnitude. Exact scalars turn every
//! threshold test into a literal zero test, so the same elimination serves
//! rational and floating-point matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Column vector from a slice.
    pub fn col_from(v: &[T]) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn row_vec(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t + self[(i, i)].clone();
        }
        t
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Largest entry magnitude (as f64).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Frobenius norm (as f64).
    pub fn frob(&self) -> f64 {
        self.data.iter().map(|x| x.abs_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let n = self.dim()?;
        let mut acc = Matrix::identity(n);
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// ab - ba.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    /// Kronecker product, used to flatten maps on matrix spaces.
    pub fn kron(a: &Self, b: &Self) -> Self {
        Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
            a[(i / b.rows, j / b.cols)].clone() * b[(i % b.rows, j % b.cols)].clone()
        })
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { other[(i, j - self.cols)].clone() }
        }))
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self[(i, j)].clone() } else { other[(i - self.rows, j)].clone() }
        }))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Result<Self> {
        let r = cols.first().map_or(0, Vec::len);
        for c in cols {
            if c.len() != r {
                return Err(Error::DimensionMismatch { expected: r, found: c.len() });
            }
        }
        Ok(Matrix::from_fn(r, cols.len(), |i, j| cols[j][i].clone()))
    }

    /// Effective zero threshold for elimination, relative to this matrix's scale.
    fn elim_threshold(&self, tol: f64) -> f64 {
        if T::EXACT {
            0.0
        } else {
            tol * self.max_abs().max(1.0)
        }
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let thresh = self.elim_threshold(tol);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Pivot: largest magnitude at or below row r in column c.
            let (best, _) = (r..m.rows)
                .map(|i| (i, m[(i, c)].abs_f64()))
                .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if m[(best, c)].is_small(thresh) {
                for i in r..m.rows {
                    m[(i, c)] = T::zero();
                }
                continue;
            }
            m.swap_rows(r, best);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let upd = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                        m[(i, j)] = upd;
                    }
                    m[(i, c)] = T::zero();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of the kernel, read off the reduced echelon form.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![T::zero(); self.cols];
                v[fc] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = T::zero() - r[(row, fc)].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solve self * X = rhs for square self, Gaussian elimination with
    /// partial pivoting.
    pub fn solve_matrix(&self, rhs: &Self, tol: f64) -> Result<Self> {
        let n = self.dim()?;
        if rhs.rows != n {
            return Err(Error::DimensionMismatch { expected: n, found: rhs.rows });
        }
        let thresh = self.elim_threshold(tol);
        let mut a = self.clone();
        let mut b = rhs.clone();
        for c in 0..n {
            let (best, _) = (c..n)
                .map(|i| (i, a[(i, c)].abs_f64()))
                .fold((c, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if a[(best, c)].is_small(thresh) {
                return Err(Error::Singular);
            }
            a.swap_rows(c, best);
            b.swap_rows(c, best);
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone() / a[(c, c)].clone();
                for j in c..n {
                    let upd = a[(i, j)].clone() - f.clone() * a[(c, j)].clone();
                    a[(i, j)] = upd;
                }
                for j in 0..b.cols {
                    let upd = b[(i, j)].clone() - f.clone() * b[(c, j)].clone();
                    b[(i, j)] = upd;
                }
            }
        }
        let mut x: Matrix<T> = Matrix::zeros(n, b.cols);
        for col in 0..b.cols {
            for i in (0..n).rev() {
                let mut acc = b[(i, col)].clone();
                for j in i + 1..n {
                    acc = acc - a[(i, j)].clone() * x[(j, col)].clone();
                }
                x[(i, col)] = acc / a[(i, i)].clone();
            }
        }
        Ok(x)
    }

    pub fn solve(&self, rhs: &[T], tol: f64) -> Result<Vec<T>> {
        let x = self.solve_matrix(&Matrix::col_from(rhs), tol)?;
        Ok(x.data)
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let n = self.dim()?;
        self.solve_matrix(&Matrix::identity(n), tol)
    }

    pub fn det(&self) -> Result<T> {
        let n = self.dim()?;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let (best, _) = (c..n)
                .map(|i| (i, a[(i, c)].abs_f64()))
                .fold((c, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if a[(best, c)].is_zero() {
                return Ok(T::zero());
            }
            if best != c {
                a.swap_rows(c, best);
                det = T::zero() - det;
            }
            det = det * a[(c, c)].clone();
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone() / a[(c, c)].clone();
                for j in c..n {
                    let upd = a[(i, j)].clone() - f.clone() * a[(c, j)].clone();
                    a[(i, j)] = upd;
                }
            }
        }
        Ok(det)
    }

    /// exp of a nilpotent matrix by its (finite) power series. Exact for
    /// exact scalars. Errors if the matrix is not nilpotent.
    pub fn expm_nilpotent(&self) -> Result<Self> {
        let n = self.dim()?;
        let mut term = Matrix::identity(n);
        let mut acc = Matrix::identity(n);
        for k in 1..=n {
            term = (&term * self).scale(&T::from_ratio(1, k as i64));
            if term.data.iter().all(|x| x.is_zero()) {
                return Ok(acc);
            }
            acc = &acc + &term;
        }
        // A nilpotent n x n matrix satisfies A^n = 0, so the loop must have
        // terminated above.
        if T::EXACT {
            Err(Error::Invalid("matrix is not nilpotent".into()))
        } else {
            let residual = (&term * self).max_abs();
            if residual <= 1e-9 * self.max_abs().max(1.0) {
                Ok(acc)
            } else {
                Err(Error::Invalid("matrix is not nilpotent".into()))
            }
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix add shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sub shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| T::zero() - x.clone())
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix mul shape");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let upd = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = upd;
                }
            }
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:>12.6}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// Matrix exponential, Pade(13) with scaling and squaring. Standard
// coefficients; good to near machine precision for the sizes used here.
impl Matrix<f64> {
    pub fn expm(&self) -> Result<Matrix<f64>> {
        let n = self.dim()?;
        const THETA_13: f64 = 5.371_920_351_148_152;
        let norm = (0..n)
            .map(|j| (0..n).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as i32 } else { 0 };
        let a = self.scale(&0.5f64.powi(s));

        const B: [f64; 14] = [
            64_764_752_532_480_000.0,
            32_382_376_266_240_000.0,
            7_771_770_303_897_600.0,
            1_187_353_796_428_800.0,
            129_060_195_264_000.0,
            10_559_470_521_600.0,
            670_442_572_800.0,
            33_522_128_640.0,
            1_323_241_920.0,
            40_840_800.0,
            960_960.0,
            16_380.0,
            182.0,
            1.0,
        ];
        let id = Matrix::<f64>::identity(n);
        let a2 = &a * &a;
        let a4 = &a2 * &a2;
        let a6 = &a2 * &a4;

        let u_inner = &(&a6.scale(&B[13]) + &a4.scale(&B[11])) + &a2.scale(&B[9]);
        let u_poly = &(&(&a6 * &u_inner) + &a6.scale(&B[7]))
            + &(&(&a4.scale(&B[5]) + &a2.scale(&B[3])) + &id.scale(&B[1]));
        let u = &a * &u_poly;

        let v_inner = &(&a6.scale(&B[12]) + &a4.scale(&B[10])) + &a2.scale(&B[8]);
        let v = &(&(&a6 * &v_inner) + &a6.scale(&B[6]))
            + &(&(&a4.scale(&B[4]) + &a2.scale(&B[2])) + &id.scale(&B[0]));

        let mut f = (&v - &u).solve_matrix(&(&v + &u), 1e-14)?;
        for _ in 0..s {
            f = &f * &f;
        }
        Ok(f)
    }
}

pub fn to_complex(m: &Matrix<f64>) -> Matrix<Complex64> {
    m.map(|x| Complex64::new(*x, 0.0))
}

pub fn real_part(m: &Matrix<Complex64>) -> Matrix<f64> {
    m.map(|z| z.re)
}

/// Largest imaginary-part magnitude, a sanity check after real-by-design
/// complex computations.
pub fn imag_max(m: &Matrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            worst = worst.max(m[(i, j)].im.abs());
        }
    }
    worst
}

pub fn rational_to_f64(m: &Matrix<Rational>) -> Matrix<f64> {
    m.map(Scalar::as_f64)
}

/// Vector helpers for plain Vec-backed vectors.
pub mod vec_ops {
    use super::Scalar;

    pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    pub fn scale<T: Scalar>(a: &[T], s: &T) -> Vec<T> {
        a.iter().map(|x| x.clone() * s.clone()).collect()
    }

    pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
        a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }

    pub fn norm<T: Scalar>(a: &[T]) -> f64 {
        a.iter().map(|x| x.abs_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs<T: Scalar>(a: &[T]) -> f64 {
        a.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
        Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn inverse_times_original_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = rand_matrix(&mut rng, 5);
            if a.det().unwrap().abs() < 1e-3 {
                continue;
            }
            let inv = a.inverse(1e-12).unwrap();
            let err = (&(&a * &inv) - &Matrix::identity(5)).max_abs();
            assert!(err < 1e-10, "inverse residual {err}");
        }
    }

    #[test]
    fn rational_elimination_is_exact() {
        let q = |n: i64, d: i64| Rational::from_ratio(n, d);
        let a = Matrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(1, 6)],
            vec![q(1, 3), q(2, 3), q(0, 1)],
            vec![q(5, 6), q(1, 1), q(1, 6)],
        ])
        .unwrap();
        // Row 3 = row 1 + row 2, so rank 2 with a one-dimensional kernel.
        assert_eq!(a.rank(0.0), 2);
        let ns = a.nullspace(0.0);
        assert_eq!(ns.len(), 1);
        let img = a.mul_vec(&ns[0]).unwrap();
        assert!(img.iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn determinant_tracks_row_swaps_and_products() {
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![0.0, 2.0], vec![3.0, 0.0]]).unwrap();
        assert!((a.det().unwrap() + 6.0).abs() < 1e-14);
    }

    #[test]
    fn expm_of_a_rotation_generator_is_a_rotation() {
        let t = 0.73f64;
        let gen = Matrix::from_rows(vec![vec![0.0, -t], vec![t, 0.0]]).unwrap();
        let e = gen.expm().unwrap();
        assert!((e[(0, 0)] - t.cos()).abs() < 1e-14);
        assert!((e[(1, 0)] - t.sin()).abs() < 1e-14);
        assert!((e.det().unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn expm_matches_truncated_series_on_small_norm_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = rand_matrix(&mut rng, 4).scale(&0.05);
        let pade = a.expm().unwrap();
        let mut series = Matrix::<f64>::identity(4);
        let mut term = Matrix::<f64>::identity(4);
        for k in 1..20 {
            term = (&term * &a).scale(&(1.0 / k as f64));
            series = &series + &term;
        }
        assert!((&pade - &series).max_abs() < 1e-14);
    }

    #[test]
    fn expm_survives_large_norm_via_squaring() {
        let a = Matrix::from_rows(vec![vec![0.0, -40.0], vec![40.0, 0.0]]).unwrap();
        let e = a.expm().unwrap();
        assert!((e[(0, 0)] - 40.0f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn nilpotent_exponential_is_exact_over_the_rationals() {
        let q = Rational::from_int;
        let n = Matrix::from_rows(vec![
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(1)],
            vec![q(0), q(0), q(0)],
        ])
        .unwrap();
        let e = n.expm_nilpotent().unwrap();
        assert_eq!(e[(0, 2)], Rational::from_ratio(1, 2));
        assert_eq!(e[(0, 1)], q(1));
    }

    #[test]
    fn kron_dimensions_and_identity_case() {
        let a = Matrix::<f64>::identity(2);
        let b = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let k = Matrix::kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k[(0, 1)], 2.0);
        assert_eq!(k[(2, 3)], 2.0);
        assert_eq!(k[(0, 2)], 0.0);
    }

    #[test]
    fn solve_recovers_known_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = rand_matrix(&mut rng, 6);
        let x: Vec<f64> = (0..6).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let b = a.mul_vec(&x).unwrap();
        let got = a.solve(&b, 1e-12).unwrap();
        for (u, v) in x.iter().zip(&got) {
            assert!((u - v).abs() < 1e-9);
        }
    }

    #[test]
    fn nullspace_threshold_is_relative_to_matrix_scale() {
        // A scaled-up near-singular matrix keeps its kernel at the same tol.
        let a = Matrix::from_rows(vec![vec![1e6, 2e6], vec![2e6, 4.000001e6]]).unwrap();
        assert_eq!(a.rank(1e-10), 2);
        assert_eq!(a.rank(1e-5), 1);
    }
}
