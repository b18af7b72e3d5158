//! Linear subspaces of R^n (or Q^n), represented by an explicit basis.
//!
//! Bases are canonicalized by row reduction, so equal subspaces compare
//! equal. Intersections use the kernel trick on [A | -B]; in exact mode all
//! of this is exact.

use crate::error::{Error, Result};
use crate::matrix::{vec_ops, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    /// Canonical basis vectors (rows of a reduced echelon form).
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::<T>::identity(ambient);
        Subspace { ambient, basis: (0..ambient).map(|i| id.row_vec(i)).collect() }
    }

    /// Span of the given vectors, reduced to a canonical basis.
    pub fn from_spanning(ambient: usize, vecs: &[Vec<T>], tol: f64) -> Result<Self> {
        for v in vecs {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        if vecs.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let m = Matrix::from_rows(vecs.to_vec())?;
        let (r, pivots) = m.rref(tol);
        let basis = (0..pivots.len()).map(|i| r.row_vec(i)).collect();
        Ok(Subspace { ambient, basis })
    }

    /// Kernel of a matrix as a subspace of its column space's domain.
    pub fn kernel_of(m: &Matrix<T>, tol: f64) -> Result<Self> {
        Subspace::from_spanning(m.cols(), &m.nullspace(tol), tol)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    /// Basis vectors as the columns of a matrix (ambient x dim).
    pub fn basis_matrix(&self) -> Result<Matrix<T>> {
        if self.basis.is_empty() {
            return Ok(Matrix::zeros(self.ambient, 0));
        }
        Matrix::from_cols(&self.basis)
    }

    pub fn contains(&self, v: &[T], tol: f64) -> bool {
        if vec_ops::max_abs(v) == 0.0 {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        match Matrix::from_rows(rows) {
            Ok(m) => m.rank(tol) == self.basis.len(),
            Err(_) => false,
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace<T>, tol: f64) -> bool {
        self.basis.iter().all(|v| other.contains(v, tol))
    }

    pub fn sum(&self, other: &Subspace<T>, tol: f64) -> Result<Subspace<T>> {
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, &vecs, tol)
    }

    /// Intersection via the kernel of [A | -B].
    pub fn intersect(&self, other: &Subspace<T>, tol: f64) -> Result<Subspace<T>> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let a = self.basis_matrix()?;
        let b = other.basis_matrix()?;
        let stacked = a.hcat(&b.map(|x| T::zero() - x.clone()))?;
        let mut vecs = Vec::new();
        for coeff in stacked.nullspace(tol) {
            let v = a.mul_vec(&coeff[0..self.dim()])?;
            vecs.push(v);
        }
        Subspace::from_spanning(self.ambient, &vecs, tol)
    }

    /// Image of this subspace under a linear map.
    pub fn image_under(&self, m: &Matrix<T>, tol: f64) -> Result<Subspace<T>> {
        let mut vecs = Vec::new();
        for v in &self.basis {
            vecs.push(m.mul_vec(v)?);
        }
        Subspace::from_spanning(m.rows(), &vecs, tol)
    }

    /// Coordinates of v in the direct sum self (+) complement: returns the
    /// component lying in self. Errors if the two do not span, or if v has
    /// no unique decomposition.
    pub fn component_along(&self, complement: &Subspace<T>, v: &[T], tol: f64) -> Result<Vec<T>> {
        let a = self.basis_matrix()?;
        let b = complement.basis_matrix()?;
        let joint = a.hcat(&b)?;
        if joint.cols() != self.ambient {
            return Err(Error::Invalid("subspaces do not form a direct sum".into()));
        }
        let c = joint.solve(v, tol)?;
        a.mul_vec(&c[0..self.dim()])
    }

    /// Euclidean distance from v to this subspace (float-friendly; exact
    /// scalars get the exact normal equations, distance reported as f64).
    pub fn distance_to(&self, v: &[T], tol: f64) -> Result<f64> {
        if self.basis.is_empty() {
            return Ok(vec_ops::norm(v));
        }
        let a = self.basis_matrix()?;
        let at = a.transpose();
        let gram = &at * &a;
        let rhs = at.mul_vec(v)?;
        let c = gram.solve(&rhs, tol)?;
        let proj = a.mul_vec(&c)?;
        Ok(vec_ops::norm(&vec_ops::sub(v, &proj)))
    }
}

/// Check that the given subspaces decompose the ambient space as a direct
/// sum: dimensions add up and the union spans.
pub fn is_direct_sum<T: Scalar>(parts: &[&Subspace<T>], ambient: usize, tol: f64) -> Result<bool> {
    let total: usize = parts.iter().map(|s| s.dim()).sum();
    if total != ambient {
        return Ok(false);
    }
    let mut vecs = Vec::new();
    for p in parts {
        vecs.extend(p.basis().iter().cloned());
    }
    let span = Subspace::from_spanning(ambient, &vecs, tol)?;
    Ok(span.dim() == ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn v(xs: &[f64]) -> Vec<f64> {
        xs.to_vec()
    }

    #[test]
    fn spanning_reduces_dependent_sets() {
        let s = Subspace::from_spanning(
            3,
            &[v(&[1.0, 0.0, 1.0]), v(&[0.0, 1.0, 1.0]), v(&[1.0, 1.0, 2.0])],
            1e-10,
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[2.0, -1.0, 1.0]), 1e-10));
        assert!(!s.contains(&v(&[0.0, 0.0, 1.0]), 1e-10));
    }

    #[test]
    fn intersection_of_two_planes_is_a_line() {
        let a = Subspace::from_spanning(3, &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], 1e-10)
            .unwrap();
        let b = Subspace::from_spanning(3, &[v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])], 1e-10)
            .unwrap();
        let i = a.intersect(&b, 1e-10).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0.0, 5.0, 0.0]), 1e-10));
    }

    #[test]
    fn canonical_bases_make_equal_subspaces_compare_equal() {
        let a = Subspace::from_spanning(2, &[v(&[2.0, 2.0])], 1e-10).unwrap();
        let b = Subspace::from_spanning(2, &[v(&[-3.0, -3.0])], 1e-10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn component_along_splits_a_direct_sum() {
        let a = Subspace::from_spanning(2, &[v(&[1.0, 1.0])], 1e-10).unwrap();
        let b = Subspace::from_spanning(2, &[v(&[1.0, -1.0])], 1e-10).unwrap();
        let comp = a.component_along(&b, &v(&[3.0, 1.0]), 1e-10).unwrap();
        // 3e1 + e2 = 2(1,1) + 1(1,-1)
        assert!((comp[0] - 2.0).abs() < 1e-12);
        assert!((comp[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn distance_to_a_plane() {
        let plane =
            Subspace::from_spanning(3, &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], 1e-10).unwrap();
        let d = plane.distance_to(&v(&[1.0, 2.0, 3.0]), 1e-12).unwrap();
        assert!((d - 3.0).abs() < 1e-12);
    }

    #[test]
    fn direct_sum_check_over_the_rationals() {
        let q = Rational::from_int;
        let e1 = Subspace::from_spanning(2, &[vec![q(1), q(0)]], 0.0).unwrap();
        let e2 = Subspace::from_spanning(2, &[vec![q(1), q(1)]], 0.0).unwrap();
        assert!(is_direct_sum(&[&e1, &e2], 2, 0.0).unwrap());
        let dep = Subspace::from_spanning(2, &[vec![q(2), q(0)]], 0.0).unwrap();
        assert!(!is_direct_sum(&[&e1, &dep], 2, 0.0).unwrap());
    }

    #[test]
    fn kernel_of_matrix_matches_nullspace() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]).unwrap();
        let k = Subspace::kernel_of(&m, 1e-10).unwrap();
        assert_eq!(k.dim(), 2);
        for b in k.basis() {
            assert!(vec_ops::max_abs(&m.mul_vec(b).unwrap()) < 1e-10);
        }
    }
}
