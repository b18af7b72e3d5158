//! Lie algebras presented by structure constants: brackets, Jacobi and
//! derivation checks, ad operators, the Killing form, and the center.

use crate::error::{Error, Result};
use crate::matrix::{vec_ops, Matrix};
use crate::report::{Check, Report};
use crate::scalar::{Rational, Scalar};
use crate::subspace::Subspace;

/// Finite-dimensional Lie algebra over T, bracket stored as a dense table
/// table[i][j] = coordinates of [e_i, e_j].
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T> {
    labels: Vec<String>,
    table: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Build from sparse entries (i, j, k, c) meaning [e_i, e_j] has
    /// coefficient c on e_k. The mirrored pair (j, i) is filled in by
    /// antisymmetry; if the input specifies both orders they must agree.
    pub fn new(labels: Vec<String>, entries: &[(usize, usize, usize, T)]) -> Result<Self> {
        let dim = labels.len();
        let mut given = vec![vec![false; dim]; dim];
        let mut table = vec![vec![vec![T::zero(); dim]; dim]; dim];
        for &(i, j, k, ref c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Invalid(format!(
                    "structure index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            if i == j && !c.is_zero() {
                return Err(Error::Invalid(format!("nonzero [e{i},e{i}] violates antisymmetry")));
            }
            given[i][j] = true;
            let upd = table[i][j][k].clone() + c.clone();
            table[i][j][k] = upd;
        }
        // Mirror unspecified orders, then verify antisymmetry of the result.
        for i in 0..dim {
            for j in 0..dim {
                if given[i][j] && !given[j][i] {
                    for k in 0..dim {
                        table[j][i][k] = T::zero() - table[i][j][k].clone();
                    }
                    given[j][i] = true;
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let s = table[i][j][k].clone() + table[j][i][k].clone();
                    if !s.is_small(1e-12) {
                        return Err(Error::Invalid(format!(
                            "antisymmetry fails between ({i},{j}) and ({j},{i})"
                        )));
                    }
                }
            }
        }
        Ok(LieAlgebra { labels, table })
    }

    pub fn numbered(dim: usize, entries: &[(usize, usize, usize, T)]) -> Result<Self> {
        LieAlgebra::new((1..=dim).map(|i| format!("e{i}")).collect(), entries)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::numbered(dim, &[]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vector(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[i] = T::one();
        v
    }

    /// Sparse structure entries with i < j, for serialization.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, T)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for k in 0..self.dim() {
                    if !self.table[i][j][k].is_zero() {
                        out.push((i, j, k, self.table[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        if y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: y.len() });
        }
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let f = x[i].clone() * y[j].clone();
                for k in 0..n {
                    let upd = out[k].clone() + f.clone() * self.table[i][j][k].clone();
                    out[k] = upd;
                }
            }
        }
        Ok(out)
    }

    /// Max residual of [x,[y,z]] + [y,[z,x]] + [z,[x,y]] over basis triples.
    pub fn check_jacobi(&self, tol: f64) -> Check {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = self.basis_vector(i);
                    let y = self.basis_vector(j);
                    let z = self.basis_vector(k);
                    let a = self.bracket(&x, &self.bracket(&y, &z).unwrap()).unwrap();
                    let b = self.bracket(&y, &self.bracket(&z, &x).unwrap()).unwrap();
                    let c = self.bracket(&z, &self.bracket(&x, &y).unwrap()).unwrap();
                    let total = vec_ops::add(&vec_ops::add(&a, &b), &c);
                    worst = worst.max(vec_ops::max_abs(&total));
                }
            }
        }
        Check::new("jacobi", worst, tol)
    }

    /// Residual of the Leibniz rule D[x,y] = [Dx,y] + [x,Dy] on basis pairs.
    pub fn is_derivation(&self, d: &Matrix<T>, tol: f64) -> Result<Check> {
        let n = self.dim();
        if d.dim()? != n {
            return Err(Error::DimensionMismatch { expected: n, found: d.dim()? });
        }
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let ei = self.basis_vector(i);
                let ej = self.basis_vector(j);
                let lhs = d.mul_vec(&self.bracket(&ei, &ej)?)?;
                let r1 = self.bracket(&d.mul_vec(&ei)?, &ej)?;
                let r2 = self.bracket(&ei, &d.mul_vec(&ej)?)?;
                let diff = vec_ops::sub(&lhs, &vec_ops::add(&r1, &r2));
                worst = worst.max(vec_ops::max_abs(&diff));
            }
        }
        Ok(Check::new("derivation", worst, tol))
    }

    /// Matrix of y -> [x, y].
    pub fn ad_operator(&self, x: &[T]) -> Result<Matrix<T>> {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(self.bracket(x, &self.basis_vector(j))?);
        }
        Matrix::from_cols(&cols)
    }

    /// Killing form B(x, y) = tr(ad x . ad y).
    pub fn killing_form(&self, x: &[T], y: &[T]) -> Result<T> {
        let ax = self.ad_operator(x)?;
        let ay = self.ad_operator(y)?;
        Ok((&ax * &ay).trace())
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_gram(&self) -> Result<Matrix<T>> {
        let n = self.dim();
        let ads: Vec<Matrix<T>> =
            (0..n).map(|i| self.ad_operator(&self.basis_vector(i)).unwrap()).collect();
        Ok(Matrix::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace()))
    }

    /// Center: vectors commuting with every basis element, as the kernel of
    /// the stacked ad-matrices.
    pub fn center(&self, tol: f64) -> Result<Subspace<T>> {
        let n = self.dim();
        // Rows indexed by (j, k): coefficient of v_i in [v, e_j]_k.
        let stacked = Matrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            self.table[i][j][k].clone()
        });
        Subspace::kernel_of(&stacked, tol)
    }

    /// Report bundling the well-formedness checks.
    pub fn validate(&self, tol: f64) -> Report {
        let mut r = Report::new("algebra");
        r.push(self.check_jacobi(tol));
        r
    }
}

impl LieAlgebra<Rational> {
    /// Explicit conversion to the float realization (never done silently).
    pub fn to_f64(&self) -> LieAlgebra<f64> {
        LieAlgebra {
            labels: self.labels.clone(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(Scalar::as_f64).collect()).collect())
                .collect(),
        }
    }
}

/// The commutator operator of A acting on n x n matrices, flattened
/// row-major: ad(A)B = AB - BA becomes (A kron I) - (I kron A^T).
pub fn ad_of_map<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.dim()?;
    let id = Matrix::identity(n);
    Ok(&Matrix::kron(a, &id) - &Matrix::kron(&id, &a.transpose()))
}

/// Row-major flattening of a square matrix.
pub fn vec_mat<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        out.extend(m.row_vec(i));
    }
    out
}

/// Inverse of [`vec_mat`].
pub fn unvec<T: Scalar>(v: &[T], n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| v[i * n + j].clone())
}

/// Standard algebras used across tests and the bundled corpus.
pub mod standard {
    use super::*;
    use num_traits::Zero;

    /// Heisenberg algebra: [x, y] = z.
    pub fn heisenberg() -> LieAlgebra<Rational> {
        LieAlgebra::new(
            vec!["x".into(), "y".into(), "z".into()],
            &[(0, 1, 2, Rational::from_int(1))],
        )
        .unwrap()
    }

    /// sl2 with basis (H, E, F): [H,E]=2E, [H,F]=-2F, [E,F]=H.
    pub fn sl2() -> LieAlgebra<Rational> {
        let q = Rational::from_int;
        LieAlgebra::new(
            vec!["H".into(), "E".into(), "F".into()],
            &[(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))],
        )
        .unwrap()
    }

    /// Traceless n x n matrices as explicit basis matrices: all E_ij with
    /// i != j (row-major order), then H_k = E_kk - E_(k+1)(k+1).
    pub fn sl_basis(n: usize) -> Vec<Matrix<Rational>> {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut m = Matrix::zeros(n, n);
                    m[(i, j)] = Rational::from_int(1);
                    basis.push(m);
                }
            }
        }
        for k in 0..n - 1 {
            let mut m = Matrix::zeros(n, n);
            m[(k, k)] = Rational::from_int(1);
            m[(k + 1, k + 1)] = Rational::from_int(-1);
            basis.push(m);
        }
        basis
    }

    /// Coordinates of a traceless matrix in the [`sl_basis`] ordering.
    /// Diagonal part (d_1, ..., d_n) expands over the H_k with partial-sum
    /// coefficients c_k = d_1 + ... + d_k.
    pub fn sl_coords(x: &Matrix<Rational>) -> Result<Vec<Rational>> {
        let n = x.dim()?;
        if !x.trace().is_zero() {
            return Err(Error::Invalid("matrix is not traceless".into()));
        }
        let mut coords = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    coords.push(x[(i, j)].clone());
                }
            }
        }
        let mut run = Rational::from_int(0);
        for k in 0..n - 1 {
            run = run + x[(k, k)].clone();
            coords.push(run.clone());
        }
        Ok(coords)
    }

    /// sl(n) as a structure-constant algebra, brackets computed from the
    /// matrix commutators of [`sl_basis`].
    pub fn sl_algebra(n: usize) -> Result<LieAlgebra<Rational>> {
        let basis = sl_basis(n);
        let dim = basis.len();
        let labels = (0..dim)
            .map(|b| {
                if b < n * n - n {
                    let (i, j) = off_diag_index(n, b);
                    format!("E{}{}", i + 1, j + 1)
                } else {
                    format!("H{}", b - (n * n - n) + 1)
                }
            })
            .collect();
        let mut entries = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let c = Matrix::commutator(&basis[a], &basis[b]);
                for (k, coeff) in sl_coords(&c)?.into_iter().enumerate() {
                    if !coeff.is_zero() {
                        entries.push((a, b, k, coeff));
                    }
                }
            }
        }
        LieAlgebra::new(labels, &entries)
    }

    /// Basis position -> (i, j) for the off-diagonal part of [`sl_basis`].
    pub fn off_diag_index(n: usize, pos: usize) -> (usize, usize) {
        let mut count = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if count == pos {
                        return (i, j);
                    }
                    count += 1;
                }
            }
        }
        panic!("off-diagonal index {pos} out of range for sl({n})");
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn rand_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
        (0..n).map(|_| Rational::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect()
    }

    #[test]
    fn heisenberg_bracket_reads_back_structure() {
        let h = heisenberg();
        let out = h.bracket(&h.basis_vector(0), &h.basis_vector(1)).unwrap();
        assert_eq!(out, vec![q(0), q(0), q(1)]);
        let rev = h.bracket(&h.basis_vector(1), &h.basis_vector(0)).unwrap();
        assert_eq!(rev, vec![q(0), q(0), q(-1)]);
    }

    #[test]
    fn bracket_of_anything_with_itself_vanishes() {
        let s = sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let x = rand_vec(&mut rng, 3);
            let out = s.bracket(&x, &x).unwrap();
            assert!(out.iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn sl2_bracket_matches_matrix_commutators() {
        // Oracle: realize (H, E, F) as 2x2 matrices, commutate, re-expand.
        let s = sl2();
        let h = Matrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), q(-1)]]).unwrap();
        let e = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]).unwrap();
        let f = Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]]).unwrap();
        let mats = [h, e, f];
        let expand = |m: &Matrix<Rational>| vec![m[(0, 0)].clone(), m[(0, 1)].clone(), m[(1, 0)].clone()];
        for i in 0..3 {
            for j in 0..3 {
                let via_table =
                    s.bracket(&s.basis_vector(i), &s.basis_vector(j)).unwrap();
                let via_mats = expand(&Matrix::commutator(&mats[i], &mats[j]));
                assert_eq!(via_table, via_mats, "basis pair ({i},{j})");
            }
        }
    }

    #[test]
    fn jacobi_holds_exactly_and_detects_corruption() {
        assert!(heisenberg().check_jacobi(0.0).pass);
        assert!(sl2().check_jacobi(0.0).pass);
        // Corrupt sl2: [E,F] = H + 0.1 E breaks Jacobi.
        let bad = LieAlgebra::new(
            vec!["H".into(), "E".into(), "F".into()],
            &[
                (0, 1, 1, q(2)),
                (0, 2, 2, q(-2)),
                (1, 2, 0, q(1)),
                (1, 2, 1, Rational::from_ratio(1, 10)),
            ],
        )
        .unwrap();
        assert!(!bad.check_jacobi(1e-12).pass);
    }

    #[test]
    fn derivation_check_on_heisenberg_scalings() {
        let h = heisenberg();
        let good = Matrix::from_rows(vec![
            vec![q(1), q(0), q(0)],
            vec![q(0), q(-1), q(0)],
            vec![q(0), q(0), q(0)],
        ])
        .unwrap();
        assert!(h.is_derivation(&good, 0.0).unwrap().pass);
        // Identity is not a derivation: D e3 = e3 but the rule needs 2 e3.
        let bad = Matrix::identity(3);
        assert!(!h.is_derivation(&bad, 1e-12).unwrap().pass);
        // On an abelian algebra everything is a derivation.
        let ab = LieAlgebra::<Rational>::abelian(3);
        assert!(ab.is_derivation(&bad, 0.0).unwrap().pass);
    }

    #[test]
    fn inner_derivations_satisfy_leibniz() {
        let s = sl2();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let x = rand_vec(&mut rng, 3);
            let ad = s.ad_operator(&x).unwrap();
            assert!(s.is_derivation(&ad, 0.0).unwrap().pass);
        }
    }

    #[test]
    fn ad_h_acts_diagonally_on_sl2() {
        let s = sl2();
        let ad_h = s.ad_operator(&s.basis_vector(0)).unwrap();
        let e_img = ad_h.mul_vec(&s.basis_vector(1)).unwrap();
        let f_img = ad_h.mul_vec(&s.basis_vector(2)).unwrap();
        assert_eq!(e_img, vec![q(0), q(2), q(0)]);
        assert_eq!(f_img, vec![q(0), q(0), q(-2)]);
        let zero = s.ad_operator(&vec![q(0); 3]).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn killing_form_values_and_invariance_on_sl2() {
        let s = sl2();
        let h = s.basis_vector(0);
        let e = s.basis_vector(1);
        let f = s.basis_vector(2);
        assert_eq!(s.killing_form(&h, &h).unwrap(), q(8));
        assert_eq!(s.killing_form(&e, &e).unwrap(), q(0));
        assert_eq!(s.killing_form(&e, &f).unwrap(), q(4));
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let x = rand_vec(&mut rng, 3);
            let y = rand_vec(&mut rng, 3);
            let z = rand_vec(&mut rng, 3);
            let sym = s.killing_form(&x, &y).unwrap() - s.killing_form(&y, &x).unwrap();
            assert!(sym.is_zero());
            let inv = s.killing_form(&s.bracket(&x, &y).unwrap(), &z).unwrap()
                - s.killing_form(&x, &s.bracket(&y, &z).unwrap()).unwrap();
            assert!(inv.is_zero(), "killing form not ad-invariant");
        }
    }

    #[test]
    fn killing_form_vanishes_on_nilpotent_algebras() {
        let h = heisenberg();
        let gram = h.killing_gram().unwrap();
        assert_eq!(gram.max_abs(), 0.0);
    }

    #[test]
    fn centers_of_the_standard_algebras() {
        let h = heisenberg();
        let c = h.center(0.0).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&vec![q(0), q(0), q(5)], 0.0));
        assert_eq!(sl2().center(0.0).unwrap().dim(), 0);
        assert_eq!(LieAlgebra::<Rational>::abelian(4).center(0.0).unwrap().dim(), 4);
    }

    #[test]
    fn commutator_operator_eigenvalue_relation() {
        // A = diag(1,2): ad(A) E_12 = (1-2) E_12.
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let op = ad_of_map(&a).unwrap();
        let mut e12 = Matrix::<f64>::zeros(2, 2);
        e12[(0, 1)] = 1.0;
        let img = op.mul_vec(&vec_mat(&e12)).unwrap();
        let expect = vec_ops::scale(&vec_mat(&e12), &-1.0);
        assert!(vec_ops::max_abs(&vec_ops::sub(&img, &expect)) < 1e-14);
        // ad(I) = 0.
        assert_eq!(ad_of_map(&Matrix::<f64>::identity(3)).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn commutator_operator_of_square_zero_matrix_has_cube_zero() {
        // A^2 = 0 forces ad(A)^3 = 0.
        let mut a: Matrix<Rational> = Matrix::zeros(2, 2);
        a[(0, 1)] = q(1);
        assert_eq!((&a * &a).max_abs(), 0.0);
        let op = ad_of_map(&a).unwrap();
        assert_eq!(op.pow(3).unwrap().max_abs(), 0.0);
        assert!(op.pow(2).unwrap().max_abs() > 0.0);
    }

    #[test]
    fn commutator_operator_respects_brackets() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = Matrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
        let b = Matrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
        let lhs = ad_of_map(&Matrix::commutator(&a, &b)).unwrap();
        let rhs = Matrix::commutator(&ad_of_map(&a).unwrap(), &ad_of_map(&b).unwrap());
        assert!((&lhs - &rhs).max_abs() < 1e-10);
    }

    #[test]
    fn sl3_structure_is_a_lie_algebra() {
        let s = sl_algebra(3).unwrap();
        assert_eq!(s.dim(), 8);
        assert!(s.check_jacobi(0.0).pass);
        assert_eq!(s.center(0.0).unwrap().dim(), 0);
    }

    #[test]
    fn sl_coords_round_trip_the_basis_expansion() {
        let basis = sl_basis(3);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let coords: Vec<Rational> = (0..8).map(|_| q(rng.gen_range(-4..=4))).collect();
        let mut x: Matrix<Rational> = Matrix::zeros(3, 3);
        for (c, b) in coords.iter().zip(&basis) {
            x = &x + &b.scale(c);
        }
        assert_eq!(sl_coords(&x).unwrap(), coords);
    }

    #[test]
    fn antisymmetry_violations_are_rejected_at_load() {
        let bad = LieAlgebra::new(
            vec!["a".into(), "b".into()],
            &[(0, 1, 0, q(1)), (1, 0, 0, q(1))],
        );
        assert!(matches!(bad, Err(Error::Invalid(_))));
        let diag = LieAlgebra::new(vec!["a".into(), "b".into()], &[(0, 0, 1, q(1))]);
        assert!(matches!(diag, Err(Error::Invalid(_))));
    }
}
