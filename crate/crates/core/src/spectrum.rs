//! Floating-point spectral tools: eigenvalues, eigenvalue clustering with a
//! conjugate-symmetry repair step, and Hermite interpolation through the
//! clustered spectrum (used to evaluate spectral projections as polynomials
//! in the original matrix).
//!
//! Eigenvalues come from a Schur decomposition (nalgebra). A matrix with a
//! defective eigenvalue of multiplicity m perturbs like eps^(1/m), so computed
//! eigenvalues of one Jordan block scatter around the true value; clustering
//! merges them back together and takes the mean, which cancels the leading
//! error term of the scatter.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Relative clustering radius used when the caller does not override it.
pub const DEFAULT_CLUSTER_REL: f64 = 1e-6;

/// Eigenvalues of a real matrix as complex numbers (Schur-based).
///
/// Triangular input (this includes zero and diagonal matrices) is read off
/// the diagonal directly: the QR iteration is pointless there, and on the
/// zero matrix its shift strategy divides 0/0 and never converges.
pub fn eigenvalues(m: &Matrix<f64>) -> Result<Vec<Complex64>> {
    let n = m.dim()?;
    let lower_zero = (0..n).all(|i| (0..i).all(|j| m[(i, j)] == 0.0));
    let upper_zero = (0..n).all(|i| (i + 1..n).all(|j| m[(i, j)] == 0.0));
    if lower_zero || upper_zero {
        return Ok((0..n).map(|i| Complex64::new(m[(i, i)], 0.0)).collect());
    }
    let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
    let schur = nalgebra::linalg::Schur::try_new(dm, f64::EPSILON, 200 * n.max(5))
        .ok_or(Error::EigenFailure)?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// One cluster of nearby computed eigenvalues, replaced by its mean.
#[derive(Clone, Debug, PartialEq)]
pub struct EigCluster {
    pub mean: Complex64,
    pub multiplicity: usize,
}

/// Clustered spectrum of a real matrix. Conjugate-closed: clusters off the
/// real axis come in exact conjugate pairs, clusters near the axis are
/// snapped onto it.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub clusters: Vec<EigCluster>,
    /// Absolute clustering radius that was applied.
    pub radius: f64,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    /// Largest |Re| over cluster means.
    pub fn max_re(&self) -> f64 {
        self.clusters.iter().map(|c| c.mean.re.abs()).fold(0.0, f64::max)
    }

    /// Largest |Im| over cluster means.
    pub fn max_im(&self) -> f64 {
        self.clusters.iter().map(|c| c.mean.im.abs()).fold(0.0, f64::max)
    }

    /// Positive imaginary parts of the non-real cluster means (one per
    /// conjugate pair): the rotation frequencies of the elliptic part.
    pub fn frequencies(&self) -> Vec<f64> {
        self.clusters.iter().filter(|c| c.mean.im > 0.0).map(|c| c.mean.im).collect()
    }
}

/// Cluster the eigenvalues of a real matrix with radius rel * ||m||_F.
///
/// Fails with [`Error::AmbiguousSpectrum`] if two distinct cluster means end
/// up within a factor 10 of the radius: at that separation there is no way
/// to tell "one defective eigenvalue" from "two close ones", and the two
/// readings produce different decompositions.
pub fn cluster_spectrum(m: &Matrix<f64>, rel: f64) -> Result<Spectrum> {
    let evs = eigenvalues(m)?;
    let radius = rel * m.frob();
    cluster_values(&evs, radius)
}

pub fn cluster_values(evs: &[Complex64], radius: f64) -> Result<Spectrum> {
    let n = evs.len();
    // Transitive-closure merge: chains of close eigenvalues join one cluster.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (evs[i] - evs[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(evs[i]);
    }
    let mut clusters: Vec<EigCluster> = groups
        .into_values()
        .map(|members| {
            let k = members.len();
            let sum: Complex64 = members.iter().sum();
            EigCluster { mean: sum / k as f64, multiplicity: k }
        })
        .collect();

    // Snap near-real means onto the axis, then enforce exact conjugacy on
    // the rest. Real input guarantees a partner exists up to radius.
    for c in &mut clusters {
        if c.mean.im.abs() <= radius.max(1e-12) {
            c.mean.im = 0.0;
        }
    }
    let mut done = vec![false; clusters.len()];
    for i in 0..clusters.len() {
        if done[i] || clusters[i].mean.im <= 0.0 {
            continue;
        }
        let target = clusters[i].mean.conj();
        let partner = (0..clusters.len())
            .filter(|&j| !done[j] && j != i && clusters[j].mean.im < 0.0)
            .min_by(|&a, &b| {
                let da = (clusters[a].mean - target).norm();
                let db = (clusters[b].mean - target).norm();
                da.total_cmp(&db)
            });
        let Some(j) = partner else {
            return Err(Error::EigenFailure);
        };
        if clusters[j].multiplicity != clusters[i].multiplicity {
            return Err(Error::AmbiguousSpectrum { gap: (clusters[j].mean - target).norm(), radius });
        }
        let avg = (clusters[i].mean + clusters[j].mean.conj()) * 0.5;
        clusters[i].mean = avg;
        clusters[j].mean = avg.conj();
        done[i] = true;
        done[j] = true;
    }

    // Separation check between final means.
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let gap = (clusters[i].mean - clusters[j].mean).norm();
            if gap < 10.0 * radius {
                return Err(Error::AmbiguousSpectrum { gap, radius });
            }
        }
    }

    clusters.sort_by(|a, b| {
        a.mean.re.total_cmp(&b.mean.re).then(a.mean.im.total_cmp(&b.mean.im))
    });
    Ok(Spectrum { clusters, radius })
}

/// Polynomial in Newton form built from Hermite data: at node j the
/// interpolant takes the given value and has vanishing derivatives up to
/// order (multiplicity - 1). That is exactly what spectral projections of a
/// clustered matrix need.
#[derive(Clone, Debug)]
pub struct NewtonInterp {
    /// Nodes with repetition, in table order.
    nodes_seq: Vec<Complex64>,
    coeffs: Vec<Complex64>,
}

impl NewtonInterp {
    pub fn hermite(nodes: &[(Complex64, usize)], values: &[Complex64]) -> Self {
        assert_eq!(nodes.len(), values.len(), "one value per node");
        let mut nodes_seq = Vec::new();
        let mut node_ids = Vec::new();
        let mut val_seq = Vec::new();
        for (j, &(z, m)) in nodes.iter().enumerate() {
            for _ in 0..m.max(1) {
                nodes_seq.push(z);
                node_ids.push(j);
                val_seq.push(values[j]);
            }
        }
        let n = nodes_seq.len();
        // Divided-difference table; same-node entries of order >= 1 are
        // prescribed derivatives, all zero here.
        let mut table = val_seq.clone();
        let mut coeffs = vec![table[0]];
        for k in 1..n {
            let mut next = Vec::with_capacity(n - k);
            for i in 0..n - k {
                let entry = if node_ids[i] == node_ids[i + k] {
                    Complex64::new(0.0, 0.0)
                } else {
                    (table[i + 1] - table[i]) / (nodes_seq[i + k] - nodes_seq[i])
                };
                next.push(entry);
            }
            coeffs.push(next[0]);
            table = next;
        }
        NewtonInterp { nodes_seq, coeffs }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prod = Complex64::new(1.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * prod;
            if k + 1 < self.coeffs.len() {
                prod *= z - self.nodes_seq[k];
            }
        }
        acc
    }

    pub fn eval_matrix(&self, a: &Matrix<Complex64>) -> Result<Matrix<Complex64>> {
        let n = a.dim()?;
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Matrix::<Complex64>::zeros(n, n);
        let mut prod = Matrix::<Complex64>::identity(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &prod.scale(c);
            if k + 1 < self.coeffs.len() {
                let shift = &a.clone() - &Matrix::identity(n).scale(&(self.nodes_seq[k] * one));
                prod = &prod * &shift;
            }
        }
        Ok(acc)
    }

    #[cfg(test)]
    fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::to_complex;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rotation_generator_has_conjugate_pair() {
        let j = Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let sp = cluster_spectrum(&j, DEFAULT_CLUSTER_REL).unwrap();
        assert_eq!(sp.clusters.len(), 2);
        assert_eq!(sp.clusters[0].mean, sp.clusters[1].mean.conj());
        assert!((sp.clusters[1].mean - c(0.0, 1.0)).norm() < 1e-10);
        assert_eq!(sp.frequencies(), vec![sp.clusters[1].mean.im]);
    }

    #[test]
    fn defective_eigenvalue_reclusters_to_full_multiplicity() {
        // Jordan block: computed eigenvalues split by ~sqrt(eps).
        let a = Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let sp = cluster_spectrum(&a, DEFAULT_CLUSTER_REL).unwrap();
        assert_eq!(sp.clusters.len(), 1);
        assert_eq!(sp.clusters[0].multiplicity, 2);
        assert!((sp.clusters[0].mean - c(1.0, 0.0)).norm() < 1e-7);
        assert_eq!(sp.clusters[0].mean.im, 0.0);
    }

    #[test]
    fn close_but_distinct_eigenvalues_are_reported_ambiguous() {
        let a = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0 + 5e-6]]).unwrap();
        match cluster_spectrum(&a, DEFAULT_CLUSTER_REL) {
            Err(Error::AmbiguousSpectrum { .. }) => {}
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn hermite_interpolant_matches_values_and_flattens_at_multiple_nodes() {
        let nodes = [(c(1.0, 0.0), 2), (c(3.0, 0.0), 1)];
        let values = [c(5.0, 0.0), c(-2.0, 0.0)];
        let h = NewtonInterp::hermite(&nodes, &values);
        assert!((h.eval(c(1.0, 0.0)) - values[0]).norm() < 1e-12);
        assert!((h.eval(c(3.0, 0.0)) - values[1]).norm() < 1e-12);
        // Derivative at the double node vanishes: finite difference check.
        let d = (h.eval(c(1.0 + 1e-6, 0.0)) - h.eval(c(1.0 - 1e-6, 0.0))) / c(2e-6, 0.0);
        assert!(d.norm() < 1e-5);
        assert_eq!(h.degree_bound(), 3);
    }

    #[test]
    fn matrix_evaluation_acts_on_the_spectrum() {
        let a = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let nodes = [(c(2.0, 0.0), 1), (c(-1.0, 0.0), 1)];
        let values = [c(7.0, 0.0), c(4.0, 0.0)];
        let h = NewtonInterp::hermite(&nodes, &values);
        let ha = h.eval_matrix(&to_complex(&a)).unwrap();
        assert!((ha[(0, 0)] - values[0]).norm() < 1e-12);
        assert!((ha[(1, 1)] - values[1]).norm() < 1e-12);
        assert!(ha[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn semisimple_projection_of_a_jordan_block_is_scalar() {
        // h(x) with h(1) = 1, h'(1) = 0 applied to the block gives I.
        let a = Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let h = NewtonInterp::hermite(&[(c(1.0, 0.0), 2)], &[c(1.0, 0.0)]);
        let s = h.eval_matrix(&to_complex(&a)).unwrap();
        assert!((s[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(s[(0, 1)].norm() < 1e-14);
    }
}
