//! Small dense complex matrices with an explicit tolerance policy.
//!
//! Matrix equality is always judged by relative Frobenius norm.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Thresholds used wherever floating point meets an exact question.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Relative Frobenius-norm threshold for matrix equality.
    pub mat_eps: f64,
    /// Threshold for scalar comparisons.
    pub scalar_eps: f64,
    /// Largest accepted distance between a computed count and an integer.
    pub count_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { mat_eps: 1e-9, scalar_eps: 1e-9, count_eps: 1e-6 }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mat_eps", self.mat_eps),
            ("scalar_eps", self.scalar_eps),
            ("count_eps", self.count_eps),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Malformed(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(())
    }

    pub fn scalars_close(&self, a: C64, b: C64) -> bool {
        (a - b).norm() <= self.scalar_eps * a.norm().max(b.norm()).max(1.0)
    }
}

/// A dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, C64::new(1.0, 0.0))
    }

    pub fn scalar(n: usize, s: C64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(CMatrix { rows: r, cols: c, data: rows.concat() })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<C64>]) -> Self {
        Self::from_fn(n, cols.len(), |i, j| cols[j][i])
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

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> CMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    /// Frobenius inner product `tr(self* · other)`.
    pub fn inner(&self, other: &CMatrix) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `‖self − other‖ ≤ eps · max(‖self‖, ‖other‖)`
    pub fn approx_eq(&self, other: &CMatrix, eps: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (self - other).frobenius() <= eps * self.frobenius().max(other.frobenius())
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        let scale = self.frobenius().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .expect("nonempty range");
            if a[(pivot, col)].norm() <= 1e-13 * scale {
                return Err(Error::Numerical("matrix is singular".into()));
            }
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= p;
                inv[(col, j)] *= p;
            }
            for i in 0..n {
                if i != col {
                    let f = a[(i, col)];
                    if f != C64::new(0.0, 0.0) {
                        for j in 0..n {
                            let (aj, ij) = (a[(col, j)], inv[(col, j)]);
                            a[(i, j)] -= f * aj;
                            inv[(i, j)] -= f * ij;
                        }
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.cols {
                self.data.swap(i * self.cols + k, j * self.cols + k);
            }
        }
    }

    /// `[A, B] = A B A⁻¹ B⁻¹`
    pub fn commutator(&self, other: &CMatrix) -> Result<CMatrix> {
        Ok(&(&(self * other) * &self.inverse()?) * &other.inverse()?)
    }

    /// Reshapes a length `rows·cols` vector, row-major.
    pub fn from_vec(rows: usize, cols: usize, v: Vec<C64>) -> CMatrix {
        assert_eq!(v.len(), rows * cols);
        CMatrix { rows, cols, data: v }
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Returns `λ` when `‖M − λI‖ ≤ mat_eps·‖M‖` with `λ = tr(M)/n`.
pub fn is_scalar(m: &CMatrix, tol: &TolerancePolicy) -> Option<C64> {
    if !m.is_square() || m.rows == 0 {
        return None;
    }
    let lambda = m.trace() / m.rows as f64;
    let defect = (m - &CMatrix::scalar(m.rows, lambda)).frobenius();
    (defect <= tol.mat_eps * m.frobenius()).then_some(lambda)
}

/// Least-squares `λ` with `a ≈ λ b`, checked to within `mat_eps`.
pub fn scalar_ratio(a: &CMatrix, b: &CMatrix, tol: &TolerancePolicy) -> Result<C64> {
    let bb = b.inner(b);
    if bb.re <= 0.0 {
        return Err(Error::Numerical("ratio against a zero matrix".into()));
    }
    let lambda = b.inner(a) / bb;
    let defect = (a - &b.scale(lambda)).frobenius();
    if defect > tol.mat_eps * a.frobenius().max(b.frobenius()) {
        return Err(Error::NotScalar(format!("matrices are not proportional (defect {defect:e})")));
    }
    Ok(lambda)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `j` is the unit eigenvector for `values[j]`.
    pub vectors: CMatrix,
}

/// Cyclic complex Jacobi rotations.
pub fn eig_hermitian(m: &CMatrix, tol: &TolerancePolicy) -> Result<Eigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigenproblem of a non-square matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::Numerical("non-finite matrix entries".into()));
    }
    let n = m.rows;
    let norm = m.frobenius();
    let defect = (m - &m.adjoint()).frobenius();
    if defect > tol.mat_eps * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { defect: defect / norm });
    }
    let mut a = (m + &m.adjoint()).scale(C64::new(0.5, 0.0));
    let mut v = CMatrix::identity(n);
    let zero = C64::new(0.0, 0.0);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * norm || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let d = (apq / r).conj();
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A ← A U, V ← V U
                for k in 0..n {
                    let (kp, kq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = kp * c - kq * d * s;
                    a[(k, q)] = kp * s + kq * d * c;
                    let (kp, kq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = kp * c - kq * d * s;
                    v[(k, q)] = kp * s + kq * d * c;
                }
                // A ← U* A
                for k in 0..n {
                    let (pk, qk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = pk * c - qk * d.conj() * s;
                    a[(q, k)] = pk * s + qk * d.conj() * c;
                }
                a[(p, q)] = zero;
                a[(q, p)] = zero;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

/// Orthonormal basis (Frobenius inner product) of `{M : L_k M = M R_k ∀k}`.
///
/// Each `L_k` is `m×m` and each `R_k` is `n×n`; solutions are `m×n`.
pub fn solve_intertwiner_space(pairs: &[(CMatrix, CMatrix)], tol: &TolerancePolicy) -> Result<Vec<CMatrix>> {
    let Some((l0, r0)) = pairs.first() else {
        return Err(Error::DimensionMismatch("no constraints given".into()));
    };
    let (m, n) = (l0.rows, r0.rows);
    for (l, r) in pairs {
        if !l.is_square() || !r.is_square() || l.rows != m || r.rows != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {m}x{m} and {n}x{n} constraint pairs"
            )));
        }
    }
    // vec(M)[i·n + j] = M[i][j];  (L M − M R)[i][j] = Σ_k L[i][k] M[k][j] − Σ_k M[i][k] R[k][j]
    let mn = m * n;
    let mut gram = CMatrix::zeros(mn, mn);
    for (l, r) in pairs {
        let op = CMatrix::from_fn(mn, mn, |row, col| {
            let (i, j) = (row / n, row % n);
            let (k, c) = (col / n, col % n);
            let mut v = C64::new(0.0, 0.0);
            if c == j {
                v += l[(i, k)];
            }
            if k == i {
                v -= r[(c, j)];
            }
            v
        });
        gram = &gram + &(&op.adjoint() * &op);
    }
    let eig = eig_hermitian(&gram, tol)?;
    let top = eig.values.last().copied().unwrap_or(0.0).max(1.0);
    let mut basis = Vec::new();
    for (j, &lambda) in eig.values.iter().enumerate() {
        if lambda > 1e-8 * top {
            break;
        }
        let sol = CMatrix::from_vec(m, n, eig.vectors.column(j));
        let residual = pairs
            .iter()
            .map(|(l, r)| (&(l * &sol) - &(&sol * r)).frobenius())
            .fold(0.0, f64::max);
        if residual > tol.mat_eps * sol.frobenius() {
            return Err(Error::Numerical(format!("intertwiner residual {residual:e}")));
        }
        basis.push(sol);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let v = (0..n * n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        CMatrix::from_vec(n, n, v)
    }

    fn s3_standard() -> Vec<CMatrix> {
        // generators (1 2) and (1 2 3) in the 2-dimensional irreducible
        let h = 3f64.sqrt() / 2.0;
        let t = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]).unwrap();
        let r = CMatrix::from_rows(&[vec![c(-0.5, 0.0), c(-h, 0.0)], vec![c(h, 0.0), c(-0.5, 0.0)]]).unwrap();
        vec![t, r]
    }

    #[test]
    fn eigen_of_identity_and_diagonal() {
        let tol = TolerancePolicy::default();
        let e = eig_hermitian(&CMatrix::identity(4), &tol).unwrap();
        assert!(e.values.iter().all(|&v| (v - 1.0).abs() < 1e-14));
        let d = CMatrix::from_fn(3, 3, |i, j| if i == j { c(3.0 - i as f64, 0.0) } else { c(0.0, 0.0) });
        let e = eig_hermitian(&d, &tol).unwrap();
        for (v, want) in e.values.iter().zip([1.0, 2.0, 3.0]) {
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        let tol = TolerancePolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 12, 24] {
            let x = random_matrix(n, &mut rng);
            let h = &x + &x.adjoint();
            let e = eig_hermitian(&h, &tol).unwrap();
            let lam = CMatrix::from_fn(n, n, |i, j| if i == j { c(e.values[i], 0.0) } else { c(0.0, 0.0) });
            let rec = &(&e.vectors * &lam) * &e.vectors.adjoint();
            assert!((&rec - &h).frobenius() / h.frobenius() < 1e-12);
            let vv = &e.vectors.adjoint() * &e.vectors;
            assert!(vv.approx_eq(&CMatrix::identity(n), 1e-12));
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(matches!(eig_hermitian(&m, &TolerancePolicy::default()), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn scalar_detection() {
        let tol = TolerancePolicy::default();
        assert_eq!(is_scalar(&CMatrix::scalar(3, c(3.0, 0.0)), &tol), Some(c(3.0, 0.0)));
        for s in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
            let got = is_scalar(&CMatrix::scalar(2, s), &tol).unwrap();
            assert!((got - s).norm() <= tol.scalar_eps);
        }
        let d = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]).unwrap();
        assert_eq!(is_scalar(&d, &tol), None);
    }

    #[test]
    fn schur_for_the_s3_irreducible() {
        let tol = TolerancePolicy::default();
        let gens = s3_standard();
        let pairs: Vec<_> = gens.iter().map(|g| (g.clone(), g.clone())).collect();
        let basis = solve_intertwiner_space(&pairs, &tol).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(is_scalar(&basis[0], &tol).is_some());
    }

    #[test]
    fn trivial_and_sign_do_not_intertwine() {
        let tol = TolerancePolicy::default();
        let one = CMatrix::identity(1);
        let minus = CMatrix::scalar(1, c(-1.0, 0.0));
        let pairs = vec![(one.clone(), minus), (one.clone(), one)];
        assert!(solve_intertwiner_space(&pairs, &tol).unwrap().is_empty());
    }

    #[test]
    fn conjugated_irreducible_recovers_the_conjugator() {
        let tol = TolerancePolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m0 = random_matrix(2, &mut rng);
        let m0_inv = m0.inverse().unwrap();
        // ρ′ = M₀⁻¹ ρ M₀, so ρ M₀ = M₀ ρ′
        let pairs: Vec<_> = s3_standard()
            .into_iter()
            .map(|g| {
                let conj = &(&m0_inv * &g) * &m0;
                (g, conj)
            })
            .collect();
        let basis = solve_intertwiner_space(&pairs, &tol).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(scalar_ratio(&basis[0], &m0, &tol).is_ok());
    }

    #[test]
    fn inverse_and_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(4, &mut rng);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).approx_eq(&CMatrix::identity(4), 1e-12));
        let comm = a.commutator(&a).unwrap();
        assert!(comm.approx_eq(&CMatrix::identity(4), 1e-12));
        assert!(CMatrix::zeros(2, 2).inverse().is_err());
    }
}
