//! Dense complex square matrices in row-major order, sized for desk-scale
//! verification work (dim <= ~25).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
// Inherent f64 methods shadow this under std; no_std needs the trait.
#[allow(unused_imports)]
use num_traits::Float;

/// Errors from the dense kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// Operand dimensions do not match.
    Shape,
    /// An entry is NaN or infinite.
    NonFinite,
    /// Linear system is singular to working precision.
    Singular,
    /// An eigenvalue lies on the closed negative real axis, where the
    /// principal logarithm is undefined.
    Branch,
    /// Eigenvector matrix condition estimate exceeds the safe bound.
    IllConditioned,
    /// QR iteration failed to converge.
    NoConvergence,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::Shape => write!(f, "matrix shape mismatch"),
            LinalgError::NonFinite => write!(f, "non-finite matrix entry"),
            LinalgError::Singular => write!(f, "singular linear system"),
            LinalgError::Branch => {
                write!(f, "eigenvalue on the branch cut of the principal logarithm")
            }
            LinalgError::IllConditioned => write!(f, "eigenvector matrix is ill-conditioned"),
            LinalgError::NoConvergence => write!(f, "eigenvalue iteration did not converge"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// A dim x dim complex matrix, entries stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_rows(dim: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if entries.len() != dim * dim {
            return Err(LinalgError::Shape);
        }
        Ok(Self { dim, data: entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `sqrt(sum |a_ij|^2)`.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut max = 0.0f64;
        for j in 0..self.dim {
            let mut col = 0.0;
            for i in 0..self.dim {
                col += self[(i, j)].norm();
            }
            if col > max {
                max = col;
            }
        }
        max
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Standard matrix product; errors on mismatched dimensions.
    pub fn matmul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.dim != rhs.dim {
            return Err(LinalgError::Shape);
        }
        Ok(self.mul_same_dim(rhs))
    }

    /// `self * rhs - rhs * self`; errors on mismatched dimensions.
    pub fn commutator(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.dim != rhs.dim {
            return Err(LinalgError::Shape);
        }
        Ok(&self.mul_same_dim(rhs) - &rhs.mul_same_dim(self))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::Shape);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for i in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.dim {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Determinant via LU with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let mut lu = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let mut piv = col;
            let mut piv_abs = lu[(col, col)].norm();
            for row in col + 1..n {
                let v = lu[(row, col)].norm();
                if v > piv_abs {
                    piv_abs = v;
                    piv = row;
                }
            }
            if piv_abs == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != col {
                lu.swap_rows(piv, col);
                det = -det;
            }
            let pivot = lu[(col, col)];
            det *= pivot;
            for row in col + 1..n {
                let factor = lu[(row, col)] / pivot;
                for j in col..n {
                    let v = lu[(col, j)];
                    lu[(row, j)] -= factor * v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.dim {
            self.data.swap(r1 * self.dim + j, r2 * self.dim + j);
        }
    }

    fn mul_same_dim(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must match");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must match");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must match");
        self.mul_same_dim(rhs)
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: Complex64) -> ComplexMatrix {
        self.scale(s)
    }
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if a.dim != b.dim {
        return Err(LinalgError::Shape);
    }
    let n = a.dim;
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    for col in 0..n {
        let mut piv = col;
        let mut piv_abs = lhs[(col, col)].norm();
        for row in col + 1..n {
            let v = lhs[(row, col)].norm();
            if v > piv_abs {
                piv_abs = v;
                piv = row;
            }
        }
        if piv_abs < f64::MIN_POSITIVE {
            return Err(LinalgError::Singular);
        }
        lhs.swap_rows(piv, col);
        rhs.swap_rows(piv, col);
        let pivot = lhs[(col, col)];
        for row in col + 1..n {
            let factor = lhs[(row, col)] / pivot;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lhs[(col, j)];
                lhs[(row, j)] -= factor * v;
            }
            for j in 0..n {
                let v = rhs[(col, j)];
                rhs[(row, j)] -= factor * v;
            }
        }
    }
    let mut x = ComplexMatrix::zeros(n);
    for col in (0..n).rev() {
        let pivot = lhs[(col, col)];
        for j in 0..n {
            let mut acc = rhs[(col, j)];
            for k in col + 1..n {
                acc -= lhs[(col, k)] * x[(k, j)];
            }
            x[(col, j)] = acc / pivot;
        }
    }
    Ok(x)
}

/// Inverse via `solve(A, I)`.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    solve(a, &ComplexMatrix::identity(a.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let a = ComplexMatrix::from_fn(3, |i, j| c((i * 3 + j) as f64, (i as f64) - (j as f64)));
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i3.matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&i3).unwrap(), a);
    }

    #[test]
    fn diagonal_product_is_elementwise() {
        let d = ComplexMatrix::diagonal(&[c(1.0, 1.0), c(2.0, 0.0), c(0.0, -3.0)]);
        let e = ComplexMatrix::diagonal(&[c(0.5, 0.0), c(-1.0, 2.0), c(4.0, 0.0)]);
        let p = d.matmul(&e).unwrap();
        for i in 0..3 {
            assert_eq!(p[(i, i)], d[(i, i)] * e[(i, i)]);
            for j in 0..3 {
                if i != j {
                    assert_eq!(p[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = ComplexMatrix::zeros(2);
        let b = ComplexMatrix::zeros(3);
        assert_eq!(a.matmul(&b), Err(LinalgError::Shape));
        assert_eq!(a.commutator(&b), Err(LinalgError::Shape));
        assert_eq!(solve(&a, &b), Err(LinalgError::Shape));
    }

    #[test]
    fn commutator_with_self_and_identity_vanish() {
        let a = ComplexMatrix::from_fn(4, |i, j| c((i + 2 * j) as f64, (i * j) as f64 * 0.1));
        assert_eq!(a.commutator(&a).unwrap().frobenius_norm(), 0.0);
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(i4.commutator(&a).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn frobenius_norm_examples() {
        assert_eq!(ComplexMatrix::zeros(5).frobenius_norm(), 0.0);
        let n = 7;
        assert!((ComplexMatrix::identity(n).frobenius_norm() - (n as f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn frobenius_norm_matches_trace_of_gram() {
        let a = ComplexMatrix::from_fn(5, |i, j| {
            c(((i * 5 + j) as f64).sin(), ((i + j) as f64).cos())
        });
        let gram = a.adjoint().matmul(&a).unwrap();
        let tr = gram.trace();
        assert!(tr.im.abs() < 1e-13);
        assert!((a.frobenius_norm().powi(2) - tr.re).abs() < 1e-13 * tr.re.max(1.0));
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = ComplexMatrix::from_fn(4, |i, j| {
            c(
                1.0 / (1.0 + (i + 2 * j) as f64),
                if i == j { 2.0 } else { 0.1 },
            )
        });
        let x_true = ComplexMatrix::from_fn(4, |i, j| c(i as f64 - j as f64, (i * j) as f64 * 0.3));
        let b = a.matmul(&x_true).unwrap();
        let x = solve(&a, &b).unwrap();
        assert!((&x - &x_true).frobenius_norm() < 1e-12 * x_true.frobenius_norm().max(1.0));
    }

    #[test]
    fn inverse_of_an_exponential_multiplies_to_identity() {
        // Invertible input built as exp(S); solve is the inversion oracle.
        let s = ComplexMatrix::from_fn(3, |i, j| {
            c(
                ((1 + i * 3 + j) as f64 * 1.3).sin() * 0.6,
                ((i + j) as f64).cos() * 0.4,
            )
        });
        let a = super::super::expm::expm(&s).unwrap();
        let a_inv = inverse(&a).unwrap();
        let prod = a.matmul(&a_inv).unwrap();
        assert!((&prod - &ComplexMatrix::identity(3)).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn singular_solve_is_an_error() {
        let mut a = ComplexMatrix::zeros(3);
        a[(0, 0)] = c(1.0, 0.0);
        a[(1, 1)] = c(1.0, 0.0);
        // third row/column all zero
        assert_eq!(
            solve(&a, &ComplexMatrix::identity(3)),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn determinant_of_triangular_is_diagonal_product() {
        let mut a = ComplexMatrix::zeros(3);
        a[(0, 0)] = c(2.0, 0.0);
        a[(0, 1)] = c(5.0, -1.0);
        a[(1, 1)] = c(0.0, 3.0);
        a[(1, 2)] = c(1.0, 1.0);
        a[(2, 2)] = c(-1.0, 0.0);
        let expected = c(2.0, 0.0) * c(0.0, 3.0) * c(-1.0, 0.0);
        assert!((a.determinant() - expected).norm() < 1e-14);
    }
}
