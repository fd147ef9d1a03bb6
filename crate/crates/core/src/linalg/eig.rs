//! Dense complex eigendecomposition (Hessenberg reduction followed by
//! shifted QR iteration) and the principal matrix logarithm built on it.

use alloc::vec::Vec;

use num_complex::Complex64;
// Inherent f64 methods shadow this under std; no_std needs the trait.
#[allow(unused_imports)]
use num_traits::Float;

use super::matrix::{inverse, ComplexMatrix, LinalgError};

/// Condition-estimate bound above which the eigenvector basis is rejected.
const COND_LIMIT: f64 = 1e8;

/// Eigenvalues and a matrix whose columns are the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigendecomposition {
    pub values: Vec<Complex64>,
    pub vectors: ComplexMatrix,
}

/// Unitary similarity A = Q H Q^H with H upper Hessenberg, via Householder
/// reflections.
fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        // Householder vector from column k, rows k+1..n.
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm_x = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let beta = -phase * norm_x;
        v[0] = x0 - beta;
        let vnorm_sqr = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // Left: H <- P H on rows k+1..n.
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (off, vi) in v.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + off, j)];
            }
            s *= tau;
            for (off, vi) in v.iter().enumerate() {
                h[(k + 1 + off, j)] -= vi * s;
            }
        }
        // Right: H <- H P on columns k+1..n.
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (off, vi) in v.iter().enumerate() {
                s += h[(i, k + 1 + off)] * vi;
            }
            s *= tau;
            for (off, vi) in v.iter().enumerate() {
                h[(i, k + 1 + off)] -= s * vi.conj();
            }
        }
        // Accumulate Q <- Q P.
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (off, vi) in v.iter().enumerate() {
                s += q[(i, k + 1 + off)] * vi;
            }
            s *= tau;
            for (off, vi) in v.iter().enumerate() {
                q[(i, k + 1 + off)] -= s * vi.conj();
            }
        }
        // The reflection zeroes these entries exactly; clear the dust.
        h[(k + 1, k)] = beta;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// Givens pair (c real, s complex) with c^2 + |s|^2 = 1 such that
/// `[[c, s], [-conj(s), c]] * [f, g]^T = [r, 0]^T`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let fa = f.norm();
    if fa == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = fa.hypot(g.norm());
    let c = fa / r;
    let s = (f / fa) * g.conj() / r;
    (c, s)
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d` (Wilkinson shift).
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * Complex64::new(0.5, 0.0);
    let half_diff = (a - d) * Complex64::new(0.5, 0.0);
    let disc = (half_diff * half_diff + b * c).sqrt();
    let lam1 = half_tr + disc;
    let lam2 = half_tr - disc;
    if (lam1 - d).norm() <= (lam2 - d).norm() {
        lam1
    } else {
        lam2
    }
}

/// Complex Schur form A = Q T Q^H (T upper triangular) via explicit shifted
/// QR iteration on the Hessenberg form.
pub fn schur(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix), LinalgError> {
    if !a.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = a.dim();
    let (mut h, mut q) = hessenberg(a);
    if n < 2 {
        return Ok((h, q));
    }
    let hnorm = h.frobenius_norm();
    let eps = f64::EPSILON;

    let mut m = n - 1;
    let mut stalled = 0usize;
    let mut total_iters = 0usize;
    let max_iters = 40 * n;

    'outer: while m > 0 {
        // Find the active block [l, m]: scan up for a negligible subdiagonal.
        let mut l = m;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut tol = eps * (h[(l - 1, l - 1)].norm() + h[(l, l)].norm());
            if tol == 0.0 {
                tol = eps * hnorm;
            }
            if sub <= tol {
                h[(l, l - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == m {
            // Eigenvalue at position m has converged.
            m -= 1;
            stalled = 0;
            continue 'outer;
        }

        total_iters += 1;
        stalled += 1;
        if total_iters > max_iters {
            return Err(LinalgError::NoConvergence);
        }

        let mu = if stalled.is_multiple_of(12) {
            // Exceptional shift to break symmetric stalls.
            h[(m, m)] + Complex64::new(0.75 * h[(m, m - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(m - 1, m - 1)], h[(m - 1, m)], h[(m, m - 1)], h[(m, m)])
        };

        for i in l..=m {
            h[(i, i)] -= mu;
        }

        // QR factorization of the active block by Givens rotations.
        let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(m - l);
        for k in l..m {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rotations.push((c, s));
            for j in k..n {
                let fk = h[(k, j)];
                let gk = h[(k + 1, j)];
                h[(k, j)] = fk * c + gk * s;
                h[(k + 1, j)] = -fk * s.conj() + gk * c;
            }
            h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        }
        // RQ: apply the conjugated rotations from the right.
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let k = l + idx;
            for i in 0..=k + 1 {
                let fk = h[(i, k)];
                let gk = h[(i, k + 1)];
                h[(i, k)] = fk * c + gk * s.conj();
                h[(i, k + 1)] = -fk * s + gk * c;
            }
            // Accumulate the Schur vectors.
            for i in 0..n {
                let fk = q[(i, k)];
                let gk = q[(i, k + 1)];
                q[(i, k)] = fk * c + gk * s.conj();
                q[(i, k + 1)] = -fk * s + gk * c;
            }
        }
        for i in l..=m {
            h[(i, i)] += mu;
        }
    }
    Ok((h, q))
}

/// Full eigendecomposition via the Schur form; eigenvectors of the
/// triangular factor come from back-substitution and are rotated back.
pub fn eigendecompose(a: &ComplexMatrix) -> Result<Eigendecomposition, LinalgError> {
    let n = a.dim();
    let (t, q) = schur(a)?;
    let values: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();

    let tnorm = t.frobenius_norm();
    let guard = f64::EPSILON * tnorm.max(f64::MIN_POSITIVE);
    let mut y = ComplexMatrix::zeros(n);
    for k in 0..n {
        y[(k, k)] = Complex64::new(1.0, 0.0);
        let lambda = values[k];
        for i in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in i + 1..=k {
                acc += t[(i, j)] * y[(j, k)];
            }
            let mut denom = t[(i, i)] - lambda;
            if denom.norm() < guard {
                // Clustered eigenvalues: keep the division defined; the
                // conditioning check downstream rejects unusable bases.
                denom = Complex64::new(guard, 0.0);
            }
            y[(i, k)] = -acc / denom;
        }
    }
    let mut vectors = q.matmul(&y)?;
    for k in 0..n {
        let norm = (0..n)
            .map(|i| vectors[(i, k)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm > 0.0 {
            for i in 0..n {
                vectors[(i, k)] /= norm;
            }
        }
    }
    Ok(Eigendecomposition { values, vectors })
}

/// Principal matrix logarithm `V diag(log lambda) V^-1` for diagonalizable
/// inputs with no eigenvalue on the closed negative real axis.
///
/// Errors: [`LinalgError::Branch`] when an eigenvalue is zero or negative
/// real, [`LinalgError::IllConditioned`] when the eigenvector condition
/// estimate exceeds 1e8.
pub fn logm_principal(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if !a.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = a.dim();
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0));
    }

    let eig = eigendecompose(a)?;
    for &lambda in &eig.values {
        if lambda.norm() == 0.0 {
            return Err(LinalgError::Branch);
        }
        if lambda.re < 0.0 && lambda.im.abs() <= 1e-13 * lambda.norm() {
            return Err(LinalgError::Branch);
        }
    }
    let v = &eig.vectors;
    let v_inv = inverse(v).map_err(|_| LinalgError::IllConditioned)?;
    let cond = v.frobenius_norm() * v_inv.frobenius_norm();
    if cond > COND_LIMIT {
        return Err(LinalgError::IllConditioned);
    }
    let log_diag = ComplexMatrix::diagonal(&eig.values.iter().map(|z| z.ln()).collect::<Vec<_>>());
    v.matmul(&log_diag)?.matmul(&v_inv)
}

#[cfg(test)]
mod tests {
    use super::super::expm::expm;
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn test_matrix(n: usize, seed: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |i, j| {
            let t = seed + (i * n + j) as f64;
            c((2.3 * t).sin(), (1.9 * t).cos())
        })
    }

    #[test]
    fn schur_is_unitary_similarity() {
        for n in [2, 3, 5, 8, 13] {
            let a = test_matrix(n, 0.7);
            let (t, q) = schur(&a).unwrap();
            // Q unitary
            let qhq = q.adjoint().matmul(&q).unwrap();
            assert!(
                (&qhq - &ComplexMatrix::identity(n)).frobenius_norm() < 1e-12,
                "n = {n}"
            );
            // A = Q T Q^H
            let back = q.matmul(&t).unwrap().matmul(&q.adjoint()).unwrap();
            assert!(
                (&back - &a).frobenius_norm() < 1e-11 * a.frobenius_norm(),
                "n = {n}"
            );
            // T triangular
            for i in 0..n {
                for j in 0..i {
                    assert_eq!(t[(i, j)].norm(), 0.0, "n = {n} entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn eigendecomposition_residual_is_small() {
        for n in [2, 4, 7, 12, 25] {
            let a = test_matrix(n, 1.3);
            let eig = eigendecompose(&a).unwrap();
            let av = a.matmul(&eig.vectors).unwrap();
            let vl = eig
                .vectors
                .matmul(&ComplexMatrix::diagonal(&eig.values))
                .unwrap();
            let resid = (&av - &vl).frobenius_norm() / a.frobenius_norm().max(1.0);
            assert!(resid < 1e-10, "n = {n}: residual {resid}");
        }
    }

    #[test]
    fn eigenvalues_of_triangular_input() {
        let mut t = ComplexMatrix::zeros(3);
        t[(0, 0)] = c(1.0, 2.0);
        t[(0, 2)] = c(5.0, 0.0);
        t[(1, 1)] = c(-3.0, 0.5);
        t[(2, 2)] = c(0.25, -1.0);
        let mut values = eigendecompose(&t).unwrap().values;
        values.sort_by(|p, q| p.re.partial_cmp(&q.re).unwrap());
        assert!((values[0] - c(-3.0, 0.5)).norm() < 1e-13);
        assert!((values[1] - c(0.25, -1.0)).norm() < 1e-13);
        assert!((values[2] - c(1.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn log_of_identity_is_zero() {
        let l = logm_principal(&ComplexMatrix::identity(4)).unwrap();
        assert!(l.frobenius_norm() < 1e-13);
    }

    #[test]
    fn log_of_positive_diagonal() {
        let d = ComplexMatrix::diagonal(&[c(1.0f64.exp(), 0.0), c(2.0f64.exp(), 0.0)]);
        let l = logm_principal(&d).unwrap();
        assert!((l[(0, 0)] - c(1.0, 0.0)).norm() < 1e-13);
        assert!((l[(1, 1)] - c(2.0, 0.0)).norm() < 1e-13);
        assert!(l[(0, 1)].norm() < 1e-15 && l[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn log_round_trips_through_exp() {
        for n in [2, 3, 5, 9] {
            let a = test_matrix(n, 2.9);
            let a = a.scale(c(1.0 / a.frobenius_norm(), 0.0)); // ||A||_F = 1
            let e = expm(&a).unwrap();
            let l = logm_principal(&e).unwrap();
            let resid = (&l - &a).frobenius_norm();
            assert!(resid < 1e-9, "n = {n}: residual {resid}");
        }
    }

    #[test]
    fn exp_round_trips_through_log() {
        let a = test_matrix(6, 4.2);
        let a = a.scale(c(0.8 / a.frobenius_norm(), 0.0));
        let e = expm(&a).unwrap();
        let back = expm(&logm_principal(&e).unwrap()).unwrap();
        assert!((&back - &e).frobenius_norm() < 1e-9 * e.frobenius_norm());
    }

    #[test]
    fn permutation_matrices_need_the_exceptional_shift() {
        // Cyclic permutations are stationary under unshifted/Wilkinson QR;
        // eigenvalues are the n-th roots of unity.
        for n in [3usize, 4, 8] {
            let p = ComplexMatrix::from_fn(n, |i, j| {
                if (i + 1) % n == j {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            });
            let eig = eigendecompose(&p).unwrap();
            // Each eigenvalue is an n-th root of unity and all n are
            // distinct, so they are exactly the n roots.
            for z in &eig.values {
                let mut power = c(1.0, 0.0);
                for _ in 0..n {
                    power *= z;
                }
                assert!(
                    (power - c(1.0, 0.0)).norm() < 1e-10,
                    "n = {n}: lambda^n != 1"
                );
            }
            for (i, zi) in eig.values.iter().enumerate() {
                for zj in &eig.values[i + 1..] {
                    assert!((zi - zj).norm() > 1e-6, "n = {n}: repeated eigenvalue");
                }
            }
            let av = p.matmul(&eig.vectors).unwrap();
            let vl = eig
                .vectors
                .matmul(&ComplexMatrix::diagonal(&eig.values))
                .unwrap();
            assert!((&av - &vl).frobenius_norm() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn half_turn_rotation_hits_the_branch_cut() {
        // exp(pi K) for a planar rotation generator has eigenvalues {-1, -1, 1}.
        let mut k = ComplexMatrix::zeros(3);
        k[(0, 1)] = c(-core::f64::consts::PI, 0.0);
        k[(1, 0)] = c(core::f64::consts::PI, 0.0);
        let half_turn = expm(&k).unwrap();
        assert_eq!(logm_principal(&half_turn), Err(LinalgError::Branch));
    }

    #[test]
    fn negative_real_eigenvalue_is_branch_error() {
        let d = ComplexMatrix::diagonal(&[c(-1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(logm_principal(&d), Err(LinalgError::Branch));
        let z = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(logm_principal(&z), Err(LinalgError::Branch));
    }

    #[test]
    fn near_defective_input_is_conditioning_error() {
        // A Jordan-like block: eigenvector matrix condition blows up.
        let mut a = ComplexMatrix::identity(2);
        a[(0, 1)] = c(1.0, 0.0);
        a[(1, 1)] = c(1.0 + 1e-13, 0.0);
        assert_eq!(logm_principal(&a), Err(LinalgError::IllConditioned));
    }
}
