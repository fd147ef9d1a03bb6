//! Matrix exponential via scaling-and-squaring with a fixed Padé(13) kernel.

use num_complex::Complex64;
// Inherent f64 methods shadow this under std; no_std needs the trait.
#[allow(unused_imports)]
use num_traits::Float;

use super::matrix::{solve, ComplexMatrix, LinalgError};

/// Padé(13,13) numerator coefficients for the exponential.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm bound under which the Padé(13) approximant is accurate to
/// double-precision roundoff.
const THETA_13: f64 = 5.371920351148152;

/// Computes `exp(A)`.
///
/// The input is scaled by `2^-s` so its 1-norm falls below the Padé(13)
/// threshold, the approximant is evaluated, and the result is squared `s`
/// times. Errors with [`LinalgError::NonFinite`] on NaN/infinite entries.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if !a.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = a.dim();
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0));
    }
    if n == 1 {
        let mut m = ComplexMatrix::zeros(1);
        m[(0, 0)] = a[(0, 0)].exp();
        return Ok(m);
    }

    let norm = a.one_norm();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    // Powers of two scale exactly.
    let scaled = a.scale(Complex64::new(0.5f64.powi(squarings), 0.0));
    let mut result = pade13(&scaled)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

fn pade13(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = a.dim();
    let eye = ComplexMatrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let b = |k: usize| Complex64::new(PADE13[k], 0.0);

    // u = A [ A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I ]
    let w1 = &(&(&a6 * b(13)) + &(&a4 * b(11))) + &(&a2 * b(9));
    let w2 =
        &(&(&a6.matmul(&w1)? + &(&a6 * b(7))) + &(&a4 * b(5))) + &(&(&a2 * b(3)) + &(&eye * b(1)));
    let u = a.matmul(&w2)?;

    // v = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let z1 = &(&(&a6 * b(12)) + &(&a4 * b(10))) + &(&a2 * b(8));
    let v =
        &(&(&a6.matmul(&z1)? + &(&a6 * b(6))) + &(&a4 * b(4))) + &(&(&a2 * b(2)) + &(&eye * b(0)));

    // exp(A) ~ (v - u)^-1 (v + u)
    solve(&(&v - &u), &(&v + &u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = expm(&ComplexMatrix::zeros(4)).unwrap();
        assert!((&e - &ComplexMatrix::identity(4)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn exp_of_diagonal_is_entrywise() {
        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-2.0, 3.0), c(0.0, -1.5)]);
        let e = expm(&d).unwrap();
        for i in 0..3 {
            assert!((e[(i, i)] - d[(i, i)].exp()).norm() < 1e-14 * d[(i, i)].exp().norm());
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(e[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn exp_times_exp_of_negation_is_identity() {
        // Group-inverse oracle on a deterministic pseudo-random input.
        let a = ComplexMatrix::from_fn(5, |i, j| {
            let t = (1 + i * 5 + j) as f64;
            c((3.1 * t).sin(), (1.7 * t).cos()) * c(0.8, 0.0)
        });
        let e = expm(&a).unwrap();
        let einv = expm(&a.scale(c(-1.0, 0.0))).unwrap();
        let prod = &e * &einv;
        assert!((&prod - &ComplexMatrix::identity(5)).frobenius_norm() < 1e-11);
    }

    #[test]
    fn exp_needs_scaling_for_large_norms() {
        let d = ComplexMatrix::diagonal(&[c(30.0, 0.0), c(-30.0, 0.0)]);
        let e = expm(&d).unwrap();
        let big = 30.0f64.exp();
        assert!((e[(0, 0)].re - big).abs() / big < 1e-13);
        assert!((e[(1, 1)].re - (-30.0f64).exp()).abs() < 1e-25);
    }

    #[test]
    fn exp_of_large_rotation_matches_the_closed_form() {
        // Planar rotation generator at ||A||_F ~ 49.5: entries of exp are
        // cos/sin of the angle, a direct accuracy probe deep in the
        // scaling regime.
        let theta = 35.0f64;
        let mut k = ComplexMatrix::zeros(3);
        k[(0, 1)] = c(-theta, 0.0);
        k[(1, 0)] = c(theta, 0.0);
        let e = expm(&k).unwrap();
        assert!((e[(0, 0)] - c(theta.cos(), 0.0)).norm() < 1e-13);
        assert!((e[(0, 1)] - c(-theta.sin(), 0.0)).norm() < 1e-13);
        assert!((e[(1, 0)] - c(theta.sin(), 0.0)).norm() < 1e-13);
        assert!((e[(2, 2)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exp_rejects_non_finite() {
        let mut a = ComplexMatrix::zeros(2);
        a[(0, 1)] = c(f64::NAN, 0.0);
        assert_eq!(expm(&a), Err(LinalgError::NonFinite));
    }

    #[test]
    fn additivity_on_commuting_inputs() {
        // Polynomials in a single matrix commute.
        let a = ComplexMatrix::from_fn(4, |i, j| {
            c(((i + 3 * j) as f64).sin() * 0.4, 0.1 * i as f64)
        });
        let a2 = &a * &a;
        let p = &a.scale(c(0.7, 0.0)) + &a2.scale(c(0.2, 0.0));
        let q = &a.scale(c(-0.3, 0.5)) + &a2.scale(c(0.1, -0.2));
        let lhs = expm(&(&p + &q)).unwrap();
        let rhs = expm(&p).unwrap().matmul(&expm(&q).unwrap()).unwrap();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-11 * lhs.frobenius_norm().max(1.0));
    }

    #[test]
    fn similarity_covariance() {
        let a = ComplexMatrix::from_fn(3, |i, j| {
            c(((1 + i + j * j) as f64).cos(), 0.3 * (i as f64 - j as f64))
        });
        // Well-conditioned transform: identity plus a small off-diagonal bump.
        let mut s = ComplexMatrix::identity(3);
        s[(0, 1)] = c(0.4, -0.2);
        s[(2, 0)] = c(-0.3, 0.1);
        let s_inv = super::super::matrix::inverse(&s).unwrap();
        let conjugated = s.matmul(&a).unwrap().matmul(&s_inv).unwrap();
        let lhs = expm(&conjugated).unwrap();
        let rhs = s
            .matmul(&expm(&a).unwrap())
            .unwrap()
            .matmul(&s_inv)
            .unwrap();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-10 * lhs.frobenius_norm().max(1.0));
    }

    #[test]
    fn determinant_is_exp_of_trace() {
        let a = ComplexMatrix::from_fn(4, |i, j| {
            c(
                ((i * 4 + j) as f64 * 0.37).sin(),
                ((i + j) as f64 * 0.21).cos() * 0.5,
            )
        });
        let det = expm(&a).unwrap().determinant();
        let expected = a.trace().exp();
        assert!((det - expected).norm() < 1e-10 * expected.norm());
    }
}
