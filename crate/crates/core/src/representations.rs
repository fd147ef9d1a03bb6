//! Concrete matrix realizations of the 3-cyclic algebra: spin-J angular
//! momentum generators (kappa = i) and real so(3) rotation generators
//! (kappa = 1).

use core::fmt;

use num_complex::Complex64;
// Inherent f64 methods shadow this under std; no_std needs the trait.
#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{AlgebraSpec, Axis, CoefficientVector};
use crate::linalg::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentationError {
    /// two_j = 0: all generators vanish and the cyclic relation degenerates.
    TrivialRepresentation,
    /// Rescaling by zero destroys the algebra.
    DegenerateScale,
}

impl fmt::Display for RepresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepresentationError::TrivialRepresentation => {
                write!(f, "trivial representation (two_j = 0)")
            }
            RepresentationError::DegenerateScale => write!(f, "degenerate scale (s = 0)"),
        }
    }
}

impl core::error::Error for RepresentationError {}

/// Three concrete generators realizing the basis, with their structure
/// constant. Invariant: `[m_mu, m_nu] = kappa * m_lambda` for cyclic triples,
/// up to rounding (checkable via [`Representation::validate_cyclic`]).
#[derive(Clone, Debug)]
pub struct Representation {
    dim: usize,
    mx: ComplexMatrix,
    my: ComplexMatrix,
    mz: ComplexMatrix,
    kappa: Complex64,
}

impl Representation {
    /// Spin-J generators in the descending Jz eigenbasis (m = J first),
    /// built from ladder operators; `dim = two_j + 1`, `kappa = i`.
    pub fn spin(two_j: u32) -> Result<Self, RepresentationError> {
        if two_j == 0 {
            return Err(RepresentationError::TrivialRepresentation);
        }
        let dim = (two_j + 1) as usize;
        let mut mz = ComplexMatrix::zeros(dim);
        for k in 0..dim {
            let two_m = two_j as i64 - 2 * k as i64;
            mz[(k, k)] = Complex64::new(two_m as f64 / 2.0, 0.0);
        }
        // (J+)_{k-1,k} = sqrt(J(J+1) - m(m+1)) with m the eigenvalue of column k;
        // the radicand 4(J(J+1) - m(m+1)) = two_j(two_j+2) - two_m(two_m+2) is
        // an exact integer.
        let mut plus = ComplexMatrix::zeros(dim);
        for k in 1..dim {
            let two_m = two_j as i64 - 2 * k as i64;
            let radicand = (two_j as i64 * (two_j as i64 + 2) - two_m * (two_m + 2)) as f64;
            plus[(k - 1, k)] = Complex64::new(radicand.sqrt() / 2.0, 0.0);
        }
        let minus = plus.adjoint();
        let mx = (&plus + &minus).scale(Complex64::new(0.5, 0.0));
        // (J+ - J-) / (2i) = -i/2 (J+ - J-)
        let my = (&plus - &minus).scale(Complex64::new(0.0, -0.5));
        Ok(Self {
            dim,
            mx,
            my,
            mz,
            kappa: Complex64::new(0.0, 1.0),
        })
    }

    /// Real so(3) generators `(K_mu)_{jk} = -eps_{mu j k}`; `kappa = 1`.
    pub fn so3() -> Self {
        let levi_civita = |i: usize, j: usize, k: usize| -> f64 {
            match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        let gen = |mu: usize| {
            ComplexMatrix::from_fn(3, |j, k| Complex64::new(-levi_civita(mu, j, k), 0.0))
        };
        Self {
            dim: 3,
            mx: gen(0),
            my: gen(1),
            mz: gen(2),
            kappa: Complex64::new(1.0, 0.0),
        }
    }

    /// Multiplies every generator by `s`; kappa becomes `s * kappa` since
    /// `[sA, sB] = s^2 [A, B] = (s kappa) (sC)`.
    pub fn rescale_basis(&self, s: Complex64) -> Result<Self, RepresentationError> {
        if s.norm() == 0.0 {
            return Err(RepresentationError::DegenerateScale);
        }
        Ok(Self {
            dim: self.dim,
            mx: self.mx.scale(s),
            my: self.my.scale(s),
            mz: self.mz.scale(s),
            kappa: self.kappa * s,
        })
    }

    /// Max over the three cyclic pairs of `||[m_mu, m_nu] - kappa m_lambda||_F`.
    pub fn validate_cyclic(&self) -> f64 {
        let mut worst = 0.0f64;
        for mu in Axis::ALL {
            let nu = mu.next();
            let lambda = nu.next();
            let comm = self
                .generator(mu)
                .commutator(self.generator(nu))
                .expect("generators share a dimension");
            let resid = (&comm - &self.generator(lambda).scale(self.kappa)).frobenius_norm();
            if resid > worst {
                worst = resid;
            }
        }
        worst
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn generator(&self, axis: Axis) -> &ComplexMatrix {
        match axis {
            Axis::X => &self.mx,
            Axis::Y => &self.my,
            Axis::Z => &self.mz,
        }
    }

    /// The matrix `a m_X + b m_Y + c m_Z`.
    pub fn element(&self, v: CoefficientVector) -> ComplexMatrix {
        &(&self.mx.scale(v.a) + &self.my.scale(v.b)) + &self.mz.scale(v.c)
    }

    /// The abstract algebra this representation realizes.
    pub fn algebra(&self) -> AlgebraSpec {
        AlgebraSpec::new(self.kappa).expect("representation kappa is nonzero")
    }
}
