//! Rotating-frame spin dynamics: the two-factor propagator, transition
//! probabilities between Jz eigenstates, and time sweeps.
//!
//! The propagator `exp(i w t Jz) exp(-i [(w - W) Jz - lambda W Jx] t)` is
//! offered along two routes: a direct matrix-exponential route and a factored
//! route that rebases the generators to `{-i J_mu}` (turning kappa = i into
//! kappa = 1) so the second factor splits with real scalars.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// Inherent f64 methods shadow this under std; no_std needs the trait.
#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{Axis, CoefficientVector};
use crate::factor::{evaluate, split_two, FactorError};
use crate::linalg::{expm, ComplexMatrix, LinalgError};
use crate::representations::{Representation, RepresentationError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynamicsError {
    /// Frequencies must be finite, the resonance frequency nonzero, and
    /// two_j >= 1.
    InvalidParams,
    /// An m index is outside the representation or has the wrong parity.
    Index,
    /// The time grid must be finite and sorted ascending.
    Grid,
    /// A state vector must have unit norm.
    NotNormalized,
    /// A propagator row failed the probability-conservation check.
    UnitarityViolation,
    Representation(RepresentationError),
    Factor(FactorError),
    Linalg(LinalgError),
}

impl fmt::Display for DynamicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynamicsError::InvalidParams => write!(f, "invalid dynamics parameters"),
            DynamicsError::Index => write!(f, "invalid m index"),
            DynamicsError::Grid => write!(f, "time grid must be finite and sorted"),
            DynamicsError::NotNormalized => write!(f, "state vector must have unit norm"),
            DynamicsError::UnitarityViolation => {
                write!(f, "propagator violates probability conservation")
            }
            DynamicsError::Representation(e) => write!(f, "{e}"),
            DynamicsError::Factor(e) => write!(f, "{e}"),
            DynamicsError::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DynamicsError {}

impl From<RepresentationError> for DynamicsError {
    fn from(e: RepresentationError) -> Self {
        DynamicsError::Representation(e)
    }
}

impl From<FactorError> for DynamicsError {
    fn from(e: FactorError) -> Self {
        DynamicsError::Factor(e)
    }
}

impl From<LinalgError> for DynamicsError {
    fn from(e: LinalgError) -> Self {
        DynamicsError::Linalg(e)
    }
}

/// Physical inputs of the rotating-frame problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RabiParams {
    /// Rotating-frame angular frequency (omega).
    pub omega: f64,
    /// Resonance angular frequency (capital Omega); must be nonzero.
    pub big_omega: f64,
    /// Small dimensionless drive strength (lambda).
    pub lambda: f64,
    /// Representation size: dim = two_j + 1.
    pub two_j: u32,
}

impl RabiParams {
    pub fn new(omega: f64, big_omega: f64, lambda: f64, two_j: u32) -> Result<Self, DynamicsError> {
        if !(omega.is_finite() && big_omega.is_finite() && lambda.is_finite()) {
            return Err(DynamicsError::InvalidParams);
        }
        if big_omega == 0.0 || two_j == 0 {
            return Err(DynamicsError::InvalidParams);
        }
        Ok(Self {
            omega,
            big_omega,
            lambda,
            two_j,
        })
    }

    pub fn dim(&self) -> usize {
        (self.two_j + 1) as usize
    }

    /// Basis index of the Jz eigenstate with eigenvalue m = two_m / 2, in
    /// the descending-m basis.
    pub fn basis_index(&self, two_m: i32) -> Result<usize, DynamicsError> {
        let two_j = self.two_j as i64;
        let two_m = two_m as i64;
        if two_m.abs() > two_j || (two_j - two_m) % 2 != 0 {
            return Err(DynamicsError::Index);
        }
        Ok(((two_j - two_m) / 2) as usize)
    }
}

/// Complex amplitudes in the descending-m Jz eigenbasis; unit norm enforced
/// at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, DynamicsError> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-10 {
            return Err(DynamicsError::NotNormalized);
        }
        Ok(Self { amplitudes })
    }

    /// The basis state at the given index.
    pub fn basis(dim: usize, index: usize) -> Result<Self, DynamicsError> {
        if index >= dim {
            return Err(DynamicsError::Index);
        }
        let mut amplitudes = alloc::vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// The conventional initial state |m = -J>, the last basis vector.
    pub fn lowest_m(two_j: u32) -> Self {
        let dim = (two_j + 1) as usize;
        Self::basis(dim, dim - 1).expect("dim >= 1")
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Applies a propagator; evolution preserves the norm.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self, DynamicsError> {
        let amplitudes = u.apply(&self.amplitudes)?;
        Self::new(amplitudes)
    }
}

/// The common setup for both propagator routes.
struct Frame {
    rep: Representation,
    rebased: Representation,
}

impl Frame {
    fn new(two_j: u32) -> Result<Self, DynamicsError> {
        let rep = Representation::spin(two_j)?;
        let rebased = rep.rescale_basis(Complex64::new(0.0, -1.0))?;
        Ok(Self { rep, rebased })
    }

    /// `exp(i omega t Jz)`, the frame-restoring factor.
    fn frame_factor(&self, params: &RabiParams, t: f64) -> Result<ComplexMatrix, DynamicsError> {
        let exponent = self
            .rep
            .generator(Axis::Z)
            .scale(Complex64::new(0.0, params.omega * t));
        Ok(expm(&exponent)?)
    }

    /// Factored route: the anti-Hermitian exponent
    /// `(omega - Omega) t (-i Jz) - lambda Omega t (-i Jx)` lives on the
    /// rebased (kappa = 1) generators and splits about Y with real scalars.
    fn factored(&self, params: &RabiParams, t: f64) -> Result<ComplexMatrix, DynamicsError> {
        let spec = self.rebased.algebra();
        let on_z = Complex64::new((params.omega - params.big_omega) * t, 0.0);
        let on_x = Complex64::new(-params.lambda * params.big_omega * t, 0.0);
        let split = split_two(&spec, on_z, on_x, Axis::Y, Axis::Z)?;
        let second = evaluate(&self.rebased, &split.sequence)?;
        Ok(self.frame_factor(params, t)?.matmul(&second)?)
    }

    /// Direct route: one matrix exponential per factor.
    fn direct(&self, params: &RabiParams, t: f64) -> Result<ComplexMatrix, DynamicsError> {
        let v = CoefficientVector::new(
            Complex64::new(0.0, params.lambda * params.big_omega * t),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -(params.omega - params.big_omega) * t),
        );
        let second = expm(&self.rep.element(v))?;
        Ok(self.frame_factor(params, t)?.matmul(&second)?)
    }
}

/// The propagator at time `t`, computed along the factored route.
pub fn propagator(params: &RabiParams, t: f64) -> Result<ComplexMatrix, DynamicsError> {
    if !t.is_finite() {
        return Err(DynamicsError::InvalidParams);
    }
    Frame::new(params.two_j)?.factored(params, t)
}

/// The propagator computed by direct matrix exponentials; the reference the
/// factored route is validated against.
pub fn propagator_direct(params: &RabiParams, t: f64) -> Result<ComplexMatrix, DynamicsError> {
    if !t.is_finite() {
        return Err(DynamicsError::InvalidParams);
    }
    Frame::new(params.two_j)?.direct(params, t)
}

/// `|<m_to| U(t) |m_from>|^2`, clamped into [0, 1]. The m arguments are
/// doubled (two_m = 2m) so half-integers stay exact.
pub fn transition_probability(
    params: &RabiParams,
    two_m_from: i32,
    two_m_to: i32,
    t: f64,
) -> Result<f64, DynamicsError> {
    let col = params.basis_index(two_m_from)?;
    let row = params.basis_index(two_m_to)?;
    let u = propagator(params, t)?;
    Ok(u[(row, col)].norm_sqr().min(1.0))
}

/// Rows of a time sweep plus the worst probability-conservation defect seen.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<(f64, f64)>,
    pub max_unitarity_error: f64,
}

/// Tabulates `transition_probability` over a sorted time grid, checking per
/// row that the outgoing probabilities from `m_from` sum to one (1e-9).
pub fn sweep(
    params: &RabiParams,
    t_grid: &[f64],
    two_m_from: i32,
    two_m_to: i32,
) -> Result<SweepResult, DynamicsError> {
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(DynamicsError::Grid);
    }
    if t_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(DynamicsError::Grid);
    }
    let col = params.basis_index(two_m_from)?;
    let row = params.basis_index(two_m_to)?;
    let frame = Frame::new(params.two_j)?;

    let mut rows = Vec::with_capacity(t_grid.len());
    let mut max_unitarity_error = 0.0f64;
    for &t in t_grid {
        let u = frame.factored(params, t)?;
        let outgoing: f64 = (0..u.dim()).map(|m| u[(m, col)].norm_sqr()).sum();
        let defect = (outgoing - 1.0).abs();
        if defect > 1e-9 {
            return Err(DynamicsError::UnitarityViolation);
        }
        if defect > max_unitarity_error {
            max_unitarity_error = defect;
        }
        rows.push((t, u[(row, col)].norm_sqr().min(1.0)));
    }
    Ok(SweepResult {
        rows,
        max_unitarity_error,
    })
}
