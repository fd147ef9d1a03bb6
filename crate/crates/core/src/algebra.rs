//! The abstract 3-cyclic Lie algebra: structure constants, coefficient
//! vectors, and the closed-form adjoint rotation they obey.

use core::fmt;

use num_complex::Complex64;
// Inherent f64 methods shadow this under std; no_std needs the trait.
#[allow(unused_imports)]
use num_traits::Float;

/// One of the three basis axes, in cyclic order `X -> Y -> Z -> X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// All three axes in basis order.
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Basis index: X = 0, Y = 1, Z = 2.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    /// Cyclic successor.
    pub fn next(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::Z,
            Axis::Z => Axis::X,
        }
    }

    /// The axis that is neither `self` nor `other`, or `None` when they coincide.
    pub fn third(self, other: Axis) -> Option<Axis> {
        if self == other {
            None
        } else if self.next() == other {
            Some(other.next())
        } else {
            Some(self.next())
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "X"),
            Axis::Y => write!(f, "Y"),
            Axis::Z => write!(f, "Z"),
        }
    }
}

/// Error raised when constructing a degenerate algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// The structure constant must be nonzero.
    ZeroKappa,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::ZeroKappa => write!(f, "structure constant kappa must be nonzero"),
        }
    }
}

impl core::error::Error for AlgebraError {}

/// The abstract 3-cyclic algebra: `[O_mu, O_nu] = kappa * eps_{mu,nu,lambda} * O_lambda`
/// over the ordered basis (X, Y, Z).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraSpec {
    kappa: Complex64,
    basis: [Axis; 3],
}

impl AlgebraSpec {
    /// Builds an algebra with the given structure constant.
    pub fn new(kappa: Complex64) -> Result<Self, AlgebraError> {
        if kappa.norm() == 0.0 {
            return Err(AlgebraError::ZeroKappa);
        }
        Ok(Self {
            kappa,
            basis: Axis::ALL,
        })
    }

    /// kappa = 1, the algebra of real rotation generators.
    pub fn real_rotation() -> Self {
        Self::new(Complex64::new(1.0, 0.0)).expect("kappa = 1 is nonzero")
    }

    /// kappa = i, the algebra of Hermitian spin matrices.
    pub fn spin() -> Self {
        Self::new(Complex64::new(0.0, 1.0)).expect("kappa = i is nonzero")
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn basis(&self) -> [Axis; 3] {
        self.basis
    }

    /// `[O_mu, O_nu]` expressed through the structure constants: the third
    /// axis and its scalar, or `None` when `mu == nu` (zero commutator).
    ///
    /// The scalar is `+kappa` for cyclic pairs (X,Y), (Y,Z), (Z,X) and
    /// `-kappa` for the reversed pairs.
    pub fn commutator_coefficient(&self, mu: Axis, nu: Axis) -> Option<(Axis, Complex64)> {
        let lambda = mu.third(nu)?;
        let scalar = if mu.next() == nu {
            self.kappa
        } else {
            -self.kappa
        };
        Some((lambda, scalar))
    }

    /// Coefficients of `exp(-p O_axis) (aX + bY + cZ) exp(p O_axis)`.
    ///
    /// The component along `axis` is untouched (bit-identical); the cyclic
    /// pair (successor, successor-of-successor) mixes by a rotation of the
    /// complex angle `kappa * p`:
    ///
    /// ```text
    /// c_u' =  c_u cos(kappa p) + c_v sin(kappa p)
    /// c_v' = -c_u sin(kappa p) + c_v cos(kappa p)
    /// ```
    ///
    /// with `u = axis.next()` and `v = u.next()`. cos/sin are the entire
    /// complex functions, so `p` and the coefficients may be complex.
    pub fn adjoint_rotate(
        &self,
        axis: Axis,
        p: Complex64,
        v: CoefficientVector,
    ) -> CoefficientVector {
        let theta = self.kappa * p;
        let cos_t = theta.cos();
        let sin_t = theta.sin();
        let u_axis = axis.next();
        let v_axis = u_axis.next();
        let cu = v.component(u_axis);
        let cv = v.component(v_axis);
        let mut out = v;
        *out.component_mut(u_axis) = cu * cos_t + cv * sin_t;
        *out.component_mut(v_axis) = -cu * sin_t + cv * cos_t;
        out
    }

    /// Norm of `[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]` evaluated purely through
    /// the structure constants. Identically zero for any nonzero kappa.
    pub fn jacobi_residual(&self) -> f64 {
        let mut acc = CoefficientVector::ZERO;
        for outer in Axis::ALL {
            let mid = outer.next();
            let last = mid.next();
            if let Some((inner_axis, inner_scalar)) = self.commutator_coefficient(mid, last) {
                if let Some((result_axis, result_scalar)) =
                    self.commutator_coefficient(outer, inner_axis)
                {
                    *acc.component_mut(result_axis) += inner_scalar * result_scalar;
                }
            }
        }
        acc.norm()
    }
}

/// The scalar triple (a, b, c) expressing `aX + bY + cZ` in the basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientVector {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl CoefficientVector {
    pub const ZERO: Self = Self {
        a: Complex64 { re: 0.0, im: 0.0 },
        b: Complex64 { re: 0.0, im: 0.0 },
        c: Complex64 { re: 0.0, im: 0.0 },
    };

    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self { a, b, c }
    }

    /// Convenience constructor for real coefficients.
    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
        )
    }

    pub fn component(&self, axis: Axis) -> Complex64 {
        match axis {
            Axis::X => self.a,
            Axis::Y => self.b,
            Axis::Z => self.c,
        }
    }

    pub fn component_mut(&mut self, axis: Axis) -> &mut Complex64 {
        match axis {
            Axis::X => &mut self.a,
            Axis::Y => &mut self.b,
            Axis::Z => &mut self.c,
        }
    }

    /// Euclidean norm `sqrt(|a|^2 + |b|^2 + |c|^2)`.
    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr()).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.a.norm_sqr() == 0.0 && self.b.norm_sqr() == 0.0 && self.c.norm_sqr() == 0.0
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cyclic_successor_is_total() {
        assert_eq!(Axis::X.next(), Axis::Y);
        assert_eq!(Axis::Y.next(), Axis::Z);
        assert_eq!(Axis::Z.next(), Axis::X);
        for axis in Axis::ALL {
            assert_eq!(axis.next().next().next(), axis);
        }
    }

    #[test]
    fn third_axis() {
        assert_eq!(Axis::X.third(Axis::Y), Some(Axis::Z));
        assert_eq!(Axis::Y.third(Axis::X), Some(Axis::Z));
        assert_eq!(Axis::Z.third(Axis::X), Some(Axis::Y));
        assert_eq!(Axis::Z.third(Axis::Z), None);
    }

    #[test]
    fn zero_kappa_rejected() {
        assert_eq!(AlgebraSpec::new(c(0.0, 0.0)), Err(AlgebraError::ZeroKappa));
    }

    #[test]
    fn commutator_spin_pair() {
        // kappa = i: [X, Y] = i Z
        let spec = AlgebraSpec::spin();
        let (axis, scalar) = spec.commutator_coefficient(Axis::X, Axis::Y).unwrap();
        assert_eq!(axis, Axis::Z);
        assert_eq!(scalar, c(0.0, 1.0));
    }

    #[test]
    fn commutator_same_axis_is_zero_marker() {
        let spec = AlgebraSpec::real_rotation();
        assert!(spec.commutator_coefficient(Axis::X, Axis::X).is_none());
    }

    #[test]
    fn commutator_anticyclic_sign() {
        // kappa = 1: [Y, X] = -Z
        let spec = AlgebraSpec::real_rotation();
        let (axis, scalar) = spec.commutator_coefficient(Axis::Y, Axis::X).unwrap();
        assert_eq!(axis, Axis::Z);
        assert_eq!(scalar, c(-1.0, 0.0));
    }

    #[test]
    fn commutator_antisymmetry() {
        let spec = AlgebraSpec::new(c(2.5, -0.5)).unwrap();
        for mu in Axis::ALL {
            for nu in Axis::ALL {
                match (
                    spec.commutator_coefficient(mu, nu),
                    spec.commutator_coefficient(nu, mu),
                ) {
                    (Some((l1, s1)), Some((l2, s2))) => {
                        assert_eq!(l1, l2);
                        assert_eq!(s1, -s2);
                    }
                    (None, None) => assert_eq!(mu, nu),
                    _ => panic!("asymmetric zero marker"),
                }
            }
        }
    }

    #[test]
    fn rotation_identity_at_zero() {
        let spec = AlgebraSpec::real_rotation();
        let v = CoefficientVector::new(c(1.2, 0.3), c(-0.5, 0.1), c(0.0, 2.0));
        assert_eq!(spec.adjoint_rotate(Axis::Z, c(0.0, 0.0), v), v);
    }

    #[test]
    fn rotation_quarter_turn_about_z() {
        // kappa = 1, p = pi/2: X -> -Y
        let spec = AlgebraSpec::real_rotation();
        let v = CoefficientVector::real(1.0, 0.0, 0.0);
        let r = spec.adjoint_rotate(Axis::Z, c(core::f64::consts::FRAC_PI_2, 0.0), v);
        assert!((r.a - c(0.0, 0.0)).norm() < 1e-15);
        assert!((r.b - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(r.c, c(0.0, 0.0));
    }

    #[test]
    fn rotation_spin_kappa_imaginary_angle() {
        // kappa = i, p = -i pi/2 so kappa*p = pi/2: Y -> -Z about X
        let spec = AlgebraSpec::spin();
        let v = CoefficientVector::real(0.0, 1.0, 0.0);
        let r = spec.adjoint_rotate(Axis::X, c(0.0, -core::f64::consts::FRAC_PI_2), v);
        assert!((r.b - c(0.0, 0.0)).norm() < 1e-15);
        assert!((r.c - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(r.a, c(0.0, 0.0));
    }

    #[test]
    fn rotation_composes_additively() {
        let spec = AlgebraSpec::new(c(0.0, 1.0)).unwrap();
        let v = CoefficientVector::new(c(0.7, -0.2), c(1.1, 0.4), c(-0.3, 0.9));
        let p1 = c(0.3, -0.8);
        let p2 = c(-1.1, 0.25);
        for axis in Axis::ALL {
            let two_step = spec.adjoint_rotate(axis, p1, spec.adjoint_rotate(axis, p2, v));
            let one_step = spec.adjoint_rotate(axis, p1 + p2, v);
            for target in Axis::ALL {
                let d = (two_step.component(target) - one_step.component(target)).norm();
                assert!(d < 1e-12, "axis {axis} target {target}: {d}");
            }
        }
    }

    #[test]
    fn rotation_preserves_norm_for_real_angle() {
        // kappa*p real: the mixing is a real rotation of the pair.
        let spec = AlgebraSpec::real_rotation();
        let v = CoefficientVector::new(c(0.9, 0.1), c(-1.3, 0.7), c(0.2, -0.4));
        for axis in Axis::ALL {
            let r = spec.adjoint_rotate(axis, c(1.234, 0.0), v);
            assert!((r.norm() - v.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_fixes_axis_component_bitwise() {
        let spec = AlgebraSpec::spin();
        let v = CoefficientVector::new(c(0.123, 4.5), c(-6.7, 0.8), c(9.0, -1.2));
        for axis in Axis::ALL {
            let r = spec.adjoint_rotate(axis, c(2.0, -3.0), v);
            let before = v.component(axis);
            let after = r.component(axis);
            assert_eq!(before.re.to_bits(), after.re.to_bits());
            assert_eq!(before.im.to_bits(), after.im.to_bits());
        }
    }

    #[test]
    fn jacobi_residual_vanishes() {
        for kappa in [c(1.0, 0.0), c(0.0, 1.0), c(2.5, 0.0), c(0.0, -1.0)] {
            let spec = AlgebraSpec::new(kappa).unwrap();
            assert_eq!(spec.jacobi_residual(), 0.0, "kappa {kappa}");
        }
    }
}
