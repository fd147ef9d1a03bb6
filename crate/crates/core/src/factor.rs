//! Factorization of exponentials of algebra elements into finite products of
//! single-generator exponentials: the two-operator split, the five-factor
//! three-operator split, and all twelve product orderings.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// Inherent f64 methods shadow this under std; no_std needs the trait.
#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{AlgebraSpec, Axis, CoefficientVector};
use crate::linalg::{expm, ComplexMatrix, LinalgError};
use crate::representations::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorError {
    /// The sequence was built for a different structure constant than the
    /// representation it is being evaluated on.
    AlgebraMismatch,
    /// Unknown variant identifier.
    Variant,
    /// Complex coefficients with `sum of squares = 0` but not all zero have
    /// no rotation-based split: no finite angle satisfies the sign
    /// conditions. Cannot occur for real coefficients.
    IsotropicCoefficients,
    /// Propagated matrix-kernel failure.
    Linalg(LinalgError),
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::AlgebraMismatch => {
                write!(f, "algebra mismatch between sequence and representation")
            }
            FactorError::Variant => write!(f, "unknown variant"),
            FactorError::IsotropicCoefficients => {
                write!(f, "isotropic complex coefficients admit no rotation split")
            }
            FactorError::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FactorError {}

impl From<LinalgError> for FactorError {
    fn from(e: LinalgError) -> Self {
        FactorError::Linalg(e)
    }
}

/// One factor `exp(coefficient * O_axis)` of a product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpFactor {
    pub axis: Axis,
    pub coefficient: Complex64,
}

/// An ordered product of exponential factors, leftmost applied last to a ket.
/// Carries the structure constant it was derived under so evaluation can
/// reject mismatched representations.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSequence {
    kappa: Complex64,
    factors: Vec<ExpFactor>,
}

impl FactorSequence {
    pub fn new(kappa: Complex64, factors: Vec<ExpFactor>) -> Self {
        Self { kappa, factors }
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn factors(&self) -> &[ExpFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when factor k and factor (len-1-k) share an axis and carry
    /// negated coefficients, for every k except the center.
    pub fn is_conjugation_symmetric(&self) -> bool {
        let n = self.factors.len();
        (0..n / 2).all(|k| {
            let front = self.factors[k];
            let back = self.factors[n - 1 - k];
            front.axis == back.axis && front.coefficient == -back.coefficient
        })
    }
}

impl<'a> IntoIterator for &'a FactorSequence {
    type Item = &'a ExpFactor;
    type IntoIter = core::slice::Iter<'a, ExpFactor>;
    fn into_iter(self) -> Self::IntoIter {
        self.factors.iter()
    }
}

/// One of the twelve product orderings for a three-operator split, keyed by
/// the axis of the first conjugation, the component it zeroes, and the axis
/// left in the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VariantId {
    first_axis: Axis,
    first_zeroed: Axis,
    center_axis: Axis,
}

impl VariantId {
    /// All twelve orderings, grouped by first conjugation axis Z, X, Y.
    pub const ALL: [VariantId; 12] = [
        VariantId::raw(Axis::Z, Axis::Y, Axis::X),
        VariantId::raw(Axis::Z, Axis::Y, Axis::Z),
        VariantId::raw(Axis::Z, Axis::X, Axis::Y),
        VariantId::raw(Axis::Z, Axis::X, Axis::Z),
        VariantId::raw(Axis::X, Axis::Z, Axis::Y),
        VariantId::raw(Axis::X, Axis::Z, Axis::X),
        VariantId::raw(Axis::X, Axis::Y, Axis::Z),
        VariantId::raw(Axis::X, Axis::Y, Axis::X),
        VariantId::raw(Axis::Y, Axis::X, Axis::Z),
        VariantId::raw(Axis::Y, Axis::X, Axis::Y),
        VariantId::raw(Axis::Y, Axis::Z, Axis::X),
        VariantId::raw(Axis::Y, Axis::Z, Axis::Y),
    ];

    const fn raw(first_axis: Axis, first_zeroed: Axis, center_axis: Axis) -> Self {
        Self {
            first_axis,
            first_zeroed,
            center_axis,
        }
    }

    /// Validates the combination: the zeroed axis must differ from the first
    /// axis, and the center must be either the remaining axis or the first.
    pub fn new(
        first_axis: Axis,
        first_zeroed: Axis,
        center_axis: Axis,
    ) -> Result<Self, FactorError> {
        let remaining = first_axis.third(first_zeroed).ok_or(FactorError::Variant)?;
        if center_axis != remaining && center_axis != first_axis {
            return Err(FactorError::Variant);
        }
        Ok(Self::raw(first_axis, first_zeroed, center_axis))
    }

    pub fn first_axis(&self) -> Axis {
        self.first_axis
    }

    pub fn first_zeroed(&self) -> Axis {
        self.first_zeroed
    }

    pub fn center_axis(&self) -> Axis {
        self.center_axis
    }

    /// Stable label `t2r1..t2r4` (first axis Z) and `t3r1..t3r8` (first axis
    /// X or Y), in the order of [`VariantId::ALL`].
    pub fn label(&self) -> &'static str {
        const LABELS: [&str; 12] = [
            "t2r1", "t2r2", "t2r3", "t2r4", "t3r1", "t3r2", "t3r3", "t3r4", "t3r5", "t3r6", "t3r7",
            "t3r8",
        ];
        let idx = VariantId::ALL
            .iter()
            .position(|v| v == self)
            .expect("every constructible variant is enumerated");
        LABELS[idx]
    }

    pub fn parse(label: &str) -> Result<Self, FactorError> {
        VariantId::ALL
            .iter()
            .copied()
            .find(|v| v.label() == label)
            .ok_or(FactorError::Variant)
    }
}

impl fmt::Display for VariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (first {}, zeroes {}, center {})",
            self.label(),
            self.first_axis,
            self.first_zeroed,
            self.center_axis
        )
    }
}

/// Result of a two-operator split: `exp(aU + bV) = exp(p W) exp(q O) exp(-p W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSplit {
    pub p: Complex64,
    pub q: Complex64,
    pub sequence: FactorSequence,
}

/// Result of a three-operator split:
/// `exp(V) = exp(p W) exp(q Z') exp(r C) exp(-q Z') exp(-p W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeSplit {
    pub p: Complex64,
    pub q: Complex64,
    pub r: Complex64,
    pub sequence: FactorSequence,
}

/// Complex two-argument arctangent: the angle `theta` with
/// `cos(theta) = x/s` and `sin(theta) = y/s` for `s = sqrt(x^2 + y^2)`
/// (principal branch), together with `s` itself.
///
/// Reduces exactly to `atan2(y, x)` for real inputs; both sign conditions
/// hold simultaneously, which a single-argument arctangent cannot guarantee.
fn angle_and_length(y: Complex64, x: Complex64) -> Result<(Complex64, Complex64), FactorError> {
    let zero = Complex64::new(0.0, 0.0);
    if x == zero && y == zero {
        return Ok((zero, zero));
    }
    if x.im == 0.0 && y.im == 0.0 {
        let s = x.re.hypot(y.re);
        return Ok((
            Complex64::new(y.re.atan2(x.re), 0.0),
            Complex64::new(s, 0.0),
        ));
    }
    let s = (x * x + y * y).sqrt();
    if s.norm() == 0.0 {
        return Err(FactorError::IsotropicCoefficients);
    }
    // exp(i theta) = (x + i y)/s, so theta = -i log((x + i y)/s).
    let w = (x + Complex64::new(0.0, 1.0) * y) / s;
    let theta = Complex64::new(0.0, -1.0) * w.ln();
    Ok((theta, s))
}

/// Rotation angle about an axis with cyclic pair `(u, v)` that zeroes one
/// component of `(c_u, c_v)` and moves the full length onto the other.
fn zeroing_rotation(
    c_u: Complex64,
    c_v: Complex64,
    keep: PairSlot,
) -> Result<(Complex64, Complex64), FactorError> {
    match keep {
        // cos = c_u/s, sin = c_v/s zeroes the v slot
        PairSlot::U => angle_and_length(c_v, c_u),
        // cos = c_v/s, sin = -c_u/s zeroes the u slot
        PairSlot::V => angle_and_length(-c_u, c_v),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairSlot {
    U,
    V,
}

/// Splits `exp(a O_u + b O_v)` into `exp(p W) exp(q O_inner) exp(-p W)` where
/// `W` is `conjugating_axis` and `(u, v)` is its cyclic pair (`u = W.next()`).
///
/// `a` and `b` are the coefficients on `u` and `v` respectively; `inner_axis`
/// selects which of the two survives in the center. With `inner = u` the
/// angle satisfies `cos(kappa p) = a/sqrt(a^2+b^2)`,
/// `sin(kappa p) = b/sqrt(a^2+b^2)`; with `inner = v` the roles swap with a
/// sign (`kappa p = atan2(-a, b)` on the reals). Either way
/// `q = sqrt(a^2 + b^2)` (principal branch).
///
/// Both coefficients zero yields the trivial split `p = q = 0`.
///
/// # Panics
/// If `inner_axis` equals `conjugating_axis`.
pub fn split_two(
    spec: &AlgebraSpec,
    a: Complex64,
    b: Complex64,
    conjugating_axis: Axis,
    inner_axis: Axis,
) -> Result<TwoSplit, FactorError> {
    assert_ne!(
        inner_axis, conjugating_axis,
        "the inner axis must be one of the conjugating axis' cyclic pair"
    );
    let u = conjugating_axis.next();
    let keep = if inner_axis == u {
        PairSlot::U
    } else {
        PairSlot::V
    };
    let (theta, q) = zeroing_rotation(a, b, keep)?;
    let p = theta / spec.kappa();
    let sequence = FactorSequence::new(
        spec.kappa(),
        vec![
            ExpFactor {
                axis: conjugating_axis,
                coefficient: p,
            },
            ExpFactor {
                axis: inner_axis,
                coefficient: q,
            },
            ExpFactor {
                axis: conjugating_axis,
                coefficient: -p,
            },
        ],
    );
    Ok(TwoSplit { p, q, sequence })
}

/// Splits `exp(aX + bY + cZ)` into the five-factor product selected by
/// `variant`: a first conjugation about `variant.first_axis()` zeroes the
/// `first_zeroed` component, a second conjugation about the axis just zeroed
/// leaves only `center_axis`, whose coefficient is
/// `r = sqrt(a^2 + b^2 + c^2)`.
///
/// The all-zero vector yields the empty (identity) sequence. When the two
/// components feeding a rotation are both zero the rotation angle is zero
/// and the other rotation does the work.
pub fn split_three(
    spec: &AlgebraSpec,
    v: CoefficientVector,
    variant: VariantId,
) -> Result<ThreeSplit, FactorError> {
    let zero = Complex64::new(0.0, 0.0);
    if v.is_zero() {
        return Ok(ThreeSplit {
            p: zero,
            q: zero,
            r: zero,
            sequence: FactorSequence::new(spec.kappa(), Vec::new()),
        });
    }

    let first = variant.first_axis();
    let zeroed = variant.first_zeroed();
    let center = variant.center_axis();
    let remaining = first
        .third(zeroed)
        .expect("variant invariant: zeroed axis differs from first");

    // First rotation about `first`: zero the `zeroed` component of its
    // cyclic pair, moving the pair's length onto `remaining`.
    let u1 = first.next();
    let v1 = u1.next();
    let keep1 = if zeroed == v1 {
        PairSlot::U
    } else {
        PairSlot::V
    };
    let (theta1, s1) = zeroing_rotation(v.component(u1), v.component(v1), keep1)?;
    let p = theta1 / spec.kappa();

    // State after the first rotation: `first` keeps its original component,
    // `remaining` holds s1, `zeroed` is exactly zero.
    let coeff_of = |axis: Axis| -> Complex64 {
        if axis == first {
            v.component(first)
        } else if axis == remaining {
            s1
        } else {
            zero
        }
    };

    // Second rotation about the axis just zeroed; its cyclic pair is exactly
    // {first, remaining}. Zero whichever is not the center.
    let u2 = zeroed.next();
    let v2 = u2.next();
    let keep2 = if center == u2 {
        PairSlot::U
    } else {
        PairSlot::V
    };
    let (theta2, r) = zeroing_rotation(coeff_of(u2), coeff_of(v2), keep2)?;
    let q = theta2 / spec.kappa();

    let sequence = FactorSequence::new(
        spec.kappa(),
        vec![
            ExpFactor {
                axis: first,
                coefficient: p,
            },
            ExpFactor {
                axis: zeroed,
                coefficient: q,
            },
            ExpFactor {
                axis: center,
                coefficient: r,
            },
            ExpFactor {
                axis: zeroed,
                coefficient: -q,
            },
            ExpFactor {
                axis: first,
                coefficient: -p,
            },
        ],
    );
    Ok(ThreeSplit { p, q, r, sequence })
}

/// All twelve product orderings for `exp(aX + bY + cZ)`.
pub fn all_variants(
    spec: &AlgebraSpec,
    v: CoefficientVector,
) -> Result<Vec<(VariantId, FactorSequence)>, FactorError> {
    VariantId::ALL
        .iter()
        .map(|&variant| Ok((variant, split_three(spec, v, variant)?.sequence)))
        .collect()
}

/// Left-to-right product of `exp(coefficient * m_axis)` over the sequence.
pub fn evaluate(rep: &Representation, seq: &FactorSequence) -> Result<ComplexMatrix, FactorError> {
    if rep.kappa() != seq.kappa() {
        return Err(FactorError::AlgebraMismatch);
    }
    let mut product = ComplexMatrix::identity(rep.dim());
    for factor in seq {
        let exponent = rep.generator(factor.axis).scale(factor.coefficient);
        product = product.matmul(&expm(&exponent)?)?;
    }
    Ok(product)
}

/// `|| evaluate(rep, seq) - exp(a m_X + b m_Y + c m_Z) ||_F`, the universal
/// verification functional.
pub fn residual(
    rep: &Representation,
    v: CoefficientVector,
    seq: &FactorSequence,
) -> Result<f64, FactorError> {
    let factored = evaluate(rep, seq)?;
    let direct = expm(&rep.element(v))?;
    Ok((&factored - &direct).frobenius_norm())
}
