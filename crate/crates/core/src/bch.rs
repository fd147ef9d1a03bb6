//! Truncated Campbell-Baker-Hausdorff-Dynkin series on matrices, with exact
//! rational term coefficients, plus truncation-error diagnostics against the
//! principal logarithm of the true product.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::linalg::{expm, ComplexMatrix, LinalgError};

/// Practical ceiling on the series degree; the composition count grows
/// roughly 3.4x per degree.
pub const MAX_DEGREE: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BchError {
    /// Operand dimensions do not match.
    Shape,
    /// Requested degree exceeds [`MAX_DEGREE`].
    Budget,
    /// Inputs are outside the guaranteed convergence regime
    /// (`||X||_F + ||Y||_F > 1`).
    DivergenceRisk,
    /// Propagated matrix-kernel failure.
    Linalg(LinalgError),
}

impl fmt::Display for BchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BchError::Shape => write!(f, "matrix shape mismatch"),
            BchError::Budget => write!(f, "degree budget exceeded (max {MAX_DEGREE})"),
            BchError::DivergenceRisk => {
                write!(f, "divergence risk: inputs must satisfy ||X|| + ||Y|| <= 1")
            }
            BchError::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BchError {}

impl From<LinalgError> for BchError {
    fn from(e: LinalgError) -> Self {
        BchError::Linalg(e)
    }
}

/// The two free generators of the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
}

/// One composition `(m_1, n_1, ..., m_k, n_k)` of the Dynkin double sum with
/// its exact rational coefficient
/// `(-1)^(k-1) / (k * sum_i(m_i + n_i) * prod_i m_i! n_i!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinTerm {
    blocks: Vec<(u32, u32)>,
    coefficient: Ratio<i64>,
}

impl DynkinTerm {
    /// Block exponents `(m_i, n_i)`, each with `m_i + n_i > 0`.
    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    pub fn coefficient(&self) -> Ratio<i64> {
        self.coefficient
    }

    /// Total degree `sum_i (m_i + n_i)`.
    pub fn degree(&self) -> u32 {
        self.blocks.iter().map(|&(m, n)| m + n).sum()
    }

    /// Number of blocks `k`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The letter word `X^{m_1} Y^{n_1} ... X^{m_k} Y^{n_k}`, to be read as a
    /// fully right-nested bracket with the final letter innermost.
    pub fn word(&self) -> Vec<Generator> {
        let mut letters = Vec::with_capacity(self.degree() as usize);
        for &(m, n) in &self.blocks {
            letters.extend(core::iter::repeat_n(Generator::X, m as usize));
            letters.extend(core::iter::repeat_n(Generator::Y, n as usize));
        }
        letters
    }
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

/// All compositions of total degree `<= max_degree`, each with its exact
/// rational coefficient, ordered by degree, then block count, then
/// lexicographically by the flattened exponent list.
pub fn enumerate_terms(max_degree: u32) -> Result<Vec<DynkinTerm>, BchError> {
    if max_degree > MAX_DEGREE {
        return Err(BchError::Budget);
    }
    let mut sequences: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut current: Vec<(u32, u32)> = Vec::new();
    extend_blocks(max_degree, &mut current, &mut sequences);

    let mut terms: Vec<DynkinTerm> = sequences
        .into_iter()
        .map(|blocks| {
            let k = blocks.len() as i64;
            let degree: u32 = blocks.iter().map(|&(m, n)| m + n).sum();
            let mut denom = k * degree as i64;
            for &(m, n) in &blocks {
                denom *= factorial(m) * factorial(n);
            }
            let sign = if blocks.len() % 2 == 1 { 1 } else { -1 };
            DynkinTerm {
                blocks,
                coefficient: Ratio::new(sign, denom),
            }
        })
        .collect();
    terms.sort_by(|a, b| {
        (a.degree(), a.block_count(), &a.blocks).cmp(&(b.degree(), b.block_count(), &b.blocks))
    });
    Ok(terms)
}

fn extend_blocks(budget: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
    for total in 1..=budget {
        for m in 0..=total {
            let n = total - m;
            current.push((m, n));
            out.push(current.clone());
            extend_blocks(budget - total, current, out);
            current.pop();
        }
    }
}

/// Evaluates the right-nested bracket of a word on concrete matrices.
fn word_bracket(x: &ComplexMatrix, y: &ComplexMatrix, word: &[Generator]) -> ComplexMatrix {
    let gen = |g: Generator| match g {
        Generator::X => x,
        Generator::Y => y,
    };
    let mut acc = gen(word[word.len() - 1]).clone();
    for &letter in word[..word.len() - 1].iter().rev() {
        acc = gen(letter)
            .commutator(&acc)
            .expect("word operands share a dimension");
    }
    acc
}

/// The truncated series `H_N(X, Y)`: the sum over all enumerated terms of
/// `coefficient * [right-nested word]`. Words that vanish identically (for
/// example those ending in a generator bracketed with itself) contribute
/// zero through the matrix arithmetic itself.
///
/// Terms are accumulated in enumeration order, so the result is bitwise
/// reproducible for a fixed degree and input.
pub fn dynkin_sum(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    max_degree: u32,
) -> Result<ComplexMatrix, BchError> {
    if x.dim() != y.dim() {
        return Err(BchError::Shape);
    }
    let terms = enumerate_terms(max_degree)?;
    let mut acc = ComplexMatrix::zeros(x.dim());
    for term in &terms {
        let weight = *term.coefficient.numer() as f64 / *term.coefficient.denom() as f64;
        let bracket = word_bracket(x, y, &term.word());
        acc = &acc + &bracket.scale(Complex64::new(weight, 0.0));
    }
    Ok(acc)
}

/// For each requested degree N, the defect
/// `|| exp(H_N(X, Y)) - exp(X) exp(Y) ||_F`, reported in ascending N.
///
/// Inputs must satisfy `||X||_F + ||Y||_F <= 1` (convergence regime).
pub fn truncation_error_curve(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    degrees: &[u32],
) -> Result<Vec<(u32, f64)>, BchError> {
    if x.dim() != y.dim() {
        return Err(BchError::Shape);
    }
    if x.frobenius_norm() + y.frobenius_norm() > 1.0 {
        return Err(BchError::DivergenceRisk);
    }
    let mut order: Vec<u32> = degrees.to_vec();
    order.sort_unstable();
    let target = expm(x)?.matmul(&expm(y)?)?;
    let mut curve = Vec::with_capacity(order.len());
    for &n in &order {
        let h = dynkin_sum(x, y, n)?;
        let err = (&expm(&h)? - &target).frobenius_norm();
        curve.push((n, err));
    }
    Ok(curve)
}
