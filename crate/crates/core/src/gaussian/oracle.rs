//! Mutual information of jointly Gaussian inputs through log-determinants.
//!
//! This path never touches the closed forms of the outer region; it builds
//! the input covariance for a relay split and conditions the receiver
//! output on input subsets through Gram determinants.

use std::str::FromStr;

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{BetaSplit, GaussianChannel, RawGaussianChannel, NORMALIZATION_TOL};

const PSD_TOL: f64 = 1e-10;
/// Gram determinant below which a conditioning variable is treated as a
/// linear combination of the ones already kept.
const RANK_TOL: f64 = 1e-10;

const X1: usize = 0;
const X2: usize = 1;
const XC: usize = 2;

/// Covariance `E[X X^H]` of the inputs `(X1, X2, Xc)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianCovariance(Matrix3<Complex64>);

impl GaussianCovariance {
    pub fn new(m: Matrix3<Complex64>) -> Result<Self> {
        let herm_err = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm_err > PSD_TOL {
            return Err(Error::ShapeMismatch(format!(
                "covariance is not Hermitian (error {herm_err:e})"
            )));
        }
        for i in 0..3 {
            if m[(i, i)].re > 1.0 + PSD_TOL {
                return Err(Error::ShapeMismatch(format!(
                    "input {i} exceeds unit power: {}",
                    m[(i, i)].re
                )));
            }
        }
        let eig = m.symmetric_eigenvalues();
        if let Some(&min) = eig.iter().min_by(|a, b| a.total_cmp(b)) {
            if min < -PSD_TOL {
                return Err(Error::ShapeMismatch(format!(
                    "covariance is not positive semidefinite (eigenvalue {min:e})"
                )));
            }
        }
        Ok(GaussianCovariance(m))
    }

    /// Unit-power independent `X1`, `X2` and `Xc = b1c X1 + b2c X2 + W`
    /// with `W` independent of power `1 - |b1c|^2 - |b2c|^2`.
    pub fn from_beta(beta: &BetaSplit) -> Result<Self> {
        let n = beta.norm_sqr();
        if !n.is_finite() || n > 1.0 + NORMALIZATION_TOL {
            return Err(Error::InvalidBeta { norm_sqr: n });
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(Matrix3::new(
            one,
            zero,
            beta.b1c.conj(),
            zero,
            one,
            beta.b2c.conj(),
            beta.b1c,
            beta.b2c,
            one,
        ))
    }

    /// Rescales input `i` to power `p[i]`.
    pub fn with_powers(&self, p: [f64; 3]) -> Matrix3<Complex64> {
        let mut m = self.0;
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] *= (p[i] * p[j]).sqrt();
            }
        }
        m
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.0
    }
}

/// Information expressions the oracle can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MiExpression {
    /// `I(Y1; X1, Xc | X2)`
    Y1OwnGivenOther,
    /// `I(Y2; X2, Xc | X1)`
    Y2OwnGivenOther,
    /// `I(Y1; X1, X2, Xc)`
    Y1AllInputs,
    /// `I(Y2; X1, X2, Xc)`
    Y2AllInputs,
    /// `I(Y1; X2, Xc | X1)`
    Y1OtherGivenOwn,
}

impl MiExpression {
    pub const ALL: [MiExpression; 5] = [
        MiExpression::Y1OwnGivenOther,
        MiExpression::Y2OwnGivenOther,
        MiExpression::Y1AllInputs,
        MiExpression::Y2AllInputs,
        MiExpression::Y1OtherGivenOwn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MiExpression::Y1OwnGivenOther => "I(Y1;X1,Xc|X2)",
            MiExpression::Y2OwnGivenOther => "I(Y2;X2,Xc|X1)",
            MiExpression::Y1AllInputs => "I(Y1;X1,X2,Xc)",
            MiExpression::Y2AllInputs => "I(Y2;X1,X2,Xc)",
            MiExpression::Y1OtherGivenOwn => "I(Y1;X2,Xc|X1)",
        }
    }

    /// `(receiver, about, given)`.
    fn parts(self) -> (u8, &'static [usize], &'static [usize]) {
        match self {
            MiExpression::Y1OwnGivenOther => (1, &[X1, XC], &[X2]),
            MiExpression::Y2OwnGivenOther => (2, &[X2, XC], &[X1]),
            MiExpression::Y1AllInputs => (1, &[X1, X2, XC], &[]),
            MiExpression::Y2AllInputs => (2, &[X1, X2, XC], &[]),
            MiExpression::Y1OtherGivenOwn => (1, &[X2, XC], &[X1]),
        }
    }
}

impl FromStr for MiExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        MiExpression::ALL
            .into_iter()
            .find(|e| e.as_str() == compact)
            .ok_or_else(|| Error::UnknownExpression(s.to_string()))
    }
}

/// Conditional variance of `Y = g . X + Z` given the inputs in `given`.
fn conditional_variance(
    gains: &[Complex64; 3],
    cov: &Matrix3<Complex64>,
    noise: f64,
    given: &[usize],
) -> f64 {
    // keep a linearly independent subset of the conditioning inputs
    let mut kept: Vec<usize> = Vec::new();
    for &i in given {
        let mut trial = kept.clone();
        trial.push(i);
        let gram = DMatrix::from_fn(trial.len(), trial.len(), |r, c| cov[(trial[r], trial[c])]);
        if gram.determinant().re > RANK_TOL {
            kept = trial;
        }
    }

    let cross = |k: usize| -> Complex64 { (0..3).map(|j| gains[j] * cov[(j, k)]).sum() };
    let var_y: f64 = (0..3)
        .map(|k| cross(k) * gains[k].conj())
        .sum::<Complex64>()
        .re
        + noise;

    let n = kept.len();
    let joint = DMatrix::from_fn(n + 1, n + 1, |r, c| match (r, c) {
        (0, 0) => Complex64::new(var_y, 0.0),
        (0, c) => cross(kept[c - 1]),
        (r, 0) => cross(kept[r - 1]).conj(),
        (r, c) => cov[(kept[r - 1], kept[c - 1])],
    });
    let marginal = DMatrix::from_fn(n, n, |r, c| cov[(kept[r], kept[c])]);
    let det_joint = joint.determinant().re;
    let det_marginal = if n == 0 { 1.0 } else { marginal.determinant().re };
    det_joint / det_marginal
}

fn mi_bits(gains: [Complex64; 3], cov: &Matrix3<Complex64>, noise: f64, expr: MiExpression) -> f64 {
    let (_, about, given) = expr.parts();
    let mut all: Vec<usize> = given.to_vec();
    all.extend_from_slice(about);
    let before = conditional_variance(&gains, cov, noise, given);
    let after = conditional_variance(&gains, cov, noise, &all);
    (before / after).log2()
}

/// Evaluates `expr` in bits for a standard-form channel and relay split.
pub fn gaussian_mi_oracle(ch: &GaussianChannel, beta: &BetaSplit, expr: MiExpression) -> Result<f64> {
    let cov = GaussianCovariance::from_beta(beta)?;
    let real = |x: f64| Complex64::new(x, 0.0);
    let gains = match expr.parts().0 {
        1 => [real(ch.h11), ch.h12, real(ch.h1c)],
        _ => [ch.h21, real(ch.h22), real(ch.h2c)],
    };
    Ok(mi_bits(gains, cov.matrix(), 1.0, expr))
}

/// Evaluates `expr` in bits on a raw channel, with `beta` splitting the
/// relay's power-normalized signal.
pub fn raw_mi_oracle(raw: &RawGaussianChannel, beta: &BetaSplit, expr: MiExpression) -> Result<f64> {
    let raw = raw.validate()?;
    let cov = GaussianCovariance::from_beta(beta)?.with_powers([raw.p1, raw.p2, raw.pc]);
    let (gains, noise) = match expr.parts().0 {
        1 => ([raw.h11, raw.h12, raw.h1c], raw.noise1),
        _ => ([raw.h21, raw.h22, raw.h2c], raw.noise2),
    };
    Ok(mi_bits(gains, &cov, noise, expr))
}
