//! Dense joint pmfs with named axes, entropies and conditional mutual
//! information.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{LogBase, MAX_ATOMS, NORMALIZATION_TOL};

/// Random variable naming one axis of a [`JointPmf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    U1,
    U2,
    X1,
    X2,
    Xc,
    Y1,
    Y2,
    /// `i`-th letter (1-based) of the output sequence at receiver 1.
    Y1At(usize),
    /// `i`-th letter (1-based) of the output sequence at receiver 2.
    Y2At(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Y1At(i) => write!(f, "Y1_{i}"),
            Var::Y2At(i) => write!(f, "Y2_{i}"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Round-off scale below which a negative information value is reported as 0.
const CLAMP: f64 = 1e-12;

/// Probability tensor over an ordered list of variables, row-major in that
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct JointPmf {
    vars: Vec<Var>,
    sizes: Vec<usize>,
    p: Vec<f64>,
}

fn compensated_sum(xs: &[f64]) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for &x in xs {
        let y = x - c;
        let t = s + y;
        c = (t - s) - y;
        s = t;
    }
    s
}

impl JointPmf {
    pub fn new(vars: Vec<Var>, sizes: Vec<usize>, p: Vec<f64>) -> Result<Self> {
        if vars.len() != sizes.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} variables but {} sizes",
                vars.len(),
                sizes.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::ShapeMismatch(format!("variable {v} listed twice")));
            }
        }
        if sizes.contains(&0) {
            return Err(Error::ShapeMismatch("zero-size axis".into()));
        }
        let atoms = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        match atoms {
            Some(n) if n <= MAX_ATOMS => {
                if n != p.len() {
                    return Err(Error::ShapeMismatch(format!(
                        "{} probabilities for {n} atoms",
                        p.len()
                    )));
                }
            }
            _ => {
                return Err(Error::ShapeMismatch(format!(
                    "joint over {sizes:?} exceeds {MAX_ATOMS} atoms"
                )))
            }
        }
        if let Some((i, &v)) = p.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
            return Err(Error::NegativeProbability {
                location: format!("atom {i}"),
                value: v,
            });
        }
        let total = compensated_sum(&p);
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                slice: "joint".into(),
                sum: total,
                deviation: (total - 1.0).abs(),
            });
        }
        Ok(JointPmf { vars, sizes, p })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    pub fn size_of(&self, v: Var) -> Option<usize> {
        self.axis(v).map(|a| self.sizes[a])
    }

    fn axis(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    fn axes_of(&self, set: &[Var]) -> Result<Vec<usize>> {
        set.iter()
            .map(|&v| self.axis(v).ok_or_else(|| Error::VariableNotPresent(v.to_string())))
            .collect()
    }

    /// Marginal pmf over the axes in `keep`, which must be in ascending
    /// joint order. Contributions are accumulated in row-major order.
    fn marginal_axes(&self, keep: &[usize]) -> Vec<f64> {
        let r = self.sizes.len();
        let mut target_stride = vec![0usize; r];
        let mut stride = 1usize;
        for &a in keep.iter().rev() {
            target_stride[a] = stride;
            stride *= self.sizes[a];
        }
        let mut out = vec![0.0; stride];
        let mut idx = vec![0usize; r];
        let mut target = 0usize;
        for &v in &self.p {
            out[target] += v;
            // odometer increment
            for a in (0..r).rev() {
                idx[a] += 1;
                target += target_stride[a];
                if idx[a] < self.sizes[a] {
                    break;
                }
                target -= target_stride[a] * idx[a];
                idx[a] = 0;
            }
        }
        out
    }

    /// Marginal over `set`, axes kept in joint order.
    pub fn marginal(&self, set: &[Var]) -> Result<JointPmf> {
        let mut axes = self.axes_of(set)?;
        axes.sort_unstable();
        axes.dedup();
        let p = self.marginal_axes(&axes);
        Ok(JointPmf {
            vars: axes.iter().map(|&a| self.vars[a]).collect(),
            sizes: axes.iter().map(|&a| self.sizes[a]).collect(),
            p,
        })
    }

    fn entropy_axes(&self, mut axes: Vec<usize>, base: LogBase) -> f64 {
        axes.sort_unstable();
        axes.dedup();
        if axes.is_empty() {
            return 0.0;
        }
        self.marginal_axes(&axes)
            .into_iter()
            .filter(|&p| p > 0.0)
            .map(|p| -p * base.log(p))
            .sum()
    }

    /// Joint entropy `H(set)`.
    pub fn entropy(&self, set: &[Var], base: LogBase) -> Result<f64> {
        let axes = self.axes_of(set)?;
        Ok(self.entropy_axes(axes, base))
    }

    /// `I(left; right | given)`.
    pub fn mutual_information(
        &self,
        left: &[Var],
        right: &[Var],
        given: &[Var],
        base: LogBase,
    ) -> Result<f64> {
        let (l, r, g) = (self.axes_of(left)?, self.axes_of(right)?, self.axes_of(given)?);
        for (i, v) in left.iter().chain(right).chain(given).enumerate() {
            if left.iter().chain(right).chain(given).take(i).any(|w| w == v) {
                return Err(Error::OverlappingSets(v.to_string()));
            }
        }
        if l.is_empty() || r.is_empty() {
            return Ok(0.0);
        }
        let join = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().chain(b).copied().collect() };
        let h_lg = self.entropy_axes(join(&l, &g), base);
        let h_rg = self.entropy_axes(join(&r, &g), base);
        let h_lrg = self.entropy_axes(join(&join(&l, &r), &g), base);
        let h_g = self.entropy_axes(g, base);
        let mi = h_lg + h_rg - h_lrg - h_g;
        Ok(if mi < 0.0 && mi > -CLAMP { 0.0 } else { mi })
    }
}
