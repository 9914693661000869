//! Channel models, input distributions and rate-region shapes.
//!
//! Everything here is plain data plus validation. A value that made it
//! through a constructor satisfies its invariants and is never mutated
//! afterwards, so it can be shared freely between worker threads.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on the sum of every conditional probability slice.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Largest alphabet accepted for inputs, auxiliaries and time sharing.
pub const MAX_ALPHABET: usize = 8;

/// Largest dense joint tensor the discrete evaluators will build.
pub const MAX_ATOMS: usize = 10_000_000;

/// Logarithm base used for rates and information quantities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Bits => x.log2(),
            LogBase::Nats => x.ln(),
        }
    }

    /// `log(1 + x)` in this base, accurate for small `x`.
    pub fn log1p(self, x: f64) -> f64 {
        match self {
            LogBase::Bits => x.ln_1p() / std::f64::consts::LN_2,
            LogBase::Nats => x.ln_1p(),
        }
    }

    /// Converts a quantity expressed in bits to this base.
    pub fn from_bits(self, bits: f64) -> f64 {
        match self {
            LogBase::Bits => bits,
            LogBase::Nats => bits * std::f64::consts::LN_2,
        }
    }
}

/// Exchange of the two source/destination pairs.
pub trait SwapRoles {
    fn swap_roles(&self) -> Self;
}

fn finite(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { field })
    }
}

fn finite_c(field: &'static str, v: Complex64) -> Result<()> {
    finite(field, v.re)?;
    finite(field, v.im)
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    finite(field, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { field, value: v })
    }
}

/// Gaussian channel with arbitrary complex gains, input powers and noise
/// variances:
///
/// `Y1 = h11 X1 + h1c Xc + h12 X2 + Z1`, `Y2 = h22 X2 + h2c Xc + h21 X1 + Z2`
/// with `E|Xj|^2 <= Pj` and `E|Zk|^2 = noise_k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawGaussianChannel {
    pub h11: Complex64,
    pub h12: Complex64,
    pub h1c: Complex64,
    pub h21: Complex64,
    pub h22: Complex64,
    pub h2c: Complex64,
    pub p1: f64,
    pub p2: f64,
    pub pc: f64,
    pub noise1: f64,
    pub noise2: f64,
}

impl RawGaussianChannel {
    pub fn validate(self) -> Result<Self> {
        finite_c("h11", self.h11)?;
        finite_c("h12", self.h12)?;
        finite_c("h1c", self.h1c)?;
        finite_c("h21", self.h21)?;
        finite_c("h22", self.h22)?;
        finite_c("h2c", self.h2c)?;
        positive("p1", self.p1)?;
        positive("p2", self.p2)?;
        positive("pc", self.pc)?;
        positive("noise1", self.noise1)?;
        positive("noise2", self.noise2)?;
        Ok(self)
    }
}

impl SwapRoles for RawGaussianChannel {
    fn swap_roles(&self) -> Self {
        RawGaussianChannel {
            h11: self.h22,
            h12: self.h21,
            h1c: self.h2c,
            h21: self.h12,
            h22: self.h11,
            h2c: self.h1c,
            p1: self.p2,
            p2: self.p1,
            pc: self.pc,
            noise1: self.noise2,
            noise2: self.noise1,
        }
    }
}

/// Gaussian channel in standard form: unit input powers, unit noise, real
/// nonnegative direct and relay gains, complex cross gains.
///
/// `Y1 = h11 X1 + h1c Xc + h12 X2 + Z1`, `Y2 = h22 X2 + h2c Xc + h21 X1 + Z2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianChannel {
    pub h11: f64,
    pub h12: Complex64,
    pub h1c: f64,
    pub h21: Complex64,
    pub h22: f64,
    pub h2c: f64,
}

impl GaussianChannel {
    /// Channel with real cross gains.
    pub fn real(h11: f64, h12: f64, h1c: f64, h21: f64, h22: f64, h2c: f64) -> Self {
        GaussianChannel {
            h11,
            h12: Complex64::new(h12, 0.0),
            h1c,
            h21: Complex64::new(h21, 0.0),
            h22,
            h2c,
        }
    }

    pub fn all_unity() -> Self {
        Self::real(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    }

    pub fn validate(self) -> Result<Self> {
        for (field, v) in [
            ("h11", self.h11),
            ("h22", self.h22),
            ("h1c", self.h1c),
            ("h2c", self.h2c),
        ] {
            finite(field, v)?;
            if v < 0.0 {
                return Err(Error::NegativeMagnitude { field, value: v });
            }
        }
        finite_c("h12", self.h12)?;
        finite_c("h21", self.h21)?;
        Ok(self)
    }

    /// True when both cross gains are real and nonnegative.
    pub fn has_real_cross_gains(&self) -> bool {
        self.h12.im == 0.0 && self.h12.re >= 0.0 && self.h21.im == 0.0 && self.h21.re >= 0.0
    }
}

impl SwapRoles for GaussianChannel {
    fn swap_roles(&self) -> Self {
        GaussianChannel {
            h11: self.h22,
            h12: self.h21,
            h1c: self.h2c,
            h21: self.h12,
            h22: self.h11,
            h2c: self.h1c,
        }
    }
}

/// Relay power split: `Xc = b1c X1 + b2c X2` with unit-power, independent
/// `X1`, `X2`. The direct inputs always use full power and the relay
/// carries no private signal of its own.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaSplit {
    pub b1c: Complex64,
    pub b2c: Complex64,
}

impl BetaSplit {
    pub fn new(b1c: Complex64, b2c: Complex64) -> Result<Self> {
        let beta = BetaSplit { b1c, b2c };
        let n = beta.norm_sqr();
        if !n.is_finite() || n > 1.0 + NORMALIZATION_TOL {
            return Err(Error::InvalidBeta { norm_sqr: n });
        }
        Ok(beta)
    }

    pub fn real(b1c: f64, b2c: f64) -> Result<Self> {
        Self::new(Complex64::new(b1c, 0.0), Complex64::new(b2c, 0.0))
    }

    /// Point on the unit sphere: `b1c = sin(t) e^{i phi1}`, `b2c = cos(t) e^{i phi2}`.
    pub fn on_sphere(t: f64, phi1: f64, phi2: f64) -> Self {
        BetaSplit {
            b1c: Complex64::from_polar(t.sin(), phi1),
            b2c: Complex64::from_polar(t.cos(), phi2),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.b1c.norm_sqr() + self.b2c.norm_sqr()
    }

    pub fn is_on_sphere(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }
}

impl SwapRoles for BetaSplit {
    fn swap_roles(&self) -> Self {
        BetaSplit {
            b1c: self.b2c,
            b2c: self.b1c,
        }
    }
}

/// Alphabet sizes of a discrete channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetSizes {
    pub n1: usize,
    pub n2: usize,
    pub nc: usize,
    pub m1: usize,
    pub m2: usize,
}

impl AlphabetSizes {
    pub fn new(n1: usize, n2: usize, nc: usize, m1: usize, m2: usize) -> Self {
        AlphabetSizes { n1, n2, nc, m1, m2 }
    }

    pub fn inputs(&self) -> usize {
        self.n1 * self.n2 * self.nc
    }

    pub fn outputs(&self) -> usize {
        self.m1 * self.m2
    }

    fn check(&self) -> Result<()> {
        for (name, size) in [("X1", self.n1), ("X2", self.n2), ("Xc", self.nc)] {
            if size == 0 || size > MAX_ALPHABET {
                return Err(Error::AlphabetSize {
                    name,
                    size,
                    max: MAX_ALPHABET,
                });
            }
        }
        for (name, size) in [("Y1", self.m1), ("Y2", self.m2)] {
            if size == 0 {
                return Err(Error::AlphabetSize {
                    name,
                    size,
                    max: MAX_ATOMS,
                });
            }
        }
        if self.inputs().saturating_mul(self.outputs()) > MAX_ATOMS {
            return Err(Error::ShapeMismatch(format!(
                "transition tensor with {} x {} entries exceeds {MAX_ATOMS}",
                self.inputs(),
                self.outputs()
            )));
        }
        Ok(())
    }
}

/// Discrete memoryless channel `P(y1, y2 | x1, x2, xc)`.
///
/// The tensor is stored row-major in `(y1, y2, x1, x2, xc)` order, the same
/// layout used by the JSON channel files.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteChannel {
    sizes: AlphabetSizes,
    t: Vec<f64>,
}

impl DiscreteChannel {
    /// Builds and validates a channel from a flat `(y1, y2, x1, x2, xc)` tensor.
    pub fn new(sizes: AlphabetSizes, t: Vec<f64>) -> Result<Self> {
        DiscreteChannel { sizes, t }.validate()
    }

    /// Noiseless channel whose outputs are a function of the inputs.
    pub fn deterministic<F>(sizes: AlphabetSizes, f: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize) -> (usize, usize),
    {
        let mut t = vec![0.0; sizes.inputs() * sizes.outputs()];
        let stride = sizes.inputs();
        for x1 in 0..sizes.n1 {
            for x2 in 0..sizes.n2 {
                for xc in 0..sizes.nc {
                    let (y1, y2) = f(x1, x2, xc);
                    if y1 >= sizes.m1 || y2 >= sizes.m2 {
                        return Err(Error::ShapeMismatch(format!(
                            "output ({y1}, {y2}) outside alphabets ({}, {})",
                            sizes.m1, sizes.m2
                        )));
                    }
                    let x = (x1 * sizes.n2 + x2) * sizes.nc + xc;
                    t[(y1 * sizes.m2 + y2) * stride + x] = 1.0;
                }
            }
        }
        Self::new(sizes, t)
    }

    pub fn validate(self) -> Result<Self> {
        let s = self.sizes;
        s.check()?;
        let expected = s.inputs() * s.outputs();
        if self.t.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "transition tensor has {} entries, sizes {:?} need {expected}",
                self.t.len(),
                [s.n1, s.n2, s.nc, s.m1, s.m2]
            )));
        }
        let stride = s.inputs();
        for (i, &v) in self.t.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { field: "t" });
            }
            if v < 0.0 {
                return Err(Error::NegativeProbability {
                    location: format!("t[{i}]"),
                    value: v,
                });
            }
            if v > 1.0 {
                return Err(Error::NotNormalized {
                    slice: format!("t[{i}]"),
                    sum: v,
                    deviation: v - 1.0,
                });
            }
        }
        // Report the worst slice rather than the first offending one.
        let mut worst: Option<(usize, f64)> = None;
        for x in 0..stride {
            let sum: f64 = (0..s.outputs()).map(|y| self.t[y * stride + x]).sum();
            let dev = (sum - 1.0).abs();
            if dev > NORMALIZATION_TOL && worst.is_none_or(|(_, w)| dev > (w - 1.0).abs()) {
                worst = Some((x, sum));
            }
        }
        if let Some((x, sum)) = worst {
            let xc = x % s.nc;
            let x2 = (x / s.nc) % s.n2;
            let x1 = x / (s.nc * s.n2);
            return Err(Error::NotNormalized {
                slice: format!("(x1={x1}, x2={x2}, xc={xc})"),
                sum,
                deviation: (sum - 1.0).abs(),
            });
        }
        Ok(self)
    }

    pub fn sizes(&self) -> AlphabetSizes {
        self.sizes
    }

    /// Flat tensor in `(y1, y2, x1, x2, xc)` order.
    pub fn tensor(&self) -> &[f64] {
        &self.t
    }

    pub fn prob(&self, y1: usize, y2: usize, x1: usize, x2: usize, xc: usize) -> f64 {
        let s = self.sizes;
        self.t[(y1 * s.m2 + y2) * s.inputs() + (x1 * s.n2 + x2) * s.nc + xc]
    }
}

impl SwapRoles for DiscreteChannel {
    fn swap_roles(&self) -> Self {
        let s = self.sizes;
        let swapped = AlphabetSizes::new(s.n2, s.n1, s.nc, s.m2, s.m1);
        let mut t = vec![0.0; self.t.len()];
        let stride = swapped.inputs();
        for y1 in 0..s.m1 {
            for y2 in 0..s.m2 {
                for x1 in 0..s.n1 {
                    for x2 in 0..s.n2 {
                        for xc in 0..s.nc {
                            let dst = (y2 * swapped.m2 + y1) * stride + (x2 * swapped.n2 + x1) * s.nc + xc;
                            t[dst] = self.prob(y1, y2, x1, x2, xc);
                        }
                    }
                }
            }
        }
        DiscreteChannel { sizes: swapped, t }
    }
}

fn check_pmf(name: &str, p: &[f64]) -> Result<()> {
    for (i, &v) in p.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { field: "probability" });
        }
        if v < 0.0 {
            return Err(Error::NegativeProbability {
                location: format!("{name}[{i}]"),
                value: v,
            });
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            slice: name.to_string(),
            sum,
            deviation: (sum - 1.0).abs(),
        });
    }
    Ok(())
}

fn check_alphabet(name: &'static str, size: usize) -> Result<()> {
    if size == 0 || size > MAX_ALPHABET {
        Err(Error::AlphabetSize {
            name,
            size,
            max: MAX_ALPHABET,
        })
    } else {
        Ok(())
    }
}

/// Input law `P(x1) P(x2) P(xc | x1, x2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductInputDistribution {
    p1: Vec<f64>,
    p2: Vec<f64>,
    /// Row-major `(x1, x2, xc)`; each `xc` slice is a pmf.
    pc: Vec<f64>,
    nc: usize,
}

impl ProductInputDistribution {
    /// `pc` is flat in `(x1, x2, xc)` order.
    pub fn new(p1: Vec<f64>, p2: Vec<f64>, nc: usize, pc: Vec<f64>) -> Result<Self> {
        check_alphabet("X1", p1.len())?;
        check_alphabet("X2", p2.len())?;
        check_alphabet("Xc", nc)?;
        if pc.len() != p1.len() * p2.len() * nc {
            return Err(Error::ShapeMismatch(format!(
                "relay conditional has {} entries, expected {}",
                pc.len(),
                p1.len() * p2.len() * nc
            )));
        }
        check_pmf("p1", &p1)?;
        check_pmf("p2", &p2)?;
        for x1 in 0..p1.len() {
            for x2 in 0..p2.len() {
                let start = (x1 * p2.len() + x2) * nc;
                check_pmf(&format!("pc[.|x1={x1},x2={x2}]"), &pc[start..start + nc])?;
            }
        }
        Ok(ProductInputDistribution { p1, p2, pc, nc })
    }

    /// Relay input as a deterministic function of `(x1, x2)`.
    pub fn with_function<F>(p1: Vec<f64>, p2: Vec<f64>, nc: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        let mut pc = vec![0.0; p1.len() * p2.len() * nc];
        for x1 in 0..p1.len() {
            for x2 in 0..p2.len() {
                let xc = f(x1, x2);
                if xc >= nc {
                    return Err(Error::ShapeMismatch(format!("relay symbol {xc} >= {nc}")));
                }
                pc[(x1 * p2.len() + x2) * nc + xc] = 1.0;
            }
        }
        Self::new(p1, p2, nc, pc)
    }

    pub fn uniform(n1: usize, n2: usize, nc: usize) -> Result<Self> {
        Self::new(
            vec![1.0 / n1 as f64; n1],
            vec![1.0 / n2 as f64; n2],
            nc,
            vec![1.0 / nc as f64; n1 * n2 * nc],
        )
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    pub fn p2(&self) -> &[f64] {
        &self.p2
    }

    pub fn n1(&self) -> usize {
        self.p1.len()
    }

    pub fn n2(&self) -> usize {
        self.p2.len()
    }

    pub fn nc(&self) -> usize {
        self.nc
    }

    /// `P(xc | x1, x2)` as a slice over `xc`.
    pub fn relay_given(&self, x1: usize, x2: usize) -> &[f64] {
        let start = (x1 * self.p2.len() + x2) * self.nc;
        &self.pc[start..start + self.nc]
    }

    /// True when every relay slice is a point mass.
    pub fn relay_is_deterministic(&self) -> bool {
        self.pc.iter().all(|&v| v == 0.0 || v == 1.0)
    }
}

impl SwapRoles for ProductInputDistribution {
    fn swap_roles(&self) -> Self {
        let (n1, n2, nc) = (self.n1(), self.n2(), self.nc);
        let mut pc = vec![0.0; self.pc.len()];
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let dst = (x2 * n1 + x1) * nc;
                pc[dst..dst + nc].copy_from_slice(self.relay_given(x1, x2));
            }
        }
        ProductInputDistribution {
            p1: self.p2.clone(),
            p2: self.p1.clone(),
            pc,
            nc,
        }
    }
}

/// Distribution over `(Q, X1, X2, Xc, U1, U2)` factoring as
/// `P(q) P(x1|q) P(x2|q) P(xc|x1,x2,q) P(u1,u2|x1,x2,xc,q)`.
///
/// No cardinality bound is known for `Q`, `U1`, `U2`; sizes are whatever
/// the caller declares.
#[derive(Clone, Debug, PartialEq)]
pub struct Th1Distribution {
    q: Vec<f64>,
    inputs: Vec<ProductInputDistribution>,
    k1: usize,
    k2: usize,
    /// Row-major `(q, x1, x2, xc, u1, u2)`.
    u: Vec<f64>,
}

impl Th1Distribution {
    pub fn new(
        q: Vec<f64>,
        inputs: Vec<ProductInputDistribution>,
        k1: usize,
        k2: usize,
        u: Vec<f64>,
    ) -> Result<Self> {
        check_alphabet("Q", q.len())?;
        check_alphabet("U1", k1)?;
        check_alphabet("U2", k2)?;
        check_pmf("q", &q)?;
        if inputs.len() != q.len() {
            return Err(Error::FactorizationViolated(format!(
                "{} input laws for {} time-sharing values",
                inputs.len(),
                q.len()
            )));
        }
        let (n1, n2, nc) = (inputs[0].n1(), inputs[0].n2(), inputs[0].nc());
        if inputs
            .iter()
            .any(|d| d.n1() != n1 || d.n2() != n2 || d.nc() != nc)
        {
            return Err(Error::ShapeMismatch(
                "input laws disagree on alphabet sizes across q".into(),
            ));
        }
        let slices = q.len() * n1 * n2 * nc;
        if u.len() != slices * k1 * k2 {
            return Err(Error::ShapeMismatch(format!(
                "auxiliary conditional has {} entries, expected {}",
                u.len(),
                slices * k1 * k2
            )));
        }
        for s in 0..slices {
            check_pmf(&format!("u[.|slice {s}]"), &u[s * k1 * k2..(s + 1) * k1 * k2])?;
        }
        Ok(Th1Distribution {
            q,
            inputs,
            k1,
            k2,
            u,
        })
    }

    /// Singleton `Q`, `U1`, `U2` around a product input law.
    pub fn trivial(d: ProductInputDistribution) -> Self {
        let slices = d.n1() * d.n2() * d.nc();
        Th1Distribution {
            q: vec![1.0],
            inputs: vec![d],
            k1: 1,
            k2: 1,
            u: vec![1.0; slices],
        }
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn input(&self, q: usize) -> &ProductInputDistribution {
        &self.inputs[q]
    }

    pub fn aux_sizes(&self) -> (usize, usize) {
        (self.k1, self.k2)
    }

    /// `P(u1, u2 | x1, x2, xc, q)` flattened over `(u1, u2)`.
    pub fn aux_given(&self, q: usize, x1: usize, x2: usize, xc: usize) -> &[f64] {
        let d = &self.inputs[0];
        let s = ((q * d.n1() + x1) * d.n2() + x2) * d.nc() + xc;
        let k = self.k1 * self.k2;
        &self.u[s * k..(s + 1) * k]
    }
}

/// Rate region `{0 <= R1 <= r1_max, 0 <= R2 <= r2_max, R1 + R2 <= sum}`
/// where `sum` is the smaller of the one or two sum-rate bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pentagon {
    pub r1_max: f64,
    pub r2_max: f64,
    pub sum_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum_max2: Option<f64>,
}

impl Pentagon {
    pub fn new(r1_max: f64, r2_max: f64, sum_max: f64) -> Result<Self> {
        Pentagon {
            r1_max,
            r2_max,
            sum_max,
            sum_max2: None,
        }
        .validate()
    }

    pub fn with_second_sum(r1_max: f64, r2_max: f64, sum_max: f64, sum_max2: f64) -> Result<Self> {
        Pentagon {
            r1_max,
            r2_max,
            sum_max,
            sum_max2: Some(sum_max2),
        }
        .validate()
    }

    pub fn validate(self) -> Result<Self> {
        let mut fields = vec![
            ("r1_max", self.r1_max),
            ("r2_max", self.r2_max),
            ("sum_max", self.sum_max),
        ];
        if let Some(c2) = self.sum_max2 {
            fields.push(("sum_max2", c2));
        }
        for (field, value) in fields {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidPentagon { field, value });
            }
        }
        Ok(self)
    }

    /// Effective sum-rate bound.
    pub fn sum_bound(&self) -> f64 {
        match self.sum_max2 {
            Some(c2) => self.sum_max.min(c2),
            None => self.sum_max,
        }
    }

    /// Same region measured in `base` instead of bits.
    pub fn in_base(&self, base: LogBase) -> Self {
        Pentagon {
            r1_max: base.from_bits(self.r1_max),
            r2_max: base.from_bits(self.r2_max),
            sum_max: base.from_bits(self.sum_max),
            sum_max2: self.sum_max2.map(|c| base.from_bits(c)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    Neither,
    Strong,
    VeryStrong,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Neither => "NEITHER",
            Regime::Strong => "STRONG",
            Regime::VeryStrong => "VERY_STRONG",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which source/destination pair plays the role of user 1 in a test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum User {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl User {
    pub fn index(self) -> u8 {
        match self {
            User::One => 1,
            User::Two => 2,
        }
    }
}

/// Outcome of the strong / very strong interference tests for one user.
///
/// `very_strong_margin` is always computed, but `regime` is only
/// `VeryStrong` when the strong condition holds too.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeLabel {
    pub regime: Regime,
    pub user: User,
    pub strong_margin: f64,
    pub very_strong_margin: f64,
    pub strong_boundary: bool,
    pub very_strong_boundary: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(g: [f64; 6]) -> GaussianChannel {
        GaussianChannel::real(g[0], g[1], g[2], g[3], g[4], g[5])
    }

    #[test]
    fn gaussian_validation() {
        assert!(GaussianChannel::all_unity().validate().is_ok());
        let mut bad = GaussianChannel::all_unity();
        bad.h11 = -1.0;
        assert!(matches!(
            bad.validate(),
            Err(Error::NegativeMagnitude { field: "h11", .. })
        ));
        let mut complex = GaussianChannel::all_unity();
        complex.h12 = Complex64::new(3.0, 4.0);
        assert!(complex.validate().is_ok());
        let mut nan = GaussianChannel::all_unity();
        nan.h21 = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(nan.validate(), Err(Error::NonFinite { field: "h21" })));
        let mut inf = GaussianChannel::all_unity();
        inf.h2c = f64::INFINITY;
        assert!(matches!(inf.validate(), Err(Error::NonFinite { field: "h2c" })));
    }

    #[test]
    fn raw_validation() {
        let one = Complex64::new(1.0, 0.0);
        let raw = RawGaussianChannel {
            h11: one,
            h12: one,
            h1c: one,
            h21: one,
            h22: one,
            h2c: one,
            p1: 1.0,
            p2: 1.0,
            pc: 0.0,
            noise1: 1.0,
            noise2: 1.0,
        };
        assert!(matches!(
            raw.validate(),
            Err(Error::NonPositive { field: "pc", .. })
        ));
    }

    #[test]
    fn gaussian_swap() {
        let c = ch([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(c.swap_roles(), ch([5.0, 4.0, 6.0, 2.0, 1.0, 3.0]));
        assert_eq!(c.swap_roles().swap_roles(), c);
        let sym = ch([1.5, 0.7, 2.0, 0.7, 1.5, 2.0]);
        assert_eq!(sym.swap_roles(), sym);
    }

    #[test]
    fn discrete_validation() {
        let s = AlphabetSizes::new(1, 1, 1, 1, 1);
        assert!(DiscreteChannel::new(s, vec![1.0]).is_ok());

        let s = AlphabetSizes::new(2, 2, 2, 2, 2);
        assert!(DiscreteChannel::new(s, vec![0.25; 32]).is_ok());

        let mut t = vec![0.25; 32];
        // slice (x1,x2,xc) = (0,0,0) lives at stride offsets 0, 8, 16, 24
        t[0] = 0.15;
        match DiscreteChannel::new(s, t) {
            Err(Error::NotNormalized { deviation, slice, .. }) => {
                assert!((deviation - 0.1).abs() < 1e-12);
                assert!(slice.contains("x1=0, x2=0, xc=0"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let mut t = vec![0.25; 32];
        t[1] = -0.25;
        t[9] = 0.75;
        assert!(matches!(
            DiscreteChannel::new(s, t),
            Err(Error::NegativeProbability { .. })
        ));

        assert!(matches!(
            DiscreteChannel::new(s, vec![0.25; 31]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn discrete_swap_is_involution() {
        let s = AlphabetSizes::new(2, 3, 2, 4, 3);
        let c = DiscreteChannel::deterministic(s, |x1, x2, xc| ((x1 + x2 + xc) % 4, x2)).unwrap();
        let sw = c.swap_roles();
        assert_eq!(sw.sizes(), AlphabetSizes::new(3, 2, 2, 3, 4));
        assert_eq!(sw.prob(1, 0, 1, 0, 1), c.prob(0, 1, 0, 1, 1));
        assert_eq!(sw.swap_roles(), c);
    }

    #[test]
    fn beta_split_bounds() {
        assert!(BetaSplit::real(0.6, 0.8).is_ok());
        assert!(BetaSplit::real(0.8, 0.8).is_err());
        let b = BetaSplit::on_sphere(0.3, 1.0, -2.0);
        assert!(b.is_on_sphere(1e-14));
    }

    #[test]
    fn pentagon_rejects_negative() {
        assert!(Pentagon::new(1.0, -0.1, 1.0).is_err());
        let p = Pentagon::with_second_sum(2.0, 2.0, 3.0, 2.5).unwrap();
        assert_eq!(p.sum_bound(), 2.5);
    }

    #[test]
    fn product_distribution_checks() {
        assert!(ProductInputDistribution::uniform(2, 3, 2).is_ok());
        let bad = ProductInputDistribution::new(vec![0.5, 0.6], vec![1.0], 1, vec![1.0, 1.0]);
        assert!(matches!(bad, Err(Error::NotNormalized { .. })));
        let d = ProductInputDistribution::with_function(vec![0.5, 0.5], vec![0.5, 0.5], 2, |a, b| a ^ b)
            .unwrap();
        assert!(d.relay_is_deterministic());
        assert_eq!(d.relay_given(1, 0), &[0.0, 1.0]);
        assert_eq!(d.swap_roles().swap_roles(), d);
    }
}
