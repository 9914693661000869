//! JSON channel/distribution files and number formatting for CSV output.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::model::{
    AlphabetSizes, DiscreteChannel, GaussianChannel, ProductInputDistribution, RawGaussianChannel,
};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(#[from] crate::Error),
}

/// Formats a float with 12 significant digits, trailing zeros removed,
/// in the style of C's `%.12g`. Output never depends on locale.
pub fn fmt_sig(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

/// A complex gain written either as a bare number or as `{"re": .., "im": ..}`.
#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Parts {
        re: f64,
        #[serde(default)]
        im: f64,
    },
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        match v {
            ComplexValue::Real(re) => Complex64::new(re, 0.0),
            ComplexValue::Parts { re, im } => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        ComplexValue::Parts { re: c.re, im: c.im }
    }
}

/// On-disk channel description, discriminated by `"kind"`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    Gaussian {
        h11: f64,
        h12: ComplexValue,
        h1c: f64,
        h21: ComplexValue,
        h22: f64,
        h2c: f64,
    },
    RawGaussian {
        h11: ComplexValue,
        h12: ComplexValue,
        h1c: ComplexValue,
        h21: ComplexValue,
        h22: ComplexValue,
        h2c: ComplexValue,
        p1: f64,
        p2: f64,
        pc: f64,
        noise1: f64,
        noise2: f64,
    },
    Discrete {
        sizes: [usize; 5],
        t: Vec<f64>,
    },
}

/// A validated channel of either kind.
#[derive(Clone, Debug)]
pub enum Channel {
    Gaussian(GaussianChannel),
    RawGaussian(RawGaussianChannel),
    Discrete(DiscreteChannel),
}

impl ChannelSpec {
    pub fn into_channel(self) -> crate::Result<Channel> {
        Ok(match self {
            ChannelSpec::Gaussian {
                h11,
                h12,
                h1c,
                h21,
                h22,
                h2c,
            } => Channel::Gaussian(
                GaussianChannel {
                    h11,
                    h12: h12.into(),
                    h1c,
                    h21: h21.into(),
                    h22,
                    h2c,
                }
                .validate()?,
            ),
            ChannelSpec::RawGaussian {
                h11,
                h12,
                h1c,
                h21,
                h22,
                h2c,
                p1,
                p2,
                pc,
                noise1,
                noise2,
            } => Channel::RawGaussian(
                RawGaussianChannel {
                    h11: h11.into(),
                    h12: h12.into(),
                    h1c: h1c.into(),
                    h21: h21.into(),
                    h22: h22.into(),
                    h2c: h2c.into(),
                    p1,
                    p2,
                    pc,
                    noise1,
                    noise2,
                }
                .validate()?,
            ),
            ChannelSpec::Discrete { sizes, t } => {
                let [n1, n2, nc, m1, m2] = sizes;
                Channel::Discrete(DiscreteChannel::new(
                    AlphabetSizes::new(n1, n2, nc, m1, m2),
                    t,
                )?)
            }
        })
    }
}

impl From<&GaussianChannel> for ChannelSpec {
    fn from(ch: &GaussianChannel) -> Self {
        ChannelSpec::Gaussian {
            h11: ch.h11,
            h12: ch.h12.into(),
            h1c: ch.h1c,
            h21: ch.h21.into(),
            h22: ch.h22,
            h2c: ch.h2c,
        }
    }
}

impl From<&DiscreteChannel> for ChannelSpec {
    fn from(ch: &DiscreteChannel) -> Self {
        let s = ch.sizes();
        ChannelSpec::Discrete {
            sizes: [s.n1, s.n2, s.nc, s.m1, s.m2],
            t: ch.tensor().to_vec(),
        }
    }
}

pub fn parse_channel(json: &str) -> Result<Channel, LoadError> {
    let spec: ChannelSpec = serde_json::from_str(json)?;
    Ok(spec.into_channel()?)
}

pub fn read_channel(path: &std::path::Path) -> Result<Channel, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_channel(&text)
}

/// On-disk product input law. `pc` is indexed `pc[xc][x1][x2]`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSpec {
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    pub pc: Vec<Vec<Vec<f64>>>,
}

impl DistributionSpec {
    pub fn into_distribution(self) -> crate::Result<ProductInputDistribution> {
        let (n1, n2, nc) = (self.p1.len(), self.p2.len(), self.pc.len());
        let mut flat = vec![0.0; n1 * n2 * nc];
        for (xc, plane) in self.pc.iter().enumerate() {
            if plane.len() != n1 || plane.iter().any(|row| row.len() != n2) {
                return Err(crate::Error::ShapeMismatch(format!(
                    "pc[{xc}] must be {n1} x {n2}"
                )));
            }
            for (x1, row) in plane.iter().enumerate() {
                for (x2, &v) in row.iter().enumerate() {
                    flat[(x1 * n2 + x2) * nc + xc] = v;
                }
            }
        }
        ProductInputDistribution::new(self.p1, self.p2, nc, flat)
    }
}

impl From<&ProductInputDistribution> for DistributionSpec {
    fn from(d: &ProductInputDistribution) -> Self {
        let pc = (0..d.nc())
            .map(|xc| {
                (0..d.n1())
                    .map(|x1| (0..d.n2()).map(|x2| d.relay_given(x1, x2)[xc]).collect())
                    .collect()
            })
            .collect();
        DistributionSpec {
            p1: d.p1().to_vec(),
            p2: d.p2().to_vec(),
            pc,
        }
    }
}

impl Serialize for ProductInputDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let spec = DistributionSpec::from(self);
        let mut st = s.serialize_struct("ProductInputDistribution", 3)?;
        st.serialize_field("p1", &spec.p1)?;
        st.serialize_field("p2", &spec.p2)?;
        st.serialize_field("pc", &spec.pc)?;
        st.end()
    }
}

pub fn parse_distribution(json: &str) -> Result<ProductInputDistribution, LoadError> {
    let spec: DistributionSpec = serde_json::from_str(json)?;
    Ok(spec.into_distribution()?)
}

pub fn read_distribution(path: &std::path::Path) -> Result<ProductInputDistribution, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_distribution(&text)
}
