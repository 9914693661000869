//! Gaussian channel analysis: closed-form outer regions, the standard-form
//! reduction, interference-regime conditions and the regime map.

mod optimize;
mod oracle;
mod regime;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, Frontier};
use crate::model::{BetaSplit, GaussianChannel, LogBase, Pentagon, RawGaussianChannel};

pub use optimize::{check_strong, check_very_strong, ConditionCheck, SearchConfig};
pub use oracle::{gaussian_mi_oracle, raw_mi_oracle, GaussianCovariance, MiExpression};
pub use regime::{
    classify, classify_with, regime_map, regime_map_parallel, symmetric_margins, RegimeMap,
    RegimeMapSpec, SweepAxis, SymmetricMargins,
};

/// Tolerance on `|b1c|^2 + |b2c|^2 = 1` for points of the relay sphere.
pub const SPHERE_TOL: f64 = 1e-12;

/// `C(s) = log(1 + s)` in the requested base.
pub fn capacity(snr: f64, base: LogBase) -> Result<f64> {
    if snr < 0.0 || snr.is_nan() {
        return Err(Error::NegativeSnr(snr));
    }
    Ok(base.log1p(snr))
}

fn cap_bits(snr: f64) -> f64 {
    LogBase::Bits.log1p(snr)
}

/// Gains of a raw channel with powers and noise folded in:
/// `(a11, a12, a1c, a21, a22, a2c)`.
fn scaled_gains(raw: &RawGaussianChannel) -> [Complex64; 6] {
    let (s1, s2) = (raw.noise1.sqrt(), raw.noise2.sqrt());
    let (q1, q2, qc) = (raw.p1.sqrt(), raw.p2.sqrt(), raw.pc.sqrt());
    [
        raw.h11 * q1 / s1,
        raw.h12 * q2 / s1,
        raw.h1c * qc / s1,
        raw.h21 * q1 / s2,
        raw.h22 * q2 / s2,
        raw.h2c * qc / s2,
    ]
}

/// Maps a general Gaussian channel to standard form.
///
/// Each receiver is rotated so its relay gain is real, each source so its
/// direct gain is real; the relay input is left unrotated. The cross gains
/// pick up the leftover phases:
/// `h12 = a12 e^{j(<a2c - <a22 - <a1c)}`, `h21 = a21 e^{j(<a1c - <a11 - <a2c)}`
/// where `a` are the power- and noise-normalized raw gains.
pub fn standard_form(raw: &RawGaussianChannel) -> Result<GaussianChannel> {
    let raw = raw.validate()?;
    let [a11, a12, a1c, a21, a22, a2c] = scaled_gains(&raw);
    GaussianChannel {
        h11: a11.norm(),
        h12: a12 * Complex64::from_polar(1.0, a2c.arg() - a22.arg() - a1c.arg()),
        h1c: a1c.norm(),
        h21: a21 * Complex64::from_polar(1.0, a1c.arg() - a11.arg() - a2c.arg()),
        h22: a22.norm(),
        h2c: a2c.norm(),
    }
    .validate()
}

/// The relay split of the standard-form channel that corresponds to `beta`
/// on the raw channel (same physical relay signal, rotated source inputs).
pub fn standard_beta(raw: &RawGaussianChannel, beta: &BetaSplit) -> BetaSplit {
    let [a11, _, a1c, _, a22, a2c] = scaled_gains(raw);
    BetaSplit {
        b1c: beta.b1c * Complex64::from_polar(1.0, a1c.arg() - a11.arg()),
        b2c: beta.b2c * Complex64::from_polar(1.0, a2c.arg() - a22.arg()),
    }
}

/// Outer-bound pentagon for one relay split on the unit sphere, in bits.
pub fn th4_pentagon(ch: &GaussianChannel, beta: &BetaSplit) -> Result<Pentagon> {
    if !beta.is_on_sphere(SPHERE_TOL) {
        return Err(Error::InvalidBeta {
            norm_sqr: beta.norm_sqr(),
        });
    }
    let own1 = (ch.h11 + ch.h1c * beta.b1c).norm_sqr();
    let own2 = (ch.h22 + ch.h2c * beta.b2c).norm_sqr();
    let cross1 = (ch.h12 + ch.h1c * beta.b2c).norm_sqr();
    Pentagon::new(cap_bits(own1), cap_bits(own2), cap_bits(own1 + cross1))
}

/// Sampling of the relay sphere: `angles` values of `t` over `[0, pi/2]`
/// (endpoints included) times `phases` values of each phase over `[0, 2pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BetaGrid {
    pub angles: usize,
    pub phases: usize,
}

impl BetaGrid {
    pub fn new(angles: usize, phases: usize) -> Self {
        BetaGrid { angles, phases }
    }

    fn angle_values(&self) -> Vec<f64> {
        match self.angles {
            1 => vec![FRAC_PI_2 / 2.0],
            n => (0..n)
                .map(|k| FRAC_PI_2 * k as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    fn phase_values(&self, collapse: bool) -> Vec<f64> {
        if collapse {
            return vec![0.0];
        }
        (0..self.phases)
            .map(|k| 2.0 * PI * k as f64 / self.phases as f64)
            .collect()
    }

    /// Sphere points visited for `ch`. Phases collapse to zero when the
    /// cross gains are real and nonnegative.
    pub fn points(&self, ch: &GaussianChannel) -> Result<Vec<BetaSplit>> {
        if self.angles == 0 || self.phases == 0 {
            return Err(Error::EmptyGrid);
        }
        let phases = self.phase_values(ch.has_real_cross_gains());
        let mut out = Vec::with_capacity(self.angles * phases.len() * phases.len());
        for t in self.angle_values() {
            for &p1 in &phases {
                for &p2 in &phases {
                    out.push(BetaSplit::on_sphere(t, p1, p2));
                }
            }
        }
        Ok(out)
    }
}

/// Pentagons indexed by the relay splits that produced them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionFamily {
    pub betas: Vec<BetaSplit>,
    pub pentagons: Vec<Pentagon>,
}

impl RegionFamily {
    pub fn frontier(&self) -> Result<Frontier> {
        geometry::frontier(&self.pentagons)
    }
}

/// Union of outer-bound pentagons over a sampled relay sphere.
pub fn th4_region(ch: &GaussianChannel, grid: &BetaGrid) -> Result<RegionFamily> {
    let betas = grid.points(ch)?;
    let pentagons = betas
        .iter()
        .map(|b| th4_pentagon(ch, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionFamily { betas, pentagons })
}
