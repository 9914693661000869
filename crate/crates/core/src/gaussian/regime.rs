use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::optimize::{check_strong, check_very_strong, SearchConfig};
use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::model::{GaussianChannel, Regime, RegimeLabel, SwapRoles, User};

/// Closed-form condition margins for symmetric relay links and real,
/// nonnegative cross gains.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymmetricMargins {
    pub strong_margin: f64,
    pub very_strong_margin: f64,
}

/// Maximized condition objectives when `|h1c| = |h2c| = hc` and the cross
/// gains are real and nonnegative.
///
/// Over `|b2c| <= 1` the strong objective is
/// `|h22|^2 - |h12|^2 + 2 hc (|h22| - |h12|) Re b2c`, so its maximum is
/// `|h22|^2 - |h12|^2 + 2 hc ||h22| - |h12||`. Its sign follows
/// `|h22| - |h12|` whenever `2 hc <= |h12| + |h22|`.
pub fn symmetric_margins(ch: &GaussianChannel) -> Result<SymmetricMargins> {
    let ch = ch.validate()?;
    if ch.h1c != ch.h2c {
        return Err(Error::NotSymmetric(format!(
            "|h1c| = {} differs from |h2c| = {}",
            ch.h1c, ch.h2c
        )));
    }
    if !ch.has_real_cross_gains() {
        return Err(Error::NotSymmetric(format!(
            "cross gains h12 = {}, h21 = {} are not real and nonnegative",
            ch.h12, ch.h21
        )));
    }
    let hc = ch.h1c;
    let (h11, h22, h12, h21) = (ch.h11, ch.h22, ch.h12.re, ch.h21.re);
    let strong_margin = h22 * h22 - h12 * h12 + 2.0 * hc * (h22 - h12).abs();
    let very_strong_margin = 2.0 * hc * (h12 - h22).hypot(h11 - h21) + h11 * h11 + h12 * h12
        - h22 * h22
        - h21 * h21;
    Ok(SymmetricMargins {
        strong_margin,
        very_strong_margin,
    })
}

/// Regime of `user` with the default search settings.
pub fn classify(ch: &GaussianChannel, user: User) -> Result<RegimeLabel> {
    classify_with(ch, user, &SearchConfig::default())
}

/// Tests the strong and very strong conditions with `user` in the role of
/// user 1 (user 2 is tested on the role-swapped channel).
pub fn classify_with(ch: &GaussianChannel, user: User, cfg: &SearchConfig) -> Result<RegimeLabel> {
    let ch = match user {
        User::One => *ch,
        User::Two => ch.swap_roles(),
    };
    let strong = check_strong(&ch, cfg)?;
    let very = check_very_strong(&ch, cfg)?;
    let regime = match (strong.holds, very.holds) {
        (true, true) => Regime::VeryStrong,
        (true, false) => Regime::Strong,
        _ => Regime::Neither,
    };
    Ok(RegimeLabel {
        regime,
        user,
        strong_margin: strong.margin,
        very_strong_margin: very.margin,
        strong_boundary: strong.boundary,
        very_strong_boundary: very.boundary,
    })
}

/// Inclusive, uniformly spaced sweep `lo, ..., hi` with `count` points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepAxis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl SweepAxis {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidMap("sweep bounds must be finite".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidMap(format!("empty or reversed range {lo}:{hi}")));
        }
        if count < 2 {
            return Err(Error::InvalidMap(format!("sweep needs at least 2 points, got {count}")));
        }
        Ok(SweepAxis { lo, hi, count })
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * k as f64 / (self.count - 1) as f64
                }
            })
            .collect()
    }
}

/// A sweep of real cross gains `(h12, h21)` around fixed direct and relay
/// gains.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeMapSpec {
    pub base: GaussianChannel,
    pub h12: SweepAxis,
    pub h21: SweepAxis,
    pub user: User,
    pub search: SearchConfig,
}

impl RegimeMapSpec {
    pub fn new(base: GaussianChannel, h12: SweepAxis, h21: SweepAxis, user: User) -> Self {
        RegimeMapSpec {
            base,
            h12,
            h21,
            user,
            search: SearchConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        self.base.validate()?;
        SweepAxis::new(self.h12.lo, self.h12.hi, self.h12.count)?;
        SweepAxis::new(self.h21.lo, self.h21.hi, self.h21.count)?;
        if self.h12.lo < 0.0 || self.h21.lo < 0.0 {
            return Err(Error::InvalidMap("cross gains must be nonnegative".into()));
        }
        Ok(())
    }

    fn cell_channel(&self, h12: f64, h21: f64) -> GaussianChannel {
        GaussianChannel {
            h12: Complex64::new(h12, 0.0),
            h21: Complex64::new(h21, 0.0),
            ..self.base
        }
    }
}

/// Classification grid, row-major with `h12` as the outer index.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeMap {
    pub h12: Vec<f64>,
    pub h21: Vec<f64>,
    pub cells: Vec<RegimeLabel>,
}

impl RegimeMap {
    pub fn get(&self, i12: usize, i21: usize) -> &RegimeLabel {
        &self.cells[i12 * self.h21.len() + i21]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("h12,h21,label,strongMargin,veryStrongMargin\n");
        for (i, &a) in self.h12.iter().enumerate() {
            for (j, &b) in self.h21.iter().enumerate() {
                let c = self.get(i, j);
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_sig(a),
                    fmt_sig(b),
                    c.regime,
                    fmt_sig(c.strong_margin),
                    fmt_sig(c.very_strong_margin)
                );
            }
        }
        out
    }
}

fn cells(spec: &RegimeMapSpec) -> Vec<(f64, f64)> {
    let h21 = spec.h21.values();
    spec.h12
        .values()
        .into_iter()
        .flat_map(|a| h21.iter().map(move |&b| (a, b)))
        .collect()
}

/// Classifies every cell of the sweep on the calling thread.
pub fn regime_map(spec: &RegimeMapSpec) -> Result<RegimeMap> {
    spec.validate()?;
    let labels = cells(spec)
        .into_iter()
        .map(|(a, b)| classify_with(&spec.cell_channel(a, b), spec.user, &spec.search))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegimeMap {
        h12: spec.h12.values(),
        h21: spec.h21.values(),
        cells: labels,
    })
}

/// Same as [`regime_map`] with cells evaluated on `jobs` threads. The
/// result does not depend on `jobs`.
pub fn regime_map_parallel(spec: &RegimeMapSpec, jobs: usize) -> Result<RegimeMap> {
    if jobs <= 1 {
        return regime_map(spec);
    }
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidMap(format!("cannot start worker pool: {e}")))?;
    let grid = cells(spec);
    let labels = pool.install(|| {
        grid.par_iter()
            .map(|&(a, b)| classify_with(&spec.cell_channel(a, b), spec.user, &spec.search))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(RegimeMap {
        h12: spec.h12.values(),
        h21: spec.h21.values(),
        cells: labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_gains(h12: f64, h21: f64) -> GaussianChannel {
        GaussianChannel::real(1.0, h12, 1.0, h21, 1.0, 1.0)
    }

    #[test]
    fn symmetric_closed_form_values() {
        let m = symmetric_margins(&GaussianChannel::real(1.0, 2.0, 1.0, 3.0, 2.0, 1.0)).unwrap();
        assert!((m.very_strong_margin + 4.0).abs() < 1e-12);
        let m = symmetric_margins(&GaussianChannel::real(1.0, 1.5, 0.7, 0.2, 1.5, 0.7)).unwrap();
        assert_eq!(m.strong_margin, 0.0);
        let m = symmetric_margins(&GaussianChannel::real(1.2, 0.3, 0.0, 0.8, 0.9, 0.0)).unwrap();
        let want = 1.44 + 0.09 - 0.81 - 0.64;
        assert!((m.very_strong_margin - want).abs() < 1e-12);
    }

    #[test]
    fn symmetric_strong_sign_for_small_relay_gain() {
        // 2 hc <= h12 + h22: the sign reduces to h22 - h12
        for (h12, h22, hc) in [(2.0, 1.0, 1.0), (0.5, 1.0, 0.7), (3.0, 2.5, 2.0)] {
            let m = symmetric_margins(&GaussianChannel::real(1.0, h12, hc, 0.0, h22, hc)).unwrap();
            assert_eq!(m.strong_margin > 0.0, h22 > h12);
        }
        // a strong relay can break the condition even when h12 > h22
        let m = symmetric_margins(&GaussianChannel::real(1.0, 2.0, 3.0, 0.0, 1.0, 3.0)).unwrap();
        assert!(m.strong_margin > 0.0);
    }

    #[test]
    fn symmetric_preconditions() {
        let asym = GaussianChannel::real(1.0, 1.0, 1.0, 1.0, 1.0, 2.0);
        assert!(matches!(symmetric_margins(&asym), Err(Error::NotSymmetric(_))));
        let mut cplx = GaussianChannel::all_unity();
        cplx.h21 = Complex64::new(0.0, 1.0);
        assert!(matches!(symmetric_margins(&cplx), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn unit_gain_labels() {
        let l = classify(&unit_gains(2.0, 0.5), User::One).unwrap();
        assert_eq!(l.regime, Regime::Strong);
        assert!((l.strong_margin + 1.0).abs() < 1e-9);
        assert!(l.very_strong_margin > 0.0);

        let l = classify(&unit_gains(1.0, 2.0), User::One).unwrap();
        assert_eq!(l.regime, Regime::VeryStrong);
        assert!(l.strong_boundary);
        assert!((l.very_strong_margin + 1.0).abs() < 1e-9);

        let l = classify(&unit_gains(0.5, 0.5), User::One).unwrap();
        assert_eq!(l.regime, Regime::Neither);
    }

    #[test]
    fn user_two_is_swapped_user_one() {
        let ch = GaussianChannel::real(1.3, 0.4, 0.8, 2.2, 0.9, 1.1);
        assert_eq!(
            classify(&ch, User::Two).unwrap(),
            RegimeLabel {
                user: User::Two,
                ..classify(&ch.swap_roles(), User::One).unwrap()
            }
        );
    }

    #[test]
    fn corner_map() {
        let spec = RegimeMapSpec::new(
            unit_gains(0.0, 0.0),
            SweepAxis::new(0.0, 10.0, 2).unwrap(),
            SweepAxis::new(0.0, 10.0, 2).unwrap(),
            User::One,
        );
        let map = regime_map(&spec).unwrap();
        assert_eq!(map.cells.len(), 4);
        assert_eq!(map.get(1, 0).regime, Regime::Strong);
        assert_eq!(map.get(0, 0).regime, Regime::Neither);
        let csv = map.to_csv();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("h12,h21,label,strongMargin,veryStrongMargin\n0,0,NEITHER,"));
    }

    #[test]
    fn sweep_validation() {
        assert!(SweepAxis::new(10.0, 0.0, 5).is_err());
        assert!(SweepAxis::new(0.0, 1.0, 1).is_err());
        let v = SweepAxis::new(0.0, 10.0, 200).unwrap().values();
        assert_eq!(v[0], 0.0);
        assert_eq!(v[199], 10.0);
    }

    #[test]
    fn parallel_matches_serial() {
        let spec = RegimeMapSpec::new(
            unit_gains(0.0, 0.0),
            SweepAxis::new(0.0, 3.0, 7).unwrap(),
            SweepAxis::new(0.0, 3.0, 5).unwrap(),
            User::Two,
        );
        assert_eq!(
            regime_map(&spec).unwrap(),
            regime_map_parallel(&spec, 4).unwrap()
        );
    }
}
