use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AlphabetSizes, DiscreteChannel};

/// Noiseless channels that satisfy the interference conditions for every
/// input law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FixtureKind {
    /// `Y1 = (X2, Xc)`, `Y2 = (X1, X2, Xc)`.
    VeryStrong,
    /// `Y1 = (X1, X2, Xc)`, `Y2 = (X1, X2)`.
    StrongOnly,
}

impl FixtureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FixtureKind::VeryStrong => "VERY_STRONG",
            FixtureKind::StrongOnly => "STRONG_ONLY",
        }
    }
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().replace('-', "_").as_str() {
            "VERY_STRONG" => Ok(FixtureKind::VeryStrong),
            "STRONG_ONLY" => Ok(FixtureKind::StrongOnly),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

pub fn degraded_fixture(kind: FixtureKind, n1: usize, n2: usize, nc: usize) -> Result<DiscreteChannel> {
    for (name, n) in [("X1", n1), ("X2", n2), ("Xc", nc)] {
        if n < 2 {
            return Err(Error::ShapeMismatch(format!("fixture needs |{name}| >= 2, got {n}")));
        }
    }
    let all = |x1: usize, x2: usize, xc: usize| (x1 * n2 + x2) * nc + xc;
    match kind {
        FixtureKind::VeryStrong => {
            DiscreteChannel::deterministic(AlphabetSizes::new(n1, n2, nc, n2 * nc, n1 * n2 * nc), |x1, x2, xc| {
                (x2 * nc + xc, all(x1, x2, xc))
            })
        }
        FixtureKind::StrongOnly => {
            DiscreteChannel::deterministic(AlphabetSizes::new(n1, n2, nc, n1 * n2 * nc, n1 * n2), |x1, x2, xc| {
                (all(x1, x2, xc), x1 * n2 + x2)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::bounds::{inner_region_at, th2_region_at};
    use crate::model::ProductInputDistribution;

    #[test]
    fn parse_kinds() {
        assert_eq!("very_strong".parse::<FixtureKind>().unwrap(), FixtureKind::VeryStrong);
        assert_eq!("STRONG-ONLY".parse::<FixtureKind>().unwrap(), FixtureKind::StrongOnly);
        assert!(matches!("weak".parse::<FixtureKind>(), Err(Error::UnknownKind(_))));
    }

    #[test]
    fn fixtures_are_exactly_normalized() {
        for kind in [FixtureKind::VeryStrong, FixtureKind::StrongOnly] {
            let ch = degraded_fixture(kind, 2, 3, 2).unwrap();
            let s = ch.sizes();
            for x in 0..s.inputs() {
                let sum: f64 = (0..s.outputs()).map(|y| ch.tensor()[y * s.inputs() + x]).sum();
                assert_eq!(sum, 1.0);
            }
        }
        assert!(degraded_fixture(FixtureKind::VeryStrong, 1, 2, 2).is_err());
    }

    #[test]
    fn unit_square_on_xor_relay() {
        let ch = degraded_fixture(FixtureKind::VeryStrong, 2, 2, 2).unwrap();
        let d = ProductInputDistribution::with_function(vec![0.5; 2], vec![0.5; 2], 2, |a, b| a ^ b).unwrap();
        let o = th2_region_at(&ch, &d).unwrap();
        let i = inner_region_at(&ch, &d).unwrap();
        for v in [o.r1_max, o.r2_max, i.r1_max, i.r2_max] {
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert!((o.sum_max - 2.0).abs() < 1e-12 && (i.sum_bound() - 2.0).abs() < 1e-12);
    }
}
