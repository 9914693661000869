//! Per-distribution evaluation of the outer and inner bounds.

use serde::Serialize;

use super::joint::{JointPmf, Var};
use crate::error::{Error, Result};
use crate::model::{DiscreteChannel, LogBase, Pentagon, ProductInputDistribution, Th1Distribution};

const BITS: LogBase = LogBase::Bits;

use Var::{Q, U1, U2, X1, X2, Xc, Y1, Y2};

fn check_sizes(ch: &DiscreteChannel, d: &ProductInputDistribution) -> Result<()> {
    let s = ch.sizes();
    if (s.n1, s.n2, s.nc) != (d.n1(), d.n2(), d.nc()) {
        return Err(Error::ShapeMismatch(format!(
            "channel inputs {:?} but distribution over {:?}",
            (s.n1, s.n2, s.nc),
            (d.n1(), d.n2(), d.nc())
        )));
    }
    Ok(())
}

/// Joint pmf of `(X1, X2, Xc, Y1, Y2)` under the product input law.
pub fn joint_from(ch: &DiscreteChannel, d: &ProductInputDistribution) -> Result<JointPmf> {
    check_sizes(ch, d)?;
    let s = ch.sizes();
    let mut p = Vec::with_capacity(s.inputs() * s.outputs());
    for x1 in 0..s.n1 {
        for x2 in 0..s.n2 {
            let pc = d.relay_given(x1, x2);
            for xc in 0..s.nc {
                let px = d.p1()[x1] * d.p2()[x2] * pc[xc];
                for y1 in 0..s.m1 {
                    for y2 in 0..s.m2 {
                        p.push(px * ch.prob(y1, y2, x1, x2, xc));
                    }
                }
            }
        }
    }
    JointPmf::new(
        vec![X1, X2, Xc, Y1, Y2],
        vec![s.n1, s.n2, s.nc, s.m1, s.m2],
        p,
    )
}

fn mi(j: &JointPmf, l: &[Var], r: &[Var], g: &[Var]) -> Result<f64> {
    j.mutual_information(l, r, g, BITS)
}

/// Strong-interference outer region for one input law, in bits:
/// `I(Y1; X1, Xc | X2)`, `I(Y2; X2, Xc | X1)`, `I(Y1; X1, X2, Xc)`.
pub fn th2_region_at(ch: &DiscreteChannel, d: &ProductInputDistribution) -> Result<Pentagon> {
    let j = joint_from(ch, d)?;
    Pentagon::new(
        mi(&j, &[Y1], &[X1, Xc], &[X2])?,
        mi(&j, &[Y2], &[X2, Xc], &[X1])?,
        mi(&j, &[Y1], &[X1, X2, Xc], &[])?,
    )
}

/// Superposition inner region with both messages decoded at both
/// receivers and the sources' codewords as the common messages:
/// `I(Y1; X1 | X2)`, `I(Y2; X2 | X1)`, `I(Y1; X1, X2)`, `I(Y2; X1, X2)`.
pub fn inner_region_at(ch: &DiscreteChannel, d: &ProductInputDistribution) -> Result<Pentagon> {
    let j = joint_from(ch, d)?;
    Pentagon::with_second_sum(
        mi(&j, &[Y1], &[X1], &[X2])?,
        mi(&j, &[Y2], &[X2], &[X1])?,
        mi(&j, &[Y1], &[X1, X2], &[])?,
        mi(&j, &[Y2], &[X1, X2], &[])?,
    )
}

/// The nine outer-bound expressions for one distribution of
/// `(Q, U1, U2, X1, X2, Xc)`.
///
/// `sum_aux` is `I(Y1; U2 | Q) + I(Y2; U1 | Q)`, the pairing that the
/// single-letterization actually produces; `sum_aux_as_printed` is the
/// pairing `I(Y1; U1 | Q) + I(Y2; U2 | Q)`. Only `sum_aux` enters the
/// pentagon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Th1Bounds {
    /// `I(Y1; X1, Xc | X2, Q)`
    pub r1_direct: f64,
    /// `I(Y1; U2, X1 | Q)`
    pub r1_aux: f64,
    /// `I(Y2; X2, Xc | X1, Q)`
    pub r2_direct: f64,
    /// `I(Y2; U1, X2 | Q)`
    pub r2_aux: f64,
    /// `I(Y1; X1, Xc | U1, X2, Q) + I(Y2; U1, X2 | Q)`
    pub sum_u1: f64,
    /// `I(Y2; X2, Xc | U2, X1, Q) + I(Y1; U2, X1 | Q)`
    pub sum_u2: f64,
    pub sum_aux: f64,
    pub sum_aux_as_printed: f64,
    /// `I(Y1; X1, X2, Xc | Q) + I(Y2; X2, Xc | Y1, X1, Q)`
    pub sum_via_y1: f64,
    /// `I(Y2; X1, X2, Xc | Q) + I(Y1; X1, Xc | Y2, X2, Q)`
    pub sum_via_y2: f64,
    pub pentagon: Pentagon,
}

impl Th1Bounds {
    /// Values in declaration order `(1a)` through `(1i)`, with the derived
    /// auxiliary sum bound in the `(1g)` slot.
    pub fn values(&self) -> [f64; 9] {
        [
            self.r1_direct,
            self.r1_aux,
            self.r2_direct,
            self.r2_aux,
            self.sum_u1,
            self.sum_u2,
            self.sum_aux,
            self.sum_via_y1,
            self.sum_via_y2,
        ]
    }
}

/// Joint pmf of `(Q, U1, U2, X1, X2, Xc, Y1, Y2)`.
pub fn th1_joint(ch: &DiscreteChannel, d: &Th1Distribution) -> Result<JointPmf> {
    let s = ch.sizes();
    check_sizes(ch, d.input(0))?;
    let (k1, k2) = d.aux_sizes();
    let nq = d.q().len();
    let mut p = Vec::with_capacity(nq * k1 * k2 * s.inputs() * s.outputs());
    for q in 0..nq {
        let inp = d.input(q);
        for u1 in 0..k1 {
            for u2 in 0..k2 {
                for x1 in 0..s.n1 {
                    for x2 in 0..s.n2 {
                        let pc = inp.relay_given(x1, x2);
                        for xc in 0..s.nc {
                            let pu = d.aux_given(q, x1, x2, xc)[u1 * k2 + u2];
                            let px = d.q()[q] * inp.p1()[x1] * inp.p2()[x2] * pc[xc] * pu;
                            for y1 in 0..s.m1 {
                                for y2 in 0..s.m2 {
                                    p.push(px * ch.prob(y1, y2, x1, x2, xc));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    JointPmf::new(
        vec![Q, U1, U2, X1, X2, Xc, Y1, Y2],
        vec![nq, k1, k2, s.n1, s.n2, s.nc, s.m1, s.m2],
        p,
    )
}

/// Evaluates every outer-bound expression for one distribution, in bits.
pub fn th1_bounds_at(ch: &DiscreteChannel, d: &Th1Distribution) -> Result<Th1Bounds> {
    let j = th1_joint(ch, d)?;
    let r1_direct = mi(&j, &[Y1], &[X1, Xc], &[X2, Q])?;
    let r1_aux = mi(&j, &[Y1], &[U2, X1], &[Q])?;
    let r2_direct = mi(&j, &[Y2], &[X2, Xc], &[X1, Q])?;
    let r2_aux = mi(&j, &[Y2], &[U1, X2], &[Q])?;
    let sum_u1 = mi(&j, &[Y1], &[X1, Xc], &[U1, X2, Q])? + r2_aux;
    let sum_u2 = mi(&j, &[Y2], &[X2, Xc], &[U2, X1, Q])? + r1_aux;
    let sum_aux = mi(&j, &[Y1], &[U2], &[Q])? + mi(&j, &[Y2], &[U1], &[Q])?;
    let sum_aux_as_printed = mi(&j, &[Y1], &[U1], &[Q])? + mi(&j, &[Y2], &[U2], &[Q])?;
    let sum_via_y1 = mi(&j, &[Y1], &[X1, X2, Xc], &[Q])? + mi(&j, &[Y2], &[X2, Xc], &[Y1, X1, Q])?;
    let sum_via_y2 = mi(&j, &[Y2], &[X1, X2, Xc], &[Q])? + mi(&j, &[Y1], &[X1, Xc], &[Y2, X2, Q])?;
    let pentagon = Pentagon::new(
        r1_direct.min(r1_aux),
        r2_direct.min(r2_aux),
        [sum_u1, sum_u2, sum_aux, sum_via_y1, sum_via_y2]
            .into_iter()
            .fold(f64::INFINITY, f64::min),
    )?;
    Ok(Th1Bounds {
        r1_direct,
        r1_aux,
        r2_direct,
        r2_aux,
        sum_u1,
        sum_u2,
        sum_aux,
        sum_aux_as_printed,
        sum_via_y1,
        sum_via_y2,
        pentagon,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Remark3 {
    /// `I(Y2; X2, Xc | X1, Y1)`
    pub margin: f64,
    /// Distance between the `Y1`-genie sum bound and `I(Y1; X1, X2, Xc)`.
    pub coincidence_gap: f64,
}

/// Residual information about `(X2, Xc)` left at receiver 2 once receiver
/// 1's output is known. It vanishes under strong interference, in which
/// case the genie-aided sum bound collapses to `I(Y1; X1, X2, Xc)`.
pub fn remark3_margin(ch: &DiscreteChannel, d: &ProductInputDistribution) -> Result<Remark3> {
    let j = joint_from(ch, d)?;
    let margin = mi(&j, &[Y2], &[X2, Xc], &[X1, Y1])?;
    let genie = th1_bounds_at(ch, &Th1Distribution::trivial(d.clone()))?.sum_via_y1;
    let sum = th2_region_at(ch, d)?.sum_max;
    Ok(Remark3 {
        margin,
        coincidence_gap: (genie - sum).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AlphabetSizes;

    fn bits_uniform() -> Vec<f64> {
        vec![0.5, 0.5]
    }

    fn xor_inputs() -> ProductInputDistribution {
        ProductInputDistribution::with_function(bits_uniform(), bits_uniform(), 2, |a, b| a ^ b).unwrap()
    }

    /// Y1 = (X2, Xc), Y2 = (X1, X2, Xc)
    fn very_strong() -> DiscreteChannel {
        DiscreteChannel::deterministic(AlphabetSizes::new(2, 2, 2, 4, 8), |x1, x2, xc| {
            (x2 * 2 + xc, (x1 * 2 + x2) * 2 + xc)
        })
        .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn singleton_joint() {
        let ch = DiscreteChannel::new(AlphabetSizes::new(1, 1, 1, 1, 1), vec![1.0]).unwrap();
        let d = ProductInputDistribution::uniform(1, 1, 1).unwrap();
        let j = joint_from(&ch, &d).unwrap();
        assert_eq!(j.probs(), &[1.0]);
        let b = th1_bounds_at(&ch, &Th1Distribution::trivial(d)).unwrap();
        assert!(b.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn identity_link_marginal() {
        let ch = DiscreteChannel::deterministic(AlphabetSizes::new(2, 1, 1, 2, 1), |x1, _, _| (x1, 0)).unwrap();
        let d = ProductInputDistribution::uniform(2, 1, 1).unwrap();
        let m = joint_from(&ch, &d).unwrap().marginal(&[X1, Y1]).unwrap();
        assert_eq!(m.probs(), &[0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn input_marginal_is_reproduced() {
        let ch = DiscreteChannel::new(AlphabetSizes::new(2, 2, 2, 3, 2), {
            // each (x1,x2,xc) slice: arbitrary normalized pmf over 6 outputs
            let mut t = vec![0.0; 8 * 6];
            for x in 0..8 {
                let w: Vec<f64> = (0..6).map(|y| (1 + (x * 7 + y * 3) % 5) as f64).collect();
                let s: f64 = w.iter().sum();
                for y in 0..6 {
                    t[y * 8 + x] = w[y] / s;
                }
            }
            t
        })
        .unwrap();
        let d = ProductInputDistribution::new(vec![0.3, 0.7], vec![0.6, 0.4], 2, vec![0.1, 0.9, 0.5, 0.5, 1.0, 0.0, 0.25, 0.75])
            .unwrap();
        let m = joint_from(&ch, &d).unwrap().marginal(&[X1, X2, Xc]).unwrap();
        for x1 in 0..2 {
            for x2 in 0..2 {
                for xc in 0..2 {
                    let want = d.p1()[x1] * d.p2()[x2] * d.relay_given(x1, x2)[xc];
                    assert!((m.probs()[(x1 * 2 + x2) * 2 + xc] - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn very_strong_fixture_regions() {
        let outer = th2_region_at(&very_strong(), &xor_inputs()).unwrap();
        assert!(close(outer.r1_max, 1.0) && close(outer.r2_max, 1.0) && close(outer.sum_max, 2.0));
        let inner = inner_region_at(&very_strong(), &xor_inputs()).unwrap();
        assert!(close(inner.r1_max, 1.0) && close(inner.r2_max, 1.0));
        assert!(close(inner.sum_max, 2.0) && close(inner.sum_max2.unwrap(), 2.0));
    }

    #[test]
    fn silent_user_two() {
        let ch = DiscreteChannel::deterministic(AlphabetSizes::new(2, 1, 1, 2, 2), |x1, _, _| (x1, x1)).unwrap();
        let d = ProductInputDistribution::uniform(2, 1, 1).unwrap();
        assert_eq!(th2_region_at(&ch, &d).unwrap().r2_max, 0.0);
    }

    #[test]
    fn constant_first_output() {
        let ch = DiscreteChannel::deterministic(AlphabetSizes::new(2, 2, 2, 1, 8), |x1, x2, xc| {
            (0, (x1 * 2 + x2) * 2 + xc)
        })
        .unwrap();
        let p = th2_region_at(&ch, &ProductInputDistribution::uniform(2, 2, 2).unwrap()).unwrap();
        assert_eq!(p.r1_max, 0.0);
        assert_eq!(p.sum_max, 0.0);
    }

    #[test]
    fn deterministic_relay_adds_nothing() {
        let ch = very_strong();
        let d = ProductInputDistribution::with_function(vec![0.2, 0.8], vec![0.7, 0.3], 2, |a, b| a & b).unwrap();
        let j = joint_from(&ch, &d).unwrap();
        let inner = inner_region_at(&ch, &d).unwrap();
        let full = j.mutual_information(&[Y1], &[X1, Xc], &[X2], BITS).unwrap();
        assert!(close(inner.r1_max, full));
    }

    #[test]
    fn stochastic_relay_is_strictly_inside() {
        let ch = very_strong();
        let d = ProductInputDistribution::new(
            bits_uniform(),
            bits_uniform(),
            2,
            vec![0.9, 0.1, 0.3, 0.7, 0.5, 0.5, 0.2, 0.8],
        )
        .unwrap();
        let j = joint_from(&ch, &d).unwrap();
        let h = |s: &[Var]| j.entropy(s, BITS).unwrap();
        let want = (h(&[Xc, X2]) - h(&[X2])) - (h(&[X1, X2, Xc]) - h(&[X1, X2]));
        let inner = inner_region_at(&ch, &d).unwrap();
        let outer = th2_region_at(&ch, &d).unwrap();
        assert!(close(inner.r1_max, want));
        assert!(inner.r1_max < outer.r1_max - 1e-3);
    }

    #[test]
    fn genie_residual_on_fixtures() {
        let r = remark3_margin(&very_strong(), &ProductInputDistribution::uniform(2, 2, 2).unwrap()).unwrap();
        assert!(r.margin.abs() < 1e-12 && r.coincidence_gap < 1e-12);

        // Y1 constant, Y2 = (X2, Xc)
        let ch = DiscreteChannel::deterministic(AlphabetSizes::new(2, 2, 2, 1, 4), |_, x2, xc| (0, x2 * 2 + xc))
            .unwrap();
        let r = remark3_margin(&ch, &xor_inputs()).unwrap();
        // given X1, the pair (X2, X1 xor X2) carries one fair bit
        assert!(close(r.margin, 1.0));
        assert!(close(r.coincidence_gap, 1.0));
        let r = remark3_margin(&ch, &ProductInputDistribution::uniform(2, 2, 2).unwrap()).unwrap();
        assert!(close(r.margin, 2.0));

        let single = DiscreteChannel::new(AlphabetSizes::new(1, 1, 1, 1, 1), vec![1.0]).unwrap();
        let r = remark3_margin(&single, &ProductInputDistribution::uniform(1, 1, 1).unwrap()).unwrap();
        assert_eq!(r.margin, 0.0);
    }

    #[test]
    fn shape_mismatch() {
        let d = ProductInputDistribution::uniform(3, 2, 2).unwrap();
        assert!(matches!(th2_region_at(&very_strong(), &d), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn trivial_auxiliaries_match_strong_region_exactly() {
        let ch = very_strong();
        let d = ProductInputDistribution::with_function(vec![0.3, 0.7], vec![0.45, 0.55], 2, |a, b| a | b).unwrap();
        let b = th1_bounds_at(&ch, &Th1Distribution::trivial(d.clone())).unwrap();
        let p = th2_region_at(&ch, &d).unwrap();
        assert_eq!(b.r1_direct, p.r1_max);
        assert_eq!(b.r2_direct, p.r2_max);
        let j = joint_from(&ch, &d).unwrap();
        let want = j.mutual_information(&[Y1], &[X1, X2, Xc], &[], BITS).unwrap()
            + j.mutual_information(&[Y2], &[X2, Xc], &[Y1, X1], BITS).unwrap();
        assert!(close(b.sum_via_y1, want));
    }
}
