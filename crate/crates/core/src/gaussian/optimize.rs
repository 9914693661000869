//! Interference-regime conditions as maximizations over relay splits.
//!
//! Both objectives are smooth trigonometric polynomials on compact
//! domains. They are maximized by a coarse grid followed by golden-section
//! refinement around the best grid point. No global optimality certificate
//! is produced.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{BetaSplit, GaussianChannel};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Grid points per search axis.
    pub grid: usize,
    /// Parameter tolerance of the golden-section refinement.
    pub param_tol: f64,
    /// Margin tolerance: the condition holds iff `margin <= tol`.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid: 64,
            param_tol: 1e-10,
            tol: 1e-9,
            max_sweeps: 200,
        }
    }
}

/// Result of a regime condition test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    /// Maximum of the condition's objective; `<= tol` means the condition holds.
    pub margin: f64,
    /// Relay split attaining `margin`.
    pub worst_beta: BetaSplit,
    /// Set when `margin` lies in `(-tol, tol]`.
    pub boundary: bool,
}

impl ConditionCheck {
    fn new(margin: f64, worst_beta: BetaSplit, tol: f64) -> Self {
        ConditionCheck {
            holds: margin <= tol,
            margin,
            worst_beta,
            boundary: margin > -tol && margin <= tol,
        }
    }
}

#[derive(Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    periodic: bool,
}

impl Axis {
    fn grid(&self, n: usize) -> Vec<f64> {
        if self.periodic {
            (0..n)
                .map(|k| self.lo + (self.hi - self.lo) * k as f64 / n as f64)
                .collect()
        } else if n == 1 {
            vec![0.5 * (self.lo + self.hi)]
        } else {
            (0..n)
                .map(|k| self.lo + (self.hi - self.lo) * k as f64 / (n - 1) as f64)
                .collect()
        }
    }

    fn step(&self, n: usize) -> f64 {
        if self.periodic {
            (self.hi - self.lo) / n as f64
        } else {
            (self.hi - self.lo) / (n.max(2) - 1) as f64
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of a unimodal function on `[a, b]`.
fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Coordinate-wise golden-section ascent from `start`, searching a window of
/// one grid step on each side of the current coordinate.
fn refine<F>(f: F, axes: &[Axis], mut x: Vec<f64>, mut best: f64, cfg: &SearchConfig) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> f64,
{
    for _ in 0..cfg.max_sweeps {
        let mut moved = 0.0f64;
        for (i, axis) in axes.iter().enumerate() {
            let h = axis.step(cfg.grid);
            let (mut a, mut b) = (x[i] - h, x[i] + h);
            if !axis.periodic {
                a = a.max(axis.lo);
                b = b.min(axis.hi);
            }
            let mut probe = x.clone();
            let (xi, fi) = golden_max(
                |v| {
                    probe[i] = v;
                    f(&probe)
                },
                a,
                b,
                cfg.param_tol,
            );
            if !fi.is_finite() {
                return Err(Error::OptimizerFailure(format!(
                    "objective became non-finite at axis {i}"
                )));
            }
            // endpoints of a clamped window are not visited by golden section
            let mut cand = (xi, fi);
            for edge in [a, b] {
                probe[i] = edge;
                let fe = f(&probe);
                if fe > cand.1 {
                    cand = (edge, fe);
                }
            }
            if cand.1 > best {
                moved = moved.max((cand.0 - x[i]).abs());
                x[i] = cand.0;
                best = cand.1;
            }
        }
        if moved <= cfg.param_tol {
            break;
        }
    }
    Ok((x, best))
}

/// Coefficients of `|p + q b|^2` as a function of a complex `b`.
#[derive(Clone, Copy)]
struct Modulus {
    p: Complex64,
    q: f64,
}

impl Modulus {
    fn at(&self, b: Complex64) -> f64 {
        (self.p + self.q * b).norm_sqr()
    }
}

/// Strong interference condition for user 1:
/// `max_{|b2c| <= 1} | |h22| + |h2c| b2c |^2 - | h12 + |h1c| b2c |^2 <= 0`.
pub fn check_strong(ch: &GaussianChannel, cfg: &SearchConfig) -> Result<ConditionCheck> {
    let ch = ch.validate()?;
    let own = Modulus {
        p: Complex64::new(ch.h22, 0.0),
        q: ch.h2c,
    };
    let other = Modulus { p: ch.h12, q: ch.h1c };
    let objective = |x: &[f64]| {
        let b = Complex64::from_polar(x[0], x[1]);
        own.at(b) - other.at(b)
    };
    let axes = [
        Axis {
            lo: 0.0,
            hi: 1.0,
            periodic: false,
        },
        Axis {
            lo: 0.0,
            hi: 2.0 * PI,
            periodic: true,
        },
    ];

    let radii = axes[0].grid(cfg.grid);
    let phases: Vec<Complex64> = axes[1]
        .grid(cfg.grid)
        .into_iter()
        .map(|p| Complex64::from_polar(1.0, p))
        .collect();
    let mut start = (vec![0.0, 0.0], f64::NEG_INFINITY);
    for &r in &radii {
        for (k, &e) in phases.iter().enumerate() {
            let b = e * r;
            let v = own.at(b) - other.at(b);
            if v > start.1 {
                start = (vec![r, axes[1].lo + axes[1].step(cfg.grid) * k as f64], v);
            }
        }
    }
    if !start.1.is_finite() {
        return Err(Error::OptimizerFailure("no finite grid value".into()));
    }
    let (x, margin) = refine(objective, &axes, start.0, start.1, cfg)?;
    let beta = BetaSplit {
        b1c: Complex64::new(0.0, 0.0),
        b2c: Complex64::from_polar(x[0], x[1]),
    };
    Ok(ConditionCheck::new(margin, beta, cfg.tol))
}

/// Very strong interference condition for user 1: the maximum over the
/// relay sphere of
/// `| |h11| + |h1c| b1c |^2 + | h12 + |h1c| b2c |^2 - | h21 + |h2c| b1c |^2 - | |h22| + |h2c| b2c |^2`
/// must be `<= 0`.
pub fn check_very_strong(ch: &GaussianChannel, cfg: &SearchConfig) -> Result<ConditionCheck> {
    let ch = ch.validate()?;
    let own1 = Modulus {
        p: Complex64::new(ch.h11, 0.0),
        q: ch.h1c,
    };
    let cross1 = Modulus { p: ch.h12, q: ch.h1c };
    let cross2 = Modulus { p: ch.h21, q: ch.h2c };
    let own2 = Modulus {
        p: Complex64::new(ch.h22, 0.0),
        q: ch.h2c,
    };
    // The objective splits into a part driven by b1c and a part driven by b2c.
    let part1 = |b: Complex64| own1.at(b) - cross2.at(b);
    let part2 = |b: Complex64| cross1.at(b) - own2.at(b);
    let objective_at = |beta: &BetaSplit| part1(beta.b1c) + part2(beta.b2c);
    let axes = [
        Axis {
            lo: 0.0,
            hi: FRAC_PI_2,
            periodic: false,
        },
        Axis {
            lo: 0.0,
            hi: 2.0 * PI,
            periodic: true,
        },
        Axis {
            lo: 0.0,
            hi: 2.0 * PI,
            periodic: true,
        },
    ];

    // For a fixed t the two phases decouple, so the search runs over t on
    // the envelope of independently maximized phase terms.
    let phase_step = axes[1].step(cfg.grid);
    let phases: Vec<Complex64> = axes[1]
        .grid(cfg.grid)
        .into_iter()
        .map(|p| Complex64::from_polar(1.0, p))
        .collect();
    let grid_phase = |part: &dyn Fn(Complex64) -> f64, radius: f64| -> (usize, f64) {
        phases
            .iter()
            .enumerate()
            .map(|(k, &e)| (k, part(e * radius)))
            .fold((0, f64::NEG_INFINITY), |acc, v| if v.1 > acc.1 { v } else { acc })
    };
    let best_phase = |part: &dyn Fn(Complex64) -> f64, radius: f64| -> (f64, f64) {
        let (k, v) = grid_phase(part, radius);
        let centre = phase_step * k as f64;
        let (p, pv) = golden_max(
            |p| part(Complex64::from_polar(radius, p)),
            centre - phase_step,
            centre + phase_step,
            cfg.param_tol,
        );
        if pv > v {
            (p.rem_euclid(2.0 * PI), pv)
        } else {
            (centre, v)
        }
    };
    let envelope = |t: f64| -> (f64, f64, f64) {
        let (s, c) = t.sin_cos();
        let (p1, v1) = best_phase(&part1, s);
        let (p2, v2) = best_phase(&part2, c);
        (p1, p2, v1 + v2)
    };

    let t_step = axes[0].step(cfg.grid);
    let mut best = (0.0, 0.0, 0.0, f64::NEG_INFINITY);
    for t in axes[0].grid(cfg.grid) {
        let (s, c) = t.sin_cos();
        let ((k1, v1), (k2, v2)) = (grid_phase(&part1, s), grid_phase(&part2, c));
        if v1 + v2 > best.3 {
            best = (t, phase_step * k1 as f64, phase_step * k2 as f64, v1 + v2);
        }
    }
    if !best.3.is_finite() {
        return Err(Error::OptimizerFailure("no finite grid value".into()));
    }
    let (a, b) = ((best.0 - t_step).max(0.0), (best.0 + t_step).min(FRAC_PI_2));
    let (t, _) = golden_max(|t| envelope(t).2, a, b, cfg.param_tol);
    for cand in [t, a, b] {
        let (p1, p2, v) = envelope(cand);
        if !v.is_finite() {
            return Err(Error::OptimizerFailure("objective became non-finite".into()));
        }
        if v > best.3 {
            best = (cand, p1, p2, v);
        }
    }
    let beta = BetaSplit::on_sphere(best.0, best.1, best.2);
    Ok(ConditionCheck::new(objective_at(&beta), beta, cfg.tol))
}
