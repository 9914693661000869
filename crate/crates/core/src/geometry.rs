//! Exact polytope operations on two-user rate regions.
//!
//! Families of pentagons are compared after convexification: the support
//! function of a union equals the support function of its convex hull, and
//! for pentagons it is attained at one of at most five corners, so every
//! quantity here is exact up to floating point.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::model::Pentagon;

pub const DEFAULT_DIRECTIONS: usize = 181;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Nonnegative weight pair normalized to `w1 + w2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Direction {
    pub w1: f64,
    pub w2: f64,
}

impl Direction {
    pub fn new(w1: f64, w2: f64) -> Option<Self> {
        let s = w1 + w2;
        if w1 < 0.0 || w2 < 0.0 || !(s > 0.0) || !s.is_finite() {
            return None;
        }
        Some(Direction {
            w1: w1 / s,
            w2: w2 / s,
        })
    }

    /// Direction at angle `theta` in `[0, pi/2]` from the R1 axis.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let (c, s) = (c.max(0.0), s.max(0.0));
        Direction {
            w1: c / (c + s),
            w2: s / (c + s),
        }
    }

    pub fn dot(&self, p: (f64, f64)) -> f64 {
        self.w1 * p.0 + self.w2 * p.1
    }
}

/// `n` directions uniform in angle over the quarter circle, endpoints included.
pub fn direction_grid(n: usize) -> Vec<Direction> {
    match n {
        0 => Vec::new(),
        1 => vec![Direction::from_angle(FRAC_PI_2 / 2.0)],
        _ => (0..n)
            .map(|k| Direction::from_angle(FRAC_PI_2 * k as f64 / (n - 1) as f64))
            .collect(),
    }
}

/// Extreme points of a pentagon, without duplicates.
pub fn pentagon_corners(p: &Pentagon) -> Vec<(f64, f64)> {
    let (a, b, c) = (p.r1_max, p.r2_max, p.sum_bound());
    let a_eff = a.min(c);
    let b_eff = b.min(c);
    let mut out = vec![(0.0, 0.0), (a_eff, 0.0), (0.0, b_eff)];
    if c < a + b {
        out.push((a_eff, c - a_eff));
        out.push((c - b_eff, b_eff));
    } else {
        out.push((a, b));
    }
    let mut uniq: Vec<(f64, f64)> = Vec::with_capacity(out.len());
    for p in out {
        if !uniq.contains(&p) {
            uniq.push(p);
        }
    }
    uniq
}

fn support_one(p: &Pentagon, d: Direction) -> f64 {
    pentagon_corners(p)
        .into_iter()
        .map(|c| d.dot(c))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Support function of the convex hull of a union of pentagons.
pub fn support(pentagons: &[Pentagon], d: Direction) -> Result<f64> {
    if pentagons.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(pentagons
        .iter()
        .map(|p| support_one(p, d))
        .fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Inclusion {
    pub contained: bool,
    pub worst_direction: Direction,
    /// Largest `support(inner) - support(outer)` over the grid.
    pub worst_gap: f64,
}

/// Tests hull(inner) ⊆ hull(outer) on a grid of support directions.
pub fn includes(
    inner: &[Pentagon],
    outer: &[Pentagon],
    n_directions: usize,
    tol: f64,
) -> Result<Inclusion> {
    if inner.is_empty() || outer.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n_directions < 3 {
        return Err(Error::TooFewDirections(n_directions));
    }
    let mut worst = (f64::NEG_INFINITY, Direction::from_angle(0.0));
    for d in direction_grid(n_directions) {
        let gap = support(inner, d)? - support(outer, d)?;
        if gap > worst.0 {
            worst = (gap, d);
        }
    }
    Ok(Inclusion {
        contained: worst.0 <= tol,
        worst_direction: worst.1,
        worst_gap: worst.0,
    })
}

/// Upper-right boundary of the convex hull of a pentagon union.
///
/// Vertices run counter-clockwise from `(r1*, 0)` to `(0, r2*)`: R1 never
/// increases and R2 never decreases along the list, and both change
/// strictly between consecutive interior vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Frontier {
    pub vertices: Vec<(f64, f64)>,
}

impl Frontier {
    pub fn support(&self, d: Direction) -> f64 {
        self.vertices
            .iter()
            .map(|&v| d.dot(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("R1,R2\n");
        for &(r1, r2) in &self.vertices {
            let _ = writeln!(out, "{},{}", fmt_sig(r1), fmt_sig(r2));
        }
        out
    }
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise convex hull starting at the lexicographically smallest
/// point, collinear points dropped.
fn convex_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Convex-hull frontier of a union of pentagons, computed exactly from the
/// corner points.
pub fn frontier(pentagons: &[Pentagon]) -> Result<Frontier> {
    if pentagons.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let pts: Vec<(f64, f64)> = pentagons.iter().flat_map(pentagon_corners).collect();
    let hull = convex_hull(pts);
    // Every family contains the origin, which is the first hull vertex.
    let vertices = if hull.len() <= 1 {
        hull
    } else {
        hull[1..].to_vec()
    };
    Ok(Frontier { vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pent(a: f64, b: f64, c: f64) -> Pentagon {
        Pentagon::new(a, b, c).unwrap()
    }

    fn same_set(mut got: Vec<(f64, f64)>, mut want: Vec<(f64, f64)>) {
        let key = |a: &(f64, f64), b: &(f64, f64)| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1));
        got.sort_by(key);
        want.sort_by(key);
        assert_eq!(got, want);
    }

    #[test]
    fn corners() {
        same_set(
            pentagon_corners(&pent(1.0, 1.0, 2.0)),
            vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)],
        );
        same_set(
            pentagon_corners(&pent(1.0, 1.0, 1.5)),
            vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.5), (0.5, 1.0)],
        );
        let p = Pentagon::with_second_sum(2.0, 2.0, 3.0, 2.5).unwrap();
        same_set(
            pentagon_corners(&p),
            vec![(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (2.0, 0.5), (0.5, 2.0)],
        );
        // sum bound below both single-user bounds: a triangle
        same_set(
            pentagon_corners(&pent(2.0, 3.0, 1.0)),
            vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)],
        );
    }

    #[test]
    fn support_values() {
        let d = Direction::new(0.5, 0.5).unwrap();
        assert_eq!(support(&[pent(1.0, 1.0, 2.0)], d).unwrap(), 1.0);
        assert_eq!(support(&[pent(1.0, 1.0, 1.5)], d).unwrap(), 0.75);
        let two = [pent(1.0, 0.2, 1.2), pent(0.2, 1.0, 1.2)];
        assert!((support(&two, d).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(support(&[], d), Err(Error::EmptyFamily));
    }

    #[test]
    fn inclusion() {
        let loose = [pent(1.0, 1.0, 2.0)];
        let tight = [pent(1.0, 1.0, 1.5)];
        let r = includes(&tight, &loose, 181, 1e-9).unwrap();
        assert!(r.contained);
        let r = includes(&loose, &tight, 181, 1e-9).unwrap();
        assert!(!r.contained);
        assert!((r.worst_gap - 0.25).abs() < 1e-12);
        assert!((r.worst_direction.w1 - 0.5).abs() < 1e-12);
        let r = includes(&loose, &loose, 181, 1e-9).unwrap();
        assert!(r.contained);
        assert_eq!(r.worst_gap, 0.0);
        assert_eq!(
            includes(&loose, &loose, 2, 1e-9),
            Err(Error::TooFewDirections(2))
        );
    }

    #[test]
    fn frontier_shapes() {
        let f = frontier(&[pent(1.0, 1.0, 1.5)]).unwrap();
        assert_eq!(
            f.vertices,
            vec![(1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 1.0)]
        );

        let nested = frontier(&[pent(1.0, 1.0, 1.5), pent(2.0, 2.0, 3.0)]).unwrap();
        assert_eq!(nested, frontier(&[pent(2.0, 2.0, 3.0)]).unwrap());

        let f = frontier(&[pent(1.0, 0.2, 1.2), pent(0.2, 1.0, 1.2)]).unwrap();
        assert_eq!(
            f.vertices,
            vec![(1.0, 0.0), (1.0, 0.2), (0.2, 1.0), (0.0, 1.0)]
        );

        let zero = frontier(&[pent(0.0, 0.0, 0.0)]).unwrap();
        assert_eq!(zero.vertices, vec![(0.0, 0.0)]);
        let axis = frontier(&[pent(0.0, 2.0, 5.0)]).unwrap();
        assert_eq!(axis.vertices, vec![(0.0, 2.0)]);
    }

    #[test]
    fn frontier_csv() {
        let f = frontier(&[pent(1.0, 1.0, 1.5)]).unwrap();
        assert_eq!(f.to_csv(), "R1,R2\n1,0\n1,0.5\n0.5,1\n0,1\n");
    }

    #[test]
    fn grid_endpoints() {
        let g = direction_grid(181);
        assert_eq!(g.len(), 181);
        assert_eq!(g[0], Direction { w1: 1.0, w2: 0.0 });
        assert!(g[180].w1.abs() < 1e-16 && g[180].w2 == 1.0);
        assert!((g[90].w1 - 0.5).abs() < 1e-15);
    }
}
