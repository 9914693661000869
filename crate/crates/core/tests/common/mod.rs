//! Reference implementations used only by the tests. None of them share
//! code with the library's evaluators.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;

use ifccr::model::{DiscreteChannel, GaussianChannel, Pentagon, ProductInputDistribution, Th1Distribution};

/// Joint law stored as a list of `(assignment, probability)` atoms.
pub struct Atoms {
    pub names: Vec<&'static str>,
    pub atoms: Vec<(Vec<usize>, f64)>,
}

impl Atoms {
    fn positions(&self, set: &[&str]) -> Vec<usize> {
        set.iter()
            .map(|s| self.names.iter().position(|n| n == s).expect("known variable"))
            .collect()
    }

    fn project(&self, set: &[&str]) -> BTreeMap<Vec<usize>, f64> {
        let pos = self.positions(set);
        let mut m = BTreeMap::new();
        for (a, p) in &self.atoms {
            let key: Vec<usize> = pos.iter().map(|&i| a[i]).collect();
            *m.entry(key).or_insert(0.0) += p;
        }
        m
    }

    /// `I(A; B | C)` in bits as the expectation of
    /// `log p(a,b,c) p(c) / (p(a,c) p(b,c))`.
    pub fn mi(&self, a: &[&str], b: &[&str], c: &[&str]) -> f64 {
        let abc: Vec<&str> = a.iter().chain(b).chain(c).copied().collect();
        let ac: Vec<&str> = a.iter().chain(c).copied().collect();
        let bc: Vec<&str> = b.iter().chain(c).copied().collect();
        let (p_abc, p_ac, p_bc, p_c) = (self.project(&abc), self.project(&ac), self.project(&bc), self.project(c));
        let (na, nb) = (a.len(), b.len());
        let mut total = 0.0;
        for (k, &p) in &p_abc {
            if p <= 0.0 {
                continue;
            }
            let ka = &k[..na];
            let kb = &k[na..na + nb];
            let kc = &k[na + nb..];
            let key_ac: Vec<usize> = ka.iter().chain(kc).copied().collect();
            let key_bc: Vec<usize> = kb.iter().chain(kc).copied().collect();
            let pc = p_c.get(kc).copied().unwrap_or(1.0);
            total += p * (p * pc / (p_ac[&key_ac] * p_bc[&key_bc])).log2();
        }
        total
    }
}

/// Full joint over `(Q, U1, U2, X1, X2, Xc, Y1, Y2)` by direct enumeration.
pub fn th1_atoms(ch: &DiscreteChannel, d: &Th1Distribution) -> Atoms {
    let s = ch.sizes();
    let (k1, k2) = d.aux_sizes();
    let mut atoms = Vec::new();
    for (q, &pq) in d.q().iter().enumerate() {
        let inp = d.input(q);
        for x1 in 0..s.n1 {
            for x2 in 0..s.n2 {
                for xc in 0..s.nc {
                    let px = pq * inp.p1()[x1] * inp.p2()[x2] * inp.relay_given(x1, x2)[xc];
                    let pu = d.aux_given(q, x1, x2, xc);
                    for u1 in 0..k1 {
                        for u2 in 0..k2 {
                            for y1 in 0..s.m1 {
                                for y2 in 0..s.m2 {
                                    let p = px * pu[u1 * k2 + u2] * ch.prob(y1, y2, x1, x2, xc);
                                    atoms.push((vec![q, u1, u2, x1, x2, xc, y1, y2], p));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Atoms {
        names: vec!["Q", "U1", "U2", "X1", "X2", "Xc", "Y1", "Y2"],
        atoms,
    }
}

pub fn product_atoms(ch: &DiscreteChannel, d: &ProductInputDistribution) -> Atoms {
    th1_atoms(ch, &Th1Distribution::trivial(d.clone()))
}

/// The nine outer-bound expressions, expanded independently.
pub fn th1_brute(ch: &DiscreteChannel, d: &Th1Distribution) -> [f64; 9] {
    let j = th1_atoms(ch, d);
    [
        j.mi(&["Y1"], &["X1", "Xc"], &["X2", "Q"]),
        j.mi(&["Y1"], &["U2", "X1"], &["Q"]),
        j.mi(&["Y2"], &["X2", "Xc"], &["X1", "Q"]),
        j.mi(&["Y2"], &["U1", "X2"], &["Q"]),
        j.mi(&["Y1"], &["X1", "Xc"], &["U1", "X2", "Q"]) + j.mi(&["Y2"], &["U1", "X2"], &["Q"]),
        j.mi(&["Y2"], &["X2", "Xc"], &["U2", "X1", "Q"]) + j.mi(&["Y1"], &["U2", "X1"], &["Q"]),
        j.mi(&["Y1"], &["U2"], &["Q"]) + j.mi(&["Y2"], &["U1"], &["Q"]),
        j.mi(&["Y1"], &["X1", "X2", "Xc"], &["Q"]) + j.mi(&["Y2"], &["X2", "Xc"], &["Y1", "X1", "Q"]),
        j.mi(&["Y2"], &["X1", "X2", "Xc"], &["Q"]) + j.mi(&["Y1"], &["X1", "Xc"], &["Y2", "X2", "Q"]),
    ]
}

/// Maximizes `w . x` over `{x : a . x <= b}` by enumerating every vertex
/// (pairwise intersection of constraint lines) and keeping the feasible
/// ones. Assumes a bounded feasible set.
pub fn lp_max(constraints: &[([f64; 2], f64)], w: [f64; 2]) -> f64 {
    let feasible = |x: [f64; 2]| {
        constraints
            .iter()
            .all(|(a, b)| a[0] * x[0] + a[1] * x[1] <= b + 1e-12 * (1.0 + b.abs()))
    };
    let mut best = f64::NEG_INFINITY;
    for i in 0..constraints.len() {
        for j in i + 1..constraints.len() {
            let ((a, b), (c, d)) = (constraints[i], constraints[j]);
            let det = a[0] * c[1] - a[1] * c[0];
            if det.abs() < 1e-14 {
                continue;
            }
            let x = [(b * c[1] - a[1] * d) / det, (a[0] * d - b * c[0]) / det];
            if feasible(x) {
                best = best.max(w[0] * x[0] + w[1] * x[1]);
            }
        }
    }
    best
}

pub fn pentagon_constraints(p: &Pentagon) -> Vec<([f64; 2], f64)> {
    let mut c = vec![
        ([-1.0, 0.0], 0.0),
        ([0.0, -1.0], 0.0),
        ([1.0, 0.0], p.r1_max),
        ([0.0, 1.0], p.r2_max),
        ([1.0, 1.0], p.sum_max),
    ];
    if let Some(s) = p.sum_max2 {
        c.push(([1.0, 1.0], s));
    }
    c
}

/// `max_{|b| <= 1} |h22 + h2c b|^2 - |h12 + h1c b|^2` for user 1, from the
/// quadratic in `|b|` after aligning the phase.
pub fn strong_margin_oracle(ch: &GaussianChannel) -> f64 {
    let c0 = ch.h22 * ch.h22 - ch.h12.norm_sqr();
    let c2 = ch.h2c * ch.h2c - ch.h1c * ch.h1c;
    let c1 = 2.0 * (ch.h2c * ch.h22 - ch.h1c * ch.h12).norm();
    let f = |r: f64| c0 + c2 * r * r + c1 * r;
    let mut best = f(0.0).max(f(1.0));
    if c2 < 0.0 {
        let r = -c1 / (2.0 * c2);
        if (0.0..=1.0).contains(&r) {
            best = best.max(f(r));
        }
    }
    best
}

/// Maximum over the relay sphere of the very strong objective, by the
/// Cauchy-Schwarz bound on its linear part.
pub fn very_strong_margin_oracle(ch: &GaussianChannel) -> f64 {
    let (a, c) = (ch.h1c, ch.h2c);
    let u = a * ch.h11 - c * ch.h21.conj();
    let v = a * ch.h12.conj() - c * ch.h22;
    ch.h11 * ch.h11 + ch.h12.norm_sqr() - ch.h21.norm_sqr() - ch.h22 * ch.h22 + a * a - c * c
        + 2.0 * (u.norm_sqr() + v.norm_sqr()).sqrt()
}

/// Brute-force maximum of the very strong objective on a dense
/// `(t, phi1, phi2)` grid.
pub fn very_strong_dense_grid(ch: &GaussianChannel, n: usize) -> f64 {
    let m = |p: Complex64, q: f64, b: Complex64| (p + q * b).norm_sqr();
    let r = |x: f64| Complex64::new(x, 0.0);
    let mut best = f64::NEG_INFINITY;
    for i in 0..=n {
        let t = std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
        for j in 0..n {
            for k in 0..n {
                let b1 = Complex64::from_polar(t.sin(), 2.0 * std::f64::consts::PI * j as f64 / n as f64);
                let b2 = Complex64::from_polar(t.cos(), 2.0 * std::f64::consts::PI * k as f64 / n as f64);
                let v = m(r(ch.h11), ch.h1c, b1) + m(ch.h12, ch.h1c, b2)
                    - m(ch.h21, ch.h2c, b1)
                    - m(r(ch.h22), ch.h2c, b2);
                best = best.max(v);
            }
        }
    }
    best
}
