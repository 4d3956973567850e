//! Polyhedral cones `{z : h_j . z >= 0, e_k . z = 0}` and their generators,
//! computed by the double description method in exact arithmetic.

use num::{Signed, Zero};

use crate::numeric::{dot, primitive, Rational};

/// A cone `L + cone(R)` with lineality basis `L` and extreme rays `R`
/// (extreme modulo `L`), together with the constraints that cut it out.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    inequalities: Vec<Vec<Rational>>,
    lineality: Vec<Vec<Rational>>,
    rays: Vec<Vec<Rational>>,
}

impl Cone {
    /// All of `R^dim`.
    pub fn full_space(dim: usize) -> Self {
        let lineality = (0..dim).map(|i| unit(dim, i, 1)).collect();
        Cone {
            dim,
            inequalities: Vec::new(),
            lineality,
            rays: Vec::new(),
        }
    }

    /// The closed orthant `{z : signs_i z_i >= 0}`; `signs_i = 0` leaves
    /// coordinate `i` free.
    pub fn orthant(signs: &[i8]) -> Self {
        let dim = signs.len();
        let mut cone = Cone {
            dim,
            inequalities: Vec::new(),
            lineality: Vec::new(),
            rays: Vec::new(),
        };
        for (i, &s) in signs.iter().enumerate() {
            if s == 0 {
                cone.lineality.push(unit(dim, i, 1));
            } else {
                cone.rays.push(unit(dim, i, s as i64));
                cone.inequalities.push(unit(dim, i, s as i64));
            }
        }
        cone
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality(&self) -> &[Vec<Rational>] {
        &self.lineality
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    /// Intersects with the half-space `h . z >= 0`.
    pub fn add_inequality(&mut self, h: &[Rational]) {
        assert_eq!(h.len(), self.dim, "constraint dimension mismatch");
        if let Some(l) = self.take_transversal_lineality(h) {
            // l now satisfies h.l > 0 and every other generator lies in h^perp
            self.rays.push(primitive(&l));
            self.inequalities.push(h.to_vec());
            return;
        }
        let values: Vec<Rational> = self.rays.iter().map(|r| dot(h, r)).collect();
        let pos: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            self.inequalities.push(h.to_vec());
            return;
        }
        let mut next: Vec<Vec<Rational>> = (0..self.rays.len())
            .filter(|&i| !values[i].is_negative())
            .map(|i| self.rays[i].clone())
            .collect();
        next.extend(self.combine_adjacent(&pos, &neg, &values));
        self.rays = dedup(next);
        self.inequalities.push(h.to_vec());
    }

    /// Intersects with the hyperplane `h . z = 0`.
    pub fn add_equality(&mut self, h: &[Rational]) {
        assert_eq!(h.len(), self.dim, "constraint dimension mismatch");
        if self.take_transversal_lineality(h).is_some() {
            // the transversal direction is dropped: it leaves the hyperplane
            self.push_equality(h);
            return;
        }
        let values: Vec<Rational> = self.rays.iter().map(|r| dot(h, r)).collect();
        let pos: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Vec<Rational>> = (0..self.rays.len())
            .filter(|&i| values[i].is_zero())
            .map(|i| self.rays[i].clone())
            .collect();
        next.extend(self.combine_adjacent(&pos, &neg, &values));
        self.rays = dedup(next);
        self.push_equality(h);
    }

    /// Records a hyperplane as two opposite inequalities, so that later
    /// adjacency tests see it as tight everywhere.
    fn push_equality(&mut self, h: &[Rational]) {
        self.inequalities.push(h.to_vec());
        self.inequalities.push(h.iter().map(|v| -v.clone()).collect());
    }

    /// If some lineality vector is not orthogonal to `h`, removes it from the
    /// lineality basis, projects every other generator into `h^perp` along
    /// it, and returns it oriented so that `h . l > 0`.
    fn take_transversal_lineality(&mut self, h: &[Rational]) -> Option<Vec<Rational>> {
        let pos = self.lineality.iter().position(|l| !dot(h, l).is_zero())?;
        let mut l = self.lineality.swap_remove(pos);
        let hl = dot(h, &l);
        if hl.is_negative() {
            l.iter_mut().for_each(|v| *v = -v.clone());
        }
        let hl = hl.abs();
        let project = |v: &Vec<Rational>| -> Vec<Rational> {
            let c = dot(h, v) / &hl;
            if c.is_zero() {
                return v.clone();
            }
            v.iter().zip(&l).map(|(a, b)| a - &c * b).collect()
        };
        self.lineality = self.lineality.iter().map(project).map(|v| primitive(&v)).collect();
        self.rays = dedup(self.rays.iter().map(project).collect());
        Some(l)
    }

    fn combine_adjacent(&self, pos: &[usize], neg: &[usize], values: &[Rational]) -> Vec<Vec<Rational>> {
        let tight: Vec<Vec<bool>> = self
            .rays
            .iter()
            .map(|r| self.inequalities.iter().map(|h| dot(h, r).is_zero()).collect())
            .collect();
        let mut out = Vec::new();
        for &p in pos {
            for &n in neg {
                if !self.adjacent(p, n, &tight) {
                    continue;
                }
                let a = &values[p];
                let b = -values[n].clone();
                let combined: Vec<Rational> = self.rays[n]
                    .iter()
                    .zip(&self.rays[p])
                    .map(|(rn, rp)| a * rn + &b * rp)
                    .collect();
                out.push(primitive(&combined));
            }
        }
        out
    }

    /// Combinatorial adjacency: no third ray is tight on every constraint
    /// that both `p` and `n` are tight on.
    fn adjacent(&self, p: usize, n: usize, tight: &[Vec<bool>]) -> bool {
        let common: Vec<usize> = (0..self.inequalities.len())
            .filter(|&j| tight[p][j] && tight[n][j])
            .collect();
        // a pair of adjacent rays shares at least (rank - 2) tight constraints
        let needed = self.dim.saturating_sub(self.lineality.len()).saturating_sub(2);
        if common.len() < needed {
            return false;
        }
        !(0..self.rays.len())
            .filter(|&r| r != p && r != n)
            .any(|r| common.iter().all(|&j| tight[r][j]))
    }

    /// Membership test against the recorded constraints.
    pub fn contains(&self, z: &[Rational]) -> bool {
        self.inequalities.iter().all(|h| !dot(h, z).is_negative())
    }
}

fn unit(dim: usize, i: usize, sign: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = crate::numeric::int(sign);
    v
}

fn dedup(rays: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(rays.len());
    for r in rays {
        if crate::numeric::is_zero_vec(&r) {
            continue;
        }
        let r = primitive(&r);
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}
