//! Linear complementarity problems `z >= 0, w = Mz + q >= 0, z.w = 0`:
//! Lemke pivoting, exact enumeration of the whole solution set, w-uniqueness,
//! and the exact column adequacy test for matrices.

use std::cmp::Ordering;

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{solve_affine, Matrix};
use crate::numeric::{dot, is_zero_vec, Rational};
use crate::verdict::{Certificate, Counterexample, SearchReport, Verdict, Witness};

/// Default largest size for exact solution-set enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;
/// Default largest size for the exact sign-orthant adequacy test.
pub const DEFAULT_ADEQUACY_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpInstance {
    m: Matrix,
    q: Vec<Rational>,
}

impl LcpInstance {
    pub fn new(m: Matrix, q: Vec<Rational>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if q.len() != m.rows() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: q.len(),
            });
        }
        Ok(LcpInstance { m, q })
    }

    pub fn size(&self) -> usize {
        self.q.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn q(&self) -> &[Rational] {
        &self.q
    }

    /// `w = Mz + q`.
    pub fn w(&self, z: &[Rational]) -> Vec<Rational> {
        self.m.mul_vec(z).into_iter().zip(&self.q).map(|(a, b)| a + b).collect()
    }

    /// Exact solution test.
    pub fn verify(&self, z: &[Rational]) -> bool {
        if z.len() != self.size() {
            return false;
        }
        let w = self.w(z);
        z.iter()
            .zip(&w)
            .all(|(zi, wi)| !zi.is_negative() && !wi.is_negative() && (zi * wi).is_zero())
    }

    /// Floating-point solution test with absolute tolerance `tol`.
    pub fn verify_f64(&self, z: &[f64], tol: f64) -> bool {
        if z.len() != self.size() {
            return false;
        }
        let mz = self.m.mul_vec_f64(z);
        z.iter().zip(mz).zip(&self.q).all(|((&zi, mzi), qi)| {
            let wi = mzi + crate::numeric::to_f64(qi);
            zi >= -tol && wi >= -tol && (zi * wi).abs() <= tol
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemkeOutcome {
    Solved {
        z: Vec<Rational>,
        w: Vec<Rational>,
        pivots: usize,
    },
    /// Secondary ray: the entering column had no positive entry. This is
    /// evidence, not proof, that the instance is infeasible.
    Ray { pivots: usize },
}

/// Lemke's complementary pivoting with covering vector `e` and the
/// lexicographic ratio test.
pub fn lemke_solve(inst: &LcpInstance) -> Result<LemkeOutcome> {
    let k = inst.size();
    if inst.q.iter().all(|v| !v.is_negative()) {
        return Ok(LemkeOutcome::Solved {
            z: vec![Rational::zero(); k],
            w: inst.q.clone(),
            pivots: 0,
        });
    }
    // columns: w (0..k), z (k..2k), z0 (2k), rhs (2k+1)
    let width = 2 * k + 2;
    let rhs = 2 * k + 1;
    let z0 = 2 * k;
    let mut t = Matrix::zeros(k, width);
    for i in 0..k {
        t.set(i, i, Rational::one());
        for j in 0..k {
            t.set(i, k + j, -inst.m.get(i, j).clone());
        }
        t.set(i, z0, -Rational::one());
        t.set(i, rhs, inst.q[i].clone());
    }
    let mut basis: Vec<usize> = (0..k).collect();

    // first pivot: most negative q, ties broken lexicographically (largest index)
    let mut row = 0;
    for i in 1..k {
        if inst.q[i] <= inst.q[row] {
            row = i;
        }
    }
    let cap = iteration_cap(k);
    let mut entering = z0;
    let mut pivots = 0;
    loop {
        pivot(&mut t, row, entering);
        pivots += 1;
        let leaving = std::mem::replace(&mut basis[row], entering);
        if leaving == z0 {
            break;
        }
        if pivots > cap {
            return Err(Error::IterationLimit(cap));
        }
        entering = if leaving < k { leaving + k } else { leaving - k };
        match lexicographic_ratio_row(&t, entering, k, rhs) {
            Some(r) => row = r,
            None => return Ok(LemkeOutcome::Ray { pivots }),
        }
    }
    let mut z = vec![Rational::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if (k..2 * k).contains(&b) {
            z[b - k] = t.get(i, rhs).clone();
        }
    }
    let w = inst.w(&z);
    Ok(LemkeOutcome::Solved { z, w, pivots })
}

fn iteration_cap(k: usize) -> usize {
    let exp = 1usize << k.min(20);
    exp.saturating_mul(k.max(1)).max(64)
}

fn pivot(t: &mut Matrix, row: usize, col: usize) {
    let inv = t.get(row, col).recip();
    let width = t.cols();
    for j in 0..width {
        let v = t.get(row, j) * &inv;
        t.set(row, j, v);
    }
    for i in 0..t.rows() {
        if i == row || t.get(i, col).is_zero() {
            continue;
        }
        let factor = t.get(i, col).clone();
        for j in 0..width {
            if t.get(row, j).is_zero() {
                continue;
            }
            let v = t.get(i, j) - &factor * t.get(row, j);
            t.set(i, j, v);
        }
    }
}

/// Row minimizing `(rhs_i, B^{-1}_{i,.}) / t_{i,col}` lexicographically over
/// rows with a positive entry in `col`; `B^{-1}` occupies columns `0..k`.
fn lexicographic_ratio_row(t: &Matrix, col: usize, k: usize, rhs: usize) -> Option<usize> {
    let key = |i: usize| -> Vec<Rational> {
        let a = t.get(i, col);
        std::iter::once(rhs).chain(0..k).map(|j| t.get(i, j) / a).collect()
    };
    (0..t.rows())
        .filter(|&i| t.get(i, col).is_positive())
        .map(|i| (key(i), i))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, i)| i)
}

/// The solutions with a fixed complementary support `S`: `z_i = 0` off `S`,
/// `w_i = 0` on `S`, as a polyhedron `conv(vertices) + cone(rays)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionPiece {
    /// 0-based support.
    pub support: Vec<usize>,
    /// One solution of the piece (its lexicographically smallest vertex).
    pub base: Vec<Rational>,
    /// Basis of the affine solution set of the support equations before
    /// clipping by nonnegativity.
    pub directions: Vec<Vec<Rational>>,
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    /// `w` is the same at every point of the piece.
    pub w_constant: bool,
    /// The common `w` when `w_constant`.
    pub w: Option<Vec<Rational>>,
}

impl SolutionPiece {
    /// Whether `z` lies in this piece.
    pub fn contains(&self, inst: &LcpInstance, z: &[Rational]) -> bool {
        let w = inst.w(z);
        (0..inst.size()).all(|i| {
            if self.support.contains(&i) {
                !z[i].is_negative() && w[i].is_zero()
            } else {
                z[i].is_zero() && !w[i].is_negative()
            }
        })
    }

    /// Whether `d` is a recession direction of this piece.
    pub fn recedes_along(&self, inst: &LcpInstance, d: &[Rational]) -> bool {
        let md = inst.m.mul_vec(d);
        (0..inst.size()).all(|i| {
            if self.support.contains(&i) {
                !d[i].is_negative() && md[i].is_zero()
            } else {
                d[i].is_zero() && !md[i].is_negative()
            }
        })
    }

    fn includes(&self, inst: &LcpInstance, other: &SolutionPiece) -> bool {
        other.vertices.iter().all(|v| self.contains(inst, v)) && other.rays.iter().all(|r| self.recedes_along(inst, r))
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1 && self.rays.is_empty()
    }
}

/// All solutions of the instance as maximal support pieces.
pub fn enumerate_solutions(inst: &LcpInstance, cap: usize) -> Result<Vec<SolutionPiece>> {
    let k = inst.size();
    if k > cap {
        return Err(Error::CapExceeded {
            what: "LCP enumeration",
            size: k,
            cap,
        });
    }
    let mut pieces: Vec<SolutionPiece> = (0u64..1 << k)
        .into_par_iter()
        .filter_map(|mask| {
            let support: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            support_piece(inst, support)
        })
        .collect();
    pieces.sort_by(|a, b| a.support.cmp(&b.support));
    Ok(maximal_pieces(inst, pieces))
}

fn support_piece(inst: &LcpInstance, support: Vec<usize>) -> Option<SolutionPiece> {
    let k = inst.size();
    // affine system: z_i = 0 off S, (Mz + q)_i = 0 on S
    let mut a = Matrix::zeros(k, k);
    let mut b = vec![Rational::zero(); k];
    for (i, bi) in b.iter_mut().enumerate() {
        if support.contains(&i) {
            for j in 0..k {
                a.set(i, j, inst.m.get(i, j).clone());
            }
            *bi = -inst.q[i].clone();
        } else {
            a.set(i, i, Rational::one());
        }
    }
    let affine = solve_affine(&a, &b)?;

    // homogenized polyhedron in (z_S, t): z_S >= 0, t >= 0,
    // (M z + q t)_i = 0 on S, >= 0 off S
    let s = support.len();
    let mut cone = Cone::orthant(&vec![1; s + 1]);
    for i in 0..k {
        let mut h: Vec<Rational> = support.iter().map(|&j| inst.m.get(i, j).clone()).collect();
        h.push(inst.q[i].clone());
        if support.contains(&i) {
            cone.add_equality(&h);
        } else {
            cone.add_inequality(&h);
        }
    }
    let embed = |g: &[Rational], scale: &Rational| -> Vec<Rational> {
        let mut z = vec![Rational::zero(); k];
        for (p, &j) in support.iter().enumerate() {
            z[j] = &g[p] / scale;
        }
        z
    };
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for g in cone.rays() {
        if g[s].is_positive() {
            vertices.push(embed(g, &g[s]));
        } else {
            rays.push(embed(g, &Rational::one()));
        }
    }
    if vertices.is_empty() {
        return None;
    }
    vertices.sort();
    rays.sort();
    let base = vertices[0].clone();
    let w0 = inst.w(&base);
    let w_constant = vertices.iter().all(|v| inst.w(v) == w0) && rays.iter().all(|r| is_zero_vec(&inst.m.mul_vec(r)));
    Some(SolutionPiece {
        support,
        base,
        directions: affine.directions,
        vertices,
        rays,
        w_constant,
        w: w_constant.then_some(w0),
    })
}

/// Drops pieces contained in another piece; among equal pieces keeps the one
/// with the larger support (then the earlier one).
fn maximal_pieces(inst: &LcpInstance, pieces: Vec<SolutionPiece>) -> Vec<SolutionPiece> {
    let dominated = |i: usize| {
        let p = &pieces[i];
        pieces.iter().enumerate().any(|(j, other)| {
            if i == j || !other.includes(inst, p) {
                return false;
            }
            if !p.includes(inst, other) {
                return true;
            }
            match other.support.len().cmp(&p.support.len()) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => j < i,
            }
        })
    };
    let keep: Vec<bool> = (0..pieces.len()).into_par_iter().map(|i| !dominated(i)).collect();
    pieces
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WUniquenessReport {
    pub unique: bool,
    /// The solution set is empty; `unique` is then true by convention.
    pub vacuous: bool,
    /// Distinct `w` vectors (all of them when `unique`; otherwise at least
    /// the two of the witness pair).
    pub w_values: Vec<Vec<Rational>>,
    /// Two solutions `z` with different `w`.
    pub witness_pair: Option<(Vec<Rational>, Vec<Rational>)>,
    pub pieces: Vec<SolutionPiece>,
}

pub fn w_unique(inst: &LcpInstance, cap: usize) -> Result<WUniquenessReport> {
    let pieces = enumerate_solutions(inst, cap)?;
    Ok(w_uniqueness_of(inst, pieces))
}

pub(crate) fn w_uniqueness_of(inst: &LcpInstance, pieces: Vec<SolutionPiece>) -> WUniquenessReport {
    let mut w_values: Vec<Vec<Rational>> = Vec::new();
    let mut witness_pair = None;
    let mut first_point: Vec<Vec<Rational>> = Vec::new();
    for p in &pieces {
        if !p.w_constant {
            let other = p
                .vertices
                .iter()
                .find(|v| inst.w(v) != inst.w(&p.base))
                .cloned()
                .unwrap_or_else(|| {
                    let r = p
                        .rays
                        .iter()
                        .find(|r| !is_zero_vec(&inst.m.mul_vec(r)))
                        .expect("non-constant piece has a varying generator");
                    p.base.iter().zip(r).map(|(a, b)| a + b).collect()
                });
            witness_pair = Some((p.base.clone(), other));
            break;
        }
        let w = p.w.clone().expect("constant piece carries w");
        if !w_values.contains(&w) {
            w_values.push(w);
            first_point.push(p.base.clone());
        }
        if w_values.len() > 1 {
            witness_pair = Some((first_point[0].clone(), first_point[1].clone()));
            break;
        }
    }
    if let Some((a, b)) = &witness_pair {
        w_values = vec![inst.w(a), inst.w(b)];
    }
    WUniquenessReport {
        unique: witness_pair.is_none(),
        vacuous: pieces.is_empty(),
        w_values,
        witness_pair,
        pieces,
    }
}

/// Exact column adequacy of a square matrix: `z_i (Mz)_i <= 0` for all `i`
/// implies `Mz = 0`. Above `cap` only a sample of sign patterns is examined,
/// so the answer is `Fails` or `Unknown`.
pub fn matrix_column_adequate(m: &Matrix, cap: usize, seed: u64) -> Result<Verdict> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let k = m.rows();
    if k == 0 {
        return Ok(Verdict::Holds(Certificate::ConeRays {
            patterns: 0,
            rays_checked: 0,
        }));
    }
    // C_{-s} = -C_s, so patterns with s_0 = +1 suffice
    let patterns: Vec<u64> = if k <= cap {
        (0..1u64 << (k - 1)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..1024)
            .map(|_| rng.gen::<u64>() & ((1u64 << (k - 1).min(63)) - 1))
            .collect()
    };
    let results: Vec<(usize, Option<Vec<Rational>>)> = patterns
        .par_iter()
        .map(|&mask| {
            let signs: Vec<i8> = (0..k)
                .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 })
                .collect();
            sign_cone_violation(m, &signs)
        })
        .collect();
    let rays_checked = results.iter().map(|r| r.0).sum::<usize>() * 2;
    if let Some(z) = results.into_iter().find_map(|r| r.1) {
        return Ok(Verdict::Fails(matrix_counterexample(m, z)));
    }
    if k <= cap {
        Ok(Verdict::Holds(Certificate::ConeRays {
            patterns: 1 << k,
            rays_checked,
        }))
    } else {
        Ok(Verdict::Unknown(SearchReport {
            seeds: 1,
            samples: patterns.len() as u64,
            best_margin: None,
            notes: vec![format!(
                "size {k} exceeds the exact cap {cap}; sampled sign patterns only"
            )],
        }))
    }
}

/// Extreme rays of `{z : s_i z_i >= 0, s_i (Mz)_i <= 0}`; returns how many
/// were checked and the first one with `Mz != 0`.
fn sign_cone_violation(m: &Matrix, signs: &[i8]) -> (usize, Option<Vec<Rational>>) {
    let k = m.rows();
    let mut cone = Cone::orthant(signs);
    for (i, &sign) in signs.iter().enumerate().take(k) {
        let s = crate::numeric::int(-(sign as i64));
        let h: Vec<Rational> = m.row(i).iter().map(|v| v * &s).collect();
        cone.add_inequality(&h);
    }
    let bad = cone.rays().iter().find(|r| !is_zero_vec(&m.mul_vec(r))).cloned();
    (cone.rays().len(), bad)
}

pub(crate) fn matrix_counterexample(m: &Matrix, z: Vec<Rational>) -> Counterexample {
    let image = m.mul_vec(&z);
    let values = z.iter().zip(&image).map(|(a, b)| a * b).collect();
    Counterexample {
        witness: Witness::Point { x: z, image, values },
        condition: "z_i (Mz)_i <= 0 for every i, but Mz != 0".to_string(),
    }
}

/// For `z` with `z_i (Mz)_i <= 0` and `v = Mz != 0`, the right-hand side
/// `q = v^+ - M z^+` for which `z^+` and `z^-` are solutions with different
/// `w` (`v^+` and `v^-` respectively).
pub fn ingleton_rhs(m: &Matrix, z: &[Rational]) -> Option<Vec<Rational>> {
    let v = m.mul_vec(z);
    if is_zero_vec(&v) || z.iter().zip(&v).any(|(a, b)| (a * b).is_positive()) {
        return None;
    }
    let zp = positive_part(z);
    let mzp = m.mul_vec(&zp);
    Some(positive_part(&v).iter().zip(mzp).map(|(a, b)| a - b).collect())
}

pub fn positive_part(v: &[Rational]) -> Vec<Rational> {
    v.iter()
        .map(|x| if x.is_positive() { x.clone() } else { Rational::zero() })
        .collect()
}

pub fn negative_part(v: &[Rational]) -> Vec<Rational> {
    v.iter()
        .map(|x| if x.is_negative() { -x.clone() } else { Rational::zero() })
        .collect()
}

/// Sum of `|z_i w_i|` plus negative parts, a cheap residual used in reports.
pub fn residual(inst: &LcpInstance, z: &[Rational]) -> Rational {
    let w = inst.w(z);
    let neg: Rational = z.iter().chain(&w).filter(|v| v.is_negative()).map(|v| -v.clone()).sum();
    neg + dot(z, &w).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{frac, int, ints};

    fn inst(rows: &[&[i64]], q: &[i64]) -> LcpInstance {
        LcpInstance::new(Matrix::from_ints(rows), ints(q)).unwrap()
    }

    fn ex1() -> LcpInstance {
        inst(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]], &[0, -1, 0])
    }

    fn ex2() -> LcpInstance {
        inst(
            &[&[1, 0, -2, 1], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
            &[0, -1, 0, 0],
        )
    }

    #[test]
    fn construction_errors() {
        assert!(LcpInstance::new(Matrix::zeros(2, 3), ints(&[0, 0])).is_err());
        assert!(LcpInstance::new(Matrix::identity(2), ints(&[0])).is_err());
    }

    #[test]
    fn verify_examples() {
        assert!(ex1().verify(&ints(&[0, 1, 0])));
        assert!(ex1().verify(&ints(&[0, 1, 5])));
        assert!(!ex1().verify(&ints(&[0, 0, 0])));
        assert!(ex2().verify(&ints(&[1, 1, 1, 1])));
        assert!(!ex2().verify(&ints(&[1, 1])));
        assert!(ex2().verify_f64(&[1.0, 1.0 + 1e-12, 1.0, 1.0], 1e-9));
        assert!(!ex2().verify_f64(&[1.0, 1.1, 1.0, 1.0], 1e-9));
    }

    #[test]
    fn lemke_trivial_and_examples() {
        let i = inst(&[&[1, 0], &[0, 1]], &[1, 2]);
        assert_eq!(
            lemke_solve(&i).unwrap(),
            LemkeOutcome::Solved {
                z: ints(&[0, 0]),
                w: ints(&[1, 2]),
                pivots: 0
            }
        );
        for case in [ex1(), ex2(), inst(&[&[1, -1], &[-1, 1]], &[-1, 1])] {
            match lemke_solve(&case).unwrap() {
                LemkeOutcome::Solved { z, w, .. } => {
                    assert!(case.verify(&z));
                    assert_eq!(w, case.w(&z));
                }
                LemkeOutcome::Ray { .. } => panic!("expected a solution"),
            }
        }
        if let LemkeOutcome::Solved { w, .. } = lemke_solve(&inst(&[&[1, -1], &[-1, 1]], &[-1, 1])).unwrap() {
            assert_eq!(w, ints(&[0, 0]));
        }
    }

    #[test]
    fn lemke_reports_ray_on_infeasible() {
        // w1 = -z1 - 1 can never be nonnegative
        let i = inst(&[&[-1, 0], &[0, 1]], &[-1, 1]);
        assert!(matches!(lemke_solve(&i).unwrap(), LemkeOutcome::Ray { .. }));
    }

    #[test]
    fn enumeration_reproduces_example_families() {
        let pieces = enumerate_solutions(&ex1(), 12).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].vertices, vec![ints(&[0, 1, 0])]);
        assert_eq!(pieces[0].rays, vec![ints(&[0, 0, 1])]);

        let pieces = enumerate_solutions(&ex2(), 12).unwrap();
        assert_eq!(pieces.len(), 2);
        type Shape = (Vec<Vec<Rational>>, Vec<Vec<Rational>>);
        let mut shapes: Vec<Shape> = pieces.iter().map(|p| (p.vertices.clone(), p.rays.clone())).collect();
        shapes.sort();
        let base = vec![ints(&[0, 1, 0, 0])];
        let mut expected = vec![
            (base.clone(), vec![ints(&[0, 0, 0, 1]), ints(&[0, 0, 1, 2])]),
            (base, vec![ints(&[0, 0, 1, 2]), ints(&[2, 0, 1, 0])]),
        ];
        expected.sort();
        assert_eq!(shapes, expected);

        let pieces = enumerate_solutions(&inst(&[&[1, 0], &[0, 1]], &[1, 1]), 12).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].is_point());
        assert_eq!(pieces[0].base, ints(&[0, 0]));
        assert!(enumerate_solutions(&LcpInstance::new(Matrix::identity(13), vec![int(0); 13]).unwrap(), 12).is_err());
    }

    #[test]
    fn w_uniqueness_examples() {
        let r = w_unique(&ex1(), 12).unwrap();
        assert!(r.unique && !r.vacuous);
        assert_eq!(r.w_values, vec![ints(&[0, 0, 0])]);

        let r = w_unique(&inst(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]], &[2, 3, 0]), 12).unwrap();
        assert!(r.unique);
        assert_eq!(r.w_values, vec![ints(&[2, 3, 0])]);

        let i = inst(&[&[0, 0], &[1, 0]], &[0, -1]);
        let r = w_unique(&i, 12).unwrap();
        assert!(!r.unique);
        let (a, b) = r.witness_pair.unwrap();
        assert!(i.verify(&a) && i.verify(&b));
        assert_ne!(i.w(&a), i.w(&b));
        assert!(i.verify(&ints(&[1, 0])) && i.w(&ints(&[2, 0])) == ints(&[0, 1]));

        let empty = w_unique(&inst(&[&[-1]], &[-1]), 12).unwrap();
        assert!(empty.unique && empty.vacuous);
    }

    #[test]
    fn adequacy_examples() {
        let v = matrix_column_adequate(&Matrix::from_ints(&[&[1, -1], &[-1, 1]]), 8, 0).unwrap();
        assert!(v.is_holds());
        assert!(matrix_column_adequate(&Matrix::identity(4), 8, 0).unwrap().is_holds());
        let m = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let v = matrix_column_adequate(&m, 8, 0).unwrap();
        let z = v.witness_point().unwrap().to_vec();
        let mz = m.mul_vec(&z);
        assert!(z.iter().zip(&mz).all(|(a, b)| !(a * b).is_positive()));
        assert!(!is_zero_vec(&mz));
        // (1, -1) is a violating direction as well
        let z = ints(&[1, -1]);
        assert_eq!(m.mul_vec(&z), ints(&[0, 1]));
    }

    #[test]
    fn ingleton_construction() {
        let m = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let z = ints(&[1, -1]);
        let q = ingleton_rhs(&m, &z).unwrap();
        let i = LcpInstance::new(m.clone(), q).unwrap();
        let zp = positive_part(&z);
        let zn = negative_part(&z);
        assert!(i.verify(&zp) && i.verify(&zn));
        assert_ne!(i.w(&zp), i.w(&zn));
        assert!(ingleton_rhs(&Matrix::identity(2), &ints(&[1, 1])).is_none());
    }

    #[test]
    fn singular_support_keeps_family() {
        // w = z1 - z2 - 1 on row 1, w2 = -z1 + z2 + 1: z = (1 + t, t)
        let i = inst(&[&[1, -1], &[-1, 1]], &[-1, 1]);
        let pieces = enumerate_solutions(&i, 12).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].base, ints(&[1, 0]));
        assert_eq!(pieces[0].rays, vec![ints(&[1, 1])]);
        assert!(pieces[0].w_constant);
        assert_eq!(pieces[0].w, Some(ints(&[0, 0])));
        assert_eq!(residual(&i, &[frac(3, 2), frac(1, 2)]), int(0));
    }
}
