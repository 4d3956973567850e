//! Counterexample search for the universally quantified class conditions.
//!
//! The search runs an exact rational grid, uniform float sampling and a
//! pattern-search descent on a violation margin. Float hits are only
//! candidates: each is snapped to nearby rationals and re-checked exactly,
//! and only exactly verified points are ever returned.

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::numeric::{frac, int, is_zero_vec, snap, Rational};
use crate::tensor::SparseTensor;
use crate::verdict::{Counterexample, SearchReport, Witness};

/// The violated side of a class definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `x_i (Ax^{m-1})_i <= 0` for all `i` but `Ax^{m-1} != 0`.
    Adequacy,
    /// `x_i^{m-1} (Ax^{m-1})_i <= 0` for all `i` but `Ax^{m-1} != 0`.
    WeakAdequacy,
    /// `x_i (Ax^{m-1})_i <= 0` for all `i` with at least one `< 0`.
    Sufficiency,
    /// `x != 0` and `x_i (Ax^{m-1})_i < 0` wherever `x_i != 0`.
    P0,
    /// `x != 0` and `x_i (Ax^{m-1})_i <= 0` wherever `x_i != 0`.
    P,
    /// `x != 0` and `x_i^{m-1} (Ax^{m-1})_i < 0` wherever `x_i != 0`.
    WeakP0,
    /// `A x^m < 0`.
    Psd,
    /// `x >= 0, x != 0` and `(Ax^{m-1})_i < 0` wherever `x_i > 0`.
    SemiPositive,
    /// `x >= 0, x != 0` and `(Ax^{m-1})_i <= 0` wherever `x_i > 0`.
    StrictlySemiPositive,
}

impl Condition {
    pub fn describe(self) -> &'static str {
        match self {
            Condition::Adequacy => "x_i (A x^{m-1})_i <= 0 for every i, but A x^{m-1} != 0",
            Condition::WeakAdequacy => "x_i^{m-1} (A x^{m-1})_i <= 0 for every i, but A x^{m-1} != 0",
            Condition::Sufficiency => "x_i (A x^{m-1})_i <= 0 for every i, and < 0 for some i",
            Condition::P0 => "x != 0 and x_i (A x^{m-1})_i < 0 for every i with x_i != 0",
            Condition::P => "x != 0 and x_i (A x^{m-1})_i <= 0 for every i with x_i != 0",
            Condition::WeakP0 => "x != 0 and x_i^{m-1} (A x^{m-1})_i < 0 for every i with x_i != 0",
            Condition::Psd => "A x^m < 0",
            Condition::SemiPositive => "x >= 0, x != 0 and (A x^{m-1})_i < 0 for every i with x_i > 0",
            Condition::StrictlySemiPositive => "x >= 0, x != 0 and (A x^{m-1})_i <= 0 for every i with x_i > 0",
        }
    }

    fn nonnegative_domain(self) -> bool {
        matches!(self, Condition::SemiPositive | Condition::StrictlySemiPositive)
    }

    /// Exact check of `x` against the condition.
    pub fn exact_violation(self, t: &SparseTensor, x: &[Rational]) -> Option<Counterexample> {
        let image = t.apply_deg(x).ok()?;
        let k = t.order() - 1;
        let values: Vec<Rational> = match self {
            Condition::WeakAdequacy | Condition::WeakP0 => x
                .iter()
                .zip(&image)
                .map(|(a, b)| crate::numeric::pow(a, k) * b)
                .collect(),
            Condition::Psd => vec![x.iter().zip(&image).map(|(a, b)| a * b).sum()],
            Condition::SemiPositive | Condition::StrictlySemiPositive => image.clone(),
            _ => x.iter().zip(&image).map(|(a, b)| a * b).collect(),
        };
        let on_support = |strict: bool| {
            !is_zero_vec(x)
                && x.iter()
                    .zip(&values)
                    .all(|(a, v)| a.is_zero() || if strict { v.is_negative() } else { !v.is_positive() })
        };
        let violated = match self {
            Condition::Adequacy | Condition::WeakAdequacy => {
                values.iter().all(|v| !v.is_positive()) && !is_zero_vec(&image)
            }
            Condition::Sufficiency => values.iter().all(|v| !v.is_positive()) && values.iter().any(|v| v.is_negative()),
            Condition::P0 | Condition::WeakP0 => on_support(true),
            Condition::P => on_support(false),
            Condition::Psd => values[0].is_negative(),
            Condition::SemiPositive => x.iter().all(|a| !a.is_negative()) && on_support(true),
            Condition::StrictlySemiPositive => x.iter().all(|a| !a.is_negative()) && on_support(false),
        };
        violated.then(|| Counterexample {
            witness: Witness::Point {
                x: x.to_vec(),
                image,
                values,
            },
            condition: self.describe().to_string(),
        })
    }

    /// Float violation margin on a normalized `x`; smaller is closer to a
    /// violation. Used only to steer the descent.
    fn margin(self, t: &SparseTensor, x: &[f64]) -> f64 {
        let image = t.apply_deg_f64(x);
        let k = (t.order() - 1) as i32;
        let prod = |i: usize| x[i] * image[i];
        let weak = |i: usize| x[i].powi(k) * image[i];
        let img_norm = image.iter().fold(0.0f64, |m, v| m.max(v.abs())).min(1.0);
        let n = x.len();
        let max_over = |f: &dyn Fn(usize) -> f64, support_only: bool| {
            (0..n)
                .filter(|&i| !support_only || x[i].abs() > 1e-9)
                .map(f)
                .fold(f64::NEG_INFINITY, f64::max)
        };
        match self {
            Condition::Adequacy => max_over(&prod, false) - 1e-3 * img_norm,
            Condition::WeakAdequacy => max_over(&weak, false) - 1e-3 * img_norm,
            Condition::Sufficiency => {
                let min = (0..n).map(prod).fold(f64::INFINITY, f64::min);
                max_over(&prod, false) + 1e-3 * min.min(0.0)
            }
            Condition::P0 | Condition::P => max_over(&prod, true),
            Condition::WeakP0 => max_over(&weak, true),
            Condition::Psd => (0..n).map(prod).sum(),
            Condition::SemiPositive | Condition::StrictlySemiPositive => max_over(&|i: usize| image[i], true),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub seeds: u64,
    /// Uniform samples per seed.
    pub samples: usize,
    /// Descent runs per seed.
    pub descents: usize,
    /// Largest number of exact grid points examined.
    pub grid_cap: usize,
    pub base_seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seeds: 4,
            samples: 10_000,
            descents: 32,
            grid_cap: 200_000,
            base_seed: 0,
        }
    }
}

pub enum SearchOutcome {
    Found(Counterexample),
    NotFound(SearchReport),
}

/// Float margin below which an unconfirmed point counts as a numerical-only hit.
const NUMERICAL_MARGIN: f64 = 1e-9;

/// Runs the whole pipeline; the first exactly verified point wins.
pub fn falsify(t: &SparseTensor, cond: Condition, opts: &SearchOptions) -> SearchOutcome {
    if let Some(c) = grid_search(t, cond, opts.grid_cap) {
        return SearchOutcome::Found(c);
    }
    let per_seed: Vec<(Option<Counterexample>, f64, usize)> = (0..opts.seeds)
        .into_par_iter()
        .map(|s| seed_search(t, cond, opts, opts.base_seed.wrapping_add(s)))
        .collect();
    let best = per_seed.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let numerical: usize = per_seed.iter().map(|r| r.2).sum();
    if let Some(c) = per_seed.into_iter().find_map(|r| r.0) {
        return SearchOutcome::Found(c);
    }
    let mut notes = vec![format!("no exactly verified point with {}", cond.describe())];
    if numerical > 0 {
        notes.push(format!(
            "numerical-only: {numerical} float point(s) violated the condition but lost the violation after snapping"
        ));
    }
    SearchOutcome::NotFound(SearchReport {
        seeds: opts.seeds,
        samples: opts.seeds * (opts.samples + opts.descents) as u64,
        best_margin: best.is_finite().then_some(best),
        notes,
    })
}

/// Grid values ordered so that small integers come first:
/// 1, -1, 2, -2, 1/2, -1/2, 3/2, -3/2 (0 handled by the support choice).
fn grid_values(nonnegative: bool) -> Vec<Rational> {
    let mut v = Vec::new();
    for r in [int(1), int(2), frac(1, 2), frac(3, 2)] {
        v.push(r.clone());
        if !nonnegative {
            v.push(-r);
        }
    }
    v
}

/// Exact search over `{0, ±1/2, ±1, ±3/2, ±2}^n`, smallest supports first.
fn grid_search(t: &SparseTensor, cond: Condition, cap: usize) -> Option<Counterexample> {
    let n = t.dim();
    let values = grid_values(cond.nonnegative_domain());
    let mut budget = cap;
    for size in 1..=n {
        for support in subsets_of_size(n, size) {
            let count = values.len().checked_pow(size as u32).unwrap_or(usize::MAX);
            if count > budget {
                return None;
            }
            budget -= count;
            for code in 0..count {
                let mut x = vec![Rational::zero(); n];
                let mut rest = code;
                // last support coordinate varies fastest
                for &i in support.iter().rev() {
                    x[i] = values[rest % values.len()].clone();
                    rest /= values.len();
                }
                if let Some(c) = cond.exact_violation(t, &x) {
                    return Some(c);
                }
            }
        }
    }
    None
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

fn seed_search(
    t: &SparseTensor,
    cond: Condition,
    opts: &SearchOptions,
    seed: u64,
) -> (Option<Counterexample>, f64, usize) {
    let n = t.dim();
    let mut numerical = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonneg = cond.nonnegative_domain();
    let mut best = f64::INFINITY;
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        // random sparsity so that boundary violations get sampled too
        let keep: f64 = rng.gen_range(0.3..1.0);
        let mut x: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen_bool(keep) {
                    let v: f64 = rng.gen_range(-1.0..1.0);
                    if nonneg {
                        v.abs()
                    } else {
                        v
                    }
                } else {
                    0.0
                }
            })
            .collect();
        if x.iter().all(|v| *v == 0.0) {
            x[rng.gen_range(0..n)] = 1.0;
        }
        x
    };
    for _ in 0..opts.samples {
        let x = draw(&mut rng);
        let margin = cond.margin(t, &x);
        best = best.min(margin);
        if margin <= 0.0 {
            match confirm(t, cond, &x) {
                Some(c) => return (Some(c), best, numerical),
                None if margin < -NUMERICAL_MARGIN => numerical += 1,
                None => {}
            }
        }
    }
    for _ in 0..opts.descents {
        let start = draw(&mut rng);
        let x = descend(t, cond, start);
        let margin = cond.margin(t, &x);
        best = best.min(margin);
        match confirm(t, cond, &x) {
            Some(c) => return (Some(c), best, numerical),
            None if margin < -NUMERICAL_MARGIN => numerical += 1,
            None => {}
        }
    }
    (None, best, numerical)
}

/// Pattern search on the sup-norm sphere (or its nonnegative part).
fn descend(t: &SparseTensor, cond: Condition, mut x: Vec<f64>) -> Vec<f64> {
    let nonneg = cond.nonnegative_domain();
    let normalize = |v: &mut Vec<f64>| {
        if nonneg {
            v.iter_mut().for_each(|a| *a = a.max(0.0));
        }
        let s = v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        if s > 0.0 {
            v.iter_mut().for_each(|a| *a /= s);
        }
    };
    normalize(&mut x);
    let mut f = cond.margin(t, &x);
    let mut h = 0.5;
    let mut iterations = 0;
    while h > 1e-10 && iterations < 2000 {
        iterations += 1;
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += dir * h;
                normalize(&mut y);
                if y.iter().all(|a| *a == 0.0) {
                    continue;
                }
                let fy = cond.margin(t, &y);
                if fy < f {
                    x = y;
                    f = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    x
}

/// Tries rational points near a float candidate: as is, with tiny entries
/// zeroed, at several denominator bounds.
fn confirm(t: &SparseTensor, cond: Condition, x: &[f64]) -> Option<Counterexample> {
    let cleaned: Vec<f64> = x.iter().map(|&v| if v.abs() < 1e-6 { 0.0 } else { v }).collect();
    for candidate in [x, cleaned.as_slice()] {
        for den in [1_000_000u64, 1000, 12] {
            let Some(r) = candidate.iter().map(|&v| snap(v, den)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            if let Some(c) = cond.exact_violation(t, &r) {
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ints;

    fn quick() -> SearchOptions {
        SearchOptions {
            seeds: 2,
            samples: 2000,
            descents: 8,
            ..SearchOptions::default()
        }
    }

    fn point(c: &Counterexample) -> Vec<Rational> {
        match &c.witness {
            Witness::Point { x, .. } => x.clone(),
            Witness::Entry { .. } => panic!("expected a point"),
        }
    }

    #[test]
    fn grid_finds_canonical_witnesses() {
        let sufficient =
            SparseTensor::from_one_based(4, 2, &[(&[1, 1, 1, 2], -2), (&[2, 1, 1, 1], 1), (&[2, 2, 2, 2], 1)]).unwrap();
        let SearchOutcome::Found(c) = falsify(&sufficient, Condition::Adequacy, &quick()) else {
            panic!("adequacy violation expected")
        };
        assert_eq!(point(&c), ints(&[1, 0]));

        let p0 =
            SparseTensor::from_one_based(4, 2, &[(&[1, 1, 1, 1], 1), (&[1, 2, 2, 2], -1), (&[2, 2, 2, 1], 1)]).unwrap();
        let SearchOutcome::Found(c) = falsify(&p0, Condition::Adequacy, &quick()) else {
            panic!("adequacy violation expected")
        };
        assert_eq!(point(&c), ints(&[0, 1]));

        let weak = SparseTensor::from_one_based(3, 2, &[(&[1, 1, 1], 1)]).unwrap();
        let SearchOutcome::Found(c) = falsify(&weak, Condition::Adequacy, &quick()) else {
            panic!("adequacy violation expected")
        };
        assert_eq!(point(&c), ints(&[-1, 0]));
        assert!(matches!(
            falsify(&weak, Condition::WeakAdequacy, &quick()),
            SearchOutcome::NotFound(_)
        ));
    }

    #[test]
    fn zero_tensor() {
        let z = SparseTensor::zeros(4, 2).unwrap();
        assert!(matches!(
            falsify(&z, Condition::P0, &quick()),
            SearchOutcome::NotFound(_)
        ));
        assert!(matches!(
            falsify(&z, Condition::Adequacy, &quick()),
            SearchOutcome::NotFound(_)
        ));
        assert!(matches!(
            falsify(&z, Condition::StrictlySemiPositive, &quick()),
            SearchOutcome::Found(_)
        ));
    }

    #[test]
    fn exact_checks() {
        let t = SparseTensor::from_one_based(4, 2, &[(&[1, 1, 1, 1], -1)]).unwrap();
        assert!(Condition::Sufficiency.exact_violation(&t, &ints(&[1, 0])).is_some());
        assert!(Condition::SemiPositive.exact_violation(&t, &ints(&[1, 0])).is_some());
        assert!(Condition::SemiPositive.exact_violation(&t, &ints(&[-1, 0])).is_none());
        assert!(Condition::Psd.exact_violation(&t, &ints(&[1, 0])).is_some());
        assert!(Condition::P0.exact_violation(&t, &ints(&[0, 0])).is_none());
    }

    #[test]
    fn descent_finds_interior_violation() {
        // A x^4 = x1^4 - 3 x1^2 x2^2 + x2^4 is negative near x1 = x2
        let t =
            SparseTensor::from_one_based(4, 2, &[(&[1, 1, 1, 1], 1), (&[1, 1, 2, 2], -3), (&[2, 2, 2, 2], 1)]).unwrap();
        let opts = SearchOptions {
            grid_cap: 0,
            samples: 0,
            ..quick()
        };
        assert!(matches!(falsify(&t, Condition::Psd, &opts), SearchOutcome::Found(_)));
    }
}
