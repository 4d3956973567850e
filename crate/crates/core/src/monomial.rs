//! Exponent vectors, the lex / grlex / modified graded lex orders, and the
//! ordered monomial basis that labels the auxiliary system's columns.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{pow, Rational};

/// Exponent vector `alpha` of the monomial `x^alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// `degree * e_i` in `n` variables.
    pub fn pure_power(n: usize, i: usize, degree: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = degree;
        MultiIndex(e)
    }

    /// Multiplicity vector of an index tuple over `n` variables.
    pub fn from_tuple(tuple: &[usize], n: usize) -> Self {
        let mut e = vec![0u32; n];
        for &k in tuple {
            e[k] += 1;
        }
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    /// Exactly one nonzero component (which then equals the degree).
    pub fn is_pure_power(&self) -> bool {
        self.nonzero_count() == 1
    }

    /// `x^alpha`, with `0^0 = 1`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        self.check_len(x.len())?;
        let mut v = Rational::one();
        for (&a, xi) in self.0.iter().zip(x) {
            if a == 0 {
                continue;
            }
            if xi.is_zero() {
                return Ok(Rational::zero());
            }
            v *= pow(xi, a as usize);
        }
        Ok(v)
    }

    pub fn evaluate_f64(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&a, &xi)| if a == 0 { 1.0 } else { xi.powi(a as i32) })
            .product()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.0.len(),
                found: len,
            });
        }
        Ok(())
    }
}

impl fmt::Display for MultiIndex {
    /// `x1^2*x3`; the zero index prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| {
                if a == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, a)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn same_len(a: &MultiIndex, b: &MultiIndex) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

/// Greater iff the leftmost nonzero entry of `a - b` is positive.
pub fn lex_compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    same_len(a, b)?;
    Ok(a.0
        .iter()
        .zip(&b.0)
        .map(|(x, y)| x.cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal))
}

/// Total degree first, ties broken by lex.
pub fn grlex_compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    same_len(a, b)?;
    Ok(a.degree().cmp(&b.degree()).then(lex_compare(a, b)?))
}

/// Pure powers rank above everything else and compare by lex among
/// themselves (degree ignored); all other indices compare by grlex.
pub fn mglo_compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    same_len(a, b)?;
    match (a.is_pure_power(), b.is_pure_power()) {
        (true, true) => lex_compare(a, b),
        (true, false) => Ok(Ordering::Greater),
        (false, true) => Ok(Ordering::Less),
        (false, false) => grlex_compare(a, b),
    }
}

/// All degree-`(m-1)` monomials in `n` variables, strictly decreasing in mglo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    order: usize,
    dim: usize,
    labels: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(order: usize, dim: usize) -> Result<Self> {
        if order < 2 || dim < 1 {
            return Err(Error::InvalidShape { order, dim });
        }
        let degree = (order - 1) as u32;
        let mut labels = Vec::new();
        let mut current = vec![0u32; dim];
        compositions(degree, 0, &mut current, &mut labels);
        labels.sort_by(|a, b| mglo_compare(b, a).expect("equal lengths"));
        let position = labels.iter().enumerate().map(|(j, l)| (l.clone(), j)).collect();
        Ok(MonomialBasis {
            order,
            dim,
            labels,
            position,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N = C(m+n-2, n-1)`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[MultiIndex] {
        &self.labels
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.position.get(alpha).copied()
    }

    pub fn headers(&self) -> Vec<String> {
        self.labels.iter().map(ToString::to_string).collect()
    }

    /// `y_j = x^{alpha_j}`; the first `n` entries are `x_i^{m-1}`.
    pub fn lift(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        self.labels.iter().map(|l| l.evaluate(x)).collect()
    }

    pub fn lift_f64(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "lift dimension mismatch");
        self.labels.iter().map(|l| l.evaluate_f64(x)).collect()
    }
}

fn compositions(remaining: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        current[pos] = 0;
        return;
    }
    for a in 0..=remaining {
        current[pos] = a;
        compositions(remaining - a, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// `C(n, k)` in `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ints;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn lex_examples() {
        assert_eq!(
            lex_compare(&mi(&[1, 2, 0]), &mi(&[0, 3, 4])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            lex_compare(&mi(&[3, 2, 4]), &mi(&[3, 2, 1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(lex_compare(&mi(&[3, 2, 4]), &mi(&[3, 2, 4])).unwrap(), Ordering::Equal);
        assert!(lex_compare(&mi(&[1]), &mi(&[1, 0])).is_err());
    }

    #[test]
    fn grlex_examples() {
        assert_eq!(
            grlex_compare(&mi(&[1, 2, 3]), &mi(&[3, 2, 0])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            grlex_compare(&mi(&[1, 2, 4]), &mi(&[1, 1, 5])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(grlex_compare(&mi(&[2, 0]), &mi(&[2, 0])).unwrap(), Ordering::Equal);
    }

    #[test]
    fn grlex_orders_degree_two_monomials() {
        let mut v = [
            mi(&[0, 0, 2]),
            mi(&[0, 1, 1]),
            mi(&[1, 1, 0]),
            mi(&[2, 0, 0]),
            mi(&[0, 2, 0]),
            mi(&[1, 0, 1]),
        ];
        v.sort_by(|a, b| grlex_compare(b, a).unwrap());
        let names: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
    }

    #[test]
    fn mglo_examples() {
        assert_eq!(
            mglo_compare(&mi(&[2, 0, 0]), &mi(&[0, 2, 0])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            mglo_compare(&mi(&[2, 0, 0]), &mi(&[2, 1, 0])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            mglo_compare(&mi(&[2, 2, 0]), &mi(&[2, 1, 1])).unwrap(),
            Ordering::Greater
        );
        // across degrees, pure powers still compare by lex
        assert_eq!(mglo_compare(&mi(&[0, 5]), &mi(&[1, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn basis_examples() {
        let b = MonomialBasis::new(3, 3).unwrap();
        assert_eq!(b.headers(), ["x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"]);
        let b = MonomialBasis::new(4, 2).unwrap();
        assert_eq!(b.headers(), ["x1^3", "x2^3", "x1^2*x2", "x1*x2^2"]);
        let b = MonomialBasis::new(2, 4).unwrap();
        assert_eq!(b.headers(), ["x1", "x2", "x3", "x4"]);
        assert!(MonomialBasis::new(1, 2).is_err());
        assert!(MonomialBasis::new(3, 0).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(mi(&[2, 1]).evaluate(&ints(&[3, 2])).unwrap(), crate::numeric::int(18));
        assert_eq!(mi(&[0, 0]).evaluate(&ints(&[0, 0])).unwrap(), crate::numeric::int(1));
        assert_eq!(mi(&[3, 0]).evaluate(&ints(&[0, 5])).unwrap(), crate::numeric::int(0));
        assert!(mi(&[1]).evaluate(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn lift_examples() {
        let b = MonomialBasis::new(4, 2).unwrap();
        assert_eq!(b.lift(&ints(&[1, 1])).unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(b.lift(&ints(&[0, 1])).unwrap(), ints(&[0, 1, 0, 0]));
        assert_eq!(b.lift(&ints(&[0, 0])).unwrap(), ints(&[0, 0, 0, 0]));
        assert!(b.lift(&ints(&[1])).is_err());
    }

    fn all_indices(n: usize, max_deg: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for d in 0..=max_deg {
            let mut cur = vec![0; n];
            compositions(d, 0, &mut cur, &mut out);
        }
        out
    }

    #[test]
    fn mglo_is_a_strict_total_order_on_fixed_degree_slices() {
        for n in 1..=3 {
            for m in 2..=5u32 {
                let slice: Vec<MultiIndex> = all_indices(n, m - 1)
                    .into_iter()
                    .filter(|a| a.degree() == (m - 1) as usize)
                    .collect();
                for a in &slice {
                    for b in &slice {
                        let ab = mglo_compare(a, b).unwrap();
                        let ba = mglo_compare(b, a).unwrap();
                        assert_eq!(ab, ba.reverse());
                        assert_eq!(ab == Ordering::Equal, a == b);
                        for c in &slice {
                            if ab == Ordering::Greater && mglo_compare(b, c).unwrap() == Ordering::Greater {
                                assert_eq!(mglo_compare(a, c).unwrap(), Ordering::Greater);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn basis_sizes_and_prefix() {
        for m in 2..=6usize {
            for n in 1..=5usize {
                let b = MonomialBasis::new(m, n).unwrap();
                assert_eq!(b.len() as u128, binomial((m + n - 2) as u64, (n - 1) as u64));
                for i in 0..n {
                    assert_eq!(b.labels()[i], MultiIndex::pure_power(n, i, (m - 1) as u32));
                }
                for w in b.labels().windows(2) {
                    assert_eq!(mglo_compare(&w[0], &w[1]).unwrap(), Ordering::Greater);
                }
            }
        }
    }
}
