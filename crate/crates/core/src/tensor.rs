//! Sparse real tensors of order `m` and dimension `n` and the maps they induce.
//!
//! Indices are 0-based internally; the text format and all user-facing
//! messages are 1-based.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numeric::{int, pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl SparseTensor {
    /// The zero tensor in `T_{m,n}`.
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        if order < 2 || dim < 1 {
            return Err(Error::InvalidShape { order, dim });
        }
        Ok(SparseTensor {
            order,
            dim,
            entries: BTreeMap::new(),
        })
    }

    /// Builds from 0-based index tuples; duplicate tuples are summed.
    pub fn from_entries<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut t = SparseTensor::zeros(order, dim)?;
        for (index, value) in entries {
            t.accumulate(index, value)?;
        }
        Ok(t)
    }

    /// Builds from 1-based index tuples with integer coefficients.
    pub fn from_one_based(order: usize, dim: usize, entries: &[(&[usize], i64)]) -> Result<Self> {
        let mut t = SparseTensor::zeros(order, dim)?;
        for (index, value) in entries {
            if let Some(&bad) = index.iter().find(|&&i| i == 0 || i > dim) {
                return Err(Error::IndexOutOfRange { index: bad, dim });
            }
            t.accumulate(index.iter().map(|i| i - 1).collect(), int(*value))?;
        }
        Ok(t)
    }

    pub(crate) fn accumulate(&mut self, index: Vec<usize>, value: Rational) -> Result<()> {
        if index.len() != self.order {
            return Err(Error::Arity {
                found: index.len(),
                expected: self.order,
                index: index.iter().map(|i| i + 1).collect(),
            });
        }
        if let Some(&bad) = index.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                dim: self.dim,
            });
        }
        match self.entries.entry(index) {
            Entry::Vacant(slot) => {
                if !value.is_zero() {
                    slot.insert(value);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
        Ok(())
    }

    pub fn identity(order: usize, dim: usize) -> Result<Self> {
        SparseTensor::from_entries(order, dim, (0..dim).map(|i| (vec![i; order], Rational::one())))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored entries in lexicographic index order (0-based).
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn get(&self, index: &[usize]) -> Rational {
        self.entries.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: len,
            });
        }
        Ok(())
    }

    /// `A x^{m-1}`: component `i` sums `a_{i i2..im} x_{i2}..x_{im}`.
    pub fn apply_deg(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x.len())?;
        let mut out = vec![Rational::zero(); self.dim];
        for (index, a) in &self.entries {
            let mut term = a.clone();
            for &k in &index[1..] {
                if x[k].is_zero() {
                    term.set_zero();
                    break;
                }
                term *= &x[k];
            }
            out[index[0]] += term;
        }
        Ok(out)
    }

    /// `A x^m = x . (A x^{m-1})`.
    pub fn apply_full(&self, x: &[Rational]) -> Result<Rational> {
        let y = self.apply_deg(x)?;
        Ok(x.iter().zip(&y).map(|(a, b)| a * b).sum())
    }

    pub fn apply_deg_f64(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "tensor dimension mismatch");
        let mut out = vec![0.0; self.dim];
        for (index, a) in &self.entries {
            let term: f64 = index[1..].iter().map(|&k| x[k]).product();
            out[index[0]] += crate::numeric::to_f64(a) * term;
        }
        out
    }

    pub fn apply_full_f64(&self, x: &[f64]) -> f64 {
        self.apply_deg_f64(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Jacobian of `x -> A x^{m-1}` in row-major `n x n` layout.
    pub fn jacobian_f64(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut jac = vec![0.0; n * n];
        for (index, a) in &self.entries {
            let a = crate::numeric::to_f64(a);
            let tail = &index[1..];
            for (pos, &j) in tail.iter().enumerate() {
                let rest: f64 = tail
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != pos)
                    .map(|(_, &k)| x[k])
                    .product();
                jac[index[0] * n + j] += a * rest;
            }
        }
        jac
    }

    /// Principal sub-tensor on the index set `subset` (0-based), reindexed
    /// in increasing order.
    pub fn principal_subtensor(&self, subset: &[usize]) -> Result<SparseTensor> {
        if subset.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                dim: self.dim,
            });
        }
        let mut position = vec![None; self.dim];
        for (p, &i) in sorted.iter().enumerate() {
            position[i] = Some(p);
        }
        let entries = self.entries.iter().filter_map(|(index, v)| {
            let mapped: Option<Vec<usize>> = index.iter().map(|&i| position[i]).collect();
            mapped.map(|m| (m, v.clone()))
        });
        SparseTensor::from_entries(self.order, sorted.len(), entries)
    }

    /// `M(A)_{ij} = a_{i j j .. j}`.
    pub fn majorization(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (index, v) in &self.entries {
            let j = index[1];
            if index[2..].iter().all(|&k| k == j) {
                m.set(index[0], j, v.clone());
            }
        }
        m
    }

    pub fn is_row_diagonal(&self) -> bool {
        self.entries
            .keys()
            .all(|index| index[2..].iter().all(|&k| k == index[1]))
    }

    /// First stored tuple violating `i2 = .. = im`, if any.
    pub fn off_row_diagonal_entry(&self) -> Option<(Vec<usize>, Rational)> {
        self.entries
            .iter()
            .find(|(index, _)| index[2..].iter().any(|&k| k != index[1]))
            .map(|(k, v)| (k.clone(), v.clone()))
    }

    /// `b_{i1..im} = p_{i1} a_{i1..im} q_{i2} .. q_{im}` for diagonal `P`, `Q`.
    pub fn transform_diag(&self, p: &Matrix, q: &Matrix) -> Result<SparseTensor> {
        for mat in [p, q] {
            if mat.rows() != self.dim || mat.cols() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: mat.rows(),
                });
            }
            if !mat.is_diagonal() {
                return Err(Error::NotDiagonal);
            }
        }
        let pd = p.diagonal_entries();
        let qd = q.diagonal_entries();
        let entries = self.entries.iter().map(|(index, a)| {
            let mut v = &pd[index[0]] * a;
            for &k in &index[1..] {
                v *= &qd[k];
            }
            (index.clone(), v)
        });
        SparseTensor::from_entries(self.order, self.dim, entries)
    }

    /// `P^T A P` for a permutation matrix `P`: the entry at
    /// `(sigma(i1), .., sigma(im))` is `a_{i1..im}` where `p_{i, sigma(i)} = 1`.
    pub fn transform_perm(&self, p: &Matrix) -> Result<SparseTensor> {
        if p.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.rows(),
            });
        }
        let sigma = p.permutation().ok_or(Error::NotPermutation)?;
        let entries = self
            .entries
            .iter()
            .map(|(index, v)| (index.iter().map(|&i| sigma[i]).collect(), v.clone()));
        SparseTensor::from_entries(self.order, self.dim, entries)
    }

    /// Coefficients of the form `A x^m` keyed by exponent vector (degree `m`).
    /// Only the symmetric part of the tensor contributes to these.
    pub fn form_coefficients(&self) -> BTreeMap<Vec<u32>, Rational> {
        let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (index, v) in &self.entries {
            let mut exps = vec![0u32; self.dim];
            for &k in index {
                exps[k] += 1;
            }
            *out.entry(exps).or_insert_with(Rational::zero) += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Componentwise power `x^{[k]}`.
pub fn componentwise_pow(x: &[Rational], k: usize) -> Vec<Rational> {
    x.iter().map(|v| pow(v, k)).collect()
}
