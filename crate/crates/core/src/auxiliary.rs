//! The auxiliary linear system: `A x^{m-1} = coef * y` with `y` the vector of
//! degree-`(m-1)` monomials, its zero-padded square form and the lifting and
//! truncation maps between the tensor and matrix problems.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lcp::LcpInstance;
use crate::linalg::Matrix;
use crate::monomial::{MonomialBasis, MultiIndex};
use crate::numeric::Rational;
use crate::tensor::SparseTensor;

/// Default largest `N` for which the padded square matrix is stored densely.
pub const DEFAULT_ABAR_CAP: usize = 5000;

/// Sum of `a_{i i2..im}` over all tails whose multiplicity vector is `alpha`.
pub fn aggregate_coefficient(t: &SparseTensor, i: usize, alpha: &MultiIndex) -> Result<Rational> {
    if alpha.degree() != t.order() - 1 {
        return Err(Error::DegreeMismatch {
            expected: t.order() - 1,
            found: alpha.degree(),
        });
    }
    if alpha.len() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: alpha.len(),
        });
    }
    if i >= t.dim() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            dim: t.dim(),
        });
    }
    Ok(t.entries()
        .filter(|(index, _)| index[0] == i && MultiIndex::from_tuple(&index[1..], t.dim()) == *alpha)
        .map(|(_, v)| v.clone())
        .sum())
}

#[derive(Clone, Debug)]
pub struct AuxiliarySystem {
    basis: MonomialBasis,
    coef: Matrix,
    abar: Option<Matrix>,
    source: SparseTensor,
}

impl AuxiliarySystem {
    pub fn build(t: &SparseTensor) -> Result<Self> {
        AuxiliarySystem::build_with_cap(t, DEFAULT_ABAR_CAP)
    }

    /// Like [`build`](Self::build), storing the padded matrix only when `N <= cap`.
    pub fn build_with_cap(t: &SparseTensor, cap: usize) -> Result<Self> {
        let basis = MonomialBasis::new(t.order(), t.dim())?;
        let n = t.dim();
        let mut coef = Matrix::zeros(n, basis.len());
        // one pass over the stored entries instead of one per (i, alpha)
        for (index, v) in t.entries() {
            let alpha = MultiIndex::from_tuple(&index[1..], n);
            let j = basis.index_of(&alpha).expect("tail multiplicity has degree m-1");
            let sum = coef.get(index[0], j) + v;
            coef.set(index[0], j, sum);
        }
        let abar = (basis.len() <= cap).then(|| pad_matrix(&coef, basis.len()));
        Ok(AuxiliarySystem {
            basis,
            coef,
            abar,
            source: t.clone(),
        })
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    /// The `n x N` coefficient matrix `(M(A) | B)`.
    pub fn coef(&self) -> &Matrix {
        &self.coef
    }

    /// The `N x N` padded matrix, when within the dense cap.
    pub fn abar(&self) -> Option<&Matrix> {
        self.abar.as_ref()
    }

    /// The padded matrix, materialized on demand if it was above the cap.
    pub fn abar_dense(&self) -> Matrix {
        self.abar
            .clone()
            .unwrap_or_else(|| pad_matrix(&self.coef, self.basis.len()))
    }

    pub fn source(&self) -> &SparseTensor {
        &self.source
    }

    pub fn n(&self) -> usize {
        self.source.dim()
    }

    /// `N`, the number of monomial columns.
    pub fn width(&self) -> usize {
        self.basis.len()
    }

    /// `(M(A), B)`.
    pub fn split_blocks(&self) -> (Matrix, Matrix) {
        let n = self.n();
        (self.coef.column_block(0, n), self.coef.column_block(n, self.width()))
    }

    /// True when every mixed-monomial aggregate vanishes.
    pub fn b_is_zero(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (n..self.width()).all(|j| self.coef.get(i, j).is_zero()))
    }

    /// `LCP(q̄, Ā)` for a tensor right-hand side `q`.
    pub fn lcp_instance(&self, q: &[Rational]) -> Result<LcpInstance> {
        if q.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: q.len(),
            });
        }
        LcpInstance::new(self.abar_dense(), pad_rhs(q, self.width())?)
    }

    /// Lifts a verified TCP solution `x` to `y = (x^{alpha_j})_j`.
    pub fn lift_solution(&self, x: &[Rational], q: &[Rational]) -> Result<Vec<Rational>> {
        if !crate::tcp::verify_tcp(&self.source, q, x) {
            return Err(Error::NotATcpSolution);
        }
        self.basis.lift(x)
    }

    pub fn lift_solution_f64(&self, x: &[f64], q: &[f64], tol: f64) -> Result<Vec<f64>> {
        if !crate::tcp::verify_tcp_f64(&self.source, q, x, tol) {
            return Err(Error::NotATcpSolution);
        }
        Ok(self.basis.lift_f64(x))
    }
}

fn pad_matrix(coef: &Matrix, width: usize) -> Matrix {
    let mut abar = Matrix::zeros(width, width);
    for i in 0..coef.rows() {
        for j in 0..width {
            abar.set(i, j, coef.get(i, j).clone());
        }
    }
    abar
}

/// `q̄ = (q, 0)` of length `width`.
pub fn pad_rhs(q: &[Rational], width: usize) -> Result<Vec<Rational>> {
    if width < q.len() {
        return Err(Error::PaddingTooShort {
            padded: width,
            len: q.len(),
        });
    }
    let mut out = q.to_vec();
    out.resize(width, Rational::zero());
    Ok(out)
}

/// `ȳ = (y_1, .., y_n, 0, .., 0)`.
pub fn truncate(y: &[Rational], n: usize) -> Vec<Rational> {
    y.iter()
        .enumerate()
        .map(|(j, v)| if j < n { v.clone() } else { Rational::zero() })
        .collect()
}

/// Nonnegative real root `y^{1/k}` of a nonnegative rational, exact when it
/// is a perfect power and otherwise `None`.
pub fn exact_root(y: &Rational, k: u32) -> Option<Rational> {
    if y.is_negative() {
        return None;
    }
    let num = y.numer().nth_root(k);
    let den = y.denom().nth_root(k);
    let r = Rational::new(num, den);
    (crate::numeric::pow(&r, k as usize) == *y).then_some(r)
}
