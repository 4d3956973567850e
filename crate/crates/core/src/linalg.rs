//! Dense exact matrices and the handful of elimination routines the engines need.

use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Convenience constructor for integer literals; panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn from_permutation(sigma: &[usize]) -> Self {
        let mut m = Matrix::zeros(sigma.len(), sigma.len());
        for (i, &j) in sigma.iter().enumerate() {
            m.set(i, j, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// `M x`; panics if `x.len() != cols`.
    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul_vec_f64(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| crate::numeric::to_f64(a) * b)
                    .sum()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// For a permutation matrix returns `sigma` with `p[i][sigma[i]] = 1`.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut sigma = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                let v = self.get(i, j);
                if v.is_one() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(j);
                } else if !v.is_zero() {
                    return None;
                }
            }
            let j = hit?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            sigma.push(j);
        }
        Some(sigma)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Column block `[start, end)`.
    pub fn column_block(&self, start: usize, end: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (start..end).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = rref(self.clone());
        pivots.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = rref(self.clone());
        nullspace_from_rref(&r, &pivots)
    }

    /// Formats rows as aligned columns, one row per line.
    pub fn to_aligned(&self, headers: Option<&[String]>) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        let mut widths = vec![0usize; self.cols];
        for row in &cells {
            for (j, c) in row.iter().enumerate() {
                widths[j] = widths[j].max(c.len());
            }
        }
        if let Some(h) = headers {
            for (j, c) in h.iter().enumerate().take(self.cols) {
                widths[j] = widths[j].max(c.len());
            }
        }
        let mut out = String::new();
        if let Some(h) = headers {
            let line: Vec<String> = h
                .iter()
                .enumerate()
                .map(|(j, c)| format!("{:>w$}", c, w = widths[j]))
                .collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, c)| format!("{:>w$}", c, w = widths[j]))
                .collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_aligned(None))
    }
}

/// Reduced row echelon form; returns the reduced matrix and its pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
        }
        let inv = m.get(row, col).recip();
        for j in col..m.cols {
            let v = m.get(row, j) * &inv;
            m.set(row, j, v);
        }
        for i in 0..m.rows {
            if i == row || m.get(i, col).is_zero() {
                continue;
            }
            let factor = m.get(i, col).clone();
            for j in col..m.cols {
                if m.get(row, j).is_zero() {
                    continue;
                }
                let v = m.get(i, j) - &factor * m.get(row, j);
                m.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

fn nullspace_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<Rational>> {
    let n = r.cols;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// All solutions of `A x = b` as `particular + span(directions)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

pub fn solve_affine(a: &Matrix, b: &[Rational]) -> Option<AffineSolution> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, bi.clone());
    }
    let (r, pivots) = rref(aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = r.get(row, n).clone();
    }
    let coeff = r.column_block(0, n);
    let directions = nullspace_from_rref(&coeff, &pivots);
    Some(AffineSolution { particular, directions })
}

/// Returns true when every entry is nonnegative.
pub fn is_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
