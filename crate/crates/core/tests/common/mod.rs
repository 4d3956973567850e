#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tensorcp::linalg::Matrix;
use tensorcp::numeric::{frac, int, zeros};
use tensorcp::{Rational, SparseTensor};

pub fn small_rational(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    let den = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    frac(rng.gen_range(-range..=range), den)
}

pub fn rational_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.2) {
                int(0)
            } else {
                small_rational(rng, 4)
            }
        })
        .collect()
}

/// Random sparse tensor with small rational entries.
pub fn random_tensor(rng: &mut ChaCha8Rng, order: usize, dim: usize, nnz: usize) -> SparseTensor {
    let entries: Vec<(Vec<usize>, Rational)> = (0..nnz)
        .map(|_| {
            let index = (0..order).map(|_| rng.gen_range(0..dim)).collect();
            (index, small_rational(rng, 3))
        })
        .collect();
    SparseTensor::from_entries(order, dim, entries).unwrap()
}

/// Even-order tensor with zero mixed block: `A x^{m-1} = M x^{[m-1]}` with a
/// cancelling pair of mixed entries added so that it is not row diagonal.
pub fn reducible_tensor(rng: &mut ChaCha8Rng, order: usize, dim: usize, m: &Matrix) -> SparseTensor {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            entries.push((
                std::iter::once(i).chain(std::iter::repeat_n(j, order - 1)).collect(),
                m.get(i, j).clone(),
            ));
        }
    }
    if dim >= 2 {
        let i = rng.gen_range(0..dim);
        let c = small_rational(rng, 3);
        let mut a = vec![i; order];
        a[1] = 1 - i.min(1);
        let mut b = a.clone();
        b.swap(1, order - 1);
        if a != b {
            entries.push((a, c.clone()));
            entries.push((b, -c));
        }
    }
    SparseTensor::from_entries(order, dim, entries).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> Matrix {
    let rows = (0..k)
        .map(|_| (0..k).map(|_| small_rational(rng, 3)).collect())
        .collect();
    Matrix::from_rows(rows).unwrap()
}

/// Mixture of matrix families so that both adequate and non-adequate
/// matrices occur: symmetric PSD of deficient rank, P-matrices by strict
/// diagonal dominance, skew plus positive diagonal, and unstructured ones.
pub fn mixed_matrix(rng: &mut ChaCha8Rng, k: usize) -> Matrix {
    match rng.gen_range(0..4) {
        0 => {
            let r = rng.gen_range(1..k);
            let b = Matrix::from_rows(
                (0..r)
                    .map(|_| (0..k).map(|_| small_rational(rng, 2)).collect())
                    .collect(),
            )
            .unwrap();
            let bt = b.transpose();
            let mut m = Matrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, tensorcp::numeric::dot(bt.row(i), bt.row(j)));
                }
            }
            m
        }
        1 => {
            let mut m = random_matrix(rng, k);
            for i in 0..k {
                let off: Rational = (0..k).filter(|&j| j != i).map(|j| num_abs(m.get(i, j))).sum();
                m.set(i, i, off + int(1));
            }
            m
        }
        2 => {
            let mut m = Matrix::zeros(k, k);
            for i in 0..k {
                for j in i + 1..k {
                    let v = small_rational(rng, 2);
                    m.set(i, j, v.clone());
                    m.set(j, i, -v);
                }
                if rng.gen_bool(0.5) {
                    m.set(i, i, int(rng.gen_range(0..3)));
                }
            }
            m
        }
        _ => random_matrix(rng, k),
    }
}

fn num_abs(r: &Rational) -> Rational {
    if *r < int(0) {
        -r.clone()
    } else {
        r.clone()
    }
}

/// `q = w - M z` for a random complementary pair `(z, w)`, so LCP(q, M) is
/// solvable by construction.
pub fn solvable_q(rng: &mut ChaCha8Rng, m: &Matrix) -> Vec<Rational> {
    let k = m.rows();
    let mut z = zeros(k);
    let mut w = zeros(k);
    for i in 0..k {
        let v = frac(rng.gen_range(0..=4), *[1, 2].choose(rng).unwrap());
        if rng.gen_bool(0.5) {
            z[i] = v;
        } else {
            w[i] = v;
        }
    }
    let mz = m.mul_vec(&z);
    w.iter().zip(&mz).map(|(a, b)| a - b).collect()
}

/// `q = omega - A x^{m-1}` for a planted nonnegative solution `x`.
pub fn planted_tcp(rng: &mut ChaCha8Rng, t: &SparseTensor) -> (Vec<Rational>, Vec<Rational>) {
    let n = t.dim();
    let mut x = zeros(n);
    let mut w = zeros(n);
    for i in 0..n {
        let v = int(rng.gen_range(0..=2));
        if rng.gen_bool(0.5) {
            x[i] = v;
        } else {
            w[i] = v;
        }
    }
    let ax = t.apply_deg(&x).unwrap();
    let q = w.iter().zip(&ax).map(|(a, b)| a - b).collect();
    (q, x)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
