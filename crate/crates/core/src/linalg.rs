//! Dense matrices over exact and approximate fields, with fraction-free
//! elimination for rational rank and nullspace computations.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numeric::ComplexApprox;
use crate::scalar::{lcm_of_denominators, Field, Rational};

#[derive(Clone, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: fmt::Debug> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)))
            .finish()
    }
}

impl<K> Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K> IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

impl<K: Clone> Matrix<K> {
    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[K] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<L>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| K::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { K::one() } else { K::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(K::zero(), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn trace(&self) -> K {
        (0..self.rows.min(self.cols)).fold(K::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(K::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    /// Characteristic polynomial `det(tI - A)` by Faddeev-LeVerrier,
    /// coefficients in ascending powers of `t`.
    pub fn char_poly(&self) -> Vec<K> {
        let n = self.rows;
        let mut coeffs = vec![K::zero(); n + 1];
        coeffs[n] = K::one();
        let mut m = Matrix::<K>::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            m = next;
            let am = self.mul(&m);
            coeffs[n - k] = -(am.trace() / K::from_i64(k as i64));
        }
        coeffs
    }

    /// Inverse by Gauss-Jordan elimination; pivots are chosen by magnitude.
    pub fn inverse(&self) -> Option<Self>
    where
        K: Magnitude,
    {
        let n = self.rows;
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        let mut a = self.clone();
        let mut inv = Matrix::<K>::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[(r, col)].is_zero())
                .max_by(|&r1, &r2| {
                    a[(r1, col)]
                        .magnitude()
                        .partial_cmp(&a[(r2, col)].magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - factor.clone() * inv[(col, j)].clone();
                }
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `self * other == other * self`.
    pub fn commutes_with(&self, other: &Self) -> bool
    where
        K: PartialEq,
    {
        self.mul(other) == other.mul(self)
    }
}

/// Pivot-size estimate used by elimination routines.
pub trait Magnitude {
    fn magnitude(&self) -> f64;
}

impl Magnitude for Rational {
    fn magnitude(&self) -> f64 {
        crate::scalar::rational_to_f64(self).abs()
    }
}

impl Magnitude for crate::scalar::Quadratic {
    fn magnitude(&self) -> f64 {
        self.to_complex(64).abs_f64()
    }
}

impl Magnitude for ComplexApprox {
    fn magnitude(&self) -> f64 {
        self.abs_f64()
    }
}

/// Integer row echelon form from fraction-free (Bareiss) elimination.
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free elimination of a rational matrix. Each row is first scaled to
/// integers; every division afterwards is exact.
pub fn bareiss_echelon(m: &Matrix<Rational>) -> Echelon {
    let cols = m.ncols();
    let mut rows: Vec<Vec<BigInt>> = (0..m.nrows())
        .map(|i| {
            let row = m.row(i);
            let l = lcm_of_denominators(row.iter());
            row.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            for j in c + 1..cols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                rows[i][j] = q;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    // rows below the rank are zero
    rows.truncate(r);
    Echelon { rows, pivots, cols }
}

pub fn rank(m: &Matrix<Rational>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    bareiss_echelon(m).rank()
}

/// Basis of `{v : M v = 0}`. One vector per free column, free columns taken in
/// reverse order; the free variable is set to one and the others to zero.
pub fn nullspace(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let cols = m.ncols();
    let ech = if m.nrows() == 0 {
        Echelon {
            rows: vec![],
            pivots: vec![],
            cols,
        }
    } else {
        bareiss_echelon(m)
    };
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .rev()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (k, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[k];
                let mut s = Rational::zero();
                for j in pc + 1..cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += Rational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / Rational::from_integer(row[pc].clone());
            }
            x
        })
        .collect()
}

/// Rank of a set of vectors (as rows).
pub fn vectors_rank(vs: &[Vec<Rational>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vs.to_vec()))
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = vectors_rank(a);
    let rb = vectors_rank(b);
    if ra != rb {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    vectors_rank(&both) == ra
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let r = vectors_rank(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    vectors_rank(&ext) == r
}
