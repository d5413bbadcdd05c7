//! Harrison centers: the matrices `X` for which `H X` is symmetric, `H` the
//! Hessian of a form, plus the closed-form generator for binary forms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{BinaryForm, NAryForm};
use crate::linalg::{in_span, nullspace, rank, same_span, vectors_rank, Matrix};
use crate::scalar::{Quadratic, Rational};

/// A basis of the center, each element an `n x n` rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterBasis {
    n: usize,
    basis: Vec<Matrix<Rational>>,
}

fn flatten(m: &Matrix<Rational>) -> Vec<Rational> {
    m.as_slice().to_vec()
}

impl CenterBasis {
    pub fn new(n: usize, basis: Vec<Matrix<Rational>>) -> Self {
        CenterBasis { n, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<Rational>] {
        &self.basis
    }

    fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(flatten).collect()
    }

    pub fn contains(&self, x: &Matrix<Rational>) -> bool {
        in_span(&self.vectors(), &flatten(x))
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Matrix::identity(self.n))
    }

    pub fn is_commutative(&self) -> bool {
        let b = &self.basis;
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| b[i].commutes_with(&b[j])))
    }

    /// Equality of spans.
    pub fn same_span(&self, other: &CenterBasis) -> bool {
        self.n == other.n && same_span(&self.vectors(), &other.vectors())
    }

    /// `P^-1 X P` for every basis element.
    pub fn conjugate(&self, p: &Matrix<Rational>) -> Option<CenterBasis> {
        let inv = p.inverse()?;
        Some(CenterBasis {
            n: self.n,
            basis: self.basis.iter().map(|x| inv.mul(x).mul(p)).collect(),
        })
    }
}

/// Whether `H X` is symmetric as a matrix of polynomials.
pub fn is_member(f: &NAryForm<Rational>, x: &Matrix<Rational>) -> Result<bool> {
    let h = f.hessian()?;
    let n = f.n();
    let hx = |i: usize, j: usize| {
        (0..n).fold(NAryForm::zero(n, f.degree() - 2), |acc, k| {
            acc.add(&h[i][k].scale(&x[(k, j)]))
        })
    };
    Ok((0..n).all(|i| (i + 1..n).all(|j| hx(i, j) == hx(j, i))))
}

/// Exact basis of the center of a form of degree at least 3.
///
/// Unknowns are the entries `c_ij` in row-major order. Each off-diagonal pair
/// `(i, j)` and each monomial of the Hessian contributes one equation.
pub fn compute_center(f: &NAryForm<Rational>) -> Result<CenterBasis> {
    if f.degree() < 3 {
        return Err(Error::Degree(format!(
            "center needs degree >= 3, got {}",
            f.degree()
        )));
    }
    let n = f.n();
    if n == 0 {
        return Err(Error::Dimension("form has no variables".into()));
    }
    let h = f.hessian()?;
    let unknowns = n * n;
    let mut rows: BTreeMap<(usize, usize, Vec<u32>), Vec<Rational>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                // (HX)_ij = sum_k H_ik c_kj
                for (m, c) in h[i][k].terms() {
                    let row = rows
                        .entry((i, j, m.clone()))
                        .or_insert_with(|| vec![Rational::zero(); unknowns]);
                    row[k * n + j] += c;
                }
                // (HX)_ji = sum_k H_jk c_ki
                for (m, c) in h[j][k].terms() {
                    let row = rows
                        .entry((i, j, m.clone()))
                        .or_insert_with(|| vec![Rational::zero(); unknowns]);
                    row[k * n + i] -= c;
                }
            }
        }
    }
    let system: Vec<Vec<Rational>> = rows
        .into_values()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let basis = if system.is_empty() {
        (0..unknowns)
            .rev()
            .map(|u| Matrix::from_fn(n, n, |i, j| bool_rat(i * n + j == u)))
            .collect()
    } else {
        nullspace(&Matrix::from_rows(system))
            .into_iter()
            .map(|v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
            .collect()
    };
    Ok(CenterBasis { n, basis })
}

fn bool_rat(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// First partial derivatives are linearly independent.
pub fn is_nondegenerate(f: &NAryForm<Rational>) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let n = f.n();
    let monos = NAryForm::<Rational>::monomials(n, f.degree() - 1);
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let p = f.partial(i);
            monos.iter().map(|m| p.coeff(m)).collect()
        })
        .collect();
    vectors_rank(&rows) == n
}

/// Coefficient matrix of the binary center system in the unknowns
/// `(c_12, c_22 - c_11, c_21)`: rows `(a_i, a_(i+1), -a_(i+2))`.
pub fn binary_center_system(f: &BinaryForm) -> Result<Matrix<Rational>> {
    let d = f.degree();
    if d < 3 {
        return Err(Error::Degree(format!("binary center needs degree >= 3, got {d}")));
    }
    let a = f.normalized();
    Ok(Matrix::from_fn(d - 1, 3, |i, j| match j {
        0 => a[i].clone(),
        1 => a[i + 1].clone(),
        _ => -a[i + 2].clone(),
    }))
}

/// `D1, D2, D3` from the first four scaled coefficients.
pub fn d_invariants(a: &[Rational]) -> (Rational, Rational, Rational) {
    (
        &a[0] * &a[2] - &a[1] * &a[1],
        &a[0] * &a[3] - &a[1] * &a[2],
        &a[1] * &a[3] - &a[2] * &a[2],
    )
}

/// The generator `Lambda = [[0, -D3], [D1, D2]]` of a two-dimensional binary
/// center and its spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterGenerator {
    pub d1: Rational,
    pub d2: Rational,
    pub d3: Rational,
    pub lambda: Matrix<Rational>,
    pub discriminant: Rational,
    /// `(D2 + sqrt(disc)) / 2`.
    pub lambda1: Quadratic,
    /// `(D2 - sqrt(disc)) / 2`.
    pub lambda2: Quadratic,
}

impl CenterGenerator {
    pub fn from_invariants(d1: Rational, d2: Rational, d3: Rational) -> Self {
        let discriminant = &d2 * &d2 - Rational::from_integer(4.into()) * &d1 * &d3;
        let half = Rational::new(1.into(), 2.into());
        let lambda1 = Quadratic::new(&d2 * &half, half.clone(), discriminant.clone());
        let lambda2 = Quadratic::new(&d2 * &half, -half, discriminant.clone());
        let lambda = Matrix::from_rows(vec![
            vec![Rational::zero(), -d3.clone()],
            vec![d1.clone(), d2.clone()],
        ]);
        CenterGenerator {
            d1,
            d2,
            d3,
            lambda,
            discriminant,
            lambda1,
            lambda2,
        }
    }

    /// Span `{I, Lambda}` as a center basis.
    pub fn basis(&self) -> CenterBasis {
        CenterBasis::new(2, vec![Matrix::identity(2), self.lambda.clone()])
    }
}

/// Rank of the binary center system.
pub fn binary_rank(f: &BinaryForm) -> Result<usize> {
    Ok(rank(&binary_center_system(f)?))
}

pub fn center_generator(f: &BinaryForm) -> Result<CenterGenerator> {
    let r = binary_rank(f)?;
    if r != 2 {
        return Err(Error::CenterRank { rank: r });
    }
    let (d1, d2, d3) = d_invariants(f.normalized());
    if d1.is_zero() {
        return Err(Error::Pivot);
    }
    Ok(CenterGenerator::from_invariants(d1, d2, d3))
}
