//! Diagonalization of forms whose center is `k^n`: a generic center element,
//! its spectral idempotents, and the change of variables they induce.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::center::{compute_center, CenterBasis};
use crate::error::{Error, Result};
use crate::forms::{LinearForm, NAryForm, PowerSumDecomposition, UnivariateEquation};
use crate::linalg::{Magnitude, Matrix};
use crate::numeric::ComplexApprox;
use crate::scalar::{rat, Field, Rational};
use crate::unipoly::UniPoly;
use crate::verify::{check_decomposition_numeric, numeric_roots};

/// Seed for the last round of generic-element draws.
pub const GENERIC_SEED: u64 = 0x0067_656e_6572_6963;
/// Seeded draws tried after the prime and prime-square elements.
pub const MAX_RANDOM_RETRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumKind {
    DistinctRational,
    Repeated,
    Irrational,
    NonCommutative,
}

impl SpectrumKind {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumKind::DistinctRational => "distinct-rational",
            SpectrumKind::Repeated => "repeated",
            SpectrumKind::Irrational => "irrational",
            SpectrumKind::NonCommutative => "non-commutative",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraProfile {
    pub dim: usize,
    pub commutative: bool,
    pub generic_element: Matrix<Rational>,
    /// Characteristic polynomial of the generic element, ascending.
    pub char_poly: Vec<Rational>,
    pub spectrum: SpectrumKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalDecomposition<K> {
    /// Columns are the common eigenvectors: `f(P y) = sum diagonal[i] y_i^d`.
    pub p: Matrix<K>,
    pub idempotents: Vec<Matrix<K>>,
    pub diagonal: Vec<K>,
    /// The same decomposition in the original variables; the linear forms
    /// are the rows of `P^-1`.
    pub power_sum: PowerSumDecomposition<K>,
}

fn primes(count: usize) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(count);
    let mut k = 2;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= k).all(|&p| k % p != 0) {
            out.push(k);
        }
        k += 1;
    }
    out
}

fn combine(basis: &[Matrix<Rational>], n: usize, weights: &[i64]) -> Matrix<Rational> {
    basis
        .iter()
        .zip(weights)
        .fold(Matrix::zeros(n, n), |acc, (b, &w)| acc.add(&b.scale(&rat(w))))
}

/// Candidate weight vectors: primes, their squares, then seeded draws.
fn weight_candidates(dim: usize) -> Vec<Vec<i64>> {
    let p = primes(dim);
    let mut out = vec![p.clone(), p.iter().map(|x| x * x).collect()];
    let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_SEED);
    for _ in 0..MAX_RANDOM_RETRIES {
        out.push(
            (0..dim)
                .map(|_| {
                    let v: i64 = rng.gen_range(1..=97);
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect(),
        );
    }
    out
}

pub fn profile(f: &NAryForm<Rational>, basis: &CenterBasis) -> AlgebraProfile {
    let n = f.n();
    let b = basis.basis();
    let commutative = basis.is_commutative();
    let first = combine(b, n, &primes(b.len()));
    let mut chosen = None;
    if commutative {
        for w in weight_candidates(b.len()) {
            let g = combine(b, n, &w);
            let cp = g.char_poly();
            if UniPoly::new(cp.clone()).is_squarefree() {
                chosen = Some((g, cp));
                break;
            }
        }
    }
    let (generic_element, char_poly, spectrum) = match chosen {
        Some((g, cp)) => {
            let found: usize = UniPoly::new(cp.clone())
                .rational_roots()
                .iter()
                .map(|(_, m)| m)
                .sum();
            let kind = if found == n {
                SpectrumKind::DistinctRational
            } else {
                SpectrumKind::Irrational
            };
            (g, cp, kind)
        }
        None => {
            let cp = first.char_poly();
            let kind = if commutative {
                SpectrumKind::Repeated
            } else {
                SpectrumKind::NonCommutative
            };
            (first, cp, kind)
        }
    };
    AlgebraProfile {
        dim: b.len(),
        commutative,
        generic_element,
        char_poly,
        spectrum,
    }
}

/// `e_i = prod_(j != i) (g - l_j I) / (l_i - l_j)`.
fn lagrange_idempotents<K: Field>(g: &Matrix<K>, eigenvalues: &[K]) -> Vec<Matrix<K>> {
    let n = g.nrows();
    let id = Matrix::<K>::identity(n);
    (0..eigenvalues.len())
        .map(|i| {
            eigenvalues
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(id.clone(), |acc, (_, lj)| {
                    let factor = g
                        .sub(&id.scale(lj))
                        .scale(&(K::one() / (eigenvalues[i].clone() - lj.clone())));
                    acc.mul(&factor)
                })
        })
        .collect()
}

/// The column of `e` with the largest entry; `e` has rank one here.
fn image_vector<K: Field + Magnitude>(e: &Matrix<K>) -> Vec<K> {
    let n = e.nrows();
    let best = (0..n)
        .max_by(|&a, &b| {
            let m = |j: usize| e.column(j).iter().map(Magnitude::magnitude).fold(0.0, f64::max);
            m(a).total_cmp(&m(b))
        })
        .unwrap_or(0);
    e.column(best)
}

/// Rescale so each row of `P^-1` has leading coefficient one, then read the
/// diagonal coefficients off `f(P y)`.
fn assemble<K: Field + Magnitude>(
    columns: Vec<Vec<K>>,
    idempotents: Vec<Matrix<K>>,
    f: &NAryForm<K>,
    leading_tol: f64,
) -> Result<DiagonalDecomposition<K>> {
    let n = columns.len();
    let mut p = Matrix::from_fn(n, n, |i, j| columns[j][i].clone());
    let mut inv = p
        .inverse()
        .ok_or_else(|| Error::NotDiagonalizable("eigenvectors are dependent".into()))?;
    for i in 0..n {
        let row = inv.row(i).to_vec();
        let big = row.iter().map(Magnitude::magnitude).fold(0.0, f64::max);
        let lead = row
            .iter()
            .find(|c| c.magnitude() > leading_tol * big)
            .cloned()
            .ok_or_else(|| Error::NotDiagonalizable("vanishing linear form".into()))?;
        for j in 0..n {
            inv[(i, j)] = inv[(i, j)].clone() / lead.clone();
            p[(j, i)] = p[(j, i)].clone() * lead.clone();
        }
    }
    // order summands by the position of their leading variable
    let lead_index = |i: usize| {
        let big = inv.row(i).iter().map(Magnitude::magnitude).fold(0.0, f64::max);
        inv.row(i).iter().position(|c| c.magnitude() > leading_tol * big).unwrap_or(n)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| lead_index(i));
    let p = Matrix::from_fn(n, n, |i, j| p[(i, order[j])].clone());
    let inv = Matrix::from_fn(n, n, |i, j| inv[(order[i], j)].clone());
    let idempotents: Vec<Matrix<K>> = order.iter().map(|&i| idempotents[i].clone()).collect();
    let d = f.degree();
    let diagonal: Vec<K> = (0..n)
        .map(|i| f.evaluate(&p.column(i)))
        .collect();
    let summands = (0..n)
        .map(|i| (diagonal[i].clone(), LinearForm::new(inv.row(i).to_vec())))
        .collect();
    Ok(DiagonalDecomposition {
        p,
        idempotents,
        diagonal,
        power_sum: PowerSumDecomposition::new(d, summands),
    })
}

fn check_profile(prof: &AlgebraProfile) -> Result<()> {
    match prof.spectrum {
        SpectrumKind::NonCommutative => Err(Error::NotDiagonalizable(format!(
            "center of dimension {} is not commutative",
            prof.dim
        ))),
        SpectrumKind::Repeated => Err(Error::NotDiagonalizable(format!(
            "no element of the {}-dimensional center has a simple spectrum",
            prof.dim
        ))),
        _ => Ok(()),
    }
}

/// Exact diagonalization over `Q`.
pub fn diagonalize_form(f: &NAryForm<Rational>) -> Result<DiagonalDecomposition<Rational>> {
    let basis = compute_center(f)?;
    let prof = profile(f, &basis);
    check_profile(&prof)?;
    if prof.spectrum == SpectrumKind::Irrational {
        return Err(Error::IrrationalSpectrum);
    }
    let eigenvalues: Vec<Rational> = UniPoly::new(prof.char_poly.clone())
        .rational_roots()
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let idempotents = lagrange_idempotents(&prof.generic_element, &eigenvalues);
    let columns = idempotents.iter().map(image_vector).collect();
    let dec = assemble(columns, idempotents, f, 0.0)?;
    let diagonal_form = f.substitute(&dec.p);
    let pure = |e: &Vec<u32>| e.iter().filter(|&&k| k > 0).count() <= 1;
    if !diagonal_form.terms().all(|(e, _)| pure(e))
        || dec.power_sum.expand(f.n())? != *f
    {
        return Err(Error::NotDiagonalizable("round trip failed".into()));
    }
    Ok(dec)
}

/// Same pipeline with numeric eigenvalues; accepted when the expansion
/// matches `f` to `tol` relative to its largest coefficient.
pub fn diagonalize_form_numeric(
    f: &NAryForm<Rational>,
    prec: usize,
    tol: f64,
) -> Result<DiagonalDecomposition<ComplexApprox>> {
    let basis = compute_center(f)?;
    let prof = profile(f, &basis);
    check_profile(&prof)?;
    let n = f.n();
    let descending: Vec<Rational> = prof.char_poly.iter().rev().cloned().collect();
    let roots = numeric_roots(&UnivariateEquation::from_plain_coeffs(descending)?, prec)?;
    if roots.roots.len() != n || roots.roots.iter().any(|r| r.multiplicity != 1) {
        return Err(Error::NotDiagonalizable("numeric spectrum is not simple".into()));
    }
    let eigenvalues: Vec<ComplexApprox> = roots.roots.iter().map(|r| r.value.clone()).collect();
    let to_c = |r: &Rational| ComplexApprox::from_rational(r, prec);
    let g = prof.generic_element.map(to_c);
    let idempotents = lagrange_idempotents(&g, &eigenvalues);
    let columns = idempotents.iter().map(image_vector).collect();
    let fc = f.map(to_c);
    let dec = assemble(columns, idempotents, &fc, 1e-9)?;
    if !check_decomposition_numeric(f, &dec.power_sum, tol) {
        return Err(Error::NotDiagonalizable("numeric round trip failed".into()));
    }
    Ok(dec)
}

impl DiagonalDecomposition<Rational> {
    /// `e_i e_j = delta_ij e_i` and `sum e_i = I`.
    pub fn idempotents_are_orthogonal(&self) -> bool {
        let n = self.p.nrows();
        let e = &self.idempotents;
        let sum = e.iter().fold(Matrix::zeros(n, n), |acc, m| acc.add(m));
        sum == Matrix::identity(n)
            && (0..e.len()).all(|i| {
                (0..e.len()).all(|j| {
                    let prod = e[i].mul(&e[j]);
                    if i == j {
                        prod == e[i]
                    } else {
                        prod.is_zero()
                    }
                })
            })
    }

    /// `P^-1 e_i P = E_ii`.
    pub fn conjugates_to_units(&self) -> bool {
        let n = self.p.nrows();
        let Some(inv) = self.p.inverse() else {
            return false;
        };
        self.idempotents.iter().enumerate().all(|(k, e)| {
            inv.mul(e).mul(&self.p)
                == Matrix::from_fn(n, n, |i, j| {
                    if i == k && j == k {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, d: u32, terms: &[(&[u32], i64)]) -> NAryForm<Rational> {
        NAryForm::from_terms(n, d, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c)))).unwrap()
    }

    fn lin(c: &[i64]) -> LinearForm<Rational> {
        LinearForm::new(c.iter().map(|&v| rat(v)).collect())
    }

    fn ternary_cubic() -> NAryForm<Rational> {
        form(
            3,
            3,
            &[
                (&[3, 0, 0], 1),
                (&[2, 1, 0], 3),
                (&[2, 0, 1], 3),
                (&[1, 2, 0], 3),
                (&[1, 0, 2], 3),
                (&[1, 1, 1], 6),
                (&[0, 3, 0], -1),
                (&[0, 0, 3], 20),
                (&[0, 1, 2], -21),
                (&[0, 2, 1], 15),
            ],
        )
    }

    fn has_summand(dec: &PowerSumDecomposition<Rational>, c: i64, l: &[i64]) -> bool {
        dec.summands.iter().any(|(k, m)| *k == rat(c) && *m == lin(l))
    }

    #[test]
    fn ternary_cubic_splits_into_three_cubes() {
        let f = ternary_cubic();
        let prof = profile(&f, &compute_center(&f).unwrap());
        assert_eq!(prof.dim, 3);
        assert!(prof.commutative);
        assert_eq!(prof.spectrum, SpectrumKind::DistinctRational);
        let dec = diagonalize_form(&f).unwrap();
        assert!(dec.idempotents_are_orthogonal());
        assert!(dec.conjugates_to_units());
        let ps = &dec.power_sum;
        assert_eq!(ps.summands.len(), 3);
        assert!(has_summand(ps, 1, &[1, 1, 1]));
        assert!(has_summand(ps, -2, &[0, 1, -2]));
        assert!(has_summand(ps, 3, &[0, 0, 1]));
        let g = f.substitute(&dec.p);
        let h = g.hessian().unwrap();
        for (i, row) in h.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                assert!(i == j || entry.is_zero());
            }
        }
    }

    #[test]
    fn small_binary_cases() {
        let f = form(2, 3, &[(&[3, 0], 1), (&[0, 3], 1)]);
        let dec = diagonalize_form(&f).unwrap();
        assert_eq!(dec.p, Matrix::identity(2));
        assert_eq!(dec.diagonal, vec![rat(1), rat(1)]);

        let g = form(2, 3, &[(&[3, 0], 2), (&[1, 2], 6)]);
        let dg = diagonalize_form(&g).unwrap();
        assert!(has_summand(&dg.power_sum, 1, &[1, 1]));
        assert!(has_summand(&dg.power_sum, 1, &[1, -1]));
    }

    #[test]
    fn cube_of_linear_form_is_not_diagonalizable() {
        let f = form(2, 3, &[(&[3, 0], 1), (&[2, 1], 3), (&[1, 2], 3), (&[0, 3], 1)]);
        let prof = profile(&f, &compute_center(&f).unwrap());
        assert_eq!(prof.dim, 3);
        assert_eq!(prof.spectrum, SpectrumKind::NonCommutative);
        assert!(matches!(diagonalize_form(&f), Err(Error::NotDiagonalizable(_))));
    }

    #[test]
    fn irrational_spectrum_falls_back_to_numeric() {
        // (x + sqrt2 y)^3 + (x - sqrt2 y)^3
        let f = form(2, 3, &[(&[3, 0], 2), (&[1, 2], 12)]);
        assert_eq!(diagonalize_form(&f), Err(Error::IrrationalSpectrum));
        let dec = diagonalize_form_numeric(&f, 128, 1e-12).unwrap();
        assert_eq!(dec.power_sum.summands.len(), 2);
        for (_, l) in &dec.power_sum.summands {
            assert!((l.coeffs()[1].abs_f64() - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn retries_are_deterministic() {
        assert_eq!(weight_candidates(4), weight_candidates(4));
        assert_eq!(primes(5), vec![2, 3, 5, 7, 11]);
    }
}
