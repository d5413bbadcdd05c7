//! Univariate equations, binary and n-ary homogeneous forms, linear forms and
//! power-sum decompositions.
//!
//! Univariate equations carry two coefficient conventions: the plain monomial
//! coefficients `b_0..b_d` (leading first) and the binomial-scaled
//! coefficients `a_i = b_i / C(d, i)`. Every center formula is stated in the
//! scaled convention.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numeric::ComplexApprox;
use crate::scalar::{binomial, format_rational, Field, Rational};

/// A polynomial equation `b_0 x^d + b_1 x^(d-1) + ... + b_d = 0`, `b_0 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateEquation {
    plain: Vec<Rational>,
    normalized: Vec<Rational>,
}

fn binom_rat(d: usize, i: usize) -> Rational {
    Rational::from_integer(binomial(d as u32, i as u32))
}

impl UnivariateEquation {
    /// From plain coefficients, leading coefficient first.
    pub fn from_plain_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Degree(format!(
                "need degree >= 1, got {} coefficient(s)",
                coeffs.len()
            )));
        }
        if coeffs[0].is_zero() {
            return Err(Error::Degree("leading coefficient is zero".into()));
        }
        let d = coeffs.len() - 1;
        let normalized = coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| b / binom_rat(d, i))
            .collect();
        Ok(UnivariateEquation {
            plain: coeffs,
            normalized,
        })
    }

    /// From binomial-scaled coefficients `a_0..a_d`.
    pub fn from_normalized(a: Vec<Rational>) -> Result<Self> {
        let d = a.len().saturating_sub(1);
        let plain = a
            .iter()
            .enumerate()
            .map(|(i, ai)| ai * binom_rat(d, i))
            .collect();
        UnivariateEquation::from_plain_coeffs(plain)
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        UnivariateEquation::from_plain_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.plain.len() - 1
    }

    /// `b_0..b_d`, leading first.
    pub fn plain(&self) -> &[Rational] {
        &self.plain
    }

    /// `a_0..a_d`.
    pub fn normalized(&self) -> &[Rational] {
        &self.normalized
    }

    pub fn homogenize(&self) -> BinaryForm {
        BinaryForm::new(self.normalized.clone())
    }

    /// Horner evaluation on the plain coefficients.
    pub fn evaluate(&self, x: &ComplexApprox) -> ComplexApprox {
        let prec = x.precision();
        self.plain.iter().fold(ComplexApprox::zero_with(prec), |acc, b| {
            acc * x.clone() + ComplexApprox::from_rational(b, prec)
        })
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.plain.iter().fold(Rational::zero(), |acc, b| acc * x + b)
    }

    /// Coefficients reversed: `x^d f(1/x)`. Requires a nonzero constant term.
    pub fn reversed(&self) -> Result<Self> {
        UnivariateEquation::from_plain_coeffs(self.plain.iter().rev().cloned().collect())
    }

    /// `f(x + c)`.
    pub fn shifted(&self, c: &Rational) -> Self {
        let d = self.degree();
        // Horner with the linear polynomial (x + c), ascending storage.
        let mut acc: Vec<Rational> = vec![Rational::zero(); d + 1];
        for b in &self.plain {
            // acc = acc * (x + c) + b
            let mut next = vec![Rational::zero(); d + 1];
            for k in 0..d + 1 {
                if acc[k].is_zero() {
                    continue;
                }
                next[k] += &acc[k] * c;
                if k < d {
                    next[k + 1] += &acc[k];
                }
            }
            next[0] += b;
            acc = next;
        }
        acc.reverse();
        UnivariateEquation::from_plain_coeffs(acc).expect("shift keeps the leading coefficient")
    }

    /// `(1 + c x)^d f(x / (1 + c x))`, the dehomogenized shear
    /// `F(x, y + c x)`. Fails when the leading coefficient vanishes.
    pub fn sheared(&self, c: &Rational) -> Result<Self> {
        self.homogenize().sheared(c).dehomogenize()
    }

    /// Split off the factor `x^k`: returns `k` and the cofactor.
    pub fn strip_zero_roots(&self) -> (usize, Option<Self>) {
        let k = self.plain.iter().rev().take_while(|c| c.is_zero()).count();
        if k == 0 {
            return (0, Some(self.clone()));
        }
        let rest = self.plain[..self.plain.len() - k].to_vec();
        (k, UnivariateEquation::from_plain_coeffs(rest).ok())
    }

    pub fn monic(&self) -> Self {
        let l = self.plain[0].clone();
        UnivariateEquation::from_plain_coeffs(self.plain.iter().map(|b| b / &l).collect())
            .expect("leading coefficient is one")
    }

    /// Canonical text such as `31*x^5 + 235*x^4 - 2`.
    pub fn to_expr(&self, var: &str) -> String {
        let d = self.degree();
        let terms = self.plain.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            let e = d - i;
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            (c.clone(), mono)
        });
        join_terms(terms)
    }
}

pub(crate) fn join_terms(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c < Rational::zero();
        let mag = if neg { -c } else { c };
        let body = if mono.is_empty() {
            format_rational(&mag)
        } else if mag.is_one() {
            mono
        } else {
            format!("{}*{}", format_rational(&mag), mono)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `F(x, y) = sum C(d, i) a_i x^(d-i) y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    normalized: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(normalized: Vec<Rational>) -> Self {
        assert!(!normalized.is_empty(), "binary form needs a degree");
        BinaryForm { normalized }
    }

    pub fn from_form(f: &NAryForm<Rational>) -> Result<Self> {
        if f.n() != 2 {
            return Err(Error::Dimension(format!("expected 2 variables, got {}", f.n())));
        }
        let d = f.degree() as usize;
        let a = (0..=d)
            .map(|i| f.coeff(&[(d - i) as u32, i as u32]) / binom_rat(d, i))
            .collect();
        Ok(BinaryForm::new(a))
    }

    pub fn degree(&self) -> usize {
        self.normalized.len() - 1
    }

    pub fn normalized(&self) -> &[Rational] {
        &self.normalized
    }

    pub fn to_form(&self) -> NAryForm<Rational> {
        let d = self.degree();
        let mut f = NAryForm::zero(2, d as u32);
        for (i, a) in self.normalized.iter().enumerate() {
            f.add_term(vec![(d - i) as u32, i as u32], a * binom_rat(d, i));
        }
        f
    }

    pub fn dehomogenize(&self) -> Result<UnivariateEquation> {
        UnivariateEquation::from_normalized(self.normalized.clone())
    }

    /// `F(x, y + c x)`.
    pub fn sheared(&self, c: &Rational) -> BinaryForm {
        let p = Matrix::from_rows(vec![
            vec![Rational::one(), Rational::zero()],
            vec![c.clone(), Rational::one()],
        ]);
        BinaryForm::from_form(&self.to_form().substitute(&p)).expect("binary")
    }

    /// `F(y, x)`.
    pub fn swapped(&self) -> BinaryForm {
        BinaryForm::new(self.normalized.iter().rev().cloned().collect())
    }
}

/// A homogeneous form in `n` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct NAryForm<K> {
    n: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, K>,
}

impl<K: Field> NAryForm<K> {
    pub fn zero(n: usize, degree: u32) -> Self {
        NAryForm {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, K)>,
    ) -> Result<Self> {
        let mut f = NAryForm::zero(n, degree);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} in a form of {n} variables",
                    e.len()
                )));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::Degree(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> K {
        self.terms.get(exps).cloned().unwrap_or_else(K::zero)
    }

    /// Add `c * x^exps` to the form.
    pub fn add_term(&mut self, exps: Vec<u32>, c: K) {
        debug_assert_eq!(exps.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> NAryForm<L> {
        let mut out = NAryForm::zero(self.n, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-K::one()))
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = NAryForm::zero(self.n, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = NAryForm::constant(self.n, K::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn constant(n: usize, c: K) -> Self {
        let mut f = NAryForm::zero(n, 0);
        f.add_term(vec![0; n], c);
        f
    }

    /// `d f / d x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = NAryForm::zero(self.n, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.clone() * K::from_i64(e[i] as i64));
        }
        out
    }

    /// Matrix of second partials; entry `(i, j)` is `d^2 f / dx_i dx_j`.
    pub fn hessian(&self) -> Result<Vec<Vec<NAryForm<K>>>> {
        if self.degree < 2 {
            return Err(Error::Degree(format!(
                "hessian needs degree >= 2, got {}",
                self.degree
            )));
        }
        let first: Vec<_> = (0..self.n).map(|i| self.partial(i)).collect();
        Ok((0..self.n)
            .map(|i| (0..self.n).map(|j| first[i].partial(j)).collect())
            .collect())
    }

    pub fn evaluate(&self, point: &[K]) -> K {
        self.terms.iter().fold(K::zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(point)
                .fold(c.clone(), |m, (&k, x)| m * x.powi(k));
            acc + m
        })
    }

    /// `f(P y)`, i.e. substitute `x_i = sum_j P_ij y_j`.
    pub fn substitute(&self, p: &Matrix<K>) -> Self {
        let lin: Vec<NAryForm<K>> = (0..self.n)
            .map(|i| LinearForm::new(p.row(i).to_vec()).to_form())
            .collect();
        let mut out = NAryForm::zero(self.n, self.degree);
        for (e, c) in &self.terms {
            let mut term = NAryForm::constant(self.n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&lin[i].pow(k));
                }
            }
            for (e2, c2) in term.terms {
                out.add_term(e2, c2);
            }
        }
        out
    }

    /// All exponent vectors of total degree `degree` in `n` variables,
    /// in descending lexicographic order.
    pub fn monomials(n: usize, degree: u32) -> Vec<Vec<u32>> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for k in (0..=left).rev() {
                cur.push(k);
                rec(n, left - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        rec(n, degree, &mut Vec::new(), &mut out);
        out
    }
}

impl NAryForm<Rational> {
    pub fn to_expr(&self, names: &[String]) -> String {
        let terms = self.terms.iter().rev().map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            (c.clone(), mono.join("*"))
        });
        join_terms(terms)
    }
}

/// `alpha_1 x_1 + ... + alpha_n x_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<K> {
    coeffs: Vec<K>,
}

impl<K: Field> LinearForm<K> {
    pub fn new(coeffs: Vec<K>) -> Self {
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_form(&self) -> NAryForm<K> {
        let n = self.coeffs.len();
        let mut f = NAryForm::zero(n, 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    /// Whether two binary or n-ary linear forms are proportional (all 2x2
    /// cross products vanish).
    pub fn proportional_to(&self, other: &Self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                (self.coeffs[i].clone() * other.coeffs[j].clone()
                    - self.coeffs[j].clone() * other.coeffs[i].clone())
                .is_zero()
            })
        })
    }
}

/// `sum lambda_i * l_i^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSumDecomposition<K> {
    pub degree: u32,
    pub summands: Vec<(K, LinearForm<K>)>,
}

impl<K: Field> PowerSumDecomposition<K> {
    pub fn new(degree: u32, summands: Vec<(K, LinearForm<K>)>) -> Self {
        PowerSumDecomposition { degree, summands }
    }

    /// Multinomial expansion into a form in `n` variables.
    pub fn expand(&self, n: usize) -> Result<NAryForm<K>> {
        let mut out = NAryForm::zero(n, self.degree);
        for (c, l) in &self.summands {
            if l.n() != n {
                return Err(Error::Dimension(format!(
                    "linear form has {} coefficients, expected {n}",
                    l.n()
                )));
            }
            let p = l.to_form().pow(self.degree).scale(c);
            out = out.add(&p);
        }
        Ok(out)
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> PowerSumDecomposition<L> {
        PowerSumDecomposition {
            degree: self.degree,
            summands: self
                .summands
                .iter()
                .map(|(c, l)| (f(c), LinearForm::new(l.coeffs.iter().map(&f).collect())))
                .collect(),
        }
    }

    /// True when no two linear forms are proportional.
    pub fn is_distinct(&self) -> bool {
        let s = &self.summands;
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !s[i].1.proportional_to(&s[j].1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn form(n: usize, d: u32, terms: &[(&[u32], i64)]) -> NAryForm<Rational> {
        NAryForm::from_terms(n, d, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c)))).unwrap()
    }

    fn lin(c: &[i64]) -> LinearForm<Rational> {
        LinearForm::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn plain_to_normalized() {
        let q = UnivariateEquation::from_i64(&[31, 235, 710, 1070, 805, 242]).unwrap();
        assert_eq!(q.degree(), 5);
        let a: Vec<Rational> = [31, 47, 71, 107, 161, 242].iter().map(|&v| rat(v)).collect();
        assert_eq!(q.normalized(), &a[..]);

        let x2 = UnivariateEquation::from_i64(&[1, 0, 0]).unwrap();
        assert_eq!(x2.normalized(), &[rat(1), rat(0), rat(0)][..]);

        let cube = UnivariateEquation::from_i64(&[2, 6, 6, 2]).unwrap();
        assert_eq!(cube.normalized(), &[rat(2), rat(2), rat(2), rat(2)][..]);
    }

    #[test]
    fn leading_zero_is_a_degree_error() {
        assert!(matches!(
            UnivariateEquation::from_i64(&[0, 1, 2]),
            Err(Error::Degree(_))
        ));
        assert!(UnivariateEquation::from_i64(&[5]).is_err());
    }

    #[test]
    fn conventions_round_trip() {
        let e = UnivariateEquation::from_plain_coeffs(vec![ratio(3, 2), rat(-7), rat(0), ratio(1, 9)])
            .unwrap();
        let back = UnivariateEquation::from_normalized(e.normalized().to_vec()).unwrap();
        assert_eq!(back.plain(), e.plain());
        assert_eq!(e.homogenize().dehomogenize().unwrap(), e);
    }

    #[test]
    fn expand_ternary_cubic() {
        let dec = PowerSumDecomposition::new(
            3,
            vec![(rat(1), lin(&[1, 1, 1])), (rat(-2), lin(&[0, 1, -2])), (rat(3), lin(&[0, 0, 1]))],
        );
        let expected = form(
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
        );
        assert_eq!(dec.expand(3).unwrap(), expected);
    }

    #[test]
    fn expand_small_cases() {
        let single = PowerSumDecomposition::new(4, vec![(rat(1), lin(&[1, 0]))]);
        assert_eq!(single.expand(2).unwrap(), form(2, 4, &[(&[4, 0], 1)]));
        let two = PowerSumDecomposition::new(3, vec![(rat(1), lin(&[1, 1])), (rat(1), lin(&[1, -1]))]);
        assert_eq!(two.expand(2).unwrap(), form(2, 3, &[(&[3, 0], 2), (&[1, 2], 6)]));
        assert!(two.expand(3).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let q = UnivariateEquation::from_i64(&[31, 235, 710, 1070, 805, 242]).unwrap();
        let v = q.evaluate(&ComplexApprox::from_f64(-2.0, 0.0, 64));
        assert!(v.abs_f64() < 1e-12 * 1070.0);
        let cube = UnivariateEquation::from_i64(&[1, 0, 0, 0]).unwrap();
        assert!(cube.evaluate(&ComplexApprox::from_f64(0.0, 0.0, 64)).abs_f64() == 0.0);
        let g = UnivariateEquation::from_i64(&[2, 3, 3, 1]).unwrap();
        assert!(g.evaluate(&ComplexApprox::from_f64(-0.5, 0.0, 64)).abs_f64() < 1e-15);
    }

    #[test]
    fn hessian_examples() {
        let f = form(2, 3, &[(&[3, 0], 1), (&[0, 3], 1)]);
        let h = f.hessian().unwrap();
        assert_eq!(h[0][0], form(2, 1, &[(&[1, 0], 6)]));
        assert!(h[0][1].is_zero() && h[1][0].is_zero());
        assert_eq!(h[1][1], form(2, 1, &[(&[0, 1], 6)]));

        let q = form(2, 2, &[(&[1, 1], 1)]);
        let hq = q.hessian().unwrap();
        assert!(hq[0][0].is_zero() && hq[1][1].is_zero());
        assert_eq!(hq[0][1], NAryForm::constant(2, rat(1)));

        let g = form(2, 3, &[(&[3, 0], 1), (&[2, 1], 3)]);
        let hg = g.hessian().unwrap();
        assert_eq!(hg[0][0], form(2, 1, &[(&[1, 0], 6), (&[0, 1], 6)]));
        assert_eq!(hg[0][1], form(2, 1, &[(&[1, 0], 6)]));
        assert!(hg[1][1].is_zero());

        assert!(matches!(form(2, 1, &[(&[1, 0], 1)]).hessian(), Err(Error::Degree(_))));
    }

    #[test]
    fn shift_and_reverse() {
        let e = UnivariateEquation::from_i64(&[1, 8, 24, 32, 15]).unwrap();
        let s = e.shifted(&rat(-2));
        assert_eq!(s.plain(), &[rat(1), rat(0), rat(0), rat(0), rat(-1)][..]);
        let r = UnivariateEquation::from_i64(&[1, 6, 12, 8]).unwrap().reversed().unwrap();
        assert_eq!(r.plain(), &[rat(8), rat(12), rat(6), rat(1)][..]);
        assert_eq!(r.reversed().unwrap().plain(), &[rat(1), rat(6), rat(12), rat(8)][..]);
    }

    #[test]
    fn shear_maps_roots() {
        // roots 1 and 2; a root r moves to r / (1 - c r)
        let e = UnivariateEquation::from_i64(&[1, -3, 2]).unwrap();
        let s = e.sheared(&rat(-1)).unwrap();
        assert!(s.eval_rational(&ratio(1, 2)).is_zero());
        assert!(s.eval_rational(&ratio(2, 3)).is_zero());
        // c = 1 sends the root 1 to infinity
        assert!(matches!(e.sheared(&rat(1)), Err(Error::Degree(_))));
    }

    #[test]
    fn monomial_enumeration() {
        let m = NAryForm::<Rational>::monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
    }
}
