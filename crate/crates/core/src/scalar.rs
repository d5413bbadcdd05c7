//! Exact scalars: arbitrary-precision rationals and the quadratic extension
//! `Q(sqrt(D))` used for center eigenvalues.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::numeric::ComplexApprox;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// The arithmetic every coefficient type must support for forms, matrices
/// and power-sum decompositions.
pub trait Field:
    Clone
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&rat(n))
    }

    fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact `n`-th root of a rational, when one exists. Odd roots of negative
/// values are taken on the real branch.
pub fn exact_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    if r.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if Pow::pow(&rn, n) == num && Pow::pow(&rd, n) == den {
        let root = Rational::new(rn, rd);
        Some(if r.is_negative() { -root } else { root })
    } else {
        None
    }
}

pub fn is_rational_square(r: &Rational) -> bool {
    exact_nth_root(r, 2).is_some()
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Scale down huge numerators/denominators before converting.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    if nb < 1000 && db < 1000 {
        let nf = n.to_f64().unwrap_or(f64::NAN);
        let df = d.to_f64().unwrap_or(f64::NAN);
        if nf.is_finite() && df.is_finite() {
            return nf / df;
        }
    }
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let nf = (n >> shift_n as usize).to_f64().unwrap_or(0.0);
    let df = (d >> shift_d as usize).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi((shift_n - shift_d) as i32)
}

/// `p/q` rendering, or a bare integer when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `a + b*sqrt(D)` of a quadratic extension of the rationals.
///
/// Plain rationals are stored with `b = 0` and `D = 0`, so they compare equal
/// to the same rational embedded from any extension. Combining two
/// irrational elements over different radicands is a programming error and
/// panics.
const SQUAREFREE_LIMIT: u64 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quadratic {
    rational: Rational,
    surd: Rational,
    radicand: Rational,
}

impl Quadratic {
    pub fn new(rational: Rational, surd: Rational, radicand: Rational) -> Self {
        let mut q = Quadratic {
            rational,
            surd,
            radicand,
        };
        q.normalize();
        q
    }

    pub fn from_rational(r: Rational) -> Self {
        Quadratic {
            rational: r,
            surd: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    /// `sqrt(r)`, kept rational when `r` is a perfect square. A negative
    /// radicand is allowed; its square root is the positive-imaginary branch.
    pub fn sqrt(r: &Rational) -> Self {
        match exact_nth_root(r, 2) {
            Some(s) => Quadratic::from_rational(s),
            None => Quadratic::new(Rational::zero(), Rational::one(), r.clone()),
        }
    }

    /// The radicand becomes an integer with its square factors pulled out
    /// (complete when it has no square factor beyond `SQUAREFREE_LIMIT`
    /// other than a full square cofactor).
    fn normalize(&mut self) {
        if self.surd.is_zero() {
            self.radicand = Rational::zero();
            return;
        }
        if let Some(s) = exact_nth_root(&self.radicand, 2) {
            self.rational = &self.rational + &self.surd * s;
            self.surd = Rational::zero();
            self.radicand = Rational::zero();
            return;
        }
        let den = self.radicand.denom().clone();
        let mut n = self.radicand.numer() * &den;
        let mut outside = BigInt::one();
        let mut p: u64 = 2;
        while p <= SQUAREFREE_LIMIT && BigInt::from(p * p) <= n.abs() {
            let sq = BigInt::from(p * p);
            while (&n % &sq).is_zero() {
                n /= &sq;
                outside *= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if let Some(r) = exact_nth_root(&Rational::from_integer(n.abs()), 2) {
            if r > Rational::one() {
                n /= r.numer() * r.numer();
                outside *= r.numer();
            }
        }
        self.surd = &self.surd * Rational::new(outside, den);
        self.radicand = Rational::from_integer(n);
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational)
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        Quadratic {
            rational: self.rational.clone(),
            surd: -self.surd.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm `a^2 - b^2 D`, always rational.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - &self.surd * &self.surd * &self.radicand
    }

    /// Whether both values live in a common `Q(sqrt(D))`.
    pub fn compatible(&self, other: &Self) -> bool {
        self.surd.is_zero() || other.surd.is_zero() || self.radicand == other.radicand
    }

    /// Constructor for a radicand that is already normalized.
    fn in_field(rational: Rational, surd: Rational, radicand: Rational) -> Self {
        if surd.is_zero() {
            Quadratic::from_rational(rational)
        } else {
            Quadratic {
                rational,
                surd,
                radicand,
            }
        }
    }

    fn shared_radicand(&self, other: &Self) -> Rational {
        match (self.surd.is_zero(), other.surd.is_zero()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert!(
                    self.radicand == other.radicand,
                    "mixed quadratic extensions: sqrt({}) and sqrt({})",
                    self.radicand,
                    other.radicand
                );
                self.radicand.clone()
            }
        }
    }

    pub fn to_complex(&self, prec: usize) -> ComplexApprox {
        let a = ComplexApprox::from_rational(&self.rational, prec);
        if self.surd.is_zero() {
            return a;
        }
        let root = ComplexApprox::from_rational(&self.radicand, prec).sqrt();
        a + ComplexApprox::from_rational(&self.surd, prec) * root
    }

    /// Pretty form such as `-10+2*sqrt(5)`.
    pub fn pretty(&self) -> String {
        if self.surd.is_zero() {
            return format_rational(&self.rational);
        }
        let root = format!("sqrt({})", format_rational(&self.radicand));
        let surd = if self.surd.is_one() {
            root
        } else if (-self.surd.clone()).is_one() {
            format!("-{root}")
        } else {
            format!("{}*{}", format_rational(&self.surd), root)
        };
        if self.rational.is_zero() {
            surd
        } else if surd.starts_with('-') {
            format!("{}{}", format_rational(&self.rational), surd)
        } else {
            format!("{}+{}", format_rational(&self.rational), surd)
        }
    }
}

impl fmt::Debug for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl From<Rational> for Quadratic {
    fn from(r: Rational) -> Self {
        Quadratic::from_rational(r)
    }
}

impl Add for Quadratic {
    type Output = Quadratic;
    fn add(self, rhs: Quadratic) -> Quadratic {
        let d = self.shared_radicand(&rhs);
        Quadratic::in_field(self.rational + rhs.rational, self.surd + rhs.surd, d)
    }
}

impl Sub for Quadratic {
    type Output = Quadratic;
    fn sub(self, rhs: Quadratic) -> Quadratic {
        let d = self.shared_radicand(&rhs);
        Quadratic::in_field(self.rational - rhs.rational, self.surd - rhs.surd, d)
    }
}

impl Mul for Quadratic {
    type Output = Quadratic;
    fn mul(self, rhs: Quadratic) -> Quadratic {
        let d = self.shared_radicand(&rhs);
        let a = &self.rational * &rhs.rational + &self.surd * &rhs.surd * &d;
        let b = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
        Quadratic::in_field(a, b, d)
    }
}

impl Div for Quadratic {
    type Output = Quadratic;
    fn div(self, rhs: Quadratic) -> Quadratic {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt(D))");
        let num = self * rhs.conjugate();
        Quadratic::in_field(num.rational / &n, num.surd / &n, num.radicand)
    }
}

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic {
            rational: -self.rational,
            surd: -self.surd,
            radicand: self.radicand,
        }
    }
}

impl Zero for Quadratic {
    fn zero() -> Self {
        Quadratic::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }
}

impl One for Quadratic {
    fn one() -> Self {
        Quadratic::from_rational(Rational::one())
    }
}

impl Field for Quadratic {
    fn from_rational(r: &Rational) -> Self {
        Quadratic::from_rational(r.clone())
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_arithmetic_stays_in_field() {
        let s5 = Quadratic::sqrt(&rat(5));
        let x = Quadratic::from_rational(rat(1)) + s5.clone();
        let y = Quadratic::from_rational(rat(1)) - s5;
        assert_eq!(x.clone() * y.clone(), Quadratic::from_rational(rat(-4)));
        assert_eq!((x.clone() / y.clone()) * y, x);
    }

    #[test]
    fn perfect_square_radicand_collapses() {
        assert_eq!(Quadratic::sqrt(&rat(16)), Quadratic::from_rational(rat(4)));
        assert!(Quadratic::new(rat(1), rat(2), ratio(9, 4)).is_rational());
    }

    #[test]
    fn zero_surd_equals_plain_rational() {
        let a = Quadratic::new(rat(3), rat(0), rat(7));
        assert_eq!(a, Quadratic::from_rational(rat(3)));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixing_radicands_panics() {
        let _ = Quadratic::sqrt(&rat(2)) + Quadratic::sqrt(&rat(3));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_nth_root(&ratio(1, 32), 5), Some(ratio(1, 2)));
        assert_eq!(exact_nth_root(&rat(-27), 3), Some(rat(-3)));
        assert_eq!(exact_nth_root(&rat(-4), 2), None);
        assert_eq!(exact_nth_root(&rat(2), 2), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }

    #[test]
    fn rendering() {
        assert_eq!(format_rational(&ratio(-25, 1764)), "-25/1764");
        assert_eq!(Quadratic::new(rat(-10), rat(2), rat(5)).pretty(), "-10+2*sqrt(5)");
        assert_eq!(Quadratic::new(rat(0), rat(-1), rat(3)).pretty(), "-sqrt(3)");
    }
}
