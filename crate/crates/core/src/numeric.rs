//! Complex approximations at a configurable binary precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::Signed;

use crate::scalar::{Field, Rational};

/// Mantissa bits used when no precision is requested.
pub const DEFAULT_PRECISION: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

/// A complex number with big-float parts. Binary operations run at the larger
/// of the operands' precisions.
#[derive(Clone)]
pub struct ComplexApprox {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

fn big_int_to_float(n: &BigInt, prec: usize) -> BigFloat {
    let (sign, words) = n.to_u64_digits();
    let work = prec.max(words.len() * 64 + 64);
    let base = BigFloat::from_u64(u64::MAX, work).add(&BigFloat::from_u64(1, work), work, RM);
    let mut acc = BigFloat::from_u64(0, work);
    for w in words.iter().rev() {
        acc = acc
            .mul(&base, work, RM)
            .add(&BigFloat::from_u64(*w, work), work, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc = acc.neg();
    }
    acc
}

pub(crate) fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let (m, _, s, e, _) = x.as_raw_parts().expect("finite value");
    let top = *m.last().unwrap_or(&0) as f64;
    let next = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
    let frac = top / 2f64.powi(64) + next / 2f64.powi(128);
    let v = if e > 1100 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        frac * 2f64.powi(e)
    };
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

impl ComplexApprox {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        ComplexApprox { re, im, prec }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        ComplexApprox {
            re: BigFloat::from_f64(re, prec),
            im: BigFloat::from_f64(im, prec),
            prec,
        }
    }

    pub fn from_rational(r: &Rational, prec: usize) -> Self {
        let n = big_int_to_float(r.numer(), prec);
        let d = big_int_to_float(r.denom(), prec);
        ComplexApprox {
            re: n.div(&d, prec, RM),
            im: BigFloat::from_u64(0, prec),
            prec,
        }
    }

    pub fn zero_with(prec: usize) -> Self {
        Self::from_f64(0.0, 0.0, prec)
    }

    pub fn one_with(prec: usize) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn i(prec: usize) -> Self {
        Self::from_f64(0.0, 1.0, prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(prec, RM);
        let _ = im.set_precision(prec, RM);
        ComplexApprox { re, im, prec }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexApprox {
            re: self.re.clone(),
            im: -self.im.clone(),
            prec: self.prec,
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec, RM)
    }

    /// `|self| <= bound`, compared at full precision.
    pub fn abs_le(&self, bound: &BigFloat) -> bool {
        let p = self.prec;
        let b2 = bound.mul(bound, p, RM);
        matches!(self.norm_sqr().cmp(&b2), Some(c) if c <= 0)
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// Distance to `other` as an `f64`.
    pub fn dist(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).abs_f64()
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        let p = self.prec;
        ComplexApprox {
            re: self.re.mul(k, p, RM),
            im: self.im.mul(k, p, RM),
            prec: p,
        }
    }

    /// Argument in `(-pi, pi]`.
    pub fn arg(&self) -> BigFloat {
        let p = self.prec + 16;
        let mut cc = consts();
        let zero = BigFloat::from_u64(0, p);
        let pi = cc.pi(p, RM);
        let half_pi = pi.div(&BigFloat::from_u64(2, p), p, RM);
        let re_sign = self.re.cmp(&zero).unwrap_or(0);
        let im_sign = self.im.cmp(&zero).unwrap_or(0);
        match re_sign.cmp(&0) {
            Ordering::Greater => self.im.div(&self.re, p, RM).atan(p, RM, &mut cc),
            Ordering::Less => {
                let base = self.im.div(&self.re, p, RM).atan(p, RM, &mut cc);
                if im_sign >= 0 {
                    base.add(&pi, p, RM)
                } else {
                    base.sub(&pi, p, RM)
                }
            }
            Ordering::Equal => match im_sign.cmp(&0) {
                Ordering::Greater => half_pi,
                Ordering::Less => half_pi.neg(),
                Ordering::Equal => zero,
            },
        }
    }

    /// `r * (cos t + i sin t)`.
    pub fn from_polar(r: &BigFloat, t: &BigFloat, prec: usize) -> Self {
        let mut cc = consts();
        let p = prec + 16;
        let c = t.cos(p, RM, &mut cc);
        let s = t.sin(p, RM, &mut cc);
        ComplexApprox {
            re: r.mul(&c, prec, RM),
            im: r.mul(&s, prec, RM),
            prec,
        }
    }

    /// `exp(2 pi i k / n)`.
    pub fn root_of_unity(n: u32, k: i64, prec: usize) -> Self {
        let n = n.max(1) as i64;
        let k = k.rem_euclid(n);
        if k == 0 {
            return Self::one_with(prec);
        }
        if 2 * k == n {
            return Self::from_f64(-1.0, 0.0, prec);
        }
        if 4 * k == n {
            return Self::i(prec);
        }
        if 4 * k == 3 * n {
            return Self::from_f64(0.0, -1.0, prec);
        }
        let p = prec + 16;
        let mut cc = consts();
        let two_pi = cc.pi(p, RM).mul(&BigFloat::from_u64(2, p), p, RM);
        let t = two_pi
            .mul(&BigFloat::from_u64(k as u64, p), p, RM)
            .div(&BigFloat::from_u64(n as u64, p), p, RM);
        Self::from_polar(&BigFloat::from_u64(1, p), &t, prec)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        self.nth_root(2)
    }

    /// Principal `n`-th root: the root whose argument lies in `(-pi/n, pi/n]`.
    pub fn nth_root(&self, n: u32) -> Self {
        let p = self.prec;
        if self.is_exact_zero() || n == 1 {
            return self.clone();
        }
        let wp = p + 16;
        if self.is_real() && self.re.is_positive() {
            return ComplexApprox {
                re: real_root(&self.re, n, wp).clone_with(p),
                im: BigFloat::from_u64(0, p),
                prec: p,
            };
        }
        let mut cc = consts();
        let r = self.with_precision(wp).abs();
        let mag = real_root(&r, n, wp);
        let t = self
            .with_precision(wp)
            .arg()
            .div(&BigFloat::from_u64(n as u64, wp), wp, RM);
        let c = t.cos(wp, RM, &mut cc);
        let s = t.sin(wp, RM, &mut cc);
        ComplexApprox {
            re: mag.mul(&c, p, RM),
            im: mag.mul(&s, p, RM),
            prec: p,
        }
    }

    /// Real `n`-th root for odd `n` and real negative input; principal root
    /// otherwise.
    pub fn real_branch_root(&self, n: u32) -> Self {
        if n % 2 == 1 && self.is_real() && self.re.is_negative() {
            let p = self.prec;
            let mag = real_root(&self.re.abs(), n, p + 16);
            ComplexApprox {
                re: mag.neg().clone_with(p),
                im: BigFloat::from_u64(0, p),
                prec: p,
            }
        } else {
            self.nth_root(n)
        }
    }

    pub fn powu(&self, e: u32) -> Self {
        let mut acc = Self::one_with(self.prec);
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

    pub fn recip(&self) -> Self {
        Self::one_with(self.prec) / self.clone()
    }

    /// `(re, im)` rounded to `f64`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re_f64(), self.im_f64())
    }
}

trait CloneWith {
    fn clone_with(&self, p: usize) -> BigFloat;
}

impl CloneWith for BigFloat {
    fn clone_with(&self, p: usize) -> BigFloat {
        let mut v = self.clone();
        let _ = v.set_precision(p, RM);
        v
    }
}

/// Positive real `n`-th root by `exp(ln(x)/n)` followed by one Newton step.
fn real_root(x: &BigFloat, n: u32, p: usize) -> BigFloat {
    if x.is_zero() {
        return x.clone();
    }
    let mut cc = consts();
    let nn = BigFloat::from_u64(n as u64, p);
    let guess = match n {
        2 => x.sqrt(p, RM),
        3 => x.cbrt(p, RM),
        _ => x.ln(p, RM, &mut cc).div(&nn, p, RM).exp(p, RM, &mut cc),
    };
    if n <= 3 {
        return guess;
    }
    // y <- y - (y^n - x) / (n y^(n-1))
    let yn1 = guess.powi(n as usize - 1, p, RM);
    let yn = yn1.mul(&guess, p, RM);
    let step = yn.sub(x, p, RM).div(&nn.mul(&yn1, p, RM), p, RM);
    guess.sub(&step, p, RM)
}

impl fmt::Debug for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if im == 0.0 {
            write!(f, "{re}")
        } else if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl Add for ComplexApprox {
    type Output = ComplexApprox;
    fn add(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        ComplexApprox {
            re: self.re.add(&rhs.re, p, RM),
            im: self.im.add(&rhs.im, p, RM),
            prec: p,
        }
    }
}

impl Sub for ComplexApprox {
    type Output = ComplexApprox;
    fn sub(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        ComplexApprox {
            re: self.re.sub(&rhs.re, p, RM),
            im: self.im.sub(&rhs.im, p, RM),
            prec: p,
        }
    }
}

impl Mul for ComplexApprox {
    type Output = ComplexApprox;
    fn mul(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        let re = self
            .re
            .mul(&rhs.re, p, RM)
            .sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self
            .re
            .mul(&rhs.im, p, RM)
            .add(&self.im.mul(&rhs.re, p, RM), p, RM);
        ComplexApprox { re, im, prec: p }
    }
}

impl Div for ComplexApprox {
    type Output = ComplexApprox;
    fn div(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        if rhs.im.is_zero() {
            return ComplexApprox {
                re: self.re.div(&rhs.re, p, RM),
                im: self.im.div(&rhs.re, p, RM),
                prec: p,
            };
        }
        let den = rhs.norm_sqr();
        let num = self * rhs.conj();
        ComplexApprox {
            re: num.re.div(&den, p, RM),
            im: num.im.div(&den, p, RM),
            prec: p,
        }
    }
}

impl Neg for ComplexApprox {
    type Output = ComplexApprox;
    fn neg(self) -> Self {
        ComplexApprox {
            re: self.re.neg(),
            im: self.im.neg(),
            prec: self.prec,
        }
    }
}

impl num_traits::Zero for ComplexApprox {
    fn zero() -> Self {
        Self::zero_with(DEFAULT_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
}

impl num_traits::One for ComplexApprox {
    fn one() -> Self {
        Self::one_with(DEFAULT_PRECISION)
    }
}

impl Field for ComplexApprox {
    fn from_rational(r: &Rational) -> Self {
        ComplexApprox::from_rational(r, DEFAULT_PRECISION)
    }
}

/// `2^-bits` at the given precision.
pub fn epsilon(bits: usize, prec: usize) -> BigFloat {
    BigFloat::from_u64(1, prec).div(
        &BigFloat::from_u64(2, prec).powi(bits, prec, RM),
        prec,
        RM,
    )
}

/// Multiply two nonnegative big floats at a precision.
pub fn float_mul(a: &BigFloat, b: &BigFloat, prec: usize) -> BigFloat {
    a.mul(b, prec, RM)
}

pub fn float_add(a: &BigFloat, b: &BigFloat, prec: usize) -> BigFloat {
    a.add(b, prec, RM)
}

/// Maximum over a slice of the magnitude of rationals, as `f64`.
pub fn max_abs_f64(values: &[Rational]) -> f64 {
    values
        .iter()
        .map(|v| crate::scalar::rational_to_f64(&v.abs()))
        .fold(0.0, f64::max)
}
