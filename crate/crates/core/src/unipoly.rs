//! Univariate polynomials over the rationals: just enough for characteristic
//! polynomials and resolvents (gcd, square-freeness, rational roots).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{lcm_of_denominators, Rational};

/// Coefficients in ascending powers; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Build from coefficients listed from the leading term down.
    pub fn from_descending(coeffs: &[Rational]) -> Self {
        UniPoly::new(coeffs.iter().rev().cloned().collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        UniPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::new(vec![]), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let lead = d.leading();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    /// Divide out `(x - r)` once; `r` must be a root.
    pub fn deflate(&self, r: &Rational) -> UniPoly {
        let (q, rem) = self.div_rem(&UniPoly::new(vec![-r.clone(), Rational::one()]));
        debug_assert!(rem.is_zero());
        q
    }

    /// Rational roots with multiplicity, ascending. Candidates are `p/q` with
    /// `p | constant` and `q | leading` after clearing denominators, pruned by
    /// the Cauchy bound.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut p = self.clone();
        let mut zero_mult = 0;
        while p.coeffs.first().is_some_and(Zero::is_zero) {
            p.coeffs.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rational::zero(), zero_mult));
        }
        let l = lcm_of_denominators(p.coeffs.iter());
        let ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        if ints.len() < 2 {
            return out;
        }
        let c0 = ints[0].abs();
        let cn = ints[ints.len() - 1].abs();
        let bound = cauchy_bound(&p);
        let nums = divisors(&c0);
        let dens = divisors(&cn);
        let mut candidates: Vec<Rational> = Vec::new();
        for q in &dens {
            for n in &nums {
                let r = Rational::new(n.clone(), q.clone());
                if r <= bound {
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let mut mult = 0;
            while p.degree().unwrap_or(0) > 0 && p.eval(&r).is_zero() {
                p = p.deflate(&r);
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.leading().abs();
    let max = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max / lead
}

/// Positive divisors of `n` (of `1` when `n` is zero). Trial division up to
/// 10^6; a larger leftover cofactor is treated as prime.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut f = 2u64;
    while f <= 1_000_000 {
        let fb = BigInt::from(f);
        if &fb * &fb > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&fb);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            factors.push((fb, e));
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Approximate coefficients as `f64`, ascending.
pub fn to_f64_coeffs(p: &UniPoly) -> Vec<f64> {
    p.coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect()
}
