use num_traits::Zero;

use super::Transform;
use crate::center::{center_generator, d_invariants, CenterGenerator};
use crate::error::{Error, Result};
use crate::forms::UnivariateEquation;
use crate::linalg::{rank, Matrix};
use crate::scalar::{rat, Rational};

/// Rows `(a_i, a_(i+1), a_(i+2))` for `i = 0..d-2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix {
    pub matrix: Matrix<Rational>,
    pub rank: usize,
}

pub fn hankel(eq: &UnivariateEquation) -> Result<HankelMatrix> {
    let d = eq.degree();
    if d < 3 {
        return Err(Error::Degree(format!("Hankel test needs degree >= 3, got {d}")));
    }
    let a = eq.normalized();
    let matrix = Matrix::from_fn(d - 1, 3, |i, j| a[i + j].clone());
    let rank = rank(&matrix);
    Ok(HankelMatrix { matrix, rank })
}

#[derive(Clone, Debug, PartialEq)]
pub enum EquationClass {
    /// `scale * (x + shift)^d`.
    PerfectPower { scale: Rational, shift: Rational },
    /// `scale * (x + shift)^d + constant`.
    PowerPlusConstant {
        scale: Rational,
        shift: Rational,
        constant: Rational,
    },
    /// `constant * x^d + scale * (x + ratio)^d`.
    ConstantTimesPowerPlusPower {
        constant: Rational,
        scale: Rational,
        ratio: Rational,
    },
    /// Two distinct powers; the generator belongs to the prepared equation.
    SumOfTwoPowers {
        generator: CenterGenerator,
        transforms: Vec<Transform>,
    },
    /// A linear form times the `(d-1)`-th power of another.
    LinearTimesPowerD1 {
        generator: CenterGenerator,
        transforms: Vec<Transform>,
    },
    NoNontrivialCenter { hankel_rank: usize },
}

impl EquationClass {
    pub fn tag(&self) -> &'static str {
        match self {
            EquationClass::PerfectPower { .. } => "PerfectPower",
            EquationClass::PowerPlusConstant { .. } => "PowerPlusConstant",
            EquationClass::ConstantTimesPowerPlusPower { .. } => "ConstantTimesPowerPlusPower",
            EquationClass::SumOfTwoPowers { .. } => "SumOfTwoPowers",
            EquationClass::LinearTimesPowerD1 { .. } => "LinearTimesPowerD1",
            EquationClass::NoNontrivialCenter { .. } => "NoNontrivialCenter",
        }
    }
}

/// Rank at most one of the two-row matrix, by all 2x2 cross products.
fn proportional(top: &[Rational], bottom: &[Rational]) -> bool {
    let n = top.len();
    (0..n).all(|i| (i + 1..n).all(|j| (&top[i] * &bottom[j] - &top[j] * &bottom[i]).is_zero()))
}

/// An equation prepared so that `D1 != 0`, with the transforms that lead
/// there from the input.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub eq: UnivariateEquation,
    pub transforms: Vec<Transform>,
}

const SHEARS: [i64; 8] = [1, -1, 2, -2, 3, -3, 4, -4];

/// Find coordinates with a nonzero pivot `D1`: the input itself, its
/// reversal (nonzero constant term only), then shears by `1, -1, 2, ...`.
pub fn restore_pivot(eq: &UnivariateEquation) -> Option<Prepared> {
    let pivot = |e: &UnivariateEquation| !d_invariants(e.normalized()).0.is_zero();
    if pivot(eq) {
        return Some(Prepared {
            eq: eq.clone(),
            transforms: vec![],
        });
    }
    if let Ok(rev) = reversal_if_possible(eq) {
        if pivot(&rev) {
            return Some(Prepared {
                eq: rev,
                transforms: vec![Transform::Reversal],
            });
        }
    }
    SHEARS.iter().find_map(|&c| {
        let c = rat(c);
        let sheared = eq.sheared(&c).ok()?;
        pivot(&sheared).then(|| Prepared {
            eq: sheared,
            transforms: vec![Transform::Shear(c)],
        })
    })
}

fn reversal_if_possible(eq: &UnivariateEquation) -> Result<UnivariateEquation> {
    eq.reversed()
}

/// Total classification of an equation of degree at least 3.
pub fn classify(eq: &UnivariateEquation) -> Result<EquationClass> {
    let d = eq.degree();
    let h = hankel(eq)?;
    let a = eq.normalized();
    let a0 = a[0].clone();
    let k = &a[1] / &a0;
    if proportional(&a[..d], &a[1..]) {
        return Ok(EquationClass::PerfectPower { scale: a0, shift: k });
    }
    if proportional(&a[..d - 1], &a[1..d]) {
        let constant = &a[d] - &a0 * num_traits::Pow::pow(&k, d as u32);
        return Ok(EquationClass::PowerPlusConstant {
            scale: a0,
            shift: k,
            constant,
        });
    }
    if !a[d].is_zero() && proportional(&a[1..d], &a[2..]) {
        let ratio = &a[2] / &a[1];
        let scale = &a[1] / &ratio;
        return Ok(EquationClass::ConstantTimesPowerPlusPower {
            constant: &a0 - &scale,
            scale,
            ratio,
        });
    }
    if h.rank != 2 {
        return Ok(EquationClass::NoNontrivialCenter { hankel_rank: h.rank });
    }
    let prepared = restore_pivot(eq).ok_or(Error::Pivot)?;
    let generator = center_generator(&prepared.eq.homogenize())?;
    Ok(if generator.discriminant.is_zero() {
        EquationClass::LinearTimesPowerD1 {
            generator,
            transforms: prepared.transforms,
        }
    } else {
        EquationClass::SumOfTwoPowers {
            generator,
            transforms: prepared.transforms,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn hankel_ranks() {
        let q = UnivariateEquation::from_i64(&[31, 235, 710, 1070, 805, 242]).unwrap();
        assert_eq!(hankel(&q).unwrap().rank, 2);
        let p = UnivariateEquation::from_i64(&[1, 5, 10, 10, 5, 1]).unwrap();
        assert_eq!(hankel(&p).unwrap().rank, 1);
        let c = UnivariateEquation::from_i64(&[3, -1, 4, 7]).unwrap();
        assert_eq!(hankel(&c).unwrap().rank, 2);
        let g = UnivariateEquation::from_i64(&[1, 0, 0, 1, 1]).unwrap();
        assert_eq!(hankel(&g).unwrap().rank, 3);
    }

    #[test]
    fn class_tags() {
        let q = UnivariateEquation::from_i64(&[31, 235, 710, 1070, 805, 242]).unwrap();
        assert_eq!(classify(&q).unwrap().tag(), "SumOfTwoPowers");
        let x4 = UnivariateEquation::from_i64(&[1, 0, 0, 0, 0]).unwrap();
        assert_eq!(classify(&x4).unwrap().tag(), "PerfectPower");
        let ppc = UnivariateEquation::from_i64(&[1, 3, 3, 1 + 5]).unwrap();
        assert_eq!(
            classify(&ppc).unwrap(),
            EquationClass::PowerPlusConstant {
                scale: rat(1),
                shift: rat(1),
                constant: rat(5)
            }
        );
        // 2 x^3 + (x + 1)^3
        let ctp = UnivariateEquation::from_i64(&[3, 3, 3, 1]).unwrap();
        assert_eq!(
            classify(&ctp).unwrap(),
            EquationClass::ConstantTimesPowerPlusPower {
                constant: rat(2),
                scale: rat(1),
                ratio: rat(1)
            }
        );
        let seven = UnivariateEquation::from_plain_coeffs(vec![
            rat(1),
            ratio(-8, 3),
            ratio(11, 4),
            ratio(-5, 4),
            ratio(5, 48),
            ratio(1, 8),
            ratio(-3, 64),
            ratio(1, 192),
        ])
        .unwrap();
        assert_eq!(classify(&seven).unwrap().tag(), "LinearTimesPowerD1");
        let none = UnivariateEquation::from_i64(&[1, 0, 0, 1, 1]).unwrap();
        assert_eq!(classify(&none).unwrap().tag(), "NoNontrivialCenter");
    }

    #[test]
    fn trailing_zero_falls_through() {
        // x^2 (x + 3): last ratios are equal but the constant vanishes
        let e = UnivariateEquation::from_i64(&[1, 3, 0, 0]).unwrap();
        assert_eq!(classify(&e).unwrap().tag(), "LinearTimesPowerD1");
    }

    #[test]
    fn reversal_keeps_class() {
        let e = UnivariateEquation::from_i64(&[1, 6, 12, 8]).unwrap();
        let r = e.reversed().unwrap();
        assert_eq!(classify(&e).unwrap().tag(), "PerfectPower");
        assert_eq!(classify(&r).unwrap().tag(), "PerfectPower");
        assert_eq!(r.reversed().unwrap(), e);
    }
}
