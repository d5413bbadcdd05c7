use num_traits::{Signed, Zero};

use super::{Method, RadicalExpr, RadicalRoot, RootSet, Transform};
use crate::error::{Error, Result};
use crate::forms::UnivariateEquation;
use crate::scalar::{rat, Rational};

/// `(p, q, s)` with `f(y - s) / b0 = y^3 + p y + q`.
pub fn depress_cubic(eq: &UnivariateEquation) -> Result<(Rational, Rational, Rational)> {
    if eq.degree() != 3 {
        return Err(Error::Degree(format!("expected a cubic, got degree {}", eq.degree())));
    }
    let m = eq.monic();
    let s = &m.plain()[1] / rat(3);
    let g = m.shifted(&-s.clone());
    Ok((g.plain()[2].clone(), g.plain()[3].clone(), s))
}

fn set(roots: Vec<(RadicalExpr, usize)>, prec: usize, branch_index: Option<u32>) -> RootSet {
    RootSet {
        degree: 3,
        roots: roots
            .into_iter()
            .map(|(e, m)| RadicalRoot::new(e, m, prec))
            .collect(),
        method: Method::Cardano,
        transforms: vec![],
        branch_index,
        notes: vec![],
        precision: prec,
    }
}

/// Roots of `x^3 + p x + q`.
pub fn cardano(p: &Rational, q: &Rational, prec: usize) -> RootSet {
    let r = |v: Rational| RadicalExpr::rational(v);
    if p.is_zero() && q.is_zero() {
        return set(vec![(r(rat(0)), 3)], prec, None);
    }
    if p.is_zero() {
        let roots = (0..3)
            .map(|k| (RadicalExpr::root(r(-q.clone()), 3, k), 1))
            .collect();
        return set(roots, prec, Some(3));
    }
    if q.is_zero() {
        let roots = vec![
            (r(rat(0)), 1),
            (RadicalExpr::root(r(-p.clone()), 2, 0), 1),
            (RadicalExpr::root(r(-p.clone()), 2, 1), 1),
        ];
        return set(roots, prec, None);
    }
    let disc = q * q / rat(4) + p * p * p / rat(27);
    if disc.is_zero() {
        return set(
            vec![
                (r(rat(-3) * q / (rat(2) * p)), 2),
                (r(rat(3) * q / p), 1),
            ],
            prec,
            None,
        );
    }
    // pick the sign that avoids cancellation in -q/2 +- sqrt(disc)
    let sqrt = RadicalExpr::root(r(disc), 2, 0);
    let half_q = r(-q / rat(2));
    let cube = if q.is_positive() {
        RadicalExpr::sub(half_q, sqrt)
    } else {
        RadicalExpr::add(half_q, sqrt)
    };
    let u = RadicalExpr::root(cube, 3, 0);
    let v = RadicalExpr::div(r(-p / rat(3)), u.clone());
    let w = |k: u32| RadicalExpr::unity(3, k);
    let roots = vec![
        (RadicalExpr::add(u.clone(), v.clone()), 1),
        (
            RadicalExpr::add(RadicalExpr::mul(w(1), u.clone()), RadicalExpr::mul(w(2), v.clone())),
            1,
        ),
        (RadicalExpr::add(RadicalExpr::mul(w(2), u), RadicalExpr::mul(w(1), v)), 1),
    ];
    set(roots, prec, Some(3))
}

/// Any cubic: depress, apply [`cardano`], shift back.
pub fn solve_cubic_cardano(eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
    let (p, q, s) = depress_cubic(eq)?;
    let rs = cardano(&p, &q, prec);
    Ok(if s.is_zero() {
        rs
    } else {
        rs.map_back(&[Transform::Shift(s)])
    })
}
