use num_traits::Zero;

use super::{cardano, depress_cubic, Method, RadicalExpr, RadicalRoot, RootSet, Transform};
use crate::error::{Error, Result};
use crate::forms::UnivariateEquation;
use crate::numeric::DEFAULT_PRECISION;
use crate::scalar::{is_rational_square, rat, Quadratic, Rational};
use crate::unipoly::UniPoly;

/// `g(y) = y^4 + p y^2 + q y + r` with `x = y - shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepressedQuartic {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
    pub shift: Rational,
}

pub fn depress_quartic(eq: &UnivariateEquation) -> Result<DepressedQuartic> {
    if eq.degree() != 4 {
        return Err(Error::Degree(format!("expected a quartic, got degree {}", eq.degree())));
    }
    let m = eq.monic();
    let shift = &m.plain()[1] / rat(4);
    let g = m.shifted(&-shift.clone());
    let c = g.plain();
    Ok(DepressedQuartic {
        p: c[2].clone(),
        q: c[3].clone(),
        r: c[4].clone(),
        shift,
    })
}

/// A root `alpha` of the resolvent cubic with
/// `(p - 2 alpha) y^2 + q y + (r - alpha^2) = (beta y + gamma)^2`.
#[derive(Clone, Debug)]
pub struct ResolventData {
    pub alpha: RadicalExpr,
    pub beta: RadicalExpr,
    pub gamma: RadicalExpr,
    /// `(alpha, beta, gamma)` when `alpha` is rational.
    pub exact: Option<(Rational, Quadratic, Quadratic)>,
}

/// Coefficients of `8 a^3 - 4 p a^2 - 8 r a + (4 p r - q^2)`, leading first.
fn resolvent_cubic(g: &DepressedQuartic) -> Vec<Rational> {
    vec![
        rat(8),
        rat(-4) * &g.p,
        rat(-8) * &g.r,
        rat(4) * &g.p * &g.r - &g.q * &g.q,
    ]
}

/// `i * x` for `x` rational or a pure surd, kept inside one quadratic field.
fn times_i(x: &Quadratic) -> Quadratic {
    if x.is_rational() {
        return Quadratic::new(Rational::zero(), x.rational_part().clone(), rat(-1));
    }
    debug_assert!(x.rational_part().is_zero());
    let d = x.radicand();
    // sqrt(-d) is i sqrt(d) for d > 0 and -i sqrt(d) for d < 0
    let sign = if *d > Rational::zero() { rat(1) } else { rat(-1) };
    Quadratic::new(Rational::zero(), sign * x.surd_part(), -d.clone())
}

pub fn resolvent(g: &DepressedQuartic) -> Result<ResolventData> {
    let cubic = resolvent_cubic(g);
    let rational: Vec<Rational> = UniPoly::from_descending(&cubic)
        .rational_roots()
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let square_first = rational
        .iter()
        .find(|a| is_rational_square(&(&g.p - rat(2) * *a)))
        .or_else(|| rational.last());
    if let Some(alpha) = square_first {
        let beta = Quadratic::sqrt(&(&g.p - rat(2) * alpha));
        let gamma = if beta.is_zero() {
            Quadratic::sqrt(&(&g.r - alpha * alpha))
        } else {
            Quadratic::from_rational(g.q.clone()) / (Quadratic::from_rational(rat(2)) * beta.clone())
        };
        return Ok(ResolventData {
            alpha: RadicalExpr::rational(alpha.clone()),
            beta: RadicalExpr::quadratic(beta.clone()),
            gamma: RadicalExpr::quadratic(gamma.clone()),
            exact: Some((alpha.clone(), beta, gamma)),
        });
    }
    // No rational root, so q != 0 and beta != 0.
    let eq = UnivariateEquation::from_plain_coeffs(cubic)?;
    let (pp, qq, s) = depress_cubic(&eq)?;
    let roots = cardano(&pp, &qq, DEFAULT_PRECISION).map_back(&[Transform::Shift(s)]);
    let best = roots
        .roots
        .iter()
        .max_by(|a, b| a.value.re_f64().total_cmp(&b.value.re_f64()))
        .ok_or(Error::ResolventFailure)?;
    let alpha = best.expr.clone();
    let beta = RadicalExpr::root(
        RadicalExpr::sub(
            RadicalExpr::rational(g.p.clone()),
            RadicalExpr::mul(RadicalExpr::int(2), alpha.clone()),
        ),
        2,
        0,
    );
    if beta.eval(DEFAULT_PRECISION).abs_f64() == 0.0 {
        return Err(Error::ResolventFailure);
    }
    let gamma = RadicalExpr::div(
        RadicalExpr::rational(g.q.clone()),
        RadicalExpr::mul(RadicalExpr::int(2), beta.clone()),
    );
    Ok(ResolventData {
        alpha,
        beta,
        gamma,
        exact: None,
    })
}

/// Roots of `y^2 + b y + c` as two expressions.
fn quadratic_roots(b: RadicalExpr, c: RadicalExpr) -> [RadicalExpr; 2] {
    let disc = RadicalExpr::sub(
        RadicalExpr::mul(b.clone(), b.clone()),
        RadicalExpr::mul(RadicalExpr::int(4), c),
    );
    let half = RadicalExpr::rational(Rational::new(1.into(), 2.into()));
    let exact_sqrt = disc
        .exact()
        .and_then(|q| q.as_rational().map(|r| RadicalExpr::quadratic(Quadratic::sqrt(r))));
    let root = |branch: u32| {
        let s = match &exact_sqrt {
            Some(s) if branch == 0 => s.clone(),
            Some(s) => RadicalExpr::neg(s.clone()),
            None => RadicalExpr::root(disc.clone(), 2, branch),
        };
        RadicalExpr::mul(half.clone(), RadicalExpr::sub(s, b.clone()))
    };
    [root(0), root(1)]
}

/// Depress, split `g = (y^2 + alpha)^2 + (beta y + gamma)^2` into
/// `y^2 + alpha -/+ i (beta y + gamma)`, solve both quadratics, shift back.
pub fn solve_quartic_two_squares(eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
    let g = depress_quartic(eq)?;
    let res = resolvent(&g)?;
    let factors: Vec<(RadicalExpr, RadicalExpr)> = match &res.exact {
        Some((alpha, beta, gamma)) => {
            let (ib, ig) = (times_i(beta), times_i(gamma));
            let a = Quadratic::from_rational(alpha.clone());
            vec![
                (RadicalExpr::quadratic(ib.clone()), RadicalExpr::quadratic(a.clone() + ig.clone())),
                (RadicalExpr::quadratic(-ib), RadicalExpr::quadratic(a - ig)),
            ]
        }
        None => {
            let ib = RadicalExpr::mul(RadicalExpr::I, res.beta.clone());
            let ig = RadicalExpr::mul(RadicalExpr::I, res.gamma.clone());
            vec![
                (ib.clone(), RadicalExpr::add(res.alpha.clone(), ig.clone())),
                (RadicalExpr::neg(ib), RadicalExpr::sub(res.alpha.clone(), ig)),
            ]
        }
    };
    let mut roots: Vec<RadicalRoot> = Vec::new();
    for (b, c) in factors {
        for e in quadratic_roots(b, c) {
            let r = RadicalRoot::new(e, 1, prec);
            match roots
                .iter_mut()
                .find(|o| o.exact.is_some() && o.exact == r.exact)
            {
                Some(o) => o.multiplicity += 1,
                None => roots.push(r),
            }
        }
    }
    let rs = RootSet {
        degree: 4,
        roots,
        method: Method::TwoSquares,
        transforms: vec![],
        branch_index: None,
        notes: vec![],
        precision: prec,
    };
    Ok(if g.shift.is_zero() {
        rs
    } else {
        rs.map_back(&[Transform::Shift(g.shift)])
    })
}

impl ResolventData {
    /// Residual of the resolvent condition, exact when possible.
    pub fn exact_condition_holds(&self, g: &DepressedQuartic) -> Option<bool> {
        let (alpha, beta, gamma) = self.exact.as_ref()?;
        let q = |r: &Rational| Quadratic::from_rational(r.clone());
        let cond = &g.q * &g.q - rat(4) * (&g.p - rat(2) * alpha) * (&g.r - alpha * alpha);
        Some(
            cond.is_zero()
                && beta.clone() * beta.clone() == q(&(&g.p - rat(2) * alpha))
                && gamma.clone() * gamma.clone() == q(&(&g.r - alpha * alpha))
                && q(&rat(2)) * beta.clone() * gamma.clone() == q(&g.q),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ComplexApprox;
    use crate::verify::{compare_multisets, numeric_roots};

    fn c(re: f64, im: f64) -> ComplexApprox {
        ComplexApprox::from_f64(re, im, 64)
    }

    #[test]
    fn depress_examples() {
        let p = depress_quartic(&UnivariateEquation::from_i64(&[1, 4, 6, 4, 1]).unwrap()).unwrap();
        assert_eq!((p.p, p.q, p.r), (rat(0), rat(0), rat(0)));
        let w = depress_quartic(&UnivariateEquation::from_i64(&[1, 0, -1, -2, -1]).unwrap()).unwrap();
        assert_eq!((w.p, w.q, w.r, w.shift), (rat(-1), rat(-2), rat(-1), rat(0)));
        let s = depress_quartic(&UnivariateEquation::from_i64(&[1, 8, 24, 32, 15]).unwrap()).unwrap();
        assert_eq!((s.p, s.q, s.r, s.shift), (rat(0), rat(0), rat(-1), rat(2)));
    }

    #[test]
    fn quartic_with_zero_alpha_factors() {
        let eq = UnivariateEquation::from_i64(&[1, 0, -1, -2, -1]).unwrap();
        let g = depress_quartic(&eq).unwrap();
        let res = resolvent(&g).unwrap();
        let (alpha, beta, gamma) = res.exact.clone().unwrap();
        assert_eq!(alpha, rat(0));
        let i = Quadratic::sqrt(&rat(-1));
        assert_eq!((beta.clone(), gamma.clone()), (i.clone(), i));
        assert_eq!(res.exact_condition_holds(&g), Some(true));
        // y^2 + alpha + i (beta y + gamma) = y^2 - y - 1
        assert_eq!(times_i(&beta), Quadratic::from_rational(rat(-1)));
        assert_eq!(times_i(&gamma), Quadratic::from_rational(rat(-1)));
        let rs = solve_quartic_two_squares(&eq, 64).unwrap();
        let s5 = 5f64.sqrt();
        let s3 = 3f64.sqrt();
        let want = [
            c((1.0 + s5) / 2.0, 0.0),
            c((1.0 - s5) / 2.0, 0.0),
            c(-0.5, s3 / 2.0),
            c(-0.5, -s3 / 2.0),
        ];
        assert!(compare_multisets(&rs.flat_values(), &want, 1e-15).passed);
    }

    #[test]
    fn fourth_roots_of_unity() {
        let eq = UnivariateEquation::from_i64(&[1, 0, 0, 0, -1]).unwrap();
        let rs = solve_quartic_two_squares(&eq, 64).unwrap();
        let want = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
        assert!(compare_multisets(&rs.flat_values(), &want, 1e-15).passed);
    }

    #[test]
    fn planted_and_irrational_resolvent() {
        let eq = UnivariateEquation::from_i64(&[1, -10, 35, -50, 24]).unwrap();
        let rs = solve_quartic_two_squares(&eq, 64).unwrap();
        let want = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        assert!(compare_multisets(&rs.flat_values(), &want, 1e-12).passed);

        let hard = UnivariateEquation::from_i64(&[1, 0, 0, 1, 1]).unwrap();
        let g = depress_quartic(&hard).unwrap();
        assert!(resolvent(&g).unwrap().exact.is_none());
        let rs = solve_quartic_two_squares(&hard, 64).unwrap();
        let oracle = numeric_roots(&hard, 64).unwrap();
        assert!(compare_multisets(&rs.flat_values(), &oracle.flat(), 1e-12).passed);
    }

    #[test]
    fn perfect_fourth_power() {
        let eq = UnivariateEquation::from_i64(&[1, 4, 6, 4, 1]).unwrap();
        let rs = solve_quartic_two_squares(&eq, 64).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].multiplicity, 4);
        assert_eq!(rs.roots[0].exact_rational(), Some(&rat(-1)));
    }
}
