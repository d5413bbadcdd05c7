use num_traits::{One, Zero};

use super::{classify, restore_pivot, EquationClass, Method, RadicalExpr, RadicalRoot, RootSet, Transform};
use crate::center::center_generator;
use crate::error::{Error, Result};
use crate::forms::UnivariateEquation;
use crate::scalar::{rat, Quadratic, Rational};

/// Reverse the coefficients after splitting off `x^k`. Returns `k` and the
/// reversed cofactor, whose roots are the reciprocals of the nonzero roots.
pub fn reversal_transform(eq: &UnivariateEquation) -> Result<(usize, Option<UnivariateEquation>)> {
    let (k, rest) = eq.strip_zero_roots();
    match rest {
        Some(r) => Ok((k, Some(r.reversed()?))),
        None => Ok((k, None)),
    }
}

fn root_set(degree: usize, method: Method, prec: usize, roots: Vec<(RadicalExpr, usize)>) -> RootSet {
    RootSet {
        degree,
        roots: roots
            .into_iter()
            .map(|(e, m)| RadicalRoot::new(e, m, prec))
            .collect(),
        method,
        transforms: vec![],
        branch_index: None,
        notes: vec![],
        precision: prec,
    }
}

/// Linear and quadratic equations by the usual formulas.
pub fn solve_closed_form(eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
    let b = eq.plain();
    match eq.degree() {
        1 => Ok(root_set(
            1,
            Method::ClosedForm,
            prec,
            vec![(RadicalExpr::rational(-&b[1] / &b[0]), 1)],
        )),
        2 => {
            let disc = &b[1] * &b[1] - rat(4) * &b[0] * &b[2];
            let two_a = rat(2) * &b[0];
            let centre = -&b[1] / &two_a;
            if disc.is_zero() {
                return Ok(root_set(2, Method::ClosedForm, prec, vec![(RadicalExpr::rational(centre), 2)]));
            }
            let half = Rational::one() / &two_a;
            let sqrt = Quadratic::sqrt(&disc);
            let plus = Quadratic::from_rational(centre.clone()) + sqrt.clone() * Quadratic::from_rational(half.clone());
            let minus = Quadratic::from_rational(centre) - sqrt * Quadratic::from_rational(half);
            Ok(root_set(
                2,
                Method::ClosedForm,
                prec,
                vec![(RadicalExpr::quadratic(plus), 1), (RadicalExpr::quadratic(minus), 1)],
            ))
        }
        d => Err(Error::Degree(format!("closed forms cover degree 1 and 2, got {d}"))),
    }
}

/// Roots by completing powers along the center of the homogenized form.
pub fn solve_by_radicals(eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
    let d = eq.degree();
    if d < 3 {
        return Err(Error::Degree(format!("radical solver needs degree >= 3, got {d}")));
    }
    let du = d as u32;
    match classify(eq)? {
        EquationClass::PerfectPower { shift, .. } => Ok(root_set(
            d,
            Method::PerfectPower,
            prec,
            vec![(RadicalExpr::rational(-shift), d)],
        )),
        EquationClass::PowerPlusConstant {
            scale,
            shift,
            constant,
        } => {
            let radicand = RadicalExpr::rational(-constant / scale);
            let roots = (0..du)
                .map(|i| {
                    let r = RadicalExpr::root(radicand.clone(), du, i);
                    (RadicalExpr::sub(r, RadicalExpr::rational(shift.clone())), 1)
                })
                .collect();
            let mut rs = root_set(d, Method::PowerPlusConstant, prec, roots);
            rs.branch_index = Some(du);
            Ok(rs)
        }
        EquationClass::ConstantTimesPowerPlusPower { .. } => {
            let rev = eq.reversed()?;
            let mut rs = solve_by_radicals(&rev, prec)?.map_back(&[Transform::Reversal]);
            rs.method = Method::ConstantTimesPowerPlusPower;
            Ok(rs)
        }
        EquationClass::SumOfTwoPowers { .. } => {
            let prepared = restore_pivot(eq).ok_or(Error::Pivot)?;
            let rs = sum_of_two_powers(&prepared.eq, prec)?;
            Ok(rs.map_back(&prepared.transforms))
        }
        EquationClass::LinearTimesPowerD1 { .. } => {
            let prepared = restore_pivot(eq).ok_or(Error::Pivot)?;
            let rs = repeated_eigenvalue(&prepared.eq, prec)?;
            Ok(rs.map_back(&prepared.transforms))
        }
        EquationClass::NoNontrivialCenter { hankel_rank } => {
            let hint = if d == 4 { "; try the quartic resolvent path" } else { "" };
            Err(Error::NoRadicalMethod(format!(
                "Hankel rank {hankel_rank}: the center is trivial{hint}"
            )))
        }
    }
}

/// `x_i = (w_i l1 - l2) / (D1 (1 - w_i))` with `w_i` the `i`-th branch of the
/// `d`-th root of `(l2 a0 - D1 a1) / (l1 a0 - D1 a1)`.
fn sum_of_two_powers(eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
    let d = eq.degree();
    let du = d as u32;
    let gen = center_generator(&eq.homogenize())?;
    if gen.discriminant.is_zero() {
        return Err(Error::RepeatedEigenvalue);
    }
    let a = eq.normalized();
    let q = |r: &Rational| Quadratic::from_rational(r.clone());
    let (a0, a1, d1) = (q(&a[0]), q(&a[1]), q(&gen.d1));
    let num = gen.lambda2.clone() * a0.clone() - d1.clone() * a1.clone();
    let den = gen.lambda1.clone() * a0 - d1.clone() * a1;
    if den.is_zero() || num.is_zero() {
        return Err(Error::NoRadicalMethod("a completed power vanishes".into()));
    }
    let rho = num / den;
    let mut notes = vec![];
    let mut roots = vec![];
    for i in 0..du {
        if i == 0 && rho.is_one() {
            notes.push("branch 0 gives a root at infinity; effective degree drops".into());
            continue;
        }
        let w = RadicalExpr::root(RadicalExpr::quadratic(rho.clone()), du, i);
        let top = RadicalExpr::sub(
            RadicalExpr::mul(w.clone(), RadicalExpr::quadratic(gen.lambda1.clone())),
            RadicalExpr::quadratic(gen.lambda2.clone()),
        );
        let bottom = RadicalExpr::mul(
            RadicalExpr::quadratic(d1.clone()),
            RadicalExpr::sub(RadicalExpr::int(1), w),
        );
        roots.push((RadicalExpr::div(top, bottom), 1));
    }
    let mut rs = root_set(d, Method::SumOfTwoPowers, prec, roots);
    rs.branch_index = Some(du);
    rs.notes = notes;
    Ok(rs)
}

/// Double eigenvalue: `-D2/(2 D1)` with multiplicity `d - 1`, and the last
/// root from the sum of the roots.
fn repeated_eigenvalue(eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
    let d = eq.degree();
    let gen = center_generator(&eq.homogenize())?;
    let a = eq.normalized();
    let dr = rat(d as i64);
    let repeated = -&gen.d2 / (rat(2) * &gen.d1);
    let last = (&dr - rat(1)) * &gen.d2 / (rat(2) * &gen.d1) - &dr * &a[1] / &a[0];
    Ok(root_set(
        d,
        Method::RepeatedEigenvalue,
        prec,
        vec![(RadicalExpr::rational(repeated), d - 1), (RadicalExpr::rational(last), 1)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ComplexApprox;
    use crate::scalar::ratio;
    use crate::verify::{compare_multisets, numeric_roots, relative_residual, vieta_errors};

    fn seven() -> UnivariateEquation {
        UnivariateEquation::from_plain_coeffs(vec![
            rat(1),
            ratio(-8, 3),
            ratio(11, 4),
            ratio(-5, 4),
            ratio(5, 48),
            ratio(1, 8),
            ratio(-3, 64),
            ratio(1, 192),
        ])
        .unwrap()
    }

    fn check(eq: &UnivariateEquation, rs: &RootSet) {
        assert_eq!(rs.total_multiplicity(), eq.degree());
        for r in &rs.roots {
            assert!(relative_residual(eq, &r.value) < 1e-9, "{:?}", r.expr);
        }
        let (s, p) = vieta_errors(eq, &rs.flat_values());
        assert!(s < 1e-9 && p < 1e-9);
        let oracle = numeric_roots(eq, 64).unwrap();
        let cmp = compare_multisets(&rs.flat_values(), &oracle.flat(), 1e-9);
        assert!(cmp.passed, "{cmp:?}");
    }

    #[test]
    fn quintic() {
        let eq = UnivariateEquation::from_i64(&[31, 235, 710, 1070, 805, 242]).unwrap();
        let rs = solve_by_radicals(&eq, 64).unwrap();
        assert_eq!(rs.method, Method::SumOfTwoPowers);
        assert_eq!(rs.roots[0].exact_rational(), Some(&rat(-2)));
        check(&eq, &rs);
        // printed form for n = 1..4 uses zeta = exp(2 pi i n / 5)
        for n in 1..5u32 {
            let z = ComplexApprox::root_of_unity(5, n as i64, 64);
            let three = ComplexApprox::from_f64(3.0, 0.0, 64);
            let two = ComplexApprox::from_f64(2.0, 0.0, 64);
            let x = (three - z.clone()) / (z - two);
            assert!(rs.roots.iter().any(|r| r.value.dist(&x) < 1e-15));
        }
    }

    #[test]
    fn degree_seven() {
        let eq = seven();
        let rs = solve_by_radicals(&eq, 64).unwrap();
        assert_eq!(rs.method, Method::RepeatedEigenvalue);
        assert_eq!(rs.roots[0].exact_rational(), Some(&ratio(1, 2)));
        assert_eq!(rs.roots[0].multiplicity, 6);
        assert_eq!(rs.roots[1].exact_rational(), Some(&ratio(-1, 3)));
        check(&eq, &rs);
    }

    #[test]
    fn depressed_double_root() {
        let eq = UnivariateEquation::from_i64(&[1, 0, -3, 2]).unwrap();
        let rs = solve_by_radicals(&eq, 64).unwrap();
        assert_eq!(rs.roots[0].exact_rational(), Some(&rat(1)));
        assert_eq!(rs.roots[0].multiplicity, 2);
        assert_eq!(rs.roots[1].exact_rational(), Some(&rat(-2)));
    }

    #[test]
    fn simple_classes() {
        for coeffs in [
            &[1, 4, 6, 4, 1][..],
            &[1, 3, 3, 6],
            &[3, 3, 3, 1],
            &[2, 0, 0, 0, 0, -64],
            &[1, 3, 0, 0],
            &[5, 0, 0, -7],
        ] {
            let eq = UnivariateEquation::from_i64(coeffs).unwrap();
            let rs = solve_by_radicals(&eq, 64).unwrap();
            check(&eq, &rs);
        }
    }

    #[test]
    fn vieta_closure_of_last_root() {
        // (d - 1) * (-D2 / (2 D1)) + x_d = -d a1 / a0
        for (d1, d2, a0, a1, d) in [(ratio(-25, 1764), ratio(25, 1764), rat(1), ratio(-8, 21), 7), (rat(3), rat(-2), rat(2), rat(5), 4)] {
            let dd = rat(d);
            let repeated = -&d2 / (rat(2) * &d1);
            let last = (&dd - rat(1)) * &d2 / (rat(2) * &d1) - &dd * &a1 / &a0;
            assert_eq!((&dd - rat(1)) * repeated + last, -&dd * a1 / a0);
        }
    }

    #[test]
    fn trivial_center_is_out_of_scope() {
        let eq = UnivariateEquation::from_i64(&[1, 0, 0, 1, 1]).unwrap();
        assert!(matches!(solve_by_radicals(&eq, 64), Err(Error::NoRadicalMethod(m)) if m.contains("quartic")));
    }

    #[test]
    fn closed_forms() {
        let lin = UnivariateEquation::from_i64(&[2, 3]).unwrap();
        assert_eq!(solve_closed_form(&lin, 64).unwrap().roots[0].exact_rational(), Some(&ratio(-3, 2)));
        let quad = UnivariateEquation::from_i64(&[1, 1, 1]).unwrap();
        let rs = solve_closed_form(&quad, 64).unwrap();
        check(&quad, &rs);
    }

    #[test]
    fn reversal_strips_zero_roots() {
        let eq = UnivariateEquation::from_i64(&[1, 2, 3, 0, 0]).unwrap();
        let (k, rev) = reversal_transform(&eq).unwrap();
        assert_eq!(k, 2);
        assert_eq!(rev.unwrap().plain(), &[rat(3), rat(2), rat(1)][..]);
    }
}
