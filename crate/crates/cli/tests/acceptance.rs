//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::Zero;
use powers_cli::commands::{self, Input, InputKind, Options};
use powers_core::center::{compute_center, d_invariants, is_member};
use powers_core::forms::{BinaryForm, LinearForm, NAryForm, PowerSumDecomposition, UnivariateEquation};
use powers_core::linalg::Matrix;
use powers_core::radical::{depress_quartic, resolvent, solve_quartic_two_squares};
use powers_core::radical::{cardano, classify, complete_cube, complete_powers, solve_by_radicals, EquationClass, RootSet};
use powers_core::scalar::{rat, ratio};
use powers_core::verify::{compare_multisets, compare_root_sets, max_residual, numeric_roots, vieta_errors};
use powers_core::{ComplexApprox, Quadratic, Rational, SolverRegistry, DEFAULT_PRECISION};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;
const GOLDEN_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-6;
const RUNTIME: Duration = Duration::from_secs(1);
const PREC: usize = DEFAULT_PRECISION;

/// Every root set produced by the suite, for the Vieta and branch checks.
struct Produced {
    /// Sets from criteria 1 to 5.
    early: Vec<(String, RootSet)>,
    all: Vec<(String, UnivariateEquation, RootSet)>,
}

static PRODUCED: Mutex<Produced> = Mutex::new(Produced {
    early: Vec::new(),
    all: Vec::new(),
});

fn record(label: &str, eq: &UnivariateEquation, rs: &RootSet, early: bool) {
    let mut p = PRODUCED.lock().unwrap();
    if early {
        p.early.push((label.to_string(), rs.clone()));
    }
    p.all.push((label.to_string(), eq.clone(), rs.clone()));
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let r = ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6));
        if !nonzero || !r.is_zero() {
            return r;
        }
    }
}

fn q(r: &Rational) -> Quadratic {
    Quadratic::from_rational(r.clone())
}

fn c(r: &Rational) -> ComplexApprox {
    ComplexApprox::from_rational(r, PREC)
}

fn oracle_check(label: &str, eq: &UnivariateEquation, rs: &RootSet, tol: f64) -> Result<(), String> {
    let oracle = numeric_roots(eq, PREC).map_err(|e| format!("{label}: oracle: {e}"))?;
    let cmp = compare_root_sets(rs, &oracle, tol);
    ensure!(cmp.passed, "{label}: oracle distance {:e}", cmp.max_distance);
    let res = max_residual(eq, rs);
    ensure!(res < tol, "{label}: residual {res:e}");
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let eq = UnivariateEquation::from_i64(&[31, 235, 710, 1070, 805, 242]).unwrap();
    let a = eq.normalized();
    let (d1, d2, d3) = d_invariants(a);
    ensure!((d1.clone(), d2.clone(), d3.clone()) == (rat(-8), rat(-20), rat(-12)), "invariants {d1} {d2} {d3}");
    let EquationClass::SumOfTwoPowers { generator, .. } = classify(&eq).unwrap() else {
        return Err("not SumOfTwoPowers".into());
    };
    ensure!(generator.lambda1 == q(&rat(-8)) && generator.lambda2 == q(&rat(-12)), "eigenvalues");
    // delta^5 = (l2 a0 - D1 a1) / (l1 a0 - D1 a1)
    let rho = (rat(-12) * &a[0] - &d1 * &a[1]) / (rat(-8) * &a[0] - &d1 * &a[1]);
    let delta = ratio(1, 2);
    ensure!(rho == delta.pow(5), "delta^5 = {rho}");
    let rs = solve_by_radicals(&eq, PREC).map_err(|e| e.to_string())?;
    ensure!(rs.roots.iter().any(|r| r.exact_rational() == Some(&rat(-2))), "root -2 not exact");
    ensure!(rs.total_multiplicity() == 5, "five roots");
    ensure!(rs.roots.iter().any(|r| r.expr.prefix().contains("root(1/32,5,")), "radicand 1/32");
    oracle_check("quintic", &eq, &rs, GOLDEN_TOL)?;
    let input = commands::read_input(InputKind::Coeffs, "31 235 710 1070 805 242").unwrap();
    let solved = commands::solve(&input, &Options::default(), &SolverRegistry::with_defaults()).map_err(|e| e.to_string())?;
    ensure!(solved.report.class == "SumOfTwoPowers" && solved.passed(), "CLI report");
    let elapsed = start.elapsed();
    ensure!(elapsed < RUNTIME, "runtime {elapsed:?}");
    record("quintic", &eq, &rs, true);
    Ok(format!("{elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let plain = vec![
        rat(1),
        ratio(-8, 3),
        ratio(11, 4),
        ratio(-5, 4),
        ratio(5, 48),
        ratio(1, 8),
        ratio(-3, 64),
        ratio(1, 192),
    ];
    let eq = UnivariateEquation::from_plain_coeffs(plain).unwrap();
    let (d1, d2, d3) = d_invariants(eq.normalized());
    ensure!(d1 == ratio(-25, 1764) && d2 == ratio(25, 1764) && d3 == ratio(-25, 7056), "invariants");
    let EquationClass::LinearTimesPowerD1 { generator, .. } = classify(&eq).unwrap() else {
        return Err("not LinearTimesPowerD1".into());
    };
    ensure!(generator.lambda1 == q(&ratio(25, 3528)) && generator.lambda2 == q(&ratio(25, 3528)), "eigenvalues");
    let rs = solve_by_radicals(&eq, PREC).map_err(|e| e.to_string())?;
    let mut exact: Vec<(Rational, usize)> = rs
        .roots
        .iter()
        .map(|r| r.exact_rational().cloned().map(|x| (x, r.multiplicity)))
        .collect::<Option<_>>()
        .ok_or("a root is not an exact rational")?;
    exact.sort();
    ensure!(exact == vec![(ratio(-1, 3), 1), (ratio(1, 2), 6)], "roots {exact:?}");
    let oracle = numeric_roots(&eq, PREC).map_err(|e| e.to_string())?;
    let m = oracle.multiplicity_near(&c(&ratio(1, 2)), CLUSTER_TOL);
    ensure!(m == 6, "oracle cluster multiplicity {m}");
    oracle_check("degree 7", &eq, &rs, TOL)?;
    let elapsed = start.elapsed();
    ensure!(elapsed < RUNTIME, "runtime {elapsed:?}");
    record("degree 7", &eq, &rs, true);
    Ok(format!("{elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let text = "x1^3 + 3*x2*x1^2 + 3*x3*x1^2 + 3*x2^2*x1 + 3*x3^2*x1 + 6*x2*x3*x1 - x2^3 + 20*x3^3 - 21*x2*x3^2 + 15*x2^2*x3";
    let input = commands::read_input(InputKind::Expr, text).unwrap();
    let report = commands::decompose(&input, &Options::default()).map_err(|e| e.to_string())?;
    ensure!(report.mode == "exact" && report.verified, "mode {} verified {}", report.mode, report.verified);
    let Input::Expr(parsed) = &input else { unreachable!() };
    let (f, _) = parsed.to_form().unwrap();
    let expected = [
        (rat(1), vec![rat(1), rat(1), rat(1)]),
        (rat(-2), vec![rat(0), rat(1), rat(-2)]),
        (rat(3), vec![rat(0), rat(0), rat(1)]),
    ];
    let dec = powers_core::diagonalize_form(&f).map_err(|e| e.to_string())?;
    ensure!(dec.power_sum.expand(3).unwrap() == f, "expand-back");
    ensure!(dec.power_sum.summands.len() == 3, "three summands");
    // each expected summand matches one found summand up to u^3 scaling
    for (lam, l) in &expected {
        let found = dec.power_sum.summands.iter().any(|(mu, m)| {
            let m = m.coeffs();
            let k = (0..3).find(|&i| !l[i].is_zero()).unwrap();
            if m[k].is_zero() {
                return false;
            }
            let u = &m[k] / &l[k];
            (0..3).all(|i| &l[i] * &u == m[i]) && mu * &u * &u * &u == *lam
        });
        ensure!(found, "summand {lam}*({l:?})^3 missing");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < RUNTIME, "runtime {elapsed:?}");
    Ok(format!("{elapsed:.2?}"))
}

fn cubic(p: &Rational, qq: &Rational) -> UnivariateEquation {
    UnivariateEquation::from_plain_coeffs(vec![rat(1), rat(0), p.clone(), qq.clone()]).unwrap()
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut n = 0;
    while n < 100 {
        let (p, qq) = (random_rational(&mut rng, true), random_rational(&mut rng, true));
        if (&qq * &qq / rat(4) + &p * &p * &p / rat(27)).is_zero() {
            continue;
        }
        let eq = cubic(&p, &qq);
        let center = solve_by_radicals(&eq, PREC).map_err(|e| format!("p={p} q={qq}: {e}"))?;
        let formula = cardano(&p, &qq, PREC);
        let cmp = compare_multisets(&center.flat_values(), &formula.flat_values(), TOL);
        ensure!(cmp.passed, "p={p} q={qq}: distance {:e}", cmp.max_distance);
        record("cardano center", &eq, &center, true);
        record("cardano formula", &eq, &formula, true);
        n += 1;
    }
    for _ in 0..20 {
        let t = random_rational(&mut rng, true);
        let (p, qq) = (rat(-3) * &t * &t, rat(2) * &t * &t * &t);
        let double = rat(-3) * &qq / (rat(2) * &p);
        let simple = rat(3) * &qq / &p;
        let eq = cubic(&p, &qq);
        for (label, rs) in [
            ("pipeline", solve_by_radicals(&eq, PREC).map_err(|e| e.to_string())?),
            ("formula", cardano(&p, &qq, PREC)),
        ] {
            let mut got: Vec<(Rational, usize)> = rs
                .roots
                .iter()
                .map(|r| r.exact_rational().cloned().map(|x| (x, r.multiplicity)))
                .collect::<Option<_>>()
                .ok_or(format!("{label} t={t}: inexact root"))?;
            got.sort();
            let mut want = vec![(double.clone(), 2), (simple.clone(), 1)];
            want.sort();
            ensure!(got == want, "{label} t={t}: {got:?}");
            record("cardano double root", &eq, &rs, true);
        }
    }
    Ok("100 generic cubics, 20 double-root cubics".into())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let d = rng.gen_range(3..=9u32);
        let (l1, l2) = loop {
            let (a, b) = (random_rational(&mut rng, true), random_rational(&mut rng, true));
            if !(&a + &b).is_zero() {
                break (a, b);
            }
        };
        let (b1, b2) = loop {
            let (a, b) = (random_rational(&mut rng, true), random_rational(&mut rng, true));
            if a != b {
                break (a, b);
            }
        };
        let planted = PowerSumDecomposition::new(
            d,
            vec![
                (l1.clone(), LinearForm::new(vec![rat(1), b1.clone()])),
                (l2.clone(), LinearForm::new(vec![rat(1), b2.clone()])),
            ],
        );
        let form = planted.expand(2).unwrap();
        let f = BinaryForm::from_form(&form).unwrap();
        let eq = f.dehomogenize().unwrap();
        let class = classify(&eq).unwrap();
        ensure!(matches!(class, EquationClass::SumOfTwoPowers { .. }), "case {i}: {}", class.tag());
        let dec = complete_powers(&f).map_err(|e| format!("case {i}: {e}"))?;
        ensure!(dec.summands.len() == 2, "case {i}: summands");
        ensure!(dec.expand(2).unwrap() == form.map(q), "case {i}: expand-back");
        let rs = solve_by_radicals(&eq, PREC).map_err(|e| format!("case {i}: {e}"))?;
        record("planted", &eq, &rs, true);
    }
    Ok("100 planted sums".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut nonzero, mut zero) = (0, 0);
    for i in 0..500 {
        let lin = |rng: &mut ChaCha8Rng| LinearForm::new(vec![random_rational(rng, false), random_rational(rng, false)]);
        let form = match i % 6 {
            // degenerate shapes so that both sides of the criterion occur
            0 => lin(&mut rng).to_form().pow(3),
            1 => lin(&mut rng).to_form().pow(2).mul(&lin(&mut rng).to_form()),
            _ => BinaryForm::new((0..4).map(|_| random_rational(&mut rng, false)).collect()).to_form(),
        };
        if form.is_zero() {
            continue;
        }
        let f = BinaryForm::from_form(&form).unwrap();
        let (d1, d2, d3) = d_invariants(f.normalized());
        let disc = &d2 * &d2 - rat(4) * &d1 * &d3;
        let ok = complete_cube(&f);
        if let Ok(dec) = &ok {
            ensure!(dec.expand(2).unwrap() == form.map(q), "case {i}: expand-back");
        }
        ensure!(ok.is_ok() == !disc.is_zero(), "case {i}: disc {disc}, completed {}", ok.is_ok());
        if disc.is_zero() {
            zero += 1;
        } else {
            nonzero += 1;
        }
    }
    Ok(format!("{nonzero} with nonzero discriminant, {zero} with zero, 0 misclassified"))
}

fn criterion_7() -> Outcome {
    let quartic = UnivariateEquation::from_i64(&[1, 0, -1, -2, -1]).unwrap();
    let g = depress_quartic(&quartic).unwrap();
    let res = resolvent(&g).unwrap();
    let (alpha, _, _) = res.exact.as_ref().ok_or("y^4 - y^2 - 2y - 1: resolvent not exact")?;
    ensure!(alpha.is_zero(), "alpha = {alpha}");
    ensure!(res.exact_condition_holds(&g) == Some(true), "resolvent condition");
    let rs = solve_quartic_two_squares(&quartic, PREC).map_err(|e| e.to_string())?;
    let mut want = vec![
        Quadratic::new(ratio(1, 2), ratio(1, 2), rat(5)),
        Quadratic::new(ratio(1, 2), ratio(-1, 2), rat(5)),
        Quadratic::new(ratio(-1, 2), ratio(1, 2), rat(-3)),
        Quadratic::new(ratio(-1, 2), ratio(-1, 2), rat(-3)),
    ];
    for r in &rs.roots {
        let e = r.exact.clone().ok_or("y^4 - y^2 - 2y - 1: root not exact")?;
        let k = want.iter().position(|w| *w == e).ok_or(format!("unexpected root {}", e.pretty()))?;
        want.remove(k);
    }
    ensure!(want.is_empty(), "missing roots");
    oracle_check("y^4 - y^2 - 2y - 1", &quartic, &rs, TOL)?;
    record("y^4 - y^2 - 2y - 1", &quartic, &rs, false);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let mut plain = vec![rat(1)];
        plain.extend((0..4).map(|_| random_rational(&mut rng, false)));
        let eq = UnivariateEquation::from_plain_coeffs(plain).unwrap();
        let rs = solve_quartic_two_squares(&eq, PREC).map_err(|e| format!("case {i} {}: {e}", eq.to_expr("x")))?;
        oracle_check(&format!("case {i} {}", eq.to_expr("x")), &eq, &rs, TOL)?;
        record("quartic", &eq, &rs, false);
    }
    Ok("y^4 - y^2 - 2y - 1 exact, 100 random quartics".into())
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rat(rng.gen_range(-3..=3)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut conjugations = 0;
    for i in 0..50 {
        let n = rng.gen_range(2..=4usize);
        let d = rng.gen_range(3..=4u32);
        let p = random_invertible(&mut rng, n);
        let summands = (0..n)
            .map(|k| (random_rational(&mut rng, true), LinearForm::new(p.row(k).to_vec())))
            .collect();
        let f: NAryForm<Rational> = PowerSumDecomposition::new(d, summands).expand(n).unwrap();
        let z = compute_center(&f).map_err(|e| format!("form {i}: {e}"))?;
        ensure!(z.dim() == n, "form {i}: dim {}", z.dim());
        for x in z.basis() {
            ensure!(is_member(&f, x).unwrap(), "form {i}: basis element not a member");
        }
        ensure!(z.contains_identity(), "form {i}: identity");
        ensure!(z.is_commutative(), "form {i}: commutativity");
        for _ in 0..20 {
            let pc = random_invertible(&mut rng, n);
            let zp = compute_center(&f.substitute(&pc)).map_err(|e| format!("form {i}: {e}"))?;
            let moved = z.conjugate(&pc).unwrap();
            ensure!(zp.same_span(&moved), "form {i}: covariance");
            conjugations += 1;
        }
    }
    Ok(format!("50 forms, {conjugations} conjugations"))
}

fn criterion_9() -> Outcome {
    let sets = PRODUCED.lock().unwrap().early.clone();
    let mut checked = 0;
    for (label, rs) in &sets {
        let Some(index) = rs.branch_index else { continue };
        let base = rs.flat_values();
        for k in 1..index {
            let moved = rs.with_shifted_branches(k).flat_values();
            let cmp = compare_multisets(&moved, &base, TOL);
            ensure!(cmp.passed, "{label}: shift {k}: distance {:e}", cmp.max_distance);
        }
        checked += 1;
    }
    ensure!(checked > 0, "no branched root sets");
    Ok(format!("{checked} root sets with a distinguished root"))
}

fn criterion_10() -> Outcome {
    let sets = PRODUCED.lock().unwrap().all.clone();
    for (label, eq, rs) in &sets {
        let (sum, product) = vieta_errors(eq, &rs.flat_values());
        ensure!(sum <= TOL && product <= TOL, "{label} {}: sum {sum:e} product {product:e}", eq.to_expr("x"));
    }
    Ok(format!("{} root sets", sets.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("quintic golden test", criterion_1),
        ("degree-7 golden test", criterion_2),
        ("ternary-cubic golden test", criterion_3),
        ("Cardano equivalence", criterion_4),
        ("plant-and-recover", criterion_5),
        ("completeCube iff nonzero discriminant", criterion_6),
        ("quartic resolvent path", criterion_7),
        ("center properties", criterion_8),
        ("branch invariance", criterion_9),
        ("Vieta conservation", criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{:.1?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.1?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
