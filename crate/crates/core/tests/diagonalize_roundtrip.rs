use num_traits::Zero;
use powers_core::forms::{LinearForm, NAryForm, PowerSumDecomposition};
use powers_core::linalg::Matrix;
use powers_core::scalar::{rat, ratio};
use powers_core::{diagonalize_form, profile, compute_center, Rational, SpectrumKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rat(rng.gen_range(-4..=4)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if !r.is_zero() {
            return r;
        }
    }
}

/// `mu * m^d == lambda * l^d` for some scalar relating `m` and `l`.
fn same_summand(d: u32, (lambda, l): (&Rational, &[Rational]), (mu, m): (&Rational, &[Rational])) -> bool {
    let Some(k) = (0..l.len()).find(|&i| !l[i].is_zero()) else {
        return false;
    };
    if m[k].is_zero() {
        return false;
    }
    let u = &m[k] / &l[k];
    (0..l.len()).all(|i| &l[i] * &u == m[i]) && mu * u.pow(d as i32) == *lambda
}

#[test]
fn planted_forms_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..120 {
        let n = rng.gen_range(2..=4usize);
        let d = rng.gen_range(3..=5u32);
        let p = random_invertible(&mut rng, n);
        let planted: Vec<(Rational, LinearForm<Rational>)> =
            (0..n).map(|k| (nonzero(&mut rng), LinearForm::new(p.row(k).to_vec()))).collect();
        let f: NAryForm<Rational> = PowerSumDecomposition::new(d, planted.clone()).expand(n).unwrap();
        let dec = diagonalize_form(&f).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert_eq!(dec.power_sum.expand(n).unwrap(), f, "case {case}");
        assert_eq!(dec.power_sum.summands.len(), n);
        assert!(dec.idempotents_are_orthogonal(), "case {case}");
        assert!(dec.conjugates_to_units(), "case {case}");
        for (lambda, l) in &planted {
            assert!(
                dec.power_sum
                    .summands
                    .iter()
                    .any(|(mu, m)| same_summand(d, (lambda, l.coeffs()), (mu, m.coeffs()))),
                "case {case}: planted summand not recovered"
            );
        }
        let z = compute_center(&f).unwrap();
        assert!(matches!(profile(&f, &z).spectrum, SpectrumKind::DistinctRational));
    }
}
