use powers_cli::parser::{parse_coefficients, parse_polynomial, render};
use proptest::prelude::*;

const VARS: [&str; 5] = ["x", "y", "x1", "x2", "x3"];

fn term() -> impl Strategy<Value = String> {
    (-50i64..=50, 1i64..=9, proptest::collection::vec((0usize..VARS.len(), 0u32..=4), 0..=3)).prop_map(
        |(n, d, factors)| {
            let mut t = if d == 1 { format!("{n}") } else { format!("{n}/{d}") };
            for (v, e) in factors {
                t.push_str(&format!("*{}^{e}", VARS[v]));
            }
            t
        },
    )
}

fn expression() -> impl Strategy<Value = String> {
    let sum = || proptest::collection::vec(term(), 1..=5).prop_map(|ts| ts.join(" + "));
    (sum(), sum(), 0u32..=3, any::<bool>()).prop_map(|(a, b, e, product)| {
        if product {
            format!("({a})*({b})^{e}")
        } else {
            format!("{a} - ({b})")
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_then_parse_is_identity(text in expression()) {
        let first = parse_polynomial(&text).unwrap();
        let rendered = render(&first.poly);
        let second = parse_polynomial(&rendered).unwrap();
        prop_assert_eq!(&second.poly, &first.poly);
        prop_assert_eq!(render(&second.poly), rendered);
    }

    #[test]
    fn coefficient_lists_round_trip(c in proptest::collection::vec(-99i64..=99, 2..=8)) {
        prop_assume!(c[0] != 0);
        let text = c.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        let eq = parse_coefficients(&text).unwrap();
        let again = parse_polynomial(&eq.to_expr("x")).unwrap().to_equation().unwrap();
        prop_assert_eq!(again, eq);
    }

    #[test]
    fn parser_never_panics(text in "[-+*/^()0-9xy ]{0,24}") {
        let _ = parse_polynomial(&text);
    }
}
