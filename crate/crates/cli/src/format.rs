//! Text rendering of exact and approximate values.

use num_traits::Zero;
use powers_core::forms::PowerSumDecomposition;
use powers_core::scalar::{format_rational, Field};
use powers_core::{ComplexApprox, Quadratic, Rational};

/// Values that can appear as coefficients in printed forms.
pub trait Coefficient {
    /// Plain text; compound values are not parenthesized.
    fn text(&self) -> String;
    /// Whether the text needs parentheses as a factor.
    fn compound(&self) -> bool;
}

impl Coefficient for Rational {
    fn text(&self) -> String {
        format_rational(self)
    }
    fn compound(&self) -> bool {
        false
    }
}

impl Coefficient for Quadratic {
    fn text(&self) -> String {
        self.pretty()
    }
    fn compound(&self) -> bool {
        !self.is_rational() && !self.rational_part().is_zero()
    }
}

impl Coefficient for ComplexApprox {
    fn text(&self) -> String {
        complex_text(self.re_f64(), self.im_f64())
    }
    fn compound(&self) -> bool {
        self.im_f64() != 0.0 && self.re_f64() != 0.0
    }
}

/// `-0.0` prints as `0`.
pub fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Relative size below which a component is printed as zero.
pub const SNAP: f64 = 1e-20;

/// Drops a component that is negligible next to the modulus.
pub fn snap(re: f64, im: f64) -> (f64, f64) {
    let scale = re.abs().max(im.abs());
    let z = |v: f64| if v.abs() <= SNAP * scale { 0.0 } else { clean(v) };
    (z(re), z(im))
}

pub fn complex_text(re: f64, im: f64) -> String {
    let (re, im) = snap(re, im);
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re} - {}i", -im)
    } else {
        format!("{re} + {im}i")
    }
}

/// `c*body` with a unit coefficient dropped; the flag marks a leading minus
/// that was pulled out.
fn scaled<K: Coefficient>(c: &K, body: &str) -> (bool, String) {
    let t = c.text();
    if c.compound() {
        (false, format!("({t})*{body}"))
    } else if let Some(rest) = t.strip_prefix('-') {
        (true, if rest == "1" { body.to_string() } else { format!("{rest}*{body}") })
    } else if t == "1" {
        (false, body.to_string())
    } else {
        (false, format!("{t}*{body}"))
    }
}

fn join_signed(parts: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (negative, body) in parts {
        let sep = match (out.is_empty(), negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        out.push_str(sep);
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `c1*v1 + c2*v2 + ...` with unit coefficients dropped.
pub fn linear_text<K: Coefficient>(coeffs: &[K], names: &[String]) -> String {
    join_signed(
        coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| c.text() != "0")
            .map(|(c, name)| scaled(c, name)),
    )
}

/// `c1*(l1)^d + c2*(l2)^d`; a bare variable is not parenthesized.
pub fn power_sum_text<K: Coefficient + Field>(dec: &PowerSumDecomposition<K>, names: &[String]) -> String {
    join_signed(dec.summands.iter().map(|(c, l)| {
        let inner = linear_text(l.coeffs(), names);
        let base = if names.contains(&inner) {
            format!("{inner}^{}", dec.degree)
        } else {
            format!("({inner})^{}", dec.degree)
        };
        scaled(c, &base)
    }))
}
