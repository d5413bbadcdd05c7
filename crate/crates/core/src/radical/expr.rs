//! Radical expressions: exact leaves, roots of unity, branch-indexed `n`-th
//! roots and field operations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::numeric::ComplexApprox;
use crate::scalar::{exact_nth_root, format_rational, Quadratic, Rational};

/// Extra bits carried while evaluating.
const GUARD_BITS: usize = 32;

#[derive(Clone, PartialEq)]
pub enum RadicalExpr {
    Num(Quadratic),
    /// The imaginary unit.
    I,
    /// `exp(2 pi i k / n)`.
    Unity { n: u32, k: u32 },
    /// Branch `branch` of the `index`-th root: the base root times
    /// `exp(2 pi i branch / index)`. The base root is the real one for an odd
    /// index and a negative real radicand, the principal root otherwise.
    Root {
        radicand: Box<RadicalExpr>,
        index: u32,
        branch: u32,
    },
    Add(Box<RadicalExpr>, Box<RadicalExpr>),
    Sub(Box<RadicalExpr>, Box<RadicalExpr>),
    Mul(Box<RadicalExpr>, Box<RadicalExpr>),
    Div(Box<RadicalExpr>, Box<RadicalExpr>),
    Neg(Box<RadicalExpr>),
}

use RadicalExpr::*;

fn sqrt_neg(r: i64) -> Quadratic {
    Quadratic::sqrt(&Rational::from_integer(BigInt::from(r)))
}

impl RadicalExpr {
    pub fn rational(r: Rational) -> Self {
        Num(Quadratic::from_rational(r))
    }

    pub fn int(n: i64) -> Self {
        RadicalExpr::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn quadratic(q: Quadratic) -> Self {
        Num(q)
    }

    pub fn root(radicand: RadicalExpr, index: u32, branch: u32) -> Self {
        Root {
            radicand: Box::new(radicand),
            index,
            branch: branch % index.max(1),
        }
    }

    pub fn unity(n: u32, k: u32) -> Self {
        Unity { n, k: k % n.max(1) }
    }

    fn as_num(&self) -> Option<&Quadratic> {
        match self {
            Num(q) => Some(q),
            _ => None,
        }
    }

    /// Fold two exact leaves when they share a field.
    fn fold(
        a: &RadicalExpr,
        b: &RadicalExpr,
        op: impl Fn(Quadratic, Quadratic) -> Option<Quadratic>,
    ) -> Option<RadicalExpr> {
        let (x, y) = (a.as_num()?, b.as_num()?);
        if !x.compatible(y) {
            return None;
        }
        op(x.clone(), y.clone()).map(Num)
    }

    pub fn add(a: RadicalExpr, b: RadicalExpr) -> Self {
        if let Some(v) = Self::fold(&a, &b, |x, y| Some(x + y)) {
            return v;
        }
        if a.is_zero_leaf() {
            return b;
        }
        if b.is_zero_leaf() {
            return a;
        }
        Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: RadicalExpr, b: RadicalExpr) -> Self {
        if let Some(v) = Self::fold(&a, &b, |x, y| Some(x - y)) {
            return v;
        }
        if b.is_zero_leaf() {
            return a;
        }
        if a.is_zero_leaf() {
            return RadicalExpr::neg(b);
        }
        Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: RadicalExpr, b: RadicalExpr) -> Self {
        if let Some(v) = Self::fold(&a, &b, |x, y| Some(x * y)) {
            return v;
        }
        if a.is_one_leaf() {
            return b;
        }
        if b.is_one_leaf() {
            return a;
        }
        Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: RadicalExpr, b: RadicalExpr) -> Self {
        if let Some(v) = Self::fold(&a, &b, |x, y| (!y.is_zero()).then(|| x / y)) {
            return v;
        }
        if b.is_one_leaf() {
            return a;
        }
        Div(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: RadicalExpr) -> Self {
        match a {
            Num(q) => Num(-q),
            Neg(inner) => *inner,
            other => Neg(Box::new(other)),
        }
    }

    fn is_zero_leaf(&self) -> bool {
        self.as_num().is_some_and(Zero::is_zero)
    }

    fn is_one_leaf(&self) -> bool {
        self.as_num().is_some_and(One::is_one)
    }

    /// Numeric value at `prec` bits.
    pub fn eval(&self, prec: usize) -> ComplexApprox {
        self.eval_at(prec + GUARD_BITS).with_precision(prec)
    }

    fn eval_at(&self, p: usize) -> ComplexApprox {
        match self {
            Num(q) => q.to_complex(p),
            I => ComplexApprox::i(p),
            Unity { n, k } => ComplexApprox::root_of_unity(*n, *k as i64, p),
            Root {
                radicand,
                index,
                branch,
            } => {
                let r = radicand.eval_at(p);
                let base = if index % 2 == 1 {
                    r.real_branch_root(*index)
                } else {
                    r.nth_root(*index)
                };
                if *branch == 0 {
                    base
                } else {
                    base * ComplexApprox::root_of_unity(*index, *branch as i64, p)
                }
            }
            Add(a, b) => a.eval_at(p) + b.eval_at(p),
            Sub(a, b) => a.eval_at(p) - b.eval_at(p),
            Mul(a, b) => a.eval_at(p) * b.eval_at(p),
            Div(a, b) => a.eval_at(p) / b.eval_at(p),
            Neg(a) => -a.eval_at(p),
        }
    }

    /// Exact value when the expression lies in a single `Q(sqrt(D))`.
    pub fn exact(&self) -> Option<Quadratic> {
        let both = |a: &RadicalExpr, b: &RadicalExpr| {
            let (x, y) = (a.exact()?, b.exact()?);
            x.compatible(&y).then_some((x, y))
        };
        match self {
            Num(q) => Some(q.clone()),
            I => Some(sqrt_neg(-1)),
            Unity { n, k } => unity_exact(*n, *k),
            Root {
                radicand,
                index,
                branch,
            } => {
                let r = radicand.exact()?;
                let r = r.as_rational()?;
                let base = match exact_nth_root(r, *index) {
                    Some(s) => Quadratic::from_rational(s),
                    None if *index == 2 => Quadratic::sqrt(r),
                    None => return None,
                };
                let z = unity_exact(*index, *branch)?;
                base.compatible(&z).then(|| base * z)
            }
            Add(a, b) => both(a, b).map(|(x, y)| x + y),
            Sub(a, b) => both(a, b).map(|(x, y)| x - y),
            Mul(a, b) => both(a, b).map(|(x, y)| x * y),
            Div(a, b) => both(a, b).and_then(|(x, y)| (!y.is_zero()).then(|| x / y)),
            Neg(a) => a.exact().map(|x| -x),
        }
    }

    /// Exact rational value, if any.
    pub fn exact_rational(&self) -> Option<Rational> {
        self.exact().and_then(|q| q.as_rational().cloned())
    }

    /// Add `k` to the branch of every root of the given index.
    pub fn shift_branches(&self, index: u32, k: u32) -> RadicalExpr {
        let s = |e: &RadicalExpr| Box::new(e.shift_branches(index, k));
        match self {
            Root {
                radicand,
                index: i,
                branch,
            } => Root {
                radicand: s(radicand),
                index: *i,
                branch: if *i == index {
                    (branch + k) % index
                } else {
                    *branch
                },
            },
            Add(a, b) => Add(s(a), s(b)),
            Sub(a, b) => Sub(s(a), s(b)),
            Mul(a, b) => Mul(s(a), s(b)),
            Div(a, b) => Div(s(a), s(b)),
            Neg(a) => Neg(s(a)),
            leaf => leaf.clone(),
        }
    }

    /// Whether any root node of the given index occurs.
    pub fn has_root_index(&self, index: u32) -> bool {
        match self {
            Root {
                radicand, index: i, ..
            } => *i == index || radicand.has_root_index(index),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => {
                a.has_root_index(index) || b.has_root_index(index)
            }
            Neg(a) => a.has_root_index(index),
            _ => false,
        }
    }

    /// Prefix form, e.g. `div(sub(mul(root(1/32,5,1),-8),-12),...)`.
    pub fn prefix(&self) -> String {
        match self {
            Num(q) => quad_prefix(q),
            I => "i".into(),
            Unity { n, k } => format!("zeta({n},{k})"),
            Root {
                radicand,
                index,
                branch,
            } => format!("root({},{index},{branch})", radicand.prefix()),
            Add(a, b) => format!("add({},{})", a.prefix(), b.prefix()),
            Sub(a, b) => format!("sub({},{})", a.prefix(), b.prefix()),
            Mul(a, b) => format!("mul({},{})", a.prefix(), b.prefix()),
            Div(a, b) => format!("div({},{})", a.prefix(), b.prefix()),
            Neg(a) => format!("neg({})", a.prefix()),
        }
    }

    /// Infix form with `zeta(n)^k`, `root[n](r)` and conventional precedence.
    pub fn pretty(&self) -> String {
        self.pretty_prec(0)
    }

    fn pretty_prec(&self, outer: u8) -> String {
        let (own, s) = match self {
            Num(q) => {
                let s = q.pretty();
                let compound = !q.is_rational() && !q.rational_part().is_zero();
                let negative = q.is_rational() && q.rational_part().is_negative();
                let denom = q.is_rational() && !q.rational_part().is_integer();
                let p = if compound || negative {
                    1
                } else if denom {
                    2
                } else {
                    4
                };
                (p, s)
            }
            I => (4, "i".into()),
            Unity { n, k } => (
                4,
                if *k == 1 {
                    format!("zeta({n})")
                } else {
                    format!("zeta({n})^{k}")
                },
            ),
            Root {
                radicand,
                index,
                branch,
            } => {
                let base = if *index == 2 {
                    format!("sqrt({})", radicand.pretty_prec(0))
                } else {
                    format!("root[{index}]({})", radicand.pretty_prec(0))
                };
                if *branch == 0 {
                    (4, base)
                } else {
                    let z = if *branch == 1 {
                        format!("zeta({index})")
                    } else {
                        format!("zeta({index})^{branch}")
                    };
                    (2, format!("{base}*{z}"))
                }
            }
            Add(a, b) => (1, format!("{} + {}", a.pretty_prec(1), b.pretty_prec(2))),
            Sub(a, b) => (1, format!("{} - {}", a.pretty_prec(1), b.pretty_prec(2))),
            Mul(a, b) => (2, format!("{}*{}", a.pretty_prec(2), b.pretty_prec(3))),
            Div(a, b) => (2, format!("{}/{}", a.pretty_prec(2), b.pretty_prec(3))),
            Neg(a) => (1, format!("-{}", a.pretty_prec(3))),
        };
        if own < outer {
            format!("({s})")
        } else {
            s
        }
    }
}

fn quad_prefix(q: &Quadratic) -> String {
    if q.is_rational() {
        format_rational(q.rational_part())
    } else {
        format!(
            "quad({},{},{})",
            format_rational(q.rational_part()),
            format_rational(q.surd_part()),
            format_rational(q.radicand())
        )
    }
}

fn unity_exact(n: u32, k: u32) -> Option<Quadratic> {
    let n = n.max(1);
    let k = k % n;
    let half = Rational::new(1.into(), 2.into());
    if k == 0 {
        return Some(Quadratic::from_rational(Rational::one()));
    }
    if 2 * k == n {
        return Some(Quadratic::from_rational(-Rational::one()));
    }
    if 4 * k == n {
        return Some(sqrt_neg(-1));
    }
    if 4 * k == 3 * n {
        return Some(-sqrt_neg(-1));
    }
    // multiples of 2 pi / 3 and 2 pi / 6
    let m = if n.is_multiple_of(6) && (6 * k).is_multiple_of(n) {
        Some((6 * k / n, 6))
    } else if n.is_multiple_of(3) && (3 * k).is_multiple_of(n) {
        Some((3 * k / n, 3))
    } else {
        None
    }?;
    let sqrt3 = |sign: i64| {
        Quadratic::new(
            Rational::zero(),
            &half * Rational::from_integer(sign.into()),
            Rational::from_integer((-3).into()),
        )
    };
    let re = |v: i64| Quadratic::from_rational(&half * Rational::from_integer(v.into()));
    // cos and i sin of the angle, i sin = sqrt(-3)/2 * sign
    Some(match m {
        (1, 3) | (2, 6) => re(-1) + sqrt3(1),
        (2, 3) | (4, 6) => re(-1) + sqrt3(-1),
        (1, 6) => re(1) + sqrt3(1),
        (5, 6) => re(1) + sqrt3(-1),
        _ => return None,
    })
}

impl fmt::Debug for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.prefix())
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}
