//! Radical solutions of univariate equations whose homogenization has a
//! nontrivial center, with the cubic and quartic special paths.

mod classify;
mod cubic;
mod expr;
mod powers;
mod quartic;
mod solve;

pub use classify::{classify, hankel, restore_pivot, EquationClass, HankelMatrix, Prepared};
pub use cubic::{cardano, depress_cubic, solve_cubic_cardano};
pub use expr::RadicalExpr;
pub use powers::{complete_cube, complete_powers};
pub use quartic::{depress_quartic, resolvent, solve_quartic_two_squares, DepressedQuartic, ResolventData};
pub use solve::{reversal_transform, solve_by_radicals, solve_closed_form};

use crate::numeric::ComplexApprox;
use crate::scalar::{Quadratic, Rational};

/// Which formula produced a root set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    PerfectPower,
    PowerPlusConstant,
    ConstantTimesPowerPlusPower,
    SumOfTwoPowers,
    RepeatedEigenvalue,
    Cardano,
    TwoSquares,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::PerfectPower => "perfect-power",
            Method::PowerPlusConstant => "power-plus-constant",
            Method::ConstantTimesPowerPlusPower => "constant-times-power-plus-power",
            Method::SumOfTwoPowers => "sum-of-two-powers",
            Method::RepeatedEigenvalue => "repeated-eigenvalue",
            Method::Cardano => "cardano",
            Method::TwoSquares => "two-squares",
        }
    }
}

/// A change of variable applied before solving; roots are mapped back.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    /// `x -> 1/x`.
    Reversal,
    /// `F(x, y) -> F(x, y + c x)`; a root `r` of the new equation maps back
    /// to `r / (1 + c r)`.
    Shear(Rational),
    /// `x -> y - s`.
    Shift(Rational),
}

impl Transform {
    /// Map a root of the transformed equation back.
    pub fn map_back(&self, e: RadicalExpr) -> RadicalExpr {
        match self {
            Transform::Reversal => RadicalExpr::div(RadicalExpr::int(1), e),
            Transform::Shear(c) => {
                let den = RadicalExpr::add(
                    RadicalExpr::int(1),
                    RadicalExpr::mul(RadicalExpr::rational(c.clone()), e.clone()),
                );
                RadicalExpr::div(e, den)
            }
            Transform::Shift(s) => RadicalExpr::sub(e, RadicalExpr::rational(s.clone())),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Transform::Reversal => "reversal x -> 1/x".into(),
            Transform::Shear(c) => format!("shear y -> y + ({})*x", crate::scalar::format_rational(c)),
            Transform::Shift(s) => format!("shift x = y - ({})", crate::scalar::format_rational(s)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RadicalRoot {
    pub expr: RadicalExpr,
    /// Exact value when the expression collapses into `Q(sqrt(D))`.
    pub exact: Option<Quadratic>,
    pub value: ComplexApprox,
    pub multiplicity: usize,
}

impl RadicalRoot {
    pub fn new(expr: RadicalExpr, multiplicity: usize, prec: usize) -> Self {
        let exact = expr.exact();
        let value = match &exact {
            Some(q) => q.to_complex(prec),
            None => expr.eval(prec),
        };
        RadicalRoot {
            expr,
            exact,
            value,
            multiplicity,
        }
    }

    pub fn exact_rational(&self) -> Option<&Rational> {
        self.exact.as_ref().and_then(Quadratic::as_rational)
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub degree: usize,
    pub roots: Vec<RadicalRoot>,
    pub method: Method,
    /// Transforms applied to the input, in order.
    pub transforms: Vec<Transform>,
    /// Index of the distinguished root `delta`, when the formula has one.
    pub branch_index: Option<u32>,
    pub notes: Vec<String>,
    pub precision: usize,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Every value repeated by its multiplicity.
    pub fn flat_values(&self) -> Vec<ComplexApprox> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value.clone(), r.multiplicity))
            .collect()
    }

    /// Re-evaluate after replacing each distinguished root by its `k`-th
    /// rotation.
    pub fn with_shifted_branches(&self, k: u32) -> RootSet {
        let Some(index) = self.branch_index else {
            return self.clone();
        };
        let mut out = self.clone();
        out.roots = self
            .roots
            .iter()
            .map(|r| RadicalRoot::new(r.expr.shift_branches(index, k), r.multiplicity, self.precision))
            .collect();
        out
    }

    pub(crate) fn map_back(mut self, transforms: &[Transform]) -> RootSet {
        for t in transforms.iter().rev() {
            self.roots = self
                .roots
                .into_iter()
                .map(|r| RadicalRoot::new(t.map_back(r.expr), r.multiplicity, self.precision))
                .collect();
        }
        let mut all = transforms.to_vec();
        all.extend(self.transforms);
        self.transforms = all;
        self
    }
}
