use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use powers_core::center::{binary_rank, compute_center, d_invariants};
use powers_core::diagonalize::{diagonalize_form, diagonalize_form_numeric};
use powers_core::forms::{BinaryForm, LinearForm, NAryForm, PowerSumDecomposition};
use powers_core::radical::{classify as classify_eq, complete_powers, hankel, RadicalRoot};
use powers_core::scalar::{format_rational, rational_to_f64};
use powers_core::verify::{compare_root_sets, max_residual, numeric_roots_seeded};
use powers_core::{EquationClass, Error, Quadratic, RadicalExpr, Rational, SolverRegistry, UnivariateEquation};
use thiserror::Error as ThisError;

use crate::format::{complex_text, power_sum_text, snap, Coefficient};
use crate::parser::{parse_coefficients, parse_polynomial, render, ParsedInput};
use crate::report::*;

/// Tolerance for the radical-versus-oracle comparison and the residuals.
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("method not applicable: {0}")]
    NotApplicable(String),
    #[error("verification failed: {0}")]
    Verification(String),
    /// Already reported; carries the exit code.
    #[error("exit status {0}")]
    Exit(i32),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::NotApplicable(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Exit(code) => *code,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSolver(_) => CliError::Usage(e.to_string()),
            Error::NonConvergence { .. } => CliError::Verification(e.to_string()),
            _ => CliError::NotApplicable(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Expr,
    Coeffs,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub precision: usize,
    pub verify: bool,
    pub seed: Option<u64>,
    pub method: String,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            precision: powers_core::DEFAULT_PRECISION,
            verify: true,
            seed: None,
            method: "auto".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Input {
    Expr(ParsedInput),
    Coeffs(UnivariateEquation),
}

pub fn read_input(kind: InputKind, text: &str) -> Result<Input, CliError> {
    match kind {
        InputKind::Expr => parse_polynomial(text)
            .map(Input::Expr)
            .map_err(|e| CliError::Parse(e.to_string())),
        InputKind::Coeffs => parse_coefficients(text)
            .map(Input::Coeffs)
            .map_err(|e| CliError::Parse(e.to_string())),
    }
}

impl Input {
    pub fn canonical(&self) -> String {
        match self {
            Input::Expr(p) => render(&p.poly),
            Input::Coeffs(eq) => eq.to_expr("x"),
        }
    }

    /// A univariate equation; homogeneous input in `x, y` is dehomogenized.
    pub fn equation(&self) -> Result<UnivariateEquation, CliError> {
        match self {
            Input::Coeffs(eq) => Ok(eq.clone()),
            Input::Expr(p) => p.to_equation().or_else(|e| {
                let binary = p.to_binary().map_err(|_| CliError::Parse(e.to_string()))?;
                binary.dehomogenize().map_err(|d| CliError::Parse(d.to_string()))
            }),
        }
    }

    pub fn form(&self) -> Result<(NAryForm<Rational>, Vec<String>), CliError> {
        match self {
            Input::Coeffs(eq) => Ok((eq.homogenize().to_form(), vec!["x".into(), "y".into()])),
            Input::Expr(p) => p.to_form().map_err(|e| CliError::Parse(e.to_string())),
        }
    }
}

fn invariants(a: &[Rational], rank: usize) -> Invariants {
    let (d1, d2, d3) = d_invariants(a);
    let disc = &d2 * &d2 - Rational::from_integer(4.into()) * &d1 * &d3;
    Invariants {
        d1: format_rational(&d1),
        d2: format_rational(&d2),
        d3: format_rational(&d3),
        discriminant: format_rational(&disc),
        hankel_rank: rank,
    }
}

fn equation_invariants(eq: &UnivariateEquation) -> Result<Option<Invariants>, CliError> {
    if eq.degree() < 3 {
        return Ok(None);
    }
    Ok(Some(invariants(eq.normalized(), hankel(eq)?.rank)))
}

fn linear(coeffs: &[Rational]) -> LinearForm<Quadratic> {
    LinearForm::new(coeffs.iter().cloned().map(Quadratic::from_rational).collect())
}

/// The power sum each center class guarantees, in `x, y`.
pub fn class_decomposition(eq: &UnivariateEquation, class: &EquationClass) -> Option<PowerSumDecomposition<Quadratic>> {
    let d = eq.degree() as u32;
    let q = |r: &Rational| Quadratic::from_rational(r.clone());
    let (one, zero) = (Rational::one(), Rational::zero());
    let summands = match class {
        EquationClass::PerfectPower { scale, shift } => vec![(q(scale), linear(&[one, shift.clone()]))],
        EquationClass::PowerPlusConstant { scale, shift, constant } => vec![
            (q(scale), linear(&[one.clone(), shift.clone()])),
            (q(constant), linear(&[zero, one])),
        ],
        EquationClass::ConstantTimesPowerPlusPower { constant, scale, ratio } => vec![
            (q(constant), linear(&[one.clone(), zero])),
            (q(scale), linear(&[one, ratio.clone()])),
        ],
        EquationClass::SumOfTwoPowers { .. } => return complete_powers(&eq.homogenize()).ok(),
        _ => return None,
    };
    Some(PowerSumDecomposition::new(d, summands))
}

fn decomposition_out<K: Coefficient + powers_core::scalar::Field>(dec: &PowerSumDecomposition<K>, names: &[String]) -> Decomposition {
    Decomposition {
        degree: dec.degree,
        variables: names.to_vec(),
        summands: dec
            .summands
            .iter()
            .map(|(c, l)| Summand {
                coefficient: c.text(),
                linear_form: l.coeffs().iter().map(Coefficient::text).collect(),
            })
            .collect(),
        text: power_sum_text(dec, names),
    }
}

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

/// Everything `solve` prints.
#[derive(Clone, Debug)]
pub struct Solved {
    pub report: SolveReport,
    pub method: String,
    pub transforms: Vec<String>,
    pub notes: Vec<String>,
    pub pretty: Vec<String>,
}

impl Solved {
    pub fn passed(&self) -> bool {
        self.report.verification.as_ref().is_none_or(|v| v.passed)
    }
}

fn root_out(r: &RadicalRoot) -> (RootOut, String) {
    let (expr, pretty) = match &r.exact {
        Some(q) => {
            let e = RadicalExpr::quadratic(q.clone());
            (e.prefix(), e.pretty())
        }
        None => (r.expr.prefix(), r.expr.pretty()),
    };
    let (re, im) = match r.exact_rational() {
        Some(x) => (rational_to_f64(x), 0.0),
        None => (r.value.re_f64(), r.value.im_f64()),
    };
    let (re, im) = snap(re, im);
    (
        RootOut {
            expr,
            re,
            im,
            multiplicity: r.multiplicity,
        },
        pretty,
    )
}

pub fn solve(input: &Input, opts: &Options, registry: &SolverRegistry) -> Result<Solved, CliError> {
    let eq = input.equation()?;
    let solver = registry.get(&opts.method)?;
    let class = if eq.degree() >= 3 { Some(classify_eq(&eq)?) } else { None };
    let rs = solver.solve(&eq, opts.precision)?;
    let (roots, pretty): (Vec<RootOut>, Vec<String>) = rs.roots.iter().map(root_out).unzip();
    let decomposition = class
        .as_ref()
        .and_then(|c| class_decomposition(&eq, c))
        .map(|d| decomposition_out(&d, &xy()));
    let verification = if opts.verify {
        let oracle = numeric_roots_seeded(&eq, opts.precision, opts.seed)?;
        let cmp = compare_root_sets(&rs, &oracle, VERIFY_TOL);
        let residual = max_residual(&eq, &rs);
        Some(Verification {
            max_residual: residual,
            oracle_max_distance: cmp.max_distance,
            passed: cmp.passed && residual <= VERIFY_TOL,
        })
    } else {
        None
    };
    Ok(Solved {
        report: SolveReport {
            input: input.canonical(),
            degree: eq.degree(),
            class: class.as_ref().map_or("ClosedForm", EquationClass::tag).to_string(),
            invariants: equation_invariants(&eq)?,
            roots,
            decomposition,
            verification,
        },
        method: rs.method.name().to_string(),
        transforms: rs.transforms.iter().map(|t| t.describe()).collect(),
        notes: rs.notes.clone(),
        pretty,
    })
}

pub fn solve_text(s: &Solved) -> String {
    let r = &s.report;
    let mut out = String::new();
    let _ = writeln!(out, "input:         {}", r.input);
    let _ = writeln!(out, "degree:        {}", r.degree);
    let _ = writeln!(out, "class:         {}", r.class);
    let _ = writeln!(out, "method:        {}", s.method);
    if let Some(inv) = &r.invariants {
        let _ = writeln!(out, "invariants:    {}", invariants_text(inv));
    }
    if let Some(d) = &r.decomposition {
        let _ = writeln!(out, "decomposition: {}", d.text);
    }
    for t in &s.transforms {
        let _ = writeln!(out, "transform:     {t}");
    }
    let _ = writeln!(out, "roots:");
    for (root, pretty) in r.roots.iter().zip(&s.pretty) {
        let _ = writeln!(
            out,
            "  {pretty}\n      = {}   (multiplicity {})",
            complex_text(root.re, root.im),
            root.multiplicity
        );
    }
    for n in &s.notes {
        let _ = writeln!(out, "note:          {n}");
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(
            out,
            "verification:  max residual {:.3e}, oracle distance {:.3e}, {}",
            v.max_residual,
            v.oracle_max_distance,
            if v.passed { "passed" } else { "FAILED" }
        );
    }
    out
}

fn invariants_text(inv: &Invariants) -> String {
    format!(
        "D1 = {}, D2 = {}, D3 = {}, discriminant = {}, hankel rank = {}",
        inv.d1, inv.d2, inv.d3, inv.discriminant, inv.hankel_rank
    )
}

pub fn center(input: &Input) -> Result<CenterReport, CliError> {
    let (f, _) = input.form()?;
    let z = compute_center(&f)?;
    let invariants = if f.n() == 2 && f.degree() >= 3 {
        let b = BinaryForm::from_form(&f)?;
        Some(invariants(b.normalized(), binary_rank(&b)?))
    } else {
        None
    };
    Ok(CenterReport {
        input: input.canonical(),
        n: f.n(),
        degree: f.degree(),
        dim: z.dim(),
        commutative: z.is_commutative(),
        basis: z
            .basis()
            .iter()
            .map(|m| m.to_rows().iter().map(|row| row.iter().map(format_rational).collect()).collect())
            .collect(),
        invariants,
    })
}

pub fn center_text(r: &CenterReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input:       {}", r.input);
    let _ = writeln!(out, "variables:   {}", r.n);
    let _ = writeln!(out, "dimension:   {}", r.dim);
    let _ = writeln!(out, "commutative: {}", r.commutative);
    if let Some(inv) = &r.invariants {
        let _ = writeln!(out, "invariants:  {}", invariants_text(inv));
    }
    for (k, m) in r.basis.iter().enumerate() {
        let _ = writeln!(out, "basis[{k}]:");
        for row in m {
            let _ = writeln!(out, "  [{}]", row.join(", "));
        }
    }
    out
}

pub fn decompose(input: &Input, opts: &Options) -> Result<DecomposeReport, CliError> {
    let (f, names) = input.form()?;
    let (mode, decomposition, verified) = if f.n() == 2 {
        let dec = complete_powers(&BinaryForm::from_form(&f)?)?;
        let ok = dec.expand(2)? == f.map(|c| Quadratic::from_rational(c.clone()));
        ("exact", decomposition_out(&dec, &names), ok)
    } else {
        match diagonalize_form(&f) {
            Ok(dec) => {
                let ok = dec.power_sum.expand(f.n())? == f;
                ("exact", decomposition_out(&dec.power_sum, &names), ok)
            }
            Err(Error::IrrationalSpectrum) => {
                let dec = diagonalize_form_numeric(&f, opts.precision, VERIFY_TOL)?;
                ("numeric", decomposition_out(&dec.power_sum, &names), true)
            }
            Err(e) => return Err(e.into()),
        }
    };
    Ok(DecomposeReport {
        input: input.canonical(),
        n: f.n(),
        degree: f.degree(),
        mode: mode.into(),
        decomposition,
        verified,
    })
}

pub fn decompose_text(r: &DecomposeReport) -> String {
    format!(
        "input:    {}\nmode:     {}\nresult:   {}\nverified: {}\n",
        r.input, r.mode, r.decomposition.text, r.verified
    )
}

/// Readable witness of the class, when it has one.
fn witness(eq: &UnivariateEquation, class: &EquationClass) -> Option<String> {
    if let Some(dec) = class_decomposition(eq, class) {
        return Some(power_sum_text(&dec, &xy()));
    }
    if let EquationClass::LinearTimesPowerD1 { .. } = class {
        let rs = powers_core::radical::solve_by_radicals(eq, powers_core::DEFAULT_PRECISION).ok()?;
        let factors: Option<Vec<String>> = rs
            .roots
            .iter()
            .map(|r| {
                let x = r.exact_rational()?;
                let lin = if x.is_zero() {
                    "x".to_string()
                } else {
                    let sign = if x.is_negative() { "+" } else { "-" };
                    format!("(x {sign} {})", format_rational(&x.abs()))
                };
                Some(if r.multiplicity > 1 { format!("{lin}^{}", r.multiplicity) } else { lin })
            })
            .collect();
        let lead = &eq.plain()[0];
        let mut parts = factors?;
        if !lead.is_one() {
            parts.insert(0, format_rational(lead));
        }
        return Some(parts.join("*"));
    }
    None
}

pub fn classify(input: &Input) -> Result<ClassifyReport, CliError> {
    let eq = input.equation()?;
    let class = classify_eq(&eq)?;
    Ok(ClassifyReport {
        input: input.canonical(),
        degree: eq.degree(),
        class: class.tag().to_string(),
        invariants: equation_invariants(&eq)?,
        witness: witness(&eq, &class),
    })
}

pub fn classify_text(r: &ClassifyReport) -> String {
    let mut out = format!("input:      {}\nclass:      {}\n", r.input, r.class);
    if let Some(inv) = &r.invariants {
        let _ = writeln!(out, "invariants: {}", invariants_text(inv));
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "witness:    {w}");
    }
    out
}

pub fn oracle(input: &Input, opts: &Options) -> Result<OracleReport, CliError> {
    let eq = input.equation()?;
    let o = numeric_roots_seeded(&eq, opts.precision, opts.seed)?;
    Ok(OracleReport {
        input: input.canonical(),
        degree: eq.degree(),
        precision: o.precision,
        iterations: o.iterations,
        roots: o
            .roots
            .iter()
            .map(|r| {
                let (re, im) = snap(r.value.re_f64(), r.value.im_f64());
                OracleRootOut {
                    re,
                    im,
                    multiplicity: r.multiplicity,
                }
            })
            .collect(),
    })
}

pub fn oracle_text(r: &OracleReport) -> String {
    let mut out = format!("input:      {}\nprecision:  {} bits\nroots:\n", r.input, r.precision);
    for root in &r.roots {
        let _ = writeln!(out, "  {}   (multiplicity {})", complex_text(root.re, root.im), root.multiplicity);
    }
    out
}
