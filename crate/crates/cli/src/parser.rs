//! Polynomial expressions: `+ - * ^`, parentheses, integer and `p/q`
//! literals, variables `x`, `y` and `x1`..`x9`. Products and powers are
//! expanded on the fly.
//!
//! ```text
//! equation := expr ('=' expr)?
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' INT)?
//! atom     := INT ('/' INT)? | VAR | '(' expr ')'
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use powers_core::forms::{BinaryForm, NAryForm, UnivariateEquation};
use powers_core::scalar::format_rational;
use powers_core::Rational;

/// Largest accepted exponent and degree.
pub const MAX_EXPONENT: u32 = 1000;

/// All variable names, in canonical order.
const VARIABLES: [&str; 11] = ["x", "y", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Sparse polynomial over the fixed variable list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<[u32; 11], Rational>,
}

impl Polynomial {
    fn constant(c: Rational) -> Self {
        let mut p = Polynomial::default();
        p.add_term([0; 11], c);
        p
    }

    fn variable(i: usize) -> Self {
        let mut e = [0; 11];
        e[i] = 1;
        let mut p = Polynomial::default();
        p.add_term(e, Rational::one());
        p
    }

    fn add_term(&mut self, e: [u32; 11], c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add(mut self, other: &Polynomial) -> Self {
        for (e, c) in &other.terms {
            self.add_term(*e, c.clone());
        }
        self
    }

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }

    fn mul(&self, other: &Polynomial) -> Self {
        let mut out = Polynomial::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for (a, b) in e.iter_mut().zip(e2) {
                    *a += b;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn pow(&self, k: u32) -> Self {
        let mut out = Polynomial::constant(Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Indices into the variable list that occur with a nonzero exponent.
    fn used(&self) -> Vec<usize> {
        (0..VARIABLES.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }
}

/// A parsed input with its canonical rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedInput {
    pub source: String,
    pub poly: Polynomial,
    pub variables: Vec<String>,
}

/// Errors turning a parsed polynomial into the object a command needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeError(pub String);

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ShapeError {}

impl ParsedInput {
    /// A univariate equation in the single variable used.
    pub fn to_equation(&self) -> Result<UnivariateEquation, ShapeError> {
        let used = self.poly.used();
        if used.len() > 1 {
            return Err(ShapeError(format!(
                "expected a polynomial in one variable, found {}",
                self.variables.join(", ")
            )));
        }
        let d = self.poly.degree();
        if d == 0 {
            return Err(ShapeError("the input has no variable".into()));
        }
        let v = used.first().copied().unwrap_or(0);
        let mut plain = vec![Rational::zero(); d as usize + 1];
        for (e, c) in &self.poly.terms {
            plain[(d - e[v]) as usize] = c.clone();
        }
        UnivariateEquation::from_plain_coeffs(plain).map_err(|e| ShapeError(e.to_string()))
    }

    /// A homogeneous form: one variable is homogenized to a binary form,
    /// `x, y` give a binary form and `x1..xk` a form in `k` variables.
    pub fn to_form(&self) -> Result<(NAryForm<Rational>, Vec<String>), ShapeError> {
        let used = self.poly.used();
        let indexed = used.iter().any(|&i| i >= 2);
        let plain = used.iter().any(|&i| i < 2);
        if indexed && plain {
            return Err(ShapeError("mix of x, y and indexed variables x1..x9".into()));
        }
        if used == [0] {
            let eq = self.to_equation()?;
            return Ok((eq.homogenize().to_form(), vec!["x".into(), "y".into()]));
        }
        if used.is_empty() {
            return Err(ShapeError("the input has no variable".into()));
        }
        if !self.poly.is_homogeneous() {
            return Err(ShapeError("a form must be homogeneous".into()));
        }
        let (slots, names): (Vec<usize>, Vec<String>) = if indexed {
            let n = used.iter().max().map_or(0, |m| m - 1);
            ((2..2 + n).collect(), (1..=n).map(|k| format!("x{k}")).collect())
        } else {
            (vec![0, 1], vec!["x".into(), "y".into()])
        };
        let terms = self
            .poly
            .terms
            .iter()
            .map(|(e, c)| (slots.iter().map(|&s| e[s]).collect(), c.clone()));
        let f = NAryForm::from_terms(slots.len(), self.poly.degree(), terms)
            .map_err(|e| ShapeError(e.to_string()))?;
        Ok((f, names))
    }

    /// A binary form from a homogeneous input in `x, y` or a univariate one.
    pub fn to_binary(&self) -> Result<BinaryForm, ShapeError> {
        let (f, _) = self.to_form()?;
        BinaryForm::from_form(&f).map_err(|e| ShapeError(e.to_string()))
    }
}

/// Canonical text: terms by descending total degree, then descending
/// exponents in variable order.
pub fn render(poly: &Polynomial) -> String {
    let mut terms: Vec<(&[u32; 11], &Rational)> = poly.terms.iter().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in terms.into_iter().enumerate() {
        let monomial: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, &p)| {
                if p == 1 {
                    VARIABLES[i].to_string()
                } else {
                    format!("{}^{p}", VARIABLES[i])
                }
            })
            .collect();
        let negative = c.is_negative();
        let mag = c.abs();
        let body = if monomial.is_empty() {
            format_rational(&mag)
        } else if mag.is_one() {
            monomial.join("*")
        } else {
            format!("{}*{}", format_rational(&mag), monomial.join("*"))
        };
        match (k, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Decimal,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Decimal => "decimal literal".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Equals => "`=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            column += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(1, &mut i);
            }
            if i < chars.len() && chars[i] == '.' {
                advance(1, &mut i);
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(1, &mut i);
                }
                Tok::Decimal
            } else {
                let s: String = chars[start..i].iter().collect();
                Tok::Int(s.parse().expect("digits"))
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(1, &mut i);
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Equals,
                other => {
                    return Err(ParseError {
                        line: l0,
                        column: c0,
                        message: format!("unexpected character `{other}`"),
                        expected: vec![],
                    })
                }
            };
            advance(1, &mut i);
            t
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const AFTER_OPERAND: [&str; 6] = ["`+`", "`-`", "`*`", "`^`", "`)`", "end of input"];
const OPERAND: [&str; 4] = ["number", "variable", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Spanned, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek().clone();
        self.error_at(&t, format!("unexpected {}", t.tok.describe()), expected)
    }

    fn equation(&mut self) -> Result<Polynomial, ParseError> {
        let lhs = self.expr()?;
        let poly = if self.peek().tok == Tok::Equals {
            self.bump();
            let rhs = self.expr()?;
            lhs.add(&rhs.neg())
        } else {
            lhs
        };
        if self.peek().tok != Tok::End {
            let mut expected = AFTER_OPERAND.to_vec();
            expected.insert(5, "`=`");
            return Err(self.unexpected(&expected));
        }
        Ok(poly)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            acc = acc.mul(&rhs);
            self.check_degree(&acc)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn check_degree(&self, p: &Polynomial) -> Result<(), ParseError> {
        if p.degree() > MAX_EXPONENT {
            let t = self.peek().clone();
            return Err(self.error_at(&t, format!("degree exceeds {MAX_EXPONENT}"), &[]));
        }
        Ok(())
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let k = match &t.tok {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Slash || self.peek().tok == Tok::Caret {
                    let next = self.peek().clone();
                    let message = if next.tok == Tok::Slash {
                        "non-integer exponent"
                    } else {
                        "chained exponents need parentheses"
                    };
                    return Err(self.error_at(&next, message.into(), &[]));
                }
                u32::try_from(n.clone())
                    .ok()
                    .filter(|&k| k <= MAX_EXPONENT)
                    .ok_or_else(|| self.error_at(&t, format!("exponent exceeds {MAX_EXPONENT}"), &[]))?
            }
            Tok::Decimal => return Err(self.error_at(&t, "non-integer exponent".into(), &[])),
            Tok::Minus => return Err(self.error_at(&t, "negative exponent".into(), &["nonnegative integer"])),
            other => {
                return Err(self.error_at(
                    &t,
                    format!("exponent must be a nonnegative integer, found {}", other.describe()),
                    &["nonnegative integer"],
                ))
            }
        };
        let out = base.pow(k);
        self.check_degree(&out)?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n.clone());
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    match d.tok {
                        Tok::Int(den) if !den.is_zero() => value /= Rational::from_integer(den),
                        Tok::Int(_) => return Err(self.error_at(&d, "zero denominator".into(), &[])),
                        _ => return Err(self.error_at(&d, "a rational literal needs an integer denominator".into(), &["integer"])),
                    }
                }
                Ok(Polynomial::constant(value))
            }
            Tok::Decimal => Err(self.error_at(&t, "decimal literals are not supported, write p/q".into(), &[])),
            Tok::Ident(name) => {
                self.bump();
                match VARIABLES.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::variable(i)),
                    None => Err(self.error_at(&t, format!("unknown variable `{name}`"), &["x", "y", "x1..x9"])),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.unexpected(&["`+`", "`-`", "`*`", "`^`", "`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected(&OPERAND)),
        }
    }
}

pub fn parse_polynomial(text: &str) -> Result<ParsedInput, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let poly = p.equation()?;
    let variables = poly.used().into_iter().map(|i| VARIABLES[i].to_string()).collect();
    Ok(ParsedInput {
        source: text.to_string(),
        poly,
        variables,
    })
}

/// Whitespace- or comma-separated plain coefficients, leading first.
pub fn parse_coefficients(text: &str) -> Result<UnivariateEquation, ParseError> {
    let mut coeffs = Vec::new();
    let mut column = 1;
    for (line_no, line) in text.lines().enumerate() {
        let mut rest = line;
        column = 1;
        while !rest.is_empty() {
            let trimmed = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
            column += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed
                .find(|c: char| c.is_whitespace() || c == ',')
                .unwrap_or(trimmed.len());
            let word = &trimmed[..end];
            let value = parse_rational(word).ok_or_else(|| ParseError {
                line: line_no + 1,
                column,
                message: format!("`{word}` is not an integer or p/q"),
                expected: vec!["coefficient".into()],
            })?;
            coeffs.push(value);
            column += end;
            rest = &trimmed[end..];
        }
    }
    UnivariateEquation::from_plain_coeffs(coeffs).map_err(|e| ParseError {
        line: 1,
        column,
        message: e.to_string(),
        expected: vec![],
    })
}

fn parse_rational(word: &str) -> Option<Rational> {
    let (n, d) = match word.split_once('/') {
        Some((n, d)) => (n, d),
        None => (word, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| Rational::new(n, d))
}
