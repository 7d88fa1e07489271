//! Recursive-descent parser for differential sums.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | factor
//! factor := base ('^' uint)?
//! base   := 'z' | 'w' | "w'" | "w''" | 'i' | number | ident
//!         | 'diff' '(' 'w' ',' 'z' (',' uint)? ')' | '(' expr ')'
//! ```
//!
//! Division is accepted only when the divisor is a single monomial in `z`
//! and `w` with a numeric coefficient; it becomes a negative exponent.
//! Greek letters in identifiers are spelled out in ASCII (`α` -> `alpha`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::coefficient::{Coefficient, GaussianRational};
use crate::diffsum::{DiffMonomial, DifferentialSum};

/// Parse failure. Columns are 1-based character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("exponent at column {column} must be a nonnegative integer literal, found `{found}`")]
    BadExponent { column: usize, found: String },
    #[error("derivative of order {order} at column {column}; only w' and w'' are supported")]
    DerivativeOrder { column: usize, order: u32 },
    #[error(
        "division at column {column} by a non-monomial or parametric divisor; \
         clear denominators first (multiply the equation through)"
    )]
    NonMonomialDivisor { column: usize },
    #[error("division by zero at column {column}")]
    DivisionByZero { column: usize },
    #[error("invalid character `{ch}` in identifier at column {column}")]
    InvalidIdentifier { column: usize, ch: char },
}

impl ParseError {
    /// 1-based column of the offending input.
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. }
            | ParseError::BadExponent { column, .. }
            | ParseError::DerivativeOrder { column, .. }
            | ParseError::NonMonomialDivisor { column }
            | ParseError::DivisionByZero { column }
            | ParseError::InvalidIdentifier { column, .. } => *column,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Z,
    /// `w` with its derivative order.
    W(u32),
    Imag,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Z => "z".into(),
            Tok::W(0) => "w".into(),
            Tok::W(k) => format!("w{}", "'".repeat(*k as usize)),
            Tok::Imag => "i".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn greek_name(c: char) -> Option<&'static str> {
    const LOWER: [&str; 25] = [
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu", "nu",
        "xi", "omicron", "pi", "rho", "sigmaf", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
    ];
    const UPPER: [&str; 25] = [
        "Alpha", "Beta", "Gamma", "Delta", "Epsilon", "Zeta", "Eta", "Theta", "Iota", "Kappa", "Lambda", "Mu", "Nu",
        "Xi", "Omicron", "Pi", "Rho", "", "Sigma", "Tau", "Upsilon", "Phi", "Chi", "Psi", "Omega",
    ];
    let u = c as u32;
    let name = match u {
        0x03B1..=0x03C9 => LOWER[(u - 0x03B1) as usize],
        0x0391..=0x03A9 => UPPER[(u - 0x0391) as usize],
        _ => return None,
    };
    // U+03C2 final sigma maps onto sigma; U+03A2 is unassigned.
    match name {
        "sigmaf" => Some("sigma"),
        "" => None,
        n => Some(n),
    }
}

/// Normalizes a single identifier to ASCII, spelling out Greek letters.
pub fn normalize_identifier(raw: &str) -> Result<String, char> {
    let mut out = String::new();
    for c in raw.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            out.push(c);
        } else if let Some(name) = greek_name(c) {
            out.push_str(name);
        } else {
            return Err(c);
        }
    }
    Ok(out)
}

fn is_prime(c: char) -> Option<u32> {
    match c {
        '\'' | '′' => Some(1),
        '″' => Some(2),
        _ => None,
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, column));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(ParseError::Syntax {
                    column: i + 1,
                    message: "decimal literals are not supported; write a ratio p/q".into(),
                });
            }
            let digits: String = chars[start..i].iter().collect();
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push((Tok::Num(n), column));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let raw: String = chars[start..i].iter().collect();
            let name = normalize_identifier(&raw).map_err(|ch| {
                let offset = raw.chars().position(|x| x == ch).unwrap_or(0);
                ParseError::InvalidIdentifier { column: column + offset, ch }
            })?;
            let tok = match name.as_str() {
                "z" => Tok::Z,
                "i" => Tok::Imag,
                "w" => {
                    let mut order = 0;
                    while i < chars.len() {
                        match is_prime(chars[i]) {
                            Some(k) => {
                                order += k;
                                i += 1;
                            }
                            None => break,
                        }
                    }
                    if order > 2 {
                        return Err(ParseError::DerivativeOrder { column, order });
                    }
                    Tok::W(order)
                }
                _ => Tok::Ident(name),
            };
            out.push((tok, column));
            continue;
        }
        return Err(ParseError::Syntax { column, message: format!("unexpected character `{c}`") });
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax {
            column: self.column(),
            message: format!("expected {wanted}, found `{}`", self.peek().describe()),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", tok.describe())))
        }
    }

    fn expr(&mut self) -> Result<DifferentialSum, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DifferentialSum, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    let column = self.column();
                    self.bump();
                    let divisor = self.unary()?;
                    acc = acc.mul(&invert_monomial(&divisor, column)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<DifferentialSum, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<DifferentialSum, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let column = self.column();
        match self.bump().0 {
            Tok::Num(n) => {
                let e = n.to_u32().ok_or(ParseError::BadExponent { column, found: n.to_string() })?;
                Ok(base.pow(e))
            }
            other => Err(ParseError::BadExponent { column, found: other.describe() }),
        }
    }

    fn base(&mut self) -> Result<DifferentialSum, ParseError> {
        let column = self.column();
        match self.peek().clone() {
            Tok::Z => {
                self.bump();
                Ok(DifferentialSum::monomial(1, 0, 0, 0))
            }
            Tok::W(k) => {
                self.bump();
                Ok(w_derivative(k))
            }
            Tok::Imag => {
                self.bump();
                Ok(DifferentialSum::constant(Coefficient::scalar(GaussianRational::imaginary_unit())))
            }
            Tok::Num(n) => {
                self.bump();
                let q = BigRational::from_integer(n);
                Ok(DifferentialSum::constant(Coefficient::scalar(GaussianRational::real(q))))
            }
            Tok::Ident(name) if name == "diff" => {
                self.bump();
                self.diff_call(column)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(DifferentialSum::constant(Coefficient::param(&name)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected("an operand")),
        }
    }

    /// `diff(w, z)` or `diff(w, z, k)` with `k` in {1, 2}.
    fn diff_call(&mut self, column: usize) -> Result<DifferentialSum, ParseError> {
        self.expect(Tok::LParen)?;
        self.expect(Tok::W(0))?;
        self.expect(Tok::Comma)?;
        self.expect(Tok::Z)?;
        let mut order = 1u32;
        if *self.peek() == Tok::Comma {
            self.bump();
            let c = self.column();
            order = match self.bump().0 {
                Tok::Num(n) => n.to_u32().ok_or(ParseError::DerivativeOrder { column: c, order: u32::MAX })?,
                other => {
                    return Err(ParseError::Syntax {
                        column: c,
                        message: format!("expected derivative order, found `{}`", other.describe()),
                    })
                }
            };
        }
        self.expect(Tok::RParen)?;
        match order {
            1 | 2 => Ok(w_derivative(order)),
            0 => Err(ParseError::Syntax { column, message: "diff order must be 1 or 2".into() }),
            _ => Err(ParseError::DerivativeOrder { column, order }),
        }
    }
}

fn w_derivative(order: u32) -> DifferentialSum {
    match order {
        0 => DifferentialSum::monomial(0, 1, 0, 0),
        1 => DifferentialSum::monomial(0, 0, 1, 0),
        _ => DifferentialSum::monomial(0, 0, 0, 1),
    }
}

fn invert_monomial(d: &DifferentialSum, column: usize) -> Result<DifferentialSum, ParseError> {
    match d.terms() {
        [] => Err(ParseError::DivisionByZero { column }),
        [t] if t.powers.a == 0 && t.powers.b == 0 => {
            let scalar = t.coeff.as_scalar().ok_or(ParseError::NonMonomialDivisor { column })?;
            let inv = scalar.inverse().ok_or(ParseError::DivisionByZero { column })?;
            Ok(DifferentialSum::from_terms([DiffMonomial::new(
                Coefficient::scalar(inv),
                -t.powers.r,
                -t.powers.s,
                0,
                0,
            )]))
        }
        _ => Err(ParseError::NonMonomialDivisor { column }),
    }
}

/// Parses and fully expands an expression into its canonical sum.
pub fn parse_differential_sum(text: &str) -> Result<DifferentialSum, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let sum = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(sum)
}

/// Parses a plain number in the coefficient grammar, e.g. `-3/2` or `(1+2*i)`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational, ParseError> {
    let sum = parse_differential_sum(text)?;
    match sum.terms() {
        [] => Ok(GaussianRational::zero()),
        [t] if t.powers == Default::default() => t
            .coeff
            .as_scalar()
            .cloned()
            .ok_or(ParseError::Syntax { column: 1, message: format!("`{text}` is not a number") }),
        _ => Err(ParseError::Syntax { column: 1, message: format!("`{text}` is not a number") }),
    }
}
