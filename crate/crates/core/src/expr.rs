//! A small ring-expression language over the series builders.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" ["-"] INT)*
//! primary := INT | "q" | "f[" INT "]" | "C" ["[" INT "]"]
//!          | "poch(" arg ";" "q" ["^" INT] [";" INT] ")"
//!          | ("omega" | "B" | "f3") "(" arg ")"
//!          | "D[" INT "," INT "](" expr ")" | "(" expr ")"
//! arg     := ["-"] "q" ["^" INT]
//! ```
//!
//! `^` binds tighter than unary minus, which binds tighter than `*` and `/`.
//! Binary operators associate to the left. `−` (U+2212) is accepted as minus.
//! Only integer literals exist; `1.5` and `1/2` are rejected.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::engine::{series_c, series_ck};
use crate::error::SeriesError;
use crate::mock_theta::MockThetaId;
use crate::qproducts::{euler_fm, pochhammer_fin, pochhammer_inf};
use crate::ring::Ring;
use crate::series::Series;

/// `sign * q^power` as the argument of a mock theta function or Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arg {
    pub negative: bool,
    pub power: usize,
}

impl Arg {
    pub fn sign(self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QExpr {
    /// Nonnegative integer literal.
    Num(BigInt),
    Q,
    /// `f[m] = (q^m; q^m)_∞`
    EtaF(usize),
    /// `(a; q^step)_∞` with `a = ±q^s`
    PochInf {
        a: Arg,
        step: usize,
    },
    /// `(a; q^step)_n`
    PochFin {
        a: Arg,
        step: usize,
        n: usize,
    },
    Omega(Arg),
    BFun(Arg),
    F3(Arg),
    CSeries,
    CkSeries(usize),
    Neg(Box<QExpr>),
    Add(Box<QExpr>, Box<QExpr>),
    Sub(Box<QExpr>, Box<QExpr>),
    Mul(Box<QExpr>, Box<QExpr>),
    Div(Box<QExpr>, Box<QExpr>),
    Pow(Box<QExpr>, i64),
    /// `Σ a(m n + r) q^n` of the inner series `a`.
    Dissect {
        m: usize,
        r: usize,
        inner: Box<QExpr>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    /// Tokens that would have been accepted at `offset`.
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
    Unknown(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Punct(c) | Tok::Unknown(c) => write!(f, "{c:?}"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            let value = src[i..end].parse().expect("ascii digits");
            out.push((i, Tok::Int(value)));
        } else if c.is_ascii_alphabetic() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push((i, Tok::Ident(src[i..end].to_string())));
        } else {
            chars.next();
            let tok = match c {
                '\u{2212}' => Tok::Punct('-'),
                '+' | '-' | '*' | '/' | '^' | '(' | ')' | '[' | ']' | ',' | ';' => Tok::Punct(c),
                _ => Tok::Unknown(c),
            };
            out.push((i, tok));
        }
    }
    out.push((src.len(), Tok::End));
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = self.peek();
        let message = match found {
            Tok::Unknown('.') => "decimal literals are not supported".to_string(),
            _ => format!("unexpected {found}"),
        };
        ParseError {
            offset: self.offset(),
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn at_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn eat_punct(&mut self, c: char) -> bool {
        let hit = self.at_punct(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect_punct(&mut self, c: char) -> PResult<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn expect_ident(&mut self, name: &str) -> PResult<()> {
        if *self.peek() == Tok::Ident(name.to_string()) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("'{name}'")]))
        }
    }

    fn integer(&mut self) -> PResult<BigInt> {
        match self.peek() {
            Tok::Int(n) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn small<T: TryFrom<u64>>(&mut self, what: &str, min: u64) -> PResult<T> {
        let offset = self.offset();
        let value = self.integer()?;
        let fail = |message: String| ParseError {
            offset,
            message,
            expected: Vec::new(),
        };
        let v = value
            .to_u64()
            .ok_or_else(|| fail(format!("{what} {value} is too large")))?;
        if v < min {
            return Err(fail(format!("{what} must be >= {min}, got {v}")));
        }
        T::try_from(v).map_err(|_| fail(format!("{what} {value} is too large")))
    }

    fn expr(&mut self) -> PResult<QExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_punct('+') {
                lhs = QExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_punct('-') {
                lhs = QExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<QExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_punct('*') {
                lhs = QExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.at_punct('/') {
                let offset = self.offset();
                self.bump();
                let rhs = self.unary()?;
                if matches!((&lhs, &rhs), (QExpr::Num(_), QExpr::Num(_))) {
                    return Err(ParseError {
                        offset,
                        message: "rational literals are not supported".into(),
                        expected: Vec::new(),
                    });
                }
                lhs = QExpr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<QExpr> {
        if self.eat_punct('-') {
            Ok(QExpr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> PResult<QExpr> {
        let mut base = self.primary()?;
        while self.eat_punct('^') {
            let negative = self.eat_punct('-');
            let offset = self.offset();
            let magnitude = self.integer()?;
            let e = if negative { -magnitude } else { magnitude };
            let e = e.to_i64().ok_or(ParseError {
                offset,
                message: "exponent out of range".into(),
                expected: Vec::new(),
            })?;
            base = QExpr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    /// `["-"] "q" ["^" INT]`
    fn arg(&mut self) -> PResult<Arg> {
        let negative = self.eat_punct('-');
        if *self.peek() != Tok::Ident("q".into()) {
            return Err(self.error(if negative { &["'q'"] } else { &["'-'", "'q'"] }));
        }
        self.bump();
        let power = if self.eat_punct('^') {
            self.small("power", 1)?
        } else {
            1
        };
        Ok(Arg { negative, power })
    }

    fn bracketed(&mut self, what: &str, min: u64) -> PResult<usize> {
        self.expect_punct('[')?;
        let v = self.small(what, min)?;
        self.expect_punct(']')?;
        Ok(v)
    }

    fn call_arg(&mut self) -> PResult<Arg> {
        self.expect_punct('(')?;
        let a = self.arg()?;
        self.expect_punct(')')?;
        Ok(a)
    }

    fn primary(&mut self) -> PResult<QExpr> {
        const START: &[&str] = &[
            "integer", "'q'", "'f'", "'poch'", "'omega'", "'B'", "'f3'", "'C'", "'D'", "'('", "'-'",
        ];
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(QExpr::Num(n))
            }
            Tok::Punct('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let offset = self.offset();
                self.bump();
                match name.as_str() {
                    "q" => Ok(QExpr::Q),
                    "f" => Ok(QExpr::EtaF(self.bracketed("modulus", 1)?)),
                    "C" => {
                        if self.at_punct('[') {
                            Ok(QExpr::CkSeries(self.bracketed("k", 1)?))
                        } else {
                            Ok(QExpr::CSeries)
                        }
                    }
                    "omega" => Ok(QExpr::Omega(self.call_arg()?)),
                    "B" => Ok(QExpr::BFun(self.call_arg()?)),
                    "f3" => Ok(QExpr::F3(self.call_arg()?)),
                    "poch" => self.pochhammer(),
                    "D" => self.dissect(),
                    _ => Err(ParseError {
                        offset,
                        message: format!("unknown name {name:?}"),
                        expected: START.iter().map(|s| s.to_string()).collect(),
                    }),
                }
            }
            _ => Err(self.error(START)),
        }
    }

    fn pochhammer(&mut self) -> PResult<QExpr> {
        self.expect_punct('(')?;
        let a = self.arg()?;
        self.expect_punct(';')?;
        self.expect_ident("q")?;
        let step = if self.eat_punct('^') {
            self.small("step", 1)?
        } else {
            1
        };
        let n = if self.eat_punct(';') {
            Some(self.small("length", 0)?)
        } else {
            None
        };
        if !self.at_punct(')') {
            return Err(self.error(if n.is_some() {
                &["')'"]
            } else {
                &["'^'", "';'", "')'"]
            }));
        }
        self.bump();
        Ok(match n {
            Some(n) => QExpr::PochFin { a, step, n },
            None => QExpr::PochInf { a, step },
        })
    }

    fn dissect(&mut self) -> PResult<QExpr> {
        self.expect_punct('[')?;
        let m: usize = self.small("modulus", 1)?;
        self.expect_punct(',')?;
        let offset = self.offset();
        let r: usize = self.small("residue", 0)?;
        if r >= m {
            return Err(ParseError {
                offset,
                message: format!("dissection residue {r} must be below modulus {m}"),
                expected: Vec::new(),
            });
        }
        self.expect_punct(']')?;
        self.expect_punct('(')?;
        let inner = self.expr()?;
        self.expect_punct(')')?;
        Ok(QExpr::Dissect {
            m,
            r,
            inner: Box::new(inner),
        })
    }
}

/// Parse a complete expression.
pub fn parse(src: &str) -> Result<QExpr, ParseError> {
    let mut p = Parser {
        toks: lex(src),
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e)
}

impl FromStr for QExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl QExpr {
    fn level(&self) -> u8 {
        match self {
            QExpr::Add(..) | QExpr::Sub(..) => 1,
            QExpr::Mul(..) | QExpr::Div(..) => 2,
            QExpr::Neg(_) => 3,
            QExpr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn write_arg(f: &mut fmt::Formatter<'_>, a: Arg) -> fmt::Result {
    if a.negative {
        f.write_str("-")?;
    }
    f.write_str("q")?;
    if a.power != 1 {
        write!(f, "^{}", a.power)?;
    }
    Ok(())
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &QExpr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical form with the fewest parentheses that reparse to the same tree.
impl fmt::Display for QExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &QExpr, op: &str, b: &QExpr| {
            let level = self.level();
            write_child(f, a, a.level() < level)?;
            write!(f, " {op} ")?;
            write_child(f, b, b.level() <= level)
        };
        match self {
            QExpr::Num(n) => write!(f, "{n}"),
            QExpr::Q => f.write_str("q"),
            QExpr::EtaF(m) => write!(f, "f[{m}]"),
            QExpr::PochInf { a, step } | QExpr::PochFin { a, step, .. } => {
                f.write_str("poch(")?;
                write_arg(f, *a)?;
                f.write_str("; ")?;
                write_arg(
                    f,
                    Arg {
                        negative: false,
                        power: *step,
                    },
                )?;
                if let QExpr::PochFin { n, .. } = self {
                    write!(f, "; {n}")?;
                }
                f.write_str(")")
            }
            QExpr::Omega(a) => {
                f.write_str("omega(")?;
                write_arg(f, *a)?;
                f.write_str(")")
            }
            QExpr::BFun(a) => {
                f.write_str("B(")?;
                write_arg(f, *a)?;
                f.write_str(")")
            }
            QExpr::F3(a) => {
                f.write_str("f3(")?;
                write_arg(f, *a)?;
                f.write_str(")")
            }
            QExpr::CSeries => f.write_str("C"),
            QExpr::CkSeries(k) => write!(f, "C[{k}]"),
            QExpr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, e.level() < 3)
            }
            QExpr::Add(a, b) => binary(f, a, "+", b),
            QExpr::Sub(a, b) => binary(f, a, "-", b),
            QExpr::Mul(a, b) => binary(f, a, "*", b),
            QExpr::Div(a, b) => binary(f, a, "/", b),
            QExpr::Pow(b, e) => {
                write_child(f, b, b.level() < 4)?;
                write!(f, "^{e}")
            }
            QExpr::Dissect { m, r, inner } => write!(f, "D[{m},{r}]({inner})"),
        }
    }
}

fn invalid(message: &str) -> SeriesError {
    SeriesError::InvalidArgument(message.to_string())
}

/// Evaluate to `order` coefficients in `ring`. Deterministic in all inputs.
pub fn eval(e: &QExpr, order: usize, ring: Ring) -> Result<Series, SeriesError> {
    if order == 0 {
        return Err(invalid("order must be >= 1"));
    }
    let go = |sub: &QExpr| eval(sub, order, ring);
    match e {
        QExpr::Num(n) => Series::constant(ring, n, order),
        QExpr::Q => Series::monomial(ring, &BigInt::from(1), 1, order),
        QExpr::EtaF(m) => euler_fm(ring, *m, order),
        QExpr::PochInf { a, step } => pochhammer_inf(ring, a.sign(), a.power, *step, order),
        QExpr::PochFin { a, step, n } => pochhammer_fin(ring, a.sign(), a.power, *step, *n, order),
        QExpr::Omega(a) => MockThetaId::Omega.expand_at(ring, a.sign(), a.power, order),
        QExpr::BFun(a) => MockThetaId::B.expand_at(ring, a.sign(), a.power, order),
        QExpr::F3(a) => MockThetaId::F3.expand_at(ring, a.sign(), a.power, order),
        QExpr::CSeries => series_c(ring, order),
        QExpr::CkSeries(k) => series_ck(ring, *k, order),
        QExpr::Neg(x) => Ok(go(x)?.negate()),
        QExpr::Add(a, b) => go(a)?.add(&go(b)?),
        QExpr::Sub(a, b) => go(a)?.sub(&go(b)?),
        QExpr::Mul(a, b) => go(a)?.mul(&go(b)?),
        QExpr::Div(a, b) => go(a)?.div(&go(b)?),
        QExpr::Pow(b, k) => go(b)?.pow(*k),
        QExpr::Dissect { m, r, inner } => {
            if *m == 0 || r >= m {
                return Err(invalid("dissection needs 0 <= r < m"));
            }
            let needed = m
                .checked_mul(order - 1)
                .and_then(|x| x.checked_add(r + 1))
                .ok_or_else(|| invalid("dissection order overflows"))?;
            Ok(eval(inner, needed, ring)?.dissect(*m, *r)?.truncate(order))
        }
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(src: &str, order: usize, ring: Ring) -> Result<Series, ExprError> {
    Ok(eval(&parse(src)?, order, ring)?)
}

/// Either stage of [`eval_str`] failing.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] SeriesError),
}

impl QExpr {
    /// Reject trees that the parser could never produce.
    pub fn validate(&self) -> Result<(), SeriesError> {
        match self {
            QExpr::Num(n) if n.is_negative() => Err(invalid("literals are nonnegative")),
            QExpr::Dissect { m, r, inner } => {
                if *m == 0 || r >= m {
                    return Err(invalid("dissection needs 0 <= r < m"));
                }
                inner.validate()
            }
            QExpr::Neg(x) | QExpr::Pow(x, _) => x.validate(),
            QExpr::Add(a, b) | QExpr::Sub(a, b) | QExpr::Mul(a, b) | QExpr::Div(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coefficients()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn exact(src: &str, order: usize) -> Series {
        eval_str(src, order, Ring::Exact).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("f[1]^2").unwrap(),
            QExpr::Pow(Box::new(QExpr::EtaF(1)), 2)
        );
        assert_eq!(
            parse("D[2,1](C)").unwrap(),
            QExpr::Dissect {
                m: 2,
                r: 1,
                inner: Box::new(QExpr::CSeries)
            }
        );
        let neg_pow = parse("-q^2").unwrap();
        assert_eq!(
            neg_pow,
            QExpr::Neg(Box::new(QExpr::Pow(Box::new(QExpr::Q), 2)))
        );
        assert_eq!(parse("1 - 2 - 3").unwrap(), parse("(1 - 2) - 3").unwrap());
        assert_eq!(
            parse("q / f[1] * f[2]").unwrap(),
            parse("(q / f[1]) * f[2]").unwrap()
        );
        assert_eq!(parse("q \u{2212} 1").unwrap(), parse("q - 1").unwrap());
        assert_eq!(ints(&exact("1 - 2 - 3", 1)), vec![-4]);
        assert_eq!(ints(&exact("q", 3)), vec![0, 1, 0]);
        assert_eq!(ints(&exact("(1 - q)^-1", 4)), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        let e = parse("1.5").unwrap_err();
        assert_eq!(e.offset, 1);
        assert!(e.message.contains("decimal"));
        assert!(parse("1/2").unwrap_err().message.contains("rational"));
        assert!(parse("D[2,2](C)")
            .unwrap_err()
            .message
            .contains("below modulus"));
        let e = parse("f[0]").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse("q +").unwrap_err();
        assert_eq!(e.offset, 3);
        assert!(e.expected.contains(&"'q'".to_string()));
        assert!(parse("omega(q^0)").is_err());
        assert!(parse("foo").unwrap_err().message.contains("unknown name"));
        assert!(parse("q q")
            .unwrap_err()
            .expected
            .contains(&"end of input".to_string()));
    }

    #[test]
    fn non_unit_division_fails_at_eval() {
        let e = parse("1 / (2 + q)").unwrap();
        assert_eq!(
            eval(&e, 5, Ring::Exact),
            Err(SeriesError::NonUnit(Ring::Exact))
        );
        assert!(eval(&parse("1 / (3 + q)").unwrap(), 5, Ring::MOD64).is_ok());
    }

    #[test]
    fn main_identity_rhs_matches_c() {
        let src = "C - (2*q*f[2]*f[4]/f[1]^2*B(-q) - q*omega(-q))";
        assert!(exact(src, 120).is_zero());
    }

    #[test]
    fn third_order_identity() {
        let src = "f3(q^8) - 2*q*omega(-q) - 2*q^3*omega(-q^4) - f[1]^2*f[4]^8/(f[2]^5*f[8]^4)";
        assert!(exact(src, 120).is_zero());
    }

    #[test]
    fn pochhammer_forms() {
        assert_eq!(exact("poch(q; q)", 30), exact("f[1]", 30));
        assert_eq!(
            exact("poch(-q; q^2; 2)", 6),
            exact("(1 + q) * (1 + q^3)", 6)
        );
        assert_eq!(exact("poch(q^2; q^2)", 30), exact("f[2]", 30));
    }

    #[test]
    fn dissection_of_c() {
        let c = exact("C", 41);
        let odd = exact("D[2,1](C)", 20);
        for n in 0..20 {
            assert_eq!(
                odd.coefficient(n).unwrap(),
                c.coefficient(2 * n + 1).unwrap()
            );
        }
    }

    #[test]
    fn printer_round_trips() {
        for src in [
            "2*q*f[2]*f[4]/f[1]^2*B(-q) - q*omega(-q)",
            "-(q + 1)^-3 - -q",
            "a",
            "poch(-q^3; q^2; 4) / poch(q; q)",
            "D[4,3](C[2] * f3(-q^2))",
            "(q^2)^3 - q^2^3 + (-q)^2",
            "1 - (2 - 3) / (q * (f[1] / f[2]))",
        ] {
            let Ok(e) = parse(src) else { continue };
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{src} -> {printed}");
        }
    }
}
