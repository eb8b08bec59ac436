//! Expression strings for series: tokenizer, recursive-descent parser,
//! exact evaluator, and a pretty-printer.
//!
//! Grammar (standard precedence, left associative, unary minus binds
//! looser than `^`):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := rational | 't' | '(' expr ')'
//!        | 'sqrt' '(' expr ')' | 'root' '(' integer ',' expr ')'
//! ```
//!
//! Rational literals are `p`, `p/q`, or decimal `p.q`, converted exactly
//! (`0.5` is one half, never a float). Longest-match tokenization makes
//! `1/2` a single literal while `1/(1-t)` splits at the parenthesis.
//!
//! Evaluation is exact at the requested order: internally everything runs
//! at a padded order, the precision lost to valuation-cancelling division
//! and to `t`-power extraction under roots is tracked per node, and inputs
//! that would exhaust the pad are rejected rather than silently truncated.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::fps::Fps;
use crate::scalar::FromRational;

/// Character (not byte) offsets into the source, end exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    fn merge(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("illegal character `{ch}` at offset {offset}")]
    IllegalCharacter { offset: usize, ch: char },
    #[error("unexpected {found} at offset {offset}; expected {expected}")]
    UnexpectedToken { offset: usize, found: String, expected: String },
    #[error("expression nesting exceeds the supported depth at offset {offset}")]
    ExpressionTooDeep { offset: usize },
    #[error("invalid division at offsets {}..{}: {detail}", span.start, span.end)]
    DivisionValuation { span: Span, detail: String },
    #[error("invalid root at offsets {}..{}: {detail}", span.start, span.end)]
    RootConstantTerm { span: Span, detail: String },
    #[error(
        "negative power at offsets {}..{} needs a base with nonzero constant term",
        span.start, span.end
    )]
    NegativePowerOfNonunit { span: Span },
    #[error("literal at offsets {}..{} is not representable in the coefficient type", span.start, span.end)]
    LiteralRange { span: Span },
    #[error(
        "expression at offsets {}..{} loses more precision than the evaluator budgets for",
        span.start, span.end
    )]
    PrecisionBudget { span: Span },
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Rational(BigRational),
    T,
    Sqrt,
    Root,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Rational(v) => format!("literal `{v}`"),
            TokenKind::T => "`t`".into(),
            TokenKind::Sqrt => "`sqrt`".into(),
            TokenKind::Root => "`root`".into(),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            _ => None,
        };
        if let Some(kind) = simple {
            i += 1;
            tokens.push(Token { kind, span: Span::new(start, i) });
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let int_part: String = chars[i..j].iter().collect();
            let numer: BigInt = int_part.parse().expect("digit run");
            // Longest match: `p/q` and `p.q` extend the literal only when a
            // digit follows the separator, so `1/(1-t)` still splits.
            let value = if j + 1 < chars.len()
                && chars[j] == '/'
                && chars[j + 1].is_ascii_digit()
            {
                let mut k = j + 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let den_part: String = chars[j + 1..k].iter().collect();
                let denom: BigInt = den_part.parse().expect("digit run");
                if denom.is_zero() {
                    return Err(ExprError::IllegalCharacter { offset: j + 1, ch: '0' });
                }
                j = k;
                BigRational::new(numer, denom)
            } else if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                let mut k = j + 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let frac_part: String = chars[j + 1..k].iter().collect();
                let scale = BigInt::from(10u32).pow((k - j - 1) as u32);
                let frac: BigInt = frac_part.parse().expect("digit run");
                j = k;
                BigRational::new(numer * scale.clone() + frac, scale)
            } else {
                BigRational::from_integer(numer)
            };
            i = j;
            tokens.push(Token { kind: TokenKind::Rational(value), span: Span::new(start, i) });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let kind = match word.as_str() {
                "t" => TokenKind::T,
                "sqrt" => TokenKind::Sqrt,
                "root" => TokenKind::Root,
                _ => return Err(ExprError::IllegalCharacter { offset: start, ch: c }),
            };
            i = j;
            tokens.push(Token { kind, span: Span::new(start, i) });
            continue;
        }
        return Err(ExprError::IllegalCharacter { offset: start, ch: c });
    }
    Ok(tokens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesExpr {
    Literal { value: BigRational, span: Span },
    Var { span: Span },
    Neg { inner: Box<SeriesExpr>, span: Span },
    Binary { op: BinOp, lhs: Box<SeriesExpr>, rhs: Box<SeriesExpr>, span: Span },
    Pow { base: Box<SeriesExpr>, exponent: i64, span: Span },
    Sqrt { inner: Box<SeriesExpr>, span: Span },
    Root { index: u32, inner: Box<SeriesExpr>, span: Span },
}

impl SeriesExpr {
    pub fn span(&self) -> Span {
        match self {
            SeriesExpr::Literal { span, .. }
            | SeriesExpr::Var { span }
            | SeriesExpr::Neg { span, .. }
            | SeriesExpr::Binary { span, .. }
            | SeriesExpr::Pow { span, .. }
            | SeriesExpr::Sqrt { span, .. }
            | SeriesExpr::Root { span, .. } => *span,
        }
    }
}

const MAX_DEPTH: usize = 256;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    source_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next_offset(&self) -> usize {
        self.peek().map(|t| t.span.start).unwrap_or(self.source_len)
    }

    fn describe_current(&self) -> String {
        self.peek()
            .map(|t| t.kind.describe())
            .unwrap_or_else(|| "end of input".into())
    }

    fn unexpected(&self, expected: &str) -> ExprError {
        ExprError::UnexpectedToken {
            offset: self.next_offset(),
            found: self.describe_current(),
            expected: expected.into(),
        }
    }

    fn eat(&mut self, kind: &TokenKind, expected: &str) -> Result<Span, ExprError> {
        match self.peek() {
            Some(tok) if tok.kind == *kind => {
                let span = tok.span;
                self.pos += 1;
                Ok(span)
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn guard(&self, depth: usize) -> Result<(), ExprError> {
        if depth > MAX_DEPTH {
            Err(ExprError::ExpressionTooDeep { offset: self.next_offset() })
        } else {
            Ok(())
        }
    }

    fn expr(&mut self, depth: usize) -> Result<SeriesExpr, ExprError> {
        self.guard(depth)?;
        let mut lhs = self.term(depth + 1)?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term(depth + 1)?;
            let span = lhs.span().merge(rhs.span());
            lhs = SeriesExpr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), span };
        }
        Ok(lhs)
    }

    fn term(&mut self, depth: usize) -> Result<SeriesExpr, ExprError> {
        self.guard(depth)?;
        let mut lhs = self.unary(depth + 1)?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary(depth + 1)?;
            let span = lhs.span().merge(rhs.span());
            lhs = SeriesExpr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), span };
        }
        Ok(lhs)
    }

    fn unary(&mut self, depth: usize) -> Result<SeriesExpr, ExprError> {
        self.guard(depth)?;
        if let Some(tok) = self.peek() {
            if tok.kind == TokenKind::Minus {
                let start = tok.span;
                self.pos += 1;
                let inner = self.unary(depth + 1)?;
                let span = start.merge(inner.span());
                return Ok(SeriesExpr::Neg { inner: Box::new(inner), span });
            }
        }
        self.power(depth + 1)
    }

    fn power(&mut self, depth: usize) -> Result<SeriesExpr, ExprError> {
        self.guard(depth)?;
        let base = self.atom(depth + 1)?;
        if let Some(tok) = self.peek() {
            if tok.kind == TokenKind::Caret {
                self.pos += 1;
                let (exponent, exp_span) = self.integer_exponent()?;
                let span = base.span().merge(exp_span);
                return Ok(SeriesExpr::Pow { base: Box::new(base), exponent, span });
            }
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<(i64, Span), ExprError> {
        let mut negative = false;
        let mut span = None;
        if let Some(tok) = self.peek() {
            if tok.kind == TokenKind::Minus {
                negative = true;
                span = Some(tok.span);
                self.pos += 1;
            }
        }
        match self.peek() {
            Some(Token { kind: TokenKind::Rational(v), span: lit_span }) => {
                if !v.is_integer() {
                    return Err(ExprError::UnexpectedToken {
                        offset: lit_span.start,
                        found: format!("literal `{v}`"),
                        expected: "an integer exponent (use root(n, ...) for fractional powers)"
                            .into(),
                    });
                }
                let magnitude = v.to_integer().to_i64().ok_or(ExprError::UnexpectedToken {
                    offset: lit_span.start,
                    found: format!("literal `{v}`"),
                    expected: "an exponent small enough for 64-bit arithmetic".into(),
                })?;
                let full = span.map(|s| s.merge(*lit_span)).unwrap_or(*lit_span);
                self.pos += 1;
                Ok((if negative { -magnitude } else { magnitude }, full))
            }
            _ => Err(self.unexpected("an integer exponent")),
        }
    }

    fn positive_index(&mut self) -> Result<(u32, Span), ExprError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Rational(v), span }) => {
                let index = if v.is_integer() { v.to_integer().to_u32() } else { None };
                match index {
                    Some(ix) if ix >= 1 => {
                        let span = *span;
                        self.pos += 1;
                        Ok((ix, span))
                    }
                    _ => Err(ExprError::UnexpectedToken {
                        offset: span.start,
                        found: format!("literal `{v}`"),
                        expected: "a positive integer root index".into(),
                    }),
                }
            }
            _ => Err(self.unexpected("a positive integer root index")),
        }
    }

    fn atom(&mut self, depth: usize) -> Result<SeriesExpr, ExprError> {
        self.guard(depth)?;
        let tok = match self.peek() {
            Some(tok) => tok.clone(),
            None => return Err(self.unexpected("a literal, `t`, `(`, `sqrt`, or `root`")),
        };
        match tok.kind {
            TokenKind::Rational(value) => {
                self.pos += 1;
                Ok(SeriesExpr::Literal { value, span: tok.span })
            }
            TokenKind::T => {
                self.pos += 1;
                Ok(SeriesExpr::Var { span: tok.span })
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                let close = self.eat(&TokenKind::RParen, "`)`")?;
                // Reuse the inner node; widen its span to the parentheses.
                Ok(widen(inner, tok.span.merge(close)))
            }
            TokenKind::Sqrt => {
                self.pos += 1;
                self.eat(&TokenKind::LParen, "`(` after `sqrt`")?;
                let inner = self.expr(depth + 1)?;
                let close = self.eat(&TokenKind::RParen, "`)`")?;
                Ok(SeriesExpr::Sqrt { inner: Box::new(inner), span: tok.span.merge(close) })
            }
            TokenKind::Root => {
                self.pos += 1;
                self.eat(&TokenKind::LParen, "`(` after `root`")?;
                let (index, _) = self.positive_index()?;
                self.eat(&TokenKind::Comma, "`,` between root index and radicand")?;
                let inner = self.expr(depth + 1)?;
                let close = self.eat(&TokenKind::RParen, "`)`")?;
                Ok(SeriesExpr::Root {
                    index,
                    inner: Box::new(inner),
                    span: tok.span.merge(close),
                })
            }
            _ => Err(self.unexpected("a literal, `t`, `(`, `sqrt`, or `root`")),
        }
    }
}

fn widen(expr: SeriesExpr, span: Span) -> SeriesExpr {
    match expr {
        SeriesExpr::Literal { value, .. } => SeriesExpr::Literal { value, span },
        SeriesExpr::Var { .. } => SeriesExpr::Var { span },
        SeriesExpr::Neg { inner, .. } => SeriesExpr::Neg { inner, span },
        SeriesExpr::Binary { op, lhs, rhs, .. } => SeriesExpr::Binary { op, lhs, rhs, span },
        SeriesExpr::Pow { base, exponent, .. } => SeriesExpr::Pow { base, exponent, span },
        SeriesExpr::Sqrt { inner, .. } => SeriesExpr::Sqrt { inner, span },
        SeriesExpr::Root { index, inner, .. } => SeriesExpr::Root { index, inner, span },
    }
}

pub fn parse_tokens(tokens: Vec<Token>, source_len: usize) -> Result<SeriesExpr, ExprError> {
    let mut parser = Parser { tokens, pos: 0, source_len };
    let expr = parser.expr(0)?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(expr)
}

pub fn parse_expression(input: &str) -> Result<SeriesExpr, ExprError> {
    let tokens = tokenize(input)?;
    parse_tokens(tokens, input.chars().count())
}

/// Parses a standalone rational: an optional minus sign and one literal.
pub fn parse_rational(input: &str) -> Result<BigRational, ExprError> {
    let tokens = tokenize(input)?;
    let len = input.chars().count();
    let mut pos = 0;
    let negative = matches!(tokens.first(), Some(Token { kind: TokenKind::Minus, .. }));
    if negative {
        pos = 1;
    }
    match tokens.get(pos) {
        Some(Token { kind: TokenKind::Rational(v), .. }) if tokens.len() == pos + 1 => {
            Ok(if negative { -v.clone() } else { v.clone() })
        }
        Some(tok) => Err(ExprError::UnexpectedToken {
            offset: tok.span.start,
            found: tok.kind.describe(),
            expected: "a rational literal".into(),
        }),
        None => Err(ExprError::UnexpectedToken {
            offset: len,
            found: "end of input".into(),
            expected: "a rational literal".into(),
        }),
    }
}

/// Headroom for valuation-cancelling operations; evaluation runs at
/// `order + PRECISION_PAD` internally so the requested window stays exact.
const PRECISION_PAD: usize = 128;

/// Evaluates to a series exact through `order`, or a structured error
/// carrying the offending sub-expression's span.
pub fn evaluate<T: FromRational>(expr: &SeriesExpr, order: usize) -> Result<Fps<T>, ExprError> {
    let padded = order + PRECISION_PAD;
    let (value, _) = eval_node(expr, padded, order)?;
    Ok(value.truncated(order))
}

pub fn evaluate_str<T: FromRational>(input: &str, order: usize) -> Result<Fps<T>, ExprError> {
    evaluate(&parse_expression(input)?, order)
}

/// Returns the value at the padded order plus the number of top degrees
/// that are no longer trustworthy. Division charges the denominator's
/// valuation; an n-th root charges (n-1) times the extracted t-power.
fn eval_node<T: FromRational>(
    expr: &SeriesExpr,
    padded: usize,
    order: usize,
) -> Result<(Fps<T>, usize), ExprError> {
    match expr {
        SeriesExpr::Literal { value, span } => {
            let c = T::from_rational(value).ok_or(ExprError::LiteralRange { span: *span })?;
            Ok((Fps::constant(c, padded), 0))
        }
        SeriesExpr::Var { .. } => Ok((Fps::t(padded), 0)),
        SeriesExpr::Neg { inner, .. } => {
            let (v, loss) = eval_node(inner, padded, order)?;
            Ok((v.neg(), loss))
        }
        SeriesExpr::Binary { op, lhs, rhs, span } => {
            let (a, la) = eval_node(lhs, padded, order)?;
            let (b, lb) = eval_node(rhs, padded, order)?;
            let loss = la.max(lb);
            match op {
                BinOp::Add => Ok((a.add(&b).expect("same order"), loss)),
                BinOp::Sub => Ok((a.sub(&b).expect("same order"), loss)),
                BinOp::Mul => Ok((a.mul(&b).expect("same order"), loss)),
                BinOp::Div => {
                    let vb = b.valuation().ok_or_else(|| ExprError::DivisionValuation {
                        span: *span,
                        detail: "denominator is zero through the computed order".into(),
                    })?;
                    if vb > order {
                        return Err(ExprError::DivisionValuation {
                            span: *span,
                            detail: format!(
                                "denominator valuation {vb} exceeds the requested order {order}"
                            ),
                        });
                    }
                    if let Some(va) = a.valuation() {
                        if va < vb {
                            return Err(ExprError::DivisionValuation {
                                span: *span,
                                detail: format!(
                                    "denominator valuation {vb} exceeds numerator valuation {va}"
                                ),
                            });
                        }
                    }
                    let loss = loss + vb;
                    if loss > PRECISION_PAD {
                        return Err(ExprError::PrecisionBudget { span: *span });
                    }
                    Ok((a.divide(&b).expect("checked valuations"), loss))
                }
            }
        }
        SeriesExpr::Pow { base, exponent, span } => {
            let (a, loss) = eval_node::<T>(base, padded, order)?;
            if *exponent < 0 && !a.coeff(0).is_zero() {
                return Ok((a.pow(*exponent).expect("unit base"), loss));
            }
            if *exponent < 0 {
                return Err(ExprError::NegativePowerOfNonunit { span: *span });
            }
            Ok((a.pow(*exponent).expect("nonnegative"), loss))
        }
        SeriesExpr::Sqrt { inner, span } => eval_root(inner, 2, *span, padded, order),
        SeriesExpr::Root { index, inner, span } => {
            eval_root(inner, *index, *span, padded, order)
        }
    }
}

fn eval_root<T: FromRational>(
    inner: &SeriesExpr,
    index: u32,
    span: Span,
    padded: usize,
    order: usize,
) -> Result<(Fps<T>, usize), ExprError> {
    let (a, la) = eval_node::<T>(inner, padded, order)?;
    let v = a.valuation().ok_or_else(|| ExprError::RootConstantTerm {
        span,
        detail: "radicand is zero through the computed order".into(),
    })?;
    if v > order {
        return Err(ExprError::RootConstantTerm {
            span,
            detail: format!("radicand valuation {v} exceeds the requested order {order}"),
        });
    }
    let n = index as usize;
    if v % n != 0 {
        return Err(ExprError::RootConstantTerm {
            span,
            detail: format!("radicand valuation {v} is not divisible by the root index {index}"),
        });
    }
    let j = v / n;
    let loss = la + j * (n - 1);
    if loss > PRECISION_PAD {
        return Err(ExprError::PrecisionBudget { span });
    }
    // Factor out t^(j*n), take the root of the unit part, reattach t^j.
    let mut coeffs = a.coeffs()[v..].to_vec();
    coeffs.resize(padded + 1, num_traits::zero());
    let unit = Fps::from_coeffs(coeffs);
    if !unit.coeff(0).is_one() {
        return Err(ExprError::RootConstantTerm {
            span,
            detail: format!(
                "radicand must start with 1*t^{v}; its leading coefficient is {}",
                unit.coeff(0)
            ),
        });
    }
    let root = unit.nth_root(index).expect("leading coefficient checked");
    let reattached = Fps::monomial(T::one(), j, padded).mul(&root).expect("same order");
    Ok((reattached, loss))
}

/// Minimal-parenthesis printer; `parse_expression` of the output
/// reproduces the tree.
impl fmt::Display for SeriesExpr {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        print_expr(self, 0, out)
    }
}

fn precedence(expr: &SeriesExpr) -> u8 {
    match expr {
        SeriesExpr::Binary { op: BinOp::Add | BinOp::Sub, .. } | SeriesExpr::Neg { .. } => 1,
        SeriesExpr::Binary { op: BinOp::Mul | BinOp::Div, .. } => 2,
        SeriesExpr::Pow { .. } => 4,
        _ => 5,
    }
}

fn print_expr(expr: &SeriesExpr, min_prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = precedence(expr);
    let parens = prec < min_prec;
    if parens {
        write!(out, "(")?;
    }
    match expr {
        SeriesExpr::Literal { value, .. } => write!(out, "{value}")?,
        SeriesExpr::Var { .. } => write!(out, "t")?,
        SeriesExpr::Neg { inner, .. } => {
            write!(out, "-")?;
            print_expr(inner, 2, out)?;
        }
        SeriesExpr::Binary { op, lhs, rhs, .. } => {
            let (symbol, left_min, right_min) = match op {
                BinOp::Add => ("+", 1, 1),
                BinOp::Sub => ("-", 1, 2),
                BinOp::Mul => ("*", 2, 2),
                BinOp::Div => ("/", 2, 4),
            };
            print_expr(lhs, left_min, out)?;
            write!(out, "{symbol}")?;
            print_expr(rhs, right_min, out)?;
        }
        SeriesExpr::Pow { base, exponent, .. } => {
            print_expr(base, 5, out)?;
            write!(out, "^{exponent}")?;
        }
        SeriesExpr::Sqrt { inner, .. } => {
            write!(out, "sqrt(")?;
            print_expr(inner, 0, out)?;
            write!(out, ")")?;
        }
        SeriesExpr::Root { index, inner, .. } => {
            write!(out, "root({index},")?;
            print_expr(inner, 0, out)?;
            write!(out, ")")?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}
