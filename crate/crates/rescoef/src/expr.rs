//! A small expression language for building series and extracting residues.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := '-' factor | atom ['^' exponent]
//! exponent := integer | ident | '(' expr ')'
//! atom     := number | ident | ident '(' args ')' | 'res_' ident '(' expr ')' | '(' expr ')'
//! number   := integer | integer '/' integer
//! ```
//!
//! `a/b` with integer literals reads as one rational literal only at the start
//! of a term, so `x/2/3` is `(x/2)/3` and `x*3/2` is `(x*3)/2`.
//! Exponents must evaluate to constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::combinum;
use crate::mseries::{MSeries, MSeriesError};
use crate::numeric::{
    binom_general, floor_q, is_integer, necklace_rank, q, q_to_string, qi, ParamBinding, Q,
};
use crate::oracle::{self, LevsVariant};
use crate::series::LaurentSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Q),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    Res(String, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("in `{expr}`: {reason}")]
    At { expr: String, reason: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("`{name}` takes {expected} argument(s), got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int,
    Ident,
    Res,
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

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = (line, col);
        let (kind, len) = if c.is_ascii_digit() {
            let n = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
            (Tok::Int, n)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let n = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count();
            let word: String = chars[i..i + n].iter().collect();
            let kind = if word.len() > 4 && word.starts_with("res_") {
                Tok::Res
            } else {
                Tok::Ident
            };
            (kind, n)
        } else {
            let kind = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => {
                    return Err(SyntaxError {
                        line,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            (kind, 1)
        };
        out.push(Token {
            kind,
            text: chars[i..i + len].iter().collect(),
            line: start.0,
            column: start.1,
        });
        i += len;
        col += len;
    }
    out.push(Token {
        kind: Tok::End,
        text: String::new(),
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> Tok {
        self.toks.get(self.pos + k).map_or(Tok::End, |t| t.kind)
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.kind != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, what: &str) -> Result<T, SyntaxError> {
        let t = self.peek();
        let found = if t.kind == Tok::End {
            "end of input".to_string()
        } else {
            format!("`{}`", t.text)
        };
        Err(SyntaxError {
            line: t.line,
            column: t.column,
            message: format!("expected {what}, found {found}"),
        })
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<Token, SyntaxError> {
        if self.peek().kind == kind {
            Ok(self.next())
        } else {
            self.fail(what)
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().kind {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor(true)?;
        loop {
            match self.peek().kind {
                Tok::Star => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor(false)?));
                }
                Tok::Slash => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor(false)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self, ratio: bool) -> Result<Expr, SyntaxError> {
        if self.peek().kind == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.factor(ratio)?)));
        }
        let base = self.atom(ratio)?;
        if self.peek().kind == Tok::Caret {
            self.next();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(e)));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, SyntaxError> {
        let t = self.expect(Tok::Int, "an integer")?;
        Ok(t.text.parse().expect("lexed digits"))
    }

    fn exponent(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().kind {
            Tok::Int => Ok(Expr::Num(qi(self.integer()?))),
            Tok::Ident => Ok(Expr::Ident(self.next().text)),
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.fail("an exponent"),
        }
    }

    fn atom(&mut self, ratio: bool) -> Result<Expr, SyntaxError> {
        match self.peek().kind {
            Tok::Int => {
                let p = self.integer()?;
                let zero_den = self
                    .toks
                    .get(self.pos + 1)
                    .is_some_and(|t| t.text.bytes().all(|b| b == b'0'));
                if ratio
                    && self.peek().kind == Tok::Slash
                    && self.peek_at(1) == Tok::Int
                    && !zero_den
                {
                    self.next();
                    let d = self.integer()?;
                    return Ok(Expr::Num(Q::new(p, d)));
                }
                Ok(Expr::Num(qi(p)))
            }
            Tok::Ident => {
                let name = self.next().text;
                if self.peek().kind != Tok::LParen {
                    return Ok(Expr::Ident(name));
                }
                self.next();
                let mut args = vec![self.expr()?];
                while self.peek().kind == Tok::Comma {
                    self.next();
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Ok(Expr::Call(name, args))
            }
            Tok::Res => {
                let var = self.next().text[4..].to_string();
                self.expect(Tok::LParen, "`(` after residue operator")?;
                let body = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Res(var, Box::new(body)))
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.fail("a number, identifier or `(`"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().kind != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_ATOM: u8 = 4;

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => PREC_SUM,
            Expr::Mul(..) | Expr::Div(..) => PREC_PRODUCT,
            Expr::Neg(_) => PREC_UNARY,
            Expr::Num(x) if x.is_negative() => PREC_UNARY,
            Expr::Num(x) if !x.is_integer() => PREC_PRODUCT,
            Expr::Pow(..) => PREC_UNARY,
            _ => PREC_ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Expr::Num(x) if x.is_negative() => {
                write!(f, "-")?;
                Expr::Num(-x).write_at(f, PREC_UNARY)
            }
            Expr::Num(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.write_at(f, PREC_UNARY)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, PREC_SUM)?;
                write!(
                    f,
                    "{}",
                    if matches!(self, Expr::Add(..)) {
                        " + "
                    } else {
                        " - "
                    }
                )?;
                b.write_at(f, PREC_PRODUCT)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, PREC_PRODUCT)?;
                write!(f, "*")?;
                b.write_at(f, PREC_UNARY)
            }
            Expr::Div(a, b) => {
                if a.integer_led() {
                    write!(f, "(")?;
                    a.write_at(f, 0)?;
                    write!(f, ")")?;
                } else {
                    a.write_at(f, PREC_PRODUCT)?;
                }
                write!(f, "/")?;
                match **b {
                    Expr::Num(ref x) if !x.is_integer() => b.write_at(f, PREC_ATOM),
                    _ => b.write_at(f, PREC_UNARY),
                }
            }
            Expr::Pow(b, e) => {
                b.write_at(f, PREC_ATOM)?;
                match **e {
                    Expr::Num(ref x) if x.is_integer() && !x.is_negative() => {
                        write!(f, "^{}", x.numer())
                    }
                    Expr::Ident(ref s) => write!(f, "^{s}"),
                    _ => {
                        write!(f, "^(")?;
                        e.write_at(f, 0)?;
                        write!(f, ")")
                    }
                }
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.write_at(f, 0)?;
                }
                write!(f, ")")
            }
            Expr::Res(v, body) => {
                write!(f, "res_{v}(")?;
                body.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }

    /// Prints as an integer literal, possibly behind unary minus signs.
    fn integer_led(&self) -> bool {
        match self {
            Expr::Num(x) => x.is_integer(),
            Expr::Neg(a) => a.integer_led(),
            _ => false,
        }
    }

    /// Nesting depth of the tree.
    pub fn depth(&self) -> usize {
        1 + match self {
            Expr::Num(_) | Expr::Ident(_) => 0,
            Expr::Neg(a) | Expr::Res(_, a) => a.depth(),
            Expr::Pow(a, b)
            | Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b) => a.depth().max(b.depth()),
            Expr::Call(_, args) => args.iter().map(Expr::depth).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Result of evaluation, narrowed by the number of free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Rational(Q),
    Series(LaurentSeries),
    Multi(MSeries),
}

impl Value {
    fn from_mseries(m: MSeries) -> Self {
        match m.vars().len() {
            0 => Value::Rational(m.constant_term().unwrap_or_else(|_| Q::zero())),
            1 => match m.to_series() {
                Ok(s) => Value::Series(s),
                Err(_) => Value::Multi(m),
            },
            _ => Value::Multi(m),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(x) => write!(f, "{}", q_to_string(x)),
            Value::Series(s) => write!(f, "{s}"),
            Value::Multi(m) => write!(f, "{m}"),
        }
    }
}

struct Env<'a> {
    binding: &'a ParamBinding,
    trunc: i64,
}

fn caps_for(m: &MSeries, trunc: i64) -> Vec<(String, i64)> {
    m.vars().iter().map(|v| (v.clone(), trunc)).collect()
}

fn capped(m: &MSeries, trunc: i64) -> MSeries {
    let caps = caps_for(m, trunc);
    let refs: Vec<(&str, i64)> = caps.iter().map(|(v, t)| (v.as_str(), *t)).collect();
    m.with_trunc(&refs)
}

fn scalar(m: &MSeries) -> Option<Q> {
    if m.terms().all(|(e, _)| e.iter().all(|x| *x == 0)) && m.is_exact() {
        Some(
            m.terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Q::zero),
        )
    } else {
        None
    }
}

fn inverse(m: &MSeries, trunc: i64) -> Result<MSeries, MSeriesError> {
    if m.len() == 1 && m.is_exact() {
        return m.mv_inv();
    }
    capped(m, trunc).mv_inv()
}

fn exp_m(m: &MSeries, trunc: i64) -> Result<MSeries, String> {
    if let Some(c) = scalar(m) {
        if c.is_zero() {
            return Ok(MSeries::one());
        }
        return Err("exp of a nonzero constant is not rational".into());
    }
    let f = capped(m, trunc);
    if !f.constant_term().map_err(|e| e.to_string())?.is_zero()
        || f.lower_bounds().iter().any(|x| *x < 0)
    {
        return Err(
            "exp needs an argument with zero constant term and no negative exponents".into(),
        );
    }
    let degree: i64 = f
        .trunc()
        .iter()
        .map(|t| t.map_or(0, |t| (t - 1).max(0)))
        .sum();
    let mut acc = MSeries::one();
    let mut term = MSeries::one();
    for k in 1..=degree {
        term = term.mul(&f).scale(&(Q::one() / q(k)));
        acc = acc.add(&term);
    }
    Ok(capped(&acc, trunc))
}

impl Env<'_> {
    fn eval(&self, e: &Expr) -> Result<MSeries, EvalError> {
        let at = |reason: String| EvalError::At {
            expr: e.to_string(),
            reason,
        };
        Ok(match e {
            Expr::Num(x) => MSeries::constant(x.clone()),
            Expr::Ident(name) => match self.binding.get(name) {
                Ok(v) => MSeries::constant(v.clone()),
                Err(_) => MSeries::var(name),
            },
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Expr::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                match scalar(&den) {
                    Some(c) if c.is_zero() => return Err(at("division by zero".into())),
                    Some(c) => num.scale(&c.recip()),
                    None => num.mul(&inverse(&den, self.trunc).map_err(|x| at(x.to_string()))?),
                }
            }
            Expr::Pow(a, ex) => {
                let ex = &self.scalars(e, std::slice::from_ref(&**ex))?[0];
                let base = self.eval(a)?;
                if let Some(c) = scalar(&base) {
                    if !is_integer(ex) {
                        return Err(at("rational power of a constant".into()));
                    }
                    if c.is_zero() && ex.is_negative() {
                        return Err(at("division by zero".into()));
                    }
                    let k = ex
                        .to_integer()
                        .to_i32()
                        .ok_or_else(|| at("exponent too large".into()))?;
                    return Ok(MSeries::constant(num_traits::pow::Pow::pow(c, k)));
                }
                if is_integer(ex) {
                    let k = ex.to_integer();
                    let mag = k
                        .abs()
                        .to_u64()
                        .ok_or_else(|| at("exponent too large".into()))?;
                    let b = if k.is_negative() {
                        inverse(&base, self.trunc).map_err(|x| at(x.to_string()))?
                    } else {
                        base
                    };
                    if b.is_exact() {
                        b.pow_uint(mag)
                    } else {
                        capped(&b, self.trunc).pow_uint(mag)
                    }
                } else {
                    let caps = caps_for(&base, self.trunc);
                    let refs: Vec<(&str, i64)> =
                        caps.iter().map(|(v, t)| (v.as_str(), *t)).collect();
                    base.mv_pow_general_to(ex, &refs)
                        .map_err(|x| at(x.to_string()))?
                }
            }
            Expr::Res(v, body) => {
                let m = self.eval(body)?;
                if !m.vars().iter().any(|x| x == v) {
                    MSeries::zero()
                } else {
                    m.mv_res(&[v.as_str()]).map_err(|x| at(x.to_string()))?
                }
            }
            Expr::Call(name, args) => self.call(e, name, args)?,
        })
    }

    fn scalars(&self, e: &Expr, args: &[Expr]) -> Result<Vec<Q>, EvalError> {
        args.iter()
            .map(|a| {
                let v = self.eval(a)?;
                scalar(&v).ok_or_else(|| EvalError::At {
                    expr: e.to_string(),
                    reason: format!("argument `{a}` is not a constant"),
                })
            })
            .collect()
    }

    fn call(&self, e: &Expr, name: &str, args: &[Expr]) -> Result<MSeries, EvalError> {
        let arity = |n: usize| -> Result<(), EvalError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(EvalError::Arity {
                    name: name.into(),
                    expected: n,
                    got: args.len(),
                })
            }
        };
        let at = |reason: String| EvalError::At {
            expr: e.to_string(),
            reason,
        };
        if name == "exp" {
            arity(1)?;
            let a = self.eval(&args[0])?;
            return exp_m(&a, self.trunc).map_err(at);
        }
        let k = match builtin_arity(name) {
            Some(k) => k,
            None => return Err(EvalError::UnknownFunction(name.into())),
        };
        arity(k)?;
        let xs = self.scalars(e, args)?;
        let nat = |x: &Q| -> Result<u64, EvalError> {
            if is_integer(x) && !x.is_negative() {
                x.to_integer()
                    .to_u64()
                    .ok_or_else(|| at("argument too large".into()))
            } else {
                Err(at(format!(
                    "expected a nonnegative integer, got {}",
                    q_to_string(x)
                )))
            }
        };
        let big = |b: BigInt| qi(b);
        let v = match name {
            "floor" => big(floor_q(&xs[0])),
            "binom" => binom_general(&xs[0], nat(&xs[1])?),
            "T" => oracle::t_closed(nat(&xs[0])?, nat(&xs[1])?),
            "S" => oracle::s_closed(nat(&xs[0])?, nat(&xs[1])?),
            "N2" => oracle::eval_levs_sum(nat(&xs[0])?, nat(&xs[1])?, LevsVariant::Levs2),
            "N1" => oracle::eval_levs_sum(nat(&xs[0])?, nat(&xs[1])?, LevsVariant::Levs1),
            "omega" => big(oracle::enum_staircase_pairs(nat(&xs[0])?, false)),
            "omega_plus" => big(oracle::enum_staircase_pairs(nat(&xs[0])?, true)),
            "T1" => oracle::sum_t1(nat(&xs[0])?),
            "T2" => oracle::sum_t2(nat(&xs[0])?),
            "T3" => oracle::sum_t3(nat(&xs[0])?),
            "stirling2" => big(combinum::stirling2(nat(&xs[0])?, nat(&xs[1])?)),
            "ballot" => {
                let (x, y) = (nat(&xs[0])? as i64, nat(&xs[1])? as i64);
                big(combinum::ballot_phi(x, y).map_err(|r| at(r.to_string()))?)
            }
            "necklace" => {
                big(necklace_rank(nat(&xs[0])?, nat(&xs[1])?).map_err(|r| at(r.to_string()))?)
            }
            _ => unreachable!("arity table covers every builtin"),
        };
        Ok(MSeries::constant(v))
    }
}

/// Built-in functions with constant arguments and their arities.
pub const BUILTINS: [(&str, usize); 14] = [
    ("floor", 1),
    ("binom", 2),
    ("T", 2),
    ("S", 2),
    ("N2", 2),
    ("N1", 2),
    ("omega", 1),
    ("omega_plus", 1),
    ("T1", 1),
    ("T2", 1),
    ("T3", 1),
    ("stirling2", 2),
    ("ballot", 2),
    ("necklace", 2),
];

fn builtin_arity(name: &str) -> Option<usize> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, k)| *k)
}

/// Evaluates with every unbound identifier read as a series variable whose
/// window ends at exponent `trunc`.
pub fn eval(e: &Expr, binding: &ParamBinding, trunc: i64) -> Result<Value, EvalError> {
    eval_mseries(e, binding, trunc).map(Value::from_mseries)
}

pub fn eval_mseries(e: &Expr, binding: &ParamBinding, trunc: i64) -> Result<MSeries, EvalError> {
    let env = Env { binding, trunc };
    let m = env.eval(e)?;
    Ok(if m.is_exact() { m } else { capped(&m, trunc) })
}

/// Variable names and `(exponents, coefficient)` rows.
pub type Expansion = (Vec<String>, Vec<(Vec<i64>, Q)>);

/// Coefficients of `e` with every exponent in `[lo_v, order)`, in
/// exponent-lex order. The working window is widened until the result
/// covers the request.
pub fn expand(e: &Expr, binding: &ParamBinding, order: i64) -> Result<Expansion, EvalError> {
    let mut work = order;
    let m = loop {
        let m = eval_mseries(e, binding, work)?;
        let covered = m.trunc().iter().all(|t| t.is_none_or(|t| t >= order));
        if covered || work > order + 64 {
            break m;
        }
        work += 8;
    };
    let vars = m.vars().to_vec();
    let ranges: Vec<std::ops::Range<i64>> = m
        .lower_bounds()
        .iter()
        .zip(m.trunc())
        .map(|(lo, t)| *lo..t.map_or(order, |t| t.min(order)))
        .collect();
    let mut out = Vec::new();
    if vars.is_empty() {
        out.push((vec![], m.constant_term().unwrap_or_else(|_| Q::zero())));
        return Ok((vars, out));
    }
    let mut idx: Vec<i64> = ranges.iter().map(|r| r.start).collect();
    if ranges.iter().any(|r| r.is_empty()) {
        return Ok((vars, out));
    }
    loop {
        out.push((idx.clone(), m.coeff(&idx).unwrap_or_else(|_| Q::zero())));
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok((vars, out));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < ranges[k].end {
                break;
            }
            idx[k] = ranges[k].start;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::qr;

    fn ev(s: &str, trunc: i64) -> Value {
        eval(&parse(s).unwrap(), &ParamBinding::new(), trunc).unwrap()
    }

    #[test]
    fn parsing() {
        let e = parse("res_w((1+w)^4 / w^3)").unwrap();
        assert!(matches!(e, Expr::Res(ref v, _) if v == "w"));
        assert!(parse("1/(1-u1-u2)").is_ok());
        let err = parse("res_w(").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));
        let err = parse("1 +\n  * 2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert_eq!(
            parse("-w^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(
                Box::new(Expr::Ident("w".into())),
                Box::new(Expr::Num(q(2)))
            )))
        );
        assert_eq!(parse("1/2").unwrap(), Expr::Num(qr(1, 2)));
        let e = parse("x/2/3").unwrap();
        assert!(matches!(e, Expr::Div(ref a, _) if matches!(**a, Expr::Div(..))));
        assert!(parse("w^*").is_err());
        assert!(parse("(1").is_err());
        assert!(parse("2 3").is_err());
    }

    #[test]
    fn round_trip() {
        for s in [
            "res_w((1+w)^4/w^3)",
            "(1-4*w)^(-1/2)",
            "x/2/3",
            "x/(2/3)",
            "-(a+b)*c - -d",
            "(-w)^2 + 1/2*w",
            "binom(n, 2) - floor(7/2)",
            "res_t(res_u(1/(t-u)))",
            "(w^2)^3",
            "(1+w)^n/w^(k + 1)",
            "w^(-1)",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(ev("res_w((1+w)^4 / w^3)", 10), Value::Rational(q(6)));
        assert_eq!(
            ev("res_t((1-t)^(-1)*(1+t)^3 / t^2)", 10),
            Value::Rational(q(4))
        );
        let Value::Series(s) = ev("exp(w)", 5) else {
            panic!()
        };
        let want = [q(1), q(1), qr(1, 2), qr(1, 6), qr(1, 24)];
        for (k, c) in want.iter().enumerate() {
            assert_eq!(&s.coeff(k as i64).unwrap(), c);
        }
        assert!(s.coeff(5).is_err());
        let b = ParamBinding::new().with_int("n", 5).with_int("k", 2);
        let v = eval(&parse("res_w((1+w)^n / w^(k+1))").unwrap(), &b, 8).unwrap();
        assert_eq!(v, Value::Rational(q(10)));
        assert!(eval(&parse("w^u").unwrap(), &b, 8).is_err());
        let v = eval(&parse("binom(n, k) + T(3, 1)").unwrap(), &b, 8).unwrap();
        assert_eq!(v, Value::Rational(q(10) + oracle::t_closed(3, 1)));
        assert!(eval(&parse("nosuch(1)").unwrap(), &b, 8).is_err());
        assert!(eval(&parse("(2+w)^(1/2)").unwrap(), &b, 8).is_err());
    }

    #[test]
    fn expansions() {
        let (_, c) = expand(&parse("(1-4*w)^(-1/2)").unwrap(), &ParamBinding::new(), 5).unwrap();
        let vals: Vec<Q> = c.into_iter().map(|(_, x)| x).collect();
        assert_eq!(vals, vec![q(1), q(2), q(6), q(20), q(70)]);
        let (vars, c) =
            expand(&parse("1/(1-u1)/(1-u2)").unwrap(), &ParamBinding::new(), 2).unwrap();
        assert_eq!(vars, vec!["u1".to_string(), "u2".to_string()]);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|(_, x)| x.is_one()));
        let (_, c) = expand(&parse("w^(-1)+1").unwrap(), &ParamBinding::new(), 3).unwrap();
        let exps: Vec<i64> = c.iter().map(|(e, _)| e[0]).collect();
        assert_eq!(exps, vec![-1, 0, 1, 2]);
        let (_, c) = expand(&parse("exp(w)/w^2").unwrap(), &ParamBinding::new(), 3).unwrap();
        assert_eq!(c.last().unwrap(), &(vec![2], qr(1, 24)));
    }
}
