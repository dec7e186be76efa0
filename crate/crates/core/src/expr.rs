//! Expressions over a presentation's variables and coefficient generators.
//!
//! ```text
//! sum     := signed (('+' | '-') signed)*
//! signed  := '-' signed | product
//! product := power ('*' power)*
//! power   := atom ('^' '-'? INT)?
//! atom    := INT ('/' INT)? | IDENT | '(' sum ')'
//! ```
//!
//! `^` binds tighter than `*`, `*` tighter than unary minus, unary minus
//! tighter than `+`. Products keep their order. Juxtaposition is an error.
//! Negative exponents are accepted only on unit constants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Poly, SkewPbw};
use crate::coeff::{CoeffElem, CoeffRing};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

const EXPONENT_CAP: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Var(usize),
    Gen(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Names visible to the parser.
pub struct Scope<'a> {
    ring: &'a Arc<CoeffRing>,
    vars: &'a [String],
}

impl<'a> Scope<'a> {
    pub fn of(p: &'a Presentation) -> Self {
        Scope { ring: p.ring(), vars: p.var_names() }
    }

    pub fn ring_only(ring: &'a Arc<CoeffRing>) -> Self {
        Scope { ring, vars: &[] }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Lexer> {
    let mut toks = vec![];
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            col += k - start;
            toks.push((Tok::Int(s.parse().expect("digits")), l0, c0));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            col += k - start;
            toks.push((Tok::Ident(chars[start..k].iter().collect()), l0, c0));
            continue;
        }
        if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), l0, c0));
            col += 1;
            k += 1;
            continue;
        }
        return Err(Error::Syntax { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks, pos: 0 })
}

struct Parser<'s, 'a> {
    lx: Lexer,
    scope: &'s Scope<'a>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> &Tok {
        &self.lx.toks[self.lx.pos].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (_, line, col) = self.lx.toks[self.lx.pos];
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.lx.toks[self.lx.pos].0.clone();
        if t != Tok::End {
            self.lx.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.signed()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.signed()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.signed()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn signed(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.signed()?)))
        } else {
            self.product()
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.power()?;
        while self.eat('*') {
            e = Expr::Mul(Box::new(e), Box::new(self.power()?));
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.bump() {
            Tok::Int(v) => {
                let v: i64 = match i64::try_from(v) {
                    Ok(v) if (v as u64) < EXPONENT_CAP => v,
                    _ => {
                        self.lx.pos -= 1;
                        return self.err(format!("exponent exceeds the cap {EXPONENT_CAP}"));
                    }
                };
                Ok(Expr::Pow(Box::new(base), if neg { -v } else { v }))
            }
            _ => {
                self.lx.pos = self.lx.pos.saturating_sub(1);
                self.err("expected an integer exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.eat('/') {
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            Ok(Expr::Num(BigRational::new(n, d)))
                        }
                        Tok::Int(_) => self.err("division by zero"),
                        _ => self.err("expected an integer denominator"),
                    }
                } else {
                    Ok(Expr::Num(BigRational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                if let Some(i) = self.scope.vars.iter().position(|v| *v == name) {
                    self.bump();
                    Ok(Expr::Var(i))
                } else if let Some(g) = self.scope.ring.generator_index(&name) {
                    self.bump();
                    Ok(Expr::Gen(g))
                } else {
                    self.err(format!("unknown identifier `{name}`"))
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

pub fn parse(src: &str, scope: &Scope) -> Result<Expr> {
    let mut p = Parser { lx: lex(src)?, scope };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::Sym(c) => {
            let c = *c;
            p.err(format!("unexpected `{c}`"))
        }
        _ => p.err("expected an operator (juxtaposition is not multiplication)"),
    }
}

/// Evaluates to a coefficient; variables are rejected.
pub fn eval_coeff(e: &Expr, ring: &Arc<CoeffRing>) -> Result<CoeffElem> {
    Ok(match e {
        Expr::Num(v) => CoeffElem::from_rational(ring, v)?,
        Expr::Gen(g) => CoeffElem::generator(ring, *g),
        Expr::Var(i) => return Err(Error::Eval(format!("variable #{} in a coefficient expression", i + 1))),
        Expr::Neg(a) => -&eval_coeff(a, ring)?,
        Expr::Add(a, b) => &eval_coeff(a, ring)? + &eval_coeff(b, ring)?,
        Expr::Sub(a, b) => &eval_coeff(a, ring)? - &eval_coeff(b, ring)?,
        Expr::Mul(a, b) => &eval_coeff(a, ring)? * &eval_coeff(b, ring)?,
        Expr::Pow(a, k) => eval_coeff(a, ring)?.pow(*k)?,
    })
}

/// Evaluates in the algebra, folding products with ⋆.
pub fn eval(e: &Expr, alg: &SkewPbw) -> Result<Poly> {
    match e {
        Expr::Num(_) | Expr::Gen(_) => Ok(alg.constant(eval_coeff(e, alg.ring())?)),
        Expr::Var(i) => Ok(alg.var(*i)),
        Expr::Neg(a) => Ok(eval(a, alg)?.neg()),
        Expr::Add(a, b) => eval(a, alg)?.add(&eval(b, alg)?),
        Expr::Sub(a, b) => eval(a, alg)?.sub(&eval(b, alg)?),
        Expr::Mul(a, b) => alg.mul(&eval(a, alg)?, &eval(b, alg)?),
        Expr::Pow(a, k) => {
            let base = eval(a, alg)?;
            if *k >= 0 {
                return alg.pow(&base, *k as u32);
            }
            match base.constant_value() {
                Some(c) if c.is_unit() => Ok(alg.constant(c.pow(*k)?)),
                _ => Err(Error::Eval("negative exponent on a non-unit".into())),
            }
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(src: &str, alg: &SkewPbw) -> Result<Poly> {
    eval(&parse(src, &Scope::of(alg.presentation()))?, alg)
}

pub fn eval_coeff_str(src: &str, ring: &Arc<CoeffRing>) -> Result<CoeffElem> {
    eval_coeff(&parse(src, &Scope::ring_only(ring))?, ring)
}
