//! Element literals: `r[2,-1]`, `t1`, `hbar`, `b1`, rational constants,
//! `+`, `-`, `*`, `^` and parentheses.
//!
//! The printers of [`AbelianElement`] and [`Poly`] emit this grammar, so
//! parsing their output gives back the same value.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian_algebra::{multiply, AbelianElement, Context, Mode};
use crate::error::{Error, Result};
use crate::symbolic::{Poly, VarSpace, Q};

/// Syntax tree of an element literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Q),
    Var { name: String, pos: usize },
    R(Vec<i64>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Int(digits.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect()),
                pos,
            ));
        } else if "+-*^()[],/".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let pos = self.pos();
        let n = self.int()?;
        let v: i64 = n.try_into().map_err(|_| Error::Parse {
            pos,
            msg: "integer out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            let e: u32 = self.int()?.try_into().map_err(|_| Error::Parse {
                pos,
                msg: "exponent out of range".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                if self.eat('/') {
                    let dpos = self.pos();
                    let d = self.int()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse {
                            pos: dpos,
                            msg: "zero denominator".into(),
                        });
                    }
                    return Ok(Expr::Num(Q::new(n, d)));
                }
                Ok(Expr::Num(Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "r" && self.eat('[') {
                    let mut coords = vec![self.small_int()?];
                    while self.eat(',') {
                        coords.push(self.small_int()?);
                    }
                    self.expect(']')?;
                    return Ok(Expr::R(coords));
                }
                Ok(Expr::Var { name, pos })
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(_) => self.fail("unexpected token"),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parses an element literal into a syntax tree.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
    };
    if p.peek().is_none() {
        return p.fail("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail("trailing input");
    }
    Ok(e)
}

fn lookup_var(space: VarSpace, mode: Option<Mode>, name: &str, pos: usize) -> Result<Poly> {
    let v = space.lookup(name).ok_or_else(|| Error::Parse {
        pos,
        msg: format!("unknown variable {name:?}"),
    })?;
    if mode == Some(Mode::Classical) && v == space.hbar() {
        return Err(Error::Parse {
            pos,
            msg: "hbar is not available in the classical algebra".into(),
        });
    }
    Ok(Poly::var(space, v))
}

/// Evaluates `e` in the algebra of `ctx`; `env` binds extra names.
pub fn eval_element(
    e: &Expr,
    ctx: &Arc<Context>,
    env: &BTreeMap<String, AbelianElement>,
) -> Result<AbelianElement> {
    let go = |x: &Expr| eval_element(x, ctx, env);
    Ok(match e {
        Expr::Num(c) => AbelianElement::from_poly(ctx, Poly::constant(ctx.space(), c.clone())),
        Expr::Var { name, pos } => match env.get(name) {
            Some(x) => x.recontext(ctx)?,
            None => AbelianElement::from_poly(
                ctx,
                lookup_var(ctx.space(), Some(ctx.mode()), name, *pos)?,
            ),
        },
        Expr::R(coords) => {
            if coords.len() != ctx.rank() {
                return Err(Error::Dimension {
                    expected: ctx.rank(),
                    got: coords.len(),
                });
            }
            AbelianElement::r(ctx, coords)
        }
        Expr::Neg(x) => go(x)?.neg(),
        Expr::Add(x, y) => go(x)?.add(&go(y)?)?,
        Expr::Sub(x, y) => go(x)?.sub(&go(y)?)?,
        Expr::Mul(x, y) => multiply(&go(x)?, &go(y)?)?,
        Expr::Pow(x, n) => go(x)?.pow(*n)?,
    })
}

/// Parses and evaluates an element of the algebra of `ctx`.
pub fn parse_element(src: &str, ctx: &Arc<Context>) -> Result<AbelianElement> {
    eval_element(&parse_expr(src)?, ctx, &BTreeMap::new())
}

fn eval_poly(e: &Expr, space: VarSpace) -> Result<Poly> {
    let go = |x: &Expr| eval_poly(x, space);
    Ok(match e {
        Expr::Num(c) => Poly::constant(space, c.clone()),
        Expr::Var { name, pos } => lookup_var(space, None, name, *pos)?,
        Expr::R(_) => {
            return Err(Error::Invalid(
                "r[...] is not allowed in a polynomial".into(),
            ));
        }
        Expr::Neg(x) => -go(x)?,
        Expr::Add(x, y) => go(x)? + go(y)?,
        Expr::Sub(x, y) => go(x)? - go(y)?,
        Expr::Mul(x, y) => go(x)? * go(y)?,
        Expr::Pow(x, n) => go(x)?.pow(*n),
    })
}

/// Parses a polynomial in the variables of `space`.
pub fn parse_poly(src: &str, space: VarSpace) -> Result<Poly> {
    eval_poly(&parse_expr(src)?, space)
}
