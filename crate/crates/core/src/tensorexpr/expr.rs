//! A small expression language over named maps.
//!
//! ```text
//! expr   := term ( ('∘' | 'o') term )*
//! term   := atom ( ('⊗' | 'x') atom )*
//! atom   := NAME | 'id' '^' INT | '(' expr ')'
//! ```
//!
//! `f ∘ g` applies `g` first. Tensor binds tighter than composition.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactmat::Scalar;

use super::map::TensorMap;

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapExpr {
    Name { name: String, pos: usize },
    Identity(usize),
    Compose(Box<MapExpr>, Box<MapExpr>),
    Tensor(Box<MapExpr>, Box<MapExpr>),
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Name { name, .. } => write!(f, "{name}"),
            MapExpr::Identity(k) => write!(f, "id^{k}"),
            MapExpr::Compose(a, b) => write!(f, "({a} ∘ {b})"),
            MapExpr::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
        }
    }
}

/// Named generators plus the dimension used for `id^k`.
#[derive(Clone, Debug)]
pub struct ExprEnv<T: Scalar> {
    pub n: usize,
    pub maps: BTreeMap<String, TensorMap<T>>,
}

impl<T: Scalar> ExprEnv<T> {
    pub fn new(n: usize) -> Self {
        ExprEnv { n, maps: BTreeMap::new() }
    }

    pub fn insert(&mut self, name: &str, map: TensorMap<T>) {
        self.maps.insert(name.to_string(), map);
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Int(usize),
    Compose,
    Tensor,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '∘' => out.push((Tok::Compose, start)),
            '⊗' => out.push((Tok::Tensor, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::Open, start)),
            ')' => out.push((Tok::Close, start)),
            c if c.is_ascii_digit() => {
                while k + 1 < chars.len() && chars[k + 1].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..=k].iter().collect();
                let v = digits
                    .parse()
                    .map_err(|_| Error::Syntax { pos: start, msg: format!("integer `{digits}` too large") })?;
                out.push((Tok::Int(v), start));
            }
            c if c.is_alphabetic() || c == '_' => {
                while k + 1 < chars.len() && (chars[k + 1].is_alphanumeric() || matches!(chars[k + 1], '_' | '\'')) {
                    k += 1;
                }
                let word: String = chars[start..=k].iter().collect();
                out.push(match word.as_str() {
                    "o" => (Tok::Compose, start),
                    "x" => (Tok::Tensor, start),
                    _ => (Tok::Name(word), start),
                });
            }
            other => return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{other}`") }),
        }
        k += 1;
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
        self.toks.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn fail<R>(&self, msg: &str) -> Result<R> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<MapExpr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Tok::Compose) {
            self.at += 1;
            let rhs = self.term()?;
            lhs = MapExpr::Compose(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<MapExpr> {
        let mut lhs = self.atom()?;
        while self.peek() == Some(&Tok::Tensor) {
            self.at += 1;
            let rhs = self.atom()?;
            lhs = MapExpr::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<MapExpr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Name(name)) if name == "id" => {
                self.at += 1;
                if self.peek() != Some(&Tok::Caret) {
                    return self.fail("expected `^` after `id`");
                }
                self.at += 1;
                match self.peek() {
                    Some(&Tok::Int(k)) => {
                        self.at += 1;
                        Ok(MapExpr::Identity(k))
                    }
                    _ => self.fail("expected an integer exponent"),
                }
            }
            Some(Tok::Name(name)) => {
                self.at += 1;
                Ok(MapExpr::Name { name, pos })
            }
            Some(Tok::Open) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.fail("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => self.fail("expected a name, `id^k` or `(`"),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parse without evaluating.
pub fn parse_map_expr(text: &str) -> Result<MapExpr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

impl MapExpr {
    pub fn eval<T: Scalar>(&self, env: &ExprEnv<T>) -> Result<TensorMap<T>> {
        match self {
            MapExpr::Name { name, .. } => env.maps.get(name).cloned().ok_or_else(|| Error::UnknownName(name.clone())),
            MapExpr::Identity(k) => Ok(TensorMap::id_power(env.n, *k)),
            MapExpr::Compose(f, g) => g.eval(env)?.then(&f.eval(env)?),
            MapExpr::Tensor(f, g) => Ok(f.eval(env)?.tensor(&g.eval(env)?)),
        }
    }
}

/// Parse and evaluate in one step.
pub fn parse_expr<T: Scalar>(text: &str, env: &ExprEnv<T>) -> Result<TensorMap<T>> {
    parse_map_expr(text)?.eval(env)
}
