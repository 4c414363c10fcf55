//! Expressions naming simplicial sets, e.g. `desing(sd(sd(sphere(2))))`.
//!
//! ```text
//! expr := delta(n) | boundary(n) | sphere(n) | collapse_face(n, k) | strip(m)
//!       | sd(expr) | barratt(expr) | cen(expr) | desing(expr)
//!       | disjoint(expr, expr)
//! ```

use std::fmt;
use std::sync::Arc;

use crate::builders;
use crate::desing::{cen_default, desingularize};
use crate::error::{Error, Result};
use crate::sset::FiniteSimplicialSet;
use crate::subdiv::{barratt, sd};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Delta(usize),
    Boundary(usize),
    Sphere(usize),
    CollapseFace(usize, usize),
    Strip(usize),
    Sd(Box<Expr>),
    Barratt(Box<Expr>),
    Cen(Box<Expr>),
    Desing(Box<Expr>),
    Disjoint(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Delta(n) => write!(f, "delta({n})"),
            Expr::Boundary(n) => write!(f, "boundary({n})"),
            Expr::Sphere(n) => write!(f, "sphere({n})"),
            Expr::CollapseFace(n, k) => write!(f, "collapse_face({n},{k})"),
            Expr::Strip(m) => write!(f, "strip({m})"),
            Expr::Sd(e) => write!(f, "sd({e})"),
            Expr::Barratt(e) => write!(f, "barratt({e})"),
            Expr::Cen(e) => write!(f, "cen({e})"),
            Expr::Desing(e) => write!(f, "desing({e})"),
            Expr::Disjoint(a, b) => write!(f, "disjoint({a},{b})"),
        }
    }
}

/// Limits that keep evaluation at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_rank: usize,
    pub max_sd_depth: usize,
    pub max_strip: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_rank: 6,
            max_sd_depth: 3,
            max_strip: 64,
        }
    }
}

impl Bounds {
    pub fn unlimited() -> Self {
        Bounds {
            max_rank: usize::MAX,
            max_sd_depth: usize::MAX,
            max_strip: usize::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(usize),
    Open,
    Close,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((column, Token::Ident(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse().map_err(|_| Error::Expr {
                column,
                message: format!("number {digits} is too large"),
            })?;
            out.push((column, Token::Number(n)));
        } else {
            let t = match c {
                '(' => Token::Open,
                ')' => Token::Close,
                ',' => Token::Comma,
                _ => {
                    return Err(Error::Expr {
                        column,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((column, t));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Expr {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some((_, t)) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn number(&mut self) -> Result<usize> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Number(n))) => {
                self.pos += 1;
                Ok(*n)
            }
            _ => self.fail("expected a number"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let name = match self.tokens.get(self.pos) {
            Some((_, Token::Ident(name))) => name.clone(),
            _ => return self.fail("expected a builder name"),
        };
        let name_pos = self.pos;
        self.pos += 1;
        self.expect(Token::Open, "`(`")?;
        let e = match name.as_str() {
            "delta" => Expr::Delta(self.number()?),
            "boundary" => Expr::Boundary(self.number()?),
            "sphere" => Expr::Sphere(self.number()?),
            "strip" => Expr::Strip(self.number()?),
            "collapse_face" => {
                let n = self.number()?;
                self.expect(Token::Comma, "`,`")?;
                Expr::CollapseFace(n, self.number()?)
            }
            "sd" => Expr::Sd(Box::new(self.expr()?)),
            "barratt" => Expr::Barratt(Box::new(self.expr()?)),
            "cen" => Expr::Cen(Box::new(self.expr()?)),
            "desing" => Expr::Desing(Box::new(self.expr()?)),
            "disjoint" => {
                let a = self.expr()?;
                self.expect(Token::Comma, "`,`")?;
                Expr::Disjoint(Box::new(a), Box::new(self.expr()?))
            }
            _ => {
                self.pos = name_pos;
                return self.fail(format!("unknown builder `{name}`"));
            }
        };
        self.expect(Token::Close, "`)`")?;
        Ok(e)
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Deepest nesting of `sd`.
    pub fn sd_depth(&self) -> usize {
        match self {
            Expr::Sd(e) => 1 + e.sd_depth(),
            Expr::Barratt(e) | Expr::Cen(e) | Expr::Desing(e) => e.sd_depth(),
            Expr::Disjoint(a, b) => a.sd_depth().max(b.sd_depth()),
            _ => 0,
        }
    }

    pub fn check_bounds(&self, bounds: &Bounds) -> Result<()> {
        let rank = |n: usize| {
            if n > bounds.max_rank {
                Err(Error::Bounds(format!("rank {n} exceeds {} in {self}", bounds.max_rank)))
            } else {
                Ok(())
            }
        };
        match self {
            Expr::Delta(n) | Expr::Boundary(n) | Expr::Sphere(n) => rank(*n)?,
            Expr::CollapseFace(n, k) => {
                rank(*n)?;
                if k > n {
                    return Err(Error::Bounds(format!("collapse_face needs k <= n in {self}")));
                }
            }
            Expr::Strip(m) if *m > bounds.max_strip => {
                return Err(Error::Bounds(format!("strip length {m} exceeds {}", bounds.max_strip)));
            }
            Expr::Strip(_) => {}
            Expr::Sd(e) | Expr::Barratt(e) | Expr::Cen(e) | Expr::Desing(e) => e.check_bounds(bounds)?,
            Expr::Disjoint(a, b) => {
                a.check_bounds(bounds)?;
                b.check_bounds(bounds)?;
            }
        }
        if self.sd_depth() > bounds.max_sd_depth {
            return Err(Error::Bounds(format!(
                "subdivision depth {} exceeds {}",
                self.sd_depth(),
                bounds.max_sd_depth
            )));
        }
        Ok(())
    }

    pub fn eval(&self) -> Result<Arc<FiniteSimplicialSet>> {
        Ok(match self {
            Expr::Delta(n) => Arc::new(builders::delta(*n)),
            Expr::Boundary(n) => Arc::new(builders::boundary(*n)),
            Expr::Sphere(n) => Arc::new(builders::sphere(*n)),
            Expr::CollapseFace(n, k) => Arc::new(builders::collapse_face(*n, *k)?),
            Expr::Strip(m) => Arc::new(builders::strip(*m)?),
            Expr::Sd(e) => sd(e.eval()?)?.set,
            Expr::Barratt(e) => Arc::new(barratt(&*e.eval()?)?),
            Expr::Cen(e) => cen_default(e.eval()?)?.quotient,
            Expr::Desing(e) => desingularize(e.eval()?)?.quotient().clone(),
            Expr::Disjoint(a, b) => Arc::new(a.eval()?.disjoint_union(&*b.eval()?)?),
        })
    }
}

/// Parses, checks bounds and evaluates.
pub fn build(text: &str, bounds: &Bounds) -> Result<Arc<FiniteSimplicialSet>> {
    let e = parse(text)?;
    e.check_bounds(bounds)?;
    e.eval()
}
