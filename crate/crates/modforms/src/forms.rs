//! Two-variable forms as polynomials in `c₄, c₆, c̄₄, c̄₆`, plus a small
//! expression reader used to transcribe closed formulas.

use exactcore::{int, BigInt, GradedPoly, Rat, Ring};
use std::str::FromStr;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// ℚ[c₄, c₆, c̄₄, c̄₆] with topological degrees 8, 12, 8, 12.
pub fn two_var_ring() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::new(&[("c4", 8), ("c6", 12), ("cb4", 8), ("cb6", 12)])).clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TwoVarForm {
    pub poly: GradedPoly,
}

impl TwoVarForm {
    pub fn from_poly(poly: GradedPoly) -> Self {
        assert!(Arc::ptr_eq(poly.ring(), &two_var_ring()) || **poly.ring() == *two_var_ring());
        TwoVarForm { poly }
    }

    pub fn zero() -> Self {
        Self { poly: GradedPoly::zero(&two_var_ring()) }
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rat) -> Self {
        Self { poly: GradedPoly::constant(&two_var_ring(), c) }
    }

    fn var(i: usize) -> Self {
        Self { poly: GradedPoly::var(&two_var_ring(), i) }
    }

    pub fn c4() -> Self {
        Self::var(0)
    }

    pub fn c6() -> Self {
        Self::var(1)
    }

    pub fn cb4() -> Self {
        Self::var(2)
    }

    pub fn cb6() -> Self {
        Self::var(3)
    }

    /// `Δ = (c₄³ − c₆²)/1728`.
    pub fn delta() -> Self {
        (Self::c4().pow(3) - Self::c6().pow(2)).scale(&Rat::new(1.into(), 1728.into()))
    }

    pub fn delta_bar() -> Self {
        (Self::cb4().pow(3) - Self::cb6().pow(2)).scale(&Rat::new(1.into(), 1728.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self { poly: self.poly.scale(c) }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { poly: self.poly.pow(e) }
    }

    /// Topological degree, when homogeneous.
    pub fn degree(&self) -> Option<i64> {
        self.poly.homogeneous_degree()
    }

    /// Exchange barred and unbarred generators.
    pub fn swap_bars(&self) -> Self {
        Self { poly: self.poly.relabel(&two_var_ring(), &[2, 3, 0, 1]) }
    }

    /// Image under `c₆ ↦ −c₆, c̄₆ ↦ −c̄₆`; the forms of interest are eigenvectors.
    pub fn c6_flip(&self) -> Self {
        let terms = self.poly.terms().iter().map(|(m, c)| (m.clone(), if (m[1] + m[3]) % 2 == 1 { -c } else { c.clone() }));
        Self { poly: GradedPoly::from_terms(&two_var_ring(), terms) }
    }
}

impl fmt::Display for TwoVarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for TwoVarForm {
            type Output = TwoVarForm;
            fn $m(self, o: TwoVarForm) -> TwoVarForm {
                TwoVarForm { poly: $tr::$m(&self.poly, &o.poly) }
            }
        }
        impl<'a> $tr<&'a TwoVarForm> for &'a TwoVarForm {
            type Output = TwoVarForm;
            fn $m(self, o: &'a TwoVarForm) -> TwoVarForm {
                TwoVarForm { poly: $tr::$m(&self.poly, &o.poly) }
            }
        }
        impl<'a> $tr<&'a TwoVarForm> for TwoVarForm {
            type Output = TwoVarForm;
            fn $m(self, o: &'a TwoVarForm) -> TwoVarForm {
                TwoVarForm { poly: $tr::$m(&self.poly, &o.poly) }
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for TwoVarForm {
    type Output = TwoVarForm;
    fn neg(self) -> TwoVarForm {
        TwoVarForm { poly: -self.poly }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unknown name {0:?}")]
    Unknown(String),
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let b = s.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax { pos: i, msg: format!("unexpected {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    env: &'a HashMap<String, TwoVarForm>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn err(&self, msg: &str) -> ExprError {
        let pos = self.toks.get(self.pos).map(|t| t.0).unwrap_or(usize::MAX);
        ExprError::Syntax { pos, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<TwoVarForm, ExprError> {
        let mut acc = TwoVarForm::zero();
        let mut sign = 1;
        if let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            sign = if *c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc - t } else { acc + t };
            match self.peek() {
                Some(Tok::Sym('+')) => sign = 1,
                Some(Tok::Sym('-')) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<TwoVarForm, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let Some(Tok::Num(n)) = self.peek().cloned() else { return Err(self.err("expected divisor")) };
                    self.pos += 1;
                    acc = acc.scale(&Rat::from_integer(BigInt::from_str(&n).expect("digits")).recip());
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(')) => acc = acc * self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<TwoVarForm, ExprError> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else { return Err(self.err("expected exponent")) };
            self.pos += 1;
            return Ok(base.pow(n.parse().map_err(|_| self.err("bad exponent"))?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TwoVarForm, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(TwoVarForm::constant(Rat::from_integer(BigInt::from_str(&n).expect("digits"))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.env.get(&name).cloned().ok_or(ExprError::Unknown(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

/// Names always available: `c4 c6 cb4 cb6 D Db`.
pub fn base_env() -> HashMap<String, TwoVarForm> {
    HashMap::from([
        ("c4".to_string(), TwoVarForm::c4()),
        ("c6".to_string(), TwoVarForm::c6()),
        ("cb4".to_string(), TwoVarForm::cb4()),
        ("cb6".to_string(), TwoVarForm::cb6()),
        ("D".to_string(), TwoVarForm::delta()),
        ("Db".to_string(), TwoVarForm::delta_bar()),
    ])
}

/// Evaluate an expression such as `(5 f1 c6 + 21 f2 c4)/8` or
/// `f9 - 212/315 c4 f4` against named forms. Juxtaposition multiplies;
/// `/n` after a factor divides by the integer `n`.
pub fn eval_expr(s: &str, env: &HashMap<String, TwoVarForm>) -> Result<TwoVarForm, ExprError> {
    let mut p = Parser { toks: lex(s)?, pos: 0, env };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
