//! Module-definition interchange: a line-oriented text format and a JSON
//! mirror. Both list basis elements with degrees and the full coaction, with
//! left factors as ξ-basis monomials of A(n)_*.
//!
//! ```text
//! module bo_1
//! over 2
//! basis 4
//! 0 0 1
//! 1 4 xb1^4
//! …
//! coaction
//! 1 0 xi1^4
//! …
//! end
//! ```
//! A coaction line `i r m` means the term `m ⊗ b_r` occurs in ψ(b_i).

use crate::comodule::Comodule;
use crate::xi::XiMonomial;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDef {
    pub name: String,
    pub over: usize,
    pub degrees: Vec<u64>,
    pub labels: Vec<String>,
    /// (source, target, left ξ-monomial) triples.
    pub coaction: Vec<(usize, usize, XiMonomial)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ModuleDef {
    pub fn from_comodule(c: &Comodule) -> Self {
        let mut coaction = vec![];
        for i in 0..c.dim() {
            for (&r, p) in c.coaction(i) {
                for m in &p.0 {
                    coaction.push((i, r, m.clone()));
                }
            }
        }
        Self {
            name: c.name.clone(),
            over: c.over,
            degrees: (0..c.dim()).map(|i| c.degree(i)).collect(),
            labels: (0..c.dim()).map(|i| c.elem_string(i)).collect(),
            coaction,
        }
    }

    /// The trivial comodule F₂ in degree 0.
    pub fn trivial(over: usize) -> Self {
        Self { name: "F2".into(), over, degrees: vec![0], labels: vec!["1".into()], coaction: vec![(0, 0, XiMonomial::one())] }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("module {}\nover {}\nbasis {}\n", self.name, self.over, self.dim());
        for (i, (d, l)) in self.degrees.iter().zip(&self.labels).enumerate() {
            s += &format!("{i} {d} {l}\n");
        }
        s += "coaction\n";
        for (i, r, m) in &self.coaction {
            s += &format!("{i} {r} {}\n", m.xi_string());
        }
        s += "end\n";
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line, msg: &str| ParseError { line, msg: msg.into() };
        let mut next = |want: &str| -> Result<(usize, String), ParseError> {
            let (n, l) = lines.next().ok_or_else(|| err(0, &format!("missing {want}")))?;
            let rest = l.strip_prefix(want).ok_or_else(|| err(n, &format!("expected {want}")))?;
            Ok((n, rest.trim().to_string()))
        };
        let (_, name) = next("module")?;
        let (n, over) = next("over")?;
        let over = over.parse().map_err(|_| err(n, "bad level"))?;
        let (n, dim) = next("basis")?;
        let dim: usize = dim.parse().map_err(|_| err(n, "bad dimension"))?;
        let mut degrees = vec![];
        let mut labels = vec![];
        for i in 0..dim {
            let (n, l) = next("")?;
            let mut it = l.splitn(3, ' ');
            let idx: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad index"))?;
            if idx != i {
                return Err(err(n, "basis out of order"));
            }
            degrees.push(it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad degree"))?);
            labels.push(it.next().unwrap_or("").to_string());
        }
        next("coaction")?;
        let mut coaction = vec![];
        loop {
            let (n, l) = next("")?;
            if l == "end" {
                break;
            }
            let mut it = l.splitn(3, ' ');
            let i: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad source"))?;
            let r: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad target"))?;
            let m = XiMonomial::parse(it.next().unwrap_or("")).ok_or_else(|| err(n, "bad monomial"))?;
            if i >= dim || r >= dim {
                return Err(err(n, "index out of range"));
            }
            coaction.push((i, r, m));
        }
        Ok(Self { name, over, degrees, labels, coaction })
    }
}
