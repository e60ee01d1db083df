//! Sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries its ring (an ordered list of named, graded
//! variables). Terms are kept in a map from exponent vectors to nonzero
//! coefficients; iteration for output uses graded-lex order, highest first,
//! with the variable index breaking ties.

use crate::rat::{rat_display, rat_to_string, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Var {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<Var>,
}

impl Ring {
    pub fn new(vars: &[(&str, i64)]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars
                .iter()
                .map(|(n, d)| Var { name: n.to_string(), degree: *d })
                .collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn degree(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.vars).map(|(e, v)| *e as i64 * v.degree).sum()
    }
}

pub type Mono = Vec<u32>;

/// Graded-lex comparison: weighted degree first, then lexicographic on the
/// exponent vector (earlier variables dominate).
pub fn grlex_cmp(ring: &Ring, a: &[u32], b: &[u32]) -> Ordering {
    ring.degree(a).cmp(&ring.degree(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug)]
pub struct GradedPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Mono, Rat>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.terms == o.terms
    }
}

impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn monomial(ring: &Arc<Ring>, exps: Mono, c: Rat) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        GradedPoly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, Rat::one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Self {
        let i = ring.index_of(name).unwrap_or_else(|| panic!("no variable {name}"));
        Self::var(ring, i)
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rat> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|e| *e == 0))
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.ring.nvars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring,
            "polynomials live in different rings"
        );
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Weighted degree of each term; `None` if the terms disagree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| self.ring.degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn retain(&self, f: impl Fn(&[u32], &Rat) -> bool) -> Self {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| f(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Evaluate the ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[GradedPoly]) -> GradedPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .expect("substitution needs at least one image");
        let mut cache: Vec<Vec<GradedPoly>> = vec![vec![GradedPoly::one(&target)]; images.len()];
        let mut out = GradedPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = out + t;
        }
        out
    }

    /// Re-express in a ring with the same variables in a possibly different
    /// position, using `index_map[i]` as the target index of variable `i`.
    pub fn relabel(&self, target: &Arc<Ring>, index_map: &[usize]) -> GradedPoly {
        Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; target.nvars()];
                for (i, &x) in m.iter().enumerate() {
                    e[index_map[i]] += x;
                }
                (e, c.clone())
            }),
        )
    }

    /// Terms sorted by graded-lex order, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(&self.ring, b.0, a.0));
        v
    }

    pub fn mono_string(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(self.ring.vars())
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.name.clone() } else { format!("{}^{}", v.name, e) })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let ms = self.mono_string(m);
            if ms.is_empty() {
                write!(f, "{}", rat_display(&a))?;
            } else if a.is_one() {
                write!(f, "{ms}")?;
            } else {
                write!(f, "{}*{}", rat_display(&a), ms)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    exp: &'a [u32],
    coef: String,
}

impl Serialize for GradedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GradedPoly", 2)?;
        st.serialize_field("vars", self.ring.vars())?;
        let terms: Vec<TermOut> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermOut { exp: m, coef: rat_to_string(c) })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: &GradedPoly) -> GradedPoly {
        self.clone() + o
    }
}

impl<'a> Add<&'a GradedPoly> for GradedPoly {
    type Output = GradedPoly;
    fn add(mut self, o: &GradedPoly) -> GradedPoly {
        self.check_ring(o);
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: GradedPoly) -> GradedPoly {
        if self.terms.len() < o.terms.len() {
            o + &self
        } else {
            self + &o
        }
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, o: &GradedPoly) -> GradedPoly {
        self.clone() - o
    }
}

impl<'a> Sub<&'a GradedPoly> for GradedPoly {
    type Output = GradedPoly;
    fn sub(mut self, o: &GradedPoly) -> GradedPoly {
        self.check_ring(o);
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, o: GradedPoly) -> GradedPoly {
        self - &o
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(mut self) -> GradedPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<'a> Neg for &'a GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: &GradedPoly) -> GradedPoly {
        self.check_ring(o);
        let mut out = GradedPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: GradedPoly) -> GradedPoly {
        &self * &o
    }
}

impl<'a> Mul<&'a GradedPoly> for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: &GradedPoly) -> GradedPoly {
        &self * o
    }
}
