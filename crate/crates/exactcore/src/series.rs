//! Truncated power series in one and two variables.
//!
//! Precision is explicit: a one-variable series of precision `P` knows its
//! coefficients of `t^0 .. t^{P-1}`; a two-variable series of precision `P`
//! knows every coefficient of total degree `< P`. Binary operations return
//! the smaller of the two precisions.

use crate::poly::GradedPoly;
use crate::rat::Rat;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("requested order {requested} exceeds precision {precision}")]
    PrecisionExceeded { requested: usize, precision: usize },
    #[error("leading coefficient is not invertible")]
    NonInvertible,
    #[error("inner series must have zero constant term")]
    NonzeroConstant,
}

/// Coefficient rings the series code can work over.
pub trait Coeff: Clone + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_c(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn sub_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn scale_c(&self, r: &Rat) -> Self;
    /// Multiplicative inverse, when it exists in the coefficient ring.
    fn inv_c(&self) -> Option<Self>;
}

impl Coeff for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn scale_c(&self, r: &Rat) -> Self {
        self * r
    }
    fn inv_c(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Coeff for GradedPoly {
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.ring())
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn scale_c(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn inv_c(&self) -> Option<Self> {
        if self.is_constant() && !self.is_zero() {
            Some(GradedPoly::constant(self.ring(), self.constant_term().recip()))
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries1<C: Coeff> {
    coeffs: Vec<C>,
    zero: C,
}

impl<C: Coeff> TruncSeries1<C> {
    /// Series with the given coefficients, known to precision `prec`
    /// (missing coefficients below `prec` are zero).
    pub fn new(mut coeffs: Vec<C>, prec: usize, zero: C) -> Self {
        coeffs.truncate(prec);
        while coeffs.len() < prec {
            coeffs.push(zero.clone());
        }
        TruncSeries1 { coeffs, zero }
    }

    pub fn zero(prec: usize, zero: C) -> Self {
        Self::new(vec![], prec, zero)
    }

    pub fn one(prec: usize, zero: C) -> Self {
        let one = zero.one_like();
        Self::new(vec![one], prec, zero)
    }

    /// The series `t`.
    pub fn t(prec: usize, zero: C) -> Self {
        let one = zero.one_like();
        Self::new(vec![zero.clone(), one], prec, zero)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> Result<&C, SeriesError> {
        self.coeffs
            .get(k)
            .ok_or(SeriesError::PrecisionExceeded { requested: k, precision: self.prec() })
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.coeffs.clone(), prec.min(self.prec()), self.zero.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        let c = (0..p).map(|k| self.coeffs[k].add_c(&o.coeffs[k])).collect();
        Self::new(c, p, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        let c = (0..p).map(|k| self.coeffs[k].sub_c(&o.coeffs[k])).collect();
        Self::new(c, p, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg_c()).collect(), self.prec(), self.zero.clone())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale_c(r)).collect(), self.prec(), self.zero.clone())
    }

    pub fn mul_coeff(&self, x: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_c(x)).collect(), self.prec(), self.zero.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        let mut c = vec![self.zero.clone(); p];
        for i in 0..p {
            if self.coeffs[i].is_zero_c() {
                continue;
            }
            for j in 0..p - i {
                if o.coeffs[j].is_zero_c() {
                    continue;
                }
                c[i + j] = c[i + j].add_c(&self.coeffs[i].mul_c(&o.coeffs[j]));
            }
        }
        Self::new(c, p, self.zero.clone())
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let p = self.prec();
        let c0inv = self.coeffs.first().and_then(|c| c.inv_c()).ok_or(SeriesError::NonInvertible)?;
        let mut out = vec![self.zero.clone(); p];
        out[0] = c0inv.clone();
        for n in 1..p {
            let mut s = self.zero.clone();
            for k in 1..=n {
                s = s.add_c(&self.coeffs[k].mul_c(&out[n - k]));
            }
            out[n] = s.mul_c(&c0inv).neg_c();
        }
        Ok(Self::new(out, p, self.zero.clone()))
    }

    /// `self(inner(t))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs.first().map_or(true, |c| c.is_zero_c()) {
            return Err(SeriesError::NonzeroConstant);
        }
        let p = self.prec().min(inner.prec());
        let inner = inner.truncate(p);
        let mut acc = Self::zero(p, self.zero.clone());
        for k in (0..p).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add_c(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Functional inverse `g` with `self(g(t)) = t`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let p = self.prec();
        if p < 2 {
            return Err(SeriesError::PrecisionExceeded { requested: 2, precision: p });
        }
        if !self.coeffs[0].is_zero_c() {
            return Err(SeriesError::NonzeroConstant);
        }
        let a1inv = self.coeffs[1].inv_c().ok_or(SeriesError::NonInvertible)?;
        let t = Self::t(p, self.zero.clone());
        let mut g = t.mul_coeff(&a1inv);
        // Each pass fixes one more coefficient: g <- g - (f(g) - t)/a1.
        for _ in 2..p {
            let err = self.compose(&g)?.sub(&t);
            g = g.sub(&err.mul_coeff(&a1inv));
        }
        Ok(g)
    }

    /// Term-wise antiderivative with zero constant; precision grows by one.
    pub fn integrate(&self) -> Self {
        let p = self.prec();
        let mut c = vec![self.zero.clone()];
        for (k, x) in self.coeffs.iter().enumerate() {
            c.push(x.scale_c(&Rat::new((1).into(), ((k + 1) as i64).into())));
        }
        Self::new(c, p + 1, self.zero.clone())
    }

    pub fn derivative(&self) -> Self {
        let p = self.prec();
        let c = (1..p).map(|k| self.coeffs[k].scale_c(&Rat::from_integer((k as i64).into()))).collect();
        Self::new(c, p.saturating_sub(1), self.zero.clone())
    }
}

/// Two-variable series `Σ c[i][j] X^i Y^j` over total degree `< prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries2<C: Coeff> {
    // c[i] holds coefficients of X^i Y^j for j < prec - i.
    coeffs: Vec<Vec<C>>,
    zero: C,
}

impl<C: Coeff> TruncSeries2<C> {
    pub fn zero(prec: usize, zero: C) -> Self {
        let coeffs = (0..prec).map(|i| vec![zero.clone(); prec - i]).collect();
        TruncSeries2 { coeffs, zero }
    }

    pub fn from_fn(prec: usize, zero: C, f: impl Fn(usize, usize) -> C) -> Self {
        let coeffs = (0..prec).map(|i| (0..prec - i).map(|j| f(i, j)).collect()).collect();
        TruncSeries2 { coeffs, zero }
    }

    pub fn constant(prec: usize, c: C) -> Self {
        let zero = c.zero_like();
        let mut s = Self::zero(prec, zero);
        if prec > 0 {
            s.coeffs[0][0] = c;
        }
        s
    }

    pub fn x(prec: usize, zero: C) -> Self {
        let mut s = Self::zero(prec, zero.clone());
        if prec > 1 {
            s.coeffs[1][0] = zero.one_like();
        }
        s
    }

    pub fn y(prec: usize, zero: C) -> Self {
        let mut s = Self::zero(prec, zero.clone());
        if prec > 1 {
            s.coeffs[0][1] = zero.one_like();
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    pub fn coeff(&self, i: usize, j: usize) -> Result<&C, SeriesError> {
        if i + j >= self.prec() {
            return Err(SeriesError::PrecisionExceeded { requested: i + j, precision: self.prec() });
        }
        Ok(&self.coeffs[i][j])
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.coeffs[i][j] = c;
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let p = prec.min(self.prec());
        Self::from_fn(p, self.zero.clone(), |i, j| self.coeffs[i][j].clone())
    }

    /// Nonzero coefficients in (i, j) order.
    pub fn nonzero_terms(&self) -> Vec<(usize, usize, &C)> {
        let mut v = vec![];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero_c() {
                    v.push((i, j, c));
                }
            }
        }
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        Self::from_fn(p, self.zero.clone(), |i, j| self.coeffs[i][j].add_c(&o.coeffs[i][j]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        Self::from_fn(p, self.zero.clone(), |i, j| self.coeffs[i][j].sub_c(&o.coeffs[i][j]))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.prec(), self.zero.clone(), |i, j| self.coeffs[i][j].neg_c())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::from_fn(self.prec(), self.zero.clone(), |i, j| self.coeffs[i][j].scale_c(r))
    }

    pub fn mul_coeff(&self, x: &C) -> Self {
        Self::from_fn(self.prec(), self.zero.clone(), |i, j| self.coeffs[i][j].mul_c(x))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        let mut out = Self::zero(p, self.zero.clone());
        let a = self.nonzero_terms();
        let b = o.nonzero_terms();
        for &(i1, j1, c1) in &a {
            for &(i2, j2, c2) in &b {
                if i1 + i2 + j1 + j2 < p {
                    let cur = &out.coeffs[i1 + i2][j1 + j2];
                    out.coeffs[i1 + i2][j1 + j2] = cur.add_c(&c1.mul_c(c2));
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let p = self.prec();
        let c0inv = self.coeffs.first().and_then(|r| r[0].inv_c()).ok_or(SeriesError::NonInvertible)?;
        // 1/(c0(1 + u)) = c0^{-1} Σ (-u)^k with u of positive order.
        let u = {
            let mut u = self.mul_coeff(&c0inv);
            u.coeffs[0][0] = self.zero.clone();
            u
        };
        let one = Self::constant(p, self.zero.one_like());
        let mut acc = one.clone();
        let mut power = one;
        let negu = u.neg();
        for _ in 1..p {
            power = power.mul(&negu);
            acc = acc.add(&power);
        }
        Ok(acc.mul_coeff(&c0inv))
    }

    /// `f(self)` for a one-variable `f`; `self` must have zero constant term.
    pub fn compose_into(&self, f: &TruncSeries1<C>) -> Result<Self, SeriesError> {
        if !self.coeffs.first().map_or(true, |r| r[0].is_zero_c()) {
            return Err(SeriesError::NonzeroConstant);
        }
        let p = self.prec().min(f.prec());
        let inner = self.truncate(p);
        let mut acc = Self::zero(p, self.zero.clone());
        for k in (0..p).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0][0] = acc.coeffs[0][0].add_c(&f.coeffs()[k]);
        }
        Ok(acc)
    }

    /// Embed a one-variable series as a series in X (or Y when `in_y`).
    pub fn from_univariate(f: &TruncSeries1<C>, in_y: bool) -> Self {
        let p = f.prec();
        Self::from_fn(p, f.zero_elem().clone(), |i, j| {
            if in_y && i == 0 {
                f.coeffs()[j].clone()
            } else if !in_y && j == 0 {
                f.coeffs()[i].clone()
            } else {
                f.zero_elem().clone()
            }
        })
    }

    /// Exchange X and Y.
    pub fn swap(&self) -> Self {
        Self::from_fn(self.prec(), self.zero.clone(), |i, j| self.coeffs[j][i].clone())
    }

    /// `self(u, v)` for arbitrary two-variable series `u`, `v`, summing over the
    /// finitely many stored terms. Exact modulo total degree `prec` whenever
    /// `u`, `v` have zero constant term.
    pub fn eval2(&self, u: &Self, v: &Self) -> Self {
        let p = self.prec().min(u.prec()).min(v.prec());
        let one = Self::constant(p, self.zero.one_like());
        let mut upow = vec![one.clone()];
        let mut vpow = vec![one];
        for k in 1..self.prec() {
            upow.push(upow[k - 1].mul(u));
            vpow.push(vpow[k - 1].mul(v));
        }
        let mut acc = Self::zero(p, self.zero.clone());
        for (i, j, c) in self.nonzero_terms() {
            acc = acc.add(&upow[i].mul(&vpow[j]).mul_coeff(c));
        }
        acc
    }

    /// Restriction to Y = 0 as a one-variable series in X.
    pub fn at_y0(&self) -> TruncSeries1<C> {
        TruncSeries1::new(self.coeffs.iter().map(|r| r[0].clone()).collect(), self.prec(), self.zero.clone())
    }

    /// Restriction to X = 0 as a one-variable series in Y.
    pub fn at_x0(&self) -> TruncSeries1<C> {
        TruncSeries1::new(self.coeffs[0].clone(), self.prec(), self.zero.clone())
    }

    /// ∂/∂Y evaluated at Y = 0: the coefficients of X^i Y, as a series in X.
    pub fn dy_at_y0(&self) -> TruncSeries1<C> {
        let p = self.prec();
        let c = (0..p.saturating_sub(1)).map(|i| self.coeffs[i][1].clone()).collect();
        TruncSeries1::new(c, p.saturating_sub(1), self.zero.clone())
    }
}
