//! Monomials in the ξ's (or ξ̄'s), F₂-polynomials on them, the antipode
//! ξ ↦ ξ̄, and the finite quotients A(n)_*.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Mutex;

/// ξ̄₁^{e₁}ξ̄₂^{e₂}⋯ (or the same exponent vector in the ξ basis, depending on
/// context). Trailing zeros are trimmed so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct XiMonomial(Vec<u32>);

impl XiMonomial {
    pub fn one() -> Self {
        Self(vec![])
    }

    pub fn from_exps(e: &[u32]) -> Self {
        let mut v = e.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Self(v)
    }

    /// ξ̄_k^e, k ≥ 1.
    pub fn gen(k: usize, e: u32) -> Self {
        assert!(k >= 1);
        let mut v = vec![0; k];
        v[k - 1] = e;
        Self::from_exps(&v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of the k-th generator (1-based).
    pub fn exp(&self, k: usize) -> u32 {
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &e)| e as u64 * ((1u64 << (i + 1)) - 1)).sum()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &e)| e as u64 * (1u64 << i)).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let v: Vec<u32> = (0..n).map(|i| self.0.get(i).unwrap_or(&0) + o.0.get(i).unwrap_or(&0)).collect();
        Self::from_exps(&v)
    }

    /// Frobenius: every exponent times 2^s.
    pub fn frob(&self, s: u32) -> Self {
        Self(self.0.iter().map(|e| e << s).collect())
    }

    /// ξ̄_k ↦ ξ̄_{k+1}.
    pub fn shift_up(&self) -> Self {
        if self.is_one() {
            return self.clone();
        }
        let mut v = vec![0];
        v.extend_from_slice(&self.0);
        Self(v)
    }

    /// Drop ξ̄₁ and shift the rest down: inverse of `shift_up` on ξ̄₁-free monomials.
    pub fn shift_down(&self) -> Self {
        Self::from_exps(self.0.get(1..).unwrap_or(&[]))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, sym: &str) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{sym}{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    /// `xi1^3 xi2` style, for ξ-basis contexts.
    pub fn xi_string(&self) -> String {
        struct X<'a>(&'a XiMonomial);
        impl fmt::Display for X<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, "xi")
            }
        }
        X(self).to_string()
    }

    /// Parse `xb1^8 xb2^4` (or `xi…`, or `1`).
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "1" {
            return Some(Self::one());
        }
        let mut v: Vec<u32> = vec![];
        for tok in s.split_whitespace() {
            let body = tok.strip_prefix("xb").or_else(|| tok.strip_prefix("xi"))?;
            let (k, e) = match body.split_once('^') {
                Some((k, e)) => (k.parse::<usize>().ok()?, e.parse::<u32>().ok()?),
                None => (body.parse::<usize>().ok()?, 1),
            };
            if k == 0 {
                return None;
            }
            if v.len() < k {
                v.resize(k, 0);
            }
            v[k - 1] += e;
        }
        Some(Self::from_exps(&v))
    }
}

/// Conjugate-basis rendering: `xb1^8 xb2^4`.
impl fmt::Display for XiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "xb")
    }
}

/// A polynomial over F₂: a set of monomials, addition is symmetric difference.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Poly(pub BTreeSet<XiMonomial>);

impl F2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(XiMonomial::one())
    }

    pub fn mono(m: XiMonomial) -> Self {
        Self([m].into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn toggle(&mut self, m: XiMonomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for m in &o.0 {
            self.toggle(m.clone());
        }
    }

    pub fn mul_by(&self, o: &Self, keep: impl Fn(&XiMonomial) -> bool) -> Self {
        let mut out = Self::zero();
        for a in &self.0 {
            for b in &o.0 {
                let m = a.mul(b);
                if keep(&m) {
                    out.toggle(m);
                }
            }
        }
        out
    }

    pub fn frob(&self, s: u32) -> Self {
        Self(self.0.iter().map(|m| m.frob(s)).collect())
    }

    pub fn retain(&self, keep: impl Fn(&XiMonomial) -> bool) -> Self {
        Self(self.0.iter().filter(|m| keep(m)).cloned().collect())
    }

    pub fn xi_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.0.iter().map(|m| m.xi_string()).collect::<Vec<_>>().join(" + ")
    }
}

static CONJ: Mutex<Vec<F2Poly>> = Mutex::new(Vec::new());

/// ξ̄ₙ in the ξ basis, from Σ_{i+j=n} ξᵢ^{2^j} ξ̄ⱼ = 0, i.e.
/// ξ̄ₙ = Σ_{i=1..n} ξᵢ^{2^{n−i}} ξ̄_{n−i}. Memoized.
pub fn conjugate_xi(n: usize) -> F2Poly {
    let mut t = CONJ.lock().unwrap();
    if t.is_empty() {
        t.push(F2Poly::one());
    }
    while t.len() <= n {
        let k = t.len();
        let mut acc = F2Poly::zero();
        for i in 1..=k {
            let xi = F2Poly::mono(XiMonomial::gen(i, 1 << (k - i)));
            acc.add_assign(&xi.mul_by(&t[k - i], |_| true));
        }
        t.push(acc);
    }
    t[n].clone()
}

/// Membership of a ξ-basis monomial in A(n)_* = F₂[ξ₁,…,ξ_{n+1}]/(ξᵢ^{2^{n+2−i}}).
pub fn in_an(m: &XiMonomial, n: usize) -> bool {
    m.exps().iter().enumerate().all(|(i, &e)| {
        let k = i + 1;
        if k > n + 1 {
            e == 0
        } else {
            (e as u64) < 1u64 << (n + 2 - k)
        }
    })
}

/// Monomial basis of A(n)_*, sorted by (degree, monomial).
pub fn an_basis(n: usize) -> Vec<XiMonomial> {
    let mut out = vec![XiMonomial::one()];
    for k in 1..=n + 1 {
        let cap = 1u32 << (n + 2 - k);
        out = out.iter().flat_map(|m| (0..cap).map(move |e| m.mul(&XiMonomial::gen(k, e)))).collect();
    }
    out.sort_by_key(|m| (m.degree(), m.clone()));
    out
}

/// Image of a ξ̄-monomial in A(n)_*, expanded in the ξ basis.
pub fn conj_to_an(m: &XiMonomial, n: usize) -> F2Poly {
    let keep = |x: &XiMonomial| in_an(x, n);
    let mut acc = F2Poly::one();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let base = conjugate_xi(i + 1).retain(keep);
        for s in 0..32 {
            if e >> s & 1 == 1 {
                acc = acc.mul_by(&base.frob(s).retain(keep), keep);
                if acc.is_zero() {
                    return acc;
                }
            }
        }
    }
    acc
}

/// Milnor coproduct on A(n)_*: Δξ_k = Σ ξ_{k−i}^{2^i} ⊗ ξ_i. Returned as a
/// set of (left, right) ξ-basis monomial pairs.
pub fn an_coproduct(m: &XiMonomial, n: usize) -> BTreeSet<(XiMonomial, XiMonomial)> {
    let mut acc: BTreeSet<(XiMonomial, XiMonomial)> = [(XiMonomial::one(), XiMonomial::one())].into_iter().collect();
    for (idx, &e) in m.exps().iter().enumerate() {
        let k = idx + 1;
        for s in 0..32 {
            if e >> s & 1 == 0 {
                continue;
            }
            // (Δξ_k)^{2^s}
            let terms: Vec<(XiMonomial, XiMonomial)> = (0..=k)
                .map(|i| {
                    let l = if k - i == 0 { XiMonomial::one() } else { XiMonomial::gen(k - i, 1 << (i as u32 + s)) };
                    let r = if i == 0 { XiMonomial::one() } else { XiMonomial::gen(i, 1 << s) };
                    (l, r)
                })
                .collect();
            let mut next = BTreeSet::new();
            for (a, b) in &acc {
                for (l, r) in &terms {
                    let p = (a.mul(l), b.mul(r));
                    if in_an(&p.0, n) && in_an(&p.1, n) && !next.remove(&p) {
                        next.insert(p);
                    }
                }
            }
            acc = next;
        }
    }
    acc
}
