//! Brown-Gitler comodules N_i(j), the quotients (A(n)//A(n−1))_*, their
//! tensor products, and left A(n)_*-coactions on all of them.

use crate::xi::{conj_to_an, an_coproduct, F2Poly, XiMonomial};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

/// Internal degree cap used throughout.
pub const DEGREE_CAP: u64 = 64;

/// Left A(n)_*-coaction of a single ξ̄-monomial: right factor ↦ left factor
/// (ξ basis, reduced into A(n)_*).
pub type MonoCoaction = BTreeMap<XiMonomial, F2Poly>;

/// Weight bound 2^{i+1}·j for level i ≥ −1.
pub fn weight_bound(level: i32, j: u32) -> u64 {
    (j as u64) << (level + 1)
}

/// Exponent granularity of ξ̄_k in (A//A(i))_*.
fn granularity(level: i32, k: usize) -> u32 {
    let e = level + 2 - k as i32;
    if e > 0 {
        1 << e
    } else {
        1
    }
}

pub fn in_quotient_algebra(m: &XiMonomial, level: i32) -> bool {
    m.exps().iter().enumerate().all(|(i, &e)| e % granularity(level, i + 1) == 0)
}

/// Monomial basis of N_i(j) ⊂ (A//A(i))_*, sorted by (degree, monomial).
pub fn bg_basis(level: i32, j: u32) -> Vec<XiMonomial> {
    assert!((-1..=2).contains(&level), "level out of range");
    let w = weight_bound(level, j);
    let mut out = vec![];
    fn rec(level: i32, k: usize, w_left: u64, cur: &XiMonomial, out: &mut Vec<XiMonomial>) {
        // weight of the k-th generator; all further generators are at least as heavy
        let g = granularity(level, k);
        let gw = (g as u64) << (k - 1);
        if gw > w_left {
            out.push(cur.clone());
            return;
        }
        let mut e = 0u32;
        while e as u64 * (1u64 << (k - 1)) <= w_left {
            let next = cur.mul(&XiMonomial::gen(k, e));
            rec(level, k + 1, w_left - e as u64 * (1u64 << (k - 1)), &next, out);
            e += g;
        }
    }
    rec(level, 1, w, &XiMonomial::one(), &mut out);
    out.sort_by_key(|m| (m.degree(), m.clone()));
    out
}

/// Basis of (A(n)//A(n−1))_*: ξ̄_k^{2^{n+1−k}ε_k}, k ≤ n+1.
pub fn quotient_basis(n: usize) -> Vec<XiMonomial> {
    let mut out = vec![XiMonomial::one()];
    for k in 1..=n + 1 {
        let g = XiMonomial::gen(k, 1 << (n + 1 - k));
        out = out.iter().flat_map(|m| [m.clone(), m.mul(&g)]).collect();
    }
    out.sort_by_key(|m| (m.degree(), m.clone()));
    out
}

pub fn in_quotient_basis(m: &XiMonomial, n: usize) -> bool {
    m.exps().iter().enumerate().all(|(i, &e)| {
        let k = i + 1;
        k <= n + 1 && (e == 0 || e == 1 << (n + 1 - k))
    })
}

/// ψ(m) over A(n)_*, from Δξ̄_k = Σ_{i+j=k} ξ̄_i ⊗ ξ̄_j^{2^i}.
pub fn coaction(m: &XiMonomial, n: usize) -> MonoCoaction {
    let mut acc: MonoCoaction = [(XiMonomial::one(), F2Poly::one())].into_iter().collect();
    for (idx, &e) in m.exps().iter().enumerate() {
        let k = idx + 1;
        for s in 0..32 {
            if e >> s & 1 == 0 {
                continue;
            }
            let terms: Vec<(F2Poly, XiMonomial)> = (0..=k)
                .filter_map(|i| {
                    let left = if i == 0 { F2Poly::one() } else { conj_to_an(&XiMonomial::gen(i, 1 << s), n) };
                    if left.is_zero() {
                        return None;
                    }
                    let right = if i == k { XiMonomial::one() } else { XiMonomial::gen(k - i, 1 << (i as u32 + s)) };
                    Some((left, right))
                })
                .collect();
            acc = tensor_mul(&acc, &terms, n);
        }
    }
    acc.retain(|_, p| !p.is_zero());
    acc
}

fn tensor_mul(acc: &MonoCoaction, terms: &[(F2Poly, XiMonomial)], n: usize) -> MonoCoaction {
    let keep = |x: &XiMonomial| crate::xi::in_an(x, n);
    let mut out: MonoCoaction = BTreeMap::new();
    for (r, l) in acc {
        for (tl, tr) in terms {
            let p = l.mul_by(tl, keep);
            if !p.is_zero() {
                out.entry(r.mul(tr)).or_default().add_assign(&p);
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// A tensor factor of a comodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// N_level(bound).
    Bg { level: i32, bound: u32 },
    /// (A(n)//A(n−1))_*.
    Quot { n: usize },
}

impl Factor {
    pub fn basis(&self) -> Vec<XiMonomial> {
        match *self {
            Factor::Bg { level, bound } => bg_basis(level, bound),
            Factor::Quot { n } => quotient_basis(n),
        }
    }

    fn contains(&self, m: &XiMonomial) -> bool {
        match *self {
            Factor::Bg { level, bound } => in_quotient_algebra(m, level) && m.weight() <= weight_bound(level, bound),
            Factor::Quot { n } => in_quotient_basis(m, n),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::Bg { bound: 0, .. } => write!(f, "F2"),
            Factor::Bg { level, bound } => {
                let name = ["HF2", "HZ", "bo", "tmf"][(level + 1) as usize];
                write!(f, "{name}_{bound}")
            }
            Factor::Quot { n } => write!(f, "(A({n})//A({}))_*", n - 1),
        }
    }
}

/// A basis element of a tensor product: one monomial per factor.
pub type Elem = Vec<XiMonomial>;

/// Σ^shift (F₁ ⊗ ⋯ ⊗ F_r) as an A(n)_*-comodule on the product monomial basis.
pub struct Comodule {
    pub name: String,
    pub shift: u64,
    pub factors: Vec<Factor>,
    /// Coacting algebra level n (A(n)_*).
    pub over: usize,
    pub basis: Vec<Elem>,
    index: BTreeMap<Elem, usize>,
    coactions: OnceLock<Vec<BTreeMap<usize, F2Poly>>>,
}

impl fmt::Debug for Comodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Comodule").field("name", &self.name).field("dim", &self.basis.len()).finish()
    }
}

impl Comodule {
    pub fn new(shift: u64, factors: Vec<Factor>, over: usize) -> Self {
        let mut basis: Vec<Elem> = vec![vec![]];
        for fct in &factors {
            let fb = fct.basis();
            basis = basis.iter().flat_map(|e| fb.iter().map(move |m| [e.clone(), vec![m.clone()]].concat())).collect();
        }
        let deg = |e: &Elem| e.iter().map(|m| m.degree()).sum::<u64>();
        basis.sort_by(|a, b| (deg(a), a).cmp(&(deg(b), b)));
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let body = if factors.is_empty() { "F2".to_string() } else { factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ⊗ ") };
        let name = if shift == 0 { body } else { format!("Σ^{shift} {body}") };
        Self { name, shift, factors, over, basis, index, coactions: OnceLock::new() }
    }

    /// N_level(j) over A(n)_*.
    pub fn bg(level: i32, j: u32, over: usize) -> Self {
        Self::new(0, vec![Factor::Bg { level, bound: j }], over)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.shift + self.basis[i].iter().map(|m| m.degree()).sum::<u64>()
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Basis elements in internal degree d.
    pub fn in_degree(&self, d: u64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == d).collect()
    }

    pub fn max_degree(&self) -> u64 {
        (0..self.dim()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// ψ(b_i) as target index ↦ A(n)_* coefficient. Panics if a right factor
    /// leaves the module (that would contradict weight monotonicity).
    pub fn coaction(&self, i: usize) -> &BTreeMap<usize, F2Poly> {
        &self.coactions.get_or_init(|| (0..self.dim()).map(|i| self.compute_coaction(i)).collect())[i]
    }

    fn compute_coaction(&self, i: usize) -> BTreeMap<usize, F2Poly> {
        let keep = |x: &XiMonomial| crate::xi::in_an(x, self.over);
        let mut acc: BTreeMap<Elem, F2Poly> = [(vec![], F2Poly::one())].into_iter().collect();
        for (fct, m) in self.factors.iter().zip(&self.basis[i]) {
            let c = coaction(m, self.over);
            let mut next: BTreeMap<Elem, F2Poly> = BTreeMap::new();
            for (e, l) in &acc {
                for (r, l2) in &c {
                    if !fct.contains(r) {
                        // Quotient factors: right factors in the ideal vanish.
                        assert!(matches!(fct, Factor::Quot { .. }), "coaction of {m} leaves {fct}: {r}");
                        continue;
                    }
                    let p = l.mul_by(l2, keep);
                    if !p.is_zero() {
                        let mut e2 = e.clone();
                        e2.push(r.clone());
                        next.entry(e2).or_default().add_assign(&p);
                    }
                }
            }
            next.retain(|_, p| !p.is_zero());
            acc = next;
        }
        acc.into_iter().map(|(e, p)| (self.index[&e], p)).collect()
    }

    /// (Δ⊗1)ψ = (1⊗ψ)ψ on every basis element.
    pub fn is_coassociative(&self) -> bool {
        (0..self.dim()).all(|i| {
            let mut lhs: BTreeSet<(XiMonomial, XiMonomial, usize)> = BTreeSet::new();
            let mut rhs = BTreeSet::new();
            let toggle = |s: &mut BTreeSet<_>, x| {
                if !s.remove(&x) {
                    s.insert(x);
                }
            };
            for (&r, a) in self.coaction(i) {
                for alpha in &a.0 {
                    for (p, q) in an_coproduct(alpha, self.over) {
                        toggle(&mut lhs, (p, q, r));
                    }
                    for (&r2, b) in self.coaction(r) {
                        for beta in &b.0 {
                            toggle(&mut rhs, (alpha.clone(), beta.clone(), r2));
                        }
                    }
                }
            }
            lhs == rhs
        })
    }

    /// (ε⊗1)ψ = id.
    pub fn is_counital(&self) -> bool {
        (0..self.dim()).all(|i| {
            self.coaction(i).iter().all(|(&r, a)| a.0.contains(&XiMonomial::one()) == (r == i)) && self.coaction(i).contains_key(&i)
        })
    }

    pub fn coaction_preserves_degree(&self) -> bool {
        (0..self.dim()).all(|i| self.coaction(i).iter().all(|(&r, a)| a.0.iter().all(|m| m.degree() + self.degree(r) == self.degree(i))))
    }

    pub fn elem_string(&self, i: usize) -> String {
        self.basis[i].iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ⊗ ")
    }
}
