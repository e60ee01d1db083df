//! A(n) as the linear dual of A(n)_*: θ_E is dual to ξ^E, and the product is
//! dual to the Milnor coproduct. dim A(2) = 64, so elements are `u64` masks.

use crate::ExtError;
use std::collections::BTreeMap;
use steenrod::{an_basis, an_coproduct, XiMonomial};

/// An element of A(n): bit `a` is the coefficient of θ_{basis[a]}.
pub type AlgElem = u64;

#[derive(Clone, Debug)]
pub struct FiniteGradedAlgebra {
    pub n: usize,
    /// ξ-monomials of A(n)_*, sorted by degree; index 0 is the unit.
    pub basis: Vec<XiMonomial>,
    pub degrees: Vec<u64>,
    index: BTreeMap<XiMonomial, usize>,
    mult: Vec<Vec<AlgElem>>,
    /// Δ(ξ^G) as index pairs, for the comodule side.
    coproduct: Vec<Vec<(usize, usize)>>,
    pos_in_degree: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
}

pub fn build_an(n: usize) -> Result<FiniteGradedAlgebra, ExtError> {
    if n > 2 {
        return Err(ExtError::Level(n));
    }
    let basis = an_basis(n);
    let index: BTreeMap<XiMonomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = basis.len();
    let degrees: Vec<u64> = basis.iter().map(|m| m.degree()).collect();
    let mut mult = vec![vec![0u64; dim]; dim];
    let mut coproduct = vec![vec![]; dim];
    for (g, m) in basis.iter().enumerate() {
        for (p, q) in an_coproduct(m, n) {
            let (a, b) = (index[&p], index[&q]);
            mult[a][b] ^= 1 << g;
            coproduct[g].push((a, b));
        }
    }
    let top = *degrees.iter().max().unwrap() as usize;
    let mut by_degree = vec![vec![]; top + 1];
    let mut pos_in_degree = vec![0; dim];
    for (a, &d) in degrees.iter().enumerate() {
        pos_in_degree[a] = by_degree[d as usize].len();
        by_degree[d as usize].push(a);
    }
    Ok(FiniteGradedAlgebra { n, basis, degrees, index, mult, coproduct, pos_in_degree, by_degree })
}

impl FiniteGradedAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> u64 {
        (self.by_degree.len() - 1) as u64
    }

    pub fn index_of(&self, m: &XiMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Basis indices in degree d (empty outside 0..=top).
    pub fn in_degree(&self, d: u64) -> &[usize] {
        self.by_degree.get(d as usize).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn pos_in_degree(&self, a: usize) -> usize {
        self.pos_in_degree[a]
    }

    pub fn basis_mul(&self, a: usize, b: usize) -> AlgElem {
        self.mult[a][b]
    }

    pub fn mul(&self, x: AlgElem, y: AlgElem) -> AlgElem {
        let mut out = 0;
        for a in ones(x) {
            for b in ones(y) {
                out ^= self.mult[a][b];
            }
        }
        out
    }

    /// θ_a · y for a basis element.
    pub fn mul_basis_left(&self, a: usize, y: AlgElem) -> AlgElem {
        ones(y).fold(0, |acc, b| acc ^ self.mult[a][b])
    }

    pub fn coproduct(&self, g: usize) -> &[(usize, usize)] {
        &self.coproduct[g]
    }

    pub fn augmentation(&self, x: AlgElem) -> bool {
        x & 1 == 1
    }

    /// Index of Sq^{2^i} = θ_{ξ₁^{2^i}}, i ≤ n.
    pub fn sq(&self, i: usize) -> usize {
        assert!(i <= self.n);
        self.index[&XiMonomial::gen(1, 1 << i)]
    }

    /// The algebra generators Sq¹, Sq², …, Sq^{2^n}.
    pub fn generators(&self) -> Vec<usize> {
        (0..=self.n).map(|i| self.sq(i)).collect()
    }

    pub fn is_associative_on(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.mult[a][b];
        let bc = self.mult[b][c];
        self.mul(ab, 1 << c) == self.mul(1 << a, bc)
    }

    /// Associativity on every triple (dimension ≤ 8) or on `samples` pseudo-random triples.
    pub fn check_associative(&self, samples: usize) -> bool {
        let d = self.dim();
        if d <= 8 {
            return (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| self.is_associative_on(a, b, c))));
        }
        let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
        (0..samples).all(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let (a, b, c) = ((x % d as u64) as usize, ((x >> 20) % d as u64) as usize, ((x >> 40) % d as u64) as usize);
            self.is_associative_on(a, b, c)
        })
    }

    pub fn is_connected(&self) -> bool {
        self.in_degree(0) == [0] && (0..self.dim()).all(|a| self.mult[0][a] == 1 << a && self.mult[a][0] == 1 << a)
    }

    /// Products land in the degree of the sum.
    pub fn is_graded(&self) -> bool {
        (0..self.dim()).all(|a| (0..self.dim()).all(|b| ones(self.mult[a][b]).all(|g| self.degrees[g] == self.degrees[a] + self.degrees[b])))
    }

    pub fn elem_string(&self, x: AlgElem) -> String {
        if x == 0 {
            return "0".into();
        }
        ones(x).map(|a| format!("Sq({})", milnor_string(&self.basis[a]))).collect::<Vec<_>>().join(" + ")
    }
}

fn milnor_string(m: &XiMonomial) -> String {
    if m.is_one() {
        return String::new();
    }
    m.exps().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

pub fn ones(x: u64) -> impl Iterator<Item = usize> {
    let mut x = x;
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}
