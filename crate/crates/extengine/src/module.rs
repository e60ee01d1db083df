//! Finite A(n)-modules and A(n)_*-comodules from a [`ModuleDef`].
//!
//! A coaction term ξ^E ⊗ b_r in ψ(b_i) gives θ_E·b_r* ∋ b_i* on the dual, so
//! Ext_{A(n)_*}(F₂, C) = Ext_{A(n)}(C*, F₂).

use crate::algebra::FiniteGradedAlgebra;
use crate::ExtError;
use exactcore::Bits;
use std::collections::BTreeMap;
use steenrod::{in_an, ModuleDef};

/// A left A(n)-module, finite dimensional, action raising degree.
#[derive(Clone, Debug)]
pub struct FinModule {
    pub name: String,
    pub degrees: Vec<u64>,
    /// act[a][m] = θ_a · m.
    act: Vec<Vec<Bits>>,
    by_degree: BTreeMap<u64, Vec<usize>>,
}

impl FinModule {
    /// The dual module C* of a comodule over the same A(n)_*.
    pub fn dual_of(def: &ModuleDef, alg: &FiniteGradedAlgebra) -> Result<Self, ExtError> {
        check_level(def, alg)?;
        let dim = def.dim();
        let mut act = vec![vec![Bits::zeros(dim); dim]; alg.dim()];
        for (i, r, m) in &def.coaction {
            let a = alg.index_of(m).ok_or_else(|| ExtError::Coefficient(m.to_string()))?;
            act[a][*r].flip(*i);
        }
        Ok(Self { name: def.name.clone(), degrees: def.degrees.clone(), act, by_degree: group(&def.degrees) })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn act(&self, a: usize, m: usize) -> &Bits {
        &self.act[a][m]
    }

    pub fn in_degree(&self, d: u64) -> &[usize] {
        self.by_degree.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Unit acts as the identity, θ_a(θ_b m) = (θ_aθ_b)m, degrees add.
    pub fn is_module(&self, alg: &FiniteGradedAlgebra) -> bool {
        let dim = self.dim();
        let apply = |x: u64, v: &Bits| {
            let mut out = Bits::zeros(dim);
            for a in crate::algebra::ones(x) {
                for m in v.ones() {
                    out.xor_assign(&self.act[a][m]);
                }
            }
            out
        };
        (0..dim).all(|m| {
            let unit = self.act[0][m] == Bits::unit(dim, m);
            let graded = (0..alg.dim()).all(|a| self.act[a][m].ones().all(|i| self.degrees[i] == self.degrees[m] + alg.degrees[a]));
            let assoc = (0..alg.dim()).all(|a| {
                (0..alg.dim()).all(|b| apply(1 << a, &self.act[b][m]) == apply(alg.basis_mul(a, b), &Bits::unit(dim, m)))
            });
            unit && graded && assoc
        })
    }
}

/// A comodule as its family of maps ψ_α : C → C (α ≠ 1), lowering degree by |α|.
#[derive(Clone, Debug)]
pub struct ComoduleData {
    pub name: String,
    pub degrees: Vec<u64>,
    /// psi[x] = nonzero (α, ψ_α(x)).
    pub psi: Vec<Vec<(usize, Bits)>>,
}

impl ComoduleData {
    pub fn from_def(def: &ModuleDef, alg: &FiniteGradedAlgebra) -> Result<Self, ExtError> {
        check_level(def, alg)?;
        let dim = def.dim();
        let mut by: Vec<BTreeMap<usize, Bits>> = vec![BTreeMap::new(); dim];
        for (i, r, m) in &def.coaction {
            let a = alg.index_of(m).ok_or_else(|| ExtError::Coefficient(m.to_string()))?;
            if a != 0 {
                by[*i].entry(a).or_insert_with(|| Bits::zeros(dim)).flip(*r);
            }
        }
        let psi = by.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        Ok(Self { name: def.name.clone(), degrees: def.degrees.clone(), psi })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
}

fn check_level(def: &ModuleDef, alg: &FiniteGradedAlgebra) -> Result<(), ExtError> {
    if def.over != alg.n {
        return Err(ExtError::LevelMismatch { module: def.over, algebra: alg.n });
    }
    Ok(())
}

fn group(degrees: &[u64]) -> BTreeMap<u64, Vec<usize>> {
    let mut m: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &d) in degrees.iter().enumerate() {
        m.entry(d).or_default().push(i);
    }
    m
}

/// The subcomodule spanned by basis elements of degree ≤ d (the coaction
/// lowers degree, so this is closed).
pub fn truncate(def: &ModuleDef, d: u64) -> ModuleDef {
    let keep: Vec<usize> = (0..def.dim()).filter(|&i| def.degrees[i] <= d).collect();
    let new: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    ModuleDef {
        name: format!("{}[≤{d}]", def.name),
        over: def.over,
        degrees: keep.iter().map(|&i| def.degrees[i]).collect(),
        labels: keep.iter().map(|&i| def.labels[i].clone()).collect(),
        coaction: def
            .coaction
            .iter()
            .filter(|(i, _, _)| new.contains_key(i))
            .map(|(i, r, m)| (new[i], new[r], m.clone()))
            .collect(),
    }
}

/// Restriction along A(n)_* → A(m)_*, m ≤ n: coaction terms outside A(m)_* vanish.
pub fn restrict(def: &ModuleDef, m: usize) -> ModuleDef {
    assert!(m <= def.over);
    ModuleDef {
        name: def.name.clone(),
        over: m,
        degrees: def.degrees.clone(),
        labels: def.labels.clone(),
        coaction: def.coaction.iter().filter(|(_, _, x)| in_an(x, m)).cloned().collect(),
    }
}

/// Σ^k of a comodule.
pub fn shift(def: &ModuleDef, k: u64) -> ModuleDef {
    ModuleDef {
        name: format!("Σ^{k} {}", def.name),
        degrees: def.degrees.iter().map(|d| d + k).collect(),
        ..def.clone()
    }
}

/// Direct sum of comodules over the same A(n)_*.
pub fn direct_sum(name: &str, parts: &[ModuleDef]) -> ModuleDef {
    let over = parts.first().map(|p| p.over).unwrap_or(0);
    let mut out = ModuleDef { name: name.into(), over, degrees: vec![], labels: vec![], coaction: vec![] };
    for p in parts {
        assert_eq!(p.over, over, "summands over different algebras");
        let off = out.dim();
        out.degrees.extend(&p.degrees);
        out.labels.extend(p.labels.iter().map(|l| format!("{}:{l}", p.name)));
        out.coaction.extend(p.coaction.iter().map(|(i, r, m)| (i + off, r + off, m.clone())));
    }
    out
}
