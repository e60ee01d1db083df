//! The reduced cobar complex C^s = Γ̄^{⊗s} ⊗ C of a left Γ = A(n)_*-comodule:
//!
//! d[a₁|…|a_s]m = Σᵢ [a₁|…|Δ̄aᵢ|…|a_s]m + [a₁|…|a_s|m′]m″,  ψ̄(m) = Σ m′⊗m″.
//!
//! Used literally (small t only, behind a size guard) and for checking that
//! explicit chains are cocycles.

use crate::algebra::{build_an, FiniteGradedAlgebra};
use crate::ExtError;
use exactcore::Echelon;
use std::collections::{BTreeMap, BTreeSet};
use steenrod::{conj_to_an, Comodule, ModuleDef, XiMonomial};

/// Default bound on the dimension of a single cochain group.
pub const DEFAULT_GUARD: usize = 6000;

type Cochain = (Vec<usize>, usize);

struct Complex<'a> {
    alg: &'a FiniteGradedAlgebra,
    degrees: &'a [u64],
    /// ψ̄(m) as (α, r) with α ≠ 1.
    reduced: Vec<Vec<(usize, usize)>>,
}

impl<'a> Complex<'a> {
    fn new(alg: &'a FiniteGradedAlgebra, def: &'a ModuleDef) -> Result<Self, ExtError> {
        if def.over != alg.n {
            return Err(ExtError::LevelMismatch { module: def.over, algebra: alg.n });
        }
        let mut reduced = vec![vec![]; def.dim()];
        for (i, r, m) in &def.coaction {
            let a = alg.index_of(m).ok_or_else(|| ExtError::Coefficient(m.to_string()))?;
            if a != 0 {
                reduced[*i].push((a, *r));
            }
        }
        Ok(Self { alg, degrees: &def.degrees, reduced })
    }

    fn d(&self, (bars, m): &Cochain, out: &mut BTreeSet<Cochain>) {
        let mut toggle = |c: Cochain| {
            if !out.remove(&c) {
                out.insert(c);
            }
        };
        for (i, &a) in bars.iter().enumerate() {
            for &(p, q) in self.alg.coproduct(a) {
                if p != 0 && q != 0 {
                    let mut b = bars[..i].to_vec();
                    b.push(p);
                    b.push(q);
                    b.extend_from_slice(&bars[i + 1..]);
                    toggle((b, *m));
                }
            }
        }
        for &(a, r) in &self.reduced[*m] {
            let mut b = bars.clone();
            b.push(a);
            toggle((b, r));
        }
    }

    /// Basis of C^s in internal degree t.
    fn basis(&self, s: usize, t: u64, guard: usize) -> Result<Vec<Cochain>, ExtError> {
        let mut out = vec![];
        for (m, &dm) in self.degrees.iter().enumerate() {
            if dm > t {
                continue;
            }
            let mut stack = vec![(vec![], t - dm)];
            while let Some((bars, left)) = stack.pop() {
                if bars.len() == s {
                    if left == 0 {
                        out.push((bars, m));
                        if out.len() > guard {
                            return Err(ExtError::Guard { dim: out.len(), guard });
                        }
                    }
                    continue;
                }
                // Each remaining bar has degree ≥ 1.
                if left < (s - bars.len()) as u64 {
                    continue;
                }
                for a in 1..self.alg.dim() {
                    let da = self.alg.degrees[a];
                    if da <= left {
                        let mut b = bars.clone();
                        b.push(a);
                        stack.push((b, left - da));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn rank_d(&self, from: &[Cochain], to: &[Cochain]) -> usize {
        if from.is_empty() || to.is_empty() {
            return 0;
        }
        let index: BTreeMap<&Cochain, usize> = to.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut e = Echelon::new(to.len());
        for c in from {
            let mut out = BTreeSet::new();
            self.d(c, &mut out);
            let mut row = exactcore::Bits::zeros(to.len());
            for x in &out {
                row.set(index[x], true);
            }
            e.insert(row);
        }
        e.rank()
    }
}

/// dim Ext^{s,t} from the literal reduced cobar complex, for t ≤ t_max, s ≤ s_max.
pub fn cobar_ext(def: &ModuleDef, t_max: u64, s_max: usize, guard: usize) -> Result<BTreeMap<(u32, u64), usize>, ExtError> {
    let alg = build_an(def.over)?;
    let cx = Complex::new(&alg, def)?;
    let mut out = BTreeMap::new();
    for t in 0..=t_max {
        let top = s_max.min(t as usize);
        let groups: Vec<Vec<Cochain>> = (0..=top + 1).map(|s| cx.basis(s, t, guard)).collect::<Result<_, _>>()?;
        let ranks: Vec<usize> = (0..=top).map(|s| cx.rank_d(&groups[s], &groups[s + 1])).collect();
        for s in 0..=top {
            let dim = groups[s].len() - ranks[s] - if s > 0 { ranks[s - 1] } else { 0 };
            if dim > 0 {
                out.insert((s as u32, t), dim);
            }
        }
    }
    Ok(out)
}

/// One term [b₁|…|b_s] m of a cobar chain: bars are ξ̄-monomials, the
/// coefficient is a basis label of the comodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarTerm {
    pub bars: Vec<XiMonomial>,
    pub coeff: String,
}

impl CobarTerm {
    pub fn new(bars: &[&str], coeff: &str) -> Self {
        Self { bars: bars.iter().map(|b| XiMonomial::parse(b).expect("bar monomial")).collect(), coeff: coeff.into() }
    }
}

/// Parse lines of the form `[xb1|xb2|xb2] label`.
pub fn parse_chain(text: &str) -> Result<Vec<CobarTerm>, ExtError> {
    let mut out = vec![];
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let bad = || ExtError::Parse(line.to_string());
        let rest = line.strip_prefix('[').ok_or_else(bad)?;
        let (bars, coeff) = rest.split_once(']').ok_or_else(bad)?;
        let bars = bars.split('|').map(|b| XiMonomial::parse(b.trim()).ok_or_else(bad)).collect::<Result<_, _>>()?;
        out.push(CobarTerm { bars, coeff: coeff.trim().to_string() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleVerdict {
    pub cocycle: bool,
    pub s: usize,
    pub t: u64,
    /// Number of ξ-basis cochains after expanding the ξ̄ bars.
    pub expanded_terms: usize,
    /// Terms of d(chain), rendered in the ξ basis (empty for a cocycle).
    pub boundary: Vec<String>,
}

/// Check d(chain) = 0 in the cobar complex of `def`.
pub fn cobar_cocycle_check(def: &ModuleDef, chain: &[CobarTerm]) -> Result<CocycleVerdict, ExtError> {
    let alg = build_an(def.over)?;
    let cx = Complex::new(&alg, def)?;
    let mut expanded: BTreeSet<Cochain> = BTreeSet::new();
    let mut bideg = None;
    for term in chain {
        let m = def.labels.iter().position(|l| *l == term.coeff).ok_or_else(|| ExtError::Coefficient(term.coeff.clone()))?;
        let t = def.degrees[m] + term.bars.iter().map(|b| b.degree()).sum::<u64>();
        let here = (term.bars.len(), t);
        if *bideg.get_or_insert(here) != here {
            return Err(ExtError::Inhomogeneous);
        }
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for b in &term.bars {
            if b.is_one() {
                return Err(ExtError::Parse(format!("unit bar in {term:?}")));
            }
            let poly = conj_to_an(b, alg.n);
            let idx: Vec<usize> = poly.0.iter().map(|x| alg.index_of(x).expect("in A(n)_*")).collect();
            tuples = tuples.iter().flat_map(|tu| idx.iter().map(move |&a| [tu.clone(), vec![a]].concat())).collect();
        }
        for tu in tuples {
            let c = (tu, m);
            if !expanded.remove(&c) {
                expanded.insert(c);
            }
        }
    }
    let mut d = BTreeSet::new();
    for c in &expanded {
        cx.d(c, &mut d);
    }
    let render = |(bars, m): &Cochain| {
        let b: Vec<String> = bars.iter().map(|&a| alg.basis[a].xi_string()).collect();
        format!("[{}] {}", b.join("|"), def.labels[*m])
    };
    let (s, t) = bideg.unwrap_or((0, 0));
    Ok(CocycleVerdict { cocycle: d.is_empty(), s, t, expanded_terms: expanded.len(), boundary: d.iter().map(render).collect() })
}

/// (Δ⊗1)ψ = (1⊗ψ)ψ and counitality for a module definition.
pub fn is_comodule(def: &ModuleDef) -> Result<bool, ExtError> {
    let alg = build_an(def.over)?;
    let mut psi: Vec<Vec<(usize, usize)>> = vec![vec![]; def.dim()];
    for (i, r, m) in &def.coaction {
        psi[*i].push((alg.index_of(m).ok_or_else(|| ExtError::Coefficient(m.to_string()))?, *r));
    }
    let counital = (0..def.dim()).all(|i| psi[i].iter().filter(|&&(a, r)| a == 0 && r == i).count() == 1 && psi[i].iter().all(|&(a, r)| a != 0 || r == i));
    let graded = (0..def.dim()).all(|i| psi[i].iter().all(|&(a, r)| def.degrees[r] + alg.degrees[a] == def.degrees[i]));
    let coassoc = (0..def.dim()).all(|i| {
        let mut lhs = BTreeSet::new();
        let mut rhs = BTreeSet::new();
        let toggle = |s: &mut BTreeSet<(usize, usize, usize)>, x| {
            if !s.remove(&x) {
                s.insert(x);
            }
        };
        for &(a, r) in &psi[i] {
            for &(p, q) in alg.coproduct(a) {
                toggle(&mut lhs, (p, q, r));
            }
            for &(b, r2) in &psi[r] {
                toggle(&mut rhs, (a, b, r2));
            }
        }
        lhs == rhs
    });
    Ok(counital && graded && coassoc)
}

/// tmf₁ = N₂(1) over A(2)_*, containing x = ξ̄₂⁴ and y = ξ̄₁⁸ with ψ(x) = ξ̄₁⁴⊗y + 1⊗x.
pub fn nu_module() -> ModuleDef {
    ModuleDef::from_comodule(&Comodule::bg(2, 1, 2))
}

/// The representative killing h₀³h₂ for x = ξ̄₂⁴, y = ξ̄₁⁸.
pub fn nu_chain() -> Vec<CobarTerm> {
    let (x, y) = ("xb2^4", "xb1^8");
    vec![
        CobarTerm::new(&["xb1", "xb1", "xb1"], x),
        CobarTerm::new(&["xb1", "xb2", "xb2"], y),
        CobarTerm::new(&["xb1", "xb1", "xb1^2 xb2"], y),
        CobarTerm::new(&["xb1", "xb1 xb2", "xb1^2"], y),
        CobarTerm::new(&["xb2", "xb1^2", "xb1^2"], y),
    ]
}

/// A four-cell comodule y, z, w, x in degrees 0, 2, 3, 4 over A(2)_* with
/// exactly the coaction terms ψ(z) ∋ ξ̄₁²⊗y, ψ(w) ∋ ξ̄₁⊗z + ξ̄₂⊗y,
/// ψ(x) ∋ ξ̄₁⁴⊗y.
pub fn nu_hz_module() -> ModuleDef {
    let mono = |s: &str| XiMonomial::parse(s).expect("monomial");
    let (y, z, w, x) = (0, 1, 2, 3);
    let mut coaction: Vec<(usize, usize, XiMonomial)> = (0..4).map(|i| (i, i, XiMonomial::one())).collect();
    let mut add = |i: usize, r: usize, bar: &str| {
        for m in conj_to_an(&mono(bar), 2).0 {
            coaction.push((i, r, m));
        }
    };
    add(z, y, "xb1^2");
    add(w, z, "xb1");
    add(w, y, "xb2");
    add(x, y, "xb1^4");
    ModuleDef {
        name: "cells(y,z,w,x)".into(),
        over: 2,
        degrees: vec![0, 2, 3, 4],
        labels: ["y", "z", "w", "x"].map(String::from).to_vec(),
        coaction,
    }
}

pub fn nu_hz_chain() -> Vec<CobarTerm> {
    vec![
        CobarTerm::new(&["xb1"], "x"),
        CobarTerm::new(&["xb1^2"], "w"),
        CobarTerm::new(&["xb1^3"], "z"),
        CobarTerm::new(&["xb2"], "z"),
        CobarTerm::new(&["xb1^2 xb2"], "y"),
    ]
}
