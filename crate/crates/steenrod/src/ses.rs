//! Splitting maps and the HZ- and bo-family exact sequences of Brown-Gitler
//! comodules, with exactness and coaction compatibility checked per degree.

use crate::comodule::{bg_basis, in_quotient_algebra, weight_bound, Comodule, Elem, Factor};
use crate::xi::{F2Poly, XiMonomial};
use exactcore::{Bits, F2Matrix};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("{m} is not in (A//A({level}))_*")]
    NotInAlgebra { m: String, level: i32 },
    #[error("weight of {m} exceeds {bound}")]
    WeightOverflow { m: String, bound: u64 },
    #[error("level {0} out of range")]
    Level(i32),
    #[error("j = {0} out of range")]
    Range(u32),
}

/// Σ^{2^{i+1}j} N_{i−1}(j) → (A//A(i))_*: ξ̄₁^{i₁}ξ̄₂^{i₂}⋯ ↦ ξ̄₁^a ξ̄₂^{i₁}ξ̄₃^{i₂}⋯
/// with a chosen so the weight is exactly 2^{i+1}j.
pub fn splitting_map(level: i32, j: u32, m: &XiMonomial) -> Result<XiMonomial, SteenrodError> {
    if !(0..=2).contains(&level) {
        return Err(SteenrodError::Level(level));
    }
    if !in_quotient_algebra(m, level - 1) {
        return Err(SteenrodError::NotInAlgebra { m: m.to_string(), level: level - 1 });
    }
    let bound = weight_bound(level - 1, j);
    if m.weight() > bound {
        return Err(SteenrodError::WeightOverflow { m: m.to_string(), bound });
    }
    let rest = m.shift_up();
    let a = weight_bound(level, j) - rest.weight();
    Ok(XiMonomial::gen(1, a as u32).mul(&rest))
}

/// A linear map on monomial bases: source index ↦ set of target indices.
pub struct ComoduleMap {
    pub name: String,
    pub images: Vec<Vec<usize>>,
}

impl ComoduleMap {
    fn from_fn(name: &str, src: &Comodule, tgt: &Comodule, f: impl Fn(&Elem) -> Option<Elem>) -> Self {
        let images = src
            .basis
            .iter()
            .map(|e| match f(e) {
                Some(t) => vec![tgt.index_of(&t).unwrap_or_else(|| panic!("{name}: image {t:?} not in {}", tgt.name))],
                None => vec![],
            })
            .collect();
        Self { name: name.into(), images }
    }

    fn apply(&self, v: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &i in v {
            for &t in &self.images[i] {
                if !out.remove(&t) {
                    out.insert(t);
                }
            }
        }
        out
    }

    pub fn preserves_degree(&self, src: &Comodule, tgt: &Comodule) -> bool {
        self.images.iter().enumerate().all(|(i, im)| im.iter().all(|&t| tgt.degree(t) == src.degree(i)))
    }

    /// ψ_T ∘ f = (1⊗f) ∘ ψ_S on every basis element.
    pub fn commutes_with_coaction(&self, src: &Comodule, tgt: &Comodule) -> bool {
        self.first_coaction_failure(src, tgt).is_none()
    }

    pub fn first_coaction_failure(&self, src: &Comodule, tgt: &Comodule) -> Option<usize> {
        (0..src.dim()).find(|&i| {
            let mut lhs: BTreeMap<usize, F2Poly> = BTreeMap::new();
            for &t in &self.images[i] {
                for (&r, a) in tgt.coaction(t) {
                    lhs.entry(r).or_default().add_assign(a);
                }
            }
            let mut rhs: BTreeMap<usize, F2Poly> = BTreeMap::new();
            for (&r, a) in src.coaction(i) {
                for &t in &self.images[r] {
                    rhs.entry(t).or_default().add_assign(a);
                }
            }
            lhs.retain(|_, p| !p.is_zero());
            rhs.retain(|_, p| !p.is_zero());
            lhs != rhs
        })
    }

    /// Matrix of the map restricted to one internal degree.
    fn matrix_in_degree(&self, src: &Comodule, tgt: &Comodule, d: u64) -> F2Matrix {
        let cols = tgt.in_degree(d);
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &t)| (t, k)).collect();
        let mut m = F2Matrix::new(cols.len());
        for i in src.in_degree(d) {
            let mut row = Bits::zeros(cols.len());
            for t in &self.images[i] {
                if let Some(&k) = pos.get(t) {
                    row.flip(k);
                }
            }
            m.push_row(row);
        }
        m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PositionReport {
    pub module: String,
    pub dim: usize,
    /// Total dimension of the image of the incoming map.
    pub image_in: usize,
    /// Total dimension of the kernel of the outgoing map.
    pub kernel_out: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub name: String,
    pub degree_preserving: bool,
    pub comodule_map: bool,
    /// A source basis element where ψ∘f ≠ (1⊗f)∘ψ, if any.
    pub coaction_witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SesReport {
    pub family: String,
    pub j: u32,
    pub odd: bool,
    pub positions: Vec<PositionReport>,
    pub maps: Vec<MapReport>,
    pub compositions_zero: bool,
    pub exact: bool,
    pub comodule_maps: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    HZ,
    Bo,
}

/// The modules and maps of one sequence, before checking.
pub struct Sequence {
    pub family: Family,
    pub j: u32,
    pub odd: bool,
    pub modules: Vec<Comodule>,
    pub maps: Vec<ComoduleMap>,
}

/// ξ̄₁^{2^{n}i₁+2^{n−1}ε₁}ξ̄₂^{…}⋯ ↦ (tail ξ̄₁^{2^n i₁}⋯, head ξ̄₁^{2^{n−1}ε₁}⋯):
/// splits a monomial of (A//A(n−1))_* into (A//A(n))_* times (A(n)//A(n−1))_*.
fn factor(m: &XiMonomial, n: usize) -> (XiMonomial, XiMonomial) {
    let mut tail = vec![];
    let mut head = vec![];
    for (i, &e) in m.exps().iter().enumerate() {
        let k = i + 1;
        if k <= n + 1 {
            let big = 1u32 << (n + 2 - k);
            tail.push(e / big * big);
            head.push(e % big);
        } else {
            tail.push(e);
            head.push(0);
        }
    }
    (XiMonomial::from_exps(&tail), XiMonomial::from_exps(&head))
}

/// Build the sequence of the given family and parity at index j ≥ 1
/// (even: N(2j), odd: N(2j+1)).
pub fn build_sequence(family: Family, j: u32, odd: bool) -> Result<Sequence, SteenrodError> {
    if j == 0 {
        return Err(SteenrodError::Range(j));
    }
    let (lvl, over) = match family {
        Family::HZ => (0, 1),
        Family::Bo => (1, 2),
    };
    let big = if odd { 2 * j + 1 } else { 2 * j };
    let shift = weight_bound(lvl + 1, j);
    let src = if odd {
        Comodule::new(shift, vec![Factor::Bg { level: lvl, bound: j }, Factor::Bg { level: lvl, bound: 1 }], over)
    } else {
        Comodule::new(shift, vec![Factor::Bg { level: lvl, bound: j }], over)
    };
    let mid = Comodule::bg(lvl, big, over);
    // HZ: bo_{j−1} ⊗ (A(1)//A(0))_*;  bo: (A(2)//A(1))_* ⊗ tmf_{j−1}.
    let quot = match family {
        Family::HZ => Comodule::new(0, vec![Factor::Bg { level: 1, bound: j - 1 }, Factor::Quot { n: 1 }], over),
        Family::Bo => Comodule::new(0, vec![Factor::Quot { n: 2 }, Factor::Bg { level: 2, bound: j - 1 }], over),
    };
    let lvl1 = lvl + 1;
    let f = ComoduleMap::from_fn("inclusion", &src, &mid, |e| {
        let s = splitting_map(lvl1, j, &e[0]).expect("source basis lies in N(j)");
        Some(vec![match e.get(1) {
            Some(y) => s.mul(y),
            None => s,
        }])
    });
    let cap = weight_bound(lvl1, j - 1);
    let g = ComoduleMap::from_fn("projection", &mid, &quot, |e| {
        let (tail, head) = factor(&e[0], over);
        if tail.weight() > cap {
            return None;
        }
        Some(match family {
            Family::HZ => vec![tail, head],
            Family::Bo => vec![head, tail],
        })
    });
    let mut modules = vec![src, mid, quot];
    let mut maps = vec![f, g];
    if family == Family::Bo && !odd {
        let cok = Comodule::new(8 * j as u64 + 9, vec![Factor::Bg { level: 1, bound: j - 1 }], over);
        let special = XiMonomial::from_exps(&[4, 2, 1]);
        let h = ComoduleMap::from_fn("cokernel", &modules[2], &cok, |e| {
            (e[0] == special && e[1].weight() == weight_bound(2, j - 1)).then(|| vec![e[1].shift_down()])
        });
        modules.push(cok);
        maps.push(h);
    }
    Ok(Sequence { family, j, odd, modules, maps })
}

impl Sequence {
    pub fn report(&self) -> SesReport {
        let n = self.modules.len();
        let top = self.modules.iter().map(|m| m.max_degree()).max().unwrap_or(0);
        let mut image_in = vec![0; n];
        let mut kernel_out = vec![0; n];
        let mut exact_at = vec![true; n];
        for d in 0..=top {
            let ranks: Vec<usize> = self.maps.iter().enumerate().map(|(k, f)| f.matrix_in_degree(&self.modules[k], &self.modules[k + 1], d).rank()).collect();
            for p in 0..n {
                let dim = self.modules[p].in_degree(d).len();
                let im = if p == 0 { 0 } else { ranks[p - 1] };
                let ker = if p == n - 1 { dim } else { dim - ranks[p] };
                image_in[p] += im;
                kernel_out[p] += ker;
                if im != ker {
                    exact_at[p] = false;
                }
            }
        }
        let compositions_zero = self.maps.windows(2).all(|w| (0..w[0].images.len()).all(|i| w[1].apply(&w[0].apply(&[i].into_iter().collect())).is_empty()));
        let maps: Vec<MapReport> = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let (s, t) = (&self.modules[k], &self.modules[k + 1]);
                let bad = f.first_coaction_failure(s, t);
                MapReport {
                    name: format!("{}: {} → {}", f.name, s.name, t.name),
                    degree_preserving: f.preserves_degree(s, t),
                    comodule_map: bad.is_none(),
                    coaction_witness: bad.map(|i| s.elem_string(i)),
                }
            })
            .collect();
        let positions: Vec<PositionReport> = (0..n)
            .map(|p| PositionReport { module: self.modules[p].name.clone(), dim: self.modules[p].dim(), image_in: image_in[p], kernel_out: kernel_out[p], exact: exact_at[p] })
            .collect();
        SesReport {
            family: format!("{:?}", self.family),
            j: self.j,
            odd: self.odd,
            exact: compositions_zero && exact_at.iter().all(|&x| x) && maps.iter().all(|m| m.degree_preserving),
            comodule_maps: maps.iter().all(|m| m.comodule_map),
            positions,
            maps,
            compositions_zero,
        }
    }
}

/// Both sequences (even and odd) of the family at index j.
pub fn ses_maps(family: Family, j: u32) -> Result<Vec<SesReport>, SteenrodError> {
    [false, true].iter().map(|&odd| build_sequence(family, j, odd).map(|s| s.report())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub level: i32,
    pub degree_cap: u64,
    pub basis_size: usize,
    pub images: usize,
    /// Monomials hit zero times or more than once, or images outside the algebra.
    pub failures: Vec<String>,
}

impl PartitionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.images == self.basis_size
    }
}

/// Check that the images of Σ^{2^{i+1}j}N_{i−1}(j) → (A//A(i))_*, over all j,
/// hit each monomial of (A//A(i))_* of degree ≤ cap exactly once.
pub fn splitting_partition(level: i32, cap: u64) -> Result<PartitionReport, SteenrodError> {
    if !(0..=2).contains(&level) {
        return Err(SteenrodError::Level(level));
    }
    // degree ≥ weight, so weight ≤ cap covers everything of degree ≤ cap
    let jmax = (cap >> (level + 1)) as u32 + 1;
    let target: BTreeSet<XiMonomial> = bg_basis(level, jmax).into_iter().filter(|m| m.degree() <= cap).collect();
    let mut hits: BTreeMap<XiMonomial, usize> = BTreeMap::new();
    let mut failures = vec![];
    let mut images = 0;
    for j in 0..=jmax {
        let shift = weight_bound(level, j);
        if shift > cap {
            break;
        }
        for m in bg_basis(level - 1, j) {
            if shift + m.degree() > cap {
                continue;
            }
            let s = splitting_map(level, j, &m)?;
            if s.degree() != shift + m.degree() {
                failures.push(format!("degree of image of {m} (j={j})"));
            }
            if !in_quotient_algebra(&s, level) {
                failures.push(format!("image {s} outside (A//A({level}))_*"));
            }
            images += 1;
            *hits.entry(s).or_default() += 1;
        }
    }
    for m in &target {
        match hits.get(m) {
            Some(1) => {}
            Some(k) => failures.push(format!("{m} hit {k} times")),
            None => failures.push(format!("{m} missed")),
        }
    }
    for m in hits.keys() {
        if !target.contains(m) {
            failures.push(format!("{m} not a target basis element"));
        }
    }
    Ok(PartitionReport { level, degree_cap: cap, basis_size: target.len(), images, failures })
}
