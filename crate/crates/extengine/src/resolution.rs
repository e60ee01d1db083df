//! Minimal free resolutions over A(n), degree by degree in t.

use crate::algebra::{ones, AlgElem, FiniteGradedAlgebra};
use crate::chart::{ExtChart, ProductRecord};
use crate::module::FinModule;
use crate::ExtError;
use exactcore::{Bits, Echelon, F2Matrix};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub enum Boundary {
    /// s = 0: image in M (full coordinates).
    Module(Bits),
    /// s ≥ 1: coefficient of each generator of F_{s−1}.
    Free(Vec<(usize, AlgElem)>),
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub t: u64,
    pub d: Boundary,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub alg: FiniteGradedAlgebra,
    pub module: FinModule,
    pub t_max: u64,
    pub s_max: usize,
    pub gens: Vec<Vec<Generator>>,
}

/// Default range used by the chart commands.
pub fn default_t_max(n: usize) -> u64 {
    match n {
        0 => 40,
        1 => 60,
        _ => 40,
    }
}

pub fn minimal_resolution(alg: &FiniteGradedAlgebra, module: &FinModule, t_max: u64, s_max: usize) -> FreeResolution {
    let mut res = FreeResolution { alg: alg.clone(), module: module.clone(), t_max, s_max, gens: vec![] };
    for s in 0..=s_max {
        res.gens.push(vec![]);
        for t in 0..=t_max {
            res.step(s, t);
        }
    }
    res
}

impl FreeResolution {
    /// Offsets of each generator of F_s inside (F_s)_t, and the total dimension.
    fn layout(&self, s: usize, t: u64) -> (Vec<Option<usize>>, usize) {
        let mut off = vec![];
        let mut len = 0;
        for g in &self.gens[s] {
            if g.t <= t && !self.alg.in_degree(t - g.t).is_empty() {
                off.push(Some(len));
                len += self.alg.in_degree(t - g.t).len();
            } else {
                off.push(None);
            }
        }
        (off, len)
    }

    /// Basis of (F_s)_t as (generator, algebra index).
    fn basis(&self, s: usize, t: u64) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (k, g) in self.gens[s].iter().enumerate() {
            if g.t <= t {
                out.extend(self.alg.in_degree(t - g.t).iter().map(|&a| (k, a)));
            }
        }
        out
    }

    /// d(θ_a g_k) for g_k ∈ F_s, in local coordinates of the target in degree t.
    fn apply_d(&self, s: usize, k: usize, a: usize, t: u64, target: &Target) -> Bits {
        let mut out = Bits::zeros(target.len);
        match &self.gens[s][k].d {
            Boundary::Module(v) => {
                for m in v.ones() {
                    for i in self.module.act(a, m).ones() {
                        out.flip(target.module_pos[&i]);
                    }
                }
            }
            Boundary::Free(terms) => {
                for &(l, c) in terms {
                    let prod = self.alg.mul_basis_left(a, c);
                    if prod == 0 {
                        continue;
                    }
                    let base = target.offsets[l].expect("homogeneous boundary");
                    for b in ones(prod) {
                        out.flip(base + self.alg.pos_in_degree(b));
                    }
                }
            }
        }
        let _ = t;
        out
    }

    fn target(&self, s: usize, t: u64) -> Target {
        if s == 0 {
            let ids = self.module.in_degree(t);
            Target { len: ids.len(), offsets: vec![], module_pos: ids.iter().enumerate().map(|(p, &i)| (i, p)).collect() }
        } else {
            let (offsets, len) = self.layout(s - 1, t);
            Target { len, offsets, module_pos: BTreeMap::new() }
        }
    }

    fn step(&mut self, s: usize, t: u64) {
        let target = self.target(s, t);
        if target.len == 0 {
            return;
        }
        // Cycles in the target.
        let cycles: Vec<Bits> = if s == 0 {
            (0..target.len).map(|p| Bits::unit(target.len, p)).collect()
        } else {
            let below = self.target(s - 1, t);
            let rows: Vec<Bits> = self.basis(s - 1, t).iter().map(|&(k, a)| self.apply_d(s - 1, k, a, t, &below)).collect();
            if below.len == 0 {
                (0..target.len).map(|p| Bits::unit(target.len, p)).collect()
            } else {
                F2Matrix::from_rows(rows, below.len).expect("row width").left_kernel()
            }
        };
        if cycles.is_empty() {
            return;
        }
        let mut image = Echelon::new(target.len);
        for (k, a) in self.basis(s, t) {
            image.insert(self.apply_d(s, k, a, t, &target));
        }
        for v in cycles {
            if image.insert(v.clone()) {
                let d = if s == 0 {
                    let ids = self.module.in_degree(t);
                    let mut full = Bits::zeros(self.module.dim());
                    for p in v.ones() {
                        full.set(ids[p], true);
                    }
                    Boundary::Module(full)
                } else {
                    Boundary::Free(self.to_terms(s - 1, t, &target, &v))
                };
                self.gens[s].push(Generator { t, d });
            }
        }
    }

    fn to_terms(&self, s: usize, t: u64, layout: &Target, v: &Bits) -> Vec<(usize, AlgElem)> {
        let mut out = vec![];
        for (l, g) in self.gens[s].iter().enumerate() {
            let Some(base) = layout.offsets[l] else { continue };
            let alg_ids = self.alg.in_degree(t - g.t);
            let mask = alg_ids.iter().enumerate().filter(|(p, _)| v.get(base + p)).fold(0u64, |m, (_, &a)| m | 1 << a);
            if mask != 0 {
                out.push((l, mask));
            }
        }
        out
    }

    /// Generator count in bidegree (s, t).
    pub fn ext_dim(&self, s: usize, t: u64) -> usize {
        self.gens.get(s).map(|g| g.iter().filter(|g| g.t == t).count()).unwrap_or(0)
    }

    /// Index of generator k among generators of F_s in the same degree.
    fn local_index(&self, s: usize, k: usize) -> usize {
        let t = self.gens[s][k].t;
        self.gens[s][..k].iter().filter(|g| g.t == t).count()
    }

    /// d∘d = 0 on every generator.
    pub fn is_complex(&self) -> bool {
        for s in 1..self.gens.len() {
            for (k, g) in self.gens[s].iter().enumerate() {
                let target = self.target(s - 1, g.t);
                let Boundary::Free(terms) = &g.d else { return false };
                let mut acc = Bits::zeros(target.len);
                for &(l, c) in terms {
                    for a in ones(c) {
                        acc.xor_assign(&self.apply_d(s - 1, l, a, g.t, &target));
                    }
                }
                if !acc.is_zero() {
                    return false;
                }
                let _ = k;
            }
        }
        true
    }

    /// Every differential coefficient lies in the augmentation ideal, and the
    /// augmentation F₀ → M hits a minimal generating set (checked by construction).
    pub fn is_minimal(&self) -> bool {
        self.gens.iter().skip(1).flatten().all(|g| match &g.d {
            Boundary::Free(terms) => terms.iter().all(|&(_, c)| !self.alg.augmentation(c)),
            Boundary::Module(_) => false,
        })
    }

    /// Chart of Ext^{s,t}(M, F₂) with h₀, h₁, h₂ products.
    pub fn chart(&self) -> ExtChart {
        let mut dims = BTreeMap::new();
        for (s, gs) in self.gens.iter().enumerate() {
            for g in gs {
                *dims.entry((s as u32, g.t)).or_insert(0) += 1;
            }
        }
        let hs: Vec<usize> = (0..=self.alg.n.min(2)).map(|i| self.alg.sq(i)).collect();
        let mut products = vec![];
        for s in 1..self.gens.len() {
            for (k, y) in self.gens[s].iter().enumerate() {
                let Boundary::Free(terms) = &y.d else { continue };
                for &(l, c) in terms {
                    for (i, &sq) in hs.iter().enumerate() {
                        if c >> sq & 1 == 1 {
                            products.push(ProductRecord {
                                h: i as u8,
                                s: s as u32 - 1,
                                t: self.gens[s - 1][l].t,
                                from: self.local_index(s - 1, l),
                                to: self.local_index(s, k),
                            });
                        }
                    }
                }
            }
        }
        products.sort();
        ExtChart { name: self.module.name.clone(), n: self.alg.n, t_max: self.t_max, s_max: self.s_max as u32, dims, products }
    }
}

struct Target {
    len: usize,
    offsets: Vec<Option<usize>>,
    module_pos: BTreeMap<usize, usize>,
}

/// Ext chart of a comodule definition via the dual module, checking levels.
pub fn resolve_def(def: &steenrod::ModuleDef, t_max: u64, s_max: usize) -> Result<FreeResolution, ExtError> {
    let alg = crate::algebra::build_an(def.over)?;
    let m = FinModule::dual_of(def, &alg)?;
    Ok(minimal_resolution(&alg, &m, t_max, s_max))
}
