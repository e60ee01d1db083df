//! Comodule-side Ext: a minimal cofree resolution
//!
//! C₀ = C,  C_s ↪ Γ ⊗ P(C_s) via (1⊗π)ψ,  C_{s+1} = coker,
//!
//! where P is the primitive subcomodule and π a projection onto it. Then
//! Ext^{s,t}_Γ(F₂, C) = P(C_s)_t. Everything is truncated at internal degree
//! T, which is harmless because the coaction lowers degree.

use crate::algebra::FiniteGradedAlgebra;
use crate::module::ComoduleData;
use exactcore::{Bits, Echelon, F2Matrix};
use std::collections::BTreeMap;

/// Homogeneous pieces of a comodule: basis per degree, and for each basis
/// element its nonzero ψ_α in the local coordinates of degree d − |α|.
struct Graded {
    dims: Vec<usize>,
    psi: Vec<Vec<Vec<(usize, Bits)>>>,
}

impl Graded {
    fn from_data(c: &ComoduleData, t_max: u64) -> Self {
        let mut dims = vec![0; t_max as usize + 1];
        let mut local = vec![usize::MAX; c.dim()];
        for (i, &d) in c.degrees.iter().enumerate() {
            if d <= t_max {
                local[i] = dims[d as usize];
                dims[d as usize] += 1;
            }
        }
        let mut psi = dims.iter().map(|&n| vec![vec![]; n]).collect::<Vec<_>>();
        for (i, &d) in c.degrees.iter().enumerate() {
            if d > t_max {
                continue;
            }
            for (a, v) in &c.psi[i] {
                let mut w = None::<(u64, Bits)>;
                for r in v.ones() {
                    let dr = c.degrees[r];
                    let e = w.get_or_insert_with(|| (dr, Bits::zeros(dims[dr as usize])));
                    e.1.flip(local[r]);
                }
                if let Some((_, w)) = w {
                    if !w.is_zero() {
                        psi[d as usize][local[i]].push((*a, w));
                    }
                }
            }
        }
        Graded { dims, psi }
    }
}

/// dim Ext^{s,t}_{A(n)_*}(F₂, C) for s ≤ s_max, t ≤ t_max.
pub fn cofree_ext(alg: &FiniteGradedAlgebra, c: &ComoduleData, t_max: u64, s_max: usize) -> BTreeMap<(u32, u64), usize> {
    let gens = alg.generators();
    let mut cur = Graded::from_data(c, t_max);
    let mut out = BTreeMap::new();
    for s in 0..=s_max {
        // Primitives per degree, in reduced echelon form with pivots.
        let mut prims: Vec<(Vec<Bits>, Vec<usize>)> = vec![];
        for (d, &n) in cur.dims.iter().enumerate() {
            if n == 0 {
                prims.push((vec![], vec![]));
                continue;
            }
            // Columns: for each generator g, the coordinates of ψ_g(x).
            let widths: Vec<(usize, usize)> = gens
                .iter()
                .map(|&g| {
                    let dg = alg.degrees[g] as usize;
                    (g, if dg <= d { cur.dims[d - dg] } else { 0 })
                })
                .collect();
            let total: usize = widths.iter().map(|w| w.1).sum();
            let rows: Vec<Bits> = (0..n)
                .map(|x| {
                    let mut row = Bits::zeros(total);
                    let mut off = 0;
                    for &(g, w) in &widths {
                        if let Some((_, v)) = cur.psi[d][x].iter().find(|(a, _)| *a == g) {
                            for r in v.ones() {
                                row.set(off + r, true);
                            }
                        }
                        off += w;
                    }
                    row
                })
                .collect();
            let ker = if total == 0 { (0..n).map(|x| Bits::unit(n, x)).collect() } else { F2Matrix::from_rows(rows, total).expect("width").left_kernel() };
            let mut m = F2Matrix::from_rows(ker, n).expect("width");
            let piv = m.row_reduce();
            let basis = m.rows()[..piv.len()].to_vec();
            if !basis.is_empty() {
                out.insert((s as u32, d as u64), basis.len());
            }
            prims.push((basis, piv));
        }
        if s == s_max {
            break;
        }
        cur = cokernel(alg, &cur, &prims, t_max);
    }
    out
}

/// Γ ⊗ P modulo the image of (1⊗π)ψ.
fn cokernel(alg: &FiniteGradedAlgebra, c: &Graded, prims: &[(Vec<Bits>, Vec<usize>)], t_max: u64) -> Graded {
    let top = t_max as usize;
    // Γ⊗P basis per degree: (α, degree of p, index of p).
    let mut cof: Vec<Vec<(usize, usize, usize)>> = vec![vec![]; top + 1];
    for (dp, (basis, _)) in prims.iter().enumerate() {
        for p in 0..basis.len() {
            for a in 0..alg.dim() {
                let d = dp + alg.degrees[a] as usize;
                if d <= top {
                    cof[d].push((a, dp, p));
                }
            }
        }
    }
    let index: Vec<BTreeMap<(usize, usize, usize), usize>> = cof.iter().map(|v| v.iter().enumerate().map(|(i, &k)| (k, i)).collect()).collect();
    let pi = |dp: usize, v: &Bits| -> Vec<usize> {
        let (_, piv) = &prims[dp];
        piv.iter().enumerate().filter(|(_, &col)| v.get(col)).map(|(k, _)| k).collect()
    };
    // Image of ι in each degree.
    let mut echelons: Vec<Echelon> = vec![];
    for d in 0..=top {
        let mut e = Echelon::new(cof[d].len());
        for x in 0..c.dims[d] {
            let mut row = Bits::zeros(cof[d].len());
            for p in pi(d, &Bits::unit(c.dims[d], x)) {
                row.flip(index[d][&(0, d, p)]);
            }
            for (a, v) in &c.psi[d][x] {
                let dp = d - alg.degrees[*a] as usize;
                for p in pi(dp, v) {
                    row.flip(index[d][&(*a, dp, p)]);
                }
            }
            let independent = e.insert(row);
            debug_assert!(independent, "ι is injective");
        }
        echelons.push(e);
    }
    // Quotient basis: non-pivot coordinates.
    let free_cols: Vec<Vec<usize>> = (0..=top).map(|d| (0..cof[d].len()).filter(|&i| !echelons[d].is_pivot(i)).collect()).collect();
    let free_pos: Vec<BTreeMap<usize, usize>> = free_cols.iter().map(|v| v.iter().enumerate().map(|(k, &i)| (i, k)).collect()).collect();
    let dims: Vec<usize> = free_cols.iter().map(|v| v.len()).collect();
    let mut psi = dims.iter().map(|&n| vec![vec![]; n]).collect::<Vec<_>>();
    for d in 0..=top {
        for (k, &col) in free_cols[d].iter().enumerate() {
            let (b, dp, p) = cof[d][col];
            // ψ_α(β⊗p) = Σ_{Δβ ∋ α⊗β''} β''⊗p.
            let mut by: BTreeMap<usize, Bits> = BTreeMap::new();
            for &(a, b2) in alg.coproduct(b) {
                if a == 0 {
                    continue;
                }
                let d2 = d - alg.degrees[a] as usize;
                by.entry(a).or_insert_with(|| Bits::zeros(cof[d2].len())).flip(index[d2][&(b2, dp, p)]);
            }
            for (a, mut v) in by {
                let d2 = d - alg.degrees[a] as usize;
                echelons[d2].reduce(&mut v);
                let mut w = Bits::zeros(dims[d2]);
                for i in v.ones() {
                    w.set(free_pos[d2][&i], true);
                }
                if !w.is_zero() {
                    psi[d][k].push((a, w));
                }
            }
        }
    }
    Graded { dims, psi }
}
