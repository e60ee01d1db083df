//! Configured pairs on which the module-side and comodule-side engines must
//! agree dimension by dimension.

use crate::algebra::build_an;
use crate::cobar::cobar_ext;
use crate::cofree::cofree_ext;
use crate::module::ComoduleData;
use crate::resolution::resolve_def;
use crate::ExtError;
use std::collections::BTreeMap;
use steenrod::{Comodule, ModuleDef};

#[derive(Clone, Debug)]
pub struct OraclePair {
    pub def: ModuleDef,
    pub t_max: u64,
    pub s_max: usize,
    /// Range for the literal cobar complex (0 = skip).
    pub cobar_t_max: u64,
}

#[derive(Clone, Debug)]
pub struct PairReport {
    pub name: String,
    pub n: usize,
    pub t_max: u64,
    pub resolution_vs_cofree: bool,
    pub resolution_vs_cobar: Option<bool>,
    /// First disagreeing bidegree, if any: (s, t, resolution, other).
    pub mismatch: Option<(u32, u64, usize, usize)>,
    pub total_dim: usize,
}

impl PairReport {
    pub fn ok(&self) -> bool {
        self.resolution_vs_cofree && self.resolution_vs_cobar.unwrap_or(true)
    }
}

fn pair(c: Comodule, t_max: u64, cobar_t_max: u64) -> OraclePair {
    OraclePair { def: ModuleDef::from_comodule(&c), t_max, s_max: t_max as usize, cobar_t_max }
}

/// F₂ over A(0), A(1) (t ≤ 24) and A(2) (t ≤ 20); HZ_j over A(1) and bo_j over
/// A(2) for j ≤ 2 (t ≤ 20).
pub fn oracle_pairs() -> Vec<OraclePair> {
    vec![
        pair(Comodule::bg(-1, 0, 0), 24, 24),
        pair(Comodule::bg(-1, 0, 1), 24, 10),
        pair(Comodule::bg(-1, 0, 2), 20, 8),
        pair(Comodule::bg(0, 1, 1), 20, 8),
        pair(Comodule::bg(0, 2, 1), 20, 0),
        pair(Comodule::bg(1, 1, 2), 20, 8),
        pair(Comodule::bg(1, 2, 2), 20, 0),
    ]
}

fn first_mismatch(a: &BTreeMap<(u32, u64), usize>, b: &BTreeMap<(u32, u64), usize>, t_max: u64, s_max: usize) -> Option<(u32, u64, usize, usize)> {
    for t in 0..=t_max {
        for s in 0..=s_max as u32 {
            let (x, y) = (a.get(&(s, t)).copied().unwrap_or(0), b.get(&(s, t)).copied().unwrap_or(0));
            if x != y {
                return Some((s, t, x, y));
            }
        }
    }
    None
}

pub fn run_pair(p: &OraclePair) -> Result<PairReport, ExtError> {
    let alg = build_an(p.def.over)?;
    let chart = resolve_def(&p.def, p.t_max, p.s_max)?.chart();
    let cof = cofree_ext(&alg, &ComoduleData::from_def(&p.def, &alg)?, p.t_max, p.s_max);
    let mut mismatch = first_mismatch(&chart.dims, &cof, p.t_max, p.s_max);
    let vs_cofree = mismatch.is_none();
    let vs_cobar = if p.cobar_t_max > 0 {
        let cob = cobar_ext(&p.def, p.cobar_t_max, p.s_max, crate::cobar::DEFAULT_GUARD)?;
        let m = first_mismatch(&chart.dims, &cob, p.cobar_t_max, p.s_max);
        mismatch = mismatch.or(m);
        Some(m.is_none())
    } else {
        None
    };
    Ok(PairReport {
        name: p.def.name.clone(),
        n: p.def.over,
        t_max: p.t_max,
        resolution_vs_cofree: vs_cofree,
        resolution_vs_cobar: vs_cobar,
        mismatch,
        total_dim: chart.dims.values().sum(),
    })
}
