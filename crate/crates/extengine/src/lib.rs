//! Ext over A(0), A(1), A(2): minimal free resolutions on the module side,
//! a cofree resolution and the literal cobar complex on the comodule side,
//! charts with h₀/h₁/h₂, v₀-tower census, and cobar-cocycle checks.

pub mod algebra;
pub mod chart;
pub mod cobar;
pub mod cofree;
pub mod module;
pub mod oracle;
pub mod resolution;

pub use algebra::{build_an, AlgElem, FiniteGradedAlgebra};
pub use chart::{v0_towers, ChartRecord, ExtChart, ProductRecord, StemTowers, TowerCensus, DEFAULT_MARGIN};
pub use cobar::{cobar_cocycle_check, cobar_ext, parse_chain, CobarTerm, CocycleVerdict, DEFAULT_GUARD};
pub use cofree::cofree_ext;
pub use module::{direct_sum, restrict, shift, truncate, ComoduleData, FinModule};
pub use oracle::{oracle_pairs, OraclePair, PairReport};
pub use resolution::{default_t_max, minimal_resolution, resolve_def, FreeResolution};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtError {
    #[error("A({0}) is not supported (n must be 0, 1 or 2)")]
    Level(usize),
    #[error("comodule is over A({module})_* but the algebra is A({algebra})")]
    LevelMismatch { module: usize, algebra: usize },
    #[error("coefficient {0} is not in the comodule")]
    Coefficient(String),
    #[error("cobar guard exceeded: {dim} cochains > {guard}")]
    Guard { dim: usize, guard: usize },
    #[error("t_max {t_max} too small for the requested range (needs {needed})")]
    Range { t_max: u64, needed: u64 },
    #[error("chain terms have different bidegrees")]
    Inhomogeneous,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Chart of Ext_{A(n)_*}(F₂, C) for a comodule definition, computed through
/// `t_max` with s ≤ `s_max`.
pub fn ext_chart(def: &steenrod::ModuleDef, t_max: u64, s_max: usize) -> Result<ExtChart, ExtError> {
    Ok(resolve_def(def, t_max, s_max)?.chart())
}
