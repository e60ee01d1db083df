//! Ext charts, h_i product records, v₀-tower census, JSON/CSV export.

use exactcore::{Bits, F2Matrix};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// h_i (i = 0, 1, 2) sends class `from` in (s, t) to class `to` in
/// (s+1, t+2^i); classes are numbered within their bidegree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductRecord {
    pub h: u8,
    pub s: u32,
    pub t: u64,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtChart {
    pub name: String,
    pub n: usize,
    pub t_max: u64,
    pub s_max: u32,
    #[serde(with = "pairs")]
    pub dims: BTreeMap<(u32, u64), usize>,
    pub products: Vec<ProductRecord>,
}

mod pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<(u32, u64), usize>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(&(a, b), &c)| (a, b, c)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(u32, u64), usize>, D::Error> {
        Ok(Vec::<(u32, u64, usize)>::deserialize(d)?.into_iter().map(|(a, b, c)| ((a, b), c)).collect())
    }
}

/// One row of the exported chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartRecord {
    pub s: u32,
    pub t: u64,
    pub stem: i64,
    pub dim: usize,
    /// Rank of h_i out of this group.
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    /// Classes here that survive to the top of a stable h₀-tower; empty when
    /// the stem is not stable in range.
    pub tower: Option<usize>,
}

impl ExtChart {
    pub fn dim(&self, s: u32, t: u64) -> usize {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    /// dim Ext^{s,t}, refusing bidegrees outside the computed range.
    pub fn dim_checked(&self, s: u32, t: u64) -> Result<usize, crate::ExtError> {
        if t > self.t_max || s > self.s_max {
            return Err(crate::ExtError::Range { t_max: self.t_max, needed: t.max(s as u64) });
        }
        Ok(self.dim(s, t))
    }

    /// Whether (s, t) lies inside the computed range.
    pub fn computed(&self, s: u32, t: u64) -> bool {
        s <= self.s_max && t <= self.t_max
    }

    /// Matrix of h_i : Ext^{s,t} → Ext^{s+1,t+2^i}; row per source class.
    pub fn product_matrix(&self, h: u8, s: u32, t: u64) -> F2Matrix {
        let rows = self.dim(s, t);
        let cols = self.dim(s + 1, t + (1 << h));
        let mut m = F2Matrix::zeros(rows, cols);
        for p in self.products.iter().filter(|p| p.h == h && p.s == s && p.t == t) {
            m.set(p.from, p.to, !m.get(p.from, p.to));
        }
        m
    }

    pub fn product_rank(&self, h: u8, s: u32, t: u64) -> usize {
        self.product_matrix(h, s, t).rank()
    }

    /// Products land in groups that exist.
    pub fn products_consistent(&self) -> bool {
        self.products.iter().all(|p| p.from < self.dim(p.s, p.t) && p.to < self.dim(p.s + 1, p.t + (1 << p.h)))
    }

    /// Image of the h₀-composite from filtration s to `top` in one stem, as a matrix.
    fn h0_power(&self, stem: i64, s: u32, top: u32) -> F2Matrix {
        let t = |s: u32| (stem + s as i64) as u64;
        let d = self.dim(s, t(s));
        let mut m = F2Matrix::identity(d);
        for k in s..top {
            let step = self.product_matrix(0, k, t(k));
            let next = self.dim(k + 1, t(k + 1));
            let rows: Vec<Bits> = m.rows().iter().map(|r| step.left_mul(r).expect("shape")).collect();
            m = F2Matrix::from_rows(rows, next).expect("shape");
        }
        m
    }

    pub fn records(&self, census: Option<&TowerCensus>) -> Vec<ChartRecord> {
        self.dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&(s, t), &dim)| {
                let stem = t as i64 - s as i64;
                let tower = census.and_then(|c| c.stems.iter().find(|x| x.stem == stem)).filter(|x| x.stable).map(|x| {
                    if s > x.s_top {
                        0
                    } else {
                        self.h0_power(stem, s, x.s_top).rank()
                    }
                });
                ChartRecord {
                    s,
                    t,
                    stem,
                    dim,
                    h0: self.product_rank(0, s, t),
                    h1: if self.n >= 1 { self.product_rank(1, s, t) } else { 0 },
                    h2: if self.n >= 2 { self.product_rank(2, s, t) } else { 0 },
                    tower,
                }
            })
            .collect()
    }

    pub fn to_json(&self, census: Option<&TowerCensus>) -> serde_json::Value {
        serde_json::json!({
            "module": self.name,
            "algebra": format!("A({})", self.n),
            "t_max": self.t_max,
            "s_max": self.s_max,
            "records": self.records(census),
        })
    }

    pub fn to_csv(&self, census: Option<&TowerCensus>) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(vec![]);
        for r in self.records(census) {
            w.serialize(r)?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8"))
    }

    /// Compact text table: one line per stem, dimensions by filtration.
    pub fn to_text(&self, max_stem: i64) -> String {
        let mut s = String::new();
        for stem in 0..=max_stem {
            let row: Vec<String> = (0..=self.s_max)
                .filter(|&f| self.computed(f, (stem + f as i64) as u64))
                .map(|f| self.dim(f, (stem + f as i64) as u64).to_string())
                .collect();
            s += &format!("{stem:>3}: {}\n", row.join(" "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemTowers {
    pub stem: i64,
    /// Highest filtration computed in this stem.
    pub s_top: u32,
    /// Dimensions constant and h₀ bijective over the last `margin` filtrations.
    pub stable: bool,
    pub count: usize,
    /// Filtration of the bottom of each tower.
    pub bottoms: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerCensus {
    pub margin: u32,
    pub stems: Vec<StemTowers>,
}

impl TowerCensus {
    pub fn counts(&self) -> Vec<(i64, usize)> {
        self.stems.iter().map(|s| (s.stem, s.count)).collect()
    }

    pub fn all_stable(&self) -> bool {
        self.stems.iter().all(|s| s.stable)
    }
}

pub const DEFAULT_MARGIN: u32 = 4;

/// Infinite h₀-towers per stem, read off at the top computed filtration.
pub fn v0_towers(chart: &ExtChart, stems: std::ops::RangeInclusive<i64>, margin: u32) -> TowerCensus {
    let mut out = vec![];
    for stem in stems {
        let s_top = (chart.t_max as i64 - stem).min(chart.s_max as i64).max(0) as u32;
        let t = |s: u32| (stem + s as i64) as u64;
        let stable = s_top >= margin
            && (s_top - margin..s_top).all(|s| {
                let d = chart.dim(s, t(s));
                d == chart.dim(s + 1, t(s + 1)) && chart.product_rank(0, s, t(s)) == d
            });
        let mut bottoms = vec![];
        let mut prev = 0;
        for s in 0..=s_top {
            if stem + (s as i64) < 0 {
                continue;
            }
            let r = chart.h0_power(stem, s, s_top).rank();
            bottoms.extend(std::iter::repeat(s).take(r.saturating_sub(prev)));
            prev = prev.max(r);
        }
        out.push(StemTowers { stem, s_top, stable, count: chart.dim(s_top, t(s_top)), bottoms });
    }
    TowerCensus { margin, stems: out }
}
