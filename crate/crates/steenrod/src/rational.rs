//! Generators of v₀^{-1}Ext_{A(2)_*}(Σ^{8n}bo_n) inside (A//A(2))_*, built
//! recursively from the two bo exact sequences.

use crate::ses::SteenrodError;
use crate::xi::XiMonomial;
use serde::Serialize;
use std::fmt;

pub const MAX_J: u32 = 8;

/// Σ^susp of a tensor product of (A(2)//A(1))_*, tmf_k and bo_k's, possibly
/// shifted in filtration ("[1]").
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandLabel {
    pub susp: u32,
    pub a21: bool,
    pub tmf: Option<u32>,
    /// Indices of bo factors, sorted.
    pub bos: Vec<u32>,
    pub shifted: bool,
}

impl SummandLabel {
    pub fn ring(&self) -> RingTag {
        if self.a21 {
            RingTag::V0C4
        } else {
            RingTag::V0C4C6
        }
    }
}

impl fmt::Display for SummandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        if self.a21 {
            parts.push("(A(2)//A(1))_*".to_string());
        }
        if let Some(k) = self.tmf {
            parts.push(format!("tmf_{k}"));
        }
        let mut i = 0;
        while i < self.bos.len() {
            let k = self.bos[i];
            let run = self.bos[i..].iter().take_while(|&&x| x == k).count();
            parts.push(if run == 1 { format!("bo_{k}") } else { format!("bo_{k}^{run}") });
            i += run;
        }
        if parts.is_empty() {
            parts.push("F_2".into());
        }
        if self.susp > 0 {
            write!(f, "Σ^{} ", self.susp)?;
        }
        write!(f, "{}{}", parts.join(" ⊗ "), if self.shifted { "[1]" } else { "" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RingTag {
    /// F₂[v₀^{±1}, [c₄]]
    V0C4,
    /// F₂[v₀^{±1}, [c₄], [c₆]]
    V0C4C6,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::V0C4 => write!(f, "F2[v0^±1,[c4]]"),
            RingTag::V0C4C6 => write!(f, "F2[v0^±1,[c4],[c6]]"),
        }
    }
}

/// A generator: a monomial of (A//A(2))_*, or a marker "v₀^{-4}[c₆]·m + ⋯".
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Generator {
    pub mono: XiMonomial,
    pub marker: bool,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.marker {
            write!(f, "v0^-4 [c6] {} + ...", self.mono)
        } else {
            write!(f, "{}", self.mono)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub label: SummandLabel,
    pub generators: Vec<Generator>,
}

fn g(e: &[u32]) -> XiMonomial {
    XiMonomial::from_exps(e)
}

/// Pairs (i₁, i₂) with i₁+i₂ = s, i₁ descending.
fn pairs(s: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=s).rev().map(move |i1| (i1, s - i1))
}

/// Generators from the (A(2)//A(1))_* ⊗ tmf_{j−1} term of the sequence for
/// bo_{2j+ε}: ξ̄₁^a ξ̄₂^{8i₁}ξ̄₃^{4i₂} and ξ̄₁^{a−8}ξ̄₂^{8i₁+4}ξ̄₃^{4i₂},
/// i₁+i₂ ≤ j−1, total weight 16j+8ε.
fn quotient_part(j: u32, eps: u32) -> Vec<Generator> {
    let mut out = vec![];
    for s in 0..j {
        for (i1, i2) in pairs(s) {
            let a = 16 * j + 8 * eps - 16 * s;
            out.push(Generator { mono: g(&[a, 8 * i1, 4 * i2]), marker: false });
            out.push(Generator { mono: g(&[a - 8, 8 * i1 + 4, 4 * i2]), marker: false });
        }
    }
    out
}

/// The generator table for Σ^{8n}bo_n, n ≤ 8.
pub fn rational_generators(n: u32) -> Result<Vec<Summand>, SteenrodError> {
    if n > MAX_J {
        return Err(SteenrodError::Range(n));
    }
    Ok(rec(n))
}

fn rec(n: u32) -> Vec<Summand> {
    if n == 0 {
        let label = SummandLabel { susp: 0, a21: false, tmf: None, bos: vec![], shifted: false };
        return vec![Summand { label, generators: vec![Generator { mono: XiMonomial::one(), marker: false }] }];
    }
    let j = n / 2;
    let eps = n % 2;
    let mut out = vec![];
    if j >= 1 {
        let label = SummandLabel { susp: 8 * n, a21: true, tmf: (j >= 2).then_some(j - 1), bos: vec![], shifted: false };
        out.push(Summand { label, generators: quotient_part(j, eps) });
    }
    let bo1 = [g(&[8]), g(&[0, 4])];
    for s in rec(j) {
        let mut label = s.label.clone();
        label.susp += 16 * j + 8 * eps;
        let shifted: Vec<Generator> = s.generators.iter().map(|x| Generator { mono: x.mono.shift_up(), marker: x.marker }).collect();
        let generators = if eps == 0 {
            shifted
        } else {
            label.bos.push(1);
            label.bos.sort();
            shifted.iter().flat_map(|x| bo1.iter().map(move |y| Generator { mono: x.mono.mul(y), marker: x.marker })).collect()
        };
        out.push(Summand { label, generators });
    }
    if eps == 0 {
        // Σ^{24j+8} bo_{j−1}[1]: markers ξ̄₁⁸ξ̄₂^{8i₁+4}ξ̄₃^{4i₂}, i₁+i₂ = j−1.
        let label = SummandLabel { susp: 24 * j + 8, a21: false, tmf: None, bos: if j >= 2 { vec![j - 1] } else { vec![] }, shifted: true };
        let generators = pairs(j - 1).map(|(i1, i2)| Generator { mono: g(&[8, 8 * i1 + 4, 4 * i2]), marker: true }).collect();
        out.push(Summand { label, generators });
    }
    out
}

/// The generator table as printed, per n: (summand label, entries). An entry
/// is a monomial `xb1^8 xb2^4`, a marker `v0^-4 [c6] … + ...`, or a product
/// of braced sets `{a, b}*{c, d}`.
pub const PRINTED_TABLE: &[(u32, &str, &[&str])] = &[
    (0, "F_2", &["1"]),
    (1, "Σ^8 bo_1", &["xb1^8", "xb2^4"]),
    (2, "Σ^16 (A(2)//A(1))_*", &["xb1^16", "xb1^8 xb2^4"]),
    (2, "Σ^24 bo_1", &["xb2^8", "xb3^4"]),
    (2, "Σ^32 F_2[1]", &["v0^-4 [c6] xb1^8 xb2^4 + ..."]),
    (3, "Σ^24 (A(2)//A(1))_*", &["xb1^24", "xb1^16 xb2^4"]),
    (3, "Σ^32 bo_1^2", &["{xb2^8, xb3^4}*{xb1^8, xb2^4}"]),
    (4, "Σ^32 (A(2)//A(1))_* ⊗ tmf_1", &["xb1^32", "xb1^24 xb2^4", "xb1^16 xb2^8", "xb1^8 xb2^12", "xb1^16 xb3^4", "xb1^8 xb2^4 xb3^4"]),
    (4, "Σ^48 (A(2)//A(1))_*", &["xb2^16", "xb2^8 xb3^4"]),
    (4, "Σ^56 bo_1", &["xb3^8", "xb4^4"]),
    (4, "Σ^64 F_2[1]", &["v0^-4 [c6] xb2^8 xb3^4 + ..."]),
    (4, "Σ^56 bo_1[1]", &["v0^-4 [c6] xb1^8 xb2^12 + ...", "v0^-4 [c6] xb1^8 xb2^4 xb3^4 + ..."]),
    (5, "Σ^40 (A(2)//A(1))_* ⊗ tmf_1", &["xb1^40", "xb1^32 xb2^4", "xb1^24 xb2^8", "xb1^16 xb2^12", "xb1^24 xb3^4", "xb1^16 xb2^4 xb3^4"]),
    (5, "Σ^56 (A(2)//A(1))_* ⊗ bo_1", &["{xb2^16, xb2^8 xb3^4}*{xb1^8, xb2^4}"]),
    (5, "Σ^64 bo_1^2", &["{xb3^8, xb4^4}*{xb1^8, xb2^4}"]),
    (5, "Σ^72 bo_1[1]", &["{v0^-4 [c6] xb2^8 xb3^4 + ...}*{xb1^8, xb2^4}"]),
    (
        6,
        "Σ^48 (A(2)//A(1))_* ⊗ tmf_2",
        &[
            "xb1^48", "xb1^40 xb2^4", "xb1^32 xb2^8", "xb1^24 xb2^12", "xb1^32 xb3^4", "xb1^24 xb2^4 xb3^4",
            "xb1^16 xb2^16", "xb1^8 xb2^20", "xb1^16 xb2^8 xb3^4", "xb1^8 xb2^12 xb3^4", "xb1^16 xb3^8", "xb1^8 xb2^4 xb3^8",
        ],
    ),
    (6, "Σ^72 (A(2)//A(1))_*", &["xb2^24", "xb2^16 xb3^4"]),
    (6, "Σ^80 bo_1^2", &["{xb3^8, xb4^4}*{xb2^8, xb3^4}"]),
    (6, "Σ^80 bo_2[1]", &["v0^-4 [c6] xb1^8 xb2^20 + ...", "v0^-4 [c6] xb1^8 xb2^12 xb3^4 + ...", "v0^-4 [c6] xb1^8 xb2^4 xb3^8 + ..."]),
    (
        7,
        "Σ^56 (A(2)//A(1))_* ⊗ tmf_2",
        &[
            "xb1^56", "xb1^48 xb2^4", "xb1^40 xb2^8", "xb1^32 xb2^12", "xb1^40 xb3^4", "xb1^32 xb2^4 xb3^4",
            "xb1^24 xb2^16", "xb1^16 xb2^20", "xb1^24 xb2^8 xb3^4", "xb1^16 xb2^12 xb3^4", "xb1^24 xb3^8", "xb1^16 xb2^4 xb3^8",
        ],
    ),
    (7, "Σ^80 (A(2)//A(1))_* ⊗ bo_1", &["{xb2^24, xb2^16 xb3^4}*{xb1^8, xb2^4}"]),
    (7, "Σ^88 bo_1^3", &["{xb3^8, xb4^4}*{xb2^8, xb3^4}*{xb1^8, xb2^4}"]),
    (
        8,
        "Σ^64 (A(2)//A(1))_* ⊗ tmf_3",
        &[
            "xb1^64", "xb1^56 xb2^4", "xb1^48 xb2^8", "xb1^40 xb2^12", "xb1^48 xb3^4", "xb1^40 xb2^4 xb3^4",
            "xb1^32 xb2^16", "xb1^24 xb2^20", "xb1^32 xb2^8 xb3^4", "xb1^24 xb2^12 xb3^4", "xb1^32 xb3^8", "xb1^24 xb2^4 xb3^8",
            "xb1^16 xb2^24", "xb1^8 xb2^28", "xb1^16 xb2^16 xb3^4", "xb1^8 xb2^20 xb3^4", "xb1^16 xb2^8 xb3^8", "xb1^8 xb2^12 xb3^8",
            "xb1^16 xb3^12", "xb1^8 xb2^4 xb3^12",
        ],
    ),
    (8, "Σ^96 (A(2)//A(1))_* ⊗ tmf_1", &["xb2^32", "xb2^24 xb3^4", "xb2^16 xb3^8", "xb2^8 xb3^12", "xb2^16 xb4^4", "xb2^8 xb3^4 xb4^4"]),
    (8, "Σ^112 (A(2)//A(1))_*", &["xb3^16", "xb3^8 xb4^4"]),
    (8, "Σ^120 bo_1", &["xb4^8", "xb5^4"]),
    (8, "Σ^128 F_2[1]", &["v0^-4 [c6] xb3^8 xb4^4 + ..."]),
    (8, "Σ^120 bo_1[1]", &["v0^-4 [c6] xb2^8 xb3^12 + ...", "v0^-4 [c6] xb2^8 xb3^4 xb4^4 + ..."]),
    (8, "Σ^104 bo_3[1]", &["v0^-4 [c6] xb1^8 xb2^28 + ...", "v0^-4 [c6] xb1^8 xb2^20 xb3^4 + ...", "v0^-4 [c6] xb1^8 xb2^12 xb3^8 + ..."]),
];

fn parse_generator(s: &str) -> Option<Generator> {
    let s = s.trim();
    match s.strip_prefix("v0^-4 [c6]") {
        Some(rest) => Some(Generator { mono: XiMonomial::parse(rest.trim().strip_suffix("+ ...")?)?, marker: true }),
        None => Some(Generator { mono: XiMonomial::parse(s)?, marker: false }),
    }
}

/// Expand one printed entry into generators.
pub fn parse_entry(s: &str) -> Option<Vec<Generator>> {
    if !s.contains('{') {
        return parse_generator(s).map(|x| vec![x]);
    }
    let mut acc = vec![Generator { mono: XiMonomial::one(), marker: false }];
    for set in s.split('*') {
        let body = set.trim().strip_prefix('{')?.strip_suffix('}')?;
        let items: Vec<Generator> = body.split(',').map(parse_generator).collect::<Option<_>>()?;
        acc = acc.iter().flat_map(|a| items.iter().map(move |b| Generator { mono: a.mono.mul(&b.mono), marker: a.marker || b.marker })).collect();
    }
    Some(acc)
}

/// The printed rows for n, with entries expanded.
pub fn printed_summands(n: u32) -> Vec<(String, Vec<Generator>)> {
    PRINTED_TABLE
        .iter()
        .filter(|r| r.0 == n)
        .map(|(_, label, entries)| (label.to_string(), entries.iter().flat_map(|e| parse_entry(e).expect("well-formed table entry")).collect()))
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TableDiff {
    pub n: u32,
    pub printed: usize,
    pub generated: usize,
    pub label_mismatches: Vec<(String, String)>,
    /// (label, generator) present in the recursion but not in print.
    pub extra: Vec<(String, String)>,
    /// (label, generator) printed but not produced.
    pub missing: Vec<(String, String)>,
}

impl TableDiff {
    pub fn matches(&self) -> bool {
        self.label_mismatches.is_empty() && self.extra.is_empty() && self.missing.is_empty()
    }
}

/// Compare the recursion with the printed table for n, summand by summand
/// (order of summands significant, order within a summand not).
pub fn compare_with_printed(n: u32) -> Result<TableDiff, SteenrodError> {
    let gen = rational_generators(n)?;
    let printed = printed_summands(n);
    let mut d = TableDiff { n, printed: printed.iter().map(|p| p.1.len()).sum(), generated: gen.iter().map(|s| s.generators.len()).sum(), ..Default::default() };
    for k in 0..gen.len().max(printed.len()) {
        let ours = gen.get(k).map(|s| (s.label.to_string(), s.generators.clone())).unwrap_or_default();
        let theirs = printed.get(k).cloned().unwrap_or_default();
        if ours.0 != theirs.0 {
            d.label_mismatches.push((ours.0.clone(), theirs.0.clone()));
        }
        let a: std::collections::BTreeSet<_> = ours.1.iter().collect();
        let b: std::collections::BTreeSet<_> = theirs.1.iter().collect();
        d.extra.extend(a.difference(&b).map(|x| (ours.0.clone(), x.to_string())));
        d.missing.extend(b.difference(&a).map(|x| (theirs.0.clone(), x.to_string())));
    }
    Ok(d)
}
