//! 2-local numerical polynomials and the K-theory cooperation lattices.
//!
//! `KU₀bu` is described by the odd-shifted Mahler basis
//! `g_n(w) = (w−1)(w−3)⋯(w−(2n−1)) / 2ⁿn!`, and `KO₀bo` by the 9-Mahler basis
//! `f_n(w²) = Π_{k<n}(w²−9^k) / Π_{k<n}(9ⁿ−9^k)`. Gradings: `|u| = 2`, `|η| = 1`,
//! `AF(u) = 1`, `AF(η) = 1`, `AF(2) = 1`.

use exactcore::rat::{alpha, binomial, nu2};
use exactcore::{int, Rat, Valuation};
use num_traits::{One, Zero};
use serde::Serialize;
use std::io;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasisKind {
    /// `g_n(w)`, domain the odd 2-adic integers.
    G,
    /// `f_n(w²)`, domain `w ∈ 3^ℤ₂`.
    F,
}

/// Which variable the coefficient vector is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PolyVar {
    W,
    W2,
}

/// Dense polynomial over ℚ in `w` or in `w²`.
#[derive(Debug, Serialize)]
pub struct NumPolyQ {
    pub var: PolyVar,
    #[serde(serialize_with = "ser_coeffs")]
    coeffs: Vec<Rat>,
    #[serde(skip)]
    g_cache: OnceLock<Vec<Rat>>,
    #[serde(skip)]
    f_cache: OnceLock<Vec<Rat>>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(c.len()))?;
    for x in c {
        seq.serialize_element(&exactcore::rat::rat_to_string(x))?;
    }
    seq.end()
}

impl Clone for NumPolyQ {
    fn clone(&self) -> Self {
        NumPolyQ::new(self.var, self.coeffs.clone())
    }
}

impl PartialEq for NumPolyQ {
    fn eq(&self, o: &Self) -> bool {
        self.var == o.var && self.coeffs == o.coeffs
    }
}

impl NumPolyQ {
    pub fn new(var: PolyVar, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        NumPolyQ { var, coeffs, g_cache: OnceLock::new(), f_cache: OnceLock::new() }
    }

    pub fn constant(var: PolyVar, c: Rat) -> Self {
        Self::new(var, vec![c])
    }

    /// The variable itself (`w` or `w²`).
    pub fn x(var: PolyVar) -> Self {
        Self::new(var, vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in the stored variable; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a polynomial in `w`.
    pub fn w_degree(&self) -> Option<usize> {
        self.degree().map(|d| if self.var == PolyVar::W2 { 2 * d } else { d })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.var, o.var);
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rat::zero();
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect();
        Self::new(self.var, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.var, o.var);
        if self.is_zero() || o.is_zero() {
            return Self::new(self.var, vec![]);
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(self.var, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(self.var, Rat::one()), |acc, _| acc.mul(self))
    }

    /// Evaluate at a value of the stored variable.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Evaluate at a value of `w`.
    pub fn eval_w(&self, w: &Rat) -> Rat {
        match self.var {
            PolyVar::W => self.eval(w),
            PolyVar::W2 => self.eval(&(w * w)),
        }
    }

    /// Rewrite a polynomial in `w²` as a polynomial in `w`.
    pub fn in_w(&self) -> Self {
        match self.var {
            PolyVar::W => self.clone(),
            PolyVar::W2 => {
                let mut c = vec![Rat::zero(); 2 * self.coeffs.len()];
                for (i, a) in self.coeffs.iter().enumerate() {
                    c[2 * i] = a.clone();
                }
                Self::new(PolyVar::W, c)
            }
        }
    }

    /// Coefficients over the requested basis; the expansion is finite and exact.
    pub fn expansion(&self, kind: BasisKind) -> &[Rat] {
        match kind {
            BasisKind::G => self.g_cache.get_or_init(|| g_expand(&self.in_w())),
            BasisKind::F => self.f_cache.get_or_init(|| {
                assert_eq!(self.var, PolyVar::W2, "9-Mahler expansion needs a polynomial in w²");
                f_expand(self)
            }),
        }
    }

    /// Rebuild the polynomial from basis coefficients.
    pub fn from_expansion(kind: BasisKind, c: &[Rat]) -> Self {
        let var = match kind {
            BasisKind::G => PolyVar::W,
            BasisKind::F => PolyVar::W2,
        };
        c.iter().enumerate().fold(Self::new(var, vec![]), |acc, (n, a)| {
            let b = match kind {
                BasisKind::G => g_basis(n),
                BasisKind::F => f9_basis(n),
            };
            acc.add(&b.scale(a))
        })
    }

    /// Minimum of `ν₂(c_n) + AF(basis_n)` over the expansion; the Adams
    /// filtration of `u^k · self` is this plus the `u`-exponent.
    pub fn adams_filtration(&self, kind: BasisKind) -> Valuation {
        self.expansion(kind)
            .iter()
            .enumerate()
            .map(|(n, c)| nu2(c) + Valuation::Fin(af_of_basis(kind, n as u64)))
            .min()
            .unwrap_or(Valuation::Inf)
    }
}

// g_k(2m+1) = C(m,k), so the coefficients are forward differences of the
// values at w = 1, 3, 5, ….
fn g_expand(p: &NumPolyQ) -> Vec<Rat> {
    let Some(d) = p.degree() else { return vec![] };
    let vals: Vec<Rat> = (0..=d as i64).map(|m| p.eval(&int(2 * m + 1))).collect();
    (0..=d)
        .map(|k| {
            (0..=k).fold(Rat::zero(), |acc, i| {
                let t = Rat::from_integer(binomial(k as u64, i as u64)) * &vals[i];
                if (k - i) % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            })
        })
        .collect()
}

// f_n(9^k) vanishes for k < n and is 1 at k = n: unit lower-triangular solve.
fn f_expand(p: &NumPolyQ) -> Vec<Rat> {
    let Some(d) = p.degree() else { return vec![] };
    let basis: Vec<NumPolyQ> = (0..=d).map(f9_basis).collect();
    let mut c: Vec<Rat> = vec![];
    for k in 0..=d {
        let x = nine_pow(k as i64);
        let mut r = p.eval(&x);
        for (n, cn) in c.iter().enumerate() {
            r -= cn * basis[n].eval(&x);
        }
        c.push(r);
    }
    c
}

fn nine_pow(k: i64) -> Rat {
    let nine = int(9);
    if k >= 0 {
        num_traits::pow(nine, k as usize)
    } else {
        num_traits::pow(nine, (-k) as usize).recip()
    }
}

/// `3^k` for any integer `k`, exactly.
pub fn three_pow(k: i64) -> Rat {
    let three = int(3);
    if k >= 0 {
        num_traits::pow(three, k as usize)
    } else {
        num_traits::pow(three, (-k) as usize).recip()
    }
}

pub fn g_basis(n: usize) -> NumPolyQ {
    let mut p = NumPolyQ::constant(PolyVar::W, Rat::one());
    for k in 1..=n as i64 {
        p = p.mul(&NumPolyQ::new(PolyVar::W, vec![int(-(2 * k - 1)), Rat::one()]));
    }
    let den = Rat::from_integer(exactcore::rat::factorial(n as u64) << n);
    p.scale(&den.recip())
}

/// `Π_{k<n}(9ⁿ − 9^k)`.
pub fn f9_denominator(n: usize) -> Rat {
    (0..n).fold(Rat::one(), |acc, k| acc * (nine_pow(n as i64) - nine_pow(k as i64)))
}

pub fn f9_basis(n: usize) -> NumPolyQ {
    let mut p = NumPolyQ::constant(PolyVar::W2, Rat::one());
    for k in 0..n {
        p = p.mul(&NumPolyQ::new(PolyVar::W2, vec![-nine_pow(k as i64), Rat::one()]));
    }
    p.scale(&f9_denominator(n).recip())
}

pub fn af_of_basis(kind: BasisKind, n: u64) -> i64 {
    let a = alpha(n) as i64;
    match kind {
        BasisKind::G => a - 2 * n as i64,
        BasisKind::F => a - 4 * n as i64,
    }
}

/// `f_n(w²)` written over the `g`-basis.
pub fn expand_in_g(n: usize) -> Vec<Rat> {
    f9_basis(n).expansion(BasisKind::G).to_vec()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Theory {
    Bu,
    Bo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `2^e u^m g_n(w)` in bu*bu.
    Bu,
    /// `2^e u^{2m} f_n(w²)`, `m` even.
    BoFree,
    /// `2^e · 2u^{2m} f_n(w²)`, `m` odd.
    BoV0,
    /// `u^{2m} f_n(w²) η^c`, `m` even, `c ∈ {1, 2}`.
    BoEta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeGenerator {
    pub n: u64,
    pub m: u64,
    pub two_power: u64,
    pub eta_power: u32,
    pub family: Family,
}

impl LatticeGenerator {
    /// Total power of 2 multiplying `u^· basis_n`, counting the built-in 2 of `BoV0`.
    pub fn total_two_power(&self) -> u64 {
        self.two_power + u64::from(self.family == Family::BoV0)
    }

    pub fn stem(&self) -> u64 {
        match self.family {
            Family::Bu => 2 * self.m,
            _ => 4 * self.m + self.eta_power as u64,
        }
    }

    /// Adams filtration of the generator from the basis filtrations.
    pub fn adams_filtration(&self) -> i64 {
        let (kind, upow) = match self.family {
            Family::Bu => (BasisKind::G, self.m as i64),
            _ => (BasisKind::F, 2 * self.m as i64),
        };
        self.total_two_power() as i64 + upow + af_of_basis(kind, self.n) + self.eta_power as i64
    }

    pub fn label(&self) -> String {
        let two = match self.total_two_power() {
            0 => String::new(),
            1 => "2*".into(),
            e => format!("2^{e}*"),
        };
        match self.family {
            Family::Bu => format!("{two}u^{}*g_{}", self.m, self.n),
            Family::BoEta => format!("u^{}*f_{}*eta^{}", 2 * self.m, self.n, self.eta_power),
            _ => format!("{two}u^{}*f_{}", 2 * self.m, self.n),
        }
    }
}

fn pos(x: i64) -> u64 {
    x.max(0) as u64
}

fn bo_generators(n: u64, m: u64) -> Vec<LatticeGenerator> {
    let a = alpha(n) as i64;
    let (n_, m_) = (n as i64, m as i64);
    let mut out = vec![];
    if m % 2 == 0 {
        out.push(LatticeGenerator { n, m, two_power: pos(4 * n_ - 2 * m_ - a), eta_power: 0, family: Family::BoFree });
        for c in 1..=2u32 {
            if a - 4 * n_ + 2 * m_ + c as i64 >= 0 {
                out.push(LatticeGenerator { n, m, two_power: 0, eta_power: c, family: Family::BoEta });
            }
        }
    } else {
        out.push(LatticeGenerator { n, m, two_power: pos(4 * n_ - 2 * m_ - 1 - a), eta_power: 0, family: Family::BoV0 });
    }
    out
}

/// Generators of `bu*bu` or `bo*bo` modulo `v₁`-torsion whose stem lies in `stems`.
pub fn lattice(theory: Theory, stems: std::ops::RangeInclusive<u64>) -> Vec<LatticeGenerator> {
    let max = *stems.end();
    let mut out = vec![];
    match theory {
        Theory::Bu => {
            for m in 0..=max / 2 {
                for n in 0..=m {
                    let two_power = pos(2 * n as i64 - m as i64 - alpha(n) as i64);
                    out.push(LatticeGenerator { n, m, two_power, eta_power: 0, family: Family::Bu });
                }
            }
        }
        Theory::Bo => {
            for m in 0..=max / 4 {
                for n in 0..=m {
                    out.extend(bo_generators(n, m));
                }
            }
        }
    }
    out.retain(|g| stems.contains(&g.stem()));
    out.sort_by_key(|g| (g.stem(), g.n, g.family, g.eta_power));
    out
}

/// `b_j = 2^{2j−α(j)} u^{2j} f_j(w²)`: the `u`-exponent and the polynomial factor.
pub fn b_j(j: u64) -> (u64, NumPolyQ) {
    let e = 2 * j - alpha(j) as u64;
    let two = Rat::from_integer(exactcore::BigInt::one() << e);
    (2 * j, f9_basis(j as usize).scale(&two))
}

#[derive(Clone, Debug, Serialize)]
pub struct HzImage {
    pub j: u64,
    /// Exponent of 2 in `b_j`.
    pub b_two_power: u64,
    pub generators: Vec<LatticeGenerator>,
}

/// Image of `Ext(bo ∧ Σ^{4j} HZ_j)` in `Ext(bo ∧ bo)` modulo `v₁`-torsion:
/// the bo families restricted to `n = j`, with `two_power` read as the `v₀`-power.
pub fn hz_image(j: u64, stems: std::ops::RangeInclusive<u64>) -> HzImage {
    let max = *stems.end();
    let mut generators: Vec<LatticeGenerator> =
        (j..=max / 4).flat_map(|m| bo_generators(j, m)).filter(|g| stems.contains(&g.stem())).collect();
    generators.sort_by_key(|g| (g.stem(), g.family, g.eta_power));
    HzImage { j, b_two_power: 2 * j - alpha(j) as u64, generators }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalMatrix {
    /// `entries[j][k] = f_j(9^k)`.
    #[serde(serialize_with = "ser_matrix")]
    pub entries: Vec<Vec<Rat>>,
    pub upper_triangular_unit: bool,
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(exactcore::rat::rat_to_string).collect()).collect();
    v.serialize(s)
}

pub fn eval_matrix(j_max: usize, k_max: usize) -> EvalMatrix {
    let entries: Vec<Vec<Rat>> = (0..=j_max)
        .map(|j| {
            let f = f9_basis(j);
            (0..=k_max).map(|k| f.eval(&nine_pow(k as i64))).collect()
        })
        .collect();
    let upper_triangular_unit = entries.iter().enumerate().all(|(j, row)| {
        row.iter().enumerate().all(|(k, x)| match k.cmp(&j) {
            std::cmp::Ordering::Less => x.is_zero(),
            std::cmp::Ordering::Equal => x.is_one(),
            std::cmp::Ordering::Greater => true,
        })
    });
    EvalMatrix { entries, upper_triangular_unit }
}

pub fn write_af_csv<W: io::Write>(w: W, n_max: u64) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "binary", "af_g", "af_f"])?;
    for n in 0..=n_max {
        out.write_record([
            n.to_string(),
            format!("{n:b}"),
            af_of_basis(BasisKind::G, n).to_string(),
            af_of_basis(BasisKind::F, n).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_lattice_csv<W: io::Write>(w: W, gens: &[LatticeGenerator]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["stem", "family", "n", "m", "two_power", "eta_power", "adams_filtration", "label"])?;
    for g in gens {
        out.write_record([
            g.stem().to_string(),
            format!("{:?}", g.family),
            g.n.to_string(),
            g.m.to_string(),
            g.two_power.to_string(),
            g.eta_power.to_string(),
            g.adams_filtration().to_string(),
            g.label(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_eval_csv<W: io::Write>(w: W, m: &EvalMatrix) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (j, row) in m.entries.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            out.write_record([j.to_string(), k.to_string(), exactcore::rat::rat_to_string(x)])?;
        }
    }
    out.flush()?;
    Ok(())
}
