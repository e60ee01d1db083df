//! Exact bivariate q-expansions and 2-integrality certificates.
//!
//! A form `p(c₄, c₆, c̄₄, c̄₆)` is expanded with `c₄ ↦ E₄(q)`, `c₆ ↦ E₆(q)` and
//! the barred generators in `q̄`. Everything is done over ℤ after clearing the
//! common denominator `D`, so the grid is `D · f` on `[0,P) × [0,P)`.

use crate::forms::TwoVarForm;
use exactcore::rat::nu2_int;
use exactcore::{BigInt, Bits, Rat, Valuation};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

pub const DEFAULT_PRECISION: usize = 60;
pub const STABILITY_PRECISION: usize = 120;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QExpError {
    #[error("precision {precision} below the floor {floor} for degree {degree}")]
    BelowFloor { precision: usize, floor: usize, degree: i64 },
    #[error("form is not 2-integral to precision {precision} (ν₂ = {nu2} at q^{i} q̄^{j})")]
    NotIntegral { precision: usize, nu2: i64, i: usize, j: usize },
}

fn sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `E₄ = 1 + 240 Σ σ₃(n) qⁿ`, to `prec` terms.
pub fn e4(prec: usize) -> Vec<BigInt> {
    (0..prec).map(|n| if n == 0 { BigInt::one() } else { sigma(n as u64, 3) * 240 }).collect()
}

/// `E₆ = 1 − 504 Σ σ₅(n) qⁿ`.
pub fn e6(prec: usize) -> Vec<BigInt> {
    (0..prec).map(|n| if n == 0 { BigInt::one() } else { sigma(n as u64, 5) * -504 }).collect()
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], prec: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Cache of `E₄^a E₆^b` truncated at a fixed precision.
struct PowCache {
    prec: usize,
    e4: Vec<Vec<BigInt>>,
    e6: Vec<Vec<BigInt>>,
    mixed: HashMap<(u32, u32), Vec<BigInt>>,
    base: (Vec<BigInt>, Vec<BigInt>),
}

impl PowCache {
    fn new(prec: usize) -> Self {
        let one: Vec<BigInt> = (0..prec).map(|i| if i == 0 { BigInt::one() } else { BigInt::zero() }).collect();
        PowCache { prec, e4: vec![one.clone()], e6: vec![one], mixed: HashMap::new(), base: (e4(prec), e6(prec)) }
    }

    fn get(&mut self, a: u32, b: u32) -> Vec<BigInt> {
        if let Some(v) = self.mixed.get(&(a, b)) {
            return v.clone();
        }
        while self.e4.len() <= a as usize {
            let n = mul_trunc(self.e4.last().unwrap(), &self.base.0, self.prec);
            self.e4.push(n);
        }
        while self.e6.len() <= b as usize {
            let n = mul_trunc(self.e6.last().unwrap(), &self.base.1, self.prec);
            self.e6.push(n);
        }
        let v = mul_trunc(&self.e4[a as usize], &self.e6[b as usize], self.prec);
        self.mixed.insert((a, b), v.clone());
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion2 {
    pub prec: usize,
    /// Positive common denominator.
    pub den: BigInt,
    /// `num[i][j] / den` is the coefficient of `qⁱ q̄ʲ`.
    pub num: Vec<Vec<BigInt>>,
}

impl QExpansion2 {
    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        Rat::new(self.num[i][j].clone(), self.den.clone())
    }

    /// Minimum 2-adic valuation over the grid, with its first position (row-major).
    pub fn min_nu2(&self) -> (Valuation, Option<(usize, usize)>) {
        let dv = nu2_int(&self.den).unwrap() as i64;
        let mut best = (Valuation::Inf, None);
        for (i, row) in self.num.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if let Some(v) = nu2_int(x) {
                    let v = Valuation::Fin(v as i64 - dv);
                    if v < best.0 {
                        best = (v, Some((i, j)));
                    }
                }
            }
        }
        best
    }

    pub fn is_2integral(&self) -> bool {
        self.min_nu2().0 >= Valuation::Fin(0)
    }

    /// Reduction mod 2 of a 2-integral expansion, flattened row-major.
    pub fn mod2(&self) -> Option<Bits> {
        let dv = nu2_int(&self.den).unwrap();
        let mut out = Bits::zeros(self.prec * self.prec);
        for (i, row) in self.num.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if nu2_int(x).unwrap() < dv {
                    return None;
                }
                // den = 2^dv · odd, and odd⁻¹ ≡ 1 mod 2.
                if (x >> dv as usize).is_odd() {
                    out.set(i * self.prec + j, true);
                }
            }
        }
        Some(out)
    }

    /// Residues modulo `2^k` of a 2-integral expansion, row-major.
    pub fn residues(&self, k: u32) -> Option<Vec<BigInt>> {
        let m = BigInt::one() << k;
        let dv = nu2_int(&self.den).unwrap() as usize;
        let odd = &self.den >> dv;
        let inv = exactcore::rat::inverse_mod_pow2(&odd.mod_floor(&m), k)?;
        let mut out = Vec::with_capacity(self.prec * self.prec);
        for row in &self.num {
            for x in row {
                if !x.is_zero() && (nu2_int(x).unwrap() as usize) < dv {
                    return None;
                }
                out.push(((x >> dv) * &inv).mod_floor(&m));
            }
        }
        Some(out)
    }

    /// Nonzero coefficients as `(i, j, "p/q")`, for export.
    pub fn nonzero(&self) -> Vec<(usize, usize, Rat)> {
        let mut v = vec![];
        for (i, row) in self.num.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v.push((i, j, Rat::new(x.clone(), self.den.clone())));
                }
            }
        }
        v
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["i", "j", "coeff"])?;
        for (i, j, c) in self.nonzero() {
            out.write_record([i.to_string(), j.to_string(), exactcore::rat::rat_to_string(&c)])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Smallest precision accepted for a form of the given topological degree:
/// one more than the Sturm bound `k/12` for the total weight `k = degree/2`.
pub fn precision_floor(degree: i64) -> usize {
    (degree.max(0) / 24) as usize + 2
}

pub fn q_expand(form: &TwoVarForm, prec: usize) -> QExpansion2 {
    assert!(prec >= 1);
    let den = form.poly.denominator_lcm();
    // Group by the unbarred monomial: Σ_k s_k(q) ⊗ t_k(q̄).
    let mut groups: BTreeMap<(u32, u32), Vec<((u32, u32), BigInt)>> = BTreeMap::new();
    for (m, c) in form.poly.terms() {
        let n = (c * Rat::from_integer(den.clone())).to_integer();
        groups.entry((m[0], m[1])).or_default().push(((m[2], m[3]), n));
    }
    let mut cache = PowCache::new(prec);
    let pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = groups
        .into_iter()
        .map(|(k, bars)| {
            let s = cache.get(k.0, k.1);
            let mut t = vec![BigInt::zero(); prec];
            for (b, n) in bars {
                for (x, y) in t.iter_mut().zip(cache.get(b.0, b.1)) {
                    *x += &n * y;
                }
            }
            (s, t)
        })
        .collect();
    let num: Vec<Vec<BigInt>> = (0..prec)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![BigInt::zero(); prec];
            for (s, t) in &pairs {
                if s[i].is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(t) {
                    *x += &s[i] * y;
                }
            }
            row
        })
        .collect();
    QExpansion2 { prec, den, num }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityCert {
    pub precision: usize,
    pub stability_precision: Option<usize>,
    pub integral: bool,
    /// Minimal ν₂ over all coefficients checked; `None` for the zero form.
    pub min_nu2: Option<i64>,
    pub at: Option<(usize, usize)>,
}

/// Certify 2-integrality to precision `p`, re-checking at `2p` when `stability` is set.
pub fn is_2integral(form: &TwoVarForm, p: usize, stability: bool) -> Result<IntegralityCert, QExpError> {
    let degree = form.degree().unwrap_or(0);
    let floor = precision_floor(degree);
    if p < floor {
        return Err(QExpError::BelowFloor { precision: p, floor, degree });
    }
    let (v, at) = q_expand(form, if stability { 2 * p } else { p }).min_nu2();
    // The 2p grid contains the p grid, so one expansion answers both checks;
    // report the minimum seen on the larger square.
    Ok(IntegralityCert {
        precision: p,
        stability_precision: stability.then_some(2 * p),
        integral: v >= Valuation::Fin(0),
        min_nu2: v.finite(),
        at,
    })
}

/// Truncated single-variable product `∏(1 − qⁿ)²⁴` shifted by `q`, an independent route to Δ.
pub fn eta24(prec: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = (0..prec).map(|i| if i == 0 { BigInt::one() } else { BigInt::zero() }).collect();
    for n in 1..prec {
        for _ in 0..24 {
            for i in (n..prec).rev() {
                let t = p[i - n].clone();
                p[i] -= t;
            }
        }
    }
    let mut out = vec![BigInt::zero(); prec];
    out[1..prec].clone_from_slice(&p[..(prec - 1)]);
    out
}
