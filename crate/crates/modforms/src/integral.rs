//! Integralization: given a rational form whose q-expansion has bounded
//! 2-power denominators, add library corrections so that dividing by 2 stays
//! integral, as long as the mod-2 reduction lies in the library's span.

use crate::forms::TwoVarForm;
use crate::qexp::q_expand;
use exactcore::{f2_solve, nu2, BigInt, F2Matrix, Rat, Solve, Valuation};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

const MAX_STEPS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntegralizeError {
    #[error("zero form")]
    Zero,
    #[error("library entry {0} is not 2-integral")]
    LibraryNotIntegral(String),
    #[error("denominator 2^{k} cannot be cleared: reduction not in the library span")]
    Stuck { k: i64 },
    #[error("no fixed point after {0} steps")]
    NoFixedPoint(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Integralized {
    pub form: TwoVarForm,
    /// Net number of halvings performed after the form became integral.
    pub halvings: u32,
    /// Library names added at each step (with multiplicity across steps).
    pub added: Vec<String>,
}

/// Repeatedly: scale to an integral expansion `g = 2^k·cur` (k ≥ 0), write
/// `g mod 2` as a sum of library reductions `Σh`, and replace `cur` with
/// `(g + Σh)/2^{k+…}`. Stops once the integral form's reduction is outside
/// the span of the library.
pub fn integralize(approx: &TwoVarForm, library: &[(String, TwoVarForm)], prec: usize) -> Result<Integralized, IntegralizeError> {
    if approx.is_zero() {
        return Err(IntegralizeError::Zero);
    }
    let mut rows = vec![];
    for (name, h) in library {
        match q_expand(h, prec).mod2() {
            Some(b) => rows.push(b),
            None => return Err(IntegralizeError::LibraryNotIntegral(name.clone())),
        }
    }
    let ncols = prec * prec;
    let m = F2Matrix::from_rows(rows, ncols).expect("uniform width");
    let mut cur = approx.clone();
    let mut halvings = 0;
    let mut added = vec![];
    for _ in 0..MAX_STEPS {
        if cur.is_zero() {
            return Err(IntegralizeError::Zero);
        }
        let e = q_expand(&cur, prec);
        let v = e.min_nu2().0;
        let k = match v {
            Valuation::Fin(v) if v < 0 => -v,
            _ => 0,
        };
        let two_k = Rat::from_integer(BigInt::one() << k as usize);
        let g = cur.scale(&two_k);
        let bits = q_expand(&g, prec).mod2().expect("scaled to be integral");
        match f2_solve(&m, &bits).expect("widths agree") {
            Solve::Solution(x) => {
                let mut corr = TwoVarForm::zero();
                for i in x.ones() {
                    corr = corr + &library[i].1;
                    added.push(library[i].0.clone());
                }
                if k > 0 {
                    cur = cur + corr.scale(&two_k.recip());
                } else {
                    cur = (cur + corr).scale(&Rat::new(1.into(), 2.into()));
                    halvings += 1;
                }
            }
            Solve::Inconsistent => {
                if k > 0 {
                    return Err(IntegralizeError::Stuck { k });
                }
                return Ok(Integralized { form: cur, halvings, added });
            }
        }
    }
    Err(IntegralizeError::NoFixedPoint(MAX_STEPS))
}

/// Monomial coordinates of the forms, with a shared column order.
fn coordinates(forms: &[&TwoVarForm]) -> Vec<Vec<Rat>> {
    let mut cols: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for f in forms {
        for m in f.poly.terms().keys() {
            let n = cols.len();
            cols.entry(m.clone()).or_insert(n);
        }
    }
    forms
        .iter()
        .map(|f| {
            let mut v = vec![Rat::zero(); cols.len()];
            for (m, c) in f.poly.terms() {
                v[cols[m]] = c.clone();
            }
            v
        })
        .collect()
}

/// Solve `Σ xᵢ vᵢ = target` over ℚ (any solution), by Gaussian elimination on columns.
pub fn solve_rational(vectors: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = vectors.len();
    let rows = target.len();
    // Augmented matrix: one row per coordinate.
    let mut a: Vec<Vec<Rat>> = (0..rows).map(|r| vectors.iter().map(|v| v[r].clone()).chain([target[r].clone()]).collect()).collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=n {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..rows).any(|i| !a[i][n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n].clone();
    }
    Some(x)
}

/// `a = λ b + Σ μᵢ libᵢ` with `λ` a 2-adic unit and every `μᵢ` 2-integral.
/// Only checks the particular solution found; adequate when the library is
/// linearly independent of `b` (the intended use).
pub fn equivalent_mod_span(a: &TwoVarForm, b: &TwoVarForm, library: &[TwoVarForm]) -> bool {
    let mut all: Vec<&TwoVarForm> = vec![a, b];
    all.extend(library.iter());
    let coords = coordinates(&all);
    let Some(x) = solve_rational(&coords[1..], &coords[0]) else { return false };
    nu2(&x[0]) == Valuation::Fin(0) && x[1..].iter().all(|m| nu2(m) >= Valuation::Fin(0))
}
