//! Level-structure pushforwards `Ψ₃`, `Ψ₅` and leading terms.
//!
//! `Ψ_N(p) = p(f*c₄, f*c₆, q*c̄₄, q*c̄₆)` where `f` forgets the level
//! structure and `q` is the quotient isogeny. Degrees are topological:
//! `|a₁| = 2, |a₃| = 6` and `|b₂| = 4, |b₄| = |δ| = 8`.

use crate::forms::{two_var_ring, TwoVarForm};
use exactcore::rat::{is_2local, rat_display};
use exactcore::{int, nu2, GradedPoly, Rat, Ring, Valuation};
use serde::Serialize;
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

pub fn gamma03_ring() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::new(&[("a1", 2), ("a3", 6)])).clone()
}

/// ℚ[b₂, δ]; the `b₄`-linear part of a Γ₀(5) form is carried separately.
pub fn gamma05_base_ring() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::new(&[("b2", 4), ("d", 8)])).clone()
}

/// Which printed expression is used for `f*(c₆)`, and whether `q*(c₆)` is negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignConvention {
    /// Use `a₁⁶ + 36a₁³a₃ − 216a₃²` (the Γ₁(3) generator list) instead of the
    /// pushforward table's `−a₁⁶ + 36a₁³a₃ − 216a₃²`. Level 3 only.
    pub f_c6_from_generator_list: bool,
    /// Negate both printed `q*(c₆)` formulas.
    pub negate_q_c6: bool,
}

/// The convention pinned by `Ψ₃(f̃̃₉) = 0` together with `f*Δ` consistency.
pub const PINNED: SignConvention = SignConvention { f_c6_from_generator_list: false, negate_q_c6: false };

pub const ALL_CONVENTIONS: [SignConvention; 4] = [
    SignConvention { f_c6_from_generator_list: false, negate_q_c6: false },
    SignConvention { f_c6_from_generator_list: false, negate_q_c6: true },
    SignConvention { f_c6_from_generator_list: true, negate_q_c6: false },
    SignConvention { f_c6_from_generator_list: true, negate_q_c6: true },
];

fn p3(terms: &[(i64, u32, u32)]) -> GradedPoly {
    let r = gamma03_ring();
    GradedPoly::from_terms(&r, terms.iter().map(|&(c, i, j)| (vec![i, j], int(c))))
}

/// `(f*c₄, f*c₆, q*c₄, q*c₆)` in ℚ[a₁, a₃].
pub fn level3_images(conv: SignConvention) -> [GradedPoly; 4] {
    let f_c6 = if conv.f_c6_from_generator_list {
        p3(&[(1, 6, 0), (36, 3, 1), (-216, 0, 2)])
    } else {
        p3(&[(-1, 6, 0), (36, 3, 1), (-216, 0, 2)])
    };
    let q_c6 = p3(&[(-1, 6, 0), (540, 3, 1), (5832, 0, 2)]);
    let q_c6 = if conv.negate_q_c6 { -q_c6 } else { q_c6 };
    [p3(&[(1, 4, 0), (-24, 1, 1)]), f_c6, p3(&[(1, 4, 0), (216, 1, 1)]), q_c6]
}

/// An element `c₀ + c₁·b₄` of M_*(Γ₀(5)) ⊗ ℚ in normal form (`b₄² = b₂²δ − 4δ²`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma05Poly {
    pub c0: GradedPoly,
    pub c1: GradedPoly,
}

impl Gamma05Poly {
    pub fn zero() -> Self {
        let r = gamma05_base_ring();
        Gamma05Poly { c0: GradedPoly::zero(&r), c1: GradedPoly::zero(&r) }
    }

    pub fn one() -> Self {
        let r = gamma05_base_ring();
        Gamma05Poly { c0: GradedPoly::one(&r), c1: GradedPoly::zero(&r) }
    }

    pub fn b2() -> Self {
        let r = gamma05_base_ring();
        Gamma05Poly { c0: GradedPoly::var(&r, 0), c1: GradedPoly::zero(&r) }
    }

    pub fn delta() -> Self {
        let r = gamma05_base_ring();
        Gamma05Poly { c0: GradedPoly::var(&r, 1), c1: GradedPoly::zero(&r) }
    }

    pub fn b4() -> Self {
        let r = gamma05_base_ring();
        Gamma05Poly { c0: GradedPoly::zero(&r), c1: GradedPoly::one(&r) }
    }

    fn b4_squared() -> GradedPoly {
        let r = gamma05_base_ring();
        let (b2, d) = (GradedPoly::var(&r, 0), GradedPoly::var(&r, 1));
        &b2.pow(2) * &d - d.pow(2).scale(&int(4))
    }

    pub fn add(&self, o: &Self) -> Self {
        Gamma05Poly { c0: &self.c0 + &o.c0, c1: &self.c1 + &o.c1 }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Gamma05Poly { c0: &self.c0 - &o.c0, c1: &self.c1 - &o.c1 }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Gamma05Poly { c0: self.c0.scale(c), c1: self.c1.scale(c) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c0 = &self.c0 * &o.c0 + &(&self.c1 * &o.c1) * &Self::b4_squared();
        let c1 = &self.c0 * &o.c1 + &self.c1 * &o.c0;
        Gamma05Poly { c0, c1 }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// All coefficients in normal form, tagged with the `b₄` exponent.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Vec<u32>, &Rat)> {
        self.c0.terms().iter().map(|(m, c)| (0, m, c)).chain(self.c1.terms().iter().map(|(m, c)| (1, m, c)))
    }
}

impl fmt::Display for Gamma05Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", self.c0);
        }
        if self.c0.is_zero() {
            return write!(f, "({})*b4", self.c1);
        }
        write!(f, "{} + ({})*b4", self.c0, self.c1)
    }
}

fn g5(terms: &[(i64, u32, u32, u32)]) -> Gamma05Poly {
    terms.iter().fold(Gamma05Poly::zero(), |acc, &(c, i, j, e)| {
        let t = Gamma05Poly::b2().pow(i).mul(&Gamma05Poly::delta().pow(j)).mul(&Gamma05Poly::b4().pow(e));
        acc.add(&t.scale(&int(c)))
    })
}

/// `(f*c₄, f*c₆, q*c₄, q*c₆)` in M_*(Γ₀(5)) ⊗ ℚ; `(coeff, b₂, δ, b₄)` exponents.
pub fn level5_images(conv: SignConvention) -> [Gamma05Poly; 4] {
    let q_c6 = g5(&[(-1, 3, 0, 0), (522, 1, 0, 1), (10008, 1, 1, 0)]);
    let q_c6 = if conv.negate_q_c6 { q_c6.scale(&int(-1)) } else { q_c6 };
    [
        g5(&[(1, 2, 0, 0), (-12, 0, 0, 1), (12, 0, 1, 0)]),
        g5(&[(-1, 3, 0, 0), (18, 1, 0, 1), (-72, 1, 1, 0)]),
        g5(&[(1, 2, 0, 0), (228, 0, 0, 1), (492, 0, 1, 0)]),
        q_c6,
    ]
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LevelError {
    #[error("coefficient {coeff} of {mono} is not 2-local")]
    NotLocal { mono: String, coeff: String },
    #[error("leading term of the zero form")]
    Zero,
    #[error("leading term is ambiguous: {0}")]
    Ambiguous(String),
}

fn check_local<'a>(it: impl Iterator<Item = (String, &'a Rat)>) -> Result<(), LevelError> {
    for (m, c) in it {
        if !is_2local(c) {
            return Err(LevelError::NotLocal { mono: m, coeff: rat_display(c) });
        }
    }
    Ok(())
}

/// `Ψ₃` without the 2-locality check.
pub fn psi3_raw(form: &TwoVarForm, conv: SignConvention) -> GradedPoly {
    form.poly.substitute(&level3_images(conv))
}

pub fn psi3(form: &TwoVarForm) -> Result<GradedPoly, LevelError> {
    let p = psi3_raw(form, PINNED);
    check_local(p.terms().iter().map(|(m, c)| (p.mono_string(m), c)))?;
    Ok(p)
}

/// `Ψ₅` without the 2-locality check.
pub fn psi5_raw(form: &TwoVarForm, conv: SignConvention) -> Gamma05Poly {
    let images = level5_images(conv);
    let mut cache: Vec<Vec<Gamma05Poly>> = vec![vec![Gamma05Poly::one()]; 4];
    let mut out = Gamma05Poly::zero();
    for (m, c) in form.poly.terms() {
        let mut t = Gamma05Poly::one().scale(c);
        for (i, &e) in m.iter().enumerate() {
            while cache[i].len() <= e as usize {
                let next = cache[i].last().unwrap().mul(&images[i]);
                cache[i].push(next);
            }
            if e > 0 {
                t = t.mul(&cache[i][e as usize]);
            }
        }
        out = out.add(&t);
    }
    out
}

pub fn psi5(form: &TwoVarForm) -> Result<Gamma05Poly, LevelError> {
    let p = psi5_raw(form, PINNED);
    check_local(p.terms().map(|(e, m, c)| (format!("{}*b4^{e}", p.c0.mono_string(m)), c)))?;
    Ok(p)
}

/// Membership test for M_*(Γ₀(3)) = ℤ₍₂₎[a₁², a₁a₃, a₃²] (rationally: even total exponent).
pub fn in_gamma03(p: &GradedPoly) -> bool {
    p.terms().keys().all(|m| (m[0] + m[1]) % 2 == 0)
}

/// `2^i a₁^j a₃^k` (level 3, `eps = None`) or `2^i b₂^j δ^k b₄^ε` (level 5).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LeadingTerm {
    pub i: i64,
    pub j: u32,
    pub k: u32,
    pub eps: Option<u32>,
}

impl fmt::Display for LeadingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        if self.i != 0 {
            parts.push(format!("2^{}", self.i));
        }
        let (x, y) = if self.eps.is_some() { ("b2", "d") } else { ("a1", "a3") };
        for (name, e) in [(x, self.j), (y, self.k)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if self.eps == Some(1) {
            parts.push("b4".into());
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("*"))
    }
}

fn min_nu2<'a>(cs: impl Iterator<Item = &'a Rat>) -> Valuation {
    cs.map(nu2).min().unwrap_or(Valuation::Inf)
}

/// Leading term of a Γ₀(3) form: `i` is the minimal valuation, `j` the minimal
/// `a₁`-degree among terms of that valuation, and the congruence
/// `f ≡ 2^i a₁^j a₃^k mod (2^{i+1}, a₁^{j+1})` must single out one monomial.
pub fn leading_term3(p: &GradedPoly) -> Result<LeadingTerm, LevelError> {
    check_local(p.terms().iter().map(|(m, c)| (p.mono_string(m), c)))?;
    let Valuation::Fin(i) = min_nu2(p.terms().values()) else { return Err(LevelError::Zero) };
    let surv: Vec<&Vec<u32>> = p.terms().iter().filter(|(_, c)| nu2(c) == Valuation::Fin(i)).map(|(m, _)| m).collect();
    let j = surv.iter().map(|m| m[0]).min().unwrap();
    let at_j: Vec<_> = surv.iter().filter(|m| m[0] == j).collect();
    if at_j.len() != 1 {
        return Err(LevelError::Ambiguous(p.to_string()));
    }
    Ok(LeadingTerm { i, j, k: at_j[0][1], eps: None })
}

/// Leading term of a Γ₀(5) form. With `ε = 0` the congruence allows an extra
/// `α δ^{k−1} b₄` beside `δ^k`.
pub fn leading_term5(p: &Gamma05Poly) -> Result<LeadingTerm, LevelError> {
    check_local(p.terms().map(|(e, m, c)| (format!("{}*b4^{e}", p.c0.mono_string(m)), c)))?;
    let Valuation::Fin(i) = min_nu2(p.terms().map(|t| t.2)) else { return Err(LevelError::Zero) };
    let surv: Vec<(u32, &Vec<u32>)> = p.terms().filter(|t| nu2(t.2) == Valuation::Fin(i)).map(|t| (t.0, t.1)).collect();
    let j = surv.iter().map(|(_, m)| m[0]).min().unwrap();
    let at_j: Vec<(u32, &Vec<u32>)> = surv.into_iter().filter(|(_, m)| m[0] == j).collect();
    let plain: Vec<_> = at_j.iter().filter(|t| t.0 == 0).collect();
    let with_b4: Vec<_> = at_j.iter().filter(|t| t.0 == 1).collect();
    match (plain.len(), with_b4.len()) {
        (1, 0) => Ok(LeadingTerm { i, j, k: plain[0].1[1], eps: Some(0) }),
        (1, 1) if with_b4[0].1[1] + 1 == plain[0].1[1] => Ok(LeadingTerm { i, j, k: plain[0].1[1], eps: Some(0) }),
        (0, 1) => Ok(LeadingTerm { i, j, k: with_b4[0].1[1], eps: Some(1) }),
        _ => Err(LevelError::Ambiguous(p.to_string())),
    }
}

/// `Δ` as printed for each level: `a₃³(a₁³ − 27a₃)` and `δ²b₄ − 11δ³`.
pub fn printed_delta3() -> GradedPoly {
    p3(&[(1, 3, 3), (-27, 0, 4)])
}

pub fn printed_delta5() -> Gamma05Poly {
    g5(&[(1, 0, 2, 1), (-11, 0, 3, 0)])
}

/// `(f*c₄³ − f*c₆²)/1728` equals the printed `Δ` (level 3).
pub fn f_delta_consistent3(conv: SignConvention) -> bool {
    psi3_raw(&TwoVarForm::delta(), conv) == printed_delta3()
}

pub fn f_delta_consistent5(conv: SignConvention) -> bool {
    psi5_raw(&TwoVarForm::delta(), conv) == printed_delta5()
}

/// Forms that only involve the unbarred generators.
pub fn is_unbarred(form: &TwoVarForm) -> bool {
    form.poly.terms().keys().all(|m| m[2] == 0 && m[3] == 0)
}

/// ℚ[a₁, a₃, ā₁, ā₃] and the image of a two-variable form under `f*` on both factors.
pub fn pair_ring() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::new(&[("a1", 2), ("a3", 6), ("abar1", 2), ("abar3", 6)])).clone()
}

pub fn gamma13_pair_image(form: &TwoVarForm) -> GradedPoly {
    let [c4, c6, _, _] = level3_images(PINNED);
    let r = pair_ring();
    let left = [c4.relabel(&r, &[0, 1]), c6.relabel(&r, &[0, 1])];
    let right = [c4.relabel(&r, &[2, 3]), c6.relabel(&r, &[2, 3])];
    debug_assert_eq!(form.poly.ring().nvars(), two_var_ring().nvars());
    form.poly.substitute(&[left[0].clone(), left[1].clone(), right[0].clone(), right[1].clone()])
}

/// Adams filtration read off the image in ℚ[a₁,a₃,ā₁,ā₃]: the minimum of
/// `ν₂(coefficient) + total exponent`, with `AF(2) = AF(aᵢ) = AF(āᵢ) = 1`.
pub fn naive_af(form: &TwoVarForm) -> Valuation {
    let img = gamma13_pair_image(form);
    img.terms()
        .iter()
        .map(|(m, c)| nu2(c) + Valuation::Fin(m.iter().map(|&e| e as i64).sum()))
        .min()
        .unwrap_or(Valuation::Inf)
}
