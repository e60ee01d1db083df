//! The generator library `f₁ … f₁₈`, the Γ₀(5)-adapted forms `f̃`, and the
//! table of detecting forms by dimension, `bo_k` summand and Adams filtration.

use crate::forms::{base_env, eval_expr, TwoVarForm};
use crate::level::naive_af;
use crate::qexp::{is_2integral, IntegralityCert, QExpError};
use exactcore::rat::rat_to_string;
use exactcore::Valuation;
use serde::Serialize;
use std::collections::HashMap;

/// `f₆` is transcribed separately: its first two terms print identically and
/// have to be recovered from integrality (see [`f6_candidates`]).
pub const F_FORMULAS: [(&str, &str); 18] = [
    ("f1", "(-cb4 + c4)/16"),
    ("f2", "(-cb6 + c6)/8"),
    ("f3", "(5 f1 c6 + 21 f2 c4)/8"),
    ("f4", "(5 f2 c6 + 21 f1 c4^2)/8"),
    ("f5", "(-f1^2 c4 + f2^2)/16"),
    ("f6", "(-X + Y + 544 f2 c4^2 + 768 f3 c4 + 1792 f1 f2 c4)/2048"),
    ("f7", "(4 f2 D + f5 c6 + 5 f2 c4^3 + 6 f3 c4^2 + 5 f1 f2 c4^2 + 7 f6 c4 + 4 f1^2 f2 c4)/8"),
    ("f8", "(4 f1 c4 D + f6 c6 + 5 f1 c4^4 + 5 f1^2 c4^3 + 7 f5 c4^2 + 2 f4 c4^2 + 4 f1^3 c4^2)/8"),
    ("f9", "(32 f1 D + f1 f2 c6 + 33 f1^2 c4^2 + 8 f5 c4 + 32 f4 c4 + 32 f1^3 c4)/64"),
    ("f10", "(2 f2 c4^3 + f1 f2 c4^2 + 2 f6 c4 + 3 f1^2 f2 c4 + f1 f6 + f2 f5)/4"),
    ("f11", "(4 f1 c4 D + 11 f1^2 c4^3 + 34 f5 c4^2 + 28 f4 c4^2 + 23 f1^3 c4^2 + 4 f9 c4 + f1 f5 c4 + 4 f1^4 c4 + 4 f8 + f2 f6)/8"),
    ("f12", "(f1 f5 c6 + 8 f2 c4^4 + 8 f3 c4^3 + 8 f1 f2 c4^3 + 8 f6 c4^2 + 8 f1^2 f2 c4^2 + f2 f5 c4)/8"),
    ("f13", "(8 f3 D + 80 f2 c4^4 + 56 f3 c4^3 + 80 f1 f2 c4^3 + 76 f6 c4^2 + 55 f1^2 f2 c4^2 + 4 f10 c4 + 18 f2 f5 c4 + 11 f1^3 f2 c4 + 4 f12 + f1^2 f6 + f1 f2 f5 + 4 f1^4 f2)/8"),
    ("f14", "(21 f1 c4^2 D + 8 f5 D + 16 f4 D + 20 f1^3 D + f10 c6 + 11 f1 c4^5 + 36 f1^2 c4^4 + 591 f5 c4^3 + 490 f4 c4^3 + 437 f1^3 c4^3 + 119 f9 c4^2 + 140 f1 f5 c4^2 + 75 f1^4 c4^2 + 10 f11 c4 + 11 f8 c4 + 32 f1^5 c4 + 8 f1 f2 f6)/16"),
    ("f15", "(4 f6 D + f1^2 f2 D + 76 f2 c4^5 + 54 f3 c4^4 + 90 f1 f2 c4^4 + 73 f6 c4^3 + 50 f1^2 f2 c4^3 + 3 f10 c4^2 + 8 f7 c4^2 + 20 f2 f5 c4^2 + 8 f1^3 f2 c4^2 + 7 f12 c4 + 4 f1 f2 f5 c4)/8"),
    ("f16", "(2 f1 D^2 + 24 f1 c4^3 D + 9 f5 c4 D + 18 f4 c4 D + 4 f1^3 c4 D + 2 f9 D + f1 f5 D + 36 f1^2 c4^5 + 480 f5 c4^4 + 402 f4 c4^4 + 359 f1^3 c4^4 + 94 f9 c4^3 + 112 f1 f5 c4^3 + 55 f1^4 c4^3 + 12 f11 c4^2 + 14 f8 c4^2 + 20 f1^5 c4^2 + 2 f14 c4 + 5 f2 f7 c4 + f5^2 c4 + 4 f1^3 f5 c4 + f1 f14 + f5 f9 + f1 f2 f7)/2"),
    ("f17", "(2 f2 D^2 + 22 f3 c4^2 D + 11 f6 c4 D + f2 f5 D + 19 f9 c4^2 c6 + 682 f2 c4^6 + 480 f3 c4^5 + 768 f1 f2 c4^5 + 648 f6 c4^4 + 462 f1^2 f2 c4^4 + 30 f10 c4^3 + 63 f7 c4^3 + 185 f2 f5 c4^3 + 84 f1^3 f2 c4^3 + 12 f13 c4^2 + 27 f12 c4^2 + 29 f1 f2 f5 c4^2 + 16 f1^4 f2 c4^2 + 4 f15 c4 + 4 f5 f6 c4 + 2 f1^2 f2 f5 c4 + f2 f14 + f6 f9)/2"),
    ("f18", "(4 f2 D^2 + 168 f3 c4^2 D + 96 f6 c4 D + 8 f2 f5 D + 168 f9 c4^2 c6 + 5880 f2 c4^6 + 4140 f3 c4^5 + 6648 f1 f2 c4^5 + 5592 f6 c4^4 + 3980 f1^2 f2 c4^4 + 248 f10 c4^3 + 560 f7 c4^3 + 1586 f2 f5 c4^3 + 744 f1^3 f2 c4^3 + 112 f13 c4^2 + 220 f12 c4^2 + 265 f1 f2 f5 c4^2 + 136 f1^4 f2 c4^2 + 40 f15 c4 + 4 f1 f13 c4 + 34 f5 f6 c4 + 19 f1^2 f2 f5 c4 + 8 f1^5 f2 c4 + 4 f6 f9 + f1 f5 f6 + f2 f5^2)/4"),
];

/// Forms adapted to the Γ₀(5) pushforward, in dependency order.
pub const TILDE_FORMULAS: [(&str, &str); 21] = [
    ("tf9", "f9 + D f1 + c4^2 f1^2"),
    ("tc6f9", "c6 f9 + c4 D f2 + c4^3 f1 f2"),
    ("tf1_3", "f1^3 + f4 + c4 f1^2"),
    ("tf1_2f2", "f1^2 f2 + c4 f3 + c4 f1 f2"),
    ("tf5f1", "f1 f5 + D f1"),
    ("tf5f2", "f5 f2 + D f2"),
    ("tf7f1", "f1 f7 + D f3 + c4 f7 + c4 D f2 + c4^2 f6 + c4^3 f1 f2 + c4^4 f2"),
    ("tf7f2", "f2 f7 + D f4 + c4 f8 + c4^2 D f1 + c4^4 f1^2"),
    ("tf14", "f14 + D f4 + c4^3 f5 + c4^3 f4"),
    ("tf15", "f15 + c4 D f3 + c4^3 f6 + c4^4 f3"),
    ("tf1_4", "f1^4 + c4 f5 + c4 f4 + c4^2 f1^2"),
    ("tf1_3f2", "f1^3 f2 + c4 f6 + c4^2 f3 + c4^3 f2"),
    ("tf10", "f10 + f7 + c4 f6 + c4^2 f1 f2"),
    ("tf11", "f11 + f8 + c4 D f1 + c4^2 f5"),
    ("tc4f10", "c4 tf10 + tc6f9 + c4 tf1_3f2 + c4^2 tf1_2f2"),
    ("tf1_4f2", "f1^4 f2 + c4 D f2 + c4^2 f6 + c4^3 f3 + c4^4 f2 + c4 tf5f2"),
    ("tf13", "f13 + D f3 + c4 f7 + c4 D f2 + c4^2 f6 + c4^3 f3 + c4^3 f1 f2 + c4^4 f2 + tf7f1 + tc4f10/2 + tc6f9 + c4 tf5f2 + tf1_4f2 + c4^2 tf1_2f2"),
    ("tf9_2", "tf9^2"),
    ("tc4f9_2", "c4 tf9^2 + D tf7f2 + c4 D tf11 + c4^2 D tf5f1 + c4^3 tf14 + c4^5 tf9 + c4^5 tf5f1 + c4^5 tf1_4"),
    ("tc6f9_2", "c6 tf9_2 + c4 D tf7f1 + c4 D tc4f10/2 + c4 D tc6f9 + c4^2 D tf5f2 + c4^4 tc4f10/2 + c4^4 tf1_4f2 + c4^5 tf1_3f2 + c4^4 tf13"),
    ("ttf9", "f9 - 212/315 c4 f4 - 34/441 c4 f5 + 2501/11025 f1^2 c4^2 - 851 f1 D"),
];

/// The untilded form each `f̃` corrects (for the filtration check).
pub const TILDE_BASES: [(&str, &str); 21] = [
    ("tf9", "f9"),
    ("tc6f9", "c6 f9"),
    ("tf1_3", "f1^3"),
    ("tf1_2f2", "f1^2 f2"),
    ("tf5f1", "f1 f5"),
    ("tf5f2", "f5 f2"),
    ("tf7f1", "f1 f7"),
    ("tf7f2", "f2 f7"),
    ("tf14", "f14"),
    ("tf15", "f15"),
    ("tf1_4", "f1^4"),
    ("tf1_3f2", "f1^3 f2"),
    ("tf10", "f10"),
    ("tf11", "f11"),
    ("tc4f10", "c4 f10"),
    ("tf1_4f2", "f1^4 f2"),
    ("tf13", "f13"),
    ("tf9_2", "f9^2"),
    ("tc4f9_2", "c4 f9^2"),
    ("tc6f9_2", "c6 f9^2"),
    ("ttf9", "f9"),
];

/// Forms whose `Ψ₃` leading term is tabulated, with `(i, j, k)` for `2^i a₁^j a₃^k`.
pub const PSI3_EXPECTED: [(&str, (i64, u32, u32)); 10] = [
    ("f1", (0, 1, 1)),
    ("f2", (0, 3, 1)),
    ("f3", (0, 1, 3)),
    ("f4", (0, 3, 3)),
    ("f1^2", (0, 2, 2)),
    ("f1 f2", (0, 4, 2)),
    ("f5", (0, 0, 4)),
    ("f6", (0, 2, 4)),
    ("f7", (0, 0, 6)),
    ("f8", (0, 2, 6)),
];

/// `Ψ₅` leading terms `2^i b₂^j δ^k b₄^ε` of the adapted forms.
pub const PSI5_EXPECTED: [(&str, (i64, u32, u32, u32)); 20] = [
    ("tf9", (0, 0, 4, 0)),
    ("tc6f9", (0, 3, 4, 0)),
    ("tf1_3", (0, 2, 2, 0)),
    ("tf1_2f2", (0, 3, 2, 0)),
    ("tf5f1", (0, 0, 3, 1)),
    ("tf5f2", (0, 1, 3, 1)),
    ("tf7f1", (0, 1, 5, 0)),
    ("tf7f2", (0, 2, 5, 0)),
    ("tf14", (0, 0, 6, 0)),
    ("tf15", (0, 1, 6, 0)),
    ("tf1_4", (0, 2, 2, 1)),
    ("tf1_3f2", (0, 3, 2, 1)),
    ("tf10", (0, 1, 4, 0)),
    ("tf11", (0, 0, 4, 1)),
    ("tc4f10", (1, 1, 4, 1)),
    ("tf1_4f2", (0, 5, 3, 0)),
    ("tf13", (0, 9, 1, 0)),
    ("tf9_2", (0, 0, 8, 0)),
    ("tc4f9_2", (1, 0, 8, 1)),
    ("tc6f9_2", (0, 1, 8, 1)),
];

/// `(dimension, k, Adams filtration, detecting form)` for each `bo_k` generator.
pub const GENERATOR_TABLE: &[(u32, u32, i64, &str)] = &[
    (8, 1, 0, "f1"),
    (12, 1, 3, "2 f2"),
    (16, 2, 0, "f1^2"),
    (20, 1, 3, "2 f3"),
    (20, 2, 3, "2 f1 f2"),
    (24, 1, 4, "f4"),
    (24, 2, 0, "f5"),
    (24, 3, 0, "f1^3"),
    (28, 2, 3, "2 f6"),
    (28, 3, 3, "2 f1^2 f2"),
    (32, 1, 4, "D f1"),
    (32, 2, 1, "f9"),
    (32, 3, 0, "f1 f5"),
    (32, 4, 0, "f1^4"),
    (36, 1, 7, "2 D f2"),
    (36, 2, 3, "2 f7"),
    (36, 3, 3, "2 f2 f5"),
    (36, 3, 0, "f10"),
    (36, 4, 3, "2 f1^3 f2"),
    (40, 2, 4, "f8"),
    (40, 3, 1, "f11"),
    (40, 4, 0, "f1^2 f5"),
    (40, 5, 0, "f1^5"),
    (44, 1, 7, "2 D f3"),
    (44, 2, 7, "c6 f9/4"),
    (44, 3, 3, "2 f1 f7"),
    (44, 4, 3, "2 f1 f2 f5"),
    (44, 4, 0, "2 f13"),
    (44, 5, 3, "2 f1^4 f2"),
    (48, 1, 8, "D f4"),
    (48, 2, 4, "D f5"),
    (48, 3, 4, "f2 f7"),
    (48, 3, 1, "f14"),
    (48, 4, 0, "f5^2"),
    (48, 4, 1, "f1 f11"),
    (48, 5, 0, "f1^3 f5"),
    (48, 6, 0, "f1^6"),
    (52, 2, 7, "2 D f6"),
    (52, 3, 4, "2 f15"),
    (52, 4, 3, "2 f5 f6"),
    (52, 5, 3, "2 f1^2 f2 f5"),
    (52, 5, 0, "2 f1 f13"),
    (52, 6, 3, "2 f1^5 f2"),
    (56, 1, 8, "D^2 f1"),
    (56, 2, 8, "8 D f9"),
    (56, 3, 4, "D f5 f1"),
    (56, 4, 1, "f5 f9"),
    (56, 4, 0, "f16"),
    (56, 5, 0, "f1 f5^2"),
    (56, 5, 1, "f1^2 f11"),
    (56, 6, 0, "f1^4 f5"),
    (60, 1, 11, "2 D^2 f2"),
    (60, 2, 7, "2 D f7"),
    (60, 3, 7, "2 D f5 f2"),
    (60, 3, 4, "D f10"),
    (60, 4, 4, "2 f6 f9"),
    (60, 4, 3, "2 f17"),
    (60, 5, 0, "f18"),
    (60, 5, 3, "2 f1 f5 f6"),
    (60, 6, 3, "2 f1^3 f2 f5"),
    (60, 6, 0, "2 f1^2 f13"),
    (60, 7, 3, "2 f1^6 f2"),
    (64, 2, 8, "D f8"),
    (64, 3, 5, "D f11"),
    (64, 4, 2, "f9^2/2"),
    (64, 5, 1, "f1 f5 f9"),
    (64, 5, 0, "f1 f16"),
    (64, 6, 0, "f5^2 f1^2"),
    (64, 6, 1, "f11 f1^3"),
    (64, 7, 0, "f1^5 f5"),
    (64, 8, 0, "f1^8"),
];

/// The six monomials of degree 28 that are cubic in `(c₄, c̄₄)`-and-`(c₆, c̄₆)`
/// with exactly one sixth-power factor: `c₄^a c̄₄^{2−a} · (c₆ | c̄₆)`.
fn f6_monomials() -> Vec<(String, TwoVarForm)> {
    let mut out = vec![];
    for a in 0..=2u32 {
        for six in ["c6", "cb6"] {
            let name = format!("c4^{a} cb4^{} {six}", 2 - a);
            let f = TwoVarForm::c4().pow(a) * TwoVarForm::cb4().pow(2 - a) * if six == "c6" { TwoVarForm::c6() } else { TwoVarForm::cb6() };
            out.push((name, f));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct F6Choice {
    pub minus: String,
    pub plus: String,
    pub integral_candidates: Vec<(String, String)>,
}

/// All `(X, Y)` with `(−X + Y + …)/2048` 2-integral at precision `prec`.
/// The preferred reading is `X = c̄₄²c̄₆, Y = c₄²c₆` when it is among them.
pub fn f6_candidates(env: &HashMap<String, TwoVarForm>, prec: usize) -> (Vec<(String, String)>, Option<TwoVarForm>) {
    let monos = f6_monomials();
    let mut ok = vec![];
    let mut preferred = None;
    let mut first = None;
    for (xn, x) in &monos {
        for (yn, y) in &monos {
            if xn == yn {
                continue;
            }
            let mut e = env.clone();
            e.insert("X".into(), x.clone());
            e.insert("Y".into(), y.clone());
            let f = eval_expr(F_FORMULAS[5].1, &e).expect("f6 parses");
            if crate::qexp::q_expand(&f, prec).is_2integral() {
                ok.push((xn.clone(), yn.clone()));
                if xn == "c4^0 cb4^2 cb6" && yn == "c4^2 cb4^0 c6" {
                    preferred = Some(f.clone());
                }
                first.get_or_insert(f);
            }
        }
    }
    (ok, preferred.or(first))
}

/// `f₁ … f₁₈` in order. Panics only if the transcription is malformed.
pub fn f_library() -> Vec<(String, TwoVarForm)> {
    let mut env = base_env();
    let mut out = vec![];
    for (name, src) in F_FORMULAS {
        let f = if name == "f6" {
            f6_candidates(&env, 24).1.expect("some f6 reading is integral")
        } else {
            eval_expr(src, &env).expect("library formula parses")
        };
        env.insert(name.to_string(), f.clone());
        out.push((name.to_string(), f));
    }
    out
}

/// Environment containing the base names, `f₁ … f₁₈` and all adapted forms.
pub fn full_env() -> HashMap<String, TwoVarForm> {
    let mut env = base_env();
    env.extend(f_library());
    for (name, src) in TILDE_FORMULAS {
        let f = eval_expr(src, &env).expect("adapted formula parses");
        env.insert(name.to_string(), f);
    }
    env
}

pub fn tilde_library() -> Vec<(String, TwoVarForm)> {
    let env = full_env();
    TILDE_FORMULAS.iter().map(|(n, _)| (n.to_string(), env[*n].clone())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AfCheck {
    pub dim: u32,
    pub k: u32,
    pub form: String,
    pub table_af: i64,
    pub naive_af: Option<i64>,
    pub agrees: bool,
}

/// Compare the tabulated Adams filtrations with the `ν₂ + length` filtration
/// of the image in ℚ[a₁,a₃,ā₁,ā₃]. The latter is only a lower bound.
pub fn af_coherence(env: &HashMap<String, TwoVarForm>) -> Vec<AfCheck> {
    GENERATOR_TABLE
        .iter()
        .map(|&(dim, k, af, src)| {
            let f = eval_expr(src, env).expect("table entry parses");
            let n = naive_af(&f).finite();
            AfCheck { dim, k, form: src.to_string(), table_af: af, naive_af: n, agrees: n == Some(af) }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub monomial: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LibraryEntry {
    pub name: String,
    pub degree: Option<i64>,
    pub adams_filtration: Option<i64>,
    pub terms: Vec<TermJson>,
    pub certificates: Vec<IntegralityCert>,
}

pub fn library_entry(name: &str, f: &TwoVarForm, precisions: &[usize]) -> Result<LibraryEntry, QExpError> {
    let certificates = precisions.iter().map(|&p| is_2integral(f, p, false)).collect::<Result<_, _>>()?;
    Ok(LibraryEntry {
        name: name.to_string(),
        degree: f.degree(),
        adams_filtration: match naive_af(f) {
            Valuation::Fin(v) => Some(v),
            Valuation::Inf => None,
        },
        terms: f
            .poly
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermJson { monomial: f.poly.mono_string(m), coeff: rat_to_string(c) })
            .collect(),
        certificates,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TildeCert {
    pub name: String,
    pub base: String,
    pub af_base: Option<i64>,
    /// Filtration of `f̃ − base`; must exceed `af_base`.
    pub af_correction: Option<i64>,
    pub congruent_to_base: bool,
    /// Minimal ν₂ over the coefficients of `Ψ₃(f̃)`; `None` when `Ψ₃(f̃) = 0`.
    pub psi3_min_nu2: Option<i64>,
    pub psi3_even: bool,
    /// Lowest-valuation monomial of `Ψ₃(f̃)`, when it is not even.
    pub psi3_offender: Option<String>,
}

/// The certifications attached to the adapted forms.
pub fn tilde_certificates(env: &HashMap<String, TwoVarForm>) -> Vec<TildeCert> {
    TILDE_BASES
        .iter()
        .map(|&(name, base)| {
            let t = &env[name];
            let b = eval_expr(base, env).expect("base parses");
            let af_base = naive_af(&b).finite();
            let af_correction = naive_af(&(t - &b)).finite();
            let p = crate::level::psi3_raw(t, crate::level::PINNED);
            let low = p.terms().iter().min_by_key(|(_, c)| exactcore::nu2(c));
            let psi3_min_nu2 = low.and_then(|(_, c)| exactcore::nu2(c).finite());
            let psi3_even = psi3_min_nu2.map_or(true, |v| v >= 1);
            TildeCert {
                name: name.to_string(),
                base: base.to_string(),
                af_base,
                af_correction,
                congruent_to_base: match (af_base, af_correction) {
                    (Some(a), Some(c)) => c > a,
                    (_, None) => true,
                    _ => false,
                },
                psi3_min_nu2,
                psi3_even,
                psi3_offender: (!psi3_even).then(|| {
                    let (m, c) = low.unwrap();
                    format!("{} * {}", rat_to_string(c), p.mono_string(m))
                }),
            }
        })
        .collect()
}

/// `c̃₄f₁₀ / 2` has an integral expansion to precision `prec`.
pub fn c4f10_divisible(env: &HashMap<String, TwoVarForm>, prec: usize) -> bool {
    let half = env["tc4f10"].scale(&exactcore::Rat::new(1.into(), 2.into()));
    crate::qexp::q_expand(&half, prec).is_2integral()
}
