//! The formal group law of the curve `y² + a₁xy + a₃y = x³`, its logarithm,
//! and the images of the Hazewinkel generators `v_n` and of the `t_n` under
//! the orientation `BP → tmf₁(3)`.
//!
//! Gradings are topological: `|a₁| = 2`, `|a₃| = 6`, and the series
//! variables have degree −2, so every series coefficient is homogeneous.

use exactcore::rat::is_2local;
use exactcore::{nu2, GradedPoly, Rat, Ring, TruncSeries1, TruncSeries2, Valuation};
use serde::Serialize;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

pub const DEFAULT_ORDER: usize = 20;

#[derive(Debug, Error)]
pub enum FglError {
    #[error("series order {order} too small for l_{n} (needs > {needed})")]
    OrderTooSmall { order: usize, n: usize, needed: usize },
    #[error("v_{n} image is not 2-integral: {poly}")]
    NotIntegral { n: usize, poly: String },
}

/// ℚ[a₁, a₃].
pub fn base_ring() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::new(&[("a1", 2), ("a3", 6)])).clone()
}

/// ℚ[a₁, a₃, ā₁, ā₃], the rational cooperations of tmf₁(3).
pub fn pair_ring() -> Arc<Ring> {
    static R: OnceLock<Arc<Ring>> = OnceLock::new();
    R.get_or_init(|| Ring::new(&[("a1", 2), ("a3", 6), ("abar1", 2), ("abar3", 6)])).clone()
}

pub fn a1() -> GradedPoly {
    GradedPoly::var(&base_ring(), 0)
}

pub fn a3() -> GradedPoly {
    GradedPoly::var(&base_ring(), 1)
}

/// Left inclusion ℚ[a₁,a₃] → ℚ[a₁,a₃,ā₁,ā₃].
pub fn eta_l(p: &GradedPoly) -> GradedPoly {
    p.relabel(&pair_ring(), &[0, 1])
}

/// Right unit: aᵢ ↦ āᵢ.
pub fn eta_r(p: &GradedPoly) -> GradedPoly {
    p.relabel(&pair_ring(), &[2, 3])
}

fn c(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// The Weierstrass coefficients with `a₂ = a₄ = a₆ = 0`.
#[derive(Clone, Debug)]
pub struct CurveParams {
    pub a1: GradedPoly,
    pub a3: GradedPoly,
}

impl Default for CurveParams {
    fn default() -> Self {
        CurveParams { a1: a1(), a3: a3() }
    }
}

/// `w(t) = t³ + a₁tw + a₃w²` solved as a power series in `t = −x/y`.
pub fn weierstrass_w(params: &CurveParams, order: usize) -> TruncSeries1<GradedPoly> {
    let zero = GradedPoly::zero(&base_ring());
    let t = TruncSeries1::t(order, zero.clone());
    let t3 = t.mul(&t).mul(&t);
    let a1t = t.mul_coeff(&params.a1);
    let mut w = TruncSeries1::zero(order, zero);
    // Each pass fixes at least one further coefficient.
    for _ in 0..order {
        w = t3.add(&a1t.mul(&w)).add(&w.mul(&w).mul_coeff(&params.a3));
    }
    w
}

#[derive(Clone, Debug)]
pub struct FGLSeries {
    pub f: TruncSeries2<GradedPoly>,
    pub order: usize,
}

impl FGLSeries {
    pub fn coeff(&self, i: usize, j: usize) -> &GradedPoly {
        self.f.coeff(i, j).expect("within order")
    }
}

/// Formal group law by the chord construction on the curve, to total degree `< order`.
pub fn formal_group_law(order: usize) -> FGLSeries {
    assert!(order >= 2);
    let params = CurveParams::default();
    let zero = GradedPoly::zero(&base_ring());
    // λ needs one more coefficient of w than the target order.
    let w = weierstrass_w(&params, order + 1);
    let x = TruncSeries2::x(order, zero.clone());
    let y = TruncSeries2::y(order, zero.clone());

    // Slope of the chord through (z1, w(z1)) and (z2, w(z2)):
    // λ = Σ A_n (z2^n − z1^n)/(z2 − z1), i.e. coefficient A_{i+j+1} on X^i Y^j.
    let lambda = TruncSeries2::from_fn(order, zero.clone(), |i, j| {
        w.coeffs().get(i + j + 1).cloned().unwrap_or_else(|| zero.clone())
    });
    let w_x = TruncSeries2::from_univariate(&w, false).truncate(order);
    let nu = w_x.sub(&lambda.mul(&x));
    // Third intersection point of the line with the curve: substituting
    // w = λz + ν into the curve gives a cubic in z whose z² coefficient is
    // a₁λ + a₃λ², so the roots sum to −(a₁λ + a₃λ²).
    let lam2 = lambda.mul(&lambda);
    let z3 = x.neg().sub(&y).sub(&lambda.mul_coeff(&params.a1)).sub(&lam2.mul_coeff(&params.a3));
    let w3 = lambda.mul(&z3).add(&nu);
    // Negation on the curve in the (z, w) chart: z ↦ z / (−1 + a₁z + a₃w).
    let one = TruncSeries2::constant(order, GradedPoly::one(&base_ring()));
    let denom = one.neg().add(&z3.mul_coeff(&params.a1)).add(&w3.mul_coeff(&params.a3));
    let f = z3.mul(&denom.inverse().expect("unit constant term"));
    FGLSeries { f, order }
}

#[derive(Clone, Debug)]
pub struct LogData {
    pub log: TruncSeries1<GradedPoly>,
    /// `l[i]` is the coefficient of `X^{2^i}`; `l[0] = 1`.
    pub l: Vec<GradedPoly>,
}

/// `log(X) = ∫ dX / F_Y(X, 0)` and its coefficients at powers of two up to `X^{2^n_max}`.
pub fn fgl_log(f: &FGLSeries, n_max: usize) -> Result<LogData, FglError> {
    let dy = f.f.dy_at_y0();
    let log = dy.inverse().expect("F_Y(0,0) = 1").integrate();
    let needed = 1usize << n_max;
    if log.prec() <= needed {
        return Err(FglError::OrderTooSmall { order: f.order, n: n_max, needed });
    }
    let l = (0..=n_max).map(|i| log.coeffs()[1 << i].clone()).collect();
    Ok(LogData { log, l })
}

/// Solve `2 l_n = Σ_{0≤i<n} l_i v_{n−i}^{2^i}` for `v_1 … v_{n_max}`; `v[0]` is unused (set to 2).
pub fn hazewinkel_images(l: &[GradedPoly], n_max: usize) -> Result<Vec<GradedPoly>, FglError> {
    let ring = base_ring();
    let mut v = vec![GradedPoly::constant(&ring, c(2))];
    for n in 1..=n_max {
        let mut rhs = l[n].scale(&c(2));
        for i in 1..n {
            rhs = rhs - &l[i] * &v[n - i].pow(1 << i);
        }
        if !rhs.terms().values().all(is_2local) {
            return Err(FglError::NotIntegral { n, poly: rhs.to_string() });
        }
        v.push(rhs);
    }
    Ok(v)
}

/// Solve `η_R(l_n) = Σ_{0≤i≤n} l_i t_{n−i}^{2^i}` for `t_1 … t_{n_max}` in ℚ[a₁,a₃,ā₁,ā₃]; `t[0] = 1`.
pub fn t_images(l: &[GradedPoly], n_max: usize) -> Vec<GradedPoly> {
    let ring = pair_ring();
    let mut t = vec![GradedPoly::one(&ring)];
    for n in 1..=n_max {
        let mut rhs = eta_r(&l[n]);
        for i in 1..=n {
            rhs = rhs - eta_l(&l[i]) * t[n - i].pow(1 << i);
        }
        t.push(rhs);
    }
    t
}

/// Adams filtration of a polynomial in the a's (and ā's): each monomial has
/// filtration ν₂(coefficient) plus its total exponent. Returns the minimum and
/// the sum of the terms attaining it.
pub fn adams_leading(p: &GradedPoly) -> (Valuation, GradedPoly) {
    let af = |m: &[u32], c: &Rat| nu2(c) + Valuation::Fin(m.iter().map(|e| *e as i64).sum());
    let min = p.terms().iter().map(|(m, c)| af(m, c)).min().unwrap_or(Valuation::Inf);
    let lead = p.retain(|m, c| af(m, c) == min);
    (min, lead)
}

/// Convenience: the discriminant `a₃³(a₁³ − 27a₃)`.
pub fn discriminant() -> GradedPoly {
    a3().pow(3) * (a1().pow(3) - a3().scale(&c(27)))
}

#[derive(Clone, Debug, Serialize)]
pub struct BPImageRow {
    pub n: usize,
    pub l_n: GradedPoly,
    pub v_n: Option<GradedPoly>,
    pub t_n: GradedPoly,
    pub t_n_adams_filtration: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BPImageTable {
    pub order: usize,
    pub rows: Vec<BPImageRow>,
}

pub fn bp_image_table(order: usize, n_max: usize) -> Result<BPImageTable, FglError> {
    let f = formal_group_law(order);
    let log = fgl_log(&f, n_max)?;
    let v = hazewinkel_images(&log.l, n_max)?;
    let t = t_images(&log.l, n_max);
    let rows = (0..=n_max)
        .map(|n| BPImageRow {
            n,
            l_n: log.l[n].clone(),
            v_n: (n > 0).then(|| v[n].clone()),
            t_n: t[n].clone(),
            t_n_adams_filtration: adams_leading(&t[n]).0.to_string(),
        })
        .collect();
    Ok(BPImageTable { order, rows })
}

/// Counit check for the t's: setting āᵢ = aᵢ must kill every `t_n`, `n ≥ 1`.
pub fn counit(p: &GradedPoly) -> GradedPoly {
    let r = base_ring();
    p.substitute(&[GradedPoly::var(&r, 0), GradedPoly::var(&r, 1), GradedPoly::var(&r, 0), GradedPoly::var(&r, 1)])
}
