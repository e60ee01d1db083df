use exactcore::{int, rat, GradedPoly, Rat, Valuation};
use fgl::*;

fn poly(terms: &[(i64, i64, [u32; 2])]) -> GradedPoly {
    GradedPoly::from_terms(&base_ring(), terms.iter().map(|(n, d, e)| (e.to_vec(), rat(*n, *d))))
}

fn poly4(den: i64, terms: &[(i64, [u32; 4])]) -> GradedPoly {
    GradedPoly::from_terms(&pair_ring(), terms.iter().map(|(n, e)| (e.to_vec(), rat(*n, den))))
}

#[test]
fn printed_fgl_through_degree_five() {
    let f = formal_group_law(8);
    // (i, j, coefficient) as displayed; everything else of total degree ≤ 5 vanishes.
    let printed: Vec<((usize, usize), GradedPoly)> = vec![
        ((1, 0), poly(&[(1, 1, [0, 0])])),
        ((0, 1), poly(&[(1, 1, [0, 0])])),
        ((1, 1), poly(&[(-1, 1, [1, 0])])),
        ((3, 1), poly(&[(-2, 1, [0, 1])])),
        ((2, 2), poly(&[(-3, 1, [0, 1])])),
        ((1, 3), poly(&[(-2, 1, [0, 1])])),
        ((4, 1), poly(&[(-2, 1, [1, 1])])),
        ((3, 2), poly(&[(-1, 1, [1, 1])])),
        ((2, 3), poly(&[(-1, 1, [1, 1])])),
        ((1, 4), poly(&[(-2, 1, [1, 1])])),
    ];
    for total in 0..=5 {
        for i in 0..=total {
            let j = total - i;
            let got = f.coeff(i, j);
            let want = printed
                .iter()
                .find(|(k, _)| *k == (i, j))
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| GradedPoly::zero(&base_ring()));
            assert_eq!(got, &want, "coefficient of X^{i} Y^{j}");
        }
    }
}

#[test]
fn fgl_axioms() {
    let f = formal_group_law(10);
    assert_eq!(f.f.swap(), f.f);
    // F(X, 0) = X.
    let fx = f.f.at_y0();
    for (k, c) in fx.coeffs().iter().enumerate() {
        assert_eq!(c.is_zero(), k != 1, "F(X,0) coefficient {k}");
    }
    // Homogeneity: coefficient of X^i Y^j has degree 2(i + j − 1).
    for (i, j, c) in f.f.nonzero_terms() {
        assert_eq!(c.homogeneous_degree(), Some(2 * (i + j) as i64 - 2));
    }
}

#[test]
fn fgl_associative_to_order_seven() {
    // Adjoin a third variable Z as a coefficient and compare F(F(X,Y),Z)
    // with F(X,F(Y,Z)) modulo total degree 7 in X, Y, Z.
    use exactcore::{Ring, TruncSeries2};
    let n = 7;
    let f = formal_group_law(n);
    let r3 = Ring::new(&[("a1", 2), ("a3", 6), ("z", -2)]);
    let lift = |p: &GradedPoly| p.relabel(&r3, &[0, 1]);
    let zero = GradedPoly::zero(&r3);
    let fz = TruncSeries2::from_fn(n, zero.clone(), |i, j| lift(f.coeff(i, j)));
    let x = TruncSeries2::x(n, zero.clone());
    let y = TruncSeries2::y(n, zero.clone());
    let z = TruncSeries2::constant(n, GradedPoly::var(&r3, 2));
    let left = fz.eval2(&fz, &z);
    let yz = fz.eval2(&y, &z);
    let right = fz.eval2(&x, &yz);
    let trunc = |s: &TruncSeries2<GradedPoly>| {
        TruncSeries2::from_fn(n, zero.clone(), |i, j| {
            s.coeff(i, j).unwrap().retain(|m, _| i + j + (m[2] as usize) < n)
        })
    };
    assert_eq!(trunc(&left), trunc(&right));
}

#[test]
fn log_is_additive() {
    let n = 9;
    let f = formal_group_law(n);
    let log = fgl_log(&f, 3).unwrap().log.truncate(n);
    let zero = GradedPoly::zero(&base_ring());
    let lhs = f.f.compose_into(&log).unwrap();
    let lx = exactcore::TruncSeries2::from_univariate(&log, false);
    let ly = exactcore::TruncSeries2::from_univariate(&log, true);
    assert_eq!(lhs.truncate(n), lx.add(&ly).truncate(n));
    let _ = zero;
}

#[test]
fn log_matches_invariant_differential() {
    // Independent route: ω = dx / (2y + a₁x + a₃) on the curve, with
    // x = t/w, y = −1/w, so ω = −(dx/dt)·w / (2 − a₁t − a₃w) dt · … ;
    // integrate and compare with the formal-group-law logarithm.
    let n = 12;
    let w = weierstrass_w(&CurveParams::default(), n + 3);
    let zero = GradedPoly::zero(&base_ring());
    // x = t / w = t^{-2} · (t³/w); work with u = t³/w, a unit series.
    let t3 = exactcore::TruncSeries1::new(vec![zero.clone(), zero.clone(), zero.clone(), GradedPoly::one(&base_ring())], n + 3, zero.clone());
    // w / t³ as a series: shift coefficients down by three.
    let w_over_t3 = exactcore::TruncSeries1::new(w.coeffs()[3..].to_vec(), n, zero.clone());
    let u = w_over_t3.inverse().unwrap(); // t³/w
    let _ = t3;
    // x = u / t², so dx/dt = u'/t² − 2u/t³ and
    // 2y + a₁x + a₃ = (−2 + a₁ t + a₃ w)/w.
    // ω/dt = (dx/dt)·w/(−2 + a₁t + a₃w) = (u' t − 2u)/t³ · w /(−2 + a₁t + a₃w)
    //      = (u' t − 2u) · (w/t³) / (−2 + a₁t + a₃w).
    let t = exactcore::TruncSeries1::t(n, zero.clone());
    let num = u.derivative().mul(&t).sub(&u.scale(&int(2))).truncate(n - 1);
    let wt = exactcore::TruncSeries1::new(w.coeffs().to_vec(), n, zero.clone());
    let den = exactcore::TruncSeries1::new(vec![GradedPoly::constant(&base_ring(), int(-2))], n, zero.clone())
        .add(&t.mul_coeff(&a1()))
        .add(&wt.mul_coeff(&a3()));
    let omega = num.mul(&w_over_t3.truncate(n - 1)).mul(&den.truncate(n - 1).inverse().unwrap());
    let log2 = omega.integrate();
    let f = formal_group_law(n);
    let log = fgl_log(&f, 3).unwrap().log;
    let p = log.prec().min(log2.prec());
    assert_eq!(log.truncate(p), log2.truncate(p));
}

#[test]
fn printed_log_coefficients() {
    let f = formal_group_law(DEFAULT_ORDER);
    let l = fgl_log(&f, 3).unwrap().l;
    assert_eq!(l[1], poly(&[(1, 2, [1, 0])]));
    assert_eq!(l[2], poly(&[(1, 4, [3, 0]), (2, 4, [0, 1])]));
    assert_eq!(l[3], poly(&[(1, 8, [7, 0]), (30, 8, [4, 1]), (30, 8, [1, 2])]));
}

#[test]
fn printed_v_images() {
    let f = formal_group_law(DEFAULT_ORDER);
    let l = fgl_log(&f, 4).unwrap().l;
    let v = hazewinkel_images(&l, 4).unwrap();
    assert_eq!(v[1], a1());
    assert_eq!(v[2], a3());
    assert_eq!(v[3], poly(&[(7, 1, [4, 1]), (7, 1, [1, 2])]));
    assert!(v[4].terms().values().all(exactcore::rat::is_2local));
}

#[test]
fn order_too_small_is_reported() {
    let f = formal_group_law(8);
    assert!(matches!(fgl_log(&f, 3), Err(FglError::OrderTooSmall { .. })));
}

fn printed_t3() -> GradedPoly {
    // Exponents on (a1, a3, abar1, abar3), over 128.
    poly4(
        128,
        &[
            (480, [0, 0, 1, 2]),
            (-16, [1, 0, 0, 2]),
            (480, [0, 0, 4, 1]),
            (-16, [1, 0, 3, 1]),
            (8, [2, 0, 2, 1]),
            (-16, [3, 0, 1, 1]),
            (32, [1, 1, 0, 1]),
            (24, [4, 0, 0, 1]),
            (16, [0, 0, 7, 0]),
            (-4, [1, 0, 6, 0]),
            (4, [2, 0, 5, 0]),
            (-4, [0, 1, 4, 0]),
            (-11, [3, 0, 4, 0]),
            (32, [1, 1, 3, 0]),
            (24, [4, 0, 3, 0]),
            (-32, [2, 1, 2, 0]),
            (-22, [5, 0, 2, 0]),
            (32, [3, 1, 1, 0]),
            (20, [6, 0, 1, 0]),
            (-496, [1, 2, 0, 0]),
            (-508, [4, 1, 0, 0]),
            (-27, [7, 0, 0, 0]),
        ],
    )
}

#[test]
fn printed_t_images() {
    let f = formal_group_law(DEFAULT_ORDER);
    let l = fgl_log(&f, 3).unwrap().l;
    let t = t_images(&l, 3);
    assert_eq!(t[1], poly4(2, &[(1, [0, 0, 1, 0]), (-1, [1, 0, 0, 0])]));
    let t2 = poly4(
        8,
        &[(4, [0, 0, 0, 1]), (2, [0, 0, 3, 0]), (-1, [1, 0, 2, 0]), (2, [2, 0, 1, 0]), (-4, [0, 1, 0, 0]), (-3, [3, 0, 0, 0])],
    );
    assert_eq!(t[2], t2);
    let want = printed_t3();
    // The display carries 22 terms.
    assert_eq!(t[3].len(), 22);
    assert_eq!(t[3], want, "difference: {}", &t[3] - &want);
}

#[test]
fn t_counit_and_filtration() {
    let f = formal_group_law(DEFAULT_ORDER);
    let l = fgl_log(&f, 4).unwrap().l;
    let t = t_images(&l, 4);
    for n in 1..=4 {
        assert!(counit(&t[n]).is_zero(), "t_{n}");
        assert_eq!(adams_leading(&t[n]).0, Valuation::Fin(0), "AF(t_{n})");
    }
}

#[test]
fn adams_leading_examples() {
    let c4 = a1().pow(4) - (&a1() * &a3()).scale(&int(24));
    let (af, lead) = adams_leading(&c4);
    assert_eq!(af, Valuation::Fin(4));
    assert_eq!(lead, a1().pow(4));

    let c6 = a1().pow(6).scale(&int(-1)) + (a1().pow(3) * a3()).scale(&int(36)) - a3().pow(2).scale(&int(216));
    let (af, lead) = adams_leading(&c6);
    assert_eq!(af, Valuation::Fin(5));
    // 216a₃² ≡ 8a₃² modulo higher filtration: same valuation, same monomial.
    assert_eq!(lead.len(), 1);
    assert_eq!(exactcore::nu2(&lead.coeff(&[0, 2])), exactcore::nu2(&int(8)));

    let (af, lead) = adams_leading(&discriminant());
    assert_eq!(af, Valuation::Fin(4));
    assert_eq!(lead, a3().pow(4).scale(&int(-27)));
    assert_eq!(adams_leading(&GradedPoly::zero(&base_ring())).0, Valuation::Inf);
    let _ = Rat::from_integer(0.into());
}
