use exactcore::rat::{alpha, factorial, nu2_int};
use exactcore::{int, nu2, rat, Rat, Valuation};
use numpoly::*;
use num_traits::{One, Zero};

fn w_poly(c: &[Rat]) -> NumPolyQ {
    NumPolyQ::new(PolyVar::W, c.to_vec())
}

#[test]
fn g_basis_small() {
    assert_eq!(g_basis(0), NumPolyQ::constant(PolyVar::W, Rat::one()));
    assert_eq!(g_basis(1), w_poly(&[rat(-1, 2), rat(1, 2)]));
    // (w−1)(w−3)/8
    assert_eq!(g_basis(2), w_poly(&[rat(3, 8), rat(-4, 8), rat(1, 8)]));
}

#[test]
fn g_values_are_binomials() {
    for n in 0..8 {
        let g = g_basis(n);
        for m in 0..12i64 {
            let want = exactcore::rat::binomial(m as u64, n as u64);
            assert_eq!(g.eval(&int(2 * m + 1)), Rat::from_integer(want));
        }
    }
}

#[test]
fn af_table() {
    let got: Vec<i64> = (0..=8).map(|n| af_of_basis(BasisKind::G, n)).collect();
    assert_eq!(got, vec![0, -1, -3, -4, -7, -8, -10, -11, -15]);
    // Oracle: −ν₂ of the leading coefficient 1/(2ⁿ n!).
    for n in 0..=40u64 {
        let v = n as i64 + nu2_int(&factorial(n)).unwrap() as i64;
        assert_eq!(af_of_basis(BasisKind::G, n), -v);
    }
    assert_eq!(af_of_basis(BasisKind::G, 4), -7);
    assert_eq!(af_of_basis(BasisKind::F, 1), -3);
    assert_eq!(af_of_basis(BasisKind::F, 2), -7);
}

#[test]
fn f9_small() {
    assert_eq!(f9_basis(0), NumPolyQ::constant(PolyVar::W2, Rat::one()));
    assert_eq!(f9_basis(1), NumPolyQ::new(PolyVar::W2, vec![rat(-1, 8), rat(1, 8)]));
    assert_eq!(f9_basis(1).eval(&int(1)), Rat::zero());
}

#[test]
fn f9_denominator_valuation() {
    for n in 0..=16usize {
        let d = f9_denominator(n);
        assert_eq!(nu2(&d), Valuation::Fin(4 * n as i64 - alpha(n as u64) as i64), "n = {n}");
    }
}

#[test]
fn f_in_g_basis() {
    assert_eq!(expand_in_g(0), vec![int(1)]);
    assert_eq!(expand_in_g(1), vec![int(0), int(1), int(1)]);
    assert_eq!(expand_in_g(2), vec![int(0), int(0), rat(1, 15), rat(2, 15), rat(1, 15)]);
    // The AF from the g-expansion agrees with α(n) − 4n.
    for n in 0..=6usize {
        let f = f9_basis(n);
        assert_eq!(f.adams_filtration(BasisKind::G), Valuation::Fin(af_of_basis(BasisKind::F, n as u64)));
    }
}

#[test]
fn eval_matrix_triangular() {
    let m = eval_matrix(6, 6);
    assert!(m.upper_triangular_unit);
    for j in 0..=6 {
        for k in 0..j {
            assert!(m.entries[j][k].is_zero());
        }
        assert!(m.entries[j][j].is_one());
    }
    assert!(eval_matrix(2, 3).entries[2][3].denom() % 2u32 == 1u32.into());
    assert!(eval_matrix(10, 12).upper_triangular_unit);
}

#[test]
fn expansions_roundtrip() {
    let p = w_poly(&[int(5), rat(1, 3), int(0), rat(-7, 2), int(1)]);
    let c = p.expansion(BasisKind::G).to_vec();
    assert_eq!(NumPolyQ::from_expansion(BasisKind::G, &c), p);
    let q = NumPolyQ::new(PolyVar::W2, vec![int(2), rat(1, 5), int(-3), rat(9, 4)]);
    let c = q.expansion(BasisKind::F).to_vec();
    assert_eq!(NumPolyQ::from_expansion(BasisKind::F, &c), q);
}

#[test]
fn lattice_examples() {
    let bu = lattice(Theory::Bu, 0..=4);
    let find = |g: &[LatticeGenerator], fam, n, m| g.iter().find(|x| x.family == fam && x.n == n && x.m == m).cloned();
    assert_eq!(find(&bu, Family::Bu, 0, 0).unwrap().two_power, 0);
    assert_eq!(find(&bu, Family::Bu, 2, 2).unwrap().two_power, 1);
    let bo = lattice(Theory::Bo, 0..=12);
    assert_eq!(find(&bo, Family::BoFree, 2, 2).unwrap().two_power, 3);
    assert_eq!(find(&bo, Family::BoFree, 2, 2).unwrap().label(), "2^3*u^4*f_2");
    // Low stems of bo*bo: η, η² on 1 and on u⁴f₁ … but not on u⁴f₂.
    assert!(find(&bo, Family::BoEta, 0, 0).is_some());
    let eta_on = |n, m| bo.iter().filter(|g| g.family == Family::BoEta && g.n == n && g.m == m).count();
    assert_eq!(eta_on(0, 0), 2);
    assert_eq!(eta_on(1, 2), 2); // α−4+4+c ≥ 0
    assert_eq!(eta_on(2, 2), 0); // 1−8+4+c < 0
}

#[test]
fn lattice_filtration_is_tight() {
    // Each free generator has AF ≥ 0, and halving would make it negative
    // unless no 2 was added.
    for g in lattice(Theory::Bu, 0..=40).into_iter().chain(lattice(Theory::Bo, 0..=80)) {
        let af = g.adams_filtration();
        assert!(af >= 0, "{g:?}");
        if g.two_power > 0 {
            assert_eq!(af, 0, "{g:?}");
        }
        if g.family == Family::BoEta {
            assert!(af >= 0 && g.eta_power >= 1);
        }
    }
}

#[test]
fn lattice_generators_are_numerical() {
    // The polynomial part of each bu generator, times its 2-power, has
    // AF ≥ −m and takes 2-local values at odd integers.
    for g in lattice(Theory::Bu, 0..=16) {
        let p = g_basis(g.n as usize).scale(&Rat::from_integer(exactcore::BigInt::one() << g.two_power));
        for k in [-5i64, -3, -1, 1, 3, 7, 11] {
            assert!(exactcore::rat::is_2local(&p.eval(&int(k))));
        }
    }
}

#[test]
fn hz_image_families() {
    let h0 = hz_image(0, 0..=16);
    assert_eq!(h0.b_two_power, 0);
    let h1 = hz_image(1, 0..=16);
    assert_eq!(h1.b_two_power, 1);
    let (u, b1) = b_j(1);
    assert_eq!(u, 2);
    assert_eq!(b1, f9_basis(1).scale(&int(2)));
    for j in 0..=8u64 {
        let h = hz_image(j, 0..=200);
        let first = h.generators.iter().find(|g| g.m == j && g.family != Family::BoEta).unwrap();
        if j % 2 == 0 {
            assert_eq!(first.two_power as i64, (2 * j as i64 - alpha(j) as i64).max(0));
        }
        assert!(h.generators.iter().all(|g| g.n == j && g.m >= j));
    }
}

#[test]
fn b_j_lifts_xi_power() {
    // ((w²−1)/4)^j ≡ b_j modulo elements of positive AF (after u^{2j}).
    for j in 0..=6u64 {
        let (upow, b) = b_j(j);
        let x = NumPolyQ::new(PolyVar::W2, vec![rat(-1, 4), rat(1, 4)]).pow(j as u32);
        let diff = x.sub(&b);
        let af = diff.adams_filtration(BasisKind::F) + Valuation::Fin(upow as i64);
        assert!(af > Valuation::Fin(0), "j = {j}: {af}");
        assert_eq!(b.adams_filtration(BasisKind::F) + Valuation::Fin(upow as i64), Valuation::Fin(0));
    }
}

#[test]
fn t1_is_u_g1() {
    // η_R(v₁) = v₁ + 2t₁ with v₁ ↦ u, η_R(v₁) ↦ v = uw gives t₁ ↦ u(w−1)/2.
    let g1 = g_basis(1);
    for w in [-3i64, 1, 5, 9] {
        let u = int(7);
        let v = &u * int(w);
        assert_eq!(&u * g1.eval(&int(w)), (v - &u) / int(2));
    }
}

#[test]
fn csv_outputs() {
    let mut buf = vec![];
    write_af_csv(&mut buf, 8).unwrap();
    let s = String::from_utf8(buf).unwrap();
    assert!(s.starts_with("n,binary,af_g,af_f\n0,0,0,0\n"));
    assert!(s.contains("4,100,-7,-15"));
    let mut buf = vec![];
    write_lattice_csv(&mut buf, &lattice(Theory::Bo, 0..=8)).unwrap();
    assert!(String::from_utf8(buf).unwrap().lines().count() > 3);
}
