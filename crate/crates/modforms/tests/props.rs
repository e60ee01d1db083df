use exactcore::int;
use modforms::forms::TwoVarForm;
use modforms::level::{psi3_raw, psi5_raw, Gamma05Poly, PINNED};
use modforms::qexp::q_expand;
use proptest::prelude::*;

fn small_form() -> impl Strategy<Value = TwoVarForm> {
    prop::collection::vec((-5i64..=5, 0u32..=2, 0u32..=1, 0u32..=2, 0u32..=1), 1..4).prop_map(|ts| {
        ts.into_iter().fold(TwoVarForm::zero(), |acc, (c, a, b, x, y)| {
            acc + (TwoVarForm::c4().pow(a) * TwoVarForm::c6().pow(b) * TwoVarForm::cb4().pow(x) * TwoVarForm::cb6().pow(y)).scale(&int(c))
        })
    })
}

fn mul_grid(a: &modforms::QExpansion2, b: &modforms::QExpansion2) -> Vec<Vec<exactcore::Rat>> {
    let p = a.prec;
    let mut out = vec![vec![int(0); p]; p];
    for i in 0..p {
        for j in 0..p {
            for k in 0..=i {
                for l in 0..=j {
                    out[i][j] += a.coeff(k, l) * b.coeff(i - k, j - l);
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn q_expansion_is_multiplicative(f in small_form(), g in small_form()) {
        let p = 12;
        let prod = q_expand(&(&f * &g), p);
        let grid = mul_grid(&q_expand(&f, p), &q_expand(&g, p));
        for i in 0..p {
            for j in 0..p {
                prop_assert_eq!(prod.coeff(i, j), grid[i][j].clone());
            }
        }
    }

    #[test]
    fn pushforwards_are_ring_maps(f in small_form(), g in small_form()) {
        prop_assert_eq!(psi3_raw(&(&f * &g), PINNED), &psi3_raw(&f, PINNED) * &psi3_raw(&g, PINNED));
        prop_assert_eq!(psi5_raw(&(&f * &g), PINNED), psi5_raw(&f, PINNED).mul(&psi5_raw(&g, PINNED)));
    }

    #[test]
    fn c6_flip_is_an_involution(f in small_form()) {
        prop_assert_eq!(f.c6_flip().c6_flip(), f.clone());
        prop_assert_eq!(f.swap_bars().swap_bars(), f);
    }

    #[test]
    fn gamma05_mul_associative(a in 0u32..3, b in 0u32..3, c in 0u32..3) {
        let x = Gamma05Poly::b4().pow(a).add(&Gamma05Poly::b2());
        let y = Gamma05Poly::b4().pow(b).add(&Gamma05Poly::delta());
        let z = Gamma05Poly::b4().pow(c);
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }
}
