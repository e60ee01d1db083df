use extengine::*;
use proptest::prelude::*;
use steenrod::{Comodule, ModuleDef};

fn small_comodule() -> impl Strategy<Value = ModuleDef> {
    (0usize..=2, -1i32..=2, 0u32..=2).prop_filter_map("level below algebra", |(n, l, j)| {
        (l <= n as i32 - 1 || l == -1).then(|| ModuleDef::from_comodule(&Comodule::bg(l, j, n)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn a2_associative(a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let alg = build_an(2).unwrap();
        prop_assert!(alg.is_associative_on(a, b, c));
    }

    #[test]
    fn engines_agree(d in small_comodule()) {
        let alg = build_an(d.over).unwrap();
        let r = resolve_def(&d, 14, 14).unwrap();
        prop_assert!(r.is_complex());
        prop_assert!(r.is_minimal());
        let cof = cofree_ext(&alg, &ComoduleData::from_def(&d, &alg).unwrap(), 14, 14);
        prop_assert_eq!(r.chart().dims, cof);
    }

    #[test]
    fn ext_of_sum_is_sum(a in small_comodule(), k in 0u64..6) {
        let b = shift(&ModuleDef::trivial(a.over), k);
        let sum = direct_sum("sum", &[a.clone(), b.clone()]);
        let (ca, cb, cs) = (ext_chart(&a, 12, 12).unwrap(), ext_chart(&b, 12, 12).unwrap(), ext_chart(&sum, 12, 12).unwrap());
        for s in 0..=12u32 {
            for t in 0..=12u64 {
                prop_assert_eq!(cs.dim(s, t), ca.dim(s, t) + cb.dim(s, t));
            }
        }
    }

    #[test]
    fn shift_moves_chart(a in small_comodule(), k in 1u64..6) {
        let c = ext_chart(&a, 16, 10).unwrap();
        let cs = ext_chart(&shift(&a, k), 16 + k, 10).unwrap();
        for ((s, t), d) in &c.dims {
            prop_assert_eq!(cs.dim(*s, t + k), *d);
        }
    }
}
