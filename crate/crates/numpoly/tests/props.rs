use exactcore::rat::is_2local;
use exactcore::{rat, Rat};
use numpoly::*;
use proptest::prelude::*;

fn local_coeffs(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec((-50i64..50, 0i64..4), 1..=n)
        .prop_map(|v| v.into_iter().map(|(a, d)| rat(a, 2 * d + 1)).collect())
}

proptest! {
    #[test]
    fn g_roundtrip_and_integrality(c in local_coeffs(7), k in -6i64..=6) {
        let p = NumPolyQ::from_expansion(BasisKind::G, &c);
        let mut back = p.expansion(BasisKind::G).to_vec();
        back.resize(c.len(), Rat::from_integer(0.into()));
        prop_assert_eq!(&back, &c);
        prop_assert!(is_2local(&p.eval(&rat(2 * k + 1, 1))));
        prop_assert!(is_2local(&p.eval(&three_pow(k))));
    }

    #[test]
    fn f_roundtrip_and_integrality(c in local_coeffs(5), k in -6i64..=6) {
        let p = NumPolyQ::from_expansion(BasisKind::F, &c);
        let mut back = p.expansion(BasisKind::F).to_vec();
        back.resize(c.len(), Rat::from_integer(0.into()));
        prop_assert_eq!(&back, &c);
        prop_assert!(is_2local(&p.eval_w(&three_pow(k))));
    }
}
