use proptest::prelude::*;
use steenrod::*;

fn mono(k: usize, max: u32) -> impl Strategy<Value = XiMonomial> {
    prop::collection::vec(0..=max, k).prop_map(|v| XiMonomial::from_exps(&v))
}

fn tensor_product(a: &std::collections::BTreeMap<XiMonomial, F2Poly>, b: &std::collections::BTreeMap<XiMonomial, F2Poly>, n: usize) -> std::collections::BTreeMap<XiMonomial, F2Poly> {
    let mut out: std::collections::BTreeMap<XiMonomial, F2Poly> = Default::default();
    for (r1, l1) in a {
        for (r2, l2) in b {
            out.entry(r1.mul(r2)).or_default().add_assign(&l1.mul_by(l2, |m| in_an(m, n)));
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degree_and_weight_are_additive(a in mono(4, 9), b in mono(4, 9)) {
        prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
        prop_assert_eq!(a.mul(&b).weight(), a.weight() + b.weight());
        prop_assert_eq!(a.shift_up().weight(), 2 * a.weight());
        prop_assert_eq!(XiMonomial::parse(&a.to_string()), Some(a.clone()));
    }

    #[test]
    fn coaction_is_multiplicative(a in mono(3, 6), b in mono(3, 6), n in 0usize..=2) {
        let lhs = coaction(&a.mul(&b), n);
        let rhs = tensor_product(&coaction(&a, n), &coaction(&b, n), n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_into_an_is_multiplicative(a in mono(3, 7), b in mono(3, 7)) {
        let lhs = conj_to_an(&a.mul(&b), 2);
        let rhs = conj_to_an(&a, 2).mul_by(&conj_to_an(&b, 2), |m| in_an(m, 2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn an_coproduct_is_coassociative(i in 0usize..64) {
        let m = &an_basis(2)[i];
        let mut lhs = std::collections::BTreeSet::new();
        let mut rhs = std::collections::BTreeSet::new();
        let t = |s: &mut std::collections::BTreeSet<_>, x| { if !s.remove(&x) { s.insert(x); } };
        for (p, q) in an_coproduct(m, 2) {
            for (p1, p2) in an_coproduct(&p, 2) { t(&mut lhs, (p1, p2, q.clone())); }
            for (q1, q2) in an_coproduct(&q, 2) { t(&mut rhs, (p.clone(), q1, q2)); }
        }
        prop_assert_eq!(lhs, rhs);
    }
}
