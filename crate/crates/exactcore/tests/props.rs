use exactcore::*;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (any::<i64>(), 1i64..1_000_000).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_series(prec: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, prec)
}

proptest! {
    #[test]
    fn nu2_multiplicative(x in arb_rat(), y in arb_rat()) {
        prop_assert_eq!(nu2(&(&x * &y)), nu2(&x) + nu2(&y));
    }

    #[test]
    fn nu2_ultrametric(x in arb_rat(), y in arb_rat()) {
        let s = nu2(&(&x + &y));
        let (a, b) = (nu2(&x), nu2(&y));
        prop_assert!(s >= a.min(b));
        if a != b {
            prop_assert_eq!(s, a.min(b));
        }
    }

    #[test]
    fn reversion_is_inverse(tail in arb_series(8), lead in prop::sample::select(vec![1i64, -1, 2, 3, -5])) {
        let z = Rat::zero();
        let mut c = vec![int(0), int(lead)];
        c.extend(tail.into_iter().map(int));
        let f = TruncSeries1::new(c, 9, z.clone());
        let g = f.revert().unwrap();
        let t = TruncSeries1::t(9, z);
        prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), t);
    }

    #[test]
    fn inverse_series(tail in arb_series(7), lead in prop::sample::select(vec![1i64, -1, 3])) {
        let z = Rat::zero();
        let mut c = vec![int(lead)];
        c.extend(tail.into_iter().map(int));
        let f = TruncSeries1::new(c, 8, z.clone());
        prop_assert_eq!(f.mul(&f.inverse().unwrap()), TruncSeries1::one(8, z));
    }

    #[test]
    fn f2_solve_verified(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 9), 0..12),
                         target in prop::collection::vec(any::<bool>(), 9)) {
        let m = F2Matrix::from_rows(rows.iter().map(|r| Bits::from_bools(r)).collect(), 9).unwrap();
        let t = Bits::from_bools(&target);
        match f2_solve(&m, &t).unwrap() {
            Solve::Solution(x) => prop_assert_eq!(m.left_mul(&x).unwrap(), t),
            Solve::Inconsistent => {
                // Brute force: no subset of rows sums to the target.
                let n = m.nrows();
                for mask in 0u32..(1 << n) {
                    let x = Bits::from_bools(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
                    prop_assert_ne!(m.left_mul(&x).unwrap(), t.clone());
                }
            }
        }
    }

    #[test]
    fn left_kernel_is_kernel(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 7), 1..10)) {
        let m = F2Matrix::from_rows(rows.iter().map(|r| Bits::from_bools(r)).collect(), 7).unwrap();
        let k = m.left_kernel();
        prop_assert_eq!(k.len() + m.rank(), m.nrows());
        for v in &k {
            prop_assert!(m.left_mul(v).unwrap().is_zero());
        }
    }
}
