use exactcore::rat::{factorial, parse_rat, rat_to_string};
use exactcore::*;
use num_traits::{One, Zero};

fn catalan(n: u64) -> BigInt {
    // Independent oracle: C_n = binom(2n, n)/(n+1).
    exactcore::rat::binomial(2 * n, n) / BigInt::from(n + 1)
}

#[test]
fn nu2_examples() {
    assert_eq!(nu2(&Rat::zero()), Valuation::Inf);
    assert_eq!(nu2(&Rat::from_integer(factorial(8))), Valuation::Fin(7));
    assert_eq!(nu2(&int(756)), Valuation::Fin(2));
    assert_eq!(nu2(&rat(3, 8)), Valuation::Fin(-3));
}

#[test]
fn alpha_examples() {
    assert_eq!(alpha(0), 0);
    assert_eq!(alpha(8), 1);
    assert_eq!(alpha(7), 3);
}

#[test]
fn alpha_plus_nu2_factorial_is_n() {
    let mut f = BigInt::one();
    for n in 1..=10_000u64 {
        f *= BigInt::from(n);
        let v = nu2_int(&f).unwrap();
        assert_eq!(v + alpha(n) as u64, n, "n = {n}");
    }
}

#[test]
fn reversion_examples() {
    let z = Rat::zero();
    let t = TruncSeries1::t(6, z.clone());
    assert_eq!(t.revert().unwrap(), t);

    let f = TruncSeries1::new(vec![int(0), int(1), int(1)], 5, z.clone());
    let g = f.revert().unwrap();
    let expect = [int(0), int(1), int(-1), int(2), int(-5)];
    assert_eq!(g.coeffs(), &expect);

    let f = TruncSeries1::new(vec![int(0), int(1), int(1)], 12, z);
    let g = f.revert().unwrap();
    for n in 1..12u64 {
        let c = Rat::from_integer(catalan(n - 1)) * int(if n % 2 == 1 { 1 } else { -1 });
        assert_eq!(g.coeffs()[n as usize], c);
    }
}

#[test]
fn reversion_errors() {
    let z = Rat::zero();
    let f = TruncSeries1::new(vec![int(0), int(0), int(1)], 5, z.clone());
    assert_eq!(f.revert(), Err(SeriesError::NonInvertible));
    let g = TruncSeries1::new(vec![int(1), int(1)], 5, z.clone());
    assert_eq!(f.compose(&g), Err(SeriesError::NonzeroConstant));
    assert!(matches!(f.coeff(7), Err(SeriesError::PrecisionExceeded { .. })));
}

#[test]
fn substitution_of_unit() {
    let z = Rat::zero();
    let s = TruncSeries2::x(6, z.clone()).add(&TruncSeries2::y(6, z.clone()));
    let zero = TruncSeries2::zero(6, z.clone());
    let r = s.eval2(&zero, &TruncSeries2::y(6, z.clone()));
    assert_eq!(r, TruncSeries2::y(6, z));
}

#[test]
fn precision_takes_minimum() {
    let z = Rat::zero();
    let a = TruncSeries1::one(4, z.clone());
    let b = TruncSeries1::one(7, z.clone());
    assert_eq!(a.mul(&b).prec(), 4);
    assert_eq!(a.add(&b).prec(), 4);
    let c = TruncSeries2::constant(3, int(1));
    let d = TruncSeries2::constant(9, int(1));
    assert_eq!(c.mul(&d).prec(), 3);
}

#[test]
fn integrate_and_differentiate() {
    let z = Rat::zero();
    let f = TruncSeries1::new(vec![int(1), int(2), int(3)], 3, z);
    let g = f.integrate();
    assert_eq!(g.coeffs(), &[int(0), int(1), int(1), int(1)]);
    assert_eq!(g.derivative(), f);
}

#[test]
fn f2_solve_examples() {
    let id = F2Matrix::identity(3);
    let e1 = Bits::from_str01("100");
    assert_eq!(f2_solve(&id, &e1).unwrap(), Solve::Solution(e1.clone()));

    let zero = F2Matrix::zeros(3, 3);
    assert_eq!(f2_solve(&zero, &e1).unwrap(), Solve::Inconsistent);

    let m = F2Matrix::from_rows(vec![Bits::from_str01("110"), Bits::from_str01("011")], 3).unwrap();
    let t = Bits::from_str01("101");
    // Brute force over all 4 combinations.
    let mut found = vec![];
    for x in 0..4u32 {
        let xs = Bits::from_bools(&[x & 1 == 1, x & 2 == 2]);
        if m.left_mul(&xs).unwrap() == t {
            found.push(xs);
        }
    }
    assert_eq!(found, vec![Bits::from_str01("11")]);
    assert_eq!(f2_solve(&m, &t).unwrap(), Solve::Solution(Bits::from_str01("11")));

    assert!(f2_solve(&m, &Bits::from_str01("10")).is_err());
}

#[test]
fn rationals_serialize_as_fractions() {
    assert_eq!(rat_to_string(&rat(-212, 315)), "-212/315");
    assert_eq!(rat_to_string(&int(5)), "5/1");
    assert_eq!(parse_rat("-212/315"), Some(rat(-212, 315)));
    assert_eq!(parse_rat("7"), Some(int(7)));
}

#[test]
fn polynomial_basics() {
    let r = Ring::new(&[("a1", 2), ("a3", 6)]);
    let a1 = GradedPoly::var(&r, 0);
    let a3 = GradedPoly::var(&r, 1);
    let c4 = a1.pow(4) - (&a1 * &a3).scale(&int(24));
    assert_eq!(c4.homogeneous_degree(), Some(8));
    assert_eq!(c4.to_string(), "a1^4 - 24*a1*a3");
    let json = serde_json::to_string(&c4).unwrap();
    assert!(json.contains("\"coef\":\"-24/1\""));
    let sq = (&a1 + &a3).pow(2);
    assert_eq!(sq.len(), 3);
    assert_eq!(sq.coeff(&[1, 1]), int(2));
    // Substitution a1 -> a3, a3 -> a1.
    let s = c4.substitute(&[a3.clone(), a1.clone()]);
    assert_eq!(s, a3.pow(4) - (&a1 * &a3).scale(&int(24)));
}
