//! Rationals and 2-adic bookkeeping.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// A 2-adic valuation; `Inf` is the valuation of zero and compares above
/// every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Fin(i64),
    Inf,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Fin(v) => Some(v),
            Valuation::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        self == Valuation::Inf
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, o: Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Fin(a), Valuation::Fin(b)) => Valuation::Fin(a + b),
            _ => Valuation::Inf,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Fin(v) => write!(f, "{v}"),
            Valuation::Inf => write!(f, "inf"),
        }
    }
}

/// 2-adic valuation of a nonzero integer; `None` for zero.
pub fn nu2_int(n: &BigInt) -> Option<u64> {
    n.trailing_zeros()
}

pub fn nu2(x: &Rat) -> Valuation {
    if x.is_zero() {
        return Valuation::Inf;
    }
    let a = nu2_int(x.numer()).unwrap() as i64;
    let b = nu2_int(x.denom()).unwrap() as i64;
    Valuation::Fin(a - b)
}

/// Number of ones in the binary expansion of `n`.
pub fn alpha(n: u64) -> u32 {
    n.count_ones()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// True iff `x` lies in the 2-local integers.
pub fn is_2local(x: &Rat) -> bool {
    x.denom().is_odd()
}

/// Reduction of a 2-local rational modulo 2.
pub fn mod2(x: &Rat) -> Option<bool> {
    if !is_2local(x) {
        return None;
    }
    Some(x.numer().is_odd())
}

/// Residue of a 2-local rational modulo `2^k` as an integer in `[0, 2^k)`.
pub fn residue_pow2(x: &Rat, k: u32) -> Option<BigInt> {
    if !is_2local(x) {
        return None;
    }
    let m = BigInt::one() << k;
    let dinv = inverse_mod_pow2(&x.denom().mod_floor(&m), k)?;
    Some((x.numer() * dinv).mod_floor(&m))
}

pub fn inverse_mod_pow2(d: &BigInt, k: u32) -> Option<BigInt> {
    if d.is_even() {
        return None;
    }
    let m = BigInt::one() << k;
    if k == 0 {
        return Some(BigInt::zero());
    }
    // Newton iteration x <- x(2 - dx) doubles correct bits.
    let mut x = BigInt::one();
    let mut bits = 1;
    while bits < k {
        x = (&x * (BigInt::from(2) - d * &x)).mod_floor(&m);
        bits *= 2;
    }
    Some(x.mod_floor(&m))
}

pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

/// Human-facing rendering: integers without the `/1`.
pub fn rat_display(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn small(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Newtype used where a serializable rational is needed inside containers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatStr(pub Rat);

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_rat::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        serde_rat::deserialize(d).map(RatStr)
    }
}
