//! Exact rational scalars and the handful of number-theoretic constants used
//! elsewhere (Bernoulli numbers, zeta values at negative integers).

use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rat;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

/// Canonical text form: `p/q` in lowest terms with `q > 0`, or `p` when `q = 1`.
pub fn render(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rat> {
    let t = s.trim();
    let r = Rat::from_str(t).map_err(|_| Error::Parse(s.to_string()))?;
    Ok(r)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// C(n, k) for integer arguments, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn binom_rat(n: i64, k: i64) -> Rat {
    big(binomial(n, k))
}

pub fn pow(r: &Rat, e: u32) -> Rat {
    num_traits::pow(r.clone(), e as usize)
}

pub fn two_pow(e: i64) -> Rat {
    if e >= 0 {
        big(BigInt::one() << (e as usize))
    } else {
        Rat::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

static BERNOULLI: Mutex<Vec<Rat>> = Mutex::new(Vec::new());

/// Bernoulli number `B_m` with `B_1 = -1/2`, from `sum_{j<=m} C(m+1, j) B_j = 0`.
pub fn bernoulli(m: usize) -> Rat {
    let mut memo = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if memo.is_empty() {
        memo.push(Rat::one());
    }
    while memo.len() <= m {
        let n = memo.len();
        let mut s = Rat::zero();
        for (j, b) in memo.iter().enumerate() {
            s += binom_rat(n as i64 + 1, j as i64) * b;
        }
        memo.push(-s / int(n as i64 + 1));
    }
    memo[m].clone()
}

/// ζ(−k) = −B_{k+1}/(k+1).
pub fn zeta_neg(k: usize) -> Rat {
    assert!(k >= 1, "zeta_neg needs k >= 1");
    -bernoulli(k + 1) / int(k as i64 + 1)
}

/// (1 − 2^{−k}) ζ(−k), the constant term of the shifted symmetric power sum.
pub fn pk_constant(k: usize) -> Rat {
    (Rat::one() - two_pow(-(k as i64))) * zeta_neg(k)
}

/// Serde adapter writing a `Rat` in canonical text form.
pub mod as_text {
    use super::{parse, render, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn zeta_and_constants() {
        assert_eq!(zeta_neg(1), rat(-1, 12));
        assert_eq!(zeta_neg(2), int(0));
        assert_eq!(zeta_neg(3), rat(1, 120));
        assert_eq!(pk_constant(1), rat(-1, 24));
        assert_eq!(pk_constant(2), int(0));
        assert_eq!(pk_constant(3), rat(7, 960));
    }

    #[test]
    fn render_forms() {
        assert_eq!(render(&rat(6, 4)), "3/2");
        assert_eq!(render(&rat(-6, 3)), "-2");
        assert_eq!(render(&rat(3, -9)), "-1/3");
        assert_eq!(parse("  -10/4 ").unwrap(), rat(-5, 2));
        assert!(parse("1/0x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 7), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
