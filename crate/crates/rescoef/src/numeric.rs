//! Exact integers and rationals, and the scalar combinatorial coefficients
//! used throughout the crate.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("negative argument {0} to {1}")]
    Negative(i64, &'static str),
    #[error("non-positive argument {0} to {1}")]
    NonPositive(i64, &'static str),
    #[error("divisor sum {sum} not divisible by {n}")]
    Divisibility { sum: BigInt, n: u64 },
    #[error("parameter `{0}` is unbound")]
    Unbound(String),
    #[error("parameter `{name}` = {value} is not an integer")]
    NotInteger { name: String, value: String },
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

pub fn qi(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// `"p/q"` with the denominator always present.
pub fn q_to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q, NumericError> {
    let s = s.trim();
    let err = || NumericError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, d)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(p, d))
        }
        None => Ok(qi(s.parse().map_err(|_| err())?)),
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Exact floor of a rational.
pub fn floor_q(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn pow_q(x: &Q, e: u32) -> Q {
    num_traits::pow(x.clone(), e as usize)
}

pub fn factorial(n: i64) -> Result<BigInt, NumericError> {
    if n < 0 {
        return Err(NumericError::Negative(n, "factorial"));
    }
    Ok(fact(n as u64))
}

pub(crate) fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient on all integers.
///
/// Zero when `b < 0` or `b > a >= 0`; negative `a` uses the falling factorial.
pub fn binom_int(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a < 0 {
        return binom_general(&q(a), b as u64).to_integer();
    }
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// `a(a-1)...(a-b+1)/b!` for rational `a`.
pub fn binom_general(a: &Q, b: u64) -> Q {
    let mut acc = Q::one();
    let mut top = a.clone();
    for i in 1..=b {
        acc = acc * &top / qi(BigInt::from(i));
        top -= Q::one();
    }
    acc
}

/// `C(p, q)` when both are nonnegative integers, zero otherwise.
pub fn binom_primed(p: &Q, q: i64) -> BigInt {
    if !is_integer(p) || p.is_negative() || q < 0 {
        return BigInt::zero();
    }
    match p.to_integer().to_i64() {
        Some(p) => binom_int(p, q),
        None => BigInt::zero(),
    }
}

/// `(alpha+1)(alpha+2)...(alpha+sum) / prod(parts!)`.
pub fn multinomial_general(alpha: &Q, parts: &[u64]) -> Q {
    let total: u64 = parts.iter().sum();
    let mut acc = Q::one();
    for i in 1..=total {
        acc *= alpha + qi(BigInt::from(i));
    }
    for &p in parts {
        acc /= qi(fact(p));
    }
    acc
}

pub fn mobius(n: i64) -> Result<i64, NumericError> {
    if n <= 0 {
        return Err(NumericError::NonPositive(n, "mobius"));
    }
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Number of aperiodic necklaces (Lyndon words) of length `n` over `q` letters.
pub fn necklace_rank(q: u64, n: u64) -> Result<BigInt, NumericError> {
    if q == 0 {
        return Err(NumericError::NonPositive(0, "necklace_rank"));
    }
    if n == 0 {
        return Err(NumericError::NonPositive(0, "necklace_rank"));
    }
    let mut sum = BigInt::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let mu = mobius(d as i64)?;
            sum += BigInt::from(mu) * num_traits::pow(BigInt::from(q), (n / d) as usize);
        }
    }
    if !(&sum % n).is_zero() {
        return Err(NumericError::Divisibility { sum, n });
    }
    Ok(sum / n)
}

/// Named parameter values for identity evaluation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamBinding {
    values: BTreeMap<String, Q>,
}

impl ParamBinding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: Q) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with_int(self, name: &str, value: i64) -> Self {
        self.with(name, q(value))
    }

    pub fn set(&mut self, name: &str, value: Q) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<&Q, NumericError> {
        self.values
            .get(name)
            .ok_or_else(|| NumericError::Unbound(name.to_string()))
    }

    pub fn int(&self, name: &str) -> Result<i64, NumericError> {
        let v = self.get(name)?;
        if !is_integer(v) {
            return Err(NumericError::NotInteger {
                name: name.to_string(),
                value: v.to_string(),
            });
        }
        v.to_integer()
            .to_i64()
            .ok_or_else(|| NumericError::NotInteger {
                name: name.to_string(),
                value: v.to_string(),
            })
    }

    pub fn contains(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Q)> {
        self.values.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for ParamBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(factorial(5).unwrap(), BigInt::from(120));
        assert_eq!(factorial(10).unwrap(), BigInt::from(3628800));
        assert!(factorial(-1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_int(4, 2), BigInt::from(6));
        assert_eq!(binom_int(2, 3), BigInt::zero());
        assert_eq!(binom_int(7, 4), BigInt::from(35));
        assert_eq!(binom_int(5, -1), BigInt::zero());
        assert_eq!(binom_int(-3, 2), BigInt::from(6));
        assert_eq!(binom_general(&q(-3), 2), q(6));
        assert_eq!(binom_general(&qr(1, 2), 2), qr(-1, 8));
        assert_eq!(binom_general(&qr(3, 2), 1), qr(3, 2));
    }

    #[test]
    fn primed() {
        assert_eq!(binom_primed(&qr(-1, 2), 0), BigInt::zero());
        assert_eq!(binom_primed(&q(3), 1), BigInt::from(3));
        assert_eq!(binom_primed(&q(2), 5), BigInt::zero());
        assert_eq!(binom_primed(&q(-1), 0), BigInt::zero());
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial_general(&q(0), &[1, 1]), q(2));
        assert_eq!(multinomial_general(&qr(3, 2), &[1, 1]), qr(35, 4));
        assert_eq!(multinomial_general(&q(0), &[]), q(1));
        assert_eq!(multinomial_general(&q(0), &[2, 1, 3]), q(60));
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=12).map(|n| mobius(n).unwrap()).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn necklaces() {
        let v: Vec<BigInt> = (1..=4).map(|n| necklace_rank(2, n).unwrap()).collect();
        assert_eq!(
            v,
            vec![2, 1, 2, 3]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn floors_and_strings() {
        assert_eq!(floor_q(&qr(7, 2)), BigInt::from(3));
        assert_eq!(floor_q(&qr(-7, 2)), BigInt::from(-4));
        assert_eq!(q_to_string(&q(6)), "6/1");
        assert_eq!(parse_q("-3/6").unwrap(), qr(-1, 2));
        assert!(parse_q("1/0").is_err());
    }
}
