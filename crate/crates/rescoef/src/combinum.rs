//! Combinatorial numbers computed twice: by closed form and by coefficient
//! extraction.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numeric::{binom_int, fact, q, qi, Q};
use crate::series::LaurentSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinumError {
    #[error("{name}: closed form {closed} differs from residue {residue}")]
    Disagreement {
        name: &'static str,
        closed: Q,
        residue: Q,
    },
    #[error("ballot_phi needs X >= Y, got X={0}, Y={1}")]
    Ballot(i64, i64),
    #[error("negative argument to {0}")]
    Negative(&'static str),
}

pub type Result<T> = std::result::Result<T, CombinumError>;

/// A value certified by two independent routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialValue {
    value: Q,
    via_closed_form: Q,
    via_residue: Q,
}

impl CombinatorialValue {
    pub fn new(name: &'static str, closed: Q, residue: Q) -> Result<Self> {
        if closed != residue {
            return Err(CombinumError::Disagreement {
                name,
                closed,
                residue,
            });
        }
        Ok(Self {
            value: closed.clone(),
            via_closed_form: closed,
            via_residue: residue,
        })
    }

    pub fn value(&self) -> &Q {
        &self.value
    }

    pub fn via_closed_form(&self) -> &Q {
        &self.via_closed_form
    }

    pub fn via_residue(&self) -> &Q {
        &self.via_residue
    }
}

fn res_times(s: &LaurentSeries, k: i64) -> Q {
    s.shift(-k - 1).res().expect("window covers the residue")
}

/// `res_w (1+w)^n w^{-k-1}`.
pub fn binom_via_res(n: i64, k: i64) -> Q {
    assert!(n >= 0, "binom_via_res needs n >= 0");
    let s = LaurentSeries::binom_pow(&q(1), &q(n), "w", 0);
    res_times(&s, k)
}

pub fn binom_checked(n: i64, k: i64) -> Result<CombinatorialValue> {
    if n < 0 {
        return Err(CombinumError::Negative("binom_checked"));
    }
    CombinatorialValue::new("binom", qi(binom_int(n, k)), binom_via_res(n, k))
}

/// `res_w (1-w)^{-n} w^{-k-1}`.
pub fn negbinom_via_res(n: i64, k: i64) -> Q {
    if k < 0 {
        return Q::zero();
    }
    let s = LaurentSeries::binom_pow(&q(-1), &q(-n), "w", k + 1);
    res_times(&s, k)
}

pub fn negbinom_checked(n: i64, k: i64) -> Result<CombinatorialValue> {
    if n < 1 || k < 0 {
        return Err(CombinumError::Negative("negbinom_checked"));
    }
    CombinatorialValue::new(
        "negbinom",
        qi(binom_int(n + k - 1, k)),
        negbinom_via_res(n, k),
    )
}

fn stirling2_rec(n: u64, k: u64) -> BigInt {
    let mut row = vec![BigInt::one()];
    for i in 1..=n {
        let mut next = vec![BigInt::zero(); (i + 1) as usize];
        for j in 1..=i as usize {
            let keep = if j < row.len() {
                &row[j] * BigInt::from(j)
            } else {
                BigInt::zero()
            };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_default()
}

/// `(n!/k!) res_w (e^w - 1)^k w^{-n-1}`.
pub fn stirling2_via_res(n: u64, k: u64) -> Q {
    let w = LaurentSeries::poly("w", vec![(1, Q::one())]);
    let e = w.exp_series_to(n as i64 + 2).expect("positive order");
    let base = e.sub(&LaurentSeries::one("w")).expect("same variable");
    let p = base.pow_int(k as i64).expect("nonnegative power");
    res_times(&p, n as i64) * qi(fact(n)) / qi(fact(k))
}

/// Stirling number of the second kind, with `S2(0,0) = 1`.
pub fn stirling2(n: u64, k: u64) -> BigInt {
    stirling2_via_res(n, k).to_integer()
}

pub fn stirling2_checked(n: u64, k: u64) -> Result<CombinatorialValue> {
    CombinatorialValue::new(
        "stirling2",
        qi(stirling2_rec(n, k)),
        stirling2_via_res(n, k),
    )
}

/// `res_w w^{-n+k-1}`.
pub fn kronecker(n: i64, k: i64) -> i64 {
    let r = LaurentSeries::monomial("w", -n + k - 1)
        .res()
        .expect("exact monomial");
    if r.is_one() {
        1
    } else {
        0
    }
}

/// Paths of unit right/up steps from the origin to `(x, y)` staying in `y <= x`.
pub fn ballot_phi(x: i64, y: i64) -> Result<BigInt> {
    if y < 0 || x < y {
        return Err(CombinumError::Ballot(x, y));
    }
    let closed = qi(binom_int(x + y, y)) * q(x - y + 1) / q(x + 1);
    let residue = binom_via_res(x + y, y) - binom_via_res(x + y, y - 1);
    Ok(CombinatorialValue::new("ballot_phi", closed, residue)?
        .value()
        .to_integer())
}

/// Compositions of `m` into `q` even parts, as `res_x (1-x^2)^{-q} x^{-(m-2q+1)}`.
pub fn omega_dd(m: i64, q_: i64) -> BigInt {
    if q_ < 1 || m < 2 * q_ {
        return BigInt::zero();
    }
    let k = m - 2 * q_;
    let y = LaurentSeries::binom_pow(&q(-1), &q(-q_), "y", k / 2 + 1);
    let x2 = LaurentSeries::poly("x", vec![(2, Q::one())]);
    let f = y.compose(&x2).expect("inner of positive order");
    let residue = res_times(&f, k);
    let closed = if m % 2 == 0 {
        qi(binom_int(m / 2 - 1, q_ - 1))
    } else {
        Q::zero()
    };
    CombinatorialValue::new("omega_dd", closed, residue.clone())
        .map(|v| v.value().to_integer())
        .unwrap_or_else(|e| panic!("{e}"))
}

/// Sum over compositions of `m` into `q` parts of `prod (n_j + 1)`, as
/// `res_x ((1-x)^{-2} - 1)^q x^{-m-1}`.
pub fn comp_product_sum(m: i64, q_: i64) -> BigInt {
    if q_ < 1 || m < q_ {
        return BigInt::zero();
    }
    let g = LaurentSeries::binom_pow(&q(-1), &q(-2), "x", m + 1);
    let f = g.sub(&LaurentSeries::one("x")).expect("same variable");
    let p = f.pow_int(q_).expect("nonnegative power");
    res_times(&p, m).to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_via_res(4, 2), q(6));
        assert_eq!(binom_via_res(4, 7), q(0));
        assert_eq!(binom_via_res(0, 0), q(1));
        assert_eq!(negbinom_via_res(2, 3), q(4));
        assert_eq!(negbinom_via_res(1, 9), q(1));
        assert_eq!(negbinom_via_res(3, 0), q(1));
        assert!(binom_checked(7, 3).is_ok());
    }

    #[test]
    fn stirling() {
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(0, 0), BigInt::from(1));
        assert_eq!(stirling2(5, 5), BigInt::from(1));
        assert_eq!(stirling2(3, 0), BigInt::from(0));
        for n in 0..8 {
            for k in 0..=n {
                assert!(stirling2_checked(n, k).is_ok());
            }
        }
    }

    #[test]
    fn deltas() {
        assert_eq!(kronecker(3, 3), 1);
        assert_eq!(kronecker(3, 4), 0);
        assert_eq!(kronecker(0, 0), 1);
    }

    #[test]
    fn ballots() {
        assert_eq!(ballot_phi(3, 2).unwrap(), BigInt::from(5));
        assert_eq!(ballot_phi(6, 0).unwrap(), BigInt::from(1));
        assert_eq!(ballot_phi(2, 2).unwrap(), BigInt::from(2));
        assert!(ballot_phi(1, 2).is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(omega_dd(2, 1), BigInt::from(1));
        assert_eq!(omega_dd(5, 2), BigInt::from(0));
        assert_eq!(omega_dd(6, 2), BigInt::from(2));
        assert_eq!(comp_product_sum(2, 1), BigInt::from(3));
        assert_eq!(comp_product_sum(3, 2), BigInt::from(12));
        assert_eq!(comp_product_sum(1, 2), BigInt::from(0));
    }
}
