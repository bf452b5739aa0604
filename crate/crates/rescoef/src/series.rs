//! Truncated formal Laurent series in one variable.
//!
//! Every series carries a window: coefficients at exponents `>= trunc` are
//! unknown, and asking for one is an error. `trunc = None` marks a series
//! known exactly, i.e. a Laurent polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{binom_general, is_integer, q, qi, Q};

/// Window width used when an operation on an exact input has an infinite result.
pub const DEFAULT_WIDTH: i64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("coefficient of {var}^{k} requested outside the window (trunc {trunc})")]
    OutOfWindow { var: String, k: i64, trunc: i64 },
    #[error("exponent {k} is not below trunc {trunc}")]
    ExponentBeyondTrunc { k: i64, trunc: i64 },
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("the zero series has no inverse")]
    ZeroInverse,
    #[error("series must have order {expected}, found {found:?}")]
    Order { expected: i64, found: Option<i64> },
    #[error("substitution is not defined: {0}")]
    IllPosed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    var: String,
    coeffs: BTreeMap<i64, Q>,
    trunc: Option<i64>,
}

impl LaurentSeries {
    /// Series with the given terms, known below `trunc`.
    pub fn make(var: &str, terms: Vec<(i64, Q)>, trunc: i64) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if k >= trunc {
                return Err(SeriesError::ExponentBeyondTrunc { k, trunc });
            }
            if !c.is_zero() {
                *coeffs.entry(k).or_insert_with(Q::zero) += c;
            }
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        Ok(Self {
            var: var.to_string(),
            coeffs,
            trunc: Some(trunc),
        })
    }

    /// Exact Laurent polynomial.
    pub fn poly(var: &str, terms: Vec<(i64, Q)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert_with(Q::zero) += c;
        }
        coeffs.retain(|_, c: &mut Q| !c.is_zero());
        Self {
            var: var.to_string(),
            coeffs,
            trunc: None,
        }
    }

    pub fn zero(var: &str) -> Self {
        Self::poly(var, vec![])
    }

    pub fn one(var: &str) -> Self {
        Self::constant(var, Q::one())
    }

    pub fn constant(var: &str, c: Q) -> Self {
        Self::poly(var, vec![(0, c)])
    }

    pub fn monomial(var: &str, k: i64) -> Self {
        Self::poly(var, vec![(k, Q::one())])
    }

    /// `(1 + c w)^a`, exact when `a` is a nonnegative integer.
    pub fn binom_pow(c: &Q, a: &Q, var: &str, trunc: i64) -> Self {
        if c.is_zero() {
            return Self::one(var);
        }
        if is_integer(a) && !a.is_negative() {
            let n: i64 = a.to_integer().try_into().expect("exponent fits in i64");
            let terms = (0..=n)
                .map(|k| {
                    (
                        k,
                        binom_general(a, k as u64) * num_traits::pow(c.clone(), k as usize),
                    )
                })
                .collect();
            return Self::poly(var, terms);
        }
        let mut terms = Vec::new();
        let mut ck = Q::one();
        for k in 0..trunc.max(0) {
            terms.push((k, binom_general(a, k as u64) * &ck));
            ck *= c;
        }
        Self::make(var, terms, trunc).expect("terms below trunc")
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Least exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lower bound on the order that remains valid for the unknown tail.
    /// `None` means the series is exactly zero.
    fn val_bound(&self) -> Option<i64> {
        self.order().or(self.trunc)
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    /// Narrows the window to `t` if it is tighter.
    pub fn truncate(mut self, t: i64) -> Self {
        let t = min_opt(self.trunc, Some(t)).unwrap();
        self.coeffs.retain(|k, _| *k < t);
        self.trunc = Some(t);
        self
    }

    pub fn coeff(&self, k: i64) -> Result<Q> {
        if let Some(t) = self.trunc {
            if k >= t {
                return Err(SeriesError::OutOfWindow {
                    var: self.var.clone(),
                    k,
                    trunc: t,
                });
            }
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero))
    }

    /// Coefficient of `w^{-1}`.
    pub fn res(&self) -> Result<Q> {
        self.coeff(-1)
    }

    fn check_var(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return Err(SeriesError::VarMismatch(self.var.clone(), o.var.clone()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_var(o)?;
        let trunc = min_opt(self.trunc, o.trunc);
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            *coeffs.entry(*k).or_insert_with(Q::zero) += c;
        }
        coeffs.retain(|k, c| !c.is_zero() && trunc.is_none_or(|t| *k < t));
        Ok(Self {
            var: self.var.clone(),
            coeffs,
            trunc,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect()
        };
        Self {
            var: self.var.clone(),
            coeffs,
            trunc: self.trunc,
        }
    }

    /// Multiplication by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
            trunc: self.trunc.map(|t| t + k),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_var(o)?;
        let (va, vb) = match (self.val_bound(), o.val_bound()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(Self::zero(&self.var)),
        };
        let trunc = min_opt(self.trunc.map(|t| t + vb), o.trunc.map(|t| t + va));
        let mut coeffs: BTreeMap<i64, Q> = BTreeMap::new();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &o.coeffs {
                let k = ka + kb;
                if trunc.is_some_and(|t| k >= t) {
                    break;
                }
                *coeffs.entry(k).or_insert_with(Q::zero) += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Self {
            var: self.var.clone(),
            coeffs,
            trunc,
        })
    }

    /// Multiplicative inverse with the widest window the input supports.
    pub fn inv(&self) -> Result<Self> {
        let v = self.order().ok_or(SeriesError::ZeroInverse)?;
        let target = match self.trunc {
            Some(t) => t - 2 * v,
            None => -v + DEFAULT_WIDTH,
        };
        self.inv_to(target)
    }

    /// Multiplicative inverse known below `target` (clamped to what the input supports).
    pub fn inv_to(&self, target: i64) -> Result<Self> {
        let v = self.order().ok_or(SeriesError::ZeroInverse)?;
        if self.trunc.is_none() && self.coeffs.len() == 1 {
            let c = &self.coeffs[&v];
            return Ok(Self::poly(&self.var, vec![(-v, c.recip())]));
        }
        let target = match self.trunc {
            Some(t) => target.min(t - 2 * v),
            None => target,
        };
        let n = (target + v).max(0) as usize;
        let a: Vec<Q> = (0..n as i64)
            .map(|j| self.coeffs.get(&(v + j)).cloned().unwrap_or_else(Q::zero))
            .collect();
        let c_inv = a[0].recip();
        let mut b: Vec<Q> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(c_inv.clone());
                continue;
            }
            let mut acc = Q::zero();
            for j in 1..=k {
                if !a[j].is_zero() {
                    acc += &a[j] * &b[k - j];
                }
            }
            b.push(-acc * &c_inv);
        }
        let terms = b
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k as i64 - v, c))
            .collect();
        Self::make(&self.var, terms, target)
    }

    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow_int(-e);
        }
        let mut result = Self::one(&self.var);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Substitutes `inner` for the variable of `self`; the result lives in `inner`'s variable.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let var = inner.var.clone();
        if self.is_zero() {
            let trunc = match (self.trunc, inner.val_bound()) {
                (None, _) => None,
                (Some(t), Some(vi)) if vi >= 1 => Some(t * vi),
                _ => {
                    return Err(SeriesError::IllPosed(
                        "truncated outer with inner of order <= 0".into(),
                    ))
                }
            };
            return Ok(Self {
                var,
                coeffs: BTreeMap::new(),
                trunc,
            });
        }
        let lo = self.order().unwrap();
        let hi = self.max_exponent().unwrap();
        let vi = inner.val_bound();
        let positive = matches!(vi, Some(v) if v >= 1);
        if !positive && self.trunc.is_some() {
            return Err(SeriesError::IllPosed(
                "infinite outer series needs an inner series of positive order".into(),
            ));
        }
        if lo < 0 && inner.is_zero() {
            return Err(SeriesError::IllPosed(
                "negative power of a zero inner series".into(),
            ));
        }
        let cap = match (self.trunc, vi) {
            (Some(t), Some(v)) => Some(t * v),
            _ => None,
        };
        let clip = |s: Self| match cap {
            Some(c) => s.truncate(c),
            None => s,
        };
        let mut acc = match cap {
            Some(c) => Self::make(&var, vec![], c)?,
            None => Self::zero(&var),
        };
        if hi >= 0 {
            let mut p = Self::one(&var);
            for k in 0..=hi {
                if k > 0 {
                    p = clip(p.mul(inner)?);
                }
                if let Some(c) = self.coeffs.get(&k) {
                    acc = acc.add(&p.scale(c))?;
                }
            }
        }
        if lo < 0 {
            let iv = match (cap, inner.order()) {
                (Some(c), Some(v)) => inner.inv_to(c - lo * v - v)?,
                _ => inner.inv()?,
            };
            let mut p = Self::one(&var);
            for k in (lo..0).rev() {
                p = clip(p.mul(&iv)?);
                if let Some(c) = self.coeffs.get(&k) {
                    acc = acc.add(&p.scale(c))?;
                }
            }
        }
        Ok(clip(acc))
    }

    /// Compositional inverse of an order-one series, in variable `var`.
    pub fn reverse(&self, var: &str) -> Result<Self> {
        let target = match self.trunc {
            Some(t) => t,
            None => 1 + DEFAULT_WIDTH,
        };
        self.reverse_to(var, target)
    }

    /// Compositional inverse known below `target`, via Lagrange inversion:
    /// `[z^n] g = (1/n) [w^{n-1}] (w/h)^n`.
    pub fn reverse_to(&self, var: &str, target: i64) -> Result<Self> {
        if self.order() != Some(1) {
            return Err(SeriesError::Order {
                expected: 1,
                found: self.order(),
            });
        }
        let target = match self.trunc {
            Some(t) => target.min(t),
            None => target,
        };
        let width = target - 1;
        let phi = self.shift(-1).inv_to(width)?;
        let mut terms = Vec::new();
        let mut p = Self::one(&self.var);
        for n in 1..target {
            p = p.mul(&phi)?.truncate(width);
            let c = p.coeff(n - 1)? / q(n);
            terms.push((n, c));
        }
        Self::make(var, terms, target.max(1))
    }

    pub fn derive(&self) -> Self {
        Self {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k != 0)
                .map(|(k, c)| (k - 1, c * q(*k)))
                .collect(),
            trunc: self.trunc.map(|t| t - 1),
        }
    }

    /// Formal antiderivative with zero constant term; rejects a `w^{-1}` term.
    pub fn integrate(&self) -> Result<Self> {
        if self.coeffs.contains_key(&-1) {
            return Err(SeriesError::Precondition(
                "w^-1 has no formal antiderivative".into(),
            ));
        }
        Ok(Self {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k + 1, c / q(k + 1)))
                .collect(),
            trunc: self.trunc.map(|t| t + 1),
        })
    }

    pub fn exp_series(&self) -> Result<Self> {
        let target = self.trunc.unwrap_or(DEFAULT_WIDTH);
        self.exp_series_to(target)
    }

    /// `exp(a)` for `a` of positive order, via `n e_n = sum k a_k e_{n-k}`.
    pub fn exp_series_to(&self, target: i64) -> Result<Self> {
        if self.order().is_some_and(|v| v < 1) {
            return Err(SeriesError::Precondition(
                "exp needs a series of positive order".into(),
            ));
        }
        let target = min_opt(self.trunc, Some(target)).unwrap().max(1);
        let n = target as usize;
        let mut e: Vec<Q> = vec![Q::one()];
        for m in 1..n {
            let mut acc = Q::zero();
            for (k, c) in self.coeffs.range(1..=m as i64) {
                acc += c * q(*k) * &e[m - *k as usize];
            }
            e.push(acc / q(m as i64));
        }
        let terms = e
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k as i64, c))
            .collect();
        Self::make(&self.var, terms, target)
    }

    pub fn log_series(&self) -> Result<Self> {
        let target = self.trunc.unwrap_or(DEFAULT_WIDTH);
        self.log_series_to(target)
    }

    /// Formal logarithm of `1 + (positive order)`.
    pub fn log_series_to(&self, target: i64) -> Result<Self> {
        let tail = self.sub(&Self::one(&self.var))?;
        if tail.order().is_some_and(|v| v < 1) || self.trunc.is_some_and(|t| t < 1) {
            return Err(SeriesError::Precondition(
                "log needs a series 1 + O(w)".into(),
            ));
        }
        let target = min_opt(self.trunc, Some(target)).unwrap();
        let d = self
            .derive()
            .mul(&self.inv_to(target)?)?
            .truncate(target - 1);
        Ok(d.integrate()?.truncate(target))
    }

    /// `1 + q + ... + q^{N-1}` computed as `(1 - q^N) / (1 - q)`, known below `trunc`.
    pub fn geom_sum_finite(qs: &Self, n: u64, trunc: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::zero(&qs.var));
        }
        let one = Self::one(&qs.var);
        let den = one.sub(qs)?;
        if den.is_zero() && den.is_exact() {
            return Err(SeriesError::Precondition(
                "q = 1 has no geometric closed form".into(),
            ));
        }
        let num = one.sub(&qs.pow_int(n as i64)?)?;
        let nv = num.order().unwrap_or(trunc);
        let d_inv = den.inv_to(trunc - nv)?;
        Ok(num.mul(&d_inv)?.truncate(trunc))
    }

    /// Coefficientwise agreement on the common window.
    pub fn agrees_with(&self, o: &Self) -> bool {
        if self.var != o.var {
            return false;
        }
        let t = min_opt(self.trunc, o.trunc);
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        keys.into_iter()
            .filter(|k| t.is_none_or(|t| *k < t))
            .all(|k| self.coeffs.get(&k) == o.coeffs.get(&k))
    }

    /// Evaluates an exact Laurent polynomial at a rational point.
    pub fn eval_at(&self, x: &Q) -> Result<Q> {
        if !self.is_exact() {
            return Err(SeriesError::Precondition(
                "only exact series can be evaluated".into(),
            ));
        }
        if x.is_zero() && self.order().is_some_and(|v| v < 0) {
            return Err(SeriesError::IllPosed("negative power at zero".into()));
        }
        let mut acc = Q::zero();
        for (k, c) in &self.coeffs {
            let p = if *k >= 0 {
                num_traits::pow(x.clone(), *k as usize)
            } else {
                num_traits::pow(x.recip(), (-*k) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in &self.coeffs {
            parts.push(match *k {
                0 => format!("{c}"),
                1 => format!("{c}*{}", self.var),
                _ => format!("{c}*{}^{k}", self.var),
            });
        }
        if let Some(t) = self.trunc {
            parts.push(format!("O({}^{t})", self.var));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident) => {
        impl $tr<&LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;
            /// Panics when the variables differ.
            fn $m(self, rhs: &LaurentSeries) -> LaurentSeries {
                LaurentSeries::$m(self, rhs).expect("series variables must match")
            }
        }
    };
}
forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::neg(self)
    }
}

/// `(1 + w)^n w^{-k-1}` style helper: exact `(a + b w)^n`.
pub fn linear_pow(var: &str, a: &Q, b: &Q, n: u64) -> LaurentSeries {
    let terms = (0..=n)
        .map(|k| {
            let c = qi(crate::numeric::binom_int(n as i64, k as i64))
                * num_traits::pow(a.clone(), (n - k) as usize)
                * num_traits::pow(b.clone(), k as usize);
            (k as i64, c)
        })
        .collect();
    LaurentSeries::poly(var, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::qr;

    fn s(terms: &[(i64, i64)], trunc: i64) -> LaurentSeries {
        LaurentSeries::make("w", terms.iter().map(|(k, c)| (*k, q(*c))).collect(), trunc).unwrap()
    }

    fn p(terms: &[(i64, i64)]) -> LaurentSeries {
        LaurentSeries::poly("w", terms.iter().map(|(k, c)| (*k, q(*c))).collect())
    }

    #[test]
    fn make_and_window() {
        let a = s(&[(0, 1), (1, 1)], 10);
        assert_eq!(a.coeff(1).unwrap(), q(1));
        assert!(LaurentSeries::make("w", vec![(5, q(1))], 5).is_err());
        assert!(s(&[], 5).is_zero());
        let b = s(&[(0, 1), (1, 1)], 4);
        assert!(matches!(b.coeff(5), Err(SeriesError::OutOfWindow { .. })));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(
            &p(&[(0, 1), (1, 1)]) * &p(&[(0, 1), (1, -1)]),
            p(&[(0, 1), (2, -1)])
        );
        assert_eq!(
            &p(&[(-1, 1)]) * &p(&[(0, 1), (1, 1)]),
            p(&[(-1, 1), (0, 1)])
        );
        assert_eq!(&p(&[(0, 1), (1, 1)]) + &p(&[(0, -1), (1, 1)]), p(&[(1, 2)]));
        let x = LaurentSeries::zero("x");
        assert!(p(&[(0, 1)]).add(&x).is_err());
    }

    #[test]
    fn mul_window() {
        let a = s(&[(0, 1), (1, 1)], 5);
        let b = s(&[(2, 1)], 6);
        assert_eq!(a.mul(&b).unwrap().trunc(), Some(6));
        let c = p(&[(-1, 1)]);
        assert_eq!(a.mul(&c).unwrap().trunc(), Some(4));
    }

    #[test]
    fn inverses() {
        let g = p(&[(0, 1), (1, -1)]).inv().unwrap();
        for k in 0..DEFAULT_WIDTH {
            assert_eq!(g.coeff(k).unwrap(), q(1));
        }
        let a = p(&[(1, 1), (2, 1)]);
        let ai = a.inv().unwrap();
        assert_eq!(ai.order(), Some(-1));
        let prod = a.mul(&ai).unwrap();
        assert!(prod.agrees_with(&LaurentSeries::one("w")));
        assert_eq!(
            p(&[(0, 2)]).inv().unwrap(),
            LaurentSeries::constant("w", qr(1, 2))
        );
        assert!(LaurentSeries::zero("w").inv().is_err());
    }

    #[test]
    fn powers() {
        let a = p(&[(0, 1), (1, 1)]).pow_int(4).unwrap();
        assert_eq!(a, p(&[(0, 1), (1, 4), (2, 6), (3, 4), (4, 1)]));
        let b = p(&[(0, 1), (1, -1)]).pow_int(-2).unwrap();
        for k in 0..10 {
            assert_eq!(b.coeff(k).unwrap(), q(k + 1));
        }
        assert_eq!(p(&[(3, 7)]).pow_int(0).unwrap(), LaurentSeries::one("w"));
    }

    #[test]
    fn binom_pow_expansions() {
        let c = LaurentSeries::binom_pow(&q(-4), &qr(-1, 2), "w", 8);
        let expect = [1, 2, 6, 20, 70, 252, 924, 3432];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(c.coeff(k as i64).unwrap(), q(*e));
        }
        let h = LaurentSeries::binom_pow(&q(1), &qr(1, 2), "w", 4);
        assert_eq!(h.coeff(2).unwrap(), qr(-1, 8));
        assert_eq!(
            LaurentSeries::binom_pow(&q(1), &q(3), "w", 2),
            p(&[(0, 1), (1, 3), (2, 3), (3, 1)])
        );
    }

    #[test]
    fn residues() {
        assert_eq!(p(&[(-1, 1)]).res().unwrap(), q(1));
        let a = p(&[(0, 1), (1, 1)]).pow_int(4).unwrap().shift(-3);
        assert_eq!(a.res().unwrap(), q(6));
        assert_eq!(p(&[(0, 1), (1, 1)]).res().unwrap(), q(0));
    }

    #[test]
    fn compositions() {
        let outer = LaurentSeries::binom_pow(&q(1), &q(3), "z", 0);
        let x2 = LaurentSeries::poly("x", vec![(2, q(1))]);
        let inner = x2
            .mul(
                &LaurentSeries::poly("x", vec![(0, q(1)), (2, q(-1))])
                    .inv()
                    .unwrap(),
            )
            .unwrap();
        let got = outer.compose(&inner).unwrap();
        let want = LaurentSeries::binom_pow(&q(-1), &q(-3), "x", 40).with_var("x");
        let want = want.compose(&x2).unwrap();
        assert!(got.agrees_with(&want));
        assert!(got.trunc().unwrap() >= 30);

        let a = p(&[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(a.compose(&p(&[(1, 1)])).unwrap(), a);

        let geo = p(&[(0, 1), (1, -1)]).inv_to(6).unwrap();
        let got = geo.compose(&p(&[(1, 1), (2, 1)])).unwrap();
        let direct = p(&[(0, 1), (1, -1), (2, -1)]).inv_to(6).unwrap();
        assert!(got.agrees_with(&direct));
        assert_eq!(got.trunc(), Some(6));
        assert_eq!(got.coeff(2).unwrap(), q(2));

        assert!(geo.compose(&p(&[(0, 1), (1, 1)])).is_err());
        let v = p(&[(0, 1), (2, 1)])
            .compose(&LaurentSeries::constant("t", q(3)))
            .unwrap();
        assert_eq!(v, LaurentSeries::constant("t", q(10)));
    }

    #[test]
    fn reversion() {
        let h = p(&[(1, 1)])
            .mul(&p(&[(0, 1), (1, -1)]).inv_to(12).unwrap())
            .unwrap();
        let g = h.reverse("z").unwrap();
        let want = LaurentSeries::poly("z", vec![(1, q(1))])
            .mul(
                &LaurentSeries::poly("z", vec![(0, q(1)), (1, q(1))])
                    .inv()
                    .unwrap(),
            )
            .unwrap();
        assert!(g.agrees_with(&want));

        let g = p(&[(1, 1), (2, 1)]).reverse("z").unwrap();
        for (k, c) in [(1, 1), (2, -1), (3, 2), (4, -5), (5, 14)] {
            assert_eq!(g.coeff(k).unwrap(), q(c));
        }
        let back = p(&[(1, 1), (2, 1)]).compose(&g).unwrap();
        assert!(back.agrees_with(&LaurentSeries::poly("z", vec![(1, q(1))])));
        assert_eq!(p(&[(1, 1)]).reverse("z").unwrap().terms().count(), 1);
        assert!(p(&[(0, 1), (1, 1)]).reverse("z").is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[(-1, 1)]).derive(), p(&[(-2, -1)]));
        let a = p(&[(0, 1), (1, 1)]).pow_int(4).unwrap();
        let lhs = a.shift(-3).res().unwrap() * q(2);
        let rhs = a.derive().shift(-2).res().unwrap();
        assert_eq!(lhs, q(12));
        assert_eq!(rhs, q(12));
        assert!(p(&[(0, 5)]).derive().is_zero());
    }

    #[test]
    fn exp_and_log() {
        let e = p(&[(1, 1)]).exp_series_to(6).unwrap();
        let mut f = q(1);
        for k in 0..6 {
            if k > 0 {
                f *= q(k);
            }
            assert_eq!(e.coeff(k).unwrap(), f.recip());
        }
        let em1 = e.sub(&LaurentSeries::one("w")).unwrap();
        let sq = em1.mul(&em1).unwrap();
        assert_eq!(sq.order(), Some(2));
        assert_eq!(sq.coeff(2).unwrap(), q(1));
        let back = e.log_series().unwrap();
        assert!(back.agrees_with(&s(&[(1, 1)], 6)));
        assert!(p(&[(0, 1)]).exp_series().is_err());
        assert!(p(&[(0, 2)]).log_series().is_err());
    }

    #[test]
    fn geometric_sums() {
        let g = LaurentSeries::geom_sum_finite(&p(&[(1, 1)]), 3, 10).unwrap();
        assert!(g.agrees_with(&p(&[(0, 1), (1, 1), (2, 1)])));
        assert!(LaurentSeries::geom_sum_finite(&p(&[(1, 1)]), 0, 10)
            .unwrap()
            .is_zero());
        let qy = p(&[(-1, 1), (0, 1)]);
        let g = LaurentSeries::geom_sum_finite(&qy, 3, 5).unwrap();
        let direct = (&(&LaurentSeries::one("w") + &qy) + &qy.pow_int(2).unwrap()).truncate(5);
        assert!(g.agrees_with(&direct));
        assert!(LaurentSeries::geom_sum_finite(&p(&[(0, 1)]), 2, 5).is_err());
    }
}
