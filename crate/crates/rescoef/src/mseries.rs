//! Sparse multivariate truncated series and exact polynomials.
//!
//! Truncation is per variable: the coefficient at exponent vector `e` is known
//! iff `e[i] < trunc[i]` for every capped variable `i`. Each series also keeps
//! a per-variable lower bound `lo` valid for known and unknown terms alike.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{is_integer, q, Q};
use crate::series::LaurentSeries;

/// Default per-variable window for inverses and powers of exact inputs.
pub const DEFAULT_MV_WIDTH: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MSeriesError {
    #[error("coefficient at {e:?} lies outside the window {trunc:?}")]
    OutOfWindow {
        e: Vec<i64>,
        trunc: Vec<Option<i64>>,
    },
    #[error("exponent vector {0:?} has the wrong arity")]
    Arity(Vec<i64>),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("substitution is not defined: {0}")]
    IllPosed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, MSeriesError>;

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSeries {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Q>,
    trunc: Vec<Option<i64>>,
    lo: Vec<i64>,
}

impl MSeries {
    fn build(
        vars: Vec<String>,
        terms: BTreeMap<Vec<i64>, Q>,
        trunc: Vec<Option<i64>>,
        lo: Vec<i64>,
    ) -> Self {
        let mut s = Self {
            vars,
            terms,
            trunc,
            lo,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let trunc = &self.trunc;
        self.terms.retain(|e, c| {
            !c.is_zero() && e.iter().zip(trunc).all(|(x, t)| t.is_none_or(|t| *x < t))
        });
        if self.is_exact() {
            self.lo = self.known_min();
        }
    }

    fn known_min(&self) -> Vec<i64> {
        let n = self.vars.len();
        if self.terms.is_empty() {
            return vec![0; n];
        }
        (0..n)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap())
            .collect()
    }

    /// Truncated series; unknown terms are assumed to have exponents at least
    /// `min(0, least known exponent)` in each variable.
    pub fn make(vars: &[&str], terms: Vec<(Vec<i64>, Q)>, trunc: Vec<Option<i64>>) -> Result<Self> {
        let n = vars.len();
        if trunc.len() != n {
            return Err(MSeriesError::Arity(
                trunc.iter().map(|t| t.unwrap_or(-1)).collect(),
            ));
        }
        let mut map: BTreeMap<Vec<i64>, Q> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(MSeriesError::Arity(e));
            }
            if e.iter()
                .zip(&trunc)
                .any(|(x, t)| t.is_some_and(|t| *x >= t))
            {
                return Err(MSeriesError::OutOfWindow { e, trunc });
            }
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        let mut s = Self::build(
            vars.iter().map(|v| v.to_string()).collect(),
            map,
            trunc,
            vec![0; n],
        );
        if !s.is_exact() {
            s.lo = s.known_min().into_iter().map(|x| x.min(0)).collect();
        }
        Ok(s)
    }

    pub fn poly(vars: &[&str], terms: Vec<(Vec<i64>, Q)>) -> Result<Self> {
        Self::make(vars, terms, vec![None; vars.len()])
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![], c);
        Self::build(vec![], terms, vec![], vec![])
    }

    pub fn zero() -> Self {
        Self::constant(Q::zero())
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The series `name`.
    pub fn var(name: &str) -> Self {
        Self::monomial(&[name], &[1], Q::one())
    }

    pub fn monomial(vars: &[&str], e: &[i64], c: Q) -> Self {
        Self::poly(vars, vec![(e.to_vec(), c)]).expect("arity matches")
    }

    /// Affine form `c0 + sum ci * vi`.
    pub fn linear(c0: Q, parts: &[(&str, Q)]) -> Self {
        let vars: Vec<&str> = parts.iter().map(|(v, _)| *v).collect();
        let n = vars.len();
        let mut terms = vec![(vec![0; n], c0)];
        for (i, (_, c)) in parts.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            terms.push((e, c.clone()));
        }
        Self::poly(&vars, terms).expect("arity matches")
    }

    pub fn from_series(s: &LaurentSeries) -> Self {
        let terms: BTreeMap<Vec<i64>, Q> = s.terms().map(|(k, c)| (vec![k], c.clone())).collect();
        let lo = match s.trunc() {
            Some(t) => s.order().unwrap_or(t).min(t).min(0),
            None => s.order().unwrap_or(0),
        };
        Self::build(vec![s.var().to_string()], terms, vec![s.trunc()], vec![lo])
    }

    /// Univariate view; the series must have exactly one variable.
    pub fn to_series(&self) -> Result<LaurentSeries> {
        if self.vars.len() != 1 {
            return Err(MSeriesError::Precondition(
                "to_series needs exactly one variable".into(),
            ));
        }
        let terms = self.terms.iter().map(|(e, c)| (e[0], c.clone())).collect();
        Ok(match self.trunc[0] {
            Some(t) => LaurentSeries::make(&self.vars[0], terms, t).expect("terms inside window"),
            None => LaurentSeries::poly(&self.vars[0], terms),
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn trunc(&self) -> &[Option<i64>] {
        &self.trunc
    }

    pub fn lower_bounds(&self) -> &[i64] {
        &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.iter().all(|t| t.is_none())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Q)> {
        self.terms.iter()
    }

    fn index(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    /// Caps the listed variables (adding them if absent).
    pub fn with_trunc(&self, caps: &[(&str, i64)]) -> Self {
        let extra: Vec<String> = caps.iter().map(|(v, _)| v.to_string()).collect();
        let mut s = self.align(&union(&self.vars, &extra));
        for (v, t) in caps {
            let i = s.index(v).unwrap();
            s.trunc[i] = min_opt(s.trunc[i], Some(*t));
        }
        s.normalize();
        s
    }

    pub fn coeff(&self, e: &[i64]) -> Result<Q> {
        if e.len() != self.vars.len() {
            return Err(MSeriesError::Arity(e.to_vec()));
        }
        if e.iter()
            .zip(&self.trunc)
            .any(|(x, t)| t.is_some_and(|t| *x >= t))
        {
            return Err(MSeriesError::OutOfWindow {
                e: e.to_vec(),
                trunc: self.trunc.clone(),
            });
        }
        Ok(self.terms.get(e).cloned().unwrap_or_else(Q::zero))
    }

    /// Coefficient addressed by variable name; unnamed variables take exponent 0.
    pub fn coeff_named(&self, e: &[(&str, i64)]) -> Result<Q> {
        let mut v = vec![0; self.vars.len()];
        for (name, k) in e {
            match self.index(name) {
                Some(i) => v[i] = *k,
                None if *k == 0 => {}
                None => return Ok(Q::zero()),
            }
        }
        self.coeff(&v)
    }

    /// The constant term, which must lie in the window.
    pub fn constant_term(&self) -> Result<Q> {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Re-expresses the series over `vars`, a superset of its own variables.
    pub fn align(&self, vars: &[String]) -> Self {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|x| x == v)
                    .expect("superset of variables")
            })
            .collect();
        let n = vars.len();
        let mut trunc = vec![None; n];
        let mut lo = vec![0; n];
        for (i, &j) in map.iter().enumerate() {
            trunc[j] = self.trunc[i];
            lo[j] = self.lo[i];
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; n];
                for (i, &j) in map.iter().enumerate() {
                    f[j] = e[i];
                }
                (f, c.clone())
            })
            .collect();
        Self {
            vars: vars.to_vec(),
            terms,
            trunc,
            lo,
        }
    }

    fn unify(&self, o: &Self) -> (Self, Self) {
        let vars = union(&self.vars, &o.vars);
        (self.align(&vars), o.align(&vars))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.unify(o);
        let trunc: Vec<Option<i64>> = a
            .trunc
            .iter()
            .zip(&b.trunc)
            .map(|(x, y)| min_opt(*x, *y))
            .collect();
        let lo = a.lo.iter().zip(&b.lo).map(|(x, y)| *x.min(y)).collect();
        let mut terms = a.terms;
        for (e, c) in b.terms {
            *terms.entry(e).or_insert_with(Q::zero) += c;
        }
        Self::build(a.vars, terms, trunc, lo)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        Self::build(
            self.vars.clone(),
            terms,
            self.trunc.clone(),
            self.lo.clone(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.unify(o);
        let n = a.vars.len();
        let trunc: Vec<Option<i64>> = (0..n)
            .map(|i| {
                min_opt(
                    a.trunc[i].map(|t| t + b.lo[i]),
                    b.trunc[i].map(|t| t + a.lo[i]),
                )
            })
            .collect();
        let lo: Vec<i64> = (0..n).map(|i| a.lo[i] + b.lo[i]).collect();
        let mut terms: HashMap<Vec<i64>, Q> = HashMap::new();
        for (ea, ca) in &a.terms {
            'inner: for (eb, cb) in &b.terms {
                let mut e = Vec::with_capacity(n);
                for i in 0..n {
                    let x = ea[i] + eb[i];
                    if trunc[i].is_some_and(|t| x >= t) {
                        continue 'inner;
                    }
                    e.push(x);
                }
                *terms.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        Self::build(a.vars, terms.into_iter().collect(), trunc, lo)
    }

    pub fn pow_uint(&self, e: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse after factoring out the least monomial.
    pub fn mv_inv(&self) -> Result<Self> {
        self.mv_inv_to(&[])
    }

    /// Inverse with extra caps on selected variables.
    pub fn mv_inv_to(&self, caps: &[(&str, i64)]) -> Result<Self> {
        if self.is_zero() {
            return Err(MSeriesError::NotInvertible("zero series".into()));
        }
        let n = self.vars.len();
        let v = self.known_min();
        if v != self.lo {
            return Err(MSeriesError::NotInvertible(
                "least monomial is not certified by the window".into(),
            ));
        }
        let c = self.terms.get(&v).cloned().ok_or_else(|| {
            MSeriesError::NotInvertible("no dominant monomial after factoring".into())
        })?;
        let r: Vec<(Vec<i64>, Q)> = self
            .terms
            .iter()
            .filter(|(e, _)| **e != v)
            .map(|(e, x)| (e.iter().zip(&v).map(|(a, b)| a - b).collect(), x.clone()))
            .collect();
        let mut trunc: Vec<Option<i64>> = (0..n)
            .map(|i| self.trunc[i].map(|t| t - 2 * v[i]))
            .collect();
        for i in 0..n {
            let depends = r.iter().any(|(e, _)| e[i] != 0);
            if depends && trunc[i].is_none() {
                trunc[i] = Some(-v[i] + DEFAULT_MV_WIDTH);
            }
        }
        for (name, t) in caps {
            let i = self
                .index(name)
                .ok_or_else(|| MSeriesError::UnknownVar(name.to_string()))?;
            trunc[i] = min_opt(trunc[i], Some(*t));
        }
        let bounds: Vec<i64> = (0..n)
            .map(|i| trunc[i].map_or(1, |t| (t + v[i]).max(0)))
            .collect();
        let c_inv = c.recip();
        let mut b: HashMap<Vec<i64>, Q> = HashMap::new();
        for e in boxed(&bounds) {
            let val = if e.iter().all(|x| *x == 0) {
                c_inv.clone()
            } else {
                let mut acc = Q::zero();
                for (f, rf) in &r {
                    if f.iter().zip(&e).all(|(a, b)| a <= b) {
                        let d: Vec<i64> = e.iter().zip(f).map(|(a, b)| a - b).collect();
                        if let Some(bd) = b.get(&d) {
                            acc += rf * bd;
                        }
                    }
                }
                -acc * &c_inv
            };
            if !val.is_zero() {
                b.insert(e, val);
            }
        }
        let terms = b
            .into_iter()
            .map(|(e, x)| (e.iter().zip(&v).map(|(a, b)| a - b).collect(), x))
            .collect();
        let lo = v.iter().map(|x| -x).collect();
        Ok(Self::build(self.vars.clone(), terms, trunc, lo))
    }

    /// `self^e` for rational `e`; the series must be `1 + (nonnegative exponents)`.
    pub fn mv_pow_general(&self, e: &Q) -> Result<Self> {
        self.mv_pow_general_to(e, &[])
    }

    pub fn mv_pow_general_to(&self, e: &Q, caps: &[(&str, i64)]) -> Result<Self> {
        let n = self.vars.len();
        if self.coeff(&vec![0; n]).ok() != Some(Q::one()) {
            return Err(MSeriesError::Precondition("constant term must be 1".into()));
        }
        if self.lo.iter().any(|x| *x < 0) {
            return Err(MSeriesError::Precondition(
                "negative exponents in power base".into(),
            ));
        }
        if is_integer(e) && !e.is_negative() && caps.is_empty() {
            let k: u64 = e.to_integer().try_into().expect("small exponent");
            return Ok(self.pow_uint(k));
        }
        let mut trunc = self.trunc.clone();
        for i in 0..n {
            let depends = self.terms.keys().any(|f| f[i] != 0);
            if depends && trunc[i].is_none() {
                trunc[i] = Some(DEFAULT_MV_WIDTH);
            }
        }
        for (name, t) in caps {
            let i = self
                .index(name)
                .ok_or_else(|| MSeriesError::UnknownVar(name.to_string()))?;
            trunc[i] = min_opt(trunc[i], Some(*t));
        }
        let bounds: Vec<i64> = trunc.iter().map(|t| t.map_or(1, |t| t.max(0))).collect();
        let a: Vec<(Vec<i64>, i64, Q)> = self
            .terms
            .iter()
            .filter(|(f, _)| f.iter().any(|x| *x != 0))
            .map(|(f, c)| (f.clone(), f.iter().sum(), c.clone()))
            .collect();
        let mut b: HashMap<Vec<i64>, Q> = HashMap::new();
        for m in boxed(&bounds) {
            let deg: i64 = m.iter().sum();
            let val = if deg == 0 {
                Q::one()
            } else {
                let mut acc = Q::zero();
                for (f, fd, af) in &a {
                    if f.iter().zip(&m).all(|(x, y)| x <= y) {
                        let d: Vec<i64> = m.iter().zip(f).map(|(x, y)| x - y).collect();
                        if let Some(bd) = b.get(&d) {
                            acc += (e * q(*fd) - q(deg - fd)) * af * bd;
                        }
                    }
                }
                acc / q(deg)
            };
            if !val.is_zero() {
                b.insert(m, val);
            }
        }
        Ok(Self::build(
            self.vars.clone(),
            b.into_iter().collect(),
            trunc,
            vec![0; n],
        ))
    }

    /// Coefficient of the product of `v^{-1}` over `vars`, eliminating them in order.
    pub fn mv_res(&self, vars: &[&str]) -> Result<Self> {
        let mut cur = self.clone();
        for v in vars {
            cur = cur.slice(v, -1)?;
        }
        Ok(cur)
    }

    /// Iterated residue over every variable, returning a scalar.
    pub fn mv_res_all(&self) -> Result<Q> {
        let names: Vec<String> = self.vars.clone();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        self.mv_res(&refs)?.constant_term()
    }

    /// The coefficient of `var^k`, as a series in the remaining variables.
    pub fn slice(&self, var: &str, k: i64) -> Result<Self> {
        let i = match self.index(var) {
            Some(i) => i,
            None => {
                return Ok(if k == 0 {
                    self.clone()
                } else {
                    self.scale(&Q::zero())
                });
            }
        };
        if self.trunc[i].is_some_and(|t| k >= t) {
            let mut e = vec![0; self.vars.len()];
            e[i] = k;
            return Err(MSeriesError::OutOfWindow {
                e,
                trunc: self.trunc.clone(),
            });
        }
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut trunc = self.trunc.clone();
        trunc.remove(i);
        let mut lo = self.lo.clone();
        lo.remove(i);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == k)
            .map(|(e, c)| {
                let mut f = e.clone();
                f.remove(i);
                (f, c.clone())
            })
            .collect();
        Ok(Self::build(vars, terms, trunc, lo))
    }

    /// Substitutes a rational value for `var`.
    pub fn subst_value(&self, var: &str, value: &Q) -> Result<Self> {
        let i = match self.index(var) {
            Some(i) => i,
            None => return Ok(self.clone()),
        };
        if value.is_zero() {
            if self.lo[i] < 0 {
                return Err(MSeriesError::IllPosed(format!(
                    "{var} := 0 with negative powers"
                )));
            }
            return self.slice(var, 0);
        }
        if self.trunc[i].is_some() {
            return Err(MSeriesError::IllPosed(format!(
                "{var} := constant needs a polynomial in {var}"
            )));
        }
        let mut acc = self.slice(var, 0)?.scale(&Q::zero());
        let ks: std::collections::BTreeSet<i64> = self.terms.keys().map(|e| e[i]).collect();
        for k in ks {
            let p = if k >= 0 {
                num_traits::pow(value.clone(), k as usize)
            } else {
                num_traits::pow(value.recip(), (-k) as usize)
            };
            acc = acc.add(&self.slice(var, k)?.scale(&p));
        }
        Ok(acc)
    }

    /// Substitutes a series for `var` (Rule 3 per variable).
    pub fn mv_subst(&self, var: &str, value: &Self) -> Result<Self> {
        if value.index(var).is_some()
            && value
                .terms
                .keys()
                .any(|e| e[value.index(var).unwrap()] != 0)
        {
            return Err(MSeriesError::IllPosed(format!("value depends on {var}")));
        }
        let i = match self.index(var) {
            Some(i) => i,
            None => return Ok(self.clone()),
        };
        let value = match value.index(var) {
            Some(_) => value.slice(var, 0)?,
            None => value.clone(),
        };
        if (value.vars.is_empty() || value.terms.keys().all(|e| e.iter().all(|x| *x == 0)))
            && (value.is_exact() || value.vars.is_empty())
        {
            let c = value.terms.values().next().cloned().unwrap_or_else(Q::zero);
            return self.subst_value(var, &c);
        }
        let ks: std::collections::BTreeSet<i64> = self.terms.keys().map(|e| e[i]).collect();
        let rest_vars: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let out_vars = union(&rest_vars, &value.vars);
        let mut cap_extra: Vec<(String, i64)> = Vec::new();
        if let Some(t) = self.trunc[i] {
            // Unknown terms var^k with k >= t must vanish from the window.
            let mut best: Option<(String, i64)> = None;
            for (j, y) in value.vars.iter().enumerate() {
                if value.lo[j] >= 1 {
                    let base = self.index(y).map_or(0, |yi| self.lo[yi]);
                    let cap = t * value.lo[j] + base;
                    let cand = (y.clone(), cap);
                    best = Some(match best {
                        None => cand,
                        Some(b) => {
                            if cap > b.1 {
                                cand
                            } else {
                                b
                            }
                        }
                    });
                }
            }
            match best {
                Some(b) => cap_extra.push(b),
                None => {
                    return Err(MSeriesError::IllPosed(
                        "infinite series needs a substituted value of positive order".into(),
                    ))
                }
            }
            if self.lo[i] < 0 || ks.iter().any(|k| *k < 0) {
                return Err(MSeriesError::IllPosed(
                    "negative powers with a truncated substitution".into(),
                ));
            }
        }
        let cap_refs: Vec<(&str, i64)> = cap_extra.iter().map(|(v, t)| (v.as_str(), *t)).collect();
        let clip = |s: Self| {
            if cap_refs.is_empty() {
                s
            } else {
                s.with_trunc(&cap_refs)
            }
        };
        let mut acc = Self::zero().align(&out_vars);
        if let Some(lo_k) = ks.iter().next().copied() {
            let hi_k = *ks.iter().next_back().unwrap();
            let mut p = Self::one();
            for k in 0..=hi_k.max(0) {
                if k > 0 {
                    p = clip(p.mul(&value));
                }
                if ks.contains(&k) {
                    acc = acc.add(&self.slice(var, k)?.mul(&p));
                }
            }
            if lo_k < 0 {
                let vi = value.mv_inv()?;
                let mut p = Self::one();
                for k in (lo_k..0).rev() {
                    p = clip(p.mul(&vi));
                    if ks.contains(&k) {
                        acc = acc.add(&self.slice(var, k)?.mul(&p));
                    }
                }
            }
        }
        let acc = clip(acc.align(&union(&out_vars, &acc.vars)));
        let mut acc = acc;
        if self.trunc[i].is_some() {
            // The truncated tail may also reach into variables shared with the rest.
            let rest = self.slice(var, 0)?;
            let rest = rest.align(&union(&rest.vars, &acc.vars));
            for (j, v) in rest.vars.iter().enumerate() {
                if let Some(t) = rest.trunc[j] {
                    let ai = acc.index(v).unwrap();
                    acc.trunc[ai] = min_opt(acc.trunc[ai], Some(t));
                }
            }
            acc.normalize();
        }
        Ok(acc)
    }

    /// Coefficientwise agreement on the common window.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let (a, b) = self.unify(o);
        let trunc: Vec<Option<i64>> = a
            .trunc
            .iter()
            .zip(&b.trunc)
            .map(|(x, y)| min_opt(*x, *y))
            .collect();
        let inside = |e: &Vec<i64>| e.iter().zip(&trunc).all(|(x, t)| t.is_none_or(|t| *x < t));
        a.terms
            .keys()
            .chain(b.terms.keys())
            .filter(|e| inside(e))
            .all(|e| a.terms.get(e) == b.terms.get(e))
    }
}

fn union(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

/// All vectors `0 <= e < bounds` in lexicographic order.
fn boxed(bounds: &[i64]) -> Vec<Vec<i64>> {
    if bounds.iter().any(|b| *b <= 0) {
        return vec![];
    }
    let mut out = Vec::new();
    let mut e = vec![0; bounds.len()];
    loop {
        out.push(e.clone());
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
        }
    }
}

impl fmt::Display for MSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut mono = Vec::new();
            for (v, k) in self.vars.iter().zip(e) {
                match *k {
                    0 => {}
                    1 => mono.push(v.clone()),
                    _ => mono.push(format!("{v}^{k}")),
                }
            }
            if mono.is_empty() {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("{c}*{}", mono.join("*")));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        let caps: Vec<String> = self
            .vars
            .iter()
            .zip(&self.trunc)
            .filter_map(|(v, t)| t.map(|t| format!("{v}^{t}")))
            .collect();
        if !caps.is_empty() {
            parts.push(format!("O({})", caps.join(",")));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact polynomial with nonnegative exponents.
#[derive(Clone, Debug)]
pub struct MPoly {
    inner: MSeries,
}

impl MPoly {
    pub fn new(vars: &[&str], terms: Vec<(Vec<i64>, Q)>) -> Result<Self> {
        if terms.iter().any(|(e, _)| e.iter().any(|x| *x < 0)) {
            return Err(MSeriesError::Precondition(
                "polynomial exponents must be nonnegative".into(),
            ));
        }
        Ok(Self {
            inner: MSeries::poly(vars, terms)?,
        })
    }

    pub fn constant(c: Q) -> Self {
        Self {
            inner: MSeries::constant(c),
        }
    }

    pub fn var(name: &str) -> Self {
        Self {
            inner: MSeries::var(name),
        }
    }

    pub fn from_mseries(s: MSeries) -> Result<Self> {
        if !s.is_exact() || s.lo.iter().any(|x| *x < 0) {
            return Err(MSeriesError::Precondition("not an exact polynomial".into()));
        }
        Ok(Self { inner: s })
    }

    pub fn as_mseries(&self) -> &MSeries {
        &self.inner
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            inner: self.inner.add(&o.inner),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            inner: self.inner.sub(&o.inner),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            inner: self.inner.mul(&o.inner),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            inner: self.inner.scale(c),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            inner: self.inner.pow_uint(e),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
}

impl PartialEq for MPoly {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// Decides `num_lhs/den_lhs == num_rhs/den_rhs` by cross-multiplication.
pub fn ratfun_equal(
    num_lhs: &MPoly,
    den_lhs: &MPoly,
    num_rhs: &MPoly,
    den_rhs: &MPoly,
) -> Result<bool> {
    if den_lhs.is_zero() || den_rhs.is_zero() {
        return Err(MSeriesError::Precondition("zero denominator".into()));
    }
    Ok(num_lhs.mul(den_rhs) == num_rhs.mul(den_lhs))
}
