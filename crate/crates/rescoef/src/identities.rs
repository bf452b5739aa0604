//! Registry of named identities, exact verification and certificates.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::combinum;
use crate::mseries::{ratfun_equal, MPoly, MSeries};
use crate::numeric::{
    binom_general, binom_int, necklace_rank, q, q_to_string, qi, qr, ParamBinding, Q,
};
use crate::oracle::{self, LevsVariant, Parity};
use crate::series::LaurentSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownId(String),
    #[error("identity `{id}` has no parameter `{name}`")]
    UnknownParam { id: String, name: String },
    #[error("binding {binding} is outside the domain of `{id}`")]
    Domain { id: String, binding: String },
    #[error("evaluation of `{id}` at {binding} failed: {reason}")]
    Eval {
        id: String,
        binding: String,
        reason: String,
    },
    #[error("thread pool: {0}")]
    Pool(String),
}

pub type Result<T> = std::result::Result<T, IdentityError>;

type Eval = fn(&ParamBinding) -> std::result::Result<(Q, Q), String>;
type Admit = fn(&ParamBinding) -> bool;

#[derive(Clone, Debug)]
pub struct Param {
    pub name: &'static str,
    pub domain: &'static str,
    pub default_range: (i64, i64),
}

/// A named identity `lhs = rhs` over a parameter domain.
#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    pub summary: &'static str,
    /// Verbatim quote of the formula being checked.
    pub anchor: &'static str,
    pub params: Vec<Param>,
    /// The entry documents a misprint; it is expected to fail.
    pub expected_failure: bool,
    admit: Admit,
    eval: Eval,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity").field("id", &self.id).finish()
    }
}

impl Identity {
    pub fn admits(&self, b: &ParamBinding) -> bool {
        self.params.iter().all(|p| b.contains(p.name)) && (self.admit)(b)
    }

    pub fn evaluate(&self, b: &ParamBinding) -> Result<(Q, Q)> {
        if !self.admits(b) {
            return Err(IdentityError::Domain {
                id: self.id.into(),
                binding: b.to_string(),
            });
        }
        (self.eval)(b).map_err(|reason| IdentityError::Eval {
            id: self.id.into(),
            binding: b.to_string(),
            reason,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub binding: ParamBinding,
    pub lhs: Q,
    pub rhs: Q,
    pub equal: bool,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub binding: ParamBinding,
    pub lhs: Q,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub identity: String,
    pub params_swept: BTreeMap<String, String>,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub expected_failure: bool,
    pub engine_version: String,
}

impl Certificate {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// PASS for ordinary entries; at least one failure for misprint entries.
    pub fn expectation_met(&self) -> bool {
        if self.expected_failure {
            !self.pass()
        } else {
            self.pass()
        }
    }

    fn body(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| {
                let binding: BTreeMap<String, String> = f
                    .binding
                    .iter()
                    .map(|(k, v)| (k.clone(), q_to_string(v)))
                    .collect();
                json!({"binding": binding, "lhs": q_to_string(&f.lhs), "rhs": q_to_string(&f.rhs)})
            })
            .collect();
        json!({
            "identity": self.identity,
            "params_swept": self.params_swept,
            "cases": self.cases,
            "failures": failures,
            "pass": self.pass(),
            "expected_failure": self.expected_failure,
            "engine_version": self.engine_version,
        })
    }

    /// Hex sha256 of the canonical body.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&self.body()).expect("serializable");
        hex::encode(Sha256::digest(bytes))
    }

    /// Canonical JSON: sorted keys, no whitespace, digest included.
    pub fn to_json(&self) -> String {
        let mut v = self.body();
        v["digest"] = Value::String(self.digest());
        serde_json::to_string(&v).expect("serializable")
    }
}

fn p(name: &'static str, domain: &'static str, lo: i64, hi: i64) -> Param {
    Param {
        name,
        domain,
        default_range: (lo, hi),
    }
}

fn get(b: &ParamBinding, name: &str) -> std::result::Result<i64, String> {
    b.int(name).map_err(|e| e.to_string())
}

fn u(b: &ParamBinding, name: &str) -> std::result::Result<u64, String> {
    let v = get(b, name)?;
    u64::try_from(v).map_err(|_| format!("{name} must be nonnegative"))
}

fn ints(b: &ParamBinding, names: &[&str]) -> Option<Vec<i64>> {
    names.iter().map(|n| b.int(n).ok()).collect()
}

fn all_at_least(b: &ParamBinding, names: &[&str], lo: i64) -> bool {
    ints(b, names).is_some_and(|v| v.iter().all(|x| *x >= lo))
}

fn bi(x: num_bigint::BigInt) -> Q {
    qi(x)
}

/// Rational triples with positive entries summing to less than one.
pub fn alpha_triples() -> Vec<[Q; 3]> {
    let raw: [(i64, i64, i64, i64, i64, i64); 28] = [
        (1, 4, 1, 4, 1, 4),
        (1, 2, 1, 4, 1, 8),
        (1, 10, 1, 3, 1, 5),
        (1, 3, 1, 3, 1, 4),
        (1, 5, 1, 5, 1, 5),
        (1, 7, 2, 7, 3, 7),
        (1, 2, 1, 3, 1, 7),
        (1, 100, 1, 100, 1, 100),
        (9, 10, 1, 20, 1, 40),
        (1, 20, 9, 10, 1, 40),
        (1, 40, 1, 20, 9, 10),
        (1, 3, 1, 4, 1, 5),
        (2, 5, 1, 5, 1, 10),
        (1, 6, 1, 6, 1, 6),
        (1, 8, 3, 8, 1, 4),
        (3, 10, 3, 10, 3, 10),
        (1, 9, 2, 9, 1, 3),
        (5, 11, 3, 11, 2, 11),
        (1, 2, 1, 5, 1, 4),
        (1, 12, 1, 6, 1, 4),
        (7, 20, 1, 4, 3, 10),
        (99, 200, 99, 200, 1, 200),
        (1, 4, 1, 2, 1, 8),
        (1, 8, 1, 4, 1, 2),
        (2, 9, 4, 9, 1, 9),
        (1, 13, 5, 13, 6, 13),
        (3, 7, 1, 7, 2, 7),
        (1, 1000, 1, 2, 1, 3),
    ];
    raw.iter()
        .map(|&(a, b, c, d, e, f)| [qr(a, b), qr(c, d), qr(e, f)])
        .collect()
}

/// Rational vectors with entries summing to one, of lengths one to four.
pub fn unit_sum_vectors() -> Vec<Vec<Q>> {
    vec![
        vec![q(1)],
        vec![qr(1, 3), qr(2, 3)],
        vec![qr(3, 4), qr(1, 4)],
        vec![qr(-1, 2), qr(3, 2)],
        vec![q(2), q(-1)],
        vec![qr(1, 3), qr(1, 2), qr(1, 6)],
        vec![qr(2, 5), qr(2, 5), qr(1, 5)],
        vec![qr(1, 7), qr(-2, 7), qr(8, 7)],
        vec![qr(1, 4), qr(1, 4), qr(1, 4), qr(1, 4)],
        vec![qr(1, 10), qr(1, 5), qr(3, 10), qr(2, 5)],
        vec![qr(1, 2), qr(-1, 3), qr(1, 2), qr(1, 3)],
        vec![qr(5, 6), qr(1, 12), qr(1, 24), qr(1, 24)],
    ]
}

fn small_unit_vectors() -> Vec<Vec<Q>> {
    unit_sum_vectors()
        .into_iter()
        .filter(|z| z.len() <= 3)
        .collect()
}

const KERNEL_ALPHAS: [(i64, i64); 4] = [(0, 1), (1, 1), (2, 1), (3, 2)];
const BETAS: [(i64, i64); 4] = [(2, 1), (3, 1), (-1, 1), (1, 2)];

fn kernel_alpha(i: i64) -> Q {
    let (a, b) = KERNEL_ALPHAS[i as usize];
    qr(a, b)
}

/// Values of `gamma_i` swept by the alternating-sum identities.
pub fn gamma_choices() -> [Q; 4] {
    [q(0), qr(1, 2), q(1), q(2)]
}

/// Vectors `alpha` of length `d+1`, entries at most 4, summing to `2s+1`.
pub fn kk_alphas(d: u64, s: u64) -> Vec<Vec<u64>> {
    oracle::weak_compositions(2 * s + 1, (d + 1) as usize)
        .into_iter()
        .filter(|a| a.iter().all(|x| *x <= 4))
        .collect()
}

fn kk_gamma(d: u64, g: u64) -> Vec<Q> {
    let ch = gamma_choices();
    (0..=d)
        .map(|i| ch[((g >> (2 * i)) & 3) as usize].clone())
        .collect()
}

fn s_vec(b: &ParamBinding, n: usize) -> std::result::Result<Vec<u64>, String> {
    ["s1", "s2", "s3", "s4"][..n]
        .iter()
        .map(|k| u(b, k))
        .collect()
}

/// `[t^s]` of `(1 - sum z_i t_i)^{-alpha} prod (1 - t_i)^{-1}` by series expansion.
pub fn kernel_coeff_series(z: &[Q], s: &[u64], alpha: &Q) -> std::result::Result<Q, String> {
    let names: Vec<String> = (1..=z.len()).map(|i| format!("t{i}")).collect();
    let caps: Vec<(&str, i64)> = names
        .iter()
        .zip(s)
        .map(|(n, k)| (n.as_str(), *k as i64 + 1))
        .collect();
    let lin: Vec<(&str, Q)> = names
        .iter()
        .zip(z)
        .map(|(n, zi)| (n.as_str(), -zi.clone()))
        .collect();
    let base = MSeries::linear(q(1), &lin).with_trunc(&caps);
    let mut acc = base
        .mv_pow_general_to(&-alpha.clone(), &caps)
        .map_err(|e| e.to_string())?;
    for (n, cap) in &caps {
        let geo = MSeries::linear(q(1), &[(n, q(-1))]).with_trunc(&[(n, *cap)]);
        acc = acc.mul(&geo.mv_inv().map_err(|e| e.to_string())?);
    }
    let idx: Vec<(&str, i64)> = names
        .iter()
        .zip(s)
        .map(|(n, k)| (n.as_str(), *k as i64))
        .collect();
    acc.coeff_named(&idx).map_err(|e| e.to_string())
}

fn t2_residue(n: i64) -> Q {
    let mut acc = Q::zero();
    for i in 2..=n {
        for j in i..n {
            let f = LaurentSeries::binom_pow(&q(1), &q(n + j - i), "u", 0)
                .mul(&LaurentSeries::poly("u", vec![(0, q(1)), (1, q(-1))]))
                .expect("same variable")
                .shift(-(j + 2));
            acc += bi(binom_int(i - 1 + n - j, i - 1)) * f.res().expect("exact");
        }
    }
    acc
}

/// Double residue form of `T3`, expanding `1/(y-u)` as `sum u^k y^{-k-1}`.
pub fn t3_residue(n: i64) -> std::result::Result<Q, String> {
    let mut acc = Q::zero();
    for i in 2..=n {
        for j in i..=n {
            let cap = j - i + 2;
            let kernel_terms: Vec<(Vec<i64>, Q)> =
                (0..cap).map(|k| (vec![-k - 1, k], q(1))).collect();
            let kernel = MSeries::make(&["y", "u"], kernel_terms, vec![None, Some(cap)])
                .map_err(|e| e.to_string())?;
            let py = MSeries::linear(q(1), &[("y", q(1))]).pow_uint((n - j + i - 1) as u64);
            let pu = MSeries::linear(q(1), &[("u", q(1))]).pow_uint((2 * j - 2 * i) as u64);
            let quartic = MSeries::poly(&["u"], vec![(vec![0], q(1)), (vec![4], q(-1))])
                .map_err(|e| e.to_string())?;
            let mono = MSeries::monomial(&["y", "u"], &[-i, -(j - i + 2)], q(1));
            let f = py.mul(&pu).mul(&quartic).mul(&mono).mul(&kernel);
            let r = f
                .mv_res(&["u", "y"])
                .and_then(|x| x.constant_term())
                .map_err(|e| e.to_string())?;
            acc += bi(binom_int(i - 1 + n - j, n - j)) * r;
        }
    }
    Ok(acc)
}

/// `res_t (1-t)^{-1} (1+t)^{2s+1} t^{-s-1}`.
pub fn kk16_j(s: i64) -> Q {
    let a = LaurentSeries::binom_pow(&q(-1), &q(-1), "t", s + 1);
    let b = LaurentSeries::binom_pow(&q(1), &q(2 * s + 1), "t", 0);
    a.mul(&b)
        .expect("same variable")
        .shift(-s - 1)
        .res()
        .expect("window")
}

/// `res_t (1-t)^{k-1} (1+t)^{2s-k+1} t^{-s-1}` for `1 <= k <= 2s`.
pub fn kk17_j(s: i64, k: i64) -> Q {
    let a = LaurentSeries::binom_pow(&q(-1), &q(k - 1), "t", 0);
    let b = LaurentSeries::binom_pow(&q(1), &q(2 * s - k + 1), "t", 0);
    a.mul(&b)
        .expect("same variable")
        .shift(-s - 1)
        .res()
        .expect("exact")
}

/// Result of fitting the normalized `t`-series to `1 + sum h_k x^{2k}`.
#[derive(Clone, Debug)]
pub struct HyperbolicFit {
    pub h: Vec<Q>,
    pub residual: Vec<Q>,
}

impl HyperbolicFit {
    pub fn residual_norm(&self) -> Q {
        self.residual.iter().map(|r| r * r).sum()
    }
}

/// `res_w w^{-alpha-1} (e^{-w} - t e^w)^{-gamma-1}` divided by
/// `C(alpha+gamma, alpha) (1-t)^{-gamma-alpha-1} (1+t)^alpha`, fitted against
/// even powers of `x = (1-t)/(1+t)` up to `t^{order-1}`.
pub fn kk14_fit(alpha: u64, gamma: &Q, order: i64) -> std::result::Result<HyperbolicFit, String> {
    let err = |e: crate::mseries::MSeriesError| e.to_string();
    let wcap = alpha as i64 + 1;
    let caps = [("w", wcap), ("t", order)];
    let mut f_terms = Vec::new();
    for k in 0..wcap {
        let inv_fact = qr(1, 1) / bi(crate::numeric::factorial(k).expect("nonnegative"));
        let sign = if k % 2 == 0 { q(1) } else { q(-1) };
        f_terms.push((vec![k, 0], sign * &inv_fact));
        f_terms.push((vec![k, 1], -inv_fact));
    }
    let f = MSeries::make(&["w", "t"], f_terms, vec![Some(wcap), None]).map_err(err)?;
    let one_minus_t = MSeries::linear(q(1), &[("t", q(-1))]);
    let r = f.sub(&one_minus_t).mul(
        &one_minus_t
            .with_trunc(&[("t", order)])
            .mv_inv()
            .map_err(err)?,
    );
    let unit = MSeries::one().add(&r).with_trunc(&caps);
    let powered = unit
        .mv_pow_general_to(&(-gamma - Q::one()), &caps)
        .map_err(err)?;
    let slice = powered.slice("w", alpha as i64).map_err(err)?;
    let slice = if slice.vars().is_empty() {
        LaurentSeries::make("t", vec![(0, slice.constant_term().map_err(err)?)], order)
            .map_err(|e| e.to_string())?
    } else {
        slice.to_series().map_err(err)?
    };
    let a = alpha as i64;
    let norm = LaurentSeries::binom_pow(&q(-1), &q(a), "t", 0)
        .mul(&LaurentSeries::binom_pow(&q(1), &q(-a), "t", order))
        .map_err(|e| e.to_string())?
        .scale(&(Q::one() / binom_general(&(q(a) + gamma), alpha)));
    let d = slice.mul(&norm).map_err(|e| e.to_string())?;
    let x = LaurentSeries::binom_pow(&q(-1), &q(1), "t", 0)
        .mul(&LaurentSeries::binom_pow(&q(1), &q(-1), "t", order))
        .map_err(|e| e.to_string())?;
    let kmax = (alpha / 2) as usize;
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for k in 1..=kmax {
        let xk = x.pow_int(2 * k as i64).map_err(|e| e.to_string())?;
        cols.push((0..order).map(|i| xk.coeff(i).expect("window")).collect());
    }
    let target: Vec<Q> = (0..order)
        .map(|i| d.coeff(i).expect("window") - if i == 0 { Q::one() } else { Q::zero() })
        .collect();
    let h = solve_columns(&cols, &target);
    let residual = (0..order as usize)
        .map(|i| {
            let fit: Q = cols.iter().zip(&h).map(|(c, hk)| &c[i] * hk).sum();
            &target[i] - fit
        })
        .collect();
    Ok(HyperbolicFit { h, residual })
}

/// Exact solution of `sum_k h_k cols[k] = target` from a maximal set of
/// independent rows; leftover freedom is set to zero.
fn solve_columns(cols: &[Vec<Q>], target: &[Q]) -> Vec<Q> {
    let k = cols.len();
    if k == 0 {
        return vec![];
    }
    let mut rows: Vec<Vec<Q>> = (0..target.len())
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..rows.len()).find(|r| !rows[*r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pr);
        let pv = rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x /= &pv;
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let src = rows[row].clone();
                for (x, y) in rows[r].iter_mut().zip(&src) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let mut h = vec![Q::zero(); k];
    for (r, c) in pivots {
        h[c] = rows[r][k].clone();
    }
    h
}

macro_rules! entry {
    ($id:expr, $summary:expr, $anchor:expr, [$($param:expr),* $(,)?], $admit:expr, $eval:expr) => {
        Identity {
            id: $id,
            summary: $summary,
            anchor: $anchor,
            params: vec![$($param),*],
            expected_failure: false,
            admit: $admit,
            eval: $eval,
        }
    };
}

fn expected_failure(mut i: Identity) -> Identity {
    i.expected_failure = true;
    i
}

fn pair(l: Q, r: Q) -> std::result::Result<(Q, Q), String> {
    Ok((l, r))
}

/// The full built-in registry.
pub fn registry_list() -> Vec<Identity> {
    let n1 = |lo: i64, hi: i64| p("n", "integer n", lo, hi);
    vec![
        entry!(
            "th3.omega",
            "staircase pair count equals (2n-1) C(2n-2, n-1)",
            "(2n-1)\\binom{2n-2 }{n-1}",
            [n1(1, 6)],
            |b| all_at_least(b, &["n"], 1),
            |b| pair(bi(oracle::enum_staircase_pairs(u(b, "n")?, false)), bi(oracle::omega_closed(u(b, "n")?)))
        ),
        entry!(
            "a73.omega_plus",
            "strictly dominated staircase count against the closed form",
            "=2^{2n-1}+\\frac{2(2n-3)!}{(n-2)!(n+2)!}(n^{4}-2n^{3}-27n^{2}+20n-4)",
            [n1(2, 7)],
            |b| all_at_least(b, &["n"], 2),
            |b| pair(bi(oracle::enum_staircase_pairs(u(b, "n")?, true)), oracle::a73_first(u(b, "n")?))
        ),
        entry!(
            "a73.forms",
            "the two closed forms for the dominated count agree",
            "\\Omega^{+}(n)=2^{2n-1}+(n-1)\\binom{2n-2}{n-1}-\\frac{4}{n}\\binom{2n}{n-2}-\\binom{2n}{n}=",
            [n1(2, 20)],
            |b| all_at_least(b, &["n"], 2),
            |b| pair(oracle::a73_first(u(b, "n")?), oracle::a73_second(u(b, "n")?))
        ),
        entry!(
            "a73.decomposition",
            "T1 + T2 + T3 by direct summation equals the closed form",
            "Let $\\Omega^{+}(n)=T_{1}+T_{2}+T_{3},$ where",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| {
                let (t1, t2, t3) = oracle::eval_sixfold_terms(u(b, "n")?);
                pair(t1 + t2 + t3, oracle::a73_first(u(b, "n")?))
            }
        ),
        entry!(
            "th1.N",
            "triple sum with integer parts equals T(n,2s) + T(n/2,s)",
            "N(n,s) = T(n,2s) + T(\\left\\lfloor \\frac{n}{2} \\right\\rfloor,s),",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(
                oracle::eval_levs_sum(u(b, "n")?, u(b, "s")?, LevsVariant::Levs2),
                oracle::levs2_closed(u(b, "n")?, u(b, "s")?)
            )
        ),
        entry!(
            "th2.N",
            "double sum with powers of two equals S(n,s) + S(n/2,s)",
            "N(n,s) = S(n,s) + S\\left({\\left\\lfloor \\frac{n}{2} \\right\\rfloor,\\,s}\\right),",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(
                oracle::eval_levs_sum(u(b, "n")?, u(b, "s")?, LevsVariant::Levs1),
                oracle::levs1_closed(u(b, "n")?, u(b, "s")?)
            )
        ),
        entry!(
            "lemma1.s1",
            "primed binomial sum",
            "S_{1}(n, s) =-1+\\binom{s+[\\frac{n}{2}]}{s}.",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(oracle::sum_s1(u(b, "n")?, u(b, "s")?), oracle::s1_closed(u(b, "n")?, u(b, "s")?))
        ),
        entry!(
            "floor.split",
            "sum of integer parts splits into half products minus all-even compositions",
            "\\frac{1}{2}\\sum_{n\\in \\Omega_{q}(m)}\\prod_{j=1}^{q}(n_{j}+1)-\\frac{1}{2}|\\Omega_{q}^{\\prime \\prime}(m)|,",
            [p("m", "integer m >= 1", 1, 14), p("q", "integer 1 <= q <= m", 1, 6)],
            |b| ints(b, &["m", "q"]).is_some_and(|v| v[1] >= 1 && v[1] <= v[0]),
            |b| {
                let (m, q_) = (u(b, "m")?, u(b, "q")?);
                let all = oracle::enum_compositions(m, q_, Parity::All);
                let floors: Q = all.iter().map(|c| bi(crate::numeric::floor_q(&(bi(c.shifted_product()) / q(2))))).sum();
                let half: Q = all.iter().map(|c| bi(c.shifted_product())).sum::<Q>() / q(2);
                let even = q(oracle::enum_compositions(m, q_, Parity::AllEven).len() as i64);
                pair(floors, half - even / q(2))
            }
        ),
        entry!(
            "lem5.s4",
            "half sum of shifted products",
            "S_{4}(n, s)=-\\frac{1}{2}+\\frac{1}{2}\\binom{2s+n}{n}.",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(oracle::sum_s4(u(b, "n")?, u(b, "s")?), oracle::s4_closed(u(b, "n")?, u(b, "s")?))
        ),
        entry!(
            "s5.corrected",
            "all-even composition sum, closed form as derived in the proof",
            "S_{5}(n,s)=\\frac{1}{2}-\\frac{1}{2}\\binom{s+[\\frac{n}{2}]}{s}.",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(oracle::sum_s5(u(b, "n")?, u(b, "s")?), oracle::s5_closed(u(b, "n")?, u(b, "s")?))
        ),
        expected_failure(entry!(
            "s5.printed_414a",
            "all-even composition sum against the closed form as printed (misprint)",
            "S_{5}(n,s)=\\frac{1}{2}-\\frac{1}{2}\\binom{2s+[n/2]}{2s}.",
            [n1(2, 2), p("s", "integer s >= 1", 1, 1)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(oracle::sum_s5(u(b, "n")?, u(b, "s")?), oracle::s5_printed(u(b, "n")?, u(b, "s")?))
        )),
        entry!(
            "ssum6.s6",
            "binomial sum with powers of two equals S(n,s)",
            "S_{6}(n,s)=S(n,s),",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(oracle::sum_s6(u(b, "n")?, u(b, "s")?), oracle::s_closed(u(b, "n")?, u(b, "s")?))
        ),
        entry!(
            "ssum7.s7",
            "primed binomial sum with powers of two equals S(n/2,s)",
            "S_{7}(n,s)=S\\left([\\frac{n}{2}],s\\right).",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(oracle::sum_s7(u(b, "n")?, u(b, "s")?), oracle::s_closed(u(b, "n")? / 2, u(b, "s")?))
        ),
        entry!(
            "corollary.s6s7",
            "combined identity for the two binomial sums",
            "=-1+\\sum_{q=0}^{s}2^{q-1}\\binom{s}{q}\\left( \\binom{n}{q}+\\binom{[\\frac{n}{2}]}{q}\\right).",
            [n1(1, 10), p("s", "integer s >= 1", 1, 6)],
            |b| all_at_least(b, &["n", "s"], 1),
            |b| pair(oracle::corollary_lhs(u(b, "n")?, u(b, "s")?), oracle::corollary_rhs(u(b, "n")?, u(b, "s")?))
        ),
        entry!(
            "lem2.t1",
            "first part of the dominated count",
            "i-1}}{=}\\text{ }\\left( n-1\\right) {\\binom{2n-2}{n-1}}.",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| pair(oracle::sum_t1(u(b, "n")?), oracle::t1_closed(u(b, "n")?))
        ),
        entry!(
            "lem3.s1",
            "telescoping binomial difference",
            "\\binom{2n-1}{n+2}-\\binom{2n-1}{n+1}.",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| pair(oracle::sum_s1_sec3(u(b, "n")?), oracle::s1_sec3_closed(u(b, "n")?))
        ),
        entry!(
            "lem4.s2",
            "double sum of ballot differences",
            "=-(n-1) -\\binom{2n}{n}+2\\binom{2n}{n+1}.",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| pair(oracle::sum_s2_sec3(u(b, "n")?), oracle::s2_sec3_closed(u(b, "n")?))
        ),
        entry!(
            "lem5.t2",
            "second part of the dominated count",
            "=\\binom{2n-1}{n+2}-\\binom{2n-1}{n+1}-(n-1) - \\binom{2n}{n}+2\\binom{2n}{n+1}.",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| pair(oracle::sum_t2(u(b, "n")?), oracle::t2_closed(u(b, "n")?))
        ),
        entry!(
            "t2.residue",
            "residue form of the second part, sign flipped, equals its binomial-difference form",
            "\\mbox{\\bf res}_{u}\\left\\{\\frac{(1+u)^{n+j-i}\\cdot(1-u)}{u^{j+2}}\\right\\},",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| pair(-t2_residue(get(b, "n")?), oracle::sum_t2(u(b, "n")?))
        ),
        entry!(
            "lem13.t3",
            "third part of the dominated count, inner range running to j-i+1",
            "T_{3}=2^{2n-1}+(n-1)-\\frac{2}{n}\\binom{2n}{n-2}-\\binom{2n}{n+1}",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| pair(oracle::sum_t3(u(b, "n")?), oracle::t3_closed(u(b, "n")?))
        ),
        entry!(
            "lem7.t3_residue",
            "double residue form of the third part",
            "\\mbox{\\bf res}_{yu}\\frac{(1+y)^{n-j+i-1}(1+u)^{2j-2i}(1-u^{4})}{y^{i}u^{j-i+2}(y-u)}",
            [n1(3, 10)],
            |b| all_at_least(b, &["n"], 3),
            |b| pair(t3_residue(get(b, "n")?)?, oracle::t3_closed(u(b, "n")?))
        ),
        entry!(
            "lmm3.sum",
            "single sum of binomial products",
            "=\\frac{1}{m+1}\\binom{m+1}{a+1}\\binom{m+1}{b};",
            [p("m", "integer m >= a+b", 2, 12), p("a", "integer a >= b", 1, 11), p("b", "integer b >= 1", 1, 6)],
            |b| ints(b, &["m", "a", "b"]).is_some_and(|v| v[2] >= 1 && v[1] >= v[2] && v[0] >= v[1] + v[2]),
            |b| pair(
                oracle::lmm3_lhs(u(b, "m")?, u(b, "a")?, u(b, "b")?),
                oracle::lmm3_rhs(u(b, "m")?, u(b, "a")?, u(b, "b")?)
            )
        ),
        entry!(
            "lmma1.case1",
            "dominated sequence count when i-1 >= j",
            "\\left|\\overline{\\overline{\\mathcal{L}}}^{(n-1)}(i-1,j)\\right|=\\binom{n-i+j-1}{j-1}.",
            [n1(2, 7), p("i", "integer 2 <= i <= n", 2, 7), p("j", "integer 1 <= j < i", 1, 6)],
            |b| ints(b, &["n", "i", "j"]).is_some_and(|v| v[1] >= 2 && v[1] <= v[0] && v[2] >= 1 && v[2] < v[1]),
            |b| pair(
                bi(oracle::enum_lbar(u(b, "n")?, u(b, "i")?, u(b, "j")?)),
                oracle::eval_lbar_formula(u(b, "n")?, u(b, "i")?, u(b, "j")?)
            )
        ),
        entry!(
            "ballot.phi",
            "ballot numbers count dominated lattice paths",
            "\\Phi (X,Y)=\\frac{X-Y+1}{X+1}\\binom{X+Y}{Y}.",
            [p("X", "integer X >= Y", 0, 14), p("Y", "integer Y >= 0", 0, 7)],
            |b| ints(b, &["X", "Y"]).is_some_and(|v| v[1] >= 0 && v[0] >= v[1] && v[0] + v[1] <= 14),
            |b| pair(
                bi(combinum::ballot_phi(get(b, "X")?, get(b, "Y")?).map_err(|e| e.to_string())?),
                bi(oracle::dominated_path_count(u(b, "X")?, u(b, "Y")?))
            )
        ),
        entry!(
            "omega_dd.res",
            "all-even compositions by residue",
            "\\{(1-x^{2})^{-q}/x^{m-2q+1}\\}=",
            [p("m", "integer m >= 1", 1, 14), p("q", "integer q >= 1", 1, 6)],
            |b| all_at_least(b, &["m", "q"], 1),
            |b| pair(
                bi(combinum::omega_dd(get(b, "m")?, get(b, "q")?)),
                q(oracle::enum_compositions(u(b, "m")?, u(b, "q")?, Parity::AllEven).len() as i64)
            )
        ),
        entry!(
            "comp_product.res",
            "sum of shifted products over compositions by residue",
            "_{x}\\{f^{q}(x) /x^{m+q+1}\\}= \\mbox{\\bf res}_{x}\\{\\frac{(-1+(1-x)^{-2})^{q}}{",
            [p("m", "integer m >= 1", 1, 14), p("q", "integer q >= 1", 1, 6)],
            |b| all_at_least(b, &["m", "q"], 1),
            |b| pair(
                bi(combinum::comp_product_sum(get(b, "m")?, get(b, "q")?)),
                oracle::enum_compositions(u(b, "m")?, u(b, "q")?, Parity::All).iter().map(|c| bi(c.shifted_product())).sum()
            )
        ),
        entry!(
            "stirling2.res",
            "Stirling numbers of the second kind by residue",
            "S_{2}(0,0):=1",
            [p("n", "integer 0 <= n <= 8", 0, 8), p("k", "integer 0 <= k <= n", 0, 8)],
            |b| ints(b, &["n", "k"]).is_some_and(|v| v[1] >= 0 && v[1] <= v[0] && v[0] <= 10),
            |b| pair(
                bi(combinum::stirling2(u(b, "n")?, u(b, "k")?)),
                bi(oracle::set_partitions_count(u(b, "n")?, u(b, "k")?).map_err(|e| e.to_string())?)
            )
        ),
        entry!(
            "binom.res",
            "binomial coefficients by residue",
            "(1+w)^{n}w^{-k-1}",
            [p("n", "integer n >= 0", 0, 12), p("k", "integer k", 0, 12)],
            |b| all_at_least(b, &["n"], 0) && b.int("k").is_ok(),
            |b| pair(combinum::binom_via_res(get(b, "n")?, get(b, "k")?), bi(binom_int(get(b, "n")?, get(b, "k")?)))
        ),
        entry!(
            "negbinom.res",
            "negative binomial coefficients by residue",
            "(1-w)^{-n}w^{-k-1}",
            [p("n", "integer n >= 1", 1, 8), p("k", "integer k >= 0", 0, 8)],
            |b| all_at_least(b, &["n"], 1) && all_at_least(b, &["k"], 0),
            |b| pair(
                combinum::negbinom_via_res(get(b, "n")?, get(b, "k")?),
                bi(binom_int(get(b, "n")? + get(b, "k")? - 1, get(b, "k")?))
            )
        ),
        entry!(
            "necklace",
            "aperiodic necklaces by the Moebius formula and by enumeration",
            "M_{q}(n)=\\frac{1}{n}\\sum \\eta (d) q^{n/d}",
            [p("q", "integer q >= 1", 2, 3), n1(1, 8)],
            |b| all_at_least(b, &["q", "n"], 1),
            |b| pair(
                bi(necklace_rank(u(b, "q")?, u(b, "n")?).map_err(|e| e.to_string())?),
                bi(oracle::lyndon_count(u(b, "q")?, u(b, "n")?).map_err(|e| e.to_string())?)
            )
        ),
        entry!(
            "t1.2f",
            "three-variable partition of unity with exact double integral",
            "x^{s_{1}}y^{s_{2}}(1-x-y)^{s_{3}}dx\\wedge dy",
            [
                p("s1", "integer s1 >= 0", 0, 3),
                p("s2", "integer s2 >= 0", 0, 3),
                p("s3", "integer s3 >= 0", 0, 3),
                p("case", "index into the built-in alpha triples", 0, 27)
            ],
            |b| all_at_least(b, &["s1", "s2", "s3", "case"], 0) && b.int("case").is_ok_and(|c| (c as usize) < alpha_triples().len()),
            |b| {
                let a = alpha_triples()[u(b, "case")? as usize].clone();
                let v = oracle::eval_2f_lhs([u(b, "s1")?, u(b, "s2")?, u(b, "s3")?], a).map_err(|e| e.to_string())?;
                pair(v, q(1))
            }
        ),
        entry!(
            "t2.k2",
            "n-variable partition of unity at alpha = 0",
            "z_{1}^{j_{1}}\\cdots z_{n-1}^{j_{n-1}}=1",
            [
                p("case", "index into the built-in unit-sum vectors", 0, 11),
                p("s1", "integer s1 >= 0", 0, 4),
                p("s2", "integer s2 >= 0", 0, 4),
                p("s3", "integer s3 >= 0", 0, 4),
                p("s4", "integer s4 >= 0", 0, 4)
            ],
            |b| admit_vectors(b, &unit_sum_vectors(), 4),
            |b| {
                let z = unit_sum_vectors()[u(b, "case")? as usize].clone();
                let s = s_vec(b, z.len())?;
                pair(oracle::eval_ss_alpha(&z, &s, &q(0)).map_err(|e| e.to_string())?, q(1))
            }
        ),
        entry!(
            "theo1.a6",
            "series coefficients of the kernel equal the direct n-fold sum",
            "(1-\\sum_{i}z_{i}t_{i})^{-\\alpha}\\prod\\limits_{i}(1-t_{i})^{-1}.",
            [
                p("case", "index into unit-sum vectors of length <= 3", 0, 7),
                p("alpha", "index into {0, 1, 2, 3/2}", 0, 3),
                p("s1", "integer s1 >= 0", 0, 4),
                p("s2", "integer s2 >= 0", 0, 4),
                p("s3", "integer s3 >= 0", 0, 4)
            ],
            |b| admit_vectors(b, &small_unit_vectors(), 3) && b.int("alpha").is_ok_and(|a| (0..4).contains(&a)),
            |b| {
                let z = small_unit_vectors()[u(b, "case")? as usize].clone();
                let s = s_vec(b, z.len())?;
                let alpha = kernel_alpha(get(b, "alpha")?);
                pair(kernel_coeff_series(&z, &s, &alpha)?, oracle::eval_ss_alpha(&z, &s, &alpha).map_err(|e| e.to_string())?)
            }
        ),
        entry!(
            "le3.a8",
            "recurrence at alpha = 1",
            "S_{s}(z;1)=1+z_{1}S_{s_{1}-1,s_{2},\\ldots ,s_{n}}(z;1) +\\ldots",
            [
                p("case", "index into unit-sum vectors of length <= 3", 0, 7),
                p("s1", "integer s1 >= 0", 0, 4),
                p("s2", "integer s2 >= 0", 0, 4),
                p("s3", "integer s3 >= 0", 0, 4)
            ],
            |b| admit_vectors(b, &small_unit_vectors(), 3),
            |b| {
                let z = small_unit_vectors()[u(b, "case")? as usize].clone();
                let s = s_vec(b, z.len())?;
                let (lhs, rhs) = recurrence_a7(&z, &s, &q(0))?;
                pair(lhs, rhs)
            }
        ),
        entry!(
            "le3.a7",
            "recurrence between consecutive integer alpha",
            "S_{s}(z;\\alpha +1)-z_{1}S_{s_{1}-1,s_{2},\\ldots ,s_{n}}(z;\\alpha+1)-",
            [
                p("case", "index into unit-sum vectors of length <= 3", 0, 7),
                p("alpha", "integer alpha >= 0", 0, 3),
                p("s1", "integer s1 >= 0", 0, 4),
                p("s2", "integer s2 >= 0", 0, 4),
                p("s3", "integer s3 >= 0", 0, 4)
            ],
            |b| admit_vectors(b, &small_unit_vectors(), 3) && all_at_least(b, &["alpha"], 0),
            |b| {
                let z = small_unit_vectors()[u(b, "case")? as usize].clone();
                let s = s_vec(b, z.len())?;
                let (lhs, rhs) = recurrence_a7(&z, &s, &q(get(b, "alpha")?))?;
                pair(lhs, rhs)
            }
        ),
        entry!(
            "le4.a15",
            "scaled sum splits into two kernel coefficients",
            "S_{s}(z;\\alpha ,\\beta)=(\\beta -1)S_{s}(z;\\alpha +1,1)",
            [
                p("case", "index into unit-sum vectors of length <= 3", 0, 7),
                p("beta", "index into {2, 3, -1, 1/2}", 0, 3),
                p("alpha", "integer alpha >= 1", 1, 3),
                p("s1", "integer s1 >= 0", 0, 4),
                p("s2", "integer s2 >= 0", 0, 4),
                p("s3", "integer s3 >= 0", 0, 4)
            ],
            admit_beta,
            |b| {
                let (bz, beta, alpha, s) = beta_setup(b)?;
                let lhs = oracle::eval_ss_alpha(&bz, &s, &alpha).map_err(|e| e.to_string())?;
                let g1 = oracle::eval_kernel_coeff(&bz, &s, &(&alpha + Q::one())).map_err(|e| e.to_string())?;
                let g0 = oracle::eval_kernel_coeff(&bz, &s, &alpha).map_err(|e| e.to_string())?;
                pair(lhs, (beta - Q::one()) * g1 + g0)
            }
        ),
        entry!(
            "le4.a16",
            "recurrence in alpha for scaled arguments",
            "\\frac{1}{\\beta -1}\\left(S_{s}(z;\\alpha)-S_{s}(\\beta z;\\alpha)\\right),",
            [
                p("case", "index into unit-sum vectors of length <= 3", 0, 7),
                p("beta", "index into {2, 3, -1, 1/2}", 0, 3),
                p("alpha", "integer alpha >= 1", 1, 3),
                p("s1", "integer s1 >= 0", 0, 4),
                p("s2", "integer s2 >= 0", 0, 4),
                p("s3", "integer s3 >= 0", 0, 4)
            ],
            admit_beta,
            |b| {
                let (bz, beta, alpha, s) = beta_setup(b)?;
                let lhs = oracle::eval_kernel_coeff(&bz, &s, &(&alpha + Q::one())).map_err(|e| e.to_string())?;
                let scaled = oracle::eval_ss_alpha(&bz, &s, &alpha).map_err(|e| e.to_string())?;
                let g0 = oracle::eval_kernel_coeff(&bz, &s, &alpha).map_err(|e| e.to_string())?;
                pair(lhs, (scaled - g0) / (beta - Q::one()))
            }
        ),
        entry!(
            "kk.aprt1",
            "alternating multiple sum with factorial normalization",
            "\\!=2^{2s}\\prod_{i=0}^{d}\\binom{\\alpha_{i}+\\gamma_{i}}{\\alpha_{i}}.",
            [
                p("d", "integer 0 <= d <= 3", 0, 3),
                p("s", "integer s >= 0", 0, 3),
                p("a", "index into alpha vectors with |alpha| = 2s+1, entries <= 4", 0, 79),
                p("g", "base-4 digits selecting gamma_i from {0, 1/2, 1, 2}", 0, 255)
            ],
            admit_kk,
            |b| {
                let (d, s, alpha, gamma) = kk_setup(b)?;
                let lhs = oracle::eval_kk2_lhs(s, &alpha, &gamma, d).map_err(|e| e.to_string())?;
                pair(lhs, oracle::kk2_rhs(s, &alpha, &gamma))
            }
        ),
        entry!(
            "kk.heo_xu",
            "alternating multiple sum equals 2^{2s} alpha! C(alpha+gamma, alpha)",
            "2^{2s}\\mathbf{\\alpha}!\\binom{\\alpha +\\gamma}{\\alpha}=",
            [
                p("d", "integer 0 <= d <= 3", 0, 3),
                p("s", "integer s >= 0", 0, 3),
                p("a", "index into alpha vectors with |alpha| = 2s+1, entries <= 4", 0, 79),
                p("g", "base-4 digits selecting gamma_i from {0, 1/2, 1, 2}", 0, 255)
            ],
            admit_kk,
            |b| {
                let (d, s, alpha, gamma) = kk_setup(b)?;
                let lhs = oracle::eval_kk1_lhs(s, &alpha, &gamma, d).map_err(|e| e.to_string())?;
                pair(lhs, oracle::kk1_rhs(s, &alpha, &gamma))
            }
        ),
        entry!(
            "kk14.structure",
            "normalized residue is 1 plus even powers of (1-t)/(1+t); lhs is the squared residual",
            "(1+\\sum_{k=1}^{[\\alpha /2]}h_{k}(\\alpha,\\gamma) (1-t)^{2k}(1+t)^{-2k}),",
            [p("alpha", "integer 0 <= alpha <= 5", 0, 5), p("g", "index into gamma {0, 1/2, 1, 2}", 0, 3)],
            |b| all_at_least(b, &["alpha", "g"], 0) && b.int("g").is_ok_and(|g| g < 4),
            |b| {
                let g = gamma_choices()[u(b, "g")? as usize].clone();
                let fit = kk14_fit(u(b, "alpha")?, &g, 20)?;
                pair(fit.residual_norm(), Q::zero())
            }
        ),
        entry!(
            "kk16.J",
            "residue of (1-t)^{-1}(1+t)^{2s+1} t^{-s-1}",
            "J=\\mbox{\\bf res}_{t}(1-t)^{-1}(1+t)^{2s+1}t^{-s-1}=2^{2s},",
            [p("s", "integer s >= 0", 0, 8)],
            |b| all_at_least(b, &["s"], 0),
            |b| pair(kk16_j(get(b, "s")?), bi(num_bigint::BigInt::one() << (2 * u(b, "s")? as usize)))
        ),
        entry!(
            "kk17.even",
            "J_k vanishes for even k",
            "J_{k}=\\mbox{\\bf res}_{t}(1-t)^{k-1}(1+t)^{2s-k+1}t^{-s-1}=0",
            [p("s", "integer s >= 1", 1, 8), p("k", "even integer 1 <= k <= 2s", 1, 16)],
            |b| ints(b, &["s", "k"]).is_some_and(|v| v[1] >= 1 && v[1] <= 2 * v[0] && v[1] % 2 == 0),
            |b| pair(kk17_j(get(b, "s")?, get(b, "k")?), Q::zero())
        ),
        expected_failure(entry!(
            "kk17.odd_counterexample",
            "J_k for odd k does not vanish (misprint in the stated range of k)",
            "=0,\\text{ }\\forall k=1,\\ldots ,2s.",
            [p("s", "integer s >= 1", 1, 1), p("k", "odd integer 1 <= k <= 2s", 1, 1)],
            |b| ints(b, &["s", "k"]).is_some_and(|v| v[1] >= 1 && v[1] <= 2 * v[0] && v[1] % 2 == 1),
            |b| pair(kk17_j(get(b, "s")?, get(b, "k")?), Q::zero())
        )),
    ]
}

fn admit_vectors(b: &ParamBinding, table: &[Vec<Q>], slots: usize) -> bool {
    let Ok(c) = b.int("case") else { return false };
    if c < 0 || c as usize >= table.len() {
        return false;
    }
    let n = table[c as usize].len();
    let names = ["s1", "s2", "s3", "s4"];
    names[..slots]
        .iter()
        .enumerate()
        .all(|(i, k)| match b.int(k) {
            Ok(v) if i < n => v >= 0,
            Ok(v) => v == 0,
            Err(_) => false,
        })
}

fn admit_beta(b: &ParamBinding) -> bool {
    admit_vectors(b, &small_unit_vectors(), 3)
        && b.int("beta").is_ok_and(|x| (0..4).contains(&x))
        && all_at_least(b, &["alpha"], 1)
}

type BetaSetup = (Vec<Q>, Q, Q, Vec<u64>);

fn beta_setup(b: &ParamBinding) -> std::result::Result<BetaSetup, String> {
    let z = small_unit_vectors()[u(b, "case")? as usize].clone();
    let (bn, bd) = BETAS[u(b, "beta")? as usize];
    let beta = qr(bn, bd);
    let bz: Vec<Q> = z.iter().map(|x| x * &beta).collect();
    let s = s_vec(b, z.len())?;
    Ok((bz, beta, q(get(b, "alpha")?), s))
}

fn admit_kk(b: &ParamBinding) -> bool {
    let Some(v) = ints(b, &["d", "s", "a", "g"]) else {
        return false;
    };
    if v.iter().any(|x| *x < 0) || v[0] > 3 {
        return false;
    }
    let (d, s, a, g) = (v[0] as u64, v[1] as u64, v[2] as usize, v[3] as u64);
    a < kk_alphas(d, s).len() && g < 1 << (2 * (d + 1))
}

type KkSetup = (u64, u64, Vec<u64>, Vec<Q>);

fn kk_setup(b: &ParamBinding) -> std::result::Result<KkSetup, String> {
    let (d, s) = (u(b, "d")?, u(b, "s")?);
    let alpha = kk_alphas(d, s)[u(b, "a")? as usize].clone();
    Ok((d, s, alpha, kk_gamma(d, u(b, "g")?)))
}

/// Both sides of `S_s(z; a+1) - sum z_i S_{s-e_i}(z; a+1) = S_s(z; a)`, with
/// terms of negative index dropped.
fn recurrence_a7(z: &[Q], s: &[u64], alpha: &Q) -> std::result::Result<(Q, Q), String> {
    let next = alpha + Q::one();
    let ev = |v: &[u64], a: &Q| oracle::eval_ss_alpha(z, v, a).map_err(|e| e.to_string());
    let mut lhs = ev(s, &next)?;
    for i in 0..s.len() {
        if s[i] > 0 {
            let mut t = s.to_vec();
            t[i] -= 1;
            lhs -= &z[i] * ev(&t, &next)?;
        }
    }
    Ok((lhs, ev(s, alpha)?))
}

pub fn find(id: &str) -> Result<Identity> {
    registry_list()
        .into_iter()
        .find(|i| i.id == id)
        .ok_or_else(|| IdentityError::UnknownId(id.into()))
}

pub fn verify_one(id: &str, binding: &ParamBinding) -> Result<VerificationReport> {
    let ident = find(id)?;
    run_case(&ident, binding)
}

fn run_case(ident: &Identity, binding: &ParamBinding) -> Result<VerificationReport> {
    let start = Instant::now();
    let (lhs, rhs) = ident.evaluate(binding)?;
    Ok(VerificationReport {
        id: ident.id.into(),
        binding: binding.clone(),
        equal: lhs == rhs,
        lhs,
        rhs,
        elapsed: start.elapsed(),
    })
}

/// Inclusive integer range for one parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn new(name: &str, lo: i64, hi: i64) -> Self {
        Self {
            name: name.into(),
            lo,
            hi,
        }
    }
}

/// Admissible grid points in canonical order: parameters in declared order,
/// values ascending, last parameter fastest.
pub fn grid_points(
    ident: &Identity,
    ranges: &[Range],
    fixed: &ParamBinding,
) -> Result<(Vec<ParamBinding>, BTreeMap<String, String>)> {
    for name in ranges
        .iter()
        .map(|r| r.name.as_str())
        .chain(fixed.iter().map(|(k, _)| k.as_str()))
    {
        if !ident.params.iter().any(|p| p.name == name) {
            return Err(IdentityError::UnknownParam {
                id: ident.id.into(),
                name: name.into(),
            });
        }
    }
    let mut swept = BTreeMap::new();
    let mut axes: Vec<Vec<Q>> = Vec::new();
    for prm in &ident.params {
        if let Some(r) = ranges.iter().rev().find(|r| r.name == prm.name) {
            swept.insert(prm.name.to_string(), format!("{}..{}", r.lo, r.hi));
            axes.push((r.lo..=r.hi).map(q).collect());
        } else if let Ok(v) = fixed.get(prm.name) {
            swept.insert(prm.name.to_string(), q_to_string(v));
            axes.push(vec![v.clone()]);
        } else {
            let (lo, hi) = prm.default_range;
            swept.insert(prm.name.to_string(), format!("{lo}..{hi}"));
            axes.push((lo..=hi).map(q).collect());
        }
    }
    let points = if axes.iter().any(|a| a.is_empty()) {
        vec![]
    } else {
        axes.into_iter()
            .multi_cartesian_product()
            .map(|vals| {
                let mut b = ParamBinding::new();
                for (prm, v) in ident.params.iter().zip(vals) {
                    b.set(prm.name, v);
                }
                b
            })
            .filter(|b| ident.admits(b))
            .collect()
    };
    Ok((points, swept))
}

/// Sweeps the grid, optionally on a dedicated pool of `jobs` threads.
pub fn verify_grid(
    id: &str,
    ranges: &[Range],
    fixed: &ParamBinding,
    jobs: Option<usize>,
) -> Result<Certificate> {
    let ident = find(id)?;
    let (points, swept) = grid_points(&ident, ranges, fixed)?;
    let run = || -> Result<Vec<VerificationReport>> {
        points.par_iter().map(|b| run_case(&ident, b)).collect()
    };
    let reports = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| IdentityError::Pool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let failures = reports
        .into_iter()
        .filter(|r| !r.equal)
        .map(|r| Failure {
            binding: r.binding,
            lhs: r.lhs,
            rhs: r.rhs,
        })
        .collect();
    Ok(Certificate {
        identity: id.into(),
        params_swept: swept,
        cases: points.len(),
        failures,
        expected_failure: ident.expected_failure,
        engine_version: env!("CARGO_PKG_VERSION").into(),
    })
}

/// Identities checked coefficientwise on generating functions.
pub const GF_IDS: [&str; 11] = [
    "gf.l1_2", "gf.l2_1", "gf.l2_2", "gf.l7_0", "gf.l7_1", "gf.l7_2", "gf.t2_1", "gf.sr", "gf.a6",
    "gf.a14", "gf.l8",
];

struct Kernels {
    a: MSeries,
    b: MSeries,
    c: MSeries,
    u: [MSeries; 3],
}

fn lin3(c1: Q, c2: Q, c3: Q) -> MSeries {
    MSeries::linear(q(1), &[("u1", -c1), ("u2", -c2), ("u3", -c3)])
}

fn kernels(a: &[Q; 3], trunc: i64) -> std::result::Result<Kernels, String> {
    let [a1, a2, a3] = a;
    let one = Q::one();
    let caps = [("u1", trunc + 1), ("u2", trunc + 1), ("u3", trunc + 1)];
    let inv = |s: MSeries| s.with_trunc(&caps).mv_inv().map_err(|e| e.to_string());
    Ok(Kernels {
        a: inv(lin3(&one - a2 - a3, a2.clone(), a3.clone()))?,
        b: inv(lin3(a1.clone(), &one - a1 - a3, a3.clone()))?,
        c: inv(lin3(a1.clone(), a2.clone(), &one - a1 - a2))?,
        u: [
            inv(lin3(one.clone(), q(0), q(0)))?,
            inv(lin3(q(0), one.clone(), q(0)))?,
            inv(lin3(q(0), q(0), one.clone()))?,
        ],
    })
}

fn alpha_params(params: &ParamBinding) -> Result<[Q; 3]> {
    let get = |k: &str| {
        params.get(k).cloned().map_err(|_| IdentityError::Domain {
            id: "gf".into(),
            binding: params.to_string(),
        })
    };
    let a = [get("a1")?, get("a2")?, get("a3")?];
    let ok = a.iter().all(|x| x.is_positive() && *x < Q::one()) && a.iter().sum::<Q>() < Q::one();
    if !ok {
        return Err(IdentityError::Domain {
            id: "gf".into(),
            binding: params.to_string(),
        });
    }
    Ok(a)
}

fn z_params(params: &ParamBinding) -> Vec<Q> {
    (1..=4)
        .map_while(|i| params.get(&format!("z{i}")).ok().cloned())
        .collect()
}

type CoeffFn = Box<dyn Fn(&[u64]) -> std::result::Result<Q, String> + Sync>;

/// Compares the generating function of `id` with its coefficient formula on
/// the hypercube `[0, trunc]^n`.
pub fn gf_coeff_check(id: &str, trunc: i64, params: &ParamBinding) -> Result<Certificate> {
    let eval_err = |reason: String| IdentityError::Eval {
        id: id.into(),
        binding: params.to_string(),
        reason,
    };
    let mut swept = BTreeMap::new();
    for (k, v) in params.iter() {
        swept.insert(k.clone(), q_to_string(v));
    }
    swept.insert("trunc".into(), trunc.to_string());
    if id == "gf.l8" {
        let failures = l8_symbolic()
            .into_iter()
            .enumerate()
            .filter(|(_, ok)| !ok)
            .map(|(i, _)| Failure {
                binding: ParamBinding::new().with_int("check", i as i64),
                lhs: q(0),
                rhs: q(1),
            })
            .collect();
        return Ok(Certificate {
            identity: id.into(),
            params_swept: swept,
            cases: 4,
            failures,
            expected_failure: false,
            engine_version: env!("CARGO_PKG_VERSION").into(),
        });
    }
    let (series, vars, coeff): (MSeries, Vec<String>, CoeffFn) = match id {
        "gf.a6" | "gf.a14" => {
            let z = z_params(params);
            let alpha = params.get("alpha").cloned().unwrap_or_else(|_| q(0));
            let total: Q = z.iter().sum();
            if z.is_empty()
                || alpha.is_negative()
                || (id == "gf.a6" && !total.is_one())
                || (id == "gf.a14" && (total.is_zero() || total.is_one()))
            {
                return Err(IdentityError::Domain {
                    id: id.into(),
                    binding: params.to_string(),
                });
            }
            let names: Vec<String> = (1..=z.len()).map(|i| format!("t{i}")).collect();
            let caps: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), trunc + 1)).collect();
            let lin: Vec<(&str, Q)> = names
                .iter()
                .zip(&z)
                .map(|(n, zi)| (n.as_str(), -zi.clone()))
                .collect();
            let base = MSeries::linear(q(1), &lin).with_trunc(&caps);
            let expo = if id == "gf.a6" {
                -alpha.clone()
            } else {
                -&alpha - Q::one()
            };
            let mut acc = base
                .mv_pow_general_to(&expo, &caps)
                .map_err(|e| eval_err(e.to_string()))?;
            if id == "gf.a14" {
                acc = acc.mul(&MSeries::linear(total.clone(), &lin));
            }
            for (n, cap) in &caps {
                let geo = MSeries::linear(q(1), &[(n, q(-1))]).with_trunc(&[(n, *cap)]);
                acc = acc.mul(&geo.mv_inv().map_err(|e| eval_err(e.to_string()))?);
            }
            let zc = z.clone();
            (
                acc,
                names,
                Box::new(move |s: &[u64]| {
                    oracle::eval_ss_alpha(&zc, s, &alpha).map_err(|e| e.to_string())
                }),
            )
        }
        _ => {
            let a = alpha_params(params)?;
            let k = kernels(&a, trunc).map_err(eval_err)?;
            let [a1, a2, a3] = a.clone();
            let one = Q::one();
            let sigma = &one - &a1 - &a2 - &a3;
            let names = vec!["u1".to_string(), "u2".to_string(), "u3".to_string()];
            let s_gf = [
                k.u[1].mul(&k.u[2]).mul(&k.a).scale(&(&one - &a2 - &a3)),
                k.u[0].mul(&k.u[2]).mul(&k.b).scale(&(&one - &a1 - &a3)),
                k.u[0].mul(&k.u[1]).mul(&k.c).scale(&(&one - &a1 - &a2)),
            ];
            let t_gf = [
                k.u[0].mul(&k.b).mul(&k.c).scale(&((&one - &a1) * &sigma)),
                k.u[1].mul(&k.a).mul(&k.c).scale(&((&one - &a2) * &sigma)),
                k.u[2].mul(&k.a).mul(&k.b).scale(&((&one - &a3) * &sigma)),
            ];
            let r_gf = k.a.mul(&k.b).mul(&k.c).scale(&(&sigma * &sigma));
            let aa = a.clone();
            let (series, f): (MSeries, CoeffFn) = match id {
                "gf.l1_2" => (
                    s_gf[0].clone(),
                    Box::new(move |s| Ok(oracle::two_f_s(s[0], s[1], s[2], &aa[1], &aa[2]))),
                ),
                "gf.l2_1" => (
                    s_gf[1].clone(),
                    Box::new(move |s| Ok(oracle::two_f_s(s[1], s[0], s[2], &aa[0], &aa[2]))),
                ),
                "gf.l2_2" => (
                    s_gf[2].clone(),
                    Box::new(move |s| Ok(oracle::two_f_s(s[2], s[0], s[1], &aa[0], &aa[1]))),
                ),
                "gf.l7_0" => (
                    t_gf[0].clone(),
                    Box::new(move |s| {
                        Ok(oracle::two_f_t(s[1], s[2], s[0], &aa[1], &aa[2], &aa[0]))
                    }),
                ),
                "gf.l7_1" => (
                    t_gf[1].clone(),
                    Box::new(move |s| {
                        Ok(oracle::two_f_t(s[0], s[2], s[1], &aa[0], &aa[2], &aa[1]))
                    }),
                ),
                "gf.l7_2" => (
                    t_gf[2].clone(),
                    Box::new(move |s| {
                        Ok(oracle::two_f_t(s[0], s[1], s[2], &aa[0], &aa[1], &aa[2]))
                    }),
                ),
                "gf.t2_1" => (
                    r_gf,
                    Box::new(move |s| {
                        Ok(oracle::two_f_r(s[0], s[1], s[2], &aa[0], &aa[1], &aa[2]))
                    }),
                ),
                "gf.sr" => {
                    let total = s_gf[0]
                        .add(&s_gf[1])
                        .add(&s_gf[2])
                        .sub(&t_gf[0])
                        .sub(&t_gf[1])
                        .sub(&t_gf[2])
                        .add(&r_gf);
                    (total, Box::new(|_| Ok(Q::one())))
                }
                _ => return Err(IdentityError::UnknownId(id.into())),
            };
            (series, names, f)
        }
    };
    let points: Vec<Vec<u64>> = if trunc < 0 {
        vec![]
    } else {
        vars.iter()
            .map(|_| 0..=trunc as u64)
            .multi_cartesian_product()
            .collect()
    };
    let results: Vec<std::result::Result<Option<Failure>, String>> = points
        .par_iter()
        .map(|s| {
            let e: Vec<i64> = s.iter().map(|x| *x as i64).collect();
            let lhs = series
                .coeff_named(
                    &vars
                        .iter()
                        .map(|v| v.as_str())
                        .zip(e.iter().copied())
                        .collect::<Vec<_>>(),
                )
                .map_err(|e| e.to_string())?;
            let rhs = coeff(s)?;
            if lhs == rhs {
                return Ok(None);
            }
            let mut b = ParamBinding::new();
            for (v, x) in vars.iter().zip(s) {
                b.set(&format!("s_{v}"), q(*x as i64));
            }
            Ok(Some(Failure {
                binding: b,
                lhs,
                rhs,
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r.map_err(eval_err)? {
            failures.push(f);
        }
    }
    let mut cases = points.len();
    if id == "gf.a6" {
        if let Ok(alpha) = params.get("alpha") {
            if crate::numeric::is_integer(alpha) && !alpha.is_negative() {
                cases += 1;
                if !a6_rational_check(&z_params(params), alpha) {
                    failures.push(Failure {
                        binding: ParamBinding::new().with_int("ratfun", 1),
                        lhs: q(0),
                        rhs: q(1),
                    });
                }
            }
        }
    }
    Ok(Certificate {
        identity: id.into(),
        params_swept: swept,
        cases,
        failures,
        expected_failure: false,
        engine_version: env!("CARGO_PKG_VERSION").into(),
    })
}

/// At integer `alpha`, `(1 - sum z t) T_{alpha+1} = T_alpha` as rational functions.
fn a6_rational_check(z: &[Q], alpha: &Q) -> bool {
    let k: u64 = alpha.to_integer().try_into().unwrap_or(0);
    let mut l = MPoly::constant(q(1));
    let mut p = MPoly::constant(q(1));
    for (i, zi) in z.iter().enumerate() {
        let t = MPoly::var(&format!("t{}", i + 1));
        l = l.sub(&t.scale(zi));
        p = p.mul(&MPoly::constant(q(1)).sub(&t));
    }
    let one = MPoly::constant(q(1));
    ratfun_equal(&l, &l.pow(k + 1).mul(&p), &one, &l.pow(k).mul(&p)).unwrap_or(false)
}

/// Symbolic polynomial identities in `u1, u2, u3, a1, a2, a3`: the linear and
/// quadratic cancellations, the cubic reduction, and the full rational identity.
pub fn l8_symbolic() -> Vec<bool> {
    let v = |n: &str| MPoly::var(n);
    let c = |x: i64| MPoly::constant(q(x));
    let (u1, u2, u3) = (v("u1"), v("u2"), v("u3"));
    let (a1, a2, a3) = (v("a1"), v("a2"), v("a3"));
    let one = c(1);
    let a = one
        .sub(&one.sub(&a2).sub(&a3).mul(&u1))
        .sub(&a2.mul(&u2))
        .sub(&a3.mul(&u3));
    let b = one
        .sub(&a1.mul(&u1))
        .sub(&one.sub(&a1).sub(&a3).mul(&u2))
        .sub(&a3.mul(&u3));
    let cc = one
        .sub(&a1.mul(&u1))
        .sub(&a2.mul(&u2))
        .sub(&one.sub(&a1).sub(&a2).mul(&u3));
    let a_1 = a.sub(&one.sub(&u1));
    let b_1 = b.sub(&one.sub(&u2));
    let c_1 = cc.sub(&one.sub(&u3));
    let sum_a = a1.add(&a2).add(&a3);
    let linear = a1.mul(&a_1).add(&a2.mul(&b_1)).add(&a3.mul(&c_1));
    let quad = sum_a
        .mul(
            &a1.mul(&u2.add(&u3))
                .mul(&a_1)
                .add(&a2.mul(&u1.add(&u3)).mul(&b_1))
                .add(&a3.mul(&u1.add(&u2)).mul(&c_1)),
        )
        .sub(&a2.add(&a3).mul(&b_1).mul(&c_1))
        .sub(&a1.add(&a3).mul(&a_1).mul(&c_1))
        .sub(&a1.add(&a2).mul(&a_1).mul(&b_1));
    let w1 = one.sub(&u1);
    let w2 = one.sub(&u2);
    let w3 = one.sub(&u3);
    let m = a
        .mul(&b)
        .mul(&cc)
        .sub(&a_1.mul(&b_1).mul(&c_1))
        .sub(
            &sum_a.mul(
                &a1.mul(&w2)
                    .mul(&w3)
                    .mul(&a_1)
                    .add(&a2.mul(&w1).mul(&w3).mul(&b_1))
                    .add(&a3.mul(&w1).mul(&w2).mul(&c_1)),
            ),
        )
        .sub(&a2.add(&a3).mul(&w1).mul(&b_1).mul(&c_1))
        .sub(&a1.add(&a3).mul(&w2).mul(&a_1).mul(&c_1))
        .sub(&a1.add(&a2).mul(&w3).mul(&a_1).mul(&b_1));
    let abc = a.mul(&b).mul(&cc);
    let sigma = one.sub(&sum_a);
    let numer = one
        .sub(&a2)
        .sub(&a3)
        .mul(&w1)
        .mul(&b)
        .mul(&cc)
        .add(&one.sub(&a1).sub(&a3).mul(&w2).mul(&a).mul(&cc))
        .add(&one.sub(&a1).sub(&a2).mul(&w3).mul(&a).mul(&b))
        .sub(&one.sub(&a1).mul(&sigma).mul(&w2).mul(&w3).mul(&a))
        .sub(&one.sub(&a2).mul(&sigma).mul(&w1).mul(&w3).mul(&b))
        .sub(&one.sub(&a3).mul(&sigma).mul(&w1).mul(&w2).mul(&cc))
        .add(&sigma.mul(&sigma).mul(&w1).mul(&w2).mul(&w3));
    let denom = w1.mul(&w2).mul(&w3).mul(&abc);
    vec![
        linear.is_zero(),
        quad.is_zero(),
        m == abc,
        ratfun_equal(&numer, &denom, &one, &w1.mul(&w2).mul(&w3)).unwrap_or(false),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let reg = registry_list();
        assert!(reg.len() >= 25);
        let ids: std::collections::BTreeSet<&str> = reg.iter().map(|i| i.id).collect();
        assert_eq!(ids.len(), reg.len());
        for id in [
            "th3.omega",
            "a73.omega_plus",
            "th1.N",
            "lmm3.sum",
            "kk16.J",
            "kk17.even",
            "kk17.odd_counterexample",
            "s5.printed_414a",
        ] {
            assert!(ids.contains(id), "{id}");
        }
        let xf: Vec<&str> = reg
            .iter()
            .filter(|i| i.expected_failure)
            .map(|i| i.id)
            .collect();
        assert_eq!(xf, vec!["s5.printed_414a", "kk17.odd_counterexample"]);
        assert!(alpha_triples().len() >= 25);
    }

    #[test]
    fn single_cases() {
        let r = verify_one("th3.omega", &ParamBinding::new().with_int("n", 2)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.equal), (q(6), q(6), true));
        let r = verify_one("kk16.J", &ParamBinding::new().with_int("s", 1)).unwrap();
        assert_eq!((r.lhs.clone(), r.equal), (q(4), true));
        let b = ParamBinding::new().with_int("s", 1).with_int("k", 1);
        let r = verify_one("kk17.odd_counterexample", &b).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.equal), (q(2), q(0), false));
        assert!(matches!(
            verify_one("nosuch", &ParamBinding::new()),
            Err(IdentityError::UnknownId(_))
        ));
        assert!(matches!(
            verify_one("th3.omega", &ParamBinding::new()),
            Err(IdentityError::Domain { .. })
        ));
        let b = ParamBinding::new()
            .with_int("m", 4)
            .with_int("a", 2)
            .with_int("b", 1);
        let r = verify_one("lmm3.sum", &b).unwrap();
        assert_eq!((r.lhs.clone(), r.equal), (q(10), true));
    }

    #[test]
    fn grids() {
        let c = verify_grid(
            "th1.N",
            &[Range::new("n", 1, 8), Range::new("s", 1, 4)],
            &ParamBinding::new(),
            None,
        )
        .unwrap();
        assert_eq!((c.cases, c.pass()), (32, true));
        let c = verify_grid(
            "th1.N",
            &[Range::new("n", 3, 2)],
            &ParamBinding::new(),
            None,
        )
        .unwrap();
        assert_eq!((c.cases, c.pass()), (0, true));
        let a = verify_grid(
            "lmm3.sum",
            &[Range::new("m", 2, 10)],
            &ParamBinding::new(),
            Some(1),
        )
        .unwrap();
        let b = verify_grid(
            "lmm3.sum",
            &[Range::new("m", 2, 10)],
            &ParamBinding::new(),
            Some(8),
        )
        .unwrap();
        assert!(a.pass());
        assert_eq!(a.to_json(), b.to_json());
        assert!(verify_grid(
            "th1.N",
            &[Range::new("zz", 1, 2)],
            &ParamBinding::new(),
            None
        )
        .is_err());
    }

    #[test]
    fn residue_forms() {
        for n in 3..=6 {
            assert_eq!(-t2_residue(n), oracle::sum_t2(n as u64));
            assert_eq!(t3_residue(n).unwrap(), oracle::t3_closed(n as u64));
        }
        assert_eq!(kk16_j(1), q(4));
        assert_eq!(kk17_j(1, 2), q(0));
        assert_eq!(kk17_j(1, 1), q(2));
    }

    #[test]
    fn symbolic_l8() {
        assert_eq!(l8_symbolic(), vec![true, true, true, true]);
    }

    #[test]
    fn kernel_coefficients() {
        let z = [qr(1, 3), qr(1, 2), qr(1, 6)];
        for alpha in [q(0), q(1), qr(3, 2)] {
            let s = [2, 1, 1];
            assert_eq!(
                kernel_coeff_series(&z, &s, &alpha).unwrap(),
                oracle::eval_ss_alpha(&z, &s, &alpha).unwrap()
            );
        }
    }

    #[test]
    fn hyperbolic_fit() {
        let fit = kk14_fit(3, &qr(1, 2), 12).unwrap();
        assert!(fit.residual_norm().is_zero());
        assert_eq!(fit.h.len(), 1);
    }

    #[test]
    fn generating_functions() {
        let a = ParamBinding::new()
            .with("a1", qr(1, 4))
            .with("a2", qr(1, 4))
            .with("a3", qr(1, 4));
        let sr = gf_coeff_check("gf.sr", 6, &a).unwrap();
        assert_eq!((sr.cases, sr.pass()), (343, true));
        let a = ParamBinding::new()
            .with("a1", qr(1, 2))
            .with("a2", qr(1, 4))
            .with("a3", qr(1, 8));
        for id in [
            "gf.l1_2", "gf.l2_1", "gf.l2_2", "gf.l7_0", "gf.l7_1", "gf.l7_2", "gf.t2_1", "gf.l8",
        ] {
            assert!(gf_coeff_check(id, 3, &a).unwrap().pass(), "{id}");
        }
        let z = ParamBinding::new()
            .with("z1", qr(1, 3))
            .with("z2", qr(2, 3));
        for alpha in [q(0), q(2), qr(3, 2)] {
            let c = gf_coeff_check("gf.a6", 3, &z.clone().with("alpha", alpha)).unwrap();
            assert!(c.pass());
        }
        let zb = ParamBinding::new()
            .with("z1", qr(2, 3))
            .with("z2", qr(4, 3))
            .with("alpha", q(1));
        assert!(gf_coeff_check("gf.a14", 3, &zb).unwrap().pass());
        let bad = ParamBinding::new()
            .with("a1", qr(1, 2))
            .with("a2", qr(1, 2))
            .with("a3", qr(1, 8));
        assert!(gf_coeff_check("gf.sr", 2, &bad).is_err());
    }
}
