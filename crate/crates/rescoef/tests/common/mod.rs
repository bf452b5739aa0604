//! Strategies and laws shared by the property suite and the acceptance run.

#![allow(dead_code)]

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};
use rescoef::mseries::MSeries;
use rescoef::numeric::{binom_general, qr, Q};
use rescoef::LaurentSeries;

pub type Law = Result<(), TestCaseError>;

pub fn config() -> Config {
    Config {
        cases: 256,
        rng_seed: RngSeed::Fixed(0x5eed_cafe),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, d)| qr(p, d))
}

pub fn nonzero() -> impl Strategy<Value = Q> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(p, d, s)| qr(if s { p } else { -p }, d))
}

/// Laurent series in `w` with lowest exponent `lo`, either exact or truncated.
pub fn series_from(lo: i64) -> impl Strategy<Value = LaurentSeries> {
    (
        prop::collection::vec(rational(), 1..7),
        prop::option::of(7i64..12),
    )
        .prop_map(move |(cs, t)| {
            let terms: Vec<(i64, Q)> = cs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (lo + k as i64, c))
                .collect();
            match t {
                Some(t) => LaurentSeries::make("w", terms, lo + t).unwrap(),
                None => LaurentSeries::poly("w", terms),
            }
        })
}

pub fn series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..=2).prop_flat_map(series_from)
}

/// Polynomial in `w` with nonzero constant term.
pub fn unit_poly() -> impl Strategy<Value = LaurentSeries> {
    (nonzero(), prop::collection::vec(rational(), 0..4)).prop_map(|(c0, cs)| {
        let mut terms = vec![(0, c0)];
        terms.extend(cs.into_iter().enumerate().map(|(k, c)| (k as i64 + 1, c)));
        LaurentSeries::poly("w", terms)
    })
}

pub fn mpoly() -> impl Strategy<Value = MSeries> {
    prop::collection::vec(((-3i64..=2), (-3i64..=2), rational()), 1..8).prop_map(|ts| {
        MSeries::poly(
            &["x", "y"],
            ts.into_iter().map(|(a, b, c)| (vec![a, b], c)).collect(),
        )
        .unwrap()
    })
}

pub fn rule1(a: LaurentSeries, k: usize, d: Q) -> Law {
    prop_assert!(a.agrees_with(&a.clone()));
    let lo = a.order().unwrap_or(0);
    let e = lo + k as i64;
    if a.trunc().is_none_or(|t| e < t) {
        let bumped = a.add(&LaurentSeries::poly("w", vec![(e, d)])).unwrap();
        prop_assert!(!a.agrees_with(&bumped));
        prop_assert_ne!(a.coeff(e).unwrap(), bumped.coeff(e).unwrap());
    }
    Ok(())
}

pub fn rule2(a: LaurentSeries, b: LaurentSeries, x: Q, y: Q) -> Law {
    let lhs = a.scale(&x).add(&b.scale(&y)).unwrap().res();
    match (a.res(), b.res()) {
        (Ok(ra), Ok(rb)) => prop_assert_eq!(lhs.unwrap(), x * ra + y * rb),
        _ => prop_assert!(lhs.is_err()),
    }
    Ok(())
}

pub fn rule3(a: LaurentSeries) -> Law {
    let top = a.trunc().unwrap_or(a.max_exponent().unwrap_or(0) + 1);
    let lo = a.order().unwrap_or(0);
    let mut terms = Vec::new();
    for k in lo..top {
        terms.push((k, a.shift(-k - 1).res().unwrap()));
    }
    let rebuilt = LaurentSeries::make("w", terms, top).unwrap();
    prop_assert!(rebuilt.agrees_with(&a));
    prop_assert_eq!(rebuilt.trunc(), Some(top));
    Ok(())
}

/// `res_w A f^k w^{-k-1} = [z^k] A/(f h') at w = hbar(z)`, with `h = w / f`.
pub fn rules4_5(a: LaurentSeries, f: LaurentSeries) -> Law {
    let h = f.inv().unwrap().shift(1);
    let hbar = h.reverse("z").unwrap();
    let g = a.mul(&f.mul(&h.derive()).unwrap().inv().unwrap()).unwrap();
    let rhs = g.compose(&hbar).unwrap();
    for k in 0..6i64 {
        let lhs = a
            .mul(&f.pow_int(k).unwrap())
            .unwrap()
            .shift(-k - 1)
            .res()
            .unwrap();
        prop_assert_eq!(lhs, rhs.coeff(k).unwrap());
    }
    Ok(())
}

pub fn rule6(a: LaurentSeries, k: i64) -> Law {
    if a.trunc().is_none_or(|t| k < t) {
        let lhs = a.shift(-k - 1).res().unwrap() * Q::from_integer(k.into());
        let rhs = a.derive().shift(-k).res().unwrap();
        prop_assert_eq!(lhs, rhs);
    }
    Ok(())
}

pub fn exp_log(f: LaurentSeries) -> Law {
    let e = f.exp_series().unwrap();
    let lhs = e.derive();
    let rhs = f.derive().mul(&e).unwrap();
    prop_assert!(lhs.agrees_with(&rhs));
    prop_assert!(lhs.trunc().is_some());
    let back = e.log_series().unwrap();
    prop_assert!(back.agrees_with(&f));
    prop_assert!(back.trunc().unwrap() >= 7);
    Ok(())
}

pub fn reversion(c1: Q, f: LaurentSeries) -> Law {
    let h = LaurentSeries::poly("w", vec![(1, c1)]).add(&f).unwrap();
    let hbar = h.reverse("z").unwrap();
    let id = h.compose(&hbar).unwrap();
    let t = id.trunc().unwrap();
    prop_assert!(t >= 7);
    for k in 0..t {
        prop_assert_eq!(
            id.coeff(k).unwrap(),
            if k == 1 { Q::one() } else { Q::zero() }
        );
    }
    Ok(())
}

pub fn binom_pow(a: Q, c: Q) -> Law {
    let s = LaurentSeries::binom_pow(&c, &a, "w", 8);
    for k in 0..8u64 {
        let want = binom_general(&a, k) * num_traits::pow(c.clone(), k as usize);
        prop_assert_eq!(s.coeff(k as i64).unwrap(), want);
    }
    Ok(())
}

pub fn mv_res_order(a: MSeries, b: MSeries) -> Law {
    let denom = MSeries::linear(Q::one(), &[("x", qr(-1, 1)), ("y", qr(-1, 1))])
        .with_trunc(&[("x", 6), ("y", 6)]);
    for m in [a.clone(), a.mul(&b), a.mul(&denom.mv_inv().unwrap())] {
        let xy = m.mv_res(&["x", "y"]).unwrap().constant_term().unwrap();
        let yx = m.mv_res(&["y", "x"]).unwrap().constant_term().unwrap();
        prop_assert_eq!(xy, yx);
    }
    Ok(())
}

pub fn embedding(a: LaurentSeries, b: LaurentSeries) -> Law {
    let ab = a.mul(&b).unwrap();
    let m = MSeries::from_series(&a).mul(&MSeries::from_series(&b));
    prop_assert!(m.to_series().unwrap().agrees_with(&ab));
    let s = MSeries::from_series(&a).add(&MSeries::from_series(&b));
    prop_assert!(s.to_series().unwrap().agrees_with(&a.add(&b).unwrap()));
    Ok(())
}
