//! Strategies and property checks shared by the integration tests.

#![allow(dead_code)]

use mocktheta::qseries::{exp, partition_series, QSeries};
use mocktheta::special::SeriesFunction;
use mocktheta::CycNumber;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const EMBED_TOL: f64 = 1e-9;

pub const ORDERS: [u64; 10] = [1, 3, 4, 5, 7, 8, 12, 15, 20, 24];

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Σ r_j ζ_n^{e_j} for a random order n and a handful of terms.
pub fn cyc() -> impl Strategy<Value = CycNumber> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| {
        prop::collection::vec((0..n as i64, rational()), 0..5).prop_map(move |ts| {
            ts.into_iter()
                .map(|(e, r)| CycNumber::root_of_unity(e, n).scale(&r))
                .sum()
        })
    })
}

pub fn nonzero_cyc() -> impl Strategy<Value = CycNumber> {
    cyc().prop_filter("nonzero", |x| !x.is_zero())
}

fn close(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() <= EMBED_TOL * (1.0 + y.norm())
}

fn ensure(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

/// Ring axioms, inverses, conjugation and the serialized round trip.
pub fn field_axioms(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(cyc(), cyc(), cyc(), nonzero_cyc()), |(x, y, z, w)| {
            ensure(&x + &y == &y + &x, "addition commutes")?;
            ensure(&x * &y == &y * &x, "multiplication commutes")?;
            ensure(&(&x + &y) + &z == &x + &(&y + &z), "addition associates")?;
            ensure(&(&x * &y) * &z == &x * &(&y * &z), "multiplication associates")?;
            ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "distributivity")?;
            ensure(&x + &(-&x) == CycNumber::zero(), "additive inverse")?;
            ensure(&(&x - &y) + &y == x, "subtraction")?;
            ensure((&x * &CycNumber::one()) == x, "multiplicative identity")?;
            let wi = w.inv().map_err(|e| TestCaseError::fail(e.to_string()))?;
            ensure((&w * &wi).is_one(), "multiplicative inverse")?;
            ensure((&x * &y).conj() == &x.conj() * &y.conj(), "conjugation is multiplicative")?;
            let back: CycNumber = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            ensure(back == x, "json round trip")?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// The float embedding is a ring homomorphism to within EMBED_TOL.
pub fn embedding(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(cyc(), cyc(), nonzero_cyc()), |(x, y, w)| {
            let (fx, fy) = (x.embed_float(), y.embed_float());
            ensure(close((&x + &y).embed_float(), fx + fy), "sum")?;
            ensure(close((&x * &y).embed_float(), fx * fy), "product")?;
            ensure(close(x.conj().embed_float(), fx.conj()), "conjugate")?;
            let wi = w.inv().map_err(|e| TestCaseError::fail(e.to_string()))?;
            ensure(close(wi.embed_float(), 1.0 / w.embed_float()), "inverse")?;
            ensure(close(x.embed(6 * x.order()).embed_float(), fx), "change of order")?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Computing to a higher order and truncating equals computing directly, and
/// truncation commutes with sums and with products of series bounded below.
pub fn truncation_monotone(cases: u32) -> Result<(), String> {
    let funcs = vec![
        SeriesFunction::EulerianM,
        SeriesFunction::RankR,
        SeriesFunction::AppellM,
        SeriesFunction::SeriesN,
        SeriesFunction::HoloM,
        SeriesFunction::HoloN,
        SeriesFunction::KernelK,
        SeriesFunction::Phi0,
    ];
    let strat = (
        prop::sample::select(funcs),
        prop::sample::select(vec![5u64, 7]),
        0u64..7,
        0u64..7,
        1i64..=3,
        (1i64..=6, 1i64..=4),
        1i64..=4,
    );
    runner(cases)
        .run(&strat, |(f, c, a, b, n, (t0n, t0d), extra)| {
            let (a, b) = (a % c, b % c);
            if (a, b) == (0, 0) {
                return Ok(());
            }
            let a = if matches!(f, SeriesFunction::EulerianM | SeriesFunction::RankR) && a == 0 { 1 } else { a };
            let t0 = exp(t0n, t0d);
            let t1 = t0 + extra;
            let lo = f.expand(a, b, c, n, t0).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let hi = f.expand(a, b, c, n, t1).map_err(|e| TestCaseError::fail(e.to_string()))?;
            ensure(hi.truncate(t0) == lo.truncate(t0), "expand then truncate")?;
            let p = partition_series(8);
            ensure(hi.add(&p).truncate(t0) == lo.add(&p).truncate(t0), "sum")?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    runner(cases)
        .run(&(prop::collection::vec((0i64..12, cyc()), 0..6), prop::collection::vec((0i64..12, cyc()), 0..6), 1i64..12), |(xs, ys, t)| {
            let t = exp(t, 1);
            let f = QSeries::from_terms(xs.into_iter().map(|(e, c)| (exp(e, 2), c)), Some(exp(12, 1)));
            let g = QSeries::from_terms(ys.into_iter().map(|(e, c)| (exp(e, 3), c)), Some(exp(12, 1)));
            ensure(f.mul(&g).truncate(t) == f.truncate(t).mul(&g.truncate(t)).truncate(t), "product")?;
            ensure(f.truncate(t).truncate(t) == f.truncate(t), "idempotent")?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}
