//! Eulerian (q-hypergeometric) series: M(r, q), the rank generating function
//! R(ζ, q) with its brute-force counterpart N(m, n), and three fifth order
//! mock theta functions.

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::qseries::{exp, Exp, QSeries};

/// M(a/c, q) = Σ_{n≥1} q^{n(n−1)} / ((q^{a/c};q)_n (q^{1−a/c};q)_n).
pub fn eulerian_m(a: u64, c: u64, trunc: Exp) -> Result<QSeries> {
    if a == 0 || a >= c {
        return Err(Error::OutOfRange(format!("eulerian M needs 0 < a < c, got a = {a}, c = {c}")));
    }
    let r = exp(a as i64, c as i64);
    let one = CycNumber::one();
    let mut total = QSeries::zero(Some(trunc));
    let mut n: i64 = 1;
    while exp(n * (n - 1), 1) < trunc {
        let mut term = QSeries::monomial(one.clone(), exp(n * (n - 1), 1)).truncate(trunc);
        for m in 0..n {
            term = term.div_one_minus(&one, r + m, None)?;
            term = term.div_one_minus(&one, exp(1, 1) - r + m, None)?;
        }
        total = total.add(&term);
        n += 1;
    }
    Ok(total)
}

/// R(e(a/c), q) = 1 + Σ_{n≥1} q^{n²} / ((ζq;q)_n (ζ^{−1}q;q)_n).
pub fn rank_r(a: u64, c: u64, trunc: Exp) -> Result<QSeries> {
    if c == 0 || a >= c {
        return Err(Error::OutOfRange(format!("rank R needs 0 <= a < c, got a = {a}, c = {c}")));
    }
    let zeta = CycNumber::root_of_unity(a as i64, c);
    let zeta_inv = zeta.conj();
    let mut total = QSeries::one().truncate(trunc);
    let mut n: i64 = 1;
    while exp(n * n, 1) < trunc {
        let mut term = QSeries::monomial(CycNumber::one(), exp(n * n, 1)).truncate(trunc);
        for m in 1..=n {
            term = term.div_one_minus(&zeta, exp(m, 1), None)?;
            term = term.div_one_minus(&zeta_inv, exp(m, 1), None)?;
        }
        total = total.add(&term);
        n += 1;
    }
    Ok(total)
}

/// Partitions of `n` as nonincreasing part lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Dyson's rank: largest part minus number of parts (0 for the empty partition).
pub fn rank_of(partition: &[u32]) -> i64 {
    partition.first().map_or(0, |&l| l as i64 - partition.len() as i64)
}

/// N(m, n): the number of partitions of n with rank m, by enumeration.
pub fn rank_count(m: i64, n: u32) -> u64 {
    partitions(n).iter().filter(|p| rank_of(p) == m).count() as u64
}

/// φ₀(q) = Σ_{n≥0} q^{n²} (1+q)(1+q³)…(1+q^{2n−1}).
pub fn fifth_order_phi0(trunc: i64) -> QSeries {
    let t = exp(trunc, 1);
    let minus_one = CycNumber::from_integer(-1);
    let mut total = QSeries::zero(Some(t));
    let mut n: i64 = 0;
    while n * n < trunc {
        let mut term = QSeries::monomial(CycNumber::one(), exp(n * n, 1)).truncate(t);
        for j in 1..=n {
            term = term.mul_one_minus(&minus_one, exp(2 * j - 1, 1));
        }
        total = total.add(&term);
        n += 1;
    }
    total
}

/// χ₀(q) = 1 + Σ_{n≥1} q^n / ((1−q^{n+1})…(1−q^{2n})).
pub fn fifth_order_chi0(trunc: i64) -> QSeries {
    let t = exp(trunc, 1);
    let one = CycNumber::one();
    let mut total = QSeries::one().truncate(t);
    for n in 1..trunc {
        let mut term = QSeries::monomial(one.clone(), exp(n, 1)).truncate(t);
        for j in (n + 1)..=(2 * n) {
            term = term
                .div_one_minus(&one, exp(j, 1), None)
                .expect("positive exponent");
        }
        total = total.add(&term);
    }
    total
}

/// F₀(q) = Σ_{n≥0} q^{2n²} / ((1−q)(1−q³)…(1−q^{2n−1})).
pub fn fifth_order_f0(trunc: i64) -> QSeries {
    let t = exp(trunc, 1);
    let one = CycNumber::one();
    let mut total = QSeries::zero(Some(t));
    let mut n: i64 = 0;
    while 2 * n * n < trunc {
        let mut term = QSeries::monomial(one.clone(), exp(2 * n * n, 1)).truncate(t);
        for j in 1..=n {
            term = term
                .div_one_minus(&one, exp(2 * j - 1, 1), None)
                .expect("positive exponent");
        }
        total = total.add(&term);
        n += 1;
    }
    total
}

/// φ₀(−q) + χ₀(q) − 2F₀(q); identically zero.
pub fn watson_defect(trunc: i64) -> QSeries {
    let phi = fifth_order_phi0(trunc).negate_q().expect("integral exponents");
    let two = CycNumber::from_integer(2);
    phi.add(&fifth_order_chi0(trunc))
        .sub(&fifth_order_f0(trunc).scale(&two))
}
