//! The character sum Σ_{k mod 12c} (12/k) e(kl/12c) and the cyclotomic-unit
//! property of sin(bkπ/c)/sin(π/c).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::{gcd_u64, kronecker_12, prime_factors, CycNumber, RootSum};
use crate::error::{Error, Result};
use crate::special::check_level;

fn character_sum(c: u64, l: i64) -> RootSum<i128> {
    let n = 12 * c as i64;
    let mut acc = RootSum::new(n as u64);
    for k in 0..n {
        let chi = kronecker_12(k);
        if chi != 0 {
            acc.add_int(k * l % n, chi);
        }
    }
    acc
}

/// c√12·(12/(l/c)) if c | l, else 0, as a group-ring element of order 12c.
fn closed_form(c: u64, l: i64) -> RootSum<i128> {
    let ci = c as i64;
    let mut acc = RootSum::new(12 * c);
    if l.rem_euclid(ci) == 0 {
        let chi = kronecker_12(l / ci);
        // √12 = 2(ζ_12 + ζ_12^{-1}) and ζ_12 = ζ_{12c}^c
        acc.add_int(ci, 2 * ci * chi);
        acc.add_int(-ci, 2 * ci * chi);
    }
    acc
}

/// Σ_{k mod 12c} (12/k) e(kl/12c), exactly.
pub fn gauss_sum(c: u64, l: i64) -> Result<CycNumber> {
    check_level(c)?;
    Ok(character_sum(c, l).to_cyc_exact())
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussFailure {
    pub l: i64,
    pub sum: CycNumber,
    pub expected: CycNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussReport {
    pub schema_version: u32,
    pub identity: String,
    pub c: u64,
    pub instances_checked: u64,
    pub failures: Vec<GaussFailure>,
}

impl GaussReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the character sum with its closed form for every l mod 12c.
pub fn verify_gauss_lemma(c: u64) -> Result<GaussReport> {
    check_level(c)?;
    let n = 12 * c as i64;
    let mut failures = Vec::new();
    for l in 0..n {
        let s = character_sum(c, l);
        let f = closed_form(c, l);
        if !s.sub(&f).vanishes() {
            failures.push(GaussFailure {
                l,
                sum: s.to_cyc_exact(),
                expected: f.to_cyc_exact(),
            });
        }
    }
    Ok(GaussReport {
        schema_version: crate::cli::SCHEMA_VERSION,
        identity: "gauss_lemma".into(),
        c,
        instances_checked: n as u64,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitCheck {
    pub b: u64,
    pub k: i64,
    pub ratio: CycNumber,
    pub inverse: CycNumber,
    pub unit: bool,
}

fn require_prime_power(c: u64) -> Result<()> {
    check_level(c)?;
    if c == 1 || prime_factors(c).len() != 1 {
        return Err(Error::NotPrimePower(c));
    }
    Ok(())
}

fn unit_of(c: u64, m: i64) -> Result<(CycNumber, CycNumber)> {
    let ratio = CycNumber::sin_pi(m, c).div(&CycNumber::sin_pi(1, c))?;
    let inverse = ratio.inv()?;
    Ok((ratio, inverse))
}

/// sin(bkπ/c)/sin(π/c) and its reciprocal are both algebraic integers.
pub fn cyclotomic_unit_check(c: u64, b: u64, k: i64) -> Result<UnitCheck> {
    require_prime_power(c)?;
    if gcd_u64(b * k.unsigned_abs(), c) != 1 {
        return Err(Error::OutOfRange(format!("need gcd(bk, c) = 1, got b = {b}, k = {k}, c = {c}")));
    }
    let (ratio, inverse) = unit_of(c, b as i64 * k)?;
    let unit = ratio.is_algebraic_integer() && inverse.is_algebraic_integer();
    Ok(UnitCheck { b, k, ratio, inverse, unit })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitReport {
    pub schema_version: u32,
    pub identity: String,
    pub c: u64,
    pub instances_checked: u64,
    /// distinct values of bk mod 2c that were inverted
    pub distinct_ratios: u64,
    pub failures: Vec<UnitCheck>,
}

impl UnitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sweeps 1 ≤ b < c and k mod 12c with gcd(k, 6) = gcd(bk, c) = 1. The ratio
/// depends only on bk mod 2c, so each residue is inverted once.
pub fn verify_units(c: u64) -> Result<UnitReport> {
    require_prime_power(c)?;
    let mut cache: BTreeMap<i64, (CycNumber, CycNumber, bool)> = BTreeMap::new();
    let mut n = 0;
    let mut failures = Vec::new();
    for b in 1..c {
        for k in 1..(12 * c as i64) {
            if kronecker_12(k) == 0 || gcd_u64(b * k as u64, c) != 1 {
                continue;
            }
            n += 1;
            let m = (b as i64 * k).rem_euclid(2 * c as i64);
            if !cache.contains_key(&m) {
                let (r, inv) = unit_of(c, m)?;
                let ok = r.is_algebraic_integer() && inv.is_algebraic_integer();
                cache.insert(m, (r, inv, ok));
            }
            let (r, inv, ok) = &cache[&m];
            if !ok {
                failures.push(UnitCheck { b, k, ratio: r.clone(), inverse: inv.clone(), unit: false });
            }
        }
    }
    Ok(UnitReport {
        schema_version: crate::cli::SCHEMA_VERSION,
        identity: "cyclotomic_unit".into(),
        c,
        instances_checked: n,
        distinct_ratios: cache.len() as u64,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_sum_is_sqrt12() {
        assert_eq!(gauss_sum(1, 1).unwrap(), CycNumber::sqrt12());
    }

    #[test]
    fn vanishes_off_multiples() {
        assert!(gauss_sum(5, 3).unwrap().is_zero());
    }

    #[test]
    fn multiple_of_c() {
        // (12/5) = −1
        assert_eq!(gauss_sum(5, 25).unwrap(), CycNumber::sqrt12().scale_int(-5));
    }

    #[test]
    fn lemma_holds() {
        for c in [1, 5, 7, 25, 35] {
            assert!(verify_gauss_lemma(c).unwrap().passed(), "c = {c}");
        }
    }

    #[test]
    fn unit_examples() {
        assert!(cyclotomic_unit_check(5, 2, 1).unwrap().unit);
        assert!(cyclotomic_unit_check(25, 3, 7).unwrap().unit);
        assert!(cyclotomic_unit_check(7, 1, 1).unwrap().ratio.is_one());
        assert!(matches!(cyclotomic_unit_check(35, 1, 1), Err(Error::NotPrimePower(35))));
        assert!(cyclotomic_unit_check(5, 5, 1).is_err());
    }

    #[test]
    fn non_unit_is_detected() {
        // 2 sin(π/c) itself is not a unit for prime c: its norm is c
        let x = CycNumber::sin_pi(1, 5).scale_int(2);
        assert!(x.is_algebraic_integer());
        assert!(!x.inv().unwrap().is_algebraic_integer());
    }
}
