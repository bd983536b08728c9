//! The coefficients α_h(a,b), β_h(a,b) of H_c, the coefficient table, and
//! exact checks of the transformation identities they must satisfy.
//!
//! Every nonzero coefficient is 1/(2 sin(π/c)) times a short integer
//! combination of 24c²-th roots of unity. The table stores that combination
//! ([`ScaledValue`]) and the verification code works entirely in the integer
//! group ring ℤ[ℤ/24c²], reducing modulo Φ_{24c²} once per comparison.

mod gauss;
mod grading;
mod verify;

pub use gauss::{
    cyclotomic_unit_check, gauss_sum, verify_gauss_lemma, verify_units, GaussReport, UnitCheck,
    UnitReport,
};
pub use grading::{assemble_hc_component, grading_check, GradingComponent, GradingReport, HcAssembler};
pub use verify::{
    verify_alpha_t, verify_beta_t, verify_fixed_points, verify_k_stability, verify_oddness,
    verify_s_ident, verify_support, verify_theorem, Failure, IdentityReport, SDirection,
    TheoremReport, VerifyOptions,
};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::{kronecker_12, CycNumber, RootSum};
use crate::error::{Error, Result};
use crate::special::check_level;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Alpha,
    Beta,
}

/// Level data shared by every computation at a fixed c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level {
    c: i64,
}

impl Level {
    pub fn new(c: u64) -> Result<Self> {
        check_level(c)?;
        Ok(Self { c: c as i64 })
    }

    pub fn c(&self) -> u64 {
        self.c as u64
    }

    /// 12c², the size of the discriminant group.
    pub fn size(&self) -> i64 {
        12 * self.c * self.c
    }

    /// 24c², the order of the roots of unity that occur.
    pub fn order(&self) -> i64 {
        24 * self.c * self.c
    }

    pub fn reduce_h(&self, h: i64) -> i64 {
        h.rem_euclid(self.size())
    }

    /// 1/(2 sin(π/c)); undefined at c = 1, where every coefficient vanishes.
    pub fn inv_two_sin(&self) -> Result<CycNumber> {
        CycNumber::sin_pi(1, self.c as u64).scale_int(2).inv()
    }
}

/// The decomposition h = ±6a + ck (for α) or h = ∓6b + ck (for β).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub sign: i64,
    pub k: i64,
}

/// Σ coeff · ζ_{24c²}^exp; a coefficient equals this times 1/(2 sin(π/c)).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScaledValue {
    pub terms: Vec<(i64, i64)>,
}

impl ScaledValue {
    fn new(lv: &Level, raw: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut merged: BTreeMap<i64, i64> = BTreeMap::new();
        for (coeff, e) in raw {
            *merged.entry(e.rem_euclid(lv.order())).or_default() += coeff;
        }
        Self {
            terms: merged.into_iter().filter(|(_, k)| *k != 0).map(|(e, k)| (k, e)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `k · ζ^shift · self` into an accumulator of order 24c².
    pub fn add_into(&self, acc: &mut RootSum<i128>, shift: i64, k: i64) {
        for &(coeff, e) in &self.terms {
            acc.add_int(e + shift, coeff * k);
        }
    }

    pub fn to_root_sum(&self, lv: &Level) -> RootSum<i128> {
        let mut acc = RootSum::new(lv.order() as u64);
        self.add_into(&mut acc, 0, 1);
        acc
    }

    /// The coefficient itself, 1/(2 sin(π/c)) · Σ coeff ζ^exp.
    pub fn value(&self, lv: &Level) -> CycNumber {
        if self.is_zero() {
            return CycNumber::zero();
        }
        let inv = lv.inv_two_sin().expect("nonzero coefficients only occur for c > 1");
        &self.to_root_sum(lv).to_cyc_exact() * &inv
    }

    pub fn eval_float(&self, lv: &Level) -> num_complex::Complex64 {
        let n = lv.order() as f64;
        let s = 2.0 * (std::f64::consts::PI / lv.c as f64).sin();
        self.terms
            .iter()
            .map(|&(k, e)| num_complex::Complex64::from_polar(k as f64, std::f64::consts::TAU * e as f64 / n))
            .sum::<num_complex::Complex64>()
            / s
    }
}

/// The unique decomposition of h for α at the given a, if any.
pub fn alpha_witness(lv: &Level, h: i64, a: u64) -> Option<Witness> {
    let (c, a) = (lv.c, a as i64);
    let h = lv.reduce_h(h);
    if a == 0 {
        return (h % c == 0).then(|| Witness { sign: 1, k: (h / c).rem_euclid(12 * c) });
    }
    [1, -1].into_iter().find_map(|sign| {
        let r = h - 6 * sign * a;
        (r.rem_euclid(c) == 0).then(|| Witness { sign, k: r.div_euclid(c).rem_euclid(12 * c) })
    })
}

/// The unique decomposition of h for β at the given b, if any.
pub fn beta_witness(lv: &Level, h: i64, b: u64) -> Option<Witness> {
    let (c, b) = (lv.c, b as i64);
    let h = lv.reduce_h(h);
    if b == 0 {
        return (h % c == 0).then(|| Witness { sign: 1, k: (h / c).rem_euclid(12 * c) });
    }
    [1, -1].into_iter().find_map(|sign| {
        let r = h + 6 * sign * b;
        (r.rem_euclid(c) == 0).then(|| Witness { sign, k: r.div_euclid(c).rem_euclid(12 * c) })
    })
}

/// α_h(a,b)·2 sin(π/c) evaluated from the case formula with a given witness.
pub fn alpha_scaled_with(lv: &Level, a: u64, b: u64, w: Witness) -> ScaledValue {
    let (c, a, b) = (lv.c, a as i64, b as i64);
    let chi = kronecker_12(w.k);
    if chi == 0 || (a == 0 && b == 0) {
        return ScaledValue::default();
    }
    if a != 0 {
        ScaledValue::new(lv, [(w.sign * chi, 12 * c * b * (5 + w.sign * w.k))])
    } else {
        if (b * w.k) % c == 0 {
            return ScaledValue::default();
        }
        // 2i sin(πbk/c) e(5b/2c) = e((bk + 5b)/2c) − e((5b − bk)/2c)
        ScaledValue::new(lv, [(chi, 12 * c * (b * w.k + 5 * b)), (-chi, 12 * c * (5 * b - b * w.k))])
    }
}

/// β_h(a,b)·2 sin(π/c) evaluated from the case formula with a given witness.
pub fn beta_scaled_with(lv: &Level, a: u64, b: u64, w: Witness) -> ScaledValue {
    let (c, a, b) = (lv.c, a as i64, b as i64);
    let chi = kronecker_12(w.k);
    if chi == 0 || (a == 0 && b == 0) {
        return ScaledValue::default();
    }
    let quarter = 6 * c * c; // ζ_{24c²}^{6c²} = i
    if b != 0 {
        let e = quarter + 12 * c * (5 * b + w.sign * a * w.k) - 72 * a * b;
        ScaledValue::new(lv, [(w.sign * chi, e)])
    } else {
        if (a * w.k) % c == 0 {
            return ScaledValue::default();
        }
        // −2 sin(πak/c) = i (e(ak/2c) − e(−ak/2c))
        ScaledValue::new(lv, [(chi, quarter + 12 * c * a * w.k), (-chi, quarter - 12 * c * a * w.k)])
    }
}

pub fn alpha_scaled(lv: &Level, h: i64, a: u64, b: u64) -> ScaledValue {
    alpha_witness(lv, h, a)
        .map(|w| alpha_scaled_with(lv, a, b, w))
        .unwrap_or_default()
}

pub fn beta_scaled(lv: &Level, h: i64, a: u64, b: u64) -> ScaledValue {
    beta_witness(lv, h, b)
        .map(|w| beta_scaled_with(lv, a, b, w))
        .unwrap_or_default()
}

fn check_residues(lv: &Level, a: u64, b: u64) -> Result<()> {
    if a >= lv.c() || b >= lv.c() {
        return Err(Error::OutOfRange(format!("need 0 <= a, b < c = {}, got a = {a}, b = {b}", lv.c)));
    }
    Ok(())
}

/// α_h(a,b) for H_c, exactly.
pub fn alpha(h: i64, a: u64, b: u64, c: u64) -> Result<CycNumber> {
    let lv = Level::new(c)?;
    check_residues(&lv, a, b)?;
    Ok(alpha_scaled(&lv, h, a, b).value(&lv))
}

/// β_h(a,b) for H_c, exactly.
pub fn beta(h: i64, a: u64, b: u64, c: u64) -> Result<CycNumber> {
    let lv = Level::new(c)?;
    check_residues(&lv, a, b)?;
    Ok(beta_scaled(&lv, h, a, b).value(&lv))
}

/// All admissible k mod 12c (coprime to 6).
pub fn admissible_k(c: i64) -> impl Iterator<Item = i64> {
    (0..12 * c).filter(|k| kronecker_12(*k) != 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffEntry {
    pub kind: Kind,
    pub h: i64,
    pub a: u64,
    pub b: u64,
    pub witness: Witness,
    pub scaled: ScaledValue,
}

/// Every nonzero α_h(a,b) and β_h(a,b) at level c, keyed by (h, a, b).
#[derive(Clone, Debug)]
pub struct CoeffTable {
    level: Level,
    alpha: BTreeMap<(i64, u64, u64), CoeffEntry>,
    beta: BTreeMap<(i64, u64, u64), CoeffEntry>,
}

impl CoeffTable {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn c(&self) -> u64 {
        self.level.c()
    }

    pub fn entries(&self, kind: Kind) -> impl Iterator<Item = &CoeffEntry> {
        match kind {
            Kind::Alpha => self.alpha.values(),
            Kind::Beta => self.beta.values(),
        }
    }

    pub fn len(&self, kind: Kind) -> usize {
        match kind {
            Kind::Alpha => self.alpha.len(),
            Kind::Beta => self.beta.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty()
    }

    pub fn get(&self, kind: Kind, h: i64, a: u64, b: u64) -> Option<&CoeffEntry> {
        let key = (self.level.reduce_h(h), a, b);
        match kind {
            Kind::Alpha => self.alpha.get(&key),
            Kind::Beta => self.beta.get(&key),
        }
    }

    /// Nonzero entries of the given kind at component h.
    pub fn at(&self, kind: Kind, h: i64) -> impl Iterator<Item = &CoeffEntry> {
        let h = self.level.reduce_h(h);
        let map = match kind {
            Kind::Alpha => &self.alpha,
            Kind::Beta => &self.beta,
        };
        map.range((h, 0, 0)..(h + 1, 0, 0)).map(|(_, e)| e)
    }

    /// Components h with at least one nonzero coefficient.
    pub fn support(&self) -> Vec<i64> {
        let mut hs: Vec<i64> = self.alpha.keys().chain(self.beta.keys()).map(|k| k.0).collect();
        hs.sort_unstable();
        hs.dedup();
        hs
    }

    pub fn to_json(&self) -> CoeffTableJson {
        let scale = if self.is_empty() {
            None
        } else {
            self.level.inv_two_sin().ok()
        };
        CoeffTableJson {
            schema_version: crate::cli::SCHEMA_VERSION,
            c: self.c(),
            root_order: self.level.order(),
            scale,
            alpha: self.alpha.values().cloned().collect(),
            beta: self.beta.values().cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffTableJson {
    pub schema_version: u32,
    pub c: u64,
    pub root_order: i64,
    /// 1/(2 sin(π/c)); absent for an empty table
    pub scale: Option<CycNumber>,
    pub alpha: Vec<CoeffEntry>,
    pub beta: Vec<CoeffEntry>,
}

/// Enumerates the nonzero coefficients directly from the support
/// decompositions, O(c) entries per (a, b).
pub fn build_table(c: u64) -> Result<CoeffTable> {
    let lv = Level::new(c)?;
    let ci = c as i64;
    let mut alpha = BTreeMap::new();
    let mut beta = BTreeMap::new();
    for a in 0..c {
        for b in 0..c {
            if a == 0 && b == 0 {
                continue;
            }
            for k in admissible_k(ci) {
                let signs: &[i64] = if a == 0 { &[1] } else { &[1, -1] };
                for &sign in signs {
                    let h = lv.reduce_h(6 * sign * a as i64 + ci * k);
                    let w = Witness { sign, k };
                    let scaled = alpha_scaled_with(&lv, a, b, w);
                    if !scaled.is_zero() {
                        alpha.insert((h, a, b), CoeffEntry { kind: Kind::Alpha, h, a, b, witness: w, scaled });
                    }
                }
                let signs: &[i64] = if b == 0 { &[1] } else { &[1, -1] };
                for &sign in signs {
                    let h = lv.reduce_h(-6 * sign * b as i64 + ci * k);
                    let w = Witness { sign, k };
                    let scaled = beta_scaled_with(&lv, a, b, w);
                    if !scaled.is_zero() {
                        beta.insert((h, a, b), CoeffEntry { kind: Kind::Beta, h, a, b, witness: w, scaled });
                    }
                }
            }
        }
    }
    Ok(CoeffTable { level: lv, alpha, beta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_a_zero_example() {
        // c = 5, a = 0, b = 1, h = 5: k = 1, value −i
        assert_eq!(alpha(5, 0, 1, 5).unwrap(), -CycNumber::i());
    }

    #[test]
    fn origin_pair_vanishes() {
        for h in 0..300 {
            assert!(alpha(h, 0, 0, 5).unwrap().is_zero());
            assert!(beta(h, 0, 0, 5).unwrap().is_zero());
        }
        assert!(alpha(1, 0, 0, 1).unwrap().is_zero());
    }

    #[test]
    fn beta_b_zero_is_real_sine_ratio() {
        // h = ck with k = 7: −sin(7aπ/c)/sin(π/c) · (12/7)
        let (c, a, k) = (7u64, 2u64, 7i64);
        let got = beta(c as i64 * k, a, 0, c).unwrap();
        let want = CycNumber::sin_pi(a as i64 * k, c)
            .div(&CycNumber::sin_pi(1, c))
            .unwrap()
            .scale_int(-kronecker_12(k));
        assert_eq!(got, want);
        assert_eq!(got.conj(), got);
    }

    #[test]
    fn direct_formula_with_sines() {
        // independent evaluation of the a ≠ 0 α branch and b ≠ 0 β branch
        let c = 7u64;
        let (a, b, k) = (3u64, 2u64, 5i64);
        let h = 6 * a as i64 + c as i64 * k;
        let two_sin = CycNumber::sin_pi(1, c).scale_int(2);
        let want = CycNumber::root_of_unity(b as i64 * (5 + k), 2 * c)
            .scale_int(kronecker_12(k))
            .div(&two_sin)
            .unwrap();
        assert_eq!(alpha(h, a, b, c).unwrap(), want);
        let h = 6 * b as i64 + c as i64 * k; // sign −
        let phase = CycNumber::root_of_unity((5 * b as i64 - a as i64 * k) * c as i64 - 6 * (a * b) as i64, 2 * c * c);
        let want = (&CycNumber::i() * &phase).scale_int(-kronecker_12(k)).div(&two_sin).unwrap();
        assert_eq!(beta(h, a, b, c).unwrap(), want);
    }

    #[test]
    fn level_one_table_is_empty() {
        assert!(build_table(1).unwrap().is_empty());
    }

    #[test]
    fn alpha_count_per_pair() {
        let t = build_table(5).unwrap();
        for a in 1..5u64 {
            for b in 0..5u64 {
                let n = t.entries(Kind::Alpha).filter(|e| e.a == a && e.b == b).count();
                assert_eq!(n, 40, "(a, b) = ({a}, {b})");
            }
        }
    }

    #[test]
    fn table_matches_pointwise_evaluation() {
        let lv = Level::new(5).unwrap();
        let t = build_table(5).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                for h in 0..lv.size() {
                    let s = alpha_scaled(&lv, h, a, b);
                    assert_eq!(t.get(Kind::Alpha, h, a, b).map(|e| &e.scaled), (!s.is_zero()).then_some(&s));
                    let s = beta_scaled(&lv, h, a, b);
                    assert_eq!(t.get(Kind::Beta, h, a, b).map(|e| &e.scaled), (!s.is_zero()).then_some(&s));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_level() {
        assert!(matches!(alpha(1, 1, 1, 4), Err(Error::NotCoprimeToSix(4))));
        assert!(build_table(9).is_err());
    }
}
