//! Exact checks of the T- and S-transformation identities, oddness, fixed
//! points, witness stability and support invariants.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{kronecker_12, CycNumber, RootSum};
use crate::error::Result;

use super::{
    alpha_scaled, alpha_scaled_with, alpha_witness, beta_scaled, beta_scaled_with, beta_witness,
    build_table, CoeffTable, Kind, Level, ScaledValue, Witness,
};

/// One failed instance, with both sides as exact field elements.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub h: i64,
    pub a: u64,
    pub b: u64,
    pub lhs: CycNumber,
    pub rhs: CycNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub c: u64,
    pub instances_checked: u64,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(identity: &str, c: u64, parts: Vec<(u64, Vec<Failure>)>) -> Self {
        let mut instances_checked = 0;
        let mut failures = Vec::new();
        for (n, f) in parts {
            instances_checked += n;
            failures.extend(f);
        }
        Self {
            identity: identity.to_string(),
            c,
            instances_checked,
            failures,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub schema_version: u32,
    pub c: u64,
    pub exhaustive: bool,
    pub alpha_entries: usize,
    pub beta_entries: usize,
    pub identities: Vec<IdentityReport>,
    pub failures: usize,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// sweep every h for the S identities regardless of c
    pub exhaustive: bool,
    /// off-support h sampled per (a, b) when not exhaustive
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            exhaustive: false,
            samples: 48,
            seed: 0x5eed,
        }
    }
}

/// Levels up to this one are always swept exhaustively.
const EXHAUSTIVE_UP_TO: u64 = 7;

fn pairs(c: u64) -> Vec<(u64, u64)> {
    (0..c).flat_map(|a| (0..c).map(move |b| (a, b))).collect()
}

fn to_value(lv: &Level, acc: &RootSum<i128>) -> CycNumber {
    let x = acc.to_cyc_exact();
    if x.is_zero() {
        return x;
    }
    &x * &lv.inv_two_sin().expect("nonzero value at c > 1")
}

/// lhs − ζ^shift·rhs as a group-ring element; zero iff lhs = ζ^shift·rhs.
fn difference(lv: &Level, lhs: &ScaledValue, rhs: &ScaledValue, shift: i64) -> RootSum<i128> {
    let mut acc = lhs.to_root_sum(lv);
    rhs.add_into(&mut acc, shift, -1);
    acc
}

fn failure(lv: &Level, h: i64, a: u64, b: u64, lhs: &RootSum<i128>, rhs: &RootSum<i128>) -> Failure {
    Failure {
        h,
        a,
        b,
        lhs: to_value(lv, lhs),
        rhs: to_value(lv, rhs),
    }
}

/// α_h(a,[a+b]_c) = e(h²/24c² + 5a/2c − 3a²/2c² − 1/24) α_h(a,b) on the support.
pub fn verify_alpha_t(c: u64) -> Result<IdentityReport> {
    let lv = Level::new(c)?;
    let ci = c as i64;
    let parts = pairs(c)
        .into_par_iter()
        .map(|(a, b)| {
            let mut n = 0;
            let mut fails = Vec::new();
            let b2 = (a + b) % c;
            for h in 0..lv.size() {
                if alpha_witness(&lv, h, a).is_none() {
                    continue;
                }
                let lhs = alpha_scaled(&lv, h, a, b2);
                let rhs = alpha_scaled(&lv, h, a, b);
                if lhs.is_zero() && rhs.is_zero() {
                    continue;
                }
                n += 1;
                let ai = a as i64;
                let shift = h * h + 60 * ai * ci - 36 * ai * ai - ci * ci;
                if !difference(&lv, &lhs, &rhs, shift).vanishes() {
                    let mut r = RootSum::new(lv.order() as u64);
                    rhs.add_into(&mut r, shift, 1);
                    fails.push(failure(&lv, h, a, b, &lhs.to_root_sum(&lv), &r));
                }
            }
            (n, fails)
        })
        .collect();
    Ok(IdentityReport::merge("alpha_T", c, parts))
}

/// β_h([a−b]_c,b) = e(h²/24c² + 3b²/2c² − 1/24)·(1 or e(1/2 − 3b/c))·β_h(a,b).
pub fn verify_beta_t(c: u64) -> Result<IdentityReport> {
    let lv = Level::new(c)?;
    let ci = c as i64;
    let parts = pairs(c)
        .into_par_iter()
        .map(|(a, b)| {
            let mut n = 0;
            let mut fails = Vec::new();
            let a2 = (a + c - b) % c;
            for h in 0..lv.size() {
                if beta_witness(&lv, h, b).is_none() {
                    continue;
                }
                let lhs = beta_scaled(&lv, h, a2, b);
                let rhs = beta_scaled(&lv, h, a, b);
                if lhs.is_zero() && rhs.is_zero() {
                    continue;
                }
                n += 1;
                let bi = b as i64;
                let mut shift = h * h + 36 * bi * bi - ci * ci;
                if a < b {
                    shift += 12 * ci * ci - 72 * bi * ci;
                }
                if !difference(&lv, &lhs, &rhs, shift).vanishes() {
                    let mut r = RootSum::new(lv.order() as u64);
                    rhs.add_into(&mut r, shift, 1);
                    fails.push(failure(&lv, h, a, b, &lhs.to_root_sum(&lv), &r));
                }
            }
            (n, fails)
        })
        .collect();
    Ok(IdentityReport::merge("beta_T", c, parts))
}

/// Which side is transformed: α → β is the S identity itself, β → α its converse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SDirection {
    AlphaToBeta,
    BetaToAlpha,
}

/// (i/(c√12)) Σ_{h′} e(hh′/12c²) x_{h′}(a,b) = y_h(a,b), with (x, y) = (α, β)
/// or (β, α). Both sides are multiplied by 2 sin(π/c)·c√12 and compared in
/// ℤ[ζ_{24c²}], using √12 = 2(ζ_12 + ζ_12^{−1}).
pub fn verify_s_ident(c: u64, dir: SDirection, opts: VerifyOptions) -> Result<IdentityReport> {
    let lv = Level::new(c)?;
    let ci = c as i64;
    let exhaustive = opts.exhaustive || c <= EXHAUSTIVE_UP_TO;
    let (src, dst) = match dir {
        SDirection::AlphaToBeta => (alpha_scaled as fn(&Level, i64, u64, u64) -> ScaledValue, beta_scaled as fn(&Level, i64, u64, u64) -> ScaledValue),
        SDirection::BetaToAlpha => (beta_scaled as fn(&Level, i64, u64, u64) -> ScaledValue, alpha_scaled as fn(&Level, i64, u64, u64) -> ScaledValue),
    };
    let name = match dir {
        SDirection::AlphaToBeta => "S_ident",
        SDirection::BetaToAlpha => "S_ident_converse",
    };
    let quarter = 6 * ci * ci;
    let twelfth = 2 * ci * ci;
    let parts = pairs(c)
        .into_par_iter()
        .map(|(a, b)| {
            let source: Vec<(i64, ScaledValue)> = (0..lv.size())
                .map(|h| (h, src(&lv, h, a, b)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let hs: Vec<i64> = if exhaustive {
                (0..lv.size()).collect()
            } else {
                let mut on: Vec<i64> = (0..lv.size()).filter(|&h| !dst(&lv, h, a, b).is_zero()).collect();
                let mut off: Vec<i64> = (0..lv.size()).filter(|&h| dst(&lv, h, a, b).is_zero()).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (a << 32) ^ (b << 16) ^ c);
                off.shuffle(&mut rng);
                off.truncate(opts.samples);
                on.extend(off);
                on.sort_unstable();
                on
            };
            let mut fails = Vec::new();
            for &h in &hs {
                let mut lhs = RootSum::new(lv.order() as u64);
                for (h2, v) in &source {
                    v.add_into(&mut lhs, quarter + 2 * (h * h2 % lv.size()), 1);
                }
                let target = dst(&lv, h, a, b);
                let mut rhs = RootSum::new(lv.order() as u64);
                target.add_into(&mut rhs, twelfth, 2 * ci);
                target.add_into(&mut rhs, -twelfth, 2 * ci);
                if !lhs.sub(&rhs).vanishes() {
                    // report the unscaled sides: divide the common factor c√12 back out
                    let scale = CycNumber::sqrt12().scale_int(ci).inv().expect("nonzero");
                    fails.push(Failure {
                        h,
                        a,
                        b,
                        lhs: &to_value(&lv, &lhs) * &scale,
                        rhs: &to_value(&lv, &rhs) * &scale,
                    });
                }
            }
            (hs.len() as u64, fails)
        })
        .collect();
    Ok(IdentityReport::merge(name, c, parts))
}

/// α_h = −α_{−h} and β_h = −β_{−h} on every table entry.
pub fn verify_oddness(table: &CoeffTable) -> IdentityReport {
    let lv = table.level();
    let mut n = 0;
    let mut fails = Vec::new();
    for kind in [Kind::Alpha, Kind::Beta] {
        for e in table.entries(kind) {
            n += 1;
            let mirror = match kind {
                Kind::Alpha => alpha_scaled(&lv, -e.h, e.a, e.b),
                Kind::Beta => beta_scaled(&lv, -e.h, e.a, e.b),
            };
            let mut acc = e.scaled.to_root_sum(&lv);
            mirror.add_into(&mut acc, 0, 1);
            if !acc.vanishes() {
                fails.push(failure(&lv, e.h, e.a, e.b, &e.scaled.to_root_sum(&lv), &mirror.to_root_sum(&lv)));
            }
        }
    }
    IdentityReport::merge("oddness", lv.c(), vec![(n, fails)])
}

/// h = 0 and h = 6c² are fixed by h ↦ −h, so every coefficient there is 0.
pub fn verify_fixed_points(c: u64) -> Result<IdentityReport> {
    let lv = Level::new(c)?;
    let mut n = 0;
    let mut fails = Vec::new();
    let zero = RootSum::new(lv.order() as u64);
    for h in [0, lv.size() / 2] {
        for (a, b) in pairs(c) {
            for v in [alpha_scaled(&lv, h, a, b), beta_scaled(&lv, h, a, b)] {
                n += 1;
                let acc = v.to_root_sum(&lv);
                if !acc.vanishes() {
                    fails.push(failure(&lv, h, a, b, &acc, &zero));
                }
            }
        }
    }
    Ok(IdentityReport::merge("fixed_points", c, vec![(n, fails)]))
}

/// Values are unchanged when the witness k is replaced by k + 12c.
pub fn verify_k_stability(table: &CoeffTable) -> IdentityReport {
    let lv = table.level();
    let shift = 12 * lv.c() as i64;
    let mut n = 0;
    let mut fails = Vec::new();
    for kind in [Kind::Alpha, Kind::Beta] {
        for e in table.entries(kind) {
            n += 1;
            let w = Witness { sign: e.witness.sign, k: e.witness.k + shift };
            let moved = match kind {
                Kind::Alpha => alpha_scaled_with(&lv, e.a, e.b, w),
                Kind::Beta => beta_scaled_with(&lv, e.a, e.b, w),
            };
            if !difference(&lv, &e.scaled, &moved, 0).vanishes() {
                fails.push(failure(&lv, e.h, e.a, e.b, &e.scaled.to_root_sum(&lv), &moved.to_root_sum(&lv)));
            }
        }
    }
    IdentityReport::merge("k_stability", lv.c(), vec![(n, fails)])
}

/// Each entry's witness reproduces h, has k coprime to 6, and the sign is the
/// only one that works.
pub fn verify_support(table: &CoeffTable) -> IdentityReport {
    let lv = table.level();
    let ci = lv.c() as i64;
    let mut n = 0;
    let mut fails = Vec::new();
    for kind in [Kind::Alpha, Kind::Beta] {
        for e in table.entries(kind) {
            n += 1;
            let w = e.witness;
            let (r, rebuilt) = match kind {
                Kind::Alpha => (e.a as i64, lv.reduce_h(6 * w.sign * e.a as i64 + ci * w.k)),
                Kind::Beta => (e.b as i64, lv.reduce_h(-6 * w.sign * e.b as i64 + ci * w.k)),
            };
            let other_sign_fits = r != 0 && (e.h + 6 * w.sign * r * if kind == Kind::Alpha { 1 } else { -1 }).rem_euclid(ci) == 0;
            let ok = rebuilt == e.h && kronecker_12(w.k) != 0 && !other_sign_fits;
            if !ok {
                let zero = RootSum::new(lv.order() as u64);
                fails.push(failure(&lv, e.h, e.a, e.b, &e.scaled.to_root_sum(&lv), &zero));
            }
        }
    }
    IdentityReport::merge("support", lv.c(), vec![(n, fails)])
}

/// Runs every check of the transformation identities at level c.
pub fn verify_theorem(c: u64, opts: VerifyOptions) -> Result<TheoremReport> {
    let table = build_table(c)?;
    let identities = vec![
        verify_alpha_t(c)?,
        verify_beta_t(c)?,
        verify_s_ident(c, SDirection::AlphaToBeta, opts)?,
        verify_s_ident(c, SDirection::BetaToAlpha, opts)?,
        verify_oddness(&table),
        verify_fixed_points(c)?,
        verify_k_stability(&table),
        verify_support(&table),
    ];
    let failures = identities.iter().map(|r| r.failures.len()).sum();
    Ok(TheoremReport {
        schema_version: crate::cli::SCHEMA_VERSION,
        c,
        exhaustive: opts.exhaustive || c <= EXHAUSTIVE_UP_TO,
        alpha_entries: table.len(Kind::Alpha),
        beta_entries: table.len(Kind::Beta),
        identities,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_five_all_identities() {
        let r = verify_theorem(5, VerifyOptions::default()).unwrap();
        for id in &r.identities {
            assert!(id.passed(), "{}: {:?}", id.identity, id.failures.first());
        }
        let s = r.identities.iter().find(|i| i.identity == "S_ident").unwrap();
        assert_eq!(s.instances_checked, 300 * 25);
    }

    #[test]
    fn level_one_is_trivial() {
        let r = verify_theorem(1, VerifyOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.alpha_entries + r.beta_entries, 0);
    }

    #[test]
    fn broken_coefficient_is_caught() {
        // perturb β by a sign: the S identity must now fail at its support
        let lv = Level::new(5).unwrap();
        let (a, b) = (2u64, 3u64);
        let h = (0..lv.size()).find(|&h| !beta_scaled(&lv, h, a, b).is_zero()).unwrap();
        let mut lhs = RootSum::new(lv.order() as u64);
        for h2 in 0..lv.size() {
            alpha_scaled(&lv, h2, a, b).add_into(&mut lhs, 30 * 5 + 2 * (h * h2 % lv.size()), 1);
        }
        let t = beta_scaled(&lv, h, a, b);
        let mut good = RootSum::new(lv.order() as u64);
        t.add_into(&mut good, 50, 10);
        t.add_into(&mut good, -50, 10);
        assert!(lhs.sub(&good).vanishes());
        let mut bad = RootSum::new(lv.order() as u64);
        t.add_into(&mut bad, 50, -10);
        t.add_into(&mut bad, -50, -10);
        assert!(!lhs.sub(&bad).vanishes());
    }

    #[test]
    fn sampled_mode_at_larger_level() {
        let opts = VerifyOptions { exhaustive: false, samples: 4, seed: 1 };
        let r = verify_s_ident(11, SDirection::AlphaToBeta, opts).unwrap();
        assert!(r.passed());
        assert!(r.instances_checked < 121 * 12 * 121);
    }
}
