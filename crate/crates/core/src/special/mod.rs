//! q-series built on top of [`crate::qseries`]: Eulerian series, the rank
//! generating function, fifth order mock theta functions, the Appell–Lerch
//! sum M(a,b,c;z), the kernel K, N(a,b,c;z), ε(a,b,c;z) and the holomorphic
//! parts of 𝓜 and 𝓝.

mod appell;
mod eulerian;

pub use appell::{appell_m, kernel_k, series_n};
pub use eulerian::{
    eulerian_m, fifth_order_chi0, fifth_order_f0, fifth_order_phi0, partitions, rank_count,
    rank_of, rank_r, watson_defect,
};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{gcd_u64, CycNumber};
use crate::error::{Error, Result};
use crate::qseries::{exp, Exp, QSeries};

/// A level c coprime to 6 together with residues 0 ≤ a, b < c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelParams {
    pub c: u64,
    pub a: u64,
    pub b: u64,
}

impl LevelParams {
    pub fn new(c: u64, a: u64, b: u64) -> Result<Self> {
        check_level(c)?;
        if a >= c || b >= c {
            return Err(Error::OutOfRange(format!(
                "need 0 <= a, b < c, got a = {a}, b = {b}, c = {c}"
            )));
        }
        Ok(Self { c, a, b })
    }

    pub fn is_origin(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// All pairs (a, b) at level c, row-major.
    pub fn all(c: u64) -> Result<Vec<LevelParams>> {
        check_level(c)?;
        Ok((0..c)
            .flat_map(|a| (0..c).map(move |b| LevelParams { c, a, b }))
            .collect())
    }
}

pub fn check_level(c: u64) -> Result<()> {
    if c == 0 || gcd_u64(c, 6) != 1 {
        return Err(Error::NotCoprimeToSix(c));
    }
    Ok(())
}

/// k(b, c): 0, 1, 2, 3 on [0, 1/6), (1/6, 1/2), (1/2, 5/6), (5/6, 1).
pub fn k_of(b: u64, c: u64) -> u32 {
    let (b6, b2) = (6 * b, 2 * b);
    if b6 < c {
        0
    } else if b2 < c {
        1
    } else if b6 < 5 * c {
        2
    } else {
        3
    }
}

/// ε(a,b,c;z) as an exact monomial (or zero).
pub fn epsilon(p: &LevelParams) -> QSeries {
    let (a, b, c) = (p.a as i64, p.b as i64, p.c as i64);
    if p.is_origin() {
        return QSeries::zero(None);
    }
    let den = 24 * c * c;
    if 6 * a < c {
        let coeff = CycNumber::root_of_unity(-2 * b, p.c).scale_int(2);
        QSeries::monomial(coeff, exp(-(6 * a - c).pow(2), den))
    } else if 6 * a > 5 * c {
        QSeries::monomial(CycNumber::from_integer(2), exp(-(6 * a - 5 * c).pow(2), den))
    } else {
        QSeries::zero(None)
    }
}

/// Exponent (3a/2c)(1 − a/c) − 1/24 of the 𝓜 prefactor.
pub fn holo_m_shift(p: &LevelParams) -> Exp {
    let (a, c) = (p.a as i64, p.c as i64);
    exp(36 * a * c - 36 * a * a - c * c, 24 * c * c)
}

/// Exponent (b/c)k(b,c) − 3b²/2c² − 1/24 of the 𝓝 prefactor.
pub fn holo_n_shift(p: &LevelParams) -> Exp {
    let (b, c) = (p.b as i64, p.c as i64);
    let k = k_of(p.b, p.c) as i64;
    exp(24 * b * k * c - 36 * b * b - c * c, 24 * c * c)
}

/// 2 q^{(3a/2c)(1−a/c)−1/24} M(a,b,c;z) + ε(a,b,c;z).
pub fn holo_m(p: &LevelParams, trunc: Exp) -> Result<QSeries> {
    if p.is_origin() {
        return Ok(QSeries::zero(Some(trunc)));
    }
    let s = holo_m_shift(p);
    let m = appell_m(p, trunc - s)?;
    Ok(m.scale(&CycNumber::from_integer(2))
        .shift(s)
        .add(&epsilon(p).truncate(trunc)))
}

/// The phase 4 e(−(a/c)k + (3b/2c)(2a/c − 1) − b/c) of the 𝓝 prefactor.
pub fn holo_n_phase(p: &LevelParams) -> CycNumber {
    let (a, b, c) = (p.a as i64, p.b as i64, p.c as i64);
    let k = k_of(p.b, p.c) as i64;
    CycNumber::root_of_unity(-2 * a * k * c + 6 * a * b - 5 * b * c, 2 * p.c * p.c).scale_int(4)
}

/// 4 e(…) q^{(b/c)k − 3b²/2c² − 1/24} N(a,b,c;z).
pub fn holo_n(p: &LevelParams, trunc: Exp) -> Result<QSeries> {
    if p.is_origin() {
        return Ok(QSeries::zero(Some(trunc)));
    }
    let s = holo_n_shift(p);
    Ok(series_n(p, trunc - s)?.scale(&holo_n_phase(p)).shift(s))
}

/// Named series for the command line and for serialized exports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesFunction {
    EulerianM,
    RankR,
    Phi0,
    Chi0,
    F0,
    AppellM,
    KernelK,
    SeriesN,
    Epsilon,
    HoloM,
    HoloN,
}

impl SeriesFunction {
    pub const ALL: [SeriesFunction; 11] = [
        Self::EulerianM,
        Self::RankR,
        Self::Phi0,
        Self::Chi0,
        Self::F0,
        Self::AppellM,
        Self::KernelK,
        Self::SeriesN,
        Self::Epsilon,
        Self::HoloM,
        Self::HoloN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::EulerianM => "eulerian_m",
            Self::RankR => "rank_r",
            Self::Phi0 => "phi0",
            Self::Chi0 => "chi0",
            Self::F0 => "f0",
            Self::AppellM => "appell_m",
            Self::KernelK => "kernel_k",
            Self::SeriesN => "n",
            Self::Epsilon => "epsilon",
            Self::HoloM => "holo_m",
            Self::HoloN => "holo_n",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        let f = match key.as_str() {
            "m" | "appell_m" => Self::AppellM,
            "eulerian_m" | "mrq" => Self::EulerianM,
            "r" | "rank_r" => Self::RankR,
            "phi0" => Self::Phi0,
            "chi0" => Self::Chi0,
            "f0" => Self::F0,
            "k" | "kernel_k" => Self::KernelK,
            "n" | "series_n" => Self::SeriesN,
            "epsilon" | "eps" => Self::Epsilon,
            "holo_m" => Self::HoloM,
            "holo_n" => Self::HoloN,
            _ => return Err(Error::UnknownFunction(s.to_string())),
        };
        Ok(f)
    }

    /// Evaluates the series at (a, b, c) below q^order. `KernelK` reads its
    /// index n from `b`'s slot via `n`.
    pub fn expand(self, a: u64, b: u64, c: u64, n: i64, order: Exp) -> Result<QSeries> {
        let t = order;
        let int_order = order.ceil().to_integer();
        match self {
            Self::EulerianM => {
                check_level(c)?;
                eulerian_m(a, c, t)
            }
            Self::RankR => rank_r(a, c, t),
            Self::Phi0 => Ok(fifth_order_phi0(int_order)),
            Self::Chi0 => Ok(fifth_order_chi0(int_order)),
            Self::F0 => Ok(fifth_order_f0(int_order)),
            Self::AppellM => appell_m(&LevelParams::new(c, a, b)?, t),
            Self::KernelK => kernel_k(&LevelParams::new(c, a, b)?, n, t),
            Self::SeriesN => series_n(&LevelParams::new(c, a, b)?, t),
            Self::Epsilon => Ok(epsilon(&LevelParams::new(c, a, b)?).truncate(t)),
            Self::HoloM => holo_m(&LevelParams::new(c, a, b)?, t),
            Self::HoloN => holo_n(&LevelParams::new(c, a, b)?, t),
        }
    }
}

impl std::str::FromStr for SeriesFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// q^n coefficient of R(e(a/c), q) from rank counts: Σ_m N(m, n) e(am/c).
pub fn rank_coefficient_from_counts(a: u64, c: u64, n: u32) -> CycNumber {
    partitions(n)
        .iter()
        .map(|p| CycNumber::root_of_unity(a as i64 * rank_of(p), c))
        .sum()
}

/// Outcome of comparing the Appell–Lerch M(a,0,c) with the Eulerian M(a/c, q).
#[derive(Clone, Debug, Serialize)]
pub struct AppellEulerianComparison {
    pub a: u64,
    pub c: u64,
    pub order: i64,
    pub agrees: bool,
    /// First exponent (as "num/den") at which the two series differ.
    pub first_difference: Option<String>,
}

pub fn compare_appell_eulerian(a: u64, c: u64, order: i64) -> Result<AppellEulerianComparison> {
    let t = exp(order, 1);
    let m1 = appell_m(&LevelParams::new(c, a, 0)?, t)?;
    let m2 = eulerian_m(a, c, t)?;
    let cmp = m1.compare(&m2);
    Ok(AppellEulerianComparison {
        a,
        c,
        order,
        agrees: cmp.agrees(),
        first_difference: cmp.first_difference.map(|e| e.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_of_ranges() {
        assert_eq!(k_of(0, 5), 0);
        assert_eq!(k_of(3, 5), 2);
        assert_eq!(k_of(1, 7), 0);
        assert_eq!(k_of(1, 5), 1);
        assert_eq!(k_of(4, 5), 2);
        assert_eq!(k_of(6, 7), 3);
    }

    #[test]
    fn level_params_validation() {
        assert!(LevelParams::new(6, 1, 1).is_err());
        assert!(LevelParams::new(5, 5, 1).is_err());
        assert!(LevelParams::new(35, 34, 0).is_ok());
        assert_eq!(LevelParams::all(5).unwrap().len(), 25);
    }

    #[test]
    fn epsilon_cases() {
        let e = epsilon(&LevelParams::new(5, 0, 2).unwrap());
        let want = QSeries::monomial(CycNumber::root_of_unity(-4, 5).scale_int(2), exp(-1, 24));
        assert_eq!(e, want);
        assert!(epsilon(&LevelParams::new(5, 1, 0).unwrap()).is_zero());
        let top = epsilon(&LevelParams::new(7, 6, 3).unwrap());
        assert_eq!(top.min_exponent(), Some(exp(-1, 24 * 49)));
    }

    #[test]
    fn origin_vanishes() {
        let p = LevelParams::new(5, 0, 0).unwrap();
        assert!(holo_m(&p, exp(3, 1)).unwrap().is_zero());
        assert!(holo_n(&p, exp(3, 1)).unwrap().is_zero());
        assert!(epsilon(&p).is_zero());
    }

    #[test]
    fn rank_r_matches_counts() {
        for c in [5u64, 7] {
            for a in 0..c {
                let r = rank_r(a, c, exp(13, 1)).unwrap();
                for n in 0..13u32 {
                    assert_eq!(
                        r.coeff(exp(n as i64, 1)),
                        rank_coefficient_from_counts(a, c, n),
                        "a={a} c={c} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn n_at_b_zero_is_scaled_rank() {
        for (a, c) in [(1u64, 5u64), (2, 5), (3, 7)] {
            let t = exp(15, 1);
            let n = series_n(&LevelParams::new(c, a, 0).unwrap(), t).unwrap();
            let lhs = n.scale(&CycNumber::sin_pi(a as i64, c).scale_int(4));
            let rhs = rank_r(a, c, t).unwrap();
            assert!(lhs.compare(&rhs).agrees(), "a={a} c={c}");
        }
    }

    #[test]
    fn exponents_in_level_grid() {
        for p in LevelParams::all(5).unwrap().into_iter().filter(|p| !p.is_origin()) {
            for s in [holo_m(&p, exp(2, 1)).unwrap(), holo_n(&p, exp(2, 1)).unwrap()] {
                assert_eq!(600 % s.denom(), 0, "{p:?} denom {}", s.denom());
            }
        }
    }

    #[test]
    fn function_names_round_trip() {
        for f in SeriesFunction::ALL {
            assert_eq!(SeriesFunction::parse(f.name()).unwrap(), f);
        }
        assert!(SeriesFunction::parse("zeta").is_err());
    }
}
