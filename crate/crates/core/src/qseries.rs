//! Truncated formal Laurent–Puiseux series in q with cyclotomic coefficients.
//!
//! Exponents are rationals with a common denominator `D`; the value carries its
//! own truncation bound `T` (coefficients of q^e for e ≥ T are unknown), or no
//! bound at all when the series is an exact finite sum. Every operation
//! computes the bound that its inputs justify.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// Rational exponent of q.
pub type Exp = Ratio<i64>;

pub fn exp(num: i64, den: i64) -> Exp {
    Ratio::new(num, den)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    denom: i64,
    /// truncation bound as a numerator over `denom`; `None` means exact
    trunc: Option<i64>,
    coeffs: BTreeMap<i64, CycNumber>,
}

/// Outcome of comparing two series over their common known range.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesComparison {
    /// both series are known below this exponent (`None`: everywhere)
    pub common_trunc: Option<Exp>,
    /// smallest exponent below `common_trunc` where the coefficients differ
    pub first_difference: Option<Exp>,
}

impl SeriesComparison {
    pub fn agrees(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Order of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochhammerOrder {
    Finite(u32),
    Infinite,
}

impl QSeries {
    pub fn zero(trunc: Option<Exp>) -> Self {
        let denom = trunc.map_or(1, |t| *t.denom());
        Self {
            denom,
            trunc: trunc.map(|t| *t.numer()),
            coeffs: BTreeMap::new(),
        }
    }

    /// c·q^e, known exactly.
    pub fn monomial(c: CycNumber, e: Exp) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(*e.numer(), c);
        }
        Self {
            denom: *e.denom(),
            trunc: None,
            coeffs,
        }
    }

    pub fn one() -> Self {
        Self::monomial(CycNumber::one(), exp(0, 1))
    }

    pub fn constant(c: CycNumber) -> Self {
        Self::monomial(c, exp(0, 1))
    }

    /// Builds a series from exponent/coefficient pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, CycNumber)>, trunc: Option<Exp>) -> Self {
        let mut s = Self::zero(trunc);
        for (e, c) in terms {
            s = s.add(&Self::monomial(c, e));
        }
        s
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn trunc(&self) -> Option<Exp> {
        self.trunc.map(|t| Ratio::new(t, self.denom))
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &CycNumber)> + '_ {
        self.coeffs.iter().map(move |(n, c)| (Ratio::new(*n, self.denom), c))
    }

    /// Exponent numerators over [`denom`](Self::denom) with coefficients.
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &CycNumber)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn coeff(&self, e: Exp) -> CycNumber {
        let scaled = e * self.denom;
        if !scaled.is_integer() {
            return CycNumber::zero();
        }
        self.coeffs.get(&scaled.to_integer()).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<Exp> {
        self.coeffs.keys().next().map(|n| Ratio::new(*n, self.denom))
    }

    pub fn leading(&self) -> Option<(Exp, &CycNumber)> {
        self.terms().next()
    }

    /// Same series with exponent denominator `d` (a multiple of the current one).
    pub fn rescaled(&self, d: i64) -> Self {
        assert!(d % self.denom == 0, "denominator {d} is not a multiple of {}", self.denom);
        let f = d / self.denom;
        if f == 1 {
            return self.clone();
        }
        Self {
            denom: d,
            trunc: self.trunc.map(|t| t * f),
            coeffs: self.coeffs.iter().map(|(n, c)| (n * f, c.clone())).collect(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let d = self.denom.lcm(&other.denom);
        (self.rescaled(d), other.rescaled(d))
    }

    /// Drops every term at or beyond `t` and lowers the bound to `t`.
    pub fn truncate(&self, t: Exp) -> Self {
        let d = self.denom.lcm(t.denom());
        let mut s = self.rescaled(d);
        let tn = *(t * d).numer();
        let tn = s.trunc.map_or(tn, |old| old.min(tn));
        s.trunc = Some(tn);
        s.coeffs.retain(|n, _| *n < tn);
        s.simplify_denom()
    }

    /// Reduces the exponent denominator to the smallest one that still
    /// represents every stored exponent and the bound.
    fn simplify_denom(mut self) -> Self {
        let mut g = self.denom;
        for n in self.coeffs.keys() {
            g = g.gcd(n);
        }
        if let Some(t) = self.trunc {
            g = g.gcd(&t);
        }
        if g > 1 {
            self.denom /= g;
            self.trunc = self.trunc.map(|t| t / g);
            self.coeffs = std::mem::take(&mut self.coeffs)
                .into_iter()
                .map(|(n, c)| (n / g, c))
                .collect();
        }
        self
    }

    fn insert_add(map: &mut BTreeMap<i64, CycNumber>, n: i64, c: CycNumber) {
        if c.is_zero() {
            return;
        }
        match map.remove(&n) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    map.insert(n, s);
                }
            }
            None => {
                map.insert(n, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let trunc = match (a.trunc, b.trunc) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let mut coeffs = a.coeffs;
        for (n, c) in b.coeffs {
            Self::insert_add(&mut coeffs, n, c);
        }
        if let Some(t) = trunc {
            coeffs.retain(|n, _| *n < t);
        }
        Self {
            denom: a.denom,
            trunc,
            coeffs,
        }
        .simplify_denom()
    }

    pub fn neg(&self) -> Self {
        Self {
            denom: self.denom,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        if c.is_zero() {
            return Self {
                denom: self.denom,
                trunc: self.trunc,
                coeffs: BTreeMap::new(),
            };
        }
        Self {
            denom: self.denom,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, x)| (*n, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Lower end used for truncation bookkeeping: the minimum exponent, or the
    /// bound itself for a truncated zero.
    fn low_numer(&self) -> Option<i64> {
        self.coeffs.keys().next().copied().or(self.trunc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let d = a.denom;
        let exact_zero = |s: &Self| s.trunc.is_none() && s.coeffs.is_empty();
        if exact_zero(&a) || exact_zero(&b) {
            return Self {
                denom: d,
                trunc: None,
                coeffs: BTreeMap::new(),
            };
        }
        let mut trunc: Option<i64> = None;
        let mut bound = |t: Option<i64>, low: Option<i64>| {
            if let (Some(t), Some(low)) = (t, low) {
                let v = t + low;
                trunc = Some(trunc.map_or(v, |x: i64| x.min(v)));
            }
        };
        bound(a.trunc, b.low_numer());
        bound(b.trunc, a.low_numer());
        let mut coeffs = BTreeMap::new();
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                let n = i + j;
                if trunc.is_some_and(|t| n >= t) {
                    // b is sorted, later j only increase n
                    break;
                }
                Self::insert_add(&mut coeffs, n, x * y);
            }
        }
        Self {
            denom: d,
            trunc,
            coeffs,
        }
        .simplify_denom()
    }

    /// Multiplies by q^r.
    pub fn shift(&self, r: Exp) -> Self {
        let d = self.denom.lcm(r.denom());
        let s = self.rescaled(d);
        let off = *(r * d).numer();
        Self {
            denom: d,
            trunc: s.trunc.map(|t| t + off),
            coeffs: s.coeffs.into_iter().map(|(n, c)| (n + off, c)).collect(),
        }
        .simplify_denom()
    }

    /// Substitutes q ↦ q^m.
    pub fn substitute_power(&self, m: u32) -> Self {
        assert!(m >= 1, "substitute_power needs a positive integer");
        let m = m as i64;
        Self {
            denom: self.denom,
            trunc: self.trunc.map(|t| t * m),
            coeffs: self.coeffs.iter().map(|(n, c)| (n * m, c.clone())).collect(),
        }
        .simplify_denom()
    }

    /// Substitutes q ↦ −q; only defined when every exponent is an integer.
    pub fn negate_q(&self) -> Result<Self> {
        let s = self.clone().simplify_denom();
        if s.denom != 1 && !s.coeffs.is_empty() {
            return Err(Error::Series("q -> -q needs integral exponents".into()));
        }
        let d = s.denom;
        Ok(Self {
            denom: d,
            trunc: s.trunc,
            coeffs: s
                .coeffs
                .into_iter()
                .map(|(n, c)| if (n / d) % 2 != 0 { (n, -c) } else { (n, c) })
                .collect(),
        })
    }

    /// Divides by (1 − u·q^e), e > 0. An exact input gains the bound `trunc`.
    pub fn div_one_minus(&self, u: &CycNumber, e: Exp, trunc: Option<Exp>) -> Result<Self> {
        if e <= exp(0, 1) {
            return Err(Error::Series(format!("1/(1 - u q^{e}) needs a positive exponent")));
        }
        let mut base = self.clone();
        if let Some(t) = trunc {
            base = base.truncate(t);
        }
        if base.trunc.is_none() {
            if base.coeffs.is_empty() {
                return Ok(base);
            }
            return Err(Error::Series("geometric expansion of an exact series needs a truncation".into()));
        }
        let d = base.denom.lcm(e.denom());
        let base = base.rescaled(d);
        let step = *(e * d).numer();
        let t = base.trunc.unwrap();
        let mut powers: Vec<CycNumber> = vec![CycNumber::one()];
        let mut coeffs = BTreeMap::new();
        for (n, c) in &base.coeffs {
            let mut m = 0usize;
            let mut pos = *n;
            while pos < t {
                if m == powers.len() {
                    let next = &powers[m - 1] * u;
                    powers.push(next);
                }
                Self::insert_add(&mut coeffs, pos, c * &powers[m]);
                m += 1;
                pos += step;
            }
        }
        Ok(Self {
            denom: d,
            trunc: Some(t),
            coeffs,
        }
        .simplify_denom())
    }

    /// Multiplies by (1 − u·q^e).
    pub fn mul_one_minus(&self, u: &CycNumber, e: Exp) -> Self {
        let factor = Self::one().sub(&Self::monomial(u.clone(), e));
        self.mul(&factor)
    }

    /// Multiplicative inverse; needs a nonzero leading coefficient and, unless
    /// the series is a single exact monomial, a truncation bound.
    pub fn invert(&self) -> Result<Self> {
        let Some((&lead_n, lead_c)) = self.coeffs.iter().next() else {
            return Err(Error::Series("cannot invert the zero series".into()));
        };
        let lead_inv = lead_c.inv()?;
        let d = self.denom;
        if self.trunc.is_none() {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(lead_inv, Ratio::new(-lead_n, d)));
            }
            return Err(Error::Series("inverting an exact polynomial needs a truncation".into()));
        }
        let t = self.trunc.unwrap();
        // s = c0 q^{e0} (1 + w), 1/s = q^{-e0} c0^{-1} Σ (-w)^k, known below t - 2e0
        let len = t - lead_n;
        let w: Vec<(i64, CycNumber)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(n, c)| (n - lead_n, c * &lead_inv))
            .filter(|(n, _)| *n < len)
            .collect();
        let mut v: BTreeMap<i64, CycNumber> = BTreeMap::new();
        v.insert(0, CycNumber::one());
        // v_n = -Σ_{j} w_j v_{n-j}; only exponents reachable from w can be nonzero
        let mut frontier: std::collections::BTreeSet<i64> = w.iter().map(|(n, _)| *n).collect();
        while let Some(n) = frontier.pop_first() {
            if n >= len {
                break;
            }
            let mut acc = CycNumber::zero();
            for (j, wj) in &w {
                if *j > n {
                    break;
                }
                if let Some(vp) = v.get(&(n - j)) {
                    acc = acc - wj * vp;
                }
            }
            if !acc.is_zero() {
                v.insert(n, acc);
                for (j, _) in &w {
                    if n + j < len {
                        frontier.insert(n + j);
                    }
                }
            }
        }
        let coeffs = v
            .into_iter()
            .map(|(n, c)| (n - lead_n, c * lead_inv.clone()))
            .collect();
        Ok(Self {
            denom: d,
            trunc: Some(len - lead_n),
            coeffs,
        }
        .simplify_denom())
    }

    /// Compares coefficients below the common known range.
    pub fn compare(&self, other: &Self) -> SeriesComparison {
        let (a, b) = self.aligned(other);
        let t = match (a.trunc, b.trunc) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let d = a.denom;
        let keys: std::collections::BTreeSet<i64> = a.coeffs.keys().chain(b.coeffs.keys()).copied().collect();
        let first = keys
            .into_iter()
            .take_while(|n| t.is_none_or(|t| *n < t))
            .find(|n| a.coeffs.get(n) != b.coeffs.get(n));
        SeriesComparison {
            common_trunc: t.map(|t| Ratio::new(t, d)),
            first_difference: first.map(|n| Ratio::new(n, d)),
        }
    }

    /// Evaluates the known terms at a real q ∈ (0, 1).
    pub fn eval_float(&self, q: f64) -> Complex64 {
        self.terms().fold(Complex64::new(0.0, 0.0), |acc, (e, c)| {
            let p = q.powf(*e.numer() as f64 / *e.denom() as f64);
            acc + c.embed_float() * p
        })
    }

    pub fn to_json(&self) -> QSeriesJson {
        QSeriesJson {
            denom: self.denom,
            trunc: self.trunc,
            terms: self.coeffs.iter().map(|(n, c)| (*n, c.clone())).collect(),
        }
    }

    /// `exponent,exponent_num,denom,re,im` rows with float coefficients.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,exponent_num,denom,re,im\n");
        for (n, c) in &self.coeffs {
            let z = c.embed_float();
            let _ = writeln!(
                out,
                "{},{},{},{:.17e},{:.17e}",
                *n as f64 / self.denom as f64,
                n,
                self.denom,
                z.re,
                z.im
            );
        }
        out
    }
}

/// JSON form `{denom, trunc, terms: [[numerator_of_exponent, CycNumber], …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub denom: i64,
    /// numerator of the truncation bound over `denom`; null for exact series
    pub trunc: Option<i64>,
    pub terms: Vec<(i64, CycNumber)>,
}

/// `(c₀) + (c₁)*q^e₁ + … + O(q^t)`; coefficients use the field's own format.
impl std::fmt::Display for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (neg, coeff) = match c.as_rational() {
                Some(r) => (r < num_traits::Zero::zero(), (if r < num_traits::Zero::zero() { -r } else { r }).to_string()),
                None => (false, format!("({c})")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if *e.numer() == 0 {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "{coeff}*q^{e}")?;
            }
        }
        match self.trunc() {
            Some(t) if first => write!(f, "O(q^{t})"),
            Some(t) => write!(f, " + O(q^{t})"),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

impl TryFrom<QSeriesJson> for QSeries {
    type Error = Error;
    fn try_from(js: QSeriesJson) -> Result<Self> {
        if js.denom < 1 {
            return Err(Error::Decode("denom must be positive".into()));
        }
        let mut coeffs = BTreeMap::new();
        for (n, c) in js.terms {
            if js.trunc.is_some_and(|t| n >= t) {
                return Err(Error::Decode(format!("exponent {n}/{} beyond truncation", js.denom)));
            }
            if !c.is_zero() && coeffs.insert(n, c).is_some() {
                return Err(Error::Decode(format!("duplicate exponent {n}/{}", js.denom)));
            }
        }
        Ok(QSeries {
            denom: js.denom,
            trunc: js.trunc,
            coeffs,
        })
    }
}

/// Σ_{m ≥ 0} u^m q^{me}, i.e. 1/(1 − u q^e), below `trunc`.
pub fn geometric_inverse(u: &CycNumber, e: Exp, trunc: Exp) -> Result<QSeries> {
    QSeries::one().div_one_minus(u, e, Some(trunc))
}

/// (q;q)_∞ by the pentagonal number theorem:
/// Σ_k (−1)^k q^{k(3k−1)/2} over k ∈ ℤ.
pub fn euler_function(trunc: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 >= trunc && p2 >= trunc {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if p1 < trunc {
            terms.push((exp(p1, 1), CycNumber::from_integer(sign)));
        }
        if k > 0 && p2 < trunc {
            terms.push((exp(p2, 1), CycNumber::from_integer(sign)));
        }
        k += 1;
    }
    QSeries::from_terms(terms, Some(exp(trunc, 1)))
}

/// 1/(q;q)_∞ = Σ p(n) q^n below `trunc`.
pub fn partition_series(trunc: i64) -> QSeries {
    euler_function(trunc).invert().expect("(q;q)_inf has constant term 1")
}

/// ∏_{m=0}^{n−1} (1 − a·q^{e+m}); the infinite product is truncated at `trunc`.
pub fn pochhammer(a: &CycNumber, e: Exp, n: PochhammerOrder, trunc: Exp) -> Result<QSeries> {
    if e < exp(0, 1) {
        return Err(Error::Series("pochhammer base exponent must be nonnegative".into()));
    }
    if a.is_one() && e == exp(1, 1) && n == PochhammerOrder::Infinite && trunc.is_integer() {
        return Ok(euler_function(trunc.to_integer()));
    }
    let mut out = QSeries::one().truncate(trunc);
    let mut m = 0u32;
    loop {
        match n {
            PochhammerOrder::Finite(len) if m >= len => break,
            PochhammerOrder::Infinite if e + m as i64 >= trunc => break,
            _ => {}
        }
        out = out.mul_one_minus(a, e + m as i64);
        m += 1;
        if e == exp(0, 1) && m == 1 && n == PochhammerOrder::Infinite && a.is_one() {
            // (1;q)_∞ = 0
            return Ok(QSeries::zero(Some(trunc)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> CycNumber {
        CycNumber::from_integer(k)
    }

    #[test]
    fn telescoping() {
        let geo = geometric_inverse(&CycNumber::one(), exp(1, 1), exp(20, 1)).unwrap();
        let prod = geo.mul_one_minus(&CycNumber::one(), exp(1, 1));
        assert_eq!(prod.compare(&QSeries::one()).first_difference, None);
        assert_eq!(prod.trunc(), Some(exp(20, 1)));
    }

    #[test]
    fn fractional_monomials() {
        let a = QSeries::monomial(int(1), exp(1, 5));
        let b = QSeries::monomial(int(1), exp(4, 5));
        let p = a.mul(&b);
        assert_eq!(p, QSeries::monomial(int(1), exp(1, 1)));
        assert_eq!(p.denom(), 1);
    }

    #[test]
    fn geometric_with_root() {
        let u = CycNumber::root_of_unity(1, 5);
        let g = geometric_inverse(&u, exp(1, 5), exp(2, 1)).unwrap();
        for m in 0..10 {
            assert_eq!(g.coeff(exp(m, 5)), CycNumber::root_of_unity(m, 5));
        }
        let back = g.mul_one_minus(&u, exp(1, 5));
        assert!(back.compare(&QSeries::one()).agrees());
        assert!(geometric_inverse(&u, exp(0, 1), exp(2, 1)).is_err());
    }

    #[test]
    fn pentagonal_matches_naive_product() {
        let fast = euler_function(60);
        let mut naive = QSeries::one().truncate(exp(60, 1));
        for m in 1..60 {
            naive = naive.mul_one_minus(&CycNumber::one(), exp(m, 1));
        }
        let cmp = fast.compare(&naive);
        assert!(cmp.agrees(), "{cmp:?}");
        for (n, c) in [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1), (3, 0)] {
            assert_eq!(fast.coeff(exp(n, 1)), int(c), "q^{n}");
        }
    }

    #[test]
    fn empty_pochhammer_is_one() {
        let p = pochhammer(&CycNumber::root_of_unity(1, 3), exp(1, 2), PochhammerOrder::Finite(0), exp(10, 1)).unwrap();
        assert!(p.compare(&QSeries::one()).agrees());
    }

    #[test]
    fn partition_numbers() {
        let p = partition_series(11);
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, v) in expect.iter().enumerate() {
            assert_eq!(p.coeff(exp(n as i64, 1)), int(*v));
        }
        let one = euler_function(50).mul(&partition_series(50));
        assert!(one.compare(&QSeries::one()).agrees());
        assert_eq!(one.trunc(), Some(exp(50, 1)));
    }

    #[test]
    fn invert_one_minus_q() {
        let s = QSeries::one().sub(&QSeries::monomial(int(1), exp(1, 1))).truncate(exp(15, 1));
        let inv = s.invert().unwrap();
        for n in 0..15 {
            assert_eq!(inv.coeff(exp(n, 1)), int(1));
        }
        assert!(QSeries::zero(Some(exp(3, 1))).invert().is_err());
    }

    #[test]
    fn invert_tracks_leading_exponent() {
        // q^{-1/3}(2 + q) known below 4
        let s = QSeries::from_terms([(exp(-1, 3), int(2)), (exp(2, 3), int(1))], Some(exp(4, 1)));
        let inv = s.invert().unwrap();
        assert_eq!(inv.trunc(), Some(exp(4, 1) + exp(2, 3)));
        let one = s.mul(&inv);
        assert!(one.compare(&QSeries::one()).agrees());
    }

    #[test]
    fn substitute_and_shift() {
        let s = QSeries::one().add(&QSeries::monomial(int(1), exp(1, 1)));
        let t = s.substitute_power(5);
        assert_eq!(t.coeff(exp(5, 1)), int(1));
        assert_eq!(t.len(), 2);
        let sh = QSeries::one().shift(exp(-1, 24));
        assert_eq!(sh.min_exponent(), Some(exp(-1, 24)));
    }

    #[test]
    fn negate_q_signs() {
        let s = QSeries::from_terms([(exp(1, 1), int(3)), (exp(2, 1), int(4))], Some(exp(5, 1)));
        let n = s.negate_q().unwrap();
        assert_eq!(n.coeff(exp(1, 1)), int(-3));
        assert_eq!(n.coeff(exp(2, 1)), int(4));
        assert!(QSeries::monomial(int(1), exp(1, 2)).negate_q().is_err());
    }

    #[test]
    fn compare_reports_first_difference() {
        let a = QSeries::from_terms([(exp(0, 1), int(1)), (exp(3, 2), int(2))], Some(exp(5, 1)));
        let b = QSeries::from_terms([(exp(0, 1), int(1)), (exp(3, 2), int(5))], Some(exp(4, 1)));
        let cmp = a.compare(&b);
        assert_eq!(cmp.common_trunc, Some(exp(4, 1)));
        assert_eq!(cmp.first_difference, Some(exp(3, 2)));
    }

    #[test]
    fn json_round_trip() {
        let s = QSeries::from_terms(
            [(exp(-1, 24), CycNumber::root_of_unity(1, 5)), (exp(1, 3), int(2))],
            Some(exp(3, 1)),
        );
        let js = serde_json::to_string(&s.to_json()).unwrap();
        let back = QSeries::try_from(serde_json::from_str::<QSeriesJson>(&js).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_csv().starts_with("exponent,exponent_num,denom,re,im\n"));
    }
}
