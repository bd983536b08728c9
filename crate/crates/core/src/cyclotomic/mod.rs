//! Exact arithmetic in cyclotomic fields ℚ(ζ_n).
//!
//! A [`CycNumber`] is stored in the power basis 1, ζ_n, …, ζ_n^{φ(n)-1} of
//! ℚ[x]/(Φ_n), with ζ_n = e(1/n) = exp(2πi/n). Operands of different orders
//! are embedded into ℚ(ζ_lcm) before combining. Arithmetic first runs with
//! 128-bit rationals and repeats in arbitrary precision only on overflow.

mod poly;
mod rootsum;
mod serial;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use poly::{cyclotomic_poly, euler_phi, gcd_u64, lcm_u64, prime_factors, Coeff, CyclotomicPoly, SmallRational};
pub use rootsum::RootSum;
pub use serial::{CycNumberJson, IntRepr};

/// An exact element of ℚ(ζ_n).
#[derive(Clone)]
pub struct CycNumber {
    order: u64,
    coeffs: BTreeMap<u32, BigRational>,
}

impl CycNumber {
    pub fn zero() -> Self {
        Self {
            order: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Self { order: 1, coeffs }
    }

    /// Builds a value from power-basis terms at order `n`; the exponents must
    /// already be below φ(n).
    pub fn from_power_basis(n: u64, terms: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let phi = cyclotomic_poly(n).phi as u32;
        let mut coeffs = BTreeMap::new();
        for (j, r) in terms {
            assert!(j < phi, "power-basis exponent {j} out of range for order {n}");
            if !r.is_zero() {
                coeffs.insert(j, r);
            }
        }
        Self::normalized(n, coeffs)
    }

    fn normalized(order: u64, coeffs: BTreeMap<u32, BigRational>) -> Self {
        // rational values always live at order 1
        if coeffs.keys().all(|&j| j == 0) {
            Self { order: 1, coeffs }
        } else {
            Self { order, coeffs }
        }
    }

    /// e(num/den) = exp(2πi·num/den).
    pub fn root_of_unity(num: i64, den: u64) -> Self {
        assert!(den >= 1, "root of unity needs a positive denominator");
        let g = gcd_u64(num.unsigned_abs(), den).max(1);
        let (num, den) = (num / g as i64, den / g);
        let mut acc = RootSum::<i128>::new(den);
        acc.add_int(num, 1);
        acc.to_cyc_exact()
    }

    /// i = e(1/4)
    pub fn i() -> Self {
        Self::root_of_unity(1, 4)
    }

    /// sin(π·num/den) = (e(r/2) − e(−r/2)) / (2i).
    pub fn sin_pi(num: i64, den: u64) -> Self {
        // (e(r/2) - e(-r/2)) / (2i) = -(i/2)(e(r/2) - e(-r/2)), all at order 4·den
        let n = 4 * den;
        let mut acc = RootSum::<SmallRational>::new(n);
        let half = SmallRational::new(1, 2);
        let neg_half = SmallRational::new(-1, 2);
        let quarter = den as i64; // ζ_n^{den} = i
        // -(i/2) e(r/2) = -(1/2) ζ_n^{den + 2num}
        acc.add_root(quarter + 2 * num, &neg_half).unwrap();
        acc.add_root(quarter - 2 * num, &half).unwrap();
        acc.to_cyc().unwrap()
    }

    /// cos(π·num/den) = (e(r/2) + e(−r/2)) / 2.
    pub fn cos_pi(num: i64, den: u64) -> Self {
        let n = 2 * den;
        let mut acc = RootSum::<SmallRational>::new(n);
        let half = SmallRational::new(1, 2);
        acc.add_root(num, &half).unwrap();
        acc.add_root(-num, &half).unwrap();
        acc.to_cyc().unwrap()
    }

    /// √12 = 2(ζ_12 + ζ_12^{-1}).
    pub fn sqrt12() -> Self {
        let mut acc = RootSum::<i128>::new(12);
        acc.add_int(1, 2);
        acc.add_int(-1, 2);
        acc.to_cyc_exact()
    }

    /// √(−12i) on the principal branch: √12 · e(−1/8).
    pub fn sqrt_neg12i() -> Self {
        &Self::sqrt12() * &Self::root_of_unity(-1, 8)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(j, r)| (*j, r))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.order == 1 || self.coeffs.keys().all(|&j| j == 0) {
            Some(self.coeffs.get(&0).cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Same value expressed at order `m`; `self.order()` must divide `m`.
    pub fn embed(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "cannot embed order {} into {m}", self.order);
        if m == self.order {
            return self.clone();
        }
        let mut acc = RootSum::<BigRational>::new(m);
        acc.add_cyc(self, 0, &BigRational::one()).unwrap();
        let reduced = acc.reduced().unwrap();
        Self {
            order: m,
            coeffs: reduced
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_nil())
                .map(|(j, c)| (j as u32, c))
                .collect(),
        }
    }

    fn combine_small(&self, other: &Self, mul: bool, sign: i64) -> Option<Self> {
        let m = lcm_u64(self.order, other.order);
        let mut acc = RootSum::<SmallRational>::new(m);
        let one = SmallRational::from_integer(1);
        if mul {
            let sx = (m / self.order) as i64;
            let sy = (m / other.order) as i64;
            for (i, a) in self.terms() {
                let a = SmallRational::from_big(a)?;
                for (j, b) in other.terms() {
                    let c = a.try_mul(&SmallRational::from_big(b)?)?;
                    acc.add_root(i as i64 * sx + j as i64 * sy, &c)?;
                }
            }
        } else {
            acc.add_cyc(self, 0, &one)?;
            acc.add_cyc(other, 0, &SmallRational::from_integer(sign as i128))?;
        }
        acc.to_cyc()
    }

    fn combine_big(&self, other: &Self, mul: bool, sign: i64) -> Self {
        let m = lcm_u64(self.order, other.order);
        let mut acc = RootSum::<BigRational>::new(m);
        if mul {
            let sx = (m / self.order) as i64;
            let sy = (m / other.order) as i64;
            for (i, a) in self.terms() {
                for (j, b) in other.terms() {
                    acc.add_root(i as i64 * sx + j as i64 * sy, &(a * b)).unwrap();
                }
            }
        } else {
            acc.add_cyc(self, 0, &BigRational::one()).unwrap();
            acc.add_cyc(other, 0, &BigRational::from_integer(sign.into())).unwrap();
        }
        acc.to_cyc().unwrap()
    }

    fn add_signed(&self, other: &Self, sign: i64) -> Self {
        if self.order == other.order {
            // same power basis: no reduction needed
            let mut coeffs = self.coeffs.clone();
            for (j, r) in other.terms() {
                let entry = coeffs.entry(j).or_insert_with(BigRational::zero);
                if sign > 0 {
                    *entry += r;
                } else {
                    *entry -= r;
                }
                if entry.is_zero() {
                    coeffs.remove(&j);
                }
            }
            return Self::normalized(self.order, coeffs);
        }
        self.combine_small(other, false, sign)
            .unwrap_or_else(|| self.combine_big(other, false, sign))
    }

    fn multiply(&self, other: &Self) -> Self {
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        self.combine_small(other, true, 1)
            .unwrap_or_else(|| self.combine_big(other, true, 1))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(j, c)| (*j, c * r)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Multiplies by e(num/den).
    pub fn mul_root(&self, num: i64, den: u64) -> Self {
        self * &Self::root_of_unity(num, den)
    }

    /// Complex conjugation ζ_n ↦ ζ_n^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut acc = RootSum::<BigRational>::new(n);
        for (j, r) in self.terms() {
            acc.add_root(-(j as i64), r).unwrap();
        }
        acc.to_cyc().unwrap()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in ℚ[x]
    /// modulo Φ_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let p = cyclotomic_poly(self.order);
        let mut modulus = vec![BigRational::zero(); p.phi + 1];
        modulus[p.phi] = BigRational::one();
        for &(j, c) in &p.lower {
            modulus[j] = BigRational::from_integer(c.into());
        }
        let mut a = vec![BigRational::zero(); p.phi];
        for (j, r) in self.terms() {
            a[j as usize] = r.clone();
        }
        let (mut r0, mut r1) = (modulus, trim(a));
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let s2 = poly_sub(&s0, &qs1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_n is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let mut acc = RootSum::<BigRational>::new(self.order);
        for (j, s) in s0.iter().enumerate() {
            if !s.is_zero() {
                acc.add_root(j as i64, &(s * &c)).unwrap();
            }
        }
        Ok(acc.to_cyc().unwrap())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Numerical value with ζ_n = exp(2πi/n).
    pub fn embed_float(&self) -> Complex64 {
        let n = self.order as f64;
        self.terms().fold(Complex64::new(0.0, 0.0), |acc, (j, r)| {
            let angle = std::f64::consts::TAU * j as f64 / n;
            acc + Complex64::from_polar(1.0, angle) * rational_to_f64(r)
        })
    }

    /// True iff every power-basis coefficient is an integer; ℤ[ζ_n] is the
    /// ring of integers of ℚ(ζ_n).
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.values().all(|r| r.is_integer())
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down both parts to keep the quotient finite
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n: BigInt = r.numer() >> shift;
            let d: BigInt = r.denom() >> shift;
            n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
        }
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = num.to_vec();
    let dl = den.len();
    if r.len() < dl {
        return (Vec::new(), trim(r));
    }
    let lead_inv = den[dl - 1].recip();
    let mut q = vec![BigRational::zero(); r.len() - dl + 1];
    for i in (0..q.len()).rev() {
        let c = &r[i + dl - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= &c * d;
        }
        q[i] = c;
    }
    r.truncate(dl - 1);
    (trim(q), trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// The Kronecker symbol (12/k): +1 for k ≡ ±1, −1 for k ≡ ±5 (mod 12), else 0.
pub fn kronecker_12(k: i64) -> i64 {
    match k.rem_euclid(12) {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        (self - other).is_zero()
    }
}

impl Eq for CycNumber {}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, r) in &self.coeffs {
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (*j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{}", self.order, j)?,
                (_, false) => write!(f, "{mag}*z{}^{}", self.order, j)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycNumber> for &'a CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'a CycNumber) -> CycNumber {
                let f: fn(&CycNumber, &CycNumber) -> CycNumber = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'a CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_signed(b, 1));
forward_binop!(Sub, sub, |a, b| a.add_signed(b, -1));
forward_binop!(Mul, mul, |a, b| a.multiply(b));

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(j, r)| (*j, -r)).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> Self {
        iter.fold(CycNumber::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
        (x - y).norm() < tol
    }

    #[test]
    fn half_turn_is_minus_one() {
        assert_eq!(CycNumber::root_of_unity(1, 2), CycNumber::from_integer(-1));
        assert_eq!(CycNumber::root_of_unity(1, 2).order(), 1);
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let s = CycNumber::root_of_unity(1, 3) + CycNumber::root_of_unity(2, 3);
        assert_eq!(s, CycNumber::from_integer(-1));
    }

    #[test]
    fn two_cos_pi_sixth() {
        let s = CycNumber::root_of_unity(1, 12) + CycNumber::root_of_unity(-1, 12);
        assert!((s.embed_float().re - 3f64.sqrt()).abs() < 1e-12);
        assert!(s.embed_float().im.abs() < 1e-12);
    }

    #[test]
    fn inverse_roots_and_conj() {
        let p = CycNumber::root_of_unity(1, 5) * CycNumber::root_of_unity(4, 5);
        assert!(p.is_one());
        assert_eq!(CycNumber::root_of_unity(1, 8).conj(), CycNumber::root_of_unity(7, 8));
        let real = CycNumber::root_of_unity(1, 7) + CycNumber::root_of_unity(6, 7);
        assert_eq!(real.conj(), real);
    }

    #[test]
    fn inversion() {
        assert_eq!(CycNumber::from_integer(-1).inv().unwrap(), CycNumber::from_integer(-1));
        let x = CycNumber::one() - CycNumber::root_of_unity(1, 5);
        assert!((&x.inv().unwrap() * &x).is_one());
        let s = CycNumber::sin_pi(1, 5).inv().unwrap();
        assert!((s.embed_float().re - 1.0 / (std::f64::consts::PI / 5.0).sin()).abs() < 1e-12);
        assert!(matches!(CycNumber::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn sines() {
        assert!(CycNumber::sin_pi(1, 1).is_zero());
        assert!(CycNumber::sin_pi(1, 2).is_one());
        let s = CycNumber::sin_pi(1, 5).embed_float();
        assert!((s.re - 0.587_785_252_292_473_1).abs() < 1e-12 && s.im.abs() < 1e-12);
        let c = CycNumber::cos_pi(2, 7).embed_float();
        assert!((c.re - (2.0 * std::f64::consts::PI / 7.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn square_roots() {
        assert_eq!(CycNumber::sqrt12().pow(2), CycNumber::from_integer(12));
        let minus_12i = CycNumber::i().scale_int(-12);
        assert_eq!(CycNumber::sqrt_neg12i().pow(2), minus_12i);
        assert!((CycNumber::sqrt12().embed_float().re - 3.464_101_615_137_754_6).abs() < 1e-12);
    }

    #[test]
    fn float_embedding() {
        assert!(close(CycNumber::one().embed_float(), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(CycNumber::i().embed_float(), Complex64::new(0.0, 1.0), 1e-12));
        let t = std::f64::consts::TAU / 7.0;
        assert!(close(
            CycNumber::root_of_unity(1, 7).embed_float(),
            Complex64::new(t.cos(), t.sin()),
            1e-12
        ));
    }

    #[test]
    fn algebraic_integers() {
        assert!(CycNumber::root_of_unity(1, 7).is_algebraic_integer());
        assert!(!CycNumber::from_ratio(1, 2).is_algebraic_integer());
        let ratio = CycNumber::sin_pi(2, 5).div(&CycNumber::sin_pi(1, 5)).unwrap();
        assert!(ratio.is_algebraic_integer());
        assert!(ratio.inv().unwrap().is_algebraic_integer());
    }

    #[test]
    fn kronecker_table() {
        assert_eq!(kronecker_12(1), 1);
        assert_eq!(kronecker_12(6), 0);
        assert_eq!(kronecker_12(5), -1);
        assert_eq!(kronecker_12(-1), 1);
        assert_eq!(kronecker_12(-5), -1);
    }

    #[test]
    fn cross_order_equality() {
        let a = CycNumber::root_of_unity(1, 3);
        let b = CycNumber::root_of_unity(2, 6);
        assert_eq!(a, b);
        assert_eq!(a.embed(12), a);
        assert_eq!(CycNumber::root_of_unity(5, 1), CycNumber::one());
    }
}
