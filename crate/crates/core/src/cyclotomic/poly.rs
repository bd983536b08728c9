//! Cyclotomic polynomials, the per-order cache, and reduction of group-ring
//! vectors modulo Φ_n.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, ToPrimitive, Zero};

/// Φ_n stored sparsely: monic of degree `phi`, `lower` holds the nonzero
/// coefficients below the leading term.
#[derive(Debug)]
pub struct CyclotomicPoly {
    pub n: u64,
    pub phi: usize,
    pub lower: Vec<(usize, i64)>,
}

static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicPoly>>>> = OnceLock::new();

/// Returns the cached Φ_n, computing it on first use.
pub fn cyclotomic_poly(n: u64) -> Arc<CyclotomicPoly> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let built = Arc::new(build(n));
    let mut w = cache.write().expect("cyclotomic cache poisoned");
    Arc::clone(w.entry(n).or_insert(built))
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

fn mobius_squarefree(d: u64) -> i32 {
    if prime_factors(d).len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn build(n: u64) -> CyclotomicPoly {
    let primes = prime_factors(n);
    let rad: u64 = primes.iter().product();
    // Φ_rad via Π_{d | rad} (x^d - 1)^{μ(rad/d)}; every divisor of rad is squarefree.
    let mut divisors = vec![1u64];
    for &p in &primes {
        let extra: Vec<u64> = divisors.iter().map(|d| d * p).collect();
        divisors.extend(extra);
    }
    let mut poly: Vec<i64> = vec![1];
    for &d in &divisors {
        if mobius_squarefree(rad / d) == 1 {
            poly = mul_xd_minus_one(&poly, d as usize);
        }
    }
    for &d in &divisors {
        if mobius_squarefree(rad / d) == -1 {
            poly = div_xd_minus_one(&poly, d as usize);
        }
    }
    // Φ_n(x) = Φ_rad(x^{n/rad})
    let stretch = (n / rad) as usize;
    let phi = (poly.len() - 1) * stretch;
    debug_assert_eq!(phi as u64, euler_phi(n));
    debug_assert_eq!(*poly.last().unwrap(), 1);
    let lower = poly[..poly.len() - 1]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i * stretch, c))
        .collect();
    CyclotomicPoly { n, phi, lower }
}

fn mul_xd_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn div_xd_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    // p = q·x^d - q  ⇒  q[i] = q[i-d] - p[i]
    let len = p.len() - d;
    let mut q = vec![0i64; len];
    for i in 0..len {
        let prev = if i >= d { q[i - d] } else { 0 };
        q[i] = prev - p[i];
    }
    q
}

/// Coefficient domain for the reduction kernels. Fallible operations return
/// `None` on fixed-width overflow so callers can retry in `BigRational`.
pub trait Coeff: Clone + Send + Sync + std::fmt::Debug {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn try_add(&self, o: &Self) -> Option<Self>;
    fn try_mul(&self, o: &Self) -> Option<Self>;
    fn try_mul_int(&self, k: i64) -> Option<Self>;
    fn from_big(r: &BigRational) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl Coeff for i128 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        i128::checked_add(*self, *o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        i128::checked_mul(*self, *o)
    }
    fn try_mul_int(&self, k: i64) -> Option<Self> {
        i128::checked_mul(*self, k as i128)
    }
    fn from_big(r: &BigRational) -> Option<Self> {
        if r.is_integer() {
            r.numer().to_i128()
        } else {
            None
        }
    }
    fn to_big(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

pub type SmallRational = Ratio<i128>;

impl Coeff for SmallRational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn try_mul_int(&self, k: i64) -> Option<Self> {
        self.checked_mul(&Ratio::from_integer(k as i128))
    }
    fn from_big(r: &BigRational) -> Option<Self> {
        Some(Ratio::new_raw(r.numer().to_i128()?, r.denom().to_i128()?))
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Coeff for BigRational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn try_mul_int(&self, k: i64) -> Option<Self> {
        Some(self * BigRational::from_integer(BigInt::from(k)))
    }
    fn from_big(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

/// Reduces a dense group-ring vector (index = exponent of ζ_n) modulo Φ_n in
/// place. On return only indices `< phi` may be nonzero; the slice is
/// truncated to length `phi`.
pub fn reduce_in_place<T: Coeff>(v: &mut Vec<T>, poly: &CyclotomicPoly) -> Option<()> {
    let phi = poly.phi;
    for i in (phi..v.len()).rev() {
        if v[i].is_nil() {
            continue;
        }
        let lead = std::mem::replace(&mut v[i], T::nil());
        let base = i - phi;
        for &(j, c) in &poly.lower {
            let delta = lead.try_mul_int(-c)?;
            v[base + j] = v[base + j].try_add(&delta)?;
        }
    }
    v.truncate(phi.min(v.len()));
    Some(())
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(p: &CyclotomicPoly) -> Vec<i64> {
        let mut v = vec![0; p.phi + 1];
        v[p.phi] = 1;
        for &(j, c) in &p.lower {
            v[j] = c;
        }
        v
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(dense(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(dense(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(dense(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(dense(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(dense(&cyclotomic_poly(5)), vec![1, 1, 1, 1, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(dense(&cyclotomic_poly(105)).iter().any(|&c| c == -2));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..400u64 {
            assert_eq!(cyclotomic_poly(n).phi as u64, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn product_over_divisors_is_xn_minus_one() {
        // Π_{d | n} Φ_d = x^n - 1, checked by multiplying dense polynomials.
        for n in [12u64, 30, 36, 49] {
            let mut prod = vec![1i64];
            for d in 1..=n {
                if n % d == 0 {
                    let f = dense(&cyclotomic_poly(d));
                    let mut out = vec![0i64; prod.len() + f.len() - 1];
                    for (i, a) in prod.iter().enumerate() {
                        for (j, b) in f.iter().enumerate() {
                            out[i + j] += a * b;
                        }
                    }
                    prod = out;
                }
            }
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn full_period_sum_reduces_to_zero() {
        // 1 + ζ + … + ζ^{n-1} = 0 for n > 1
        let n = 60u64;
        let p = cyclotomic_poly(n);
        let mut v = vec![1i128; n as usize];
        reduce_in_place(&mut v, &p).unwrap();
        assert!(v.iter().all(|c| *c == 0));
    }
}
