//! Unreduced group-ring accumulator Σ r_j ζ_N^j.
//!
//! Sums of many scaled roots of unity are collected here and reduced modulo
//! Φ_N once, at comparison time.

use num_rational::BigRational;

use super::poly::{cyclotomic_poly, reduce_in_place, Coeff};
use super::CycNumber;

#[derive(Clone, Debug)]
pub struct RootSum<T: Coeff = i128> {
    order: u64,
    dense: Vec<T>,
}

impl<T: Coeff> RootSum<T> {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1);
        Self {
            order,
            dense: vec![T::nil(); order as usize],
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn slot(&self, exp: i64) -> usize {
        exp.rem_euclid(self.order as i64) as usize
    }

    /// Adds `coeff · ζ_N^exp`. Returns `None` on coefficient overflow.
    pub fn add_root(&mut self, exp: i64, coeff: &T) -> Option<()> {
        let s = self.slot(exp);
        self.dense[s] = self.dense[s].try_add(coeff)?;
        Some(())
    }

    /// Adds `coeff · ζ_N^shift · x`; the order of `x` must divide N.
    pub fn add_cyc(&mut self, x: &CycNumber, shift: i64, coeff: &T) -> Option<()> {
        assert!(
            self.order % x.order() == 0,
            "order {} does not divide accumulator order {}",
            x.order(),
            self.order
        );
        let stretch = (self.order / x.order()) as i64;
        for (j, r) in x.terms() {
            let c = T::from_big(r)?.try_mul(coeff)?;
            self.add_root(shift + j as i64 * stretch, &c)?;
        }
        Some(())
    }

    /// Adds another accumulator of the same order, scaled by `ζ_N^shift · coeff`.
    pub fn add_sum(&mut self, other: &RootSum<T>, shift: i64, coeff: &T) -> Option<()> {
        assert_eq!(self.order, other.order);
        for (j, r) in other.dense.iter().enumerate() {
            if !r.is_nil() {
                self.add_root(shift + j as i64, &r.try_mul(coeff)?)?;
            }
        }
        Some(())
    }

    pub fn raw_terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.dense.iter().enumerate().filter(|(_, c)| !c.is_nil())
    }

    /// Power-basis coefficients after reduction modulo Φ_N.
    pub fn reduced(&self) -> Option<Vec<T>> {
        let mut v = self.dense.clone();
        reduce_in_place(&mut v, &cyclotomic_poly(self.order))?;
        Some(v)
    }

    pub fn is_zero(&self) -> Option<bool> {
        Some(self.reduced()?.iter().all(|c| c.is_nil()))
    }

    pub fn to_cyc(&self) -> Option<CycNumber> {
        let reduced = self.reduced()?;
        Some(CycNumber::from_power_basis(
            self.order,
            reduced
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_nil())
                .map(|(j, c)| (j as u32, c.to_big())),
        ))
    }

    /// Exact conversion to an arbitrary-precision accumulator.
    pub fn to_big(&self) -> RootSum<BigRational> {
        RootSum {
            order: self.order,
            dense: self.dense.iter().map(|c| c.to_big()).collect(),
        }
    }
}

impl RootSum<i128> {
    /// Adds `k · ζ_N^exp`, panicking on overflow (integer sums here are tiny).
    pub fn add_int(&mut self, exp: i64, k: i64) {
        self.add_root(exp, &(k as i128))
            .expect("integer group-ring coefficient overflow");
    }

    /// Zero test that falls back to exact big arithmetic on overflow.
    pub fn vanishes(&self) -> bool {
        match self.is_zero() {
            Some(z) => z,
            None => self.to_big().is_zero().expect("big arithmetic cannot overflow"),
        }
    }

    pub fn to_cyc_exact(&self) -> CycNumber {
        match self.to_cyc() {
            Some(x) => x,
            None => self.to_big().to_cyc().expect("big arithmetic cannot overflow"),
        }
    }

    pub fn sub(&self, other: &RootSum<i128>) -> RootSum<i128> {
        let mut out = self.clone();
        out.add_sum(other, 0, &-1).expect("integer group-ring coefficient overflow");
        out
    }

    /// Multiplies by `ζ_N^shift · k` and returns the product as a new sum.
    pub fn times_root(&self, shift: i64, k: i64) -> RootSum<i128> {
        let mut out = RootSum::new(self.order);
        out.add_sum(self, shift, &(k as i128))
            .expect("integer group-ring coefficient overflow");
        out
    }

    /// Product of two integer sums of the same order.
    pub fn mul(&self, other: &RootSum<i128>) -> RootSum<i128> {
        assert_eq!(self.order, other.order);
        let mut out = RootSum::new(self.order);
        for (i, a) in self.raw_terms() {
            for (j, b) in other.raw_terms() {
                out.add_root((i + j) as i64, &(a * b))
                    .expect("integer group-ring coefficient overflow");
            }
        }
        out
    }
}
