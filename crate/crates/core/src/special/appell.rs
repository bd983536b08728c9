//! The Appell–Lerch sum M(a,b,c;z), the kernel K(a,b,c,n;z) and N(a,b,c;z).

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::qseries::{exp, partition_series, Exp, QSeries};

use super::{k_of, LevelParams};

/// 1/(q;q)_∞ known below `trunc` (rounded up to an integer bound).
fn inverse_euler(trunc: Exp) -> QSeries {
    let t = trunc.ceil().to_integer().max(1);
    partition_series(t)
}

/// (1/(q;q)_∞) Σ_{n∈ℤ} (−1)^n q^{n+a/c} q^{3n(n+1)/2} / (1 − ζ_c^b q^{n+a/c}).
///
/// Terms with n + a/c < 0 use 1/(1 − ζq^{−m}) = −ζ^{−1}q^m/(1 − ζ^{−1}q^m), so
/// every geometric expansion runs in positive powers of q.
pub fn appell_m(p: &LevelParams, trunc: Exp) -> Result<QSeries> {
    let (a, b, c) = (p.a as i64, p.b as i64, p.c as i64);
    if a == 0 && b == 0 {
        return Err(Error::OutOfRange("Appell-Lerch M(0,0,c) has a pole at n = 0".into()));
    }
    let zeta = CycNumber::root_of_unity(b, p.c);
    let zeta_inv = zeta.conj();
    let mut total = QSeries::zero(Some(trunc));
    // terms vanish below trunc once 3n(n+1)/2 >= trunc, for either sign of n
    let mut n_max: i64 = 0;
    while exp(3 * n_max * (n_max + 1) / 2, 1) < trunc {
        n_max += 1;
    }
    for n in (-n_max - 1)..=n_max {
        let quad = exp(3 * n * (n + 1) / 2, 1);
        let x = exp(n * c + a, c);
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        let term = if x > exp(0, 1) {
            if x + quad >= trunc {
                continue;
            }
            QSeries::monomial(CycNumber::from_integer(sign), x + quad)
                .truncate(trunc)
                .div_one_minus(&zeta, x, None)?
        } else if x < exp(0, 1) {
            if quad >= trunc {
                continue;
            }
            QSeries::monomial(zeta_inv.scale_int(-sign), quad)
                .truncate(trunc)
                .div_one_minus(&zeta_inv, -x, None)?
        } else {
            // a = 0, n = 0: constant 1/(1 − ζ_c^b), b ≠ 0
            let denom = CycNumber::one() - zeta.clone();
            QSeries::constant(denom.inv()?).truncate(trunc)
        };
        total = total.add(&term);
    }
    Ok(total.mul(&inverse_euler(trunc)).truncate(trunc))
}

/// K(a,b,c,n;z) expanded in q, with the sines written through e(·) and the
/// denominator factored as (1 − ζ_c^a q^{n−b/c})(1 − ζ_c^{−a} q^{n+b/c}).
pub fn kernel_k(p: &LevelParams, n: i64, trunc: Exp) -> Result<QSeries> {
    if n <= 0 {
        return Err(Error::OutOfRange(format!("kernel K needs n >= 1, got {n}")));
    }
    if p.a == 0 && p.b == 0 {
        return Err(Error::OutOfRange("kernel K needs (a, b) != (0, 0)".into()));
    }
    let (a, b, c) = (p.a as i64, p.b as i64, p.c as i64);
    let k = k_of(p.b, p.c) as i64;
    // (−1)^n / (2i) = (−1)^{n+1} i / 2
    let sign = if n % 2 == 0 { -1 } else { 1 };
    let pre = CycNumber::i().scale(&num_rational::BigRational::new(sign.into(), 2.into()));
    let up = &pre * &CycNumber::root_of_unity(a, 2 * p.c);
    let down = -(&pre * &CycNumber::root_of_unity(-a, 2 * p.c));
    let half_b = exp(b, 2 * c);
    let numerator = QSeries::from_terms(
        [
            (exp(-n * k, 1) - half_b, up.clone()),
            (exp(n * k, 1) + half_b, down.clone()),
            (exp(n + n * k, 1) - half_b, up),
            (exp(n - n * k, 1) + half_b, down),
        ],
        None,
    );
    let za = CycNumber::root_of_unity(a, p.c);
    numerator
        .truncate(trunc)
        .div_one_minus(&za, exp(n, 1) - exp(b, c), None)?
        .div_one_minus(&za.conj(), exp(n, 1) + exp(b, c), None)
}

/// N(a,b,c;z) = (1/(q;q)_∞)(iζ_{2c}^{−a} q^{b/2c} / (2(1 − ζ_c^{−a} q^{b/c}))
/// + Σ_{n≥1} K(a,b,c,n;z) q^{n(3n+1)/2}).
pub fn series_n(p: &LevelParams, trunc: Exp) -> Result<QSeries> {
    if p.b == 0 && p.a == 0 {
        return Err(Error::OutOfRange("N(a,b,c) needs (a, b) != (0, 0)".into()));
    }
    let (a, b, c) = (p.a as i64, p.b as i64, p.c as i64);
    let k = k_of(p.b, p.c) as i64;
    let half_i = CycNumber::i().scale(&num_rational::BigRational::new(1.into(), 2.into()));
    let lead_coeff = &half_i * &CycNumber::root_of_unity(-a, 2 * p.c);
    let za_inv = CycNumber::root_of_unity(-a, p.c);
    let first = if b > 0 {
        QSeries::monomial(lead_coeff, exp(b, 2 * c))
            .truncate(trunc)
            .div_one_minus(&za_inv, exp(b, c), None)?
    } else {
        let denom = CycNumber::one() - za_inv;
        QSeries::constant(lead_coeff.div(&denom)?).truncate(trunc)
    };
    let mut inner = first;
    let mut lowest = inner.min_exponent().unwrap_or(trunc);
    let mut n: i64 = 1;
    loop {
        let shift = exp(n * (3 * n + 1) / 2, 1);
        let low = shift - exp(n * k, 1) - exp(b, 2 * c);
        if low >= trunc {
            break;
        }
        let kn = kernel_k(p, n, trunc - shift)?.shift(shift);
        if let Some(e) = kn.min_exponent() {
            lowest = lowest.min(e);
        }
        inner = inner.add(&kn);
        n += 1;
    }
    let euler = inverse_euler(trunc - lowest.min(exp(0, 1)));
    Ok(inner.mul(&euler).truncate(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(a: u64, b: u64, c: u64) -> LevelParams {
        LevelParams::new(c, a, b).unwrap()
    }

    /// Direct float evaluation of the displayed closed form of K at real q.
    fn k_closed_form(a: f64, b: f64, c: f64, n: i64, k: f64, q: f64) -> num_complex::Complex64 {
        use num_complex::Complex64 as C;
        use std::f64::consts::PI;
        // z = iy with q = e^{-2πy}; sin(πa/c − πzX) with complex argument
        let y = -q.ln() / (2.0 * PI);
        let z = C::new(0.0, y);
        let nf = n as f64;
        let qn = q.powi(n as i32);
        let s1 = (C::new(PI * a / c, 0.0) - z * PI * (2.0 * nf * k + b / c)).sin();
        let s2 = (C::new(PI * a / c, 0.0) - z * PI * (b / c - 2.0 * nf * k)).sin();
        let cosarg = (C::new(2.0 * PI * a / c, 0.0) - z * 2.0 * PI * b / c).cos();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        (s1 + s2 * qn) * sign / (C::new(1.0, 0.0) - cosarg * 2.0 * qn + qn * qn)
    }

    #[test]
    fn kernel_float_spot_check() {
        let q = 0.05;
        for (a, b, c) in [(1, 0, 5), (2, 3, 5), (0, 2, 7), (3, 6, 7), (1, 1, 5)] {
            let p = lp(a, b, c);
            let k = k_of(b, c) as f64;
            for n in 1..=2 {
                let s = kernel_k(&p, n, exp(12, 1)).unwrap();
                let got = s.eval_float(q);
                let want = k_closed_form(a as f64, b as f64, c as f64, n, k, q);
                assert!((got - want).norm() < 1e-8 * want.norm().max(1.0), "({a},{b},{c}) n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn kernel_b_zero_simplification() {
        // (−1)^n (1+q^n) sin(πa/c) / (1 − 2q^n cos(2πa/c) + q^{2n})
        let p = lp(2, 0, 7);
        let s = kernel_k(&p, 1, exp(10, 1)).unwrap();
        let sin = CycNumber::sin_pi(2, 7);
        let two_cos = CycNumber::cos_pi(4, 7).scale_int(2);
        let num = QSeries::from_terms([(exp(0, 1), -sin.clone()), (exp(1, 1), -sin)], None);
        let den = QSeries::from_terms(
            [(exp(0, 1), CycNumber::one()), (exp(1, 1), -two_cos), (exp(2, 1), CycNumber::one())],
            None,
        )
        .truncate(exp(10, 1));
        let closed = num.mul(&den.invert().unwrap());
        assert!(s.compare(&closed).agrees());
    }

    #[test]
    fn kernel_leading_exponent() {
        for (a, b, c) in [(1, 3, 5), (2, 4, 5), (1, 6, 7), (0, 2, 7)] {
            let p = lp(a, b, c);
            let s = kernel_k(&p, 1, exp(4, 1)).unwrap();
            let k = k_of(b, c) as i64;
            assert_eq!(s.min_exponent(), Some(exp(-k, 1) - exp(b as i64, 2 * c as i64)));
        }
        assert!(kernel_k(&lp(1, 0, 5), 0, exp(4, 1)).is_err());
    }

    #[test]
    fn n_constant_term_is_quarter_csc() {
        let s = series_n(&lp(1, 0, 5), exp(3, 1)).unwrap();
        let quarter_csc = CycNumber::sin_pi(1, 5).scale_int(4).inv().unwrap();
        assert_eq!(s.coeff(exp(0, 1)), quarter_csc);
    }

    #[test]
    fn appell_terms_pair_up() {
        // 3n(n+1)/2 is invariant under n ↦ −n−1
        for n in -5i64..5 {
            let m = -n - 1;
            assert_eq!(3 * n * (n + 1) / 2, 3 * m * (m + 1) / 2);
        }
    }

    #[test]
    fn appell_rejects_pole() {
        assert!(appell_m(&lp(0, 0, 5), exp(3, 1)).is_err());
        assert!(appell_m(&lp(0, 2, 5), exp(3, 1)).is_ok());
    }

    #[test]
    fn truncation_monotone() {
        let p = lp(2, 3, 7);
        let lo = series_n(&p, exp(2, 1)).unwrap();
        let hi = series_n(&p, exp(4, 1)).unwrap().truncate(exp(2, 1));
        assert_eq!(lo, hi);
        let lo = appell_m(&p, exp(2, 1)).unwrap();
        let hi = appell_m(&p, exp(5, 1)).unwrap().truncate(exp(2, 1));
        assert_eq!(lo, hi);
    }
}
