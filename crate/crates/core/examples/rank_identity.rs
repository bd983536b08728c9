//! The rank generating function R(ζ, q) three ways: the Eulerian series, the
//! Appell-Lerch N(a,0,c), and counting partitions by rank.

use mocktheta::qseries::exp;
use mocktheta::special::{
    rank_coefficient_from_counts, rank_count, rank_r, series_n, LevelParams,
};
use mocktheta::CycNumber;

fn main() -> mocktheta::Result<()> {
    let (a, c) = (2, 7);
    let t = exp(51, 1);
    let r = rank_r(a, c, t)?;
    let n = series_n(&LevelParams::new(c, a, 0)?, t)?;
    let scaled = n.scale(&CycNumber::sin_pi(a as i64, c).scale_int(4));
    println!("4 sin(2pi/7) N(2,0,7) = R(zeta_7^2, q) through q^50: {}", scaled.compare(&r).agrees());

    for k in 0..8u32 {
        println!("q^{k}: {}", r.coeff(exp(k as i64, 1)));
        assert_eq!(r.coeff(exp(k as i64, 1)), rank_coefficient_from_counts(a, c, k));
    }

    let row: Vec<u64> = (-5..=5).map(|m| rank_count(m, 8)).collect();
    println!("N(m, 8) for m = -5..5: {row:?}");
    Ok(())
}
