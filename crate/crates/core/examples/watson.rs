//! Watson's relation between the fifth order functions φ₀, χ₀ and F₀.

use mocktheta::qseries::exp;
use mocktheta::special::{fifth_order_chi0, fifth_order_f0, fifth_order_phi0, watson_defect};

fn main() {
    let t = 12;
    println!("phi0 = {}", fifth_order_phi0(t));
    println!("chi0 = {}", fifth_order_chi0(t));
    println!("F0   = {}", fifth_order_f0(t));

    let d = watson_defect(101);
    println!("phi0(-q) + chi0(q) - 2 F0(q) below q^101: {}", if d.is_zero() { "0" } else { "nonzero" });
    assert!(d.is_zero());
    assert_eq!(d.trunc(), Some(exp(101, 1)));
}
