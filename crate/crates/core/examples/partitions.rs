//! q-series basics: the Euler function, partition numbers and Pochhammer symbols.

use mocktheta::qseries::{euler_function, exp, partition_series};

fn main() {
    let e = euler_function(30);
    println!("(q;q)_inf = {e}");
    let p = partition_series(30);
    let counts: Vec<String> = (0..30).map(|n| p.coeff(exp(n, 1)).to_string()).collect();
    println!("p(n), n < 30: {}", counts.join(" "));

    let check = e.mul(&p);
    println!("(q;q)_inf * sum p(n) q^n = {check}");

    // q-series at a rational exponent: q^{1/24} η-style shift
    let eta = e.shift(exp(1, 24));
    println!("leading exponent of q^(1/24)(q;q)_inf: {:?}", eta.min_exponent().map(|x| x.to_string()));
}
