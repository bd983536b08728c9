//! Exact arithmetic in cyclotomic fields.

use mocktheta::CycNumber;

fn main() -> mocktheta::Result<()> {
    let z = CycNumber::root_of_unity(1, 5);
    let s = CycNumber::sin_pi(1, 5);
    println!("zeta_5 = {z}");
    println!("sin(pi/5) = {s}  ~ {:.15}", s.embed_float().re);

    // 1 + ζ + ζ² + ζ³ + ζ⁴ = 0
    let sum: CycNumber = (0..5).map(|k| CycNumber::root_of_unity(k, 5)).sum();
    println!("sum of fifth roots = {sum}");

    // √12 from its expression in ζ_12, squared
    let r = CycNumber::sqrt12();
    println!("sqrt12^2 = {}", &r * &r);

    let q = s.inv()?;
    println!("1/sin(pi/5) = {q}");
    println!("  algebraic integer: {}", q.is_algebraic_integer());
    println!("  json: {}", serde_json::to_string(&q)?);
    Ok(())
}
