//! The (12/.) character sum and the cyclotomic units sin(bk pi/c)/sin(pi/c).

use mocktheta::theorem::{cyclotomic_unit_check, gauss_sum, verify_gauss_lemma, verify_units};

fn main() -> mocktheta::Result<()> {
    println!("G(5, 25) = {}", gauss_sum(5, 25)?);
    println!("G(5, 3)  = {}", gauss_sum(5, 3)?);
    for c in [1, 5, 7, 25, 35] {
        let r = verify_gauss_lemma(c)?;
        println!("lemma at c = {c}: {} sums, {} failures", r.instances_checked, r.failures.len());
    }

    let u = cyclotomic_unit_check(25, 3, 7)?;
    println!("sin(21pi/25)/sin(pi/25) = {}", u.ratio);
    println!("  inverse is integral: {}", u.unit);
    for c in [5, 7, 25] {
        let r = verify_units(c)?;
        println!("units at c = {c}: {} pairs, {} distinct ratios, {} failures", r.instances_checked, r.distinct_ratios, r.failures.len());
    }
    Ok(())
}
