//! Assembles components of H_5 and shows that only exponents in
//! -h^2/600 + Z survive the sum over (a, b).

use mocktheta::qseries::exp;
use mocktheta::theorem::{build_table, grading_check, HcAssembler};

fn main() -> mocktheta::Result<()> {
    let t = build_table(5)?;
    let asm = HcAssembler::new(&t, exp(3, 1))?;
    for h in [1, 11, 19] {
        let comp = asm.component(h);
        let lead = comp.leading().map(|(e, x)| format!("{x} q^{e}"));
        println!("H_{h}: {} terms below q^3, leading {}", comp.len(), lead.unwrap_or_default());
    }

    let r = grading_check(&t, 5)?;
    println!(
        "{} components, {} exponents checked, {} off the grade",
        r.components_checked, r.terms_checked, r.failures
    );
    Ok(())
}
