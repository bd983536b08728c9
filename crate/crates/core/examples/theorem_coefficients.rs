//! The coefficient table of H_c and the exact check of its transformation laws.

use mocktheta::theorem::{alpha, beta, build_table, verify_theorem, Kind, VerifyOptions};

fn main() -> mocktheta::Result<()> {
    let c = 5;
    println!("alpha_5(0,1) = {}", alpha(5, 0, 1, c)?);
    println!("beta_35(2,0) = {}", beta(35, 2, 0, c)?);

    let t = build_table(c)?;
    println!("c = {c}: {} alpha and {} beta entries", t.len(Kind::Alpha), t.len(Kind::Beta));
    for e in t.entries(Kind::Alpha).take(3) {
        println!("  alpha_{}({},{}) = {}", e.h, e.a, e.b, e.scaled.value(&t.level()));
    }

    for c in [5, 7] {
        let r = verify_theorem(c, VerifyOptions::default())?;
        for id in &r.identities {
            println!("c = {c}: {:<18} {:>6} checked, {} failures", id.identity, id.instances_checked, id.failures.len());
        }
    }
    Ok(())
}
