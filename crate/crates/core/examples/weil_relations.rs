//! The Weil representation on C[Z/12c^2]: S, T and the modular relations.

use mocktheta::weil::{check_all_relations, rho_s_apply, rho_t_apply, DiscGroup, DiscVector};

fn main() -> mocktheta::Result<()> {
    let g = DiscGroup::new(1)?;
    let v = DiscVector::basis(g, 1);
    println!("rho(T) e_1 = {}", rho_t_apply(&v).get(1));
    let s = rho_s_apply(&v);
    for (h, x) in s.entries().take(4) {
        println!("rho(S) e_1 at {h}: {x}");
    }

    for c in [1, 5] {
        for r in check_all_relations(c)? {
            println!("c = {c}: {:<24} {} ({} basis vectors)", r.relation, r.status, r.instances_checked);
        }
    }
    Ok(())
}
