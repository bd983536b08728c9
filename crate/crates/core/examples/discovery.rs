//! Recovers the coefficients numerically at p = 5 and 7 and prints the
//! nullspace dimension and residuals.

use mocktheta::discovery::{discover, ROW_TOL};

fn main() -> mocktheta::Result<()> {
    for p in [5, 7] {
        let r = discover(p, ROW_TOL)?;
        println!(
            "p = {p}: {} unknowns ({} parameters), {} rows ({} T, {} S)",
            r.unknowns, r.parameters, r.rows, r.t_rows, r.s_rows
        );
        println!(
            "  nullspace dim {}  gap {:?} / {:?}",
            r.nullspace_dim, r.largest_null_singular_value, r.smallest_nonnull_singular_value
        );
        println!(
            "  theorem residual {:.2e}  membership {:.2e}  basis residual {:.2e}",
            r.theorem_residual, r.membership_residual, r.basis_residual
        );
        println!(
            "  support {}  nu {}  propagation {}",
            r.support.passed(),
            r.nu.passed(),
            r.propagation.passed()
        );
    }
    Ok(())
}
