//! Solves the radial Poincaré equation for a range of c and reports how
//! each solution ends: an interior cusp for c < 0, the explicit 2 - 2√t at
//! c = 0, and a power law t^{-ρ(c)} at the origin for c > 0.
//!
//!     cargo run --example poincare_family

use kepler_balance::poincare::{origin_fit, rho, solve_poincare};

fn main() -> kepler_balance::Result<()> {
    for c in [-0.5, -0.1, -0.01, 0.0, 0.25, 1.0, 1.5, 4.0] {
        let sol = solve_poincare(c, 1e-4, 1e-10)?;
        print!(
            "c = {c:>5}: {} steps, Ψ residual {:.1e}",
            sol.grid.len(),
            sol.psi_residual_max
        );
        if let Some(t0) = sol.t0 {
            println!(", terminates at t0 = {t0:.10} with f(t0) = {:.10}", sol.f_at_t0().unwrap());
        } else if c == 0.0 {
            let t = 0.3;
            println!(", f(0.3) - (2 - 2√0.3) = {:.1e}", sol.eval(t)?.f - (2.0 - 2.0 * t.sqrt()));
        } else {
            let fit = origin_fit(&sol)?;
            println!(
                ", f ~ {:.4} t^-{:.8} (ρ(c) = {:.8})",
                fit.prefactor,
                fit.exponent,
                rho(c)?
            );
        }
    }
    Ok(())
}
