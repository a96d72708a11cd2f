//! The cusp of a c < 0 solution: near t0 the profile is a smooth function Q
//! of σ = √(t - t0) with Q'(0) = 0 and Q'''(0) = -4√2/(t0 √f(t0)).
//!
//!     cargo run --example cusp

use kepler_balance::poincare::{cusp_data, solve_poincare};

fn main() -> kepler_balance::Result<()> {
    for c in [-0.05, -0.1, -0.2, -0.5] {
        let sol = solve_poincare(c, 1e-3, 1e-10)?;
        let d = cusp_data(&sol)?;
        println!(
            "c = {c}: t0 = {:.10}, f0 = {:.10}, |c + t0/f0^3| = {:.1e}",
            d.t0, d.f0, d.event_residual
        );
        println!(
            "  Q'(0) ≈ {:.2e}, Q''(0) ≈ {:.6}, Q'''(0) ≈ {:.6} vs {:.6}",
            d.qp, d.qpp, d.qppp_num, d.qppp_formula
        );
    }
    Ok(())
}
