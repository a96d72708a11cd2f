//! Radial length of a curve running into the origin, for the metric of a
//! Poincaré solution. A finite length means the metric is incomplete there.
//!
//!     cargo run --example completeness

use std::sync::Arc;

use kepler_balance::poincare::{radial_length, rho, solve_poincare};
use kepler_balance::profiles::RadialProfile;

fn main() -> kepler_balance::Result<()> {
    for c in [0.0, 0.5, 1.0] {
        let p = RadialProfile::poincare_numeric(Arc::new(solve_poincare(c, 1e-6, 1e-10)?));
        let l = radial_length(&p, 0.9, 2e-3)?;
        let expected = if c == 0.0 { -0.5 } else { 3.0 * rho(c)? };
        println!(
            "c = {c}: length {:.8} ± {:.1e}, integrand ~ x^{:.4} near 0 (expected {expected:.4})",
            l.integral, l.error, l.exponent_fit
        );
    }
    Ok(())
}
