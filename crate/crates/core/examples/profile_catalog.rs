//! Evaluates each built-in radial profile and its Monge–Ampère density.
//!
//!     cargo run --example profile_catalog

use kepler_balance::profiles::{monge_ampere_density, ProfileSpec, RadialProfile};

fn main() -> kepler_balance::Result<()> {
    let specs = [
        "sqrt_poincare",
        "explicit_n:n=3",
        "phi_v_candidate:v=1",
        "taylor_at_one:coeffs=0;1;-0.25",
        "constant_one",
    ];
    for text in specs {
        let spec = ProfileSpec::parse_inline(text)?;
        let p = RadialProfile::from_spec(&spec)?;
        let n = match spec {
            ProfileSpec::ExplicitN { n } => n,
            _ => 2,
        };
        println!("{text}  (n = {n})");
        println!("  {:>6} {:>14} {:>14} {:>14} {:>14}", "t", "f", "f'", "f''", "W[f]");
        for t in [0.2, 0.5, 0.8, 0.95] {
            if t < p.t_lower() {
                continue;
            }
            let d = p.eval(t)?;
            let w = monge_ampere_density(&p, n, t)?;
            println!(
                "  {t:>6} {:>14.8} {:>14.8} {:>14.8} {:>14.8}",
                d.f, d.fp, d.fpp, w
            );
        }
    }
    Ok(())
}
