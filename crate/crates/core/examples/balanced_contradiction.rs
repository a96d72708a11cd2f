//! Builds the weight f = (4/F)^{1/3} from the φ_v kernel with v = 1. It
//! balances its own kernel to rounding error, yet its Monge–Ampère density
//! is not φ_1, so the weight cannot be balanced.
//!
//!     cargo run --example balanced_contradiction

use kepler_balance::kernel::{defect_with, estimate_c_with, kernel_density, KernelSeries};
use kepler_balance::profiles::{monge_ampere_density, phi_v, RadialProfile};

fn main() -> kepler_balance::Result<()> {
    let cand = RadialProfile::phi_v_candidate(1.0)?;
    let mut ks = KernelSeries::new(kernel_density(&cand, 2), 2, 1e-14)?;

    let est = estimate_c_with(&cand, 2, &mut ks)?;
    println!("estimated c = {:.10} (exact 4)", est.c);

    println!("{:>5} {:>12} {:>12} {:>12} {:>12}", "t", "defect", "W[f]", "φ_1", "formula");
    for i in 1..=9 {
        let t = i as f64 / 10.0;
        let d = defect_with(&cand, 2, 4.0, t, &mut ks)?;
        let w = monge_ampere_density(&cand, 2, t)?;
        let formula =
            16.0 * t * (1.0 + t) * (1.0 + 2.0 * t + 5.0 * t * t) / (1.0 + 3.0 * t).powi(4);
        println!(
            "{t:>5} {:>12.2e} {w:>12.8} {:>12.8} {formula:>12.8}",
            d.value,
            phi_v(1.0, t)?
        );
    }
    Ok(())
}
