//! Exact boundary asymptotics: the φ_v germ in L = log(1/t), its moment
//! expansion in 1/k, and the coefficients A_m of 1/c_k, all in rationals.
//!
//!     cargo run --example germ_pipeline

use kepler_balance::asymptotics::{germ_family_f, phi_v_a_coefficients, phi_v_l_coeffs};
use kepler_balance::profiles::{germ_residual, RadialProfile};
use kepler_balance::series::rat;

fn main() -> kepler_balance::Result<()> {
    for sqrt_v in [1, 2, 3, 5] {
        let v = rat(sqrt_v * sqrt_v, 1);
        let phi = phi_v_l_coeffs(&v, 4);
        let a = phi_v_a_coefficients(&v, 8)?;
        println!("v = {v}");
        println!(
            "  φ_v = {}",
            phi.iter()
                .enumerate()
                .map(|(j, c)| format!("({c}) L^{j}"))
                .collect::<Vec<_>>()
                .join(" + ")
        );
        println!(
            "  A_1..A_8 = {}",
            a[1..].iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        );
        let f = germ_family_f(&v, 3)?;
        println!(
            "  f = {} L + ({}) L^2 + ({}) L^3 + ...",
            f.coeff(1, 0),
            f.coeff(2, 0),
            f.coeff(3, 0)
        );
    }

    // W[2 - 2√t] = 1 = φ_1, while φ_0 differs from L^2 on
    let p = RadialProfile::sqrt_poincare();
    println!("W[2 - 2√t] - φ_1: {:?}", germ_residual(&p, 1.0, 4)?);
    println!("W[2 - 2√t] - φ_0: {:?}", germ_residual(&p, 0.0, 4)?);
    Ok(())
}
