//! Moments of the φ_v densities and the kernel diagonal F(t), computed by
//! quadrature plus series summation and compared with the closed forms.
//!
//!     cargo run --example kernel_closed_form

use kepler_balance::kernel::{
    closed_form_f_phi_v, kernel_series, moment_phi_v_closed, moments, Density,
};

fn main() -> kepler_balance::Result<()> {
    for v in [0.0, 1.0, 9.0, 30.0] {
        let density = Density::PhiV { v };
        let seq = moments(&density, 6, 1e-14)?;
        println!("v = {v}: moments start at k = {}", seq.k_min);
        for k in seq.k_min..=6 {
            let q = seq.get(k)?;
            let exact = moment_phi_v_closed(v, k)?;
            println!("  c_{k} = {q:.15}  closed form {exact:.15}");
        }
        for t in [0.1, 0.5, 0.9, 0.99] {
            let s = kernel_series(&density, 2, t, 1e-13)?;
            let exact = closed_form_f_phi_v(v, t)?;
            println!(
                "  F({t}) = {:.12e} from {} terms, closed form {exact:.12e}",
                s.value, s.terms_used
            );
        }
    }

    // φ ≡ 1 in several dimensions
    for n in 2..=4 {
        let s = kernel_series(&Density::Constant, n, 0.5, 1e-13)?;
        println!("φ = 1, n = {n}: F(0.5) = {:.12}", s.value);
    }
    Ok(())
}
