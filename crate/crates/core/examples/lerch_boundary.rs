//! Expansion of the Lerch transcendent near t = 1 in L = log(1/t), checked
//! against direct summation, and the polylogarithm formula.
//!
//!     cargo run --example lerch_boundary

use kepler_balance::asymptotics::{
    lerch_boundary_expansion, lerch_phi_direct, lerch_phi_via, polylog_lerch_formula,
    LerchContext, LerchPath,
};

fn main() -> kepler_balance::Result<()> {
    let ctx = LerchContext::shared();
    println!("Stieltjes constants: {:?}", &ctx.stieltjes[..4]);
    println!("Γ Laurent recurrence residual: {:.1e}", ctx.recurrence_residual());

    for (s, n) in [(0.0, 0), (2.0, 1), (0.5, 2)] {
        let e = lerch_boundary_expansion(s, n, 6)?;
        println!("s = {s}, n = {n}: singular {:?}", e.singular);
        println!("  regular {:?}", &e.regular[..4]);
        for ell in [0.1f64, 1.0, 4.0] {
            let t = (-ell).exp();
            let direct = lerch_phi_via(t, s, n, LerchPath::Direct)?;
            let boundary = lerch_phi_via(t, s, n, LerchPath::Boundary)?;
            println!("  L = {ell}: direct {direct:.15e}  boundary {boundary:.15e}");
        }
    }

    for m in 1..=4 {
        let ell = 0.5f64;
        let t = (-ell).exp();
        let series = t * lerch_phi_direct(t, m as f64, 0)?.0;
        println!(
            "Li_{m}(e^-0.5): series {series:.15}  formula {:.15}",
            polylog_lerch_formula(m, ell)?
        );
    }
    Ok(())
}
