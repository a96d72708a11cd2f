//! Self-check suite: one check per reproducible claim, each with a pinned
//! tolerance. Used by the `verify` subcommand.

use std::sync::Arc;

use serde::Serialize;

use crate::asymptotics::{
    boundary_expansion_f, lerch_phi_direct, lerch_phi_via, phi_v_a_coefficients,
    polylog_lerch_formula, LerchContext, LerchPath,
};
use crate::error::Result;
use crate::kernel::{
    closed_form_f_phi_v, defect_with, kernel_density, kernel_series, moment_phi_v_closed,
    moments, Density, KernelSeries,
};
use crate::poincare::{
    cusp_data, origin_exponent, radial_length, rho, solve_poincare, solve_poincare_with,
    taylor_at_one, PoincareOptions,
};
use crate::profiles::{monge_ampere_density, RadialProfile};
use crate::series::{rat, InverseKSeries, Rational};

/// Tags of the checks, in report order.
pub const TAGS: [&str; 11] = [
    "monge-ampere",
    "moments",
    "kernel",
    "contradiction",
    "asymptotics",
    "lerch",
    "boundary",
    "poincare",
    "cusp",
    "origin",
    "completeness",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub tag: &'static str,
    pub passed: bool,
    /// Short human-readable account of the measured quantities.
    pub detail: String,
}

impl CheckResult {
    fn new(tag: &'static str, passed: bool, detail: String) -> Self {
        CheckResult {
            tag,
            passed,
            detail,
        }
    }

    /// One report line: `PASS tag: detail`.
    pub fn line(&self) -> String {
        format!(
            "{} {:<14} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.tag,
            self.detail
        )
    }
}

/// Runs one check by tag. Errors inside a check count as a failure.
pub fn run_check(tag: &str) -> Option<CheckResult> {
    let tag = *TAGS.iter().find(|t| **t == tag)?;
    let outcome = match tag {
        "monge-ampere" => monge_ampere(),
        "moments" => moment_closed_forms(),
        "kernel" => kernel_closed_form(),
        "contradiction" => contradiction(),
        "asymptotics" => asymptotic_pipeline(),
        "lerch" => lerch(),
        "boundary" => boundary(),
        "poincare" => poincare(),
        "cusp" => cusp(),
        "origin" => origin(),
        "completeness" => completeness(),
        _ => unreachable!(),
    };
    Some(outcome.unwrap_or_else(|e| CheckResult::new(tag, false, format!("error: {e}"))))
}

/// Runs the selected checks (all when `only` is empty), in report order.
pub fn run(only: &[String]) -> Vec<CheckResult> {
    TAGS.iter()
        .filter(|t| only.is_empty() || only.iter().any(|o| o == *t))
        .filter_map(|t| run_check(t))
        .collect()
}

fn unit_grid(count: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
}

fn monge_ampere() -> Result<CheckResult> {
    let mut worst = 0f64;
    let mut profiles = vec![(RadialProfile::sqrt_poincare(), 2)];
    for n in 2..=6 {
        profiles.push((RadialProfile::explicit_n(n)?, n));
    }
    for (p, n) in &profiles {
        for t in unit_grid(1000, 1e-6, 1.0 - 1e-6) {
            worst = worst.max((monge_ampere_density(p, *n, t)? - 1.0).abs());
        }
    }
    Ok(CheckResult::new(
        "monge-ampere",
        worst <= 1e-12,
        format!("max |W - 1| = {worst:.2e} (tol 1e-12)"),
    ))
}

fn moment_closed_forms() -> Result<CheckResult> {
    let mut worst = 0f64;
    for v in [0.0, 0.5, 1.0, 4.0, 9.0] {
        let m = moments(&Density::PhiV { v }, 20, 1e-14)?;
        for k in m.k_min..=20 {
            let exact = moment_phi_v_closed(v, k)?;
            worst = worst.max((m.get(k)? - exact).abs() / exact.abs());
        }
    }
    let c1 = moments(&Density::PhiV { v: 9.0 }, 1, 1e-14)?.get(1)?;
    let c0 = moments(&Density::PhiV { v: 0.0 }, 0, 1e-14)?.get(0)?;
    let spots = (c1 - 0.6).abs().max((c0 - 8.0 / 9.0).abs());
    Ok(CheckResult::new(
        "moments",
        worst <= 1e-10 && spots <= 1e-10,
        format!("max rel err = {worst:.2e} (tol 1e-10); c_1(φ_9), c_0(φ_0) off by {spots:.2e}"),
    ))
}

fn kernel_closed_form() -> Result<CheckResult> {
    let mut worst = 0f64;
    for v in [0.0, 1.0, 9.0] {
        let density = Density::PhiV { v };
        for t in [0.1, 0.5, 0.9] {
            let series = kernel_series(&density, 2, t, 1e-13)?.value;
            let exact = closed_form_f_phi_v(v, t)?;
            worst = worst.max((series - exact).abs() / exact.abs());
        }
    }
    Ok(CheckResult::new(
        "kernel",
        worst <= 1e-9,
        format!("max rel err = {worst:.2e} (tol 1e-9)"),
    ))
}

fn contradiction() -> Result<CheckResult> {
    let cand = RadialProfile::phi_v_candidate(1.0)?;
    let mut ks = KernelSeries::new(kernel_density(&cand, 2), 2, 1e-14)?;
    let mut worst = 0f64;
    for t in unit_grid(9, 0.1, 0.9) {
        worst = worst.max(defect_with(&cand, 2, 4.0, t, &mut ks)?.value.abs());
    }
    let w = monge_ampere_density(&cand, 2, 0.1)?;
    let formula = 16.0 * 0.1 * 1.1 * (1.0 + 0.2 + 0.05) / 1.3f64.powi(4);
    let gap = (w - 1.0).abs();
    Ok(CheckResult::new(
        "contradiction",
        worst <= 1e-9 && gap >= 0.2 && (w - formula).abs() <= 1e-12,
        format!("sup |F - 4/f^3| = {worst:.2e} (tol 1e-9); |W(0.1) - 1| = {gap:.4} (need >= 0.2)"),
    ))
}

fn asymptotic_pipeline() -> Result<CheckResult> {
    let mut ok = true;
    for sqrt_v in [1, 2, 3] {
        let v = rat(sqrt_v * sqrt_v, 1);
        let a = phi_v_a_coefficients(&v, 10)?;
        let a2 = (rat(1, 1) - &v) / rat(16, 1);
        ok &= a[1] == Rational::from_integer(0.into()) && a[2] == a2;
        for (m, am) in a.iter().enumerate().skip(2) {
            let factor = Rational::new(1.into(), num_bigint::BigInt::from(1u64 << (m - 2)));
            ok &= *am == &a2 * &factor;
        }
    }
    Ok(CheckResult::new(
        "asymptotics",
        ok,
        "exact A_1 = 0, A_m = 2^{2-m}(1-v)/16 for √v in {1,2,3}, m <= 10".into(),
    ))
}

fn lerch() -> Result<CheckResult> {
    let mut identity = 0f64;
    for m in 1..=5u32 {
        for ell in unit_grid(12, 0.1, 6.0) {
            let series = lerch_phi_direct((-ell).exp(), m as f64, 0)?.0 * (-ell).exp();
            identity = identity.max((series - polylog_lerch_formula(m, ell)?).abs());
        }
    }
    let mut paths = 0f64;
    for n in [1, 2] {
        for s in [0.0, 1.0, 2.0] {
            for ell in [0.1f64, 1.0, 3.0, 6.0] {
                let t = (-ell).exp();
                let a = lerch_phi_via(t, s, n, LerchPath::Direct)?;
                let b = lerch_phi_via(t, s, n, LerchPath::Boundary)?;
                paths = paths.max((a - b).abs() / a.abs().max(1.0));
            }
        }
    }
    let ctx = LerchContext::shared();
    let recurrence = ctx.recurrence_residual();
    let recomputed = LerchContext::build(10, 10, true)?;
    let gamma1 = (recomputed.stieltjes[1] + 0.072_815_845_483_676_72).abs();
    Ok(CheckResult::new(
        "lerch",
        identity <= 1e-9 && paths <= 1e-8 && recurrence <= 1e-12 && gamma1 <= 1e-10,
        format!(
            "polylog identity {identity:.2e} (tol 1e-9); two paths {paths:.2e} (tol 1e-8); \
             recurrence {recurrence:.2e} (tol 1e-12); γ_1 {gamma1:.2e} (tol 1e-10)"
        ),
    ))
}

fn boundary() -> Result<CheckResult> {
    // φ ≡ 1: 1/c_k = k + 1 exactly
    let inv = InverseKSeries::<f64>::monomial(-1, 0, 1.0, 8);
    let f = boundary_expansion_f(&inv, 2, 5)?;
    let exact = f.coeff(-3, 0) == 4.0
        && f.coeff(-2, 0) == 3.0
        && f.coeff(-1, 0) == 1.0
        && f.terms().count() == 3;
    Ok(CheckResult::new(
        "boundary",
        exact,
        format!(
            "singular part {} L^-3 + {} L^-2 + {} L^-1 ({} terms)",
            f.coeff(-3, 0),
            f.coeff(-2, 0),
            f.coeff(-1, 0),
            f.terms().count()
        ),
    ))
}

fn poincare() -> Result<CheckResult> {
    let sol = solve_poincare(0.0, 1e-3, 1e-10)?;
    let mut sup = 0f64;
    for t in unit_grid(4000, 1e-3, 1.0 - 1e-6) {
        sup = sup.max((sol.eval(t)?.f - (2.0 - 2.0 * t.sqrt())).abs());
    }
    let mut psi = 0f64;
    for c in [0.0, 0.5, 1.0, -0.1] {
        psi = psi.max(solve_poincare(c, 1e-3, 1e-10)?.psi_residual_max);
    }
    // start far closer to t = 1 and compare with the degree-4 polynomial
    let mut boot = 0f64;
    for c in [0.0, 0.5, 1.0, -0.1] {
        let q = taylor_at_one(c, 4)?;
        let fine = solve_poincare_with(
            c,
            &PoincareOptions {
                t_min: 0.5,
                tol: 1e-12,
                h0: 1e-6,
            },
        )?;
        for h in [1e-2, 1e-3] {
            let poly = -q[1] * h + q[2] * h * h / 2.0 - q[3] * h.powi(3) / 6.0 + q[4] * h.powi(4) / 24.0;
            boot = boot.max((fine.eval(1.0 - h)?.f - poly).abs() / (5.0 * h.powi(5)));
        }
    }
    Ok(CheckResult::new(
        "poincare",
        sup <= 1e-8 && psi <= 1e-10 && boot <= 1.0,
        format!(
            "c=0 sup err {sup:.2e} (tol 1e-8); Ψ residual {psi:.2e} (tol 1e-10); \
             bootstrap err / 5h^5 = {boot:.3} (tol 1)"
        ),
    ))
}

fn cusp() -> Result<CheckResult> {
    let sol = solve_poincare(-0.1, 1e-3, 1e-10)?;
    let d = cusp_data(&sol)?;
    let ratio = d.qppp_num / d.qppp_formula;
    Ok(CheckResult::new(
        "cusp",
        d.event_residual <= 1e-10 && (ratio - 1.0).abs() <= 1e-2,
        format!(
            "t0 = {:.10}, |c + t0/f0^3| = {:.2e} (tol 1e-10); Q'''(0) ratio {ratio:.5} (tol 1%)",
            d.t0, d.event_residual
        ),
    ))
}

fn origin() -> Result<CheckResult> {
    let mut worst = 0f64;
    for c in [1.0, 1.5] {
        let sol = solve_poincare(c, 1e-4, 1e-10)?;
        worst = worst.max((origin_exponent(&sol)? - rho(c)?).abs());
    }
    let exact = rho(1.5)? == 1.0;
    let mut residual = 0f64;
    for i in 0..=200 {
        let a = 10f64.powf(-12.0 + 24.0 * i as f64 / 200.0);
        let r = rho(a)?;
        residual = residual.max((r * r * r + r * r / 2.0 - a).abs() / a.max(1.0));
    }
    Ok(CheckResult::new(
        "origin",
        worst <= 1e-3 && exact && residual <= 1e-14,
        format!("exponent err {worst:.2e} (tol 1e-3); ρ(3/2) = 1: {exact}; ρ residual {residual:.2e} (tol 1e-14)"),
    ))
}

fn completeness() -> Result<CheckResult> {
    let c0 = RadialProfile::poincare_numeric(Arc::new(solve_poincare(0.0, 1e-6, 1e-10)?));
    let c1 = RadialProfile::poincare_numeric(Arc::new(solve_poincare(1.0, 1e-6, 1e-10)?));
    let l0 = radial_length(&c0, 0.9, 2e-3)?;
    let l1 = radial_length(&c1, 0.9, 2e-3)?;
    let target = 3.0 * rho(1.0)?;
    let ok = l0.integral.is_finite()
        && l1.integral.is_finite()
        && !l0.divergent
        && !l1.divergent
        && (l0.exponent_fit + 0.5).abs() <= 0.05
        && (l1.exponent_fit - target).abs() <= 0.05;
    Ok(CheckResult::new(
        "completeness",
        ok,
        format!(
            "c=0: length {:.6}, exponent {:.4} (want -0.5); c=1: length {:.6}, exponent {:.4} (want {target:.4})",
            l0.integral, l0.exponent_fit, l1.integral, l1.exponent_fit
        ),
    ))
}
