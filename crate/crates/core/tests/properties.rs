use kepler_balance::asymptotics::{lerch_phi_via, LerchPath};
use kepler_balance::io::parse_grid;
use kepler_balance::kernel::{closed_form_f_phi_v, moment_phi_v_closed};
use kepler_balance::poincare::{psi, rho, solve_poincare};
use kepler_balance::profiles::{
    density_from_derivs, monge_ampere_density, phi_v, phi_v_indices, phi_v_power_form, Derivs,
    RadialProfile,
};
use kepler_balance::series::{rat, LSeries, Rational};
use proptest::prelude::*;

fn power_form_moment(v: f64, k: usize) -> f64 {
    let (s, k) = (v.sqrt(), k as f64);
    ((1.0 + s) / (k + 1.0 + (s - 1.0) / 4.0) - (1.0 - s) / (k + 1.0 - (1.0 + s) / 4.0))
        / (2.0 * s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rho_solves_its_cubic(a in 1e-10f64..1e6) {
        let r = rho(a).unwrap();
        prop_assert!(r >= 0.0);
        prop_assert!((r * r * r + r * r / 2.0 - a).abs() <= 1e-15 * a.max(1.0));
    }

    #[test]
    fn rho_is_increasing(a in 0.0f64..100.0, da in 1e-6f64..10.0) {
        prop_assert!(rho(a + da).unwrap() > rho(a).unwrap());
    }

    #[test]
    fn phi_v_indices_decompose_the_exponent(v in 0.0f64..400.0) {
        let (m, delta) = phi_v_indices(v);
        prop_assert!((0.0..1.0).contains(&delta));
        let q = (v.sqrt() - 3.0) / 4.0;
        prop_assert!((m as f64 - 1.0 + delta - q).abs() < 1e-12);
    }

    #[test]
    fn phi_v_forms_agree(v in 0.01f64..50.0, t in 0.01f64..0.99) {
        let a = phi_v(v, t).unwrap();
        let b = phi_v_power_form(v.sqrt(), t);
        let c = phi_v_power_form(-v.sqrt(), t);
        prop_assert!((a - b).abs() <= 1e-11 * a.abs().max(1.0));
        prop_assert!((a - c).abs() <= 1e-11 * a.abs().max(1.0));
    }

    #[test]
    fn phi_v_moments_match_the_power_form(v in 0.01f64..100.0, extra in 0usize..30) {
        let (m, _) = phi_v_indices(v);
        let k = m as usize + extra;
        let closed = moment_phi_v_closed(v, k).unwrap();
        let direct = power_form_moment(v, k);
        prop_assert!(closed > 0.0);
        prop_assert!((closed - direct).abs() <= 1e-12 * closed);
    }

    #[test]
    fn phi_v_kernel_closed_form_matches_its_series(v in 0.01f64..60.0, t in 0.05f64..0.8) {
        let (m, _) = phi_v_indices(v);
        let mut sum = 0.0;
        for k in m as usize..2000 {
            sum += (2 * k + 1) as f64 / moment_phi_v_closed(v, k).unwrap() * t.powi(k as i32);
        }
        let closed = closed_form_f_phi_v(v, t).unwrap();
        prop_assert!((closed - sum).abs() <= 1e-11 * sum.abs());
    }

    #[test]
    fn explicit_solutions_have_unit_density(n in 2u32..9, t in 1e-8f64..0.99999) {
        let p = RadialProfile::explicit_n(n).unwrap();
        prop_assert!((monge_ampere_density(&p, n, t).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_is_homogeneous(
        n in 2u32..7,
        t in 0.01f64..0.99,
        f in 0.1f64..3.0,
        fp in -3.0f64..-0.1,
        fpp in -3.0f64..3.0,
        lambda in 0.2f64..5.0,
    ) {
        let w = density_from_derivs(n, t, Derivs { f, fp, fpp });
        let scaled = density_from_derivs(
            n,
            t,
            Derivs { f: lambda * f, fp: lambda * fp, fpp: lambda * fpp },
        );
        let expected = lambda.powi(n as i32 + 1) * w;
        prop_assert!((scaled - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn grids_stay_inside_the_unit_interval(a in 0.001f64..0.999, b in 0.001f64..0.999, n in 1usize..200) {
        let g = parse_grid(&format!("{a}:{b}:{n}")).unwrap();
        prop_assert_eq!(g.len(), n);
        prop_assert!(g.iter().all(|t| *t > 0.0 && *t < 1.0));
        prop_assert_eq!(g[0], a);
        if n > 1 {
            prop_assert!((g[n - 1] - b).abs() < 1e-15);
        }
    }

    #[test]
    fn series_reciprocal_and_cube_root(coeffs in prop::collection::vec(-5i64..5, 1..7)) {
        let mut c: Vec<Rational> = vec![rat(1, 1)];
        c.extend(coeffs.iter().map(|x| rat(*x, 3)));
        let s = LSeries::<Rational>::from_coeffs(&c);
        let one = LSeries::<Rational>::constant(rat(1, 1), s.order());
        let inv = s.reciprocal().unwrap();
        prop_assert_eq!(&(&s * &inv).truncate(s.order()), &one);
        let r = s.cbrt().unwrap();
        prop_assert_eq!(&(&(&r * &r) * &r).truncate(s.order()), &s);
    }

    #[test]
    fn lerch_paths_agree(ell in 0.05f64..5.0, s in -1.5f64..3.0, n in 0usize..3) {
        let t = (-ell).exp();
        let a = lerch_phi_via(t, s, n, LerchPath::Direct).unwrap();
        let b = lerch_phi_via(t, s, n, LerchPath::Boundary).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{} vs {}", a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn poincare_solutions_conserve_psi(c in -0.2f64..2.0) {
        let sol = solve_poincare(c, 1e-3, 1e-10).unwrap();
        for g in sol.grid.iter().step_by(7) {
            let value = psi(g.t, g.f, g.fp).unwrap();
            prop_assert!((value - c).abs() <= 1e-9 * (g.t / g.f.powi(3)).max(1.0));
        }
        // f decreases towards the boundary
        for w in sol.grid.windows(2) {
            prop_assert!((w[0].t - w[1].t) * (w[0].f - w[1].f) < 0.0);
        }
    }
}
