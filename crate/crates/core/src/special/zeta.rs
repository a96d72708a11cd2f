//! Riemann zeta jets and the Stieltjes constants.

use std::f64::consts::PI;

use super::gamma::{bernoulli_f64, ln_gamma, polygamma};
use super::jet::{factorial, Jet};

/// Stieltjes constants `γ_0 … γ_10` in the standard convention
/// `ζ(1+z) = 1/z + Σ_j (-1)^j γ_j z^j / j!`.
pub const STIELTJES: [f64; 11] = [
    0.5772156649015328606,
    -0.07281584548367672486,
    -0.009690363192872318485,
    0.002053834420303345866,
    0.002325370065467300057,
    0.0007933238173010627018,
    -0.0002387693454301996099,
    -0.0005272895670577510461,
    -0.0003521233538030395096,
    -0.00003439477441808804818,
    0.0002053328149090647947,
];

const EM_TERMS: usize = 20;
const EM_CORRECTIONS: usize = 15;

/// Euler–Maclaurin jet of `ζ(s0 + z)`, or of `ζ(1 + z) - 1/z` when `s0 == 1`.
fn euler_maclaurin_jet(s0: f64, len: usize, terms: usize, corrections: usize) -> Jet {
    let n = terms as f64;
    let ln_n = n.ln();
    let mut acc = Jet::constant(0.0, len);
    for k in 1..terms {
        let lk = (k as f64).ln();
        acc = &acc + &Jet::exp_affine(-s0 * lk, -lk, len);
    }
    // N^{1-s} / (s-1)
    if s0 == 1.0 {
        // (N^{-z} - 1)/z
        let mut v = Vec::with_capacity(len);
        let mut c = -ln_n;
        for m in 0..len {
            v.push(c);
            c *= -ln_n / (m + 2) as f64;
        }
        acc = &acc + &Jet(v);
    } else {
        let head = Jet::exp_affine((1.0 - s0) * ln_n, -ln_n, len).div(&Jet::affine(s0 - 1.0, 1.0, len));
        acc = &acc + &head;
    }
    acc = &acc + &Jet::exp_affine(-s0 * ln_n, -ln_n, len).scale(0.5);
    // Σ_r B_{2r}/(2r)! (s)_{2r-1} N^{1-s-2r}
    let mut rising = Jet::affine(s0, 1.0, len);
    for r in 1..=corrections {
        if r > 1 {
            let a = Jet::affine(s0 + (2 * r - 3) as f64, 1.0, len);
            let b = Jet::affine(s0 + (2 * r - 2) as f64, 1.0, len);
            rising = &(&rising * &a) * &b;
        }
        let p = Jet::exp_affine((1.0 - s0 - (2 * r) as f64) * ln_n, -ln_n, len);
        let w = bernoulli_f64(2 * r) / factorial(2 * r);
        acc = &acc + &(&rising * &p).scale(w);
    }
    acc
}

/// Jet of `ζ(s0 + z)` for `s0 ≠ 1`, of length `len`.
pub fn zeta_jet(s0: f64, len: usize) -> Jet {
    zeta_jet_scaled(s0, len, 0.0)
}

/// Jet of `e^{ln_scale} ζ(s0 + z)`. The scale is folded into the reflection
/// formula, so large `|s0|` with a compensating scale stays finite.
pub fn zeta_jet_scaled(s0: f64, len: usize, ln_scale: f64) -> Jet {
    assert!(s0 != 1.0, "ζ has a pole at s = 1");
    if s0 >= 40.0 {
        // direct sum converges to machine precision
        let mut acc = Jet::constant(0.0, len);
        for k in 1..=12 {
            let lk = (k as f64).ln();
            acc = &acc + &Jet::exp_affine(ln_scale - s0 * lk, -lk, len);
        }
        return acc;
    }
    if s0 >= -0.25 {
        return euler_maclaurin_jet(s0, len, EM_TERMS, EM_CORRECTIONS).scale(ln_scale.exp());
    }
    // ζ(s) = 2 (2π)^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
    let x = 1.0 - s0;
    let two_pi_ln = (2.0 * PI).ln();
    let mut expo = vec![0.0; len];
    expo[0] = ln_scale + 2f64.ln() + (s0 - 1.0) * two_pi_ln + ln_gamma(x);
    for (m, slot) in expo.iter_mut().enumerate().skip(1) {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * polygamma(m - 1, x) / factorial(m);
    }
    if len > 1 {
        expo[1] += two_pi_ln;
    }
    let magnitude = Jet(expo).exp();
    let sine = Jet::sin_half_pi_affine(s0, PI / 2.0, len);
    let zeta_reflected = zeta_jet(x, len).reflect();
    &(&magnitude * &sine) * &zeta_reflected
}

pub fn zeta(s: f64) -> f64 {
    zeta_jet(s, 1).0[0]
}

/// `ζ^{(n)}(s)`.
pub fn zeta_derivative(s: f64, n: usize) -> f64 {
    zeta_jet(s, n + 1).derivative(n)
}

/// Recomputes `γ_0 … γ_max` from the Euler–Maclaurin expansion of
/// `ζ(1+z) - 1/z`; [`STIELTJES`] holds the same values.
pub fn stieltjes_computed(max: usize) -> Vec<f64> {
    // few direct terms keep the (log k)^j cancellation small at high j;
    // more corrections make up for the small N
    let jet = euler_maclaurin_jet(1.0, max + 1, 6, 25);
    (0..=max)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * jet.derivative(j)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(s: f64, reference: [f64; 3]) {
        let jet = zeta_jet(s, 3);
        for (n, r) in reference.iter().enumerate() {
            let got = jet.derivative(n);
            assert!(
                (got - r).abs() <= 1e-13 * r.abs().max(1.0),
                "ζ^({n})({s}) = {got}, expected {r}"
            );
        }
    }

    #[test]
    fn zeta_jets_against_reference() {
        check(0.5, [-1.460354508809586813, -3.922646139209151727, -16.00835701392866142]);
        check(-0.5, [-0.2078862249773545660, -0.3608543395999476073, -0.5962291767650159617]);
        check(-3.5, [0.004441011335479431959, 0.009154213629941512461, -0.001787508571840275039]);
        check(2.0, [1.644934066848226436, -0.9375482543158437537, 1.989280234298901023]);
        check(-2.0, [0.0, -0.03044845705839327078, -0.06576351618742519559]);
        check(-7.0, [0.004166666666666666667, -0.0007286426801592406525, -0.009590000947966956533]);
        check(0.0, [-0.5, -0.9189385332046727418, -2.006356455908584851]);
        check(3.3, [1.151944794720773713, -0.1401918773584932479, 0.1544439251587380813]);
        check(25.0, [1.000000029803503515, -2.0658693595011039934934e-8, 1.432004181252357979910553e-8]);
    }

    #[test]
    fn stieltjes_recomputation_matches_table() {
        let g = stieltjes_computed(10);
        for (j, (a, b)) in g.iter().zip(STIELTJES.iter()).enumerate() {
            assert!((a - b).abs() < 1e-13, "γ_{j}: {a} vs {b}");
        }
    }

    #[test]
    fn scaled_reflection_stays_finite() {
        // ζ(-301) L^{302}/302! at L = 6 is of moderate size
        let l: f64 = 6.0;
        let scale = 302.0 * l.ln() - ln_gamma(303.0);
        let j = zeta_jet_scaled(-301.0, 3, scale);
        assert!(j.0.iter().all(|c| c.is_finite()));
        assert!(j.0[0].abs() < 1.0);
    }
}
