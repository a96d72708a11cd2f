//! Moments of radial densities, the weighted Bergman kernel diagonal
//! `F(t) = Σ N(k)/c_{k+n-2} t^k`, closed forms for the `φ_v` family and the
//! balanced defect `F - c/f^{n+1}`.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::asymptotics::moment_expansion;
use crate::error::{Error, Result};
use crate::profiles::{density_from_derivs, density_in_l, phi_v, phi_v_indices, RadialProfile};
use crate::quad::{tanh_sinh, QuadOptions};
use crate::series::{InverseKSeries, Rational};

/// Hard cap on the number of kernel series terms.
pub const MAX_TERMS: usize = 1_000_000;

/// Moments beyond this index may come from the boundary expansion of the density.
const ASYMPTOTIC_FROM: usize = 150;

/// Order of the boundary expansions used for large-index moments.
const ASYMPTOTIC_ORDER: i32 = 16;

/// `N(k) = C(k+n-1, n-1) + C(k+n-2, n-1)`.
pub fn dimension_count(k: u64, n: u32) -> BigUint {
    assert!(n >= 2, "dimension count needs n >= 2");
    let r = (n - 1) as u64;
    binom_big(k + r, r) + if k + r >= 1 { binom_big(k + r - 1, r) } else { BigUint::from(0u32) }
}

fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub(crate) fn dimension_count_f64(k: usize, n: u32) -> f64 {
    let r = (n - 1) as usize;
    let binom = |a: usize, b: usize| -> f64 {
        if b > a {
            return 0.0;
        }
        (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
    };
    binom(k + r, r) + if k + r >= 1 { binom(k + r - 1, r) } else { 0.0 }
}

/// A density `φ` on `(0, 1)` whose moments define the kernel.
#[derive(Debug, Clone)]
pub enum Density {
    /// `φ ≡ 1`.
    Constant,
    /// `φ_v` from the germ family.
    PhiV { v: f64 },
    /// `W[f]` of a profile in dimension `n`.
    MongeAmpere { profile: RadialProfile, n: u32 },
}

impl Density {
    pub fn value(&self, t: f64) -> Result<f64> {
        match self {
            Density::Constant => Ok(1.0),
            Density::PhiV { v } => phi_v(*v, t),
            Density::MongeAmpere { profile, n } => {
                Ok(density_from_derivs(*n, t, profile.eval(t)?))
            }
        }
    }

    /// Smallest `k` with a finite moment.
    pub fn k_min(&self) -> Result<usize> {
        match self {
            Density::Constant => Ok(0),
            Density::PhiV { v } => {
                if *v < 0.0 {
                    // |t^{-1/4} cos(..)| is integrable for every k ≥ 0
                    Ok(0)
                } else {
                    Ok(phi_v_indices(*v).0 as usize)
                }
            }
            Density::MongeAmpere { profile, .. } => {
                if profile.t_lower() > 0.0 {
                    return Err(Error::Capability(format!(
                        "moments of a {} density (profile not defined near t = 0)",
                        profile.kind_name()
                    )));
                }
                // endpoint exponent α of φ ~ C t^α; moment k finite iff k + α > -1
                let (t1, t2) = (1e-9, 1e-10);
                let (w1, w2) = (self.value(t1)?, self.value(t2)?);
                if w1 == 0.0 || w2 == 0.0 {
                    return Ok(0);
                }
                let alpha = (w1.abs() / w2.abs()).ln() / (t1 / t2).ln();
                let mut k = 0usize;
                while k as f64 + alpha <= -1.0 + 1e-6 {
                    k += 1;
                }
                Ok(k)
            }
        }
    }

    /// Whether the density may take negative values.
    pub fn is_signed(&self) -> bool {
        match self {
            Density::Constant => false,
            Density::PhiV { v } => *v < 0.0,
            Density::MongeAmpere { .. } => {
                (1..200).any(|i| self.value(i as f64 / 200.0).map_or(false, |w| w < 0.0))
            }
        }
    }

    /// Large-`k` expansion of the moments, when the density has a boundary series.
    fn moment_asymptotics(&self) -> Option<InverseKSeries<f64>> {
        let phi = match self {
            Density::Constant => return None,
            Density::PhiV { v } => crate::asymptotics::phi_v_l_series(v, ASYMPTOTIC_ORDER),
            Density::MongeAmpere { profile, n } => {
                if *n != 2 || !profile.vanishes_at_one() {
                    return None;
                }
                let scale = profile.scale();
                let f = profile
                    .with_scale(1.0 / scale)
                    .series_at_one(ASYMPTOTIC_ORDER + 2)
                    .ok()?;
                density_in_l(&f).ok()?.scale(&scale.powi(3))
            }
        };
        moment_expansion(&phi, phi.order() + 1).ok()
    }
}

/// Density whose moments enter the kernel of a profile: `φ_v` for the
/// `phi_v_candidate` weight (it is constructed from that prescribed density),
/// `φ ≡ 1` for `constant_one`, and `W[f]` otherwise.
pub fn kernel_density(p: &RadialProfile, n: u32) -> Density {
    if p.is_constant_one() {
        return Density::Constant;
    }
    match p.candidate_v() {
        Some(v) if p.scale() == 1.0 => Density::PhiV { v },
        _ => Density::MongeAmpere {
            profile: p.clone(),
            n,
        },
    }
}

/// Moments `c_k = ∫_0^1 t^k φ(t) dt` with absolute error bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    pub k_min: usize,
    /// `(c_k, err)` for `k = k_min, k_min + 1, …`.
    pub values: Vec<(f64, f64)>,
}

impl MomentSequence {
    pub fn get(&self, k: usize) -> Result<f64> {
        if k < self.k_min {
            return Err(Error::Divergence {
                k,
                k_min: self.k_min,
            });
        }
        self.values
            .get(k - self.k_min)
            .map(|v| v.0)
            .ok_or_else(|| Error::Precondition(format!("moment {k} not computed")))
    }

    pub fn k_max(&self) -> usize {
        self.k_min + self.values.len() - 1
    }
}

fn moment_by_quadrature(density: &Density, k: usize, tol: f64) -> Result<(f64, f64)> {
    if let Density::Constant = density {
        return Ok((1.0 / (k + 1) as f64, 0.0));
    }
    let kf = k as i32;
    let failure = std::cell::Cell::new(None);
    let r = tanh_sinh(
        // nodes within rounding of t = 1 are moved to the last float below 1;
        // nodes below 1e-150 are dropped (closed forms overflow there and an
        // integrable density contributes nothing visible)
        |t, _| match density.value(t.min(1.0 - f64::EPSILON / 2.0)) {
            _ if t < 1e-150 => 0.0,
            Ok(w) => t.powi(kf) * w,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        },
        QuadOptions {
            abs_tol: tol,
            rel_tol: 1e-15,
            max_level: 12,
        },
    )?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok((r.value, r.error.max(f64::EPSILON * r.value.abs())))
}

/// Moments `c_k`, `k_min ≤ k ≤ k_max`, each within `tol` (absolute).
/// Requesting `k_max < k_min` is a divergence error.
pub fn moments(density: &Density, k_max: usize, tol: f64) -> Result<MomentSequence> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "(0, ∞)"));
    }
    let k_min = density.k_min()?;
    if k_max < k_min {
        return Err(Error::Divergence { k: k_max, k_min });
    }
    let values = (k_min..=k_max)
        .into_par_iter()
        .map(|k| moment_by_quadrature(density, k, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentSequence { k_min, values })
}

/// `∫_0^1 t^k φ_v dt = (2k+1)/((2k+2m+2δ+1)(k+1-m-δ))`.
pub fn moment_phi_v_closed(v: f64, k: usize) -> Result<f64> {
    if v < 0.0 {
        return Err(Error::Capability(
            "closed-form φ_v moments for v < 0".into(),
        ));
    }
    let (m, delta) = phi_v_indices(v);
    if k < m as usize {
        return Err(Error::Divergence {
            k,
            k_min: m as usize,
        });
    }
    let (kf, mf) = (k as f64, m as f64);
    Ok((2.0 * kf + 1.0) / ((2.0 * kf + 2.0 * mf + 2.0 * delta + 1.0) * (kf + 1.0 - mf - delta)))
}

/// Exact closed-form moment for a rational `√v ≥ 0`.
pub fn moment_phi_v_closed_exact(sqrt_v: &Rational, k: usize) -> Result<Rational> {
    use num_traits::Signed;
    if sqrt_v.is_negative() {
        return Err(Error::Capability("closed form needs √v >= 0".into()));
    }
    let q = (sqrt_v - Rational::from_integer(3.into())) / Rational::from_integer(4.into());
    let fl = q.floor();
    let delta = &q - &fl;
    let m = fl + Rational::from_integer(1.into());
    let k_r = Rational::from_integer((k as i64).into());
    if k_r < m {
        use num_traits::ToPrimitive;
        return Err(Error::Divergence {
            k,
            k_min: m.to_integer().to_usize().unwrap_or(0),
        });
    }
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    let num = &two * &k_r + &one;
    let den = (&two * &k_r + &two * &m + &two * &delta + &one) * (&k_r + &one - &m - &delta);
    Ok(num / den)
}

/// `F(t) = t^m (1 + 3t + 4m(1-t) - δ(4m+2δ-1)(1-t)^2) / (1-t)^3` for `n = 2`.
pub fn closed_form_f_phi_v(v: f64, t: f64) -> Result<f64> {
    if v < 0.0 {
        return Err(Error::Capability("closed form for v < 0".into()));
    }
    if !(t >= 0.0 && t < 1.0) {
        return Err(Error::domain("t", t, "[0, 1)"));
    }
    let (m, delta) = phi_v_indices(v);
    let mf = m as f64;
    let u = 1.0 - t;
    let num = 1.0 + 3.0 * t + 4.0 * mf * u - delta * (4.0 * mf + 2.0 * delta - 1.0) * u * u;
    Ok(t.powi(m as i32) * num / (u * u * u))
}

/// Kernel diagonal value with its truncation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub t: f64,
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Kernel series `F(t) = Σ N(k)/c_{k+n-2} t^k` with cached moments.
///
/// Terms whose moment diverges contribute zero (`1/c = 0`).
#[derive(Debug, Clone)]
pub struct KernelSeries {
    density: Density,
    n: u32,
    tol: f64,
    k_min: usize,
    /// reciprocal moments `1/c_k` for `k = 0, 1, …` (zero below `k_min`)
    inv: Vec<f64>,
    asymptotic: Option<InverseKSeries<f64>>,
    growth: f64,
}

impl KernelSeries {
    /// `tol` is the relative accuracy target of every evaluation.
    pub fn new(density: Density, n: u32, tol: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("n", n as f64, "integers >= 2"));
        }
        if !(tol > 0.0) {
            return Err(Error::domain("tol", tol, "(0, ∞)"));
        }
        let k_min = density.k_min()?;
        let asymptotic = density.moment_asymptotics();
        let mut ks = KernelSeries {
            density,
            n,
            tol,
            k_min,
            inv: Vec::new(),
            asymptotic,
            growth: 0.0,
        };
        ks.extend_to(64)?;
        Ok(ks)
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    /// Moment accuracy used for the kernel terms.
    fn moment_tol(&self, k: usize) -> f64 {
        (self.tol * 1e-3 / (k + 1) as f64).max(1e-15)
    }

    fn moment(&self, k: usize) -> Result<f64> {
        if k >= ASYMPTOTIC_FROM {
            if let Some(series) = &self.asymptotic {
                let x = 1.0 / (k + 1) as f64;
                let value = series.eval(x);
                let err = series.last_term_magnitude(x);
                if err <= self.moment_tol(k) * value.abs() {
                    return Ok(value);
                }
            }
        }
        let tol = self.moment_tol(k);
        moment_by_quadrature(&self.density, k, tol).map(|v| v.0)
    }

    /// Makes `1/c_k` available for `k < len` (moment index, i.e. `k + n - 2`).
    fn extend_to(&mut self, len: usize) -> Result<()> {
        let start = self.inv.len();
        if len <= start {
            return Ok(());
        }
        let new: Vec<f64> = (start..len)
            .into_par_iter()
            .map(|k| {
                if k < self.k_min {
                    Ok(0.0)
                } else {
                    self.moment(k).map(|c| 1.0 / c)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        self.inv.extend(new);
        // C = 2 max N(k) / (c_{k+n-2} (k+1)^n)
        let shift = self.n as usize - 2;
        for k in start.saturating_sub(shift)..len.saturating_sub(shift) {
            let a = dimension_count_f64(k, self.n) * self.inv[k + shift].abs()
                / ((k + 1) as f64).powi(self.n as i32);
            self.growth = self.growth.max(2.0 * a);
        }
        Ok(())
    }

    /// Tail bound `Σ_{k>K} C (k+1)^n t^k` via a geometric majorant.
    fn tail_after(&self, big_k: usize, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let nf = self.n as f64;
        let k1 = (big_k + 1) as f64;
        let ratio = t * ((k1 + 2.0) / (k1 + 1.0)).powf(nf);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        let first = self.growth * (k1 + 1.0).powf(nf) * t.powf(k1);
        first / (1.0 - ratio)
    }

    /// Number of terms `K` with tail bound below `target`, or `None` past the cap.
    fn terms_needed(&self, t: f64, target: f64) -> Option<usize> {
        if t == 0.0 {
            return Some(1);
        }
        // first guess from C (K+1)^n t^K / (1-t) ≈ target, refined by doubling + bisection
        let mut hi = 16usize;
        while self.tail_after(hi, t) > target {
            hi *= 2;
            if hi > 2 * MAX_TERMS {
                return None;
            }
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.tail_after(mid, t) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if hi + 1 > MAX_TERMS {
            None
        } else {
            Some(hi + 1)
        }
    }

    fn partial_sum(&self, t: f64, terms: usize) -> f64 {
        let shift = self.n as usize - 2;
        let mut sum = 0.0;
        let mut tk = 1.0;
        for k in 0..terms {
            sum += dimension_count_f64(k, self.n) * self.inv[k + shift] * tk;
            tk *= t;
            if tk == 0.0 {
                break;
            }
        }
        sum
    }

    /// `F(t)` for `t ∈ [0, 1)`.
    pub fn eval(&mut self, t: f64) -> Result<KernelEval> {
        if !(t >= 0.0 && t < 1.0) {
            return Err(Error::domain("t", t, "[0, 1)"));
        }
        let shift = self.n as usize - 2;
        for _ in 0..64 {
            let available = self.inv.len() - shift;
            let estimate = self.partial_sum(t, available).abs().max(f64::MIN_POSITIVE);
            let terms = self.terms_needed(t, self.tol * estimate).ok_or_else(|| {
                Error::ConvergenceBudget(format!(
                    "kernel series at t = {t} needs more than {MAX_TERMS} terms"
                ))
            })?;
            if terms > available {
                // the growth constant may rise once more moments are known
                self.extend_to(shift + terms + terms / 8)?;
                continue;
            }
            return Ok(KernelEval {
                t,
                value: self.partial_sum(t, terms),
                terms_used: terms,
                tail_bound: self.tail_after(terms - 1, t),
            });
        }
        Err(Error::ConvergenceBudget(format!(
            "kernel truncation at t = {t} did not stabilise"
        )))
    }
}

/// One-shot kernel evaluation; see [`KernelSeries`] for repeated use.
pub fn kernel_series(density: &Density, n: u32, t: f64, tol: f64) -> Result<KernelEval> {
    KernelSeries::new(density.clone(), n, tol)?.eval(t)
}

/// Value of `c` in the defect: a number, or estimated from the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CSpec {
    Value(f64),
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Defect {
    pub t: f64,
    pub value: f64,
    pub kernel: KernelEval,
    pub c: f64,
    /// The density takes negative values somewhere on `(0, 1)`.
    pub signed_density: bool,
}

/// Balanced defect `F(t) - c/f(t)^{n+1}` of a profile.
pub fn balanced_defect(p: &RadialProfile, n: u32, c: CSpec, t: f64) -> Result<Defect> {
    let mut ks = KernelSeries::new(kernel_density(p, n), n, 1e-13)?;
    let c = match c {
        CSpec::Value(c) => c,
        CSpec::Auto => estimate_c_with(p, n, &mut ks)?.c,
    };
    defect_with(p, n, c, t, &mut ks)
}

/// Defect evaluation sharing a kernel series across points.
pub fn defect_with(
    p: &RadialProfile,
    n: u32,
    c: f64,
    t: f64,
    ks: &mut KernelSeries,
) -> Result<Defect> {
    let kernel = ks.eval(t)?;
    let f = p.value_closed(t)?;
    let signed_density = ks.density().is_signed();
    Ok(Defect {
        t,
        value: kernel.value - c / f.powi(n as i32 + 1),
        kernel,
        c,
        signed_density,
    })
}

/// Result of [`estimate_c`] with its extrapolation table.
#[derive(Debug, Clone, PartialEq)]
pub struct CEstimate {
    pub c: f64,
    /// Diagonal of the Richardson table, one entry per level.
    pub diagonal: Vec<f64>,
    /// Raw samples `f^{n+1} F` at `t_i = 1 - h_0 2^{-i}`.
    pub samples: Vec<f64>,
}

/// Richardson-extrapolated limit of `f(t)^{n+1} F(t)` as `t → 1`.
pub fn estimate_c(p: &RadialProfile, n: u32) -> Result<CEstimate> {
    let mut ks = KernelSeries::new(kernel_density(p, n), n, 1e-13)?;
    estimate_c_with(p, n, &mut ks)
}

pub fn estimate_c_with(p: &RadialProfile, n: u32, ks: &mut KernelSeries) -> Result<CEstimate> {
    const LEVELS: usize = 6;
    const H0: f64 = 0.1;
    if !p.vanishes_at_one() {
        return Err(Error::Precondition(format!(
            "estimate_c needs f(1) = 0; {} does not vanish",
            p.kind_name()
        )));
    }
    let mut samples = Vec::with_capacity(LEVELS);
    for i in 0..LEVELS {
        let h = H0 / (1u64 << i) as f64;
        let t = 1.0 - h;
        let f = p.eval(t)?.f;
        let big_f = ks.eval(t)?.value;
        samples.push(f.powi(n as i32 + 1) * big_f);
    }
    // table[i][j]: eliminates h^1..h^j
    let mut table = vec![samples.clone()];
    for j in 1..LEVELS {
        let prev = &table[j - 1];
        let factor = (1u64 << j) as f64;
        let row: Vec<f64> = (j..LEVELS)
            .map(|i| {
                let a = prev[i - j + 1];
                let b = prev[i - j];
                (factor * a - b) / (factor - 1.0)
            })
            .collect();
        table.push(row);
    }
    let diagonal: Vec<f64> = table.iter().map(|row| *row.last().unwrap()).collect();
    let c = diagonal[LEVELS - 1];
    let change = (diagonal[LEVELS - 1] - diagonal[LEVELS - 2]).abs();
    if !(change <= 1e-3) || !c.is_finite() {
        return Err(Error::Estimation(format!(
            "Richardson estimates did not settle (last change {change:.3e}; diagonal {diagonal:?}; samples {samples:?})"
        )));
    }
    Ok(CEstimate {
        c,
        diagonal,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn dimension_counts() {
        assert_eq!(dimension_count(3, 2), BigUint::from(7u32));
        assert_eq!(dimension_count(0, 2), BigUint::from(1u32));
        assert_eq!(dimension_count(2, 3), BigUint::from(9u32));
        assert_eq!(dimension_count_f64(2, 3), 9.0);
        for k in 0..20u64 {
            assert_eq!(dimension_count(k, 2), BigUint::from(2 * k + 1));
            assert_eq!(dimension_count(k, 3), BigUint::from((k + 1) * (k + 1)));
        }
    }

    #[test]
    fn moment_examples() {
        let m = moments(&Density::Constant, 5, 1e-12).unwrap();
        assert_eq!(m.get(3).unwrap(), 0.25);
        let m = moments(&Density::PhiV { v: 9.0 }, 3, 1e-13).unwrap();
        assert_eq!(m.k_min, 1);
        assert!((m.get(1).unwrap() - 0.6).abs() < 1e-12);
        assert!(matches!(m.get(0), Err(Error::Divergence { k: 0, k_min: 1 })));
        let m = moments(&Density::PhiV { v: 0.0 }, 0, 1e-13).unwrap();
        assert!((m.get(0).unwrap() - 8.0 / 9.0).abs() < 1e-12);
        assert!(matches!(
            moments(&Density::PhiV { v: 9.0 }, 0, 1e-12),
            Err(Error::Divergence { .. })
        ));
    }

    #[test]
    fn closed_moment_examples() {
        assert!((moment_phi_v_closed(1.0, 2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((moment_phi_v_closed(9.0, 1).unwrap() - 0.6).abs() < 1e-15);
        assert!((moment_phi_v_closed(0.0, 0).unwrap() - 8.0 / 9.0).abs() < 1e-15);
        assert!(matches!(moment_phi_v_closed(-1.0, 2), Err(Error::Capability(_))));
        assert!(matches!(moment_phi_v_closed(9.0, 0), Err(Error::Divergence { .. })));
        assert_eq!(moment_phi_v_closed_exact(&rat(3, 1), 1).unwrap(), rat(3, 5));
        assert_eq!(moment_phi_v_closed_exact(&rat(0, 1), 0).unwrap(), rat(8, 9));
        assert_eq!(moment_phi_v_closed_exact(&rat(1, 1), 2).unwrap(), rat(1, 3));
    }

    #[test]
    fn closed_kernel_examples() {
        assert!((closed_form_f_phi_v(1.0, 0.5).unwrap() - 20.0).abs() < 1e-12);
        assert_eq!(closed_form_f_phi_v(1.0, 0.0).unwrap(), 1.0);
        assert!((closed_form_f_phi_v(9.0, 0.5).unwrap() - 18.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_examples() {
        let e = kernel_series(&Density::Constant, 2, 0.5, 1e-12).unwrap();
        assert!((e.value - 20.0).abs() < 1e-10, "{e:?}");
        let e = kernel_series(&Density::Constant, 2, 0.0, 1e-12).unwrap();
        assert_eq!(e.value, 1.0);
        let e = kernel_series(&Density::PhiV { v: 9.0 }, 2, 0.5, 1e-12).unwrap();
        assert!((e.value - 18.0).abs() < 18.0 * 1e-9, "{e:?}");
    }

    #[test]
    fn budget_error_near_one() {
        let r = kernel_series(&Density::Constant, 2, 1.0 - 1e-7, 1e-12);
        assert!(matches!(r, Err(Error::ConvergenceBudget(_))), "{r:?}");
    }

    #[test]
    fn defect_examples() {
        let cand = RadialProfile::phi_v_candidate(1.0).unwrap();
        let d = balanced_defect(&cand, 2, CSpec::Value(4.0), 0.5).unwrap();
        assert!(d.value.abs() < 1e-10, "{d:?}");
        let d = balanced_defect(&cand, 2, CSpec::Value(4.0), 0.0).unwrap();
        assert!(d.value.abs() < 1e-12, "{d:?}");
        let d = balanced_defect(&RadialProfile::sqrt_poincare(), 2, CSpec::Value(4.0), 0.0).unwrap();
        assert!((d.value - 0.5).abs() < 1e-12, "{d:?}");
    }
}
