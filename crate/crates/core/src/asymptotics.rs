//! Boundary asymptotics: density germs in `L = log(1/t)`, moment expansions
//! in `1/(k+1)`, their reciprocals, the Lerch transcendent near `t = 1`, and
//! the singular part of the kernel diagonal.

use std::f64::consts::PI;
use std::sync::LazyLock;


use crate::error::{Error, Result};
use crate::series::{Coeff, InverseKSeries, LSeries, Rational};
use crate::special::{
    bernoulli_f64, gamma_jet, gamma_laurent_direct, gamma_laurent_table, ln_gamma, stieltjes_computed, zeta_jet,
    zeta_jet_scaled, STIELTJES,
};

/// Largest table indices accepted by [`stieltjes_gamma_tables`].
pub const TABLE_MAX: usize = 10;

// ---------------------------------------------------------------------------
// φ_v germs and the moment / reciprocal pipeline

/// Boundary series of `φ_v` in `L`, truncated at `O(L^order)`. The
/// coefficients are polynomials in `v`, hence exact for rational `v`.
pub fn phi_v_l_series<T: Coeff>(v: &T, order: i32) -> LSeries<T> {
    // e^{L/4} (Σ v^k x^{2k}/(2k)! - Σ v^k x^{2k+1}/(2k+1)!),  x = L/4
    let mut body = LSeries::zero(order);
    let mut vk = T::one();
    let mut denom = T::one(); // 4^i i!
    for i in 0..order.max(0) {
        if i > 0 {
            denom = denom * T::from_int(4 * i as i64);
        }
        if i % 2 == 0 {
            if i > 0 {
                vk = vk * v.clone();
            }
            body.add_term(i, 0, vk.clone() / denom.clone());
        } else {
            body.add_term(i, 0, -(vk.clone() / denom.clone()));
        }
    }
    &LSeries::exp_linear(T::from_ratio(1, 4), order) * &body
}

/// `[a_0, …, a_J]` of `φ_v = Σ a_j L^j`, exact.
pub fn phi_v_l_coeffs(v: &Rational, max_j: usize) -> Vec<Rational> {
    phi_v_l_series(v, max_j as i32 + 1).power_coeffs()
}

/// `[a_0, …, a_J]` of `φ_v = Σ a_j L^j` in floating point.
pub fn phi_v_l_coeffs_f64(v: f64, max_j: usize) -> Vec<f64> {
    phi_v_l_series(&v, max_j as i32 + 1).power_coeffs()
}

/// Large-`k` expansion of `c_k = ∫_0^1 t^k φ dt` from the boundary series of
/// `φ`, using `∫_0^∞ e^{-KL} L^p (log 1/L)^q dL`, `K = k+1`.
///
/// The result is known up to `O(K^{-(phi.order()+1)})`; `order` may ask for less.
/// Log terms need Γ derivatives and are only supported for `f64` coefficients.
pub fn moment_expansion<T: Coeff>(phi: &LSeries<T>, order: i32) -> Result<InverseKSeries<T>> {
    if phi.coeff(0, 0).is_zero() {
        return Err(Error::Precondition(
            "moment expansion needs a non-zero constant term".into(),
        ));
    }
    let available = phi.order() + 1;
    if order > available {
        return Err(Error::Truncation {
            requested: order,
            available,
        });
    }
    let mut out = InverseKSeries::zero(order);
    for (&(p, q), b) in phi.terms() {
        if p < 0 {
            return Err(Error::Precondition(format!(
                "moment of L^{p} diverges at the boundary"
            )));
        }
        if q == 0 {
            // ∫ e^{-KL} L^p dL = p! / K^{p+1}
            let mut fact = T::one();
            for i in 2..=p as i64 {
                fact = fact * T::from_int(i);
            }
            out.add_term(p + 1, 0, b.clone() * fact);
            continue;
        }
        if T::EXACT {
            return Err(Error::Capability(
                "exact moment expansion of log terms (needs Γ derivatives)".into(),
            ));
        }
        // (log 1/L)^q = (-1)^q (log L)^q;  coefficient of K^{-(p+1)} (log K)^l is
        // (-1)^{q+l} C(q,l) Γ^{(q-l)}(p+1)
        let g = gamma_jet(p as f64 + 1.0, q as usize + 1);
        for l in 0..=q {
            let sign = if (q + l) % 2 == 0 { 1.0 } else { -1.0 };
            let c = sign
                * crate::special::jet::binomial(q as usize, l as usize)
                * g.derivative((q - l) as usize);
            out.add_term(p + 1, l, b.clone() * T::from_f64(c));
        }
    }
    Ok(out)
}

/// `1/c_k` from the expansion of `c_k`, which must start with `1/(k+1)`.
/// The result is `(k+1) Σ_m A_m (k+1)^{-m}` with `A_0 = 1`.
pub fn reciprocal_moments<T: Coeff>(
    c_exp: &InverseKSeries<T>,
    order: i32,
) -> Result<InverseKSeries<T>> {
    if c_exp.valuation() != Some(1) {
        return Err(Error::Normalization(
            "moment expansion must start at 1/(k+1)".into(),
        ));
    }
    let r = c_exp.reciprocal()?;
    if order > r.order() {
        return Err(Error::Truncation {
            requested: order,
            available: r.order(),
        });
    }
    Ok(r.truncate(order))
}

/// `[A_0, A_1, …]` of `1/c_k = (k+1) Σ A_m (k+1)^{-m}` (log-free part).
pub fn a_coefficients<T: Coeff>(inv: &InverseKSeries<T>) -> Vec<T> {
    (0..=inv.order()).map(|m| inv.coeff(m - 1, 0)).collect()
}

/// `A_0 … A_{max_m}` of the `φ_v` density, exactly.
pub fn phi_v_a_coefficients(v: &Rational, max_m: usize) -> Result<Vec<Rational>> {
    let order = max_m as i32 + 2;
    let phi = phi_v_l_series(v, order);
    let c = moment_expansion(&phi, order + 1)?;
    let inv = reciprocal_moments(&c, max_m as i32)?;
    Ok(a_coefficients(&inv)[..=max_m].to_vec())
}

/// `f = L - (2A_1+3)/12 L^2 + (4A_1^2 + 6A_1 + 3 - 12A_2)/72 L^3` with
/// `A_1 = 0`, `A_2 = (1-v)/16`, truncated after `L^order`.
pub fn germ_family_f<T: Coeff>(v: &T, order: usize) -> Result<LSeries<T>> {
    if order > 3 {
        return Err(Error::Capability(format!(
            "germ coefficient of L^{} is not determined by the density",
            order + 1
        )));
    }
    let a1 = T::zero();
    let a2 = (T::one() - v.clone()) / T::from_int(16);
    let c2 = -(a1.clone() * T::from_int(2) + T::from_int(3)) / T::from_int(12);
    let c3 = (a1.clone() * a1.clone() * T::from_int(4) + a1 * T::from_int(6) + T::from_int(3)
        - a2 * T::from_int(12))
        / T::from_int(72);
    let all = [T::zero(), T::one(), c2, c3];
    Ok(LSeries::from_coeffs(&all[..=order]))
}

// ---------------------------------------------------------------------------
// Lerch transcendent

/// Stieltjes constants, Γ Laurent data and Γ / ζ evaluators for Lerch expansions.
#[derive(Debug, Clone)]
pub struct LerchContext {
    /// `γ_0 … γ_{max_j}` (standard sign convention).
    pub stieltjes: Vec<f64>,
    /// `c[m][j]`, `m ≤ max_m`, `j ≤ max_j`.
    pub laurent: Vec<Vec<f64>>,
    pub max_m: usize,
    pub max_j: usize,
}

static DEFAULT_CONTEXT: LazyLock<LerchContext> =
    LazyLock::new(|| stieltjes_gamma_tables(TABLE_MAX, TABLE_MAX).expect("table sizes in range"));

/// Tables of Stieltjes constants and Γ Laurent coefficients (embedded values).
pub fn stieltjes_gamma_tables(max_m: usize, max_j: usize) -> Result<LerchContext> {
    LerchContext::build(max_m, max_j, false)
}

impl LerchContext {
    /// Builds the tables; `recompute` re-derives the Stieltjes constants by
    /// Euler–Maclaurin instead of using the embedded values.
    pub fn build(max_m: usize, max_j: usize, recompute: bool) -> Result<Self> {
        if max_m > TABLE_MAX || max_j > TABLE_MAX {
            return Err(Error::domain(
                "table size",
                max_m.max(max_j) as f64,
                "at most 10",
            ));
        }
        let stieltjes = if recompute {
            stieltjes_computed(max_j)
        } else {
            STIELTJES[..=max_j].to_vec()
        };
        Ok(LerchContext {
            stieltjes,
            laurent: gamma_laurent_table(max_m, max_j),
            max_m,
            max_j,
        })
    }

    pub fn shared() -> &'static LerchContext {
        &DEFAULT_CONTEXT
    }

    /// `c_{m,j}`; entries outside the table come from the product form of Γ.
    pub fn c(&self, m: usize, j: usize) -> f64 {
        if m <= self.max_m && j <= self.max_j {
            self.laurent[m][j]
        } else if m == 0 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * gamma_jet(1.0, j + 1).derivative(j)
        } else {
            gamma_laurent_direct(m, j + 1)[j]
        }
    }

    pub fn gamma_derivative(&self, x: f64, j: usize) -> f64 {
        gamma_jet(x, j + 1).derivative(j)
    }

    pub fn zeta_derivative(&self, s: f64, n: usize) -> f64 {
        zeta_jet(s, n + 1).derivative(n)
    }

    /// Largest residual of the Laurent recurrences over the table.
    pub fn recurrence_residual(&self) -> f64 {
        let c = &self.laurent;
        let mut worst: f64 = 0.0;
        for j in 0..self.max_j {
            if self.max_m >= 1 {
                // c_{1,j} = -c_{0,j+1}/(j+1)
                worst = worst.max((c[1][j] + c[0][j + 1] / (j + 1) as f64).abs());
            }
        }
        for m in 1..self.max_m {
            let mf = m as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let fact: f64 = (1..=m).map(|i| i as f64).product();
            let r0 = c[m + 1][0] - (sign / (fact * mf) - c[m][0] / mf);
            worst = worst.max(r0.abs() / c[m + 1][0].abs().max(1.0));
            for j in 1..=self.max_j {
                let r = mf * c[m + 1][j] + c[m][j] + j as f64 * c[m + 1][j - 1];
                worst = worst.max(r.abs() / c[m][j].abs().max(1.0));
            }
        }
        worst
    }
}

/// Domain of validity in `L` of the boundary expansion.
pub const LERCH_RADIUS: f64 = 2.0 * PI;

/// Expansion of `(d/ds)^n tΦ(t, s, 1) = Σ_{k≥1} t^k (log 1/k)^n / k^s` near `t = 1`:
///
/// ```text
///   L^{s-1} Σ_j singular[j] (log L)^j  +  Σ_k regular[k] L^k,     |L| < 2π.
/// ```
///
/// `regular` holds the first `order` Taylor coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LerchExpansion {
    pub s: f64,
    pub n: usize,
    pub singular: Vec<f64>,
    pub regular: Vec<f64>,
}

impl LerchExpansion {
    pub fn eval(&self, ell: f64) -> f64 {
        let log_l = ell.ln();
        let sing: f64 = self
            .singular
            .iter()
            .enumerate()
            .map(|(j, c)| c * log_l.powi(j as i32))
            .sum();
        let reg: f64 = self
            .regular
            .iter()
            .enumerate()
            .map(|(k, c)| c * ell.powi(k as i32))
            .sum();
        ell.powf(self.s - 1.0) * sing + reg
    }

    /// The expansion as a power–log series (integer `s` only). Note the
    /// series convention uses `log(1/L) = -log L`.
    pub fn to_l_series(&self) -> Result<LSeries<f64>> {
        if self.s.fract() != 0.0 {
            return Err(Error::Capability(format!(
                "non-integer power L^{} in a power–log series",
                self.s - 1.0
            )));
        }
        let order = self.regular.len() as i32;
        let p = self.s as i32 - 1;
        let mut out = LSeries::zero(order.max(p + 1));
        for (j, c) in self.singular.iter().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term(p, j as u32, sign * c);
        }
        for (k, c) in self.regular.iter().enumerate() {
            out.add_term(k as i32, 0, *c);
        }
        Ok(out.truncate(order))
    }
}

/// Boundary expansion of `(d/ds)^n tΦ(t, s, 1)`, with the regular part
/// summed to `O(L^order)`.
pub fn lerch_boundary_expansion(s: f64, n: usize, order: usize) -> Result<LerchExpansion> {
    lerch_boundary_expansion_with(LerchContext::shared(), s, n, order)
}

pub fn lerch_boundary_expansion_with(
    ctx: &LerchContext,
    s: f64,
    n: usize,
    order: usize,
) -> Result<LerchExpansion> {
    let positive_integer = s >= 1.0 && s.fract() == 0.0;
    let mut singular = vec![0.0; n + 2];
    if positive_integer {
        if n > ctx.max_j {
            return Err(Error::Truncation {
                requested: n as i32,
                available: ctx.max_j as i32,
            });
        }
        let m = s as usize;
        let fact: f64 = (1..m).map(|i| i as f64).product();
        let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
        for (j, slot) in singular.iter_mut().enumerate().take(n + 1) {
            *slot = crate::special::jet::binomial(n, j) * ctx.c(m, n - j);
        }
        // (-1)^{s-1}/(s-1)! [g_n - (log L)^{n+1}/(n+1)],  g_n = (-1)^n γ_n
        let g_n = if n % 2 == 0 { 1.0 } else { -1.0 } * ctx.stieltjes[n];
        singular[0] += sign / fact * g_n;
        singular[n + 1] = -sign / fact / (n + 1) as f64;
    } else if n == 0 && s.fract() == 0.0 {
        // Γ(1-s) = (-s)! exactly
        singular[0] = crate::special::jet::factorial((-s) as usize);
    } else {
        let g = gamma_jet(1.0 - s, n + 1);
        for (j, slot) in singular.iter_mut().enumerate().take(n + 1) {
            let sign = if (n - j) % 2 == 0 { 1.0 } else { -1.0 };
            *slot = crate::special::jet::binomial(n, j) * sign * g.derivative(n - j);
        }
    }
    while singular.len() > 1 && singular.last() == Some(&0.0) {
        singular.pop();
    }
    let mut regular = vec![0.0; order];
    for (k, slot) in regular.iter_mut().enumerate() {
        let s0 = s - k as f64;
        if positive_integer && s0 == 1.0 {
            continue;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *slot = if n == 0 && s0 <= 0.0 && s0.fract() == 0.0 && k <= 20 {
            // ζ(-m) = (-1)^m B_{m+1}/(m+1)
            let m = (-s0) as usize;
            let zm = if m % 2 == 0 { 1.0 } else { -1.0 } * bernoulli_f64(m + 1) / (m + 1) as f64;
            sign * zm / crate::special::jet::factorial(k)
        } else {
            sign * zeta_jet_scaled(s0, n + 1, -ln_gamma(k as f64 + 1.0)).derivative(n)
        };
    }
    Ok(LerchExpansion {
        s,
        n,
        singular,
        regular,
    })
}

/// `(d/ds)^n tΦ(t,s,1)` from the boundary expansion, with the regular series
/// summed until its terms are negligible.
fn lerch_t_phi_boundary(ctx: &LerchContext, ell: f64, s: f64, n: usize) -> Result<f64> {
    if !(ell > 0.0 && ell < LERCH_RADIUS) {
        return Err(Error::Capability(format!(
            "boundary expansion needs 0 < L < 2π, got L = {ell}"
        )));
    }
    let head = lerch_boundary_expansion_with(ctx, s, n, 0)?;
    let mut sum = head.eval(ell);
    let positive_integer = s >= 1.0 && s.fract() == 0.0;
    let ln_l = ell.ln();
    let mut small_run = 0;
    let k_floor = (s.abs() + n as f64 + 8.0) as usize;
    for k in 0..100_000usize {
        let s0 = s - k as f64;
        if positive_integer && s0 == 1.0 {
            continue;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let scale = k as f64 * ln_l - ln_gamma(k as f64 + 1.0);
        let term = sign * zeta_jet_scaled(s0, n + 1, scale).derivative(n);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs().max(1e-3) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if k > k_floor && small_run >= 4 {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceBudget(
        "Lerch boundary series did not converge".into(),
    ))
}

/// Direct sum `Σ_{k≥0} t^k (log 1/(k+1))^n (k+1)^{-s}` with a tail bound.
pub fn lerch_phi_direct(t: f64, s: f64, n: usize) -> Result<(f64, f64)> {
    if !(t >= 0.0 && t < 1.0) {
        return Err(Error::domain("t", t, "[0, 1)"));
    }
    let term = |x: f64| -> f64 { (-(x.ln())).powi(n as i32) * x.powf(-s) };
    let mut sum = 0.0;
    let mut tk = 1.0;
    let max_terms = 1_000_000usize;
    for k in 0..max_terms {
        let x = (k + 1) as f64;
        let a = tk * term(x);
        sum += a;
        if k >= 2 {
            // ratio of successive |terms| is non-increasing for x >= 2
            let ratio =
                t * ((x + 1.0).ln() / x.ln()).powi(n as i32) * ((x + 1.0) / x).powf(-s);
            if ratio < 1.0 {
                let tail = a.abs() * ratio / (1.0 - ratio);
                if tail <= 1e-17 * sum.abs() || tail == 0.0 {
                    return Ok((sum, tail));
                }
            }
        }
        tk *= t;
        if tk == 0.0 {
            return Ok((sum, 0.0));
        }
    }
    Err(Error::ConvergenceBudget(format!(
        "Lerch direct sum at t = {t} exceeded {max_terms} terms"
    )))
}

/// Evaluation path for [`lerch_phi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LerchPath {
    Direct,
    Boundary,
}

/// `(d/ds)^n Φ(t, s, 1) = Σ_{k≥0} t^k (log 1/(k+1))^n / (k+1)^s`.
pub fn lerch_phi(t: f64, s: f64, n: usize) -> Result<f64> {
    lerch_phi_via(t, s, n, LerchPath::Direct)
}

pub fn lerch_phi_via(t: f64, s: f64, n: usize, path: LerchPath) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        if t == 0.0 && path == LerchPath::Direct {
            return Ok(if n == 0 { 1.0 } else { 0.0 });
        }
        return Err(Error::domain("t", t, "(0, 1)"));
    }
    match path {
        LerchPath::Direct => Ok(lerch_phi_direct(t, s, n)?.0),
        LerchPath::Boundary => {
            let ell = -t.ln();
            Ok(lerch_t_phi_boundary(LerchContext::shared(), ell, s, n)? / t)
        }
    }
}

/// Classical Lerch formula for `tΦ(t, m, 1) = Li_m(t)`, integer `m ≥ 1`:
/// `(-1)^m/(m-1)! L^{m-1} log L + Σ'_k (-1)^k/k! ζ(m-k) L^k`, where the
/// `k = m-1` term uses the harmonic number `H_{m-1}` in place of `ζ(1)`.
pub fn polylog_lerch_formula(m: u32, ell: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::domain("m", m as f64, "integers >= 1"));
    }
    if !(ell > 0.0 && ell < LERCH_RADIUS) {
        return Err(Error::domain("L", ell, "(0, 2π)"));
    }
    let mf = m as f64;
    let fact = ln_gamma(mf).exp();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = sign / fact * ell.powi(m as i32 - 1) * ell.ln();
    let mut small_run = 0;
    for k in 0..100_000usize {
        let s0 = mf - k as f64;
        let sk = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = if s0 == 1.0 {
            let h: f64 = (1..m).map(|i| 1.0 / i as f64).sum();
            sk * h * ell.powi(k as i32) / ln_gamma(k as f64 + 1.0).exp()
        } else {
            let scale = k as f64 * ell.ln() - ln_gamma(k as f64 + 1.0);
            sk * zeta_jet_scaled(s0, 1, scale).0[0]
        };
        sum += term;
        small_run = if term.abs() <= 1e-18 * sum.abs().max(1e-3) {
            small_run + 1
        } else {
            0
        };
        if k > m as usize + 8 && small_run >= 4 {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceBudget("Lerch formula did not converge".into()))
}

// ---------------------------------------------------------------------------
// Kernel diagonal near t = 1

/// Non-smooth part of `F(t) = Σ (2k+1)/c_k t^k` (`n = 2`) near `t = 1`, from
/// the expansion `inv` of `1/c_k`.
///
/// The result lists negative powers of `L` and every term carrying a
/// `log(1/L)` factor; log-free non-negative powers are smooth and dropped.
/// Terms are determined up to `O(L^{inv.order() - 1})`, the order of the result.
pub fn boundary_expansion_f(inv: &InverseKSeries<f64>, n: u32, order: i32) -> Result<LSeries<f64>> {
    if n != 2 {
        return Err(Error::Capability(format!(
            "boundary expansion of the kernel for n = {n}"
        )));
    }
    if inv.valuation() != Some(-1) {
        return Err(Error::Precondition(
            "1/c_k expansion must start with (k+1)".into(),
        ));
    }
    let available = inv.order() - 1;
    if order > available {
        return Err(Error::Truncation {
            requested: order,
            available,
        });
    }
    let ctx = LerchContext::shared();
    let e_l = LSeries::<f64>::exp_linear(1.0, order + 4);
    let mut total = LSeries::<f64>::zero(order);
    // (2k+1) β X^m (log 1/X)^j = β (2K^{1-m} - K^{-m}) (log K)^j,  X = 1/K
    // Σ_k t^k K^{-s} (log K)^j = (-1)^j (d/ds)^j Φ(t, s, 1) = (-1)^j e^L (d/ds)^j tΦ
    for (&(m, j), beta) in inv.terms() {
        for (s, weight) in [((m - 1) as f64, 2.0), (m as f64, -1.0)] {
            let lerch = lerch_boundary_expansion_with(ctx, s, j as usize, 0)?;
            // keep only the singular part; e^L times the regular part is smooth
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let sing = lerch
                .singular_l_series(order + 4)?
                .scale(&(weight * beta * sign));
            total = &total + &(&sing * &e_l);
        }
    }
    let mut out = LSeries::zero(order);
    for (&(k, j), c) in total.terms() {
        if k < 0 || j > 0 {
            out.add_term(k, j, *c);
        }
    }
    Ok(out)
}

impl LerchExpansion {
    /// Singular part `L^{s-1} Σ_j singular[j] (log L)^j` as a power–log
    /// series truncated at `O(L^order)` (integer `s` only).
    fn singular_l_series(&self, order: i32) -> Result<LSeries<f64>> {
        if self.s.fract() != 0.0 {
            return Err(Error::Capability("non-integer power in series".into()));
        }
        let p = self.s as i32 - 1;
        let mut out = LSeries::zero(order);
        for (j, c) in self.singular.iter().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term(p, j as u32, sign * c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;
    use num_traits::Zero;

    #[test]
    fn phi_v_coefficients() {
        let a = phi_v_l_coeffs(&rat(1, 1), 3);
        assert_eq!(a, vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        for v in [0, 2, 9, 25] {
            let a = phi_v_l_coeffs(&rat(v, 1), 4);
            assert_eq!(a[0], rat(1, 1));
            assert_eq!(a[1], rat(0, 1));
            assert_eq!(a[2], rat(v - 1, 32));
        }
        assert_eq!(phi_v_l_coeffs(&rat(9, 1), 2)[2], rat(1, 4));
    }

    #[test]
    fn phi_v_series_matches_function() {
        for v in [0.0, 0.5, 4.0, 9.0] {
            let s = phi_v_l_series(&v, 20);
            for t in [0.9, 0.97] {
                let l = -(t as f64).ln();
                let direct = crate::profiles::phi_v(v, t).unwrap();
                assert!((s.eval(l) - direct).abs() < 1e-14, "v={v} t={t}");
            }
        }
    }

    #[test]
    fn moment_expansion_examples() {
        let one = LSeries::<Rational>::constant(rat(1, 1), 6);
        let c = moment_expansion(&one, 7).unwrap();
        assert_eq!(c.coeff(1, 0), rat(1, 1));
        assert_eq!(c.terms().count(), 1);
        let l = LSeries::<Rational>::from_terms([(0, 0, rat(1, 1)), (1, 0, rat(1, 1))], 6);
        let c = moment_expansion(&l, 7).unwrap();
        assert_eq!(c.coeff(2, 0), rat(1, 1));
        assert!(matches!(
            moment_expansion(&one, 8),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn phi_v_moments_match_rational_closed_form() {
        // c_k = (16k+8)/(16k^2+24k+9-v): with K = k+1, 16K^2 - 8K + 1 - v in the denominator
        let v = rat(7, 3);
        let phi = phi_v_l_series(&v, 10);
        let c = moment_expansion(&phi, 11).unwrap();
        // (16K - 8) / (16K^2 - 8K + 1 - v) = X (1 - X/2) / (1 - X/2 + (1-v) X^2/16)
        let num = InverseKSeries::<Rational>::from_terms([(1, 0, rat(1, 1)), (2, 0, rat(-1, 2))], 11);
        let den = InverseKSeries::<Rational>::from_terms(
            [(0, 0, rat(1, 1)), (1, 0, rat(-1, 2)), (2, 0, (rat(1, 1) - v.clone()) / rat(16, 1))],
            11,
        );
        let expect = &num * &den.reciprocal().unwrap();
        for m in 1..11 {
            assert_eq!(c.coeff(m, 0), expect.coeff(m, 0), "m = {m}");
        }
    }

    #[test]
    fn reciprocal_examples() {
        let c = InverseKSeries::<Rational>::monomial(1, 0, rat(1, 1), 8);
        let r = reciprocal_moments(&c, 6).unwrap();
        let a = a_coefficients(&r);
        assert_eq!(a[0], rat(1, 1));
        assert!(a[1..].iter().all(|x| x.is_zero()));
        // generic a_1: c_k = 1/K + a_1/K^2 gives A_1 = -a_1
        let c = InverseKSeries::<Rational>::from_terms([(1, 0, rat(1, 1)), (2, 0, rat(3, 7))], 8);
        let r = reciprocal_moments(&c, 6).unwrap();
        assert_eq!(a_coefficients(&r)[1], rat(-3, 7));
        let bad = InverseKSeries::<Rational>::monomial(1, 0, rat(2, 1), 8);
        assert!(matches!(reciprocal_moments(&bad, 4), Err(Error::Normalization(_))));
    }

    #[test]
    fn phi_v_reciprocal_structure() {
        for v in [1, 4, 9] {
            let a = phi_v_a_coefficients(&rat(v, 1), 10).unwrap();
            assert_eq!(a[0], rat(1, 1));
            assert!(a[1].is_zero());
            assert_eq!(a[2], rat(1 - v, 16));
            for m in 2..=10 {
                assert_eq!(a[m].clone() * rat(1 << (m - 2), 1), a[2]);
            }
        }
    }

    #[test]
    fn germ_family_examples() {
        let f = germ_family_f(&rat(1, 1), 3).unwrap();
        assert_eq!(f.power_coeffs(), vec![rat(0, 1), rat(1, 1), rat(-1, 4), rat(1, 24)]);
        assert!(germ_family_f(&rat(1, 1), 4).is_err());
        // density of the germ reproduces φ_v through L^2
        for v in [0, 1, 5] {
            let f = germ_family_f(&rat(v, 1), 3).unwrap();
            let phi = crate::profiles::density_in_l_generic(&f).unwrap();
            let a = phi_v_l_coeffs(&rat(v, 1), 2);
            for j in 0..=2 {
                assert_eq!(phi.coeff(j, 0), a[j as usize], "v={v} j={j}");
            }
        }
    }

    #[test]
    fn lerch_small_examples() {
        assert!((lerch_phi(0.5, 0.0, 0).unwrap() - 2.0).abs() < 1e-15);
        assert!((lerch_phi(0.5, 1.0, 0).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-15);
        let e = lerch_boundary_expansion(1.0, 0, 3).unwrap();
        // -log L + L/2 - L^2/24
        assert!((e.singular[0]).abs() < 1e-15);
        assert!((e.singular[1] + 1.0).abs() < 1e-15);
        assert!((e.regular[0]).abs() < 1e-15);
        assert!((e.regular[1] - 0.5).abs() < 1e-15);
        assert!((e.regular[2] + 1.0 / 24.0).abs() < 1e-15);
        // tΦ(t,0,1) = t/(1-t) = 1/L - 1/2 + L/12
        let e = lerch_boundary_expansion(0.0, 0, 3).unwrap();
        assert!((e.singular[0] - 1.0).abs() < 1e-15);
        assert!((e.regular[0] + 0.5).abs() < 1e-15);
        assert!((e.regular[1] - 1.0 / 12.0).abs() < 1e-15);
        assert!(e.regular[2].abs() < 1e-15);
    }

    #[test]
    fn lerch_reference_values() {
        // (d/ds)^n Φ at L = 0.1 (40-digit reference)
        let t = (-0.1f64).exp();
        let cases = [
            (-2.0, [2210.340915906079404, -7129.203184934280399, 23867.07190490363283]),
            (-1.0, [110.4250402615797649, -301.3793286078038957, 891.8879151946147997]),
            (0.0, [10.50833194477504907, -20.06575263496389936, 48.88908657961745898]),
            (0.5, [4.603364560660832825, -6.396125785872744740, 13.65393384458494259]),
        ];
        for (s, refs) in cases {
            for (n, r) in refs.iter().enumerate() {
                for path in [LerchPath::Direct, LerchPath::Boundary] {
                    let got = lerch_phi_via(t, s, n, path).unwrap();
                    assert!(
                        (got - r).abs() <= 1e-11 * r.abs(),
                        "s={s} n={n} {path:?}: {got} vs {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn laurent_recurrence_residuals() {
        let ctx = stieltjes_gamma_tables(10, 10).unwrap();
        assert!(ctx.recurrence_residual() < 1e-12);
        assert!((ctx.c(0, 0) - 1.0).abs() < 1e-15);
        assert!((ctx.c(1, 0) + 0.5772156649015329).abs() < 1e-15);
        assert!((ctx.stieltjes[1] + 0.0728158454836767).abs() < 1e-15);
        assert!(stieltjes_gamma_tables(11, 3).is_err());
        let re = LerchContext::build(10, 10, true).unwrap();
        for j in 0..=10 {
            assert!((re.stieltjes[j] - ctx.stieltjes[j]).abs() < 1e-13);
        }
    }

    #[test]
    fn boundary_expansion_of_constant_density() {
        let inv = InverseKSeries::<f64>::monomial(-1, 0, 1.0, 8);
        let f = boundary_expansion_f(&inv, 2, 5).unwrap();
        assert_eq!(f.coeff(-3, 0), 4.0);
        assert_eq!(f.coeff(-2, 0), 3.0);
        assert_eq!(f.coeff(-1, 0), 1.0);
        assert_eq!(f.terms().count(), 3);
    }
}
