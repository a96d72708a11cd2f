//! Radial Poincaré metrics in dimension 2: `W[f] ≡ 1` with `f(1) = 0`,
//! `f'(1) = -1`.
//!
//! Along a solution `Ψ = -t/f³ + t²f'²/(2f²) - t³f'³/f³` is a constant `c`,
//! so `f' = -(f/t) ρ(c + t/f³)` where `ρ(a)` is the nonnegative root of
//! `x³ + x²/2 = a`. The equation is integrated in `L = ln(1/t)` for
//! `g = ln f`, where it reads `g_L = ρ(c + e^{-L-3g})`. For `c < 0` the
//! argument of `ρ` reaches zero at an interior point `t0`; close to it the
//! independent variable is switched to `ρ` itself, which makes the
//! square-root cusp regular and puts `t0` at `ρ = 0` exactly.

use crate::error::{Error, Result};
use crate::ode::{integrate, OdeFailure, OdeOptions, Step};
use crate::profiles::{density_from_derivs, Derivs, RadialProfile};
use crate::quad::{tanh_sinh_interval, QuadOptions};

/// Default bootstrap offset `h0 = 1 - t_start`.
pub const BOOTSTRAP_H0: f64 = 1e-3;

/// `ρ` below which a terminating solution is continued in the variable `ρ`.
const RHO_SWITCH: f64 = 0.25;

/// Nonnegative root of `x³ + x²/2 = a`.
pub fn rho(a: f64) -> Result<f64> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::domain("a", a, "[0, ∞)"));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let p = |x: f64| x * x * (x + 0.5) - a;
    let s = (2.0 * a).sqrt();
    let (mut lo, mut hi) = ((s - 2.0 * a).max(0.0), s + 1.0);
    // the bracket is loose for large a
    while p(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut x = if a <= 1.0 { s } else { a.cbrt() };
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }
    for _ in 0..100 {
        let px = p(x);
        if px == 0.0 {
            return Ok(x);
        }
        if px < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - px / (x * (3.0 * x + 1.0));
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-17 * x || hi - lo <= 1e-17 * x {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// `ρ'(a) = 1/(3ρ² + ρ)`.
fn rho_prime(r: f64) -> f64 {
    1.0 / (r * (3.0 * r + 1.0))
}

/// `a(ρ) = ρ³ + ρ²/2`.
fn cubic(r: f64) -> f64 {
    r * r * (r + 0.5)
}

/// The conserved quantity `Ψ(t)`.
pub fn psi(t: f64, f: f64, fp: f64) -> Result<f64> {
    if !(f > 0.0) {
        return Err(Error::domain("f", f, "(0, ∞)"));
    }
    let u = t * fp / f;
    Ok(-t / (f * f * f) + 0.5 * u * u - u * u * u)
}

/// Derivatives `f(1), f'(1), …, f^{(order)}(1)` of the solution with `Ψ ≡ c`.
pub fn taylor_at_one(c: f64, order: usize) -> Result<Vec<f64>> {
    if order > 4 {
        return Err(Error::Truncation {
            requested: order as i32,
            available: 4,
        });
    }
    let all = [0.0, -1.0, 0.5, -0.75, (15.0 + 16.0 * c) / 8.0];
    Ok(all[..=order].to_vec())
}

/// Degree-4 Taylor polynomial in `h = 1 - t`: `(f, f', f'')` in `t`.
fn taylor_derivs(c: f64, h: f64) -> Derivs {
    let q4 = (15.0 + 16.0 * c) / 192.0;
    Derivs {
        f: h * (1.0 + h * (0.25 + h * (0.125 + h * q4))),
        fp: -(1.0 + h * (0.5 + h * (0.375 + h * 4.0 * q4))),
        fpp: 0.5 + h * (0.75 + h * 12.0 * q4),
    }
}

/// `f''` from `W[f] = 1`.
fn fpp_from_density(t: f64, f: f64, fp: f64) -> f64 {
    (1.0 / (t * fp) - f * fp + t * fp * fp) / (t * f)
}

#[derive(Debug, Clone, Copy)]
pub struct PoincareOptions {
    /// Lowest `t` to integrate to.
    pub t_min: f64,
    /// Tolerance on the conserved quantity; the integrator runs 100 times tighter.
    pub tol: f64,
    /// Offset from `t = 1` where the Taylor bootstrap hands over.
    pub h0: f64,
}

impl Default for PoincareOptions {
    fn default() -> Self {
        PoincareOptions {
            t_min: 1e-3,
            tol: 1e-10,
            h0: BOOTSTRAP_H0,
        }
    }
}

/// One stored solution point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub t: f64,
    pub f: f64,
    pub fp: f64,
    /// From `W[f] = 1`.
    pub fpp: f64,
    /// `|Ψ - c| / max(1, t/f³)`.
    pub psi_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Var {
    L,
    Rho,
}

/// Step with state `(L, ln f)`, independent variable `L` or `ρ`.
#[derive(Debug, Clone, Copy)]
struct Segment {
    var: Var,
    step: Step<2>,
}

impl Segment {
    fn l_range(&self) -> (f64, f64) {
        (self.step.y0[0], self.step.y1[0])
    }

    /// `(ρ, ln f)` at `L` inside the segment.
    fn at(&self, c: f64, l: f64) -> Result<(f64, f64)> {
        match self.var {
            Var::L => {
                let g = self.step.eval(l)[1];
                Ok((rho(c + (-l - 3.0 * g).exp())?, g))
            }
            Var::Rho => {
                // L is decreasing in ρ along the step
                let (mut a, mut b) = (self.step.x0, self.step.x1);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if m == a || m == b {
                        break;
                    }
                    if self.step.eval(m)[0] < l {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                let r = 0.5 * (a + b);
                Ok((r, self.step.eval(r)[1]))
            }
        }
    }
}

/// Numerical solution of the Poincaré equation for one value of `c`.
#[derive(Debug, Clone)]
pub struct PoincareSolution {
    pub c: f64,
    pub grid: Vec<GridPoint>,
    pub t_min_reached: f64,
    /// Interior point where `c + t/f³` vanishes (only for `c < 0`).
    pub t0: Option<f64>,
    pub psi_residual_max: f64,
    /// `max |W[f] - 1|`, relative to the size of the terms of `W` when those
    /// exceed 1, with `f''` from differentiating the integrated equation.
    pub density_residual_max: f64,
    pub h0: f64,
    segments: Vec<Segment>,
}

impl PoincareSolution {
    /// Lowest `t` at which [`eval`](Self::eval) is available.
    pub fn t_lower(&self) -> f64 {
        self.t0.unwrap_or(self.t_min_reached)
    }

    /// `f(t0)` for a terminating solution.
    pub fn f_at_t0(&self) -> Option<f64> {
        self.t0.map(|_| self.segments.last().unwrap().step.y1[1].exp())
    }

    /// `(f, f', f'')` at `t ∈ [t_lower, 1)`; `f''` follows from `W[f] = 1`.
    pub fn eval(&self, t: f64) -> Result<Derivs> {
        if !(t >= self.t_lower() && t < 1.0) {
            return Err(Error::domain("t", t, "[t_lower, 1) of the computed solution"));
        }
        let h = 1.0 - t;
        if h < self.h0 {
            return Ok(taylor_derivs(self.c, h));
        }
        let l = -t.ln();
        let seg = self.find(l)?;
        let (r, g) = seg.at(self.c, l)?;
        let f = g.exp();
        let fp = -f / t * r;
        Ok(Derivs {
            f,
            fp,
            fpp: fpp_from_density(t, f, fp),
        })
    }

    fn find(&self, l: f64) -> Result<&Segment> {
        let i = self.segments.partition_point(|s| s.l_range().1 < l);
        self.segments
            .get(i)
            .or_else(|| self.segments.last().filter(|s| l <= s.l_range().1 + 1e-14))
            .ok_or_else(|| Error::domain("t", (-l).exp(), "computed range"))
    }

    /// `t` values of the accepted steps.
    pub fn grid_t(&self) -> impl Iterator<Item = f64> + '_ {
        self.grid.iter().map(|p| p.t)
    }
}

fn failure(e: OdeFailure, var: Var) -> Error {
    let t = match var {
        Var::L => (-e.x).exp(),
        Var::Rho => f64::NAN,
    };
    Error::Integration {
        t,
        reason: match var {
            Var::L => e.reason,
            Var::Rho => format!("{} (at ρ = {:e})", e.reason, e.x),
        },
    }
}

/// Solves for `Ψ ≡ c` from the boundary down to `t_min`, or to `t0` if the
/// solution terminates first.
pub fn solve_poincare(c: f64, t_min: f64, tol: f64) -> Result<PoincareSolution> {
    solve_poincare_with(
        c,
        &PoincareOptions {
            t_min,
            tol,
            ..Default::default()
        },
    )
}

pub fn solve_poincare_with(c: f64, opts: &PoincareOptions) -> Result<PoincareSolution> {
    let PoincareOptions { t_min, tol, h0 } = *opts;
    if !c.is_finite() {
        return Err(Error::domain("c", c, "finite reals"));
    }
    if !(t_min > 0.0 && t_min < 1.0) {
        return Err(Error::domain("t_min", t_min, "(0, 1)"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "(0, ∞)"));
    }
    if !(h0 > 0.0 && h0 <= 0.05 && 1.0 - h0 > t_min) {
        return Err(Error::domain("h0", h0, "(0, 0.05] above t_min"));
    }
    let rtol = (tol * 1e-2).max(1e-14);
    let l_end = -t_min.ln();
    let start = taylor_derivs(c, h0);
    let l0 = -(-h0).ln_1p();

    let ode = OdeOptions {
        rtol,
        atol: rtol,
        h_init: 0.05 * l0,
        h_max: 0.02,
        h_min: 1e-13,
        max_steps: 200_000,
    };
    let phase_l = integrate(
        |_, y: &[f64; 2]| {
            let a = c + (-y[0] - 3.0 * y[1]).exp();
            rho(a).ok().map(|r| [1.0, r])
        },
        l0,
        [l0, start.f.ln()],
        l_end,
        &ode,
        |s| c < 0.0 && rho(c + (-s.y1[0] - 3.0 * s.y1[1]).exp()).map_or(true, |r| r < RHO_SWITCH),
    )
    .map_err(|e| failure(e, Var::L))?;

    let mut segments: Vec<Segment> = phase_l
        .steps
        .iter()
        .map(|&step| Segment { var: Var::L, step })
        .collect();
    let mut t0 = None;
    let mut t_min_reached = t_min;

    if phase_l.stopped {
        let (_, y) = phase_l.end().unwrap();
        let r0 = rho(c + (-y[0] - 3.0 * y[1]).exp())?;
        let ode_rho = OdeOptions {
            h_init: 0.01 * r0,
            h_max: 0.02,
            ..ode
        };
        let phase_rho = integrate(
            |r, _: &[f64; 2]| {
                let d = cubic(r) - c;
                Some([-r / d, -r * r / d])
            },
            r0,
            y,
            0.0,
            &ode_rho,
            |s| s.y1[0] >= l_end,
        )
        .map_err(|e| failure(e, Var::Rho))?;
        segments.extend(
            phase_rho
                .steps
                .iter()
                .map(|&step| Segment { var: Var::Rho, step }),
        );
        if !phase_rho.stopped {
            let (_, y) = phase_rho.end().unwrap();
            t0 = Some((-y[0]).exp());
        }
    }
    if t0.is_none() {
        if phase_l.stopped && segments.last().unwrap().step.y1[0] < l_end {
            return Err(Error::Integration {
                t: (-segments.last().unwrap().step.y1[0]).exp(),
                reason: "integration ended before t_min".into(),
            });
        }
        t_min_reached = t_min;
    }

    // grid: start of the first step, then the end of every step
    let mut grid = Vec::with_capacity(segments.len() + 1);
    let mut psi_max = 0f64;
    let mut density_max = 0f64;
    let first = segments.first().map(|s| (s.var, s.step.x0, s.step.y0));
    let ends = segments.iter().map(|s| (s.var, s.step.x1, s.step.y1));
    for (var, x, y) in first.into_iter().chain(ends) {
        let t = (-y[0]).exp();
        if t < t_min * (1.0 - 1e-14) && t0.is_none() {
            continue;
        }
        let f = y[1].exp();
        let a_state = c + t / (f * f * f);
        let (r, drift) = match var {
            Var::L => (rho(a_state)?, 0.0),
            Var::Rho => (x, (a_state - cubic(x)).abs()),
        };
        let fp = -f / t * r;
        let scale = (t / (f * f * f)).max(1.0);
        let psi_res = match var {
            Var::L => (psi(t, f, fp)? - c).abs() / scale,
            Var::Rho => drift / scale,
        };
        let fpp = fpp_from_density(t, f, fp);
        if r > 0.0 {
            // f'' by differentiating f' = -(f/t) ρ(a(t))
            let dr_dt = match var {
                Var::L => rho_prime(r) * (1.0 + 3.0 * r) / (f * f * f),
                Var::Rho => (cubic(r) - c) / (t * r),
            };
            let fpp_chain = -(fp / t - f / (t * t)) * r - f / t * dr_dt;
            let w = density_from_derivs(2, t, Derivs { f, fp, fpp: fpp_chain });
            // relative to the terms of W, which cancel strongly near the origin
            let size = t * fp.abs() * (f * fp.abs() + t * f * fpp_chain.abs() + t * fp * fp);
            density_max = density_max.max((w - 1.0).abs() / size.max(1.0));
        }
        psi_max = psi_max.max(psi_res);
        grid.push(GridPoint {
            t,
            f,
            fp,
            fpp,
            psi_residual: psi_res,
        });
    }
    if psi_max > 100.0 * tol {
        return Err(Error::Integration {
            t: grid
                .iter()
                .max_by(|a, b| a.psi_residual.total_cmp(&b.psi_residual))
                .map_or(f64::NAN, |p| p.t),
            reason: format!("conserved quantity drifted by {psi_max:e}"),
        });
    }
    if let Some(t0) = t0 {
        t_min_reached = t0;
    }
    Ok(PoincareSolution {
        c,
        grid,
        t_min_reached,
        t0,
        psi_residual_max: psi_max,
        density_residual_max: density_max,
        h0,
        segments,
    })
}

/// Fitted behaviour `f ≈ A t^{-e}` near the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginFit {
    pub exponent: f64,
    pub prefactor: f64,
}

/// Least-squares fit of `ln f` against `ln(1/t)` over the last decade of the grid.
pub fn origin_fit(sol: &PoincareSolution) -> Result<OriginFit> {
    if sol.c < 0.0 {
        return Err(Error::Precondition(format!(
            "origin behaviour needs c >= 0 (got c = {})",
            sol.c
        )));
    }
    if sol.t_min_reached > 1e-3 {
        return Err(Error::Estimation(format!(
            "solution only reaches t = {:e}; need t <= 1e-3",
            sol.t_min_reached
        )));
    }
    let cut = 10.0 * sol.t_min_reached;
    let pts: Vec<(f64, f64)> = sol
        .grid
        .iter()
        .filter(|p| p.t <= cut)
        .map(|p| (-p.t.ln(), p.f.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::Estimation(format!(
            "only {} grid points in the last decade",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    Ok(OriginFit {
        exponent,
        prefactor: (my - exponent * mx).exp(),
    })
}

pub fn origin_exponent(sol: &PoincareSolution) -> Result<f64> {
    origin_fit(sol).map(|f| f.exponent)
}

/// Cusp at `t0` in the variable `σ = √(t - t0)`, `Q(σ) = f(t0 + σ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspData {
    pub t0: f64,
    pub f0: f64,
    /// `|c + t0/f(t0)³|`.
    pub event_residual: f64,
    pub qp: f64,
    pub qpp: f64,
    pub qppp_num: f64,
    /// `-4√2 / (t0 √f(t0))`.
    pub qppp_formula: f64,
}

/// One-sided finite differences of `Q` at `σ = 0`.
pub fn cusp_data(sol: &PoincareSolution) -> Result<CuspData> {
    let (t0, f0) = match (sol.t0, sol.f_at_t0()) {
        (Some(t0), Some(f0)) => (t0, f0),
        _ => {
            return Err(Error::Precondition(format!(
                "solution for c = {} has no termination point",
                sol.c
            )))
        }
    };
    let q = |s: f64| -> Result<f64> {
        if s == 0.0 {
            Ok(f0)
        } else {
            Ok(sol.eval(t0 + s * s)?.f)
        }
    };
    let stencil = |d: f64| -> Result<[f64; 4]> { Ok([q(0.0)?, q(d)?, q(2.0 * d)?, q(3.0 * d)?]) };
    let [a0, a1, a2, a3] = stencil(1e-3)?;
    let d = 1e-3;
    let qp = (-11.0 * a0 + 18.0 * a1 - 9.0 * a2 + 2.0 * a3) / (6.0 * d);
    let qpp = (2.0 * a0 - 5.0 * a1 + 4.0 * a2 - a3) / (d * d);
    let d3 = 2e-3;
    let [b0, b1, b2, b3] = stencil(d3)?;
    let qppp_num = (-b0 + 3.0 * b1 - 3.0 * b2 + b3) / d3.powi(3);
    Ok(CuspData {
        t0,
        f0,
        event_residual: (sol.c + t0 / f0.powi(3)).abs(),
        qp,
        qpp,
        qppp_num,
        qppp_formula: -4.0 * 2f64.sqrt() / (t0 * f0.sqrt()),
    })
}

/// Radial curve-length integral of the metric `-∂∂̄ log u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLength {
    /// `∫_{x_min}^1 √g dx`, infinite when divergent.
    pub integral: f64,
    pub error: f64,
    /// Log-log slope of `√g` as `x → x_min`.
    pub exponent_fit: f64,
    pub divergent: bool,
}

/// Metric coefficient `g(x) = -r²(f'/f + s(f''f - f'²)/f²)` at `s = x²r²`.
fn radial_metric(p: &RadialProfile, r: f64, x: f64) -> Result<f64> {
    let s = x * x * r * r;
    if let Some(sol) = p.poincare_solution() {
        // for Poincaré solutions g = r²/(ρ f³) without second derivatives
        let d = p.eval(s)?;
        let f = d.f / p.scale();
        let rho_s = -s * d.fp / d.f;
        if sol.t0.is_none() || rho_s > 0.0 {
            return Ok(r * r / (rho_s * f * f * f) / p.scale());
        }
    }
    let d = p.eval(s)?;
    Ok(-r * r * (d.fp / d.f + s * (d.fpp * d.f - d.fp * d.fp) / (d.f * d.f)))
}

pub fn radial_length(p: &RadialProfile, r: f64, x_min: f64) -> Result<RadialLength> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::domain("r", r, "(0, 1]"));
    }
    if !(x_min > 0.0 && x_min < 1.0) {
        return Err(Error::domain("x_min", x_min, "(0, 1)"));
    }
    if x_min * x_min * r * r < p.t_lower() {
        return Err(Error::Precondition(format!(
            "profile available only for t >= {:e}, x_min = {x_min} reaches below",
            p.t_lower()
        )));
    }
    let integrand = |x: f64| -> Result<f64> {
        let g = radial_metric(p, r, x)?;
        if !(g >= 0.0) {
            return Err(Error::Precondition(format!(
                "metric coefficient {g:e} is not positive at x = {x}"
            )));
        }
        Ok(g.sqrt())
    };
    // slope over [x_min, 4 x_min]
    let xs: Vec<f64> = (0..9).map(|i| x_min * 4f64.powf(i as f64 / 8.0)).collect();
    let mut pts = Vec::with_capacity(xs.len());
    for &x in &xs {
        pts.push((x.ln(), integrand(x)?.ln()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|q| q.0).sum::<f64>() / n;
    let my = pts.iter().map(|q| q.1).sum::<f64>() / n;
    let exponent_fit = pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum::<f64>()
        / pts.iter().map(|q| (q.0 - mx).powi(2)).sum::<f64>();

    // at r = 1 a profile vanishing at the boundary gives g ~ (1-x)^{-2}
    if r == 1.0 && p.vanishes_at_one() {
        return Ok(RadialLength {
            integral: f64::INFINITY,
            error: 0.0,
            exponent_fit,
            divergent: true,
        });
    }
    let failure = std::cell::RefCell::new(None);
    let q = tanh_sinh_interval(
        |x| match integrand(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        x_min,
        1.0,
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_level: 10,
        },
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(RadialLength {
        integral: q.value,
        error: q.error,
        exponent_fit,
        divergent: exponent_fit <= -1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_examples() {
        assert_eq!(rho(0.0).unwrap(), 0.0);
        assert!((rho(1.5).unwrap() - 1.0).abs() < 1e-15);
        let a = 1e-6;
        let r = rho(a).unwrap();
        let approx = (2.0 * a).sqrt() - 2.0 * a + 5.0 * 2f64.sqrt() * a.powf(1.5);
        assert!((r - approx).abs() < 1e-10);
        assert!(rho(-1e-3).is_err());
        for k in -30..=30 {
            let a = 10f64.powf(k as f64 / 2.0);
            let r = rho(a).unwrap();
            assert!((cubic(r) - a).abs() <= 1e-14 * a.max(1.0), "a = {a}");
        }
    }

    #[test]
    fn psi_on_the_explicit_solution() {
        assert_eq!(psi(0.25, 1.0, -2.0).unwrap(), 0.0);
        for i in 1..20 {
            let t = i as f64 / 20.0;
            let f = 2.0 - 2.0 * t.sqrt();
            let v = psi(t, f, -1.0 / t.sqrt()).unwrap();
            assert!(v.abs() < 1e-14 * (t / f.powi(3)).max(1.0));
        }
        assert!(psi(0.5, 0.0, -1.0).is_err());
    }

    #[test]
    fn taylor_values() {
        assert_eq!(taylor_at_one(0.0, 4).unwrap()[4], 15.0 / 8.0);
        assert_eq!(taylor_at_one(1.0, 4).unwrap()[4], 31.0 / 8.0);
        assert_eq!(taylor_at_one(-3.0, 2).unwrap(), vec![0.0, -1.0, 0.5]);
        assert!(taylor_at_one(0.0, 5).is_err());
    }

    #[test]
    fn zero_c_is_the_square_root_profile() {
        let sol = solve_poincare(0.0, 1e-3, 1e-10).unwrap();
        assert!(sol.t0.is_none());
        let mut worst = 0f64;
        for i in 0..=2000 {
            let t = 1e-3 + (1.0 - 1e-6 - 1e-3) * i as f64 / 2000.0;
            let f = sol.eval(t).unwrap().f;
            worst = worst.max((f - (2.0 - 2.0 * t.sqrt())).abs());
        }
        assert!(worst < 1e-8, "sup error {worst:e}");
        assert!(sol.psi_residual_max < 1e-10);
    }

    #[test]
    fn negative_c_terminates() {
        let sol = solve_poincare(-0.1, 1e-3, 1e-10).unwrap();
        let t0 = sol.t0.expect("termination");
        assert!(t0 > 0.0 && t0 < 1.0);
        let cusp = cusp_data(&sol).unwrap();
        assert!(cusp.event_residual < 1e-10);
        assert!((cusp.qppp_num / cusp.qppp_formula - 1.0).abs() < 1e-2);
        assert!(cusp.qp.abs() < 1e-4 && cusp.qpp.abs() < 1e-4, "{cusp:?}");
    }

    #[test]
    fn positive_c_origin() {
        let sol = solve_poincare(1.5, 1e-4, 1e-10).unwrap();
        assert!((origin_exponent(&sol).unwrap() - 1.0).abs() < 1e-3);
    }
}
