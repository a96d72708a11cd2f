//! Radial weight profiles `f(t)`, `t = |z|^2`, with exact derivatives, the
//! Monge–Ampère density `W[f]`, the `φ_v` family and boundary germs.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::poincare::{solve_poincare, PoincareSolution};
use crate::series::LSeries;

/// Validity radius in `L = log(1/t)` of a truncated boundary series.
pub const TAYLOR_RADIUS: f64 = 0.5;

/// Default truncation order of boundary series.
pub const DEFAULT_ORDER: i32 = 12;

/// `(m, δ)` with `(√v - 3)/4 = m - 1 + δ`, `m ≥ 0` integer, `0 ≤ δ < 1`.
pub fn phi_v_indices(v: f64) -> (u32, f64) {
    let q = (v.sqrt() - 3.0) / 4.0;
    let fl = q.floor();
    ((fl + 1.0) as u32, q - fl)
}

/// `φ_v(t) = t^{-1/4} (cosh(L√v/4) - sinh(L√v/4)/√v)`, `L = log(1/t)`.
///
/// Uses the trigonometric form for `v < 0`, the limit `t^{-1/4}(1 - L/4)` at
/// `v = 0`, and a short Taylor expansion in `v` for `|v| < 1e-6`.
pub fn phi_v(v: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::domain("t", t, "(0, 1)"));
    }
    let ell = -t.ln();
    let x = ell / 4.0;
    let pre = x.exp();
    let body = if v == 0.0 {
        1.0 - x
    } else if v.abs() < 1e-6 {
        // Σ_k v^k x^{2k} (1/(2k)! - x/(2k+1)!)
        let mut acc = 0.0;
        let mut vp = 1.0;
        let mut fact_even = 1.0;
        for k in 0..4 {
            let fact_odd = fact_even * (2 * k + 1) as f64;
            acc += vp * (1.0 / fact_even - x / fact_odd);
            vp *= v * x * x;
            fact_even = fact_odd * (2 * k + 2) as f64;
        }
        acc
    } else if v > 0.0 {
        let s = v.sqrt();
        let y = x * s;
        if y < 1.0 {
            y.cosh() - y.sinh() / s
        } else {
            // split form: cosh - sinh/s cancels badly near s = 1 for large y
            0.5 * (1.0 - 1.0 / s) * y.exp() + 0.5 * (1.0 + 1.0 / s) * (-y).exp()
        }
    } else {
        let s = (-v).sqrt();
        (x * s).cos() - (x * s).sin() / s
    };
    Ok(pre * body)
}

/// `φ_v` written through a chosen square root `s` (either sign) of `v > 0`:
/// `((1+s) t^{(s-1)/4} - (1-s) t^{(-1-s)/4}) / (2s)`.
pub fn phi_v_power_form(s: f64, t: f64) -> f64 {
    ((1.0 + s) * t.powf((s - 1.0) / 4.0) - (1.0 - s) * t.powf((-1.0 - s) / 4.0)) / (2.0 * s)
}

/// Parsed profile description, the common target of the JSON and inline syntaxes.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    SqrtPoincare,
    ExplicitN { n: u32 },
    PhiVCandidate { v: f64 },
    TaylorAtOne { coeffs: Vec<f64>, order: Option<i32> },
    PoincareNumeric { c: f64, tmin: f64, tol: f64 },
    ConstantOne,
}

impl ProfileSpec {
    /// Parses `{"kind": ..., "params": {...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("profile JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Config("profile JSON must be an object".into()))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Config("profile JSON needs a string \"kind\"".into()))?;
        let params = match obj.get("params") {
            None | Some(Value::Null) => Map::new(),
            Some(Value::Object(m)) => m.clone(),
            Some(_) => return Err(Error::Config("\"params\" must be an object".into())),
        };
        Self::from_parts(kind, &params)
    }

    /// Parses the inline form `kind:key=value,key=value`. List values are
    /// separated by `;`, e.g. `taylor_at_one:coeffs=0;1;-0.25`.
    pub fn parse_inline(text: &str) -> Result<Self> {
        let (kind, rest) = match text.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (text.trim(), ""),
        };
        let mut params = Map::new();
        for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, val) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, found {item:?}")))?;
            let val = val.trim();
            let parsed = if val.contains(';') {
                let items: Result<Vec<Value>> = val
                    .split(';')
                    .map(|x| parse_scalar(x.trim()))
                    .collect();
                Value::Array(items?)
            } else {
                parse_scalar(val)?
            };
            params.insert(key.trim().to_string(), parsed);
        }
        Self::from_parts(kind, &params)
    }

    fn from_parts(kind: &str, params: &Map<String, Value>) -> Result<Self> {
        let num = |key: &str| -> Result<Option<f64>> {
            match params.get(key) {
                None => Ok(None),
                Some(v) => v
                    .as_f64()
                    .map(Some)
                    .ok_or_else(|| Error::Config(format!("parameter {key} must be a number"))),
            }
        };
        let need = |key: &str| -> Result<f64> {
            num(key)?.ok_or_else(|| Error::Config(format!("{kind} needs parameter {key}")))
        };
        let allowed: &[&str] = match kind {
            "sqrt_poincare" | "constant_one" => &[],
            "explicit_n" => &["n"],
            "phi_v_candidate" => &["v"],
            "taylor_at_one" => &["coeffs", "order"],
            "poincare_numeric" => &["c", "tmin", "tol"],
            other => return Err(Error::Config(format!("unknown profile kind {other:?}"))),
        };
        if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Config(format!("{kind} has no parameter {bad:?}")));
        }
        let spec = match kind {
            "sqrt_poincare" => ProfileSpec::SqrtPoincare,
            "constant_one" => ProfileSpec::ConstantOne,
            "explicit_n" => {
                let n = need("n")?;
                if n.fract() != 0.0 || n < 2.0 {
                    return Err(Error::Config(format!("explicit_n needs integer n >= 2, got {n}")));
                }
                ProfileSpec::ExplicitN { n: n as u32 }
            }
            "phi_v_candidate" => {
                let v = need("v")?;
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(Error::Config(format!("phi_v_candidate needs v >= 0, got {v}")));
                }
                ProfileSpec::PhiVCandidate { v }
            }
            "taylor_at_one" => {
                let coeffs = params
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Config("taylor_at_one needs a coeffs list".into()))?
                    .iter()
                    .map(|x| {
                        x.as_f64()
                            .ok_or_else(|| Error::Config("coeffs must be numbers".into()))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                let order = num("order")?.map(|o| o as i32);
                ProfileSpec::TaylorAtOne { coeffs, order }
            }
            _ => ProfileSpec::PoincareNumeric {
                c: need("c")?,
                tmin: num("tmin")?.unwrap_or(1e-3),
                tol: num("tol")?.unwrap_or(1e-10),
            },
        };
        Ok(spec)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ProfileSpec::SqrtPoincare => "sqrt_poincare",
            ProfileSpec::ExplicitN { .. } => "explicit_n",
            ProfileSpec::PhiVCandidate { .. } => "phi_v_candidate",
            ProfileSpec::TaylorAtOne { .. } => "taylor_at_one",
            ProfileSpec::PoincareNumeric { .. } => "poincare_numeric",
            ProfileSpec::ConstantOne => "constant_one",
        }
    }

    pub fn to_json(&self) -> Value {
        let params = match self {
            ProfileSpec::SqrtPoincare | ProfileSpec::ConstantOne => json!({}),
            ProfileSpec::ExplicitN { n } => json!({ "n": n }),
            ProfileSpec::PhiVCandidate { v } => json!({ "v": v }),
            ProfileSpec::TaylorAtOne { coeffs, order } => match order {
                Some(o) => json!({ "coeffs": coeffs, "order": o }),
                None => json!({ "coeffs": coeffs }),
            },
            ProfileSpec::PoincareNumeric { c, tmin, tol } => {
                json!({ "c": c, "tmin": tmin, "tol": tol })
            }
        };
        json!({ "kind": self.kind_name(), "params": params })
    }
}

fn parse_scalar(text: &str) -> Result<Value> {
    let x: f64 = text
        .parse()
        .map_err(|_| Error::Config(format!("not a number: {text:?}")))?;
    Ok(json!(x))
}

/// Values `(f, f', f'')` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivs {
    pub f: f64,
    pub fp: f64,
    pub fpp: f64,
}

#[derive(Clone)]
enum Kind {
    SqrtPoincare,
    ExplicitN { n: u32 },
    PhiVCandidate { v: f64, m: u32, delta: f64 },
    TaylorAtOne { series: LSeries<f64> },
    PoincareNumeric { solution: Arc<PoincareSolution> },
    ConstantOne,
}

/// A radial profile, immutable after construction.
#[derive(Clone)]
pub struct RadialProfile {
    kind: Kind,
    scale: f64,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialProfile({}", self.kind_name())?;
        match &self.kind {
            Kind::ExplicitN { n } => write!(f, ", n={n}")?,
            Kind::PhiVCandidate { v, .. } => write!(f, ", v={v}")?,
            Kind::PoincareNumeric { solution } => write!(f, ", c={}", solution.c)?,
            Kind::TaylorAtOne { series } => write!(f, ", {series:?}")?,
            _ => {}
        }
        if self.scale != 1.0 {
            write!(f, ", scale={}", self.scale)?;
        }
        write!(f, ")")
    }
}

impl RadialProfile {
    pub fn sqrt_poincare() -> Self {
        Self::plain(Kind::SqrtPoincare)
    }

    pub fn explicit_n(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("n", n as f64, "integers >= 2"));
        }
        Ok(Self::plain(Kind::ExplicitN { n }))
    }

    /// The weight built from the `φ_v` kernel closed form.
    pub fn phi_v_candidate(v: f64) -> Result<Self> {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::domain("v", v, "[0, ∞)"));
        }
        let (m, delta) = phi_v_indices(v);
        Ok(Self::plain(Kind::PhiVCandidate { v, m, delta }))
    }

    /// `f = Σ b_k L^k + O(L^order)` with `b_0 = 0`; rescaled so that `b_1 = 1`.
    pub fn taylor_at_one(coeffs: &[f64], order: Option<i32>) -> Result<Self> {
        let b0 = coeffs.first().copied().unwrap_or(0.0);
        let b1 = coeffs.get(1).copied().unwrap_or(0.0);
        if b0 != 0.0 {
            return Err(Error::Normalization(format!("f(1) must vanish, got {b0}")));
        }
        if !(b1 > 0.0) {
            return Err(Error::Normalization(format!(
                "linear coefficient must be positive to normalize f'(1) = -1, got {b1}"
            )));
        }
        let order = order.unwrap_or(DEFAULT_ORDER.max(coeffs.len() as i32));
        let series = LSeries::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (k as i32, 0, c / b1)),
            order,
        );
        Ok(Self::plain(Kind::TaylorAtOne { series }))
    }

    pub fn from_series(series: LSeries<f64>) -> Result<Self> {
        let coeffs = series.power_coeffs();
        if !series.is_log_free() {
            return Err(Error::Capability(
                "taylor_at_one profiles with log terms".into(),
            ));
        }
        Self::taylor_at_one(&coeffs, Some(series.order()))
    }

    pub fn poincare_numeric(solution: Arc<PoincareSolution>) -> Self {
        Self::plain(Kind::PoincareNumeric { solution })
    }

    pub fn constant_one() -> Self {
        Self::plain(Kind::ConstantOne)
    }

    pub fn from_spec(spec: &ProfileSpec) -> Result<Self> {
        match spec {
            ProfileSpec::SqrtPoincare => Ok(Self::sqrt_poincare()),
            ProfileSpec::ExplicitN { n } => Self::explicit_n(*n),
            ProfileSpec::PhiVCandidate { v } => Self::phi_v_candidate(*v),
            ProfileSpec::TaylorAtOne { coeffs, order } => Self::taylor_at_one(coeffs, *order),
            ProfileSpec::PoincareNumeric { c, tmin, tol } => {
                let sol = solve_poincare(*c, *tmin, *tol)?;
                Ok(Self::poincare_numeric(Arc::new(sol)))
            }
            ProfileSpec::ConstantOne => Ok(Self::constant_one()),
        }
    }

    fn plain(kind: Kind) -> Self {
        RadialProfile { kind, scale: 1.0 }
    }

    /// The profile `λ f` (derivatives scale alike).
    pub fn with_scale(&self, lambda: f64) -> Self {
        RadialProfile {
            kind: self.kind.clone(),
            scale: self.scale * lambda,
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::SqrtPoincare => "sqrt_poincare",
            Kind::ExplicitN { .. } => "explicit_n",
            Kind::PhiVCandidate { .. } => "phi_v_candidate",
            Kind::TaylorAtOne { .. } => "taylor_at_one",
            Kind::PoincareNumeric { .. } => "poincare_numeric",
            Kind::ConstantOne => "constant_one",
        }
    }

    /// `v` of a `phi_v_candidate` profile.
    pub fn candidate_v(&self) -> Option<f64> {
        match self.kind {
            Kind::PhiVCandidate { v, .. } => Some(v),
            _ => None,
        }
    }

    pub fn poincare_solution(&self) -> Option<&Arc<PoincareSolution>> {
        match &self.kind {
            Kind::PoincareNumeric { solution } => Some(solution),
            _ => None,
        }
    }

    pub fn is_constant_one(&self) -> bool {
        matches!(self.kind, Kind::ConstantOne)
    }

    /// Whether `f(1) = 0` (and hence `f'(1) = -λ`).
    pub fn vanishes_at_one(&self) -> bool {
        !matches!(self.kind, Kind::ConstantOne)
    }

    /// Lower end of the interval on which the profile can be evaluated.
    pub fn t_lower(&self) -> f64 {
        match &self.kind {
            Kind::TaylorAtOne { .. } => (-TAYLOR_RADIUS).exp(),
            Kind::PoincareNumeric { solution } => solution.t_lower(),
            _ => 0.0,
        }
    }

    /// `(f, f', f'')` at `t ∈ (0, 1)`.
    pub fn eval(&self, t: f64) -> Result<Derivs> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::domain("t", t, "(0, 1)"));
        }
        let d = match &self.kind {
            Kind::SqrtPoincare => {
                let r = t.sqrt();
                Derivs {
                    f: 2.0 * (1.0 - t) / (1.0 + r),
                    fp: -1.0 / r,
                    fpp: 0.5 / (t * r),
                }
            }
            Kind::ExplicitN { n } => {
                let nf = *n as f64;
                let ln_t = t.ln();
                Derivs {
                    f: -nf / (nf - 1.0) * ((nf - 1.0) / nf * ln_t).exp_m1(),
                    fp: -(-ln_t / nf).exp(),
                    fpp: (-ln_t / nf).exp() / (nf * t),
                }
            }
            Kind::PhiVCandidate { m, delta, .. } => candidate_derivs(*m, *delta, t),
            Kind::TaylorAtOne { series } => {
                let ell = -t.ln();
                if ell > TAYLOR_RADIUS {
                    return Err(Error::domain("t", t, "[exp(-1/2), 1) for boundary series"));
                }
                let f = series.eval(ell);
                let d1 = series.derivative();
                let fl = d1.eval(ell);
                let fll = d1.derivative().eval(ell);
                // d/dt = -(1/t) d/dL
                Derivs {
                    f,
                    fp: -fl / t,
                    fpp: (fll + fl) / (t * t),
                }
            }
            Kind::PoincareNumeric { solution } => solution.eval(t)?,
            Kind::ConstantOne => Derivs {
                f: 1.0,
                fp: 0.0,
                fpp: 0.0,
            },
        };
        Ok(Derivs {
            f: d.f * self.scale,
            fp: d.fp * self.scale,
            fpp: d.fpp * self.scale,
        })
    }

    /// Derivatives up to `order` (0, 1 or 2); unrequested entries are NaN.
    pub fn eval_order(&self, t: f64, order: u32) -> Result<Derivs> {
        if order > 2 {
            return Err(Error::Capability(format!(
                "derivative of order {order} of a {} profile",
                self.kind_name()
            )));
        }
        let mut d = self.eval(t)?;
        if order < 2 {
            d.fpp = f64::NAN;
        }
        if order < 1 {
            d.fp = f64::NAN;
        }
        Ok(d)
    }

    /// `f(t)` on the closed interval where the closed form stays finite
    /// (`t = 0` and `t = 1` included).
    pub fn value_closed(&self, t: f64) -> Result<f64> {
        if t > 0.0 && t < 1.0 {
            return Ok(self.eval(t)?.f);
        }
        let v = match (&self.kind, t) {
            (Kind::ConstantOne, x) if x == 0.0 || x == 1.0 => 1.0,
            (_, x) if x == 1.0 => 0.0,
            (Kind::SqrtPoincare, _) if t == 0.0 => 2.0,
            (Kind::ExplicitN { n }, _) if t == 0.0 => *n as f64 / (*n as f64 - 1.0),
            (Kind::PhiVCandidate { m: 0, .. }, _) if t == 0.0 => 2f64.powf(2.0 / 3.0),
            _ => return Err(Error::domain("t", t, "(0, 1)")),
        };
        Ok(v * self.scale)
    }

    /// Boundary series of `f` in `L = log(1/t)`, truncated at `O(L^order)`.
    pub fn series_at_one(&self, order: i32) -> Result<LSeries<f64>> {
        let unit = || -> LSeries<f64> {
            // 1 - t = 1 - e^{-L}
            &LSeries::constant(1.0, order) - &LSeries::exp_linear(-1.0, order)
        };
        let s = match &self.kind {
            Kind::SqrtPoincare => {
                // 2 - 2 e^{-L/2}
                &LSeries::constant(2.0, order) - &LSeries::exp_linear(-0.5, order).scale(&2.0)
            }
            Kind::ExplicitN { n } => {
                let nf = *n as f64;
                (&LSeries::constant(1.0, order) - &LSeries::exp_linear(-(nf - 1.0) / nf, order))
                    .scale(&(nf / (nf - 1.0)))
            }
            Kind::PhiVCandidate { m, delta, .. } => {
                let mf = *m as f64;
                let u = unit();
                let d = delta * (4.0 * mf + 2.0 * delta - 1.0);
                // P/4 = 1 + (4m-3)/4 u - D/4 u^2
                let quarter_p = &(&LSeries::constant(1.0, order + 1)
                    + &u.scale(&((4.0 * mf - 3.0) / 4.0)))
                    - &(&u * &u).scale(&(d / 4.0));
                let inv_root = quarter_p.cbrt()?.reciprocal()?;
                let lead = LSeries::exp_linear(mf / 3.0, order);
                &(&lead * &u) * &inv_root
            }
            Kind::TaylorAtOne { series } => {
                if series.order() < order {
                    return Err(Error::Truncation {
                        requested: order,
                        available: series.order(),
                    });
                }
                series.truncate(order)
            }
            Kind::PoincareNumeric { solution } => {
                let q = crate::poincare::taylor_at_one(solution.c, 4)?;
                // f = Σ q_k h^k / k!,  h = 1 - t
                let u = unit();
                let mut acc = LSeries::zero(order.min(5));
                let mut pow = LSeries::constant(1.0, order);
                let mut fact = 1.0;
                for (k, qk) in q.iter().enumerate() {
                    if k > 0 {
                        pow = &pow * &u;
                        fact *= k as f64;
                    }
                    // f^{(k)}(1) in t; h = 1 - t flips odd orders
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    acc = &acc + &pow.scale(&(sign * qk / fact));
                }
                acc
            }
            Kind::ConstantOne => LSeries::constant(1.0, order),
        };
        Ok(s.truncate(order).scale(&self.scale))
    }
}

fn candidate_derivs(m: u32, delta: f64, t: f64) -> Derivs {
    let mf = m as f64;
    let u = 1.0 - t;
    let d = delta * (4.0 * mf + 2.0 * delta - 1.0);
    let p = 1.0 + 3.0 * t + 4.0 * mf * u - d * u * u;
    let p1 = 3.0 - 4.0 * mf + 2.0 * d * u;
    let p2 = -2.0 * d;
    let f = 2f64.powf(2.0 / 3.0) * t.powf(-mf / 3.0) * u / p.cbrt();
    // logarithmic derivatives
    let l1 = -mf / (3.0 * t) - 1.0 / u - p1 / (3.0 * p);
    let l2 = mf / (3.0 * t * t) - 1.0 / (u * u) - (p2 * p - p1 * p1) / (3.0 * p * p);
    Derivs {
        f,
        fp: f * l1,
        fpp: f * (l2 + l1 * l1),
    }
}

/// Values `(f, f', f'')` of `p` at `t`, failing for orders above two.
pub fn eval_profile(p: &RadialProfile, t: f64, order: u32) -> Result<Derivs> {
    p.eval_order(t, order)
}

/// `W[f] = (-1)^n t f'^{n-1} (f f' + t f f'' - t f'^2)`.
pub fn monge_ampere_density(p: &RadialProfile, n: u32, t: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, "integers >= 2"));
    }
    let d = p.eval(t)?;
    Ok(density_from_derivs(n, t, d))
}

pub fn density_from_derivs(n: u32, t: f64, d: Derivs) -> f64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * t * d.fp.powi(n as i32 - 1) * (d.f * d.fp + t * d.f * d.fpp - t * d.fp * d.fp)
}

/// Boundary series of `W[f]` (`n = 2`) from that of `f`, via
/// `φ = e^L f_L (f_L^2 - f f_LL)` with derivatives in `L`.
pub fn density_in_l(f: &LSeries<f64>) -> Result<LSeries<f64>> {
    density_in_l_generic(f)
}

pub fn density_in_l_generic<T: crate::series::Coeff>(
    f: &crate::series::LogSeries<T, crate::series::InL>,
) -> Result<crate::series::LogSeries<T, crate::series::InL>> {
    let lead_ok = f.valuation() == Some(1)
        && f.coeff(1, 0) == T::one()
        && f.terms().all(|(&(k, j), _)| k > 1 || (k == 1 && j == 0));
    if !lead_ok {
        return Err(Error::Normalization(
            "boundary series must start with exactly L".into(),
        ));
    }
    if f.order() < 3 {
        return Err(Error::Truncation {
            requested: 3,
            available: f.order(),
        });
    }
    let fl = f.derivative();
    let fll = fl.derivative();
    let inner = &(&fl * &fl) - &(f * &fll);
    let e = crate::series::LogSeries::exp_linear(T::one(), f.order());
    Ok(&(&e * &fl) * &inner)
}

/// Coefficients `[r_0, …, r_order]` of `W[f] - φ_v` in powers of `L` (`n = 2`).
pub fn germ_residual(p: &RadialProfile, v: f64, order: usize) -> Result<Vec<f64>> {
    let f = p.series_at_one(order as i32 + 3)?;
    let phi = density_in_l(&f)?;
    if (phi.order() as usize) <= order {
        return Err(Error::Truncation {
            requested: order as i32 + 1,
            available: phi.order(),
        });
    }
    if !phi.is_log_free() {
        return Err(Error::Capability("germ residual of a series with log terms".into()));
    }
    let a = asymptotics::phi_v_l_coeffs_f64(v, order);
    Ok((0..=order)
        .map(|k| phi.coeff(k as i32, 0) - a[k])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn sqrt_poincare_values() {
        let d = RadialProfile::sqrt_poincare().eval(0.25).unwrap();
        close(d.f, 1.0, 1e-15);
        close(d.fp, -2.0, 1e-15);
        close(d.fpp, 4.0, 1e-14);
        let d = RadialProfile::sqrt_poincare().eval(1.0 - 1e-12).unwrap();
        close(d.f, 0.0, 1e-11);
        close(d.fp, -1.0, 1e-11);
    }

    #[test]
    fn constant_one_values() {
        let d = RadialProfile::constant_one().eval(0.5).unwrap();
        assert_eq!((d.f, d.fp, d.fpp), (1.0, 0.0, 0.0));
    }

    #[test]
    fn domain_and_capability_errors() {
        let p = RadialProfile::sqrt_poincare();
        assert!(matches!(p.eval(0.0), Err(Error::Domain { .. })));
        assert!(matches!(p.eval(1.0), Err(Error::Domain { .. })));
        assert!(matches!(p.eval_order(0.5, 3), Err(Error::Capability(_))));
    }

    #[test]
    fn density_examples() {
        let w = monge_ampere_density(&RadialProfile::sqrt_poincare(), 2, 0.37).unwrap();
        close(w, 1.0, 1e-14);
        let w = monge_ampere_density(&RadialProfile::explicit_n(3).unwrap(), 3, 0.5).unwrap();
        close(w, 1.0, 1e-14);
        let w = monge_ampere_density(&RadialProfile::phi_v_candidate(1.0).unwrap(), 2, 0.1).unwrap();
        // 16t(1+t)(1+2t+5t^2)/(1+3t)^4 at t = 0.1
        let expect = 16.0 * 0.1 * 1.1 * (1.0 + 0.2 + 0.05) / 1.3f64.powi(4);
        close(w, expect, 1e-14);
        close(w, 0.77028, 1e-5);
    }

    #[test]
    fn phi_v_examples() {
        close(phi_v(1.0, 0.3).unwrap(), 1.0, 1e-15);
        close(phi_v(9.0, 0.25).unwrap(), 5.0 / 3.0, 1e-14);
        close(phi_v(4.0, 1.0 - 1e-15).unwrap(), 1.0, 1e-14);
        // continuity across v = 0 and the small-|v| branch
        let t = 0.2;
        let at0 = phi_v(0.0, t).unwrap();
        close(phi_v(1e-9, t).unwrap(), at0, 1e-9);
        close(phi_v(-1e-9, t).unwrap(), at0, 1e-9);
        close(phi_v(2e-6, t).unwrap(), phi_v(0.999e-6, t).unwrap(), 1e-5);
    }

    #[test]
    fn indices() {
        assert_eq!(phi_v_indices(1.0), (0, 0.5));
        assert_eq!(phi_v_indices(0.0), (0, 0.25));
        assert_eq!(phi_v_indices(9.0), (1, 0.0));
        assert_eq!(phi_v_indices(4.0), (0, 0.75));
    }

    #[test]
    fn candidate_closed_form_value() {
        // v = 1: 2^{2/3} (1-t) (1+3t)^{-1/3}
        let t = 0.3;
        let d = RadialProfile::phi_v_candidate(1.0).unwrap().eval(t).unwrap();
        close(d.f, 2f64.powf(2.0 / 3.0) * (1.0 - t) / (1.0 + 3.0 * t).cbrt(), 1e-15);
    }

    #[test]
    fn inline_and_json_agree() {
        let a = ProfileSpec::parse_inline("phi_v_candidate:v=1").unwrap();
        let b = ProfileSpec::from_json(r#"{"kind":"phi_v_candidate","params":{"v":1}}"#).unwrap();
        assert_eq!(a, b);
        let c = ProfileSpec::parse_inline("taylor_at_one:coeffs=0;1;-0.25").unwrap();
        assert_eq!(
            c,
            ProfileSpec::TaylorAtOne {
                coeffs: vec![0.0, 1.0, -0.25],
                order: None
            }
        );
        assert_eq!(ProfileSpec::from_json(&c.to_json().to_string()).unwrap(), c);
        assert!(ProfileSpec::parse_inline("nonsense").is_err());
        assert!(ProfileSpec::parse_inline("explicit_n:n=1").is_err());
        assert!(ProfileSpec::parse_inline("explicit_n:m=3").is_err());
        assert!(ProfileSpec::from_json("{\"kind\": 3}").is_err());
    }

    #[test]
    fn density_in_l_of_sqrt_is_one() {
        let f = RadialProfile::sqrt_poincare().series_at_one(14).unwrap();
        let phi = density_in_l(&f).unwrap();
        close(phi.coeff(0, 0), 1.0, 1e-15);
        for k in 1..phi.order() {
            close(phi.coeff(k, 0), 0.0, 1e-13);
        }
    }

    #[test]
    fn density_in_l_of_exact_l() {
        // f = L: φ = e^L
        let f = LSeries::<f64>::monomial(1, 0, 1.0, 8);
        let phi = density_in_l(&f).unwrap();
        close(phi.coeff(0, 0), 1.0, 0.0);
        close(phi.coeff(3, 0), 1.0 / 6.0, 1e-15);
    }

    #[test]
    fn germ_residual_examples() {
        let r = germ_residual(&RadialProfile::sqrt_poincare(), 1.0, 8).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-12), "{r:?}");
        let r = germ_residual(&RadialProfile::phi_v_candidate(1.0).unwrap(), 1.0, 3).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-12), "{r:?}");
        let f_l = RadialProfile::taylor_at_one(&[0.0, 1.0], None).unwrap();
        let r = germ_residual(&f_l, 0.0, 1).unwrap();
        assert!(r.iter().any(|x| x.abs() > 1e-3), "{r:?}");
    }

    #[test]
    fn taylor_profile_validity_radius() {
        let p = RadialProfile::taylor_at_one(&[0.0, 2.0, -0.5], None).unwrap();
        let d = p.eval(0.9).unwrap();
        let ell = -(0.9f64).ln();
        close(d.f, ell - 0.25 * ell * ell, 1e-15);
        assert!(p.eval(0.5).is_err());
    }

    #[test]
    fn scaled_profile_scales_values() {
        let p = RadialProfile::sqrt_poincare().with_scale(2.0);
        close(p.eval(0.25).unwrap().f, 2.0, 1e-15);
        close(p.value_closed(0.0).unwrap(), 4.0, 0.0);
    }
}
