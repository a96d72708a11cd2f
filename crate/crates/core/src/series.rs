//! Truncated power–log series.
//!
//! A [`LogSeries`] represents a finite expansion
//!
//! ```text
//!   Σ b[k][j] · X^k · (log 1/X)^j  +  O(X^order)
//! ```
//!
//! in a formal small variable `X`. Powers `k` may be negative (Laurent
//! parts), and the log exponent `j` is a non-negative integer. Two variables
//! are used in the crate, selected through a zero-sized marker so that series
//! in different variables can never be combined by accident:
//!
//! * [`InL`]: `X = L = log(1/t)`, the boundary variable at `t = 1`.
//! * [`InInverseK`]: `X = 1/(k+1)`, the large-index variable of moment
//!   sequences, so that `log(1/X) = log(k+1)`.
//!
//! Coefficients are either exact rationals ([`Rational`]) or `f64`, through
//! the [`Coeff`] trait. The `order` field tracks how far the expansion is
//! known: every arithmetic operation propagates it, so a product or a
//! reciprocal never claims more terms than its inputs determine.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = BigRational;

/// Shorthand for the rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Field of series coefficients.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn to_f64(&self) -> f64;

    /// Conversion from a float; exact rationals take the binary value of `x`.
    fn from_f64(x: f64) -> Self;
}

impl Coeff for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Coeff for BigRational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(BigRational::zero)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }

    fn to_f64(&self) -> f64 {
        // Numerator and denominator may individually overflow f64.
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.denom().bits().max(self.numer().bits()) as i64 - 60;
                let scale = BigInt::one() << shift.max(0) as usize;
                let n = (self.numer() / &scale).to_f64().unwrap_or(0.0);
                let d = (self.denom() / &scale).to_f64().unwrap_or(f64::INFINITY);
                if d == 0.0 {
                    if self.is_negative() {
                        f64::NEG_INFINITY
                    } else {
                        f64::INFINITY
                    }
                } else {
                    n / d
                }
            }
        }
    }
}

/// Marker for the expansion variable of a [`LogSeries`].
pub trait Variable: Copy + Debug + Default + Send + Sync + 'static {
    const NAME: &'static str;
}

/// `X = L = log(1/t)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InL;

/// `X = 1/(k+1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InInverseK;

impl Variable for InL {
    const NAME: &'static str = "L";
}

impl Variable for InInverseK {
    const NAME: &'static str = "1/(k+1)";
}

/// Power–log series in `L = log(1/t)`.
pub type LSeries<T = f64> = LogSeries<T, InL>;

/// Power–log series in `1/(k+1)`.
pub type InverseKSeries<T = f64> = LogSeries<T, InInverseK>;

/// Finite expansion `Σ b[k][j] X^k (log 1/X)^j + O(X^order)`.
#[derive(Clone, PartialEq)]
pub struct LogSeries<T, V> {
    terms: BTreeMap<(i32, u32), T>,
    order: i32,
    _var: PhantomData<V>,
}

impl<T: Coeff, V: Variable> Debug for LogSeries<T, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((k, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})·{}^{k}", V::NAME)?;
            if *j > 0 {
                write!(f, "·log(1/{})^{j}", V::NAME)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", V::NAME, self.order)
    }
}

impl<T: Coeff, V: Variable> LogSeries<T, V> {
    /// The zero series known up to `O(X^order)`.
    pub fn zero(order: i32) -> Self {
        LogSeries {
            terms: BTreeMap::new(),
            order,
            _var: PhantomData,
        }
    }

    pub fn constant(c: T, order: i32) -> Self {
        Self::monomial(0, 0, c, order)
    }

    /// `c · X^k · (log 1/X)^j + O(X^order)`.
    pub fn monomial(k: i32, j: u32, c: T, order: i32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(k, j, c);
        s
    }

    /// Builds a log-free series from its coefficients `c[0] + c[1] X + …`,
    /// known up to `O(X^len)`.
    pub fn from_coeffs(coeffs: &[T]) -> Self {
        let mut s = Self::zero(coeffs.len() as i32);
        for (k, c) in coeffs.iter().enumerate() {
            s.add_term(k as i32, 0, c.clone());
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, u32, T)>>(terms: I, order: i32) -> Self {
        let mut s = Self::zero(order);
        for (k, j, c) in terms {
            s.add_term(k, j, c);
        }
        s
    }

    /// Adds `c X^k (log 1/X)^j`; terms at or beyond the truncation order are dropped.
    pub fn add_term(&mut self, k: i32, j: u32, c: T) {
        if k >= self.order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((k, j)).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(k, j));
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn coeff(&self, k: i32, j: u32) -> T {
        self.terms.get(&(k, j)).cloned().unwrap_or_else(T::zero)
    }

    /// Non-zero terms as `((k, j), coefficient)`, ordered by `k` then `j`.
    pub fn terms(&self) -> impl Iterator<Item = (&(i32, u32), &T)> {
        self.terms.iter()
    }

    /// Lowest power carrying a non-zero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().map(|&(k, _)| k)
    }

    pub fn is_log_free(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    pub fn max_log_power(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Log-free coefficients `[b_0, …, b_{order-1}]` of the non-negative powers.
    pub fn power_coeffs(&self) -> Vec<T> {
        (0..self.order.max(0)).map(|k| self.coeff(k, 0)).collect()
    }

    pub fn truncate(&self, order: i32) -> Self {
        let order = order.min(self.order);
        let mut s = Self::zero(order);
        for (&(k, j), c) in &self.terms {
            s.add_term(k, j, c.clone());
        }
        s
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut s = Self::zero(self.order);
        for (&(k, j), a) in &self.terms {
            s.add_term(k, j, a.clone() * c.clone());
        }
        s
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: i32) -> Self {
        let mut s = Self::zero(self.order.saturating_add(k));
        for (&(p, j), a) in &self.terms {
            s.add_term(p + k, j, a.clone());
        }
        s
    }

    /// Derivative with respect to `X`.
    pub fn derivative(&self) -> Self {
        let mut s = Self::zero(self.order - 1);
        for (&(k, j), a) in &self.terms {
            // d/dX [X^k ℓ^j] = k X^{k-1} ℓ^j − j X^{k-1} ℓ^{j-1},  ℓ = log(1/X)
            if k != 0 {
                s.add_term(k - 1, j, a.clone() * T::from_int(k as i64));
            }
            if j > 0 {
                s.add_term(k - 1, j - 1, -(a.clone() * T::from_int(j as i64)));
            }
        }
        s
    }

    /// Splits `self = lead · X^v · (1 + ε)` where the terms at power `v` must
    /// be log-free. Returns `(v, lead, ε)`.
    fn split_leading(&self) -> Result<(i32, T, Self)> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Normalization("series is zero to its truncation order".into()))?;
        if self.terms.keys().any(|&(k, j)| k == v && j > 0) {
            return Err(Error::Normalization(format!(
                "leading power {}^{v} carries log factors",
                V::NAME
            )));
        }
        let lead = self.coeff(v, 0);
        let mut eps = Self::zero(self.order - v);
        for (&(k, j), a) in &self.terms {
            if k == v {
                continue;
            }
            eps.add_term(k - v, j, a.clone() / lead.clone());
        }
        Ok((v, lead, eps))
    }

    /// `(1 + ε)^α = Σ binom(α, i) ε^i` for ε of positive valuation.
    fn unit_power(eps: &Self, alpha: &T) -> Self {
        let order = eps.order;
        let mut acc = Self::constant(T::one(), order);
        let mut power = Self::constant(T::one(), order);
        let mut binom = T::one();
        let mut i = 0i64;
        loop {
            power = (&power * eps).truncate(order);
            if power.terms.is_empty() {
                break;
            }
            binom = binom * (alpha.clone() - T::from_int(i)) / T::from_int(i + 1);
            i += 1;
            acc = &acc + &power.scale(&binom);
        }
        acc
    }

    /// Multiplicative inverse. The leading coefficient must be exactly one.
    pub fn reciprocal(&self) -> Result<Self> {
        let (v, lead, eps) = self.split_leading()?;
        if lead != T::one() {
            return Err(Error::Normalization(format!(
                "reciprocal needs a unit leading coefficient, found {lead:?}"
            )));
        }
        Ok(Self::unit_power(&eps, &-T::one()).shift(-v))
    }

    /// Real cube root. The leading power must be divisible by three and the
    /// leading coefficient must be exactly one.
    pub fn cbrt(&self) -> Result<Self> {
        let (v, lead, eps) = self.split_leading()?;
        if lead != T::one() {
            return Err(Error::Normalization(format!(
                "cube root needs a unit leading coefficient, found {lead:?}"
            )));
        }
        if v.rem_euclid(3) != 0 {
            return Err(Error::Normalization(format!(
                "cube root of leading power {}^{v}",
                V::NAME
            )));
        }
        Ok(Self::unit_power(&eps, &T::from_ratio(1, 3)).shift(v / 3))
    }

    /// `exp(self)` for a series without constant or singular part.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.keys().any(|&(k, _)| k < 1) {
            return Err(Error::Normalization(
                "exp needs a series of positive valuation".into(),
            ));
        }
        let order = self.order;
        let mut acc = Self::constant(T::one(), order);
        let mut power = Self::constant(T::one(), order);
        let mut i = 0i64;
        loop {
            i += 1;
            power = (&power * self).scale(&T::from_ratio(1, i)).truncate(order);
            if power.terms.is_empty() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc)
    }

    /// `exp(a X) + O(X^order)`.
    pub fn exp_linear(a: T, order: i32) -> Self {
        let mut s = Self::zero(order);
        let mut c = T::one();
        for k in 0..order.max(0) {
            s.add_term(k, 0, c.clone());
            c = c * a.clone() / T::from_int(k as i64 + 1);
        }
        s
    }

    /// Sums the series at `X = x > 0`, ignoring the remainder.
    pub fn eval(&self, x: f64) -> f64 {
        let ell = (1.0 / x).ln();
        self.terms
            .iter()
            .map(|(&(k, j), c)| c.to_f64() * x.powi(k) * ell.powi(j as i32))
            .sum()
    }

    /// Magnitude of the highest-order term at `X = x`, used as a remainder estimate.
    pub fn last_term_magnitude(&self, x: f64) -> f64 {
        let ell = (1.0 / x).ln();
        let Some(&(kmax, _)) = self.terms.keys().next_back() else {
            return 0.0;
        };
        self.terms
            .iter()
            .filter(|(&(k, _), _)| k == kmax)
            .map(|(&(k, j), c)| (c.to_f64() * x.powi(k) * ell.powi(j as i32)).abs())
            .sum()
    }

    pub fn to_f64(&self) -> LogSeries<f64, V> {
        let mut s = LogSeries::zero(self.order);
        for (&(k, j), c) in &self.terms {
            s.add_term(k, j, c.to_f64());
        }
        s
    }
}

impl<'a, T: Coeff, V: Variable> Add<&'a LogSeries<T, V>> for &'a LogSeries<T, V> {
    type Output = LogSeries<T, V>;

    fn add(self, rhs: &'a LogSeries<T, V>) -> LogSeries<T, V> {
        let mut s = LogSeries::zero(self.order.min(rhs.order));
        for (&(k, j), c) in self.terms.iter().chain(rhs.terms.iter()) {
            s.add_term(k, j, c.clone());
        }
        s
    }
}

impl<'a, T: Coeff, V: Variable> Sub<&'a LogSeries<T, V>> for &'a LogSeries<T, V> {
    type Output = LogSeries<T, V>;

    fn sub(self, rhs: &'a LogSeries<T, V>) -> LogSeries<T, V> {
        self + &(-rhs)
    }
}

impl<T: Coeff, V: Variable> Neg for &LogSeries<T, V> {
    type Output = LogSeries<T, V>;

    fn neg(self) -> LogSeries<T, V> {
        self.scale(&-T::one())
    }
}

impl<'a, T: Coeff, V: Variable> Mul<&'a LogSeries<T, V>> for &'a LogSeries<T, V> {
    type Output = LogSeries<T, V>;

    fn mul(self, rhs: &'a LogSeries<T, V>) -> LogSeries<T, V> {
        let va = self.valuation().unwrap_or(self.order);
        let vb = rhs.valuation().unwrap_or(rhs.order);
        let order = self
            .order
            .saturating_add(vb)
            .min(rhs.order.saturating_add(va));
        let mut s = LogSeries::zero(order);
        for (&(ka, ja), a) in &self.terms {
            for (&(kb, jb), b) in &rhs.terms {
                if ka + kb < order {
                    s.add_term(ka + kb, ja + jb, a.clone() * b.clone());
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(c: &[(i64, i64)]) -> LSeries<Rational> {
        LSeries::from_coeffs(&c.iter().map(|&(p, q)| rat(p, q)).collect::<Vec<_>>())
    }

    #[test]
    fn reciprocal_of_geometric() {
        // 1 - X  ->  1 + X + X^2 + ...
        let s = lr(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.order(), 5);
        for k in 0..5 {
            assert_eq!(r.coeff(k, 0), rat(1, 1));
        }
    }

    #[test]
    fn reciprocal_with_leading_power() {
        // X (1 + X)  ->  X^{-1} (1 - X + X^2 ...), known to order N - 2
        let s = LSeries::<Rational>::from_terms([(1, 0, rat(1, 1)), (2, 0, rat(1, 1))], 6);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.coeff(-1, 0), rat(1, 1));
        assert_eq!(r.coeff(0, 0), rat(-1, 1));
        assert_eq!(r.coeff(3, 0), rat(1, 1));
        let prod = &s * &r;
        assert_eq!(prod.order(), 5);
        assert_eq!(prod.coeff(0, 0), rat(1, 1));
        for k in 1..5 {
            assert!(prod.coeff(k, 0).is_zero());
        }
    }

    #[test]
    fn non_unit_leading_coefficient_is_rejected() {
        let s = lr(&[(2, 1), (1, 1)]);
        assert!(matches!(s.reciprocal(), Err(Error::Normalization(_))));
        assert!(matches!(s.cbrt(), Err(Error::Normalization(_))));
    }

    #[test]
    fn cube_root_cubes_back() {
        let s = lr(&[(1, 1), (3, 5), (-2, 7), (1, 3), (0, 1), (5, 2)]);
        let c = s.cbrt().unwrap();
        let back = &(&c * &c) * &c;
        for k in 0..6 {
            assert_eq!(back.coeff(k, 0), s.coeff(k, 0));
        }
    }

    #[test]
    fn exp_matches_exp_linear() {
        let x = LSeries::<Rational>::monomial(1, 0, rat(3, 2), 9);
        assert_eq!(x.exp().unwrap(), LSeries::exp_linear(rat(3, 2), 9));
    }

    #[test]
    fn derivative_of_log_monomial() {
        // d/dL [L^2 log(1/L)] = 2 L log(1/L) - L
        let s = LSeries::<Rational>::monomial(2, 1, rat(1, 1), 5);
        let d = s.derivative();
        assert_eq!(d.coeff(1, 1), rat(2, 1));
        assert_eq!(d.coeff(1, 0), rat(-1, 1));
        assert_eq!(d.order(), 4);
    }

    #[test]
    fn eval_includes_logs() {
        let s = LSeries::<f64>::from_terms([(1, 1, 2.0), (-1, 0, 1.0)], 5);
        let x: f64 = 0.3;
        let expect = 2.0 * x * (1.0 / x).ln() + 1.0 / x;
        assert!((s.eval(x) - expect).abs() < 1e-15);
    }

    #[test]
    fn big_rational_to_f64_survives_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let q = BigRational::new(big.clone() * BigInt::from(3), big * BigInt::from(7));
        assert!((Coeff::to_f64(&q) - 3.0 / 7.0).abs() < 1e-15);
    }
}
