//! Truncated Taylor expansions ("jets") in a single variable `z`.
//!
//! A jet of length `n` stores `c[0..n]` with `g(x0 + z) = Σ c[i] z^i + O(z^n)`.
//! Derivatives are recovered as `g^{(i)}(x0) = i! c[i]`.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet(pub Vec<f64>);

impl Jet {
    pub fn constant(c: f64, len: usize) -> Self {
        let mut v = vec![0.0; len];
        if len > 0 {
            v[0] = c;
        }
        Jet(v)
    }

    /// `a + b z`.
    pub fn affine(a: f64, b: f64, len: usize) -> Self {
        let mut j = Jet::constant(a, len);
        if len > 1 {
            j.0[1] = b;
        }
        j
    }

    /// `exp(a + b z)`.
    pub fn exp_affine(a: f64, b: f64, len: usize) -> Self {
        let mut v = Vec::with_capacity(len);
        let mut c = a.exp();
        for i in 0..len {
            v.push(c);
            c *= b / (i + 1) as f64;
        }
        Jet(v)
    }

    /// `sin(π a / 2 + b z)`, exact at integer `a`.
    pub fn sin_half_pi_affine(a: f64, b: f64, len: usize) -> Self {
        let mut v = Vec::with_capacity(len);
        let mut scale = 1.0;
        for i in 0..len {
            v.push(scale * sin_half_pi(a + i as f64));
            scale *= b / (i + 1) as f64;
        }
        Jet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.0.get(i).copied().unwrap_or(0.0)
    }

    /// `i`-th derivative at the expansion point.
    pub fn derivative(&self, i: usize) -> f64 {
        self.coeff(i) * factorial(i)
    }

    pub fn scale(&self, c: f64) -> Self {
        Jet(self.0.iter().map(|x| x * c).collect())
    }

    /// `g(x0 - z)` from `g(x0 + z)`.
    pub fn reflect(&self) -> Self {
        Jet(self
            .0
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
            .collect())
    }

    pub fn recip(&self) -> Self {
        let n = self.len();
        let mut r = vec![0.0; n];
        r[0] = 1.0 / self.0[0];
        for i in 1..n {
            let s: f64 = (1..=i).map(|k| self.0[k] * r[i - k]).sum();
            r[i] = -s * r[0];
        }
        Jet(r)
    }

    pub fn div(&self, rhs: &Jet) -> Self {
        self * &rhs.recip()
    }

    pub fn exp(&self) -> Self {
        // g = exp(h)  =>  g' = h' g
        let n = self.len();
        let mut g = vec![0.0; n];
        g[0] = self.0[0].exp();
        for i in 1..n {
            let s: f64 = (1..=i).map(|k| k as f64 * self.0[k] * g[i - k]).sum();
            g[i] = s / i as f64;
        }
        Jet(g)
    }
}

impl Add for &Jet {
    type Output = Jet;

    fn add(self, rhs: &Jet) -> Jet {
        Jet(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Jet {
    type Output = Jet;

    fn sub(self, rhs: &Jet) -> Jet {
        Jet(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul for &Jet {
    type Output = Jet;

    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.len().min(rhs.len());
        let mut v = vec![0.0; n];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = (0..=i).map(|k| self.0[k] * rhs.0[i - k]).sum();
        }
        Jet(v)
    }
}

/// `sin(π x / 2)` with exact zeros and unit values at integers.
pub fn sin_half_pi(x: f64) -> f64 {
    let r = x.rem_euclid(4.0);
    if r == 0.0 || r == 2.0 {
        0.0
    } else if r == 1.0 {
        1.0
    } else if r == 3.0 {
        -1.0
    } else {
        (std::f64::consts::FRAC_PI_2 * r).sin()
    }
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_affine_matches_closed_form() {
        let h = Jet::affine(0.3, -1.7, 8);
        let a = h.exp();
        let b = Jet::exp_affine(0.3, -1.7, 8);
        for i in 0..8 {
            assert!((a.0[i] - b.0[i]).abs() < 1e-14 * b.0[i].abs().max(1.0));
        }
    }

    #[test]
    fn reciprocal_inverts() {
        let h = Jet(vec![2.0, -1.0, 0.5, 3.0, 0.25]);
        let p = &h * &h.recip();
        assert!((p.0[0] - 1.0).abs() < 1e-15);
        for c in &p.0[1..] {
            assert!(c.abs() < 1e-14);
        }
    }

    #[test]
    fn sine_jet_at_integer_points() {
        let s = Jet::sin_half_pi_affine(-6.0, std::f64::consts::FRAC_PI_2, 4);
        assert_eq!(s.0[0], 0.0);
        assert!((s.0[1] + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
