//! Bernoulli numbers, log-gamma, polygamma and Taylor jets of Γ.

use std::f64::consts::PI;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::jet::{binomial, factorial, Jet};
use crate::series::Coeff;

const BERNOULLI_MAX: usize = 80;

static BERNOULLI: LazyLock<Vec<BigRational>> = LazyLock::new(|| {
    // Σ_{k=0}^{n} C(n+1, k) B_k = 0
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for n in 1..=BERNOULLI_MAX {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
});

static BERNOULLI_F64: LazyLock<Vec<f64>> =
    LazyLock::new(|| BERNOULLI.iter().map(Coeff::to_f64).collect());

/// Bernoulli number `B_n` (with `B_1 = -1/2`), exact.
pub fn bernoulli(n: usize) -> BigRational {
    assert!(n <= BERNOULLI_MAX, "Bernoulli index {n} beyond table");
    BERNOULLI[n].clone()
}

pub fn bernoulli_f64(n: usize) -> f64 {
    BERNOULLI_F64[n]
}

/// `log Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    let mut shift = 0.0;
    let mut y = x;
    while y < 15.0 {
        shift += y.ln();
        y += 1.0;
    }
    let mut s = (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln();
    let y2 = y * y;
    let mut yp = y;
    for k in 1..=10 {
        s += bernoulli_f64(2 * k) / ((2 * k) as f64 * (2 * k - 1) as f64 * yp);
        yp *= y2;
    }
    s - shift
}

/// Polygamma `ψ^{(m)}(x)` for `x > 0`; `m = 0` is the digamma function.
pub fn polygamma(m: usize, x: f64) -> f64 {
    assert!(x > 0.0, "polygamma needs x > 0, got {x}");
    let threshold = 20.0 + m as f64;
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{m+1}
    let mfact = factorial(m);
    let mut y = x;
    let mut shift = 0.0;
    // ψ^{(m)}(y) = ψ^{(m)}(y+1) - (-1)^m m! / y^{m+1}
    while y < threshold {
        shift += sign * mfact / y.powi(m as i32 + 1);
        y += 1.0;
    }
    let asym = if m == 0 {
        let mut s = y.ln() - 0.5 / y;
        let y2 = y * y;
        let mut yp = y2;
        for k in 1..=20 {
            s -= bernoulli_f64(2 * k) / ((2 * k) as f64 * yp);
            yp *= y2;
        }
        s
    } else {
        let mut s = factorial(m - 1) / y.powi(m as i32) + mfact / (2.0 * y.powi(m as i32 + 1));
        // B_{2k} (2k+m-1)! / ((2k)! y^{2k+m})
        let mut ratio = 1.0; // (2k+m-1)!/((2k)!) built incrementally
        for i in 1..m {
            ratio *= i as f64; // (m-1)!
        }
        let mut yp = y.powi(m as i32);
        for k in 1..=20 {
            let a = (2 * k - 1) as f64;
            let b = (2 * k) as f64;
            ratio *= (a + m as f64 - 1.0) * (b + m as f64 - 1.0) / (a * b);
            yp *= y * y;
            s += bernoulli_f64(2 * k) * ratio / yp;
        }
        sign * s
    };
    asym + shift
}

pub fn digamma(x: f64) -> f64 {
    polygamma(0, x)
}

/// Taylor jet of `Γ(x + z)` of length `len`, for `x` not a non-positive integer.
pub fn gamma_jet(x: f64, len: usize) -> Jet {
    if x > 0.0 {
        let mut h = vec![ln_gamma(x)];
        for m in 1..len {
            h.push(polygamma(m - 1, x) / factorial(m));
        }
        return Jet(h).exp();
    }
    assert!(
        x.fract() != 0.0,
        "Γ has a pole at the non-positive integer {x}"
    );
    // Γ(x+z) = Γ(x+M+z) / Π_{i<M} (x+i+z)
    let steps = (-x).floor() as usize + 1;
    let mut denom = Jet::constant(1.0, len);
    for i in 0..steps {
        denom = &denom * &Jet::affine(x + i as f64, 1.0, len);
    }
    gamma_jet(x + steps as f64, len).div(&denom)
}

/// `Γ^{(j)}(x)`.
pub fn gamma_derivative(x: f64, j: usize) -> f64 {
    gamma_jet(x, j + 1).derivative(j)
}

/// Laurent data of Γ at its poles:
/// `Γ(1 - m - z) = (-1)^m / ((m-1)! z) + Σ_j c[m][j] z^j / j!` for `m ≥ 1`, and
/// `c[0][j] = (-1)^j Γ^{(j)}(1)`. Built by the functional-equation recurrence.
pub fn gamma_laurent_table(max_m: usize, max_j: usize) -> Vec<Vec<f64>> {
    let g1 = gamma_jet(1.0, max_j + 2);
    let mut c = vec![vec![0.0; max_j + 1]; max_m + 1];
    let c0: Vec<f64> = (0..=max_j + 1)
        .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * g1.derivative(j))
        .collect();
    c[0].copy_from_slice(&c0[..=max_j]);
    if max_m >= 1 {
        for j in 0..=max_j {
            c[1][j] = -c0[j + 1] / (j + 1) as f64;
        }
    }
    for m in 1..max_m {
        let mf = m as f64;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        c[m + 1][0] = sign / (factorial(m) * mf) - c[m][0] / mf;
        for j in 1..=max_j {
            c[m + 1][j] = -(c[m][j] + j as f64 * c[m + 1][j - 1]) / mf;
        }
    }
    c
}

/// Regular part of `Γ(1 - m - z)` from the product form
/// `Γ(1-m-z) = (-1)^m Γ(1-z) / (z Π_{q=1}^{m-1} (q + z))`, independent of the
/// recurrence in [`gamma_laurent_table`]. Returns `c[m][0..len]`.
pub fn gamma_laurent_direct(m: usize, len: usize) -> Vec<f64> {
    assert!(m >= 1);
    let g = gamma_jet(1.0, len + 1).reflect(); // Γ(1 - z)
    let mut prod = Jet::constant(1.0, len + 1);
    for q in 1..m {
        prod = &prod * &Jet::affine(q as f64, 1.0, len + 1);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let h = g.div(&prod).scale(sign); // = z Γ(1-m-z)
    // drop the residue h[0], shift down by one and convert to c_{m,j} = j! · coeff
    (0..len).map(|j| h.coeff(j + 1) * factorial(j)).collect()
}

/// `Σ_{l} C(n,l) Γ^{(n-l)}(x) y^l` helper used by moment formulas.
pub fn gamma_binomial_sum(x: f64, n: usize, y: f64) -> f64 {
    let g = gamma_jet(x, n + 1);
    (0..=n)
        .map(|l| binomial(n, l) * g.derivative(n - l) * y.powi(l as i32))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn close(a: f64, b: f64, rel: f64) {
        assert!(
            (a - b).abs() <= rel * b.abs().max(1e-300),
            "{a} vs {b} (rel {})",
            ((a - b) / b).abs()
        );
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(13), rat(0, 1));
    }

    #[test]
    fn log_gamma_reference() {
        close(ln_gamma(0.1), 2.252712651734205960, 1e-14);
        close(ln_gamma(30.5), 72.95347118416940832, 1e-14);
    }

    #[test]
    fn polygamma_reference() {
        close(polygamma(0, 0.3), -3.502524222200133125, 1e-14);
        close(polygamma(1, 2.5), 0.4903577561002348650, 1e-14);
        close(polygamma(3, 7.0), 0.007198198563125445392, 1e-13);
        close(polygamma(10, 1.0), -3630593.311606628713, 1e-13);
        close(polygamma(0, 50.0), 3.901989673427892197, 1e-15);
    }

    #[test]
    fn gamma_derivatives_at_one() {
        let reference = [
            1.0,
            -0.5772156649015328606,
            1.978111990655945111,
            -5.444874456485317734,
            23.56147408402560450,
            -117.8394082683774243,
            715.0673625273188591,
            -5019.848872629854931,
            40243.62157333575813,
            -362526.2891146549824,
            3627042.412756894778,
            -39907084.15143133585,
        ];
        let g = gamma_jet(1.0, reference.len());
        for (j, r) in reference.iter().enumerate() {
            close(g.derivative(j), *r, 1e-12);
        }
    }

    #[test]
    fn gamma_derivatives_at_half() {
        let reference = [
            1.772453850905516027,
            -3.480230906913262027,
            15.58017744240625278,
            -94.76860230921478322,
        ];
        let g = gamma_jet(0.5, 4);
        for (j, r) in reference.iter().enumerate() {
            close(g.derivative(j), *r, 1e-13);
        }
    }

    #[test]
    fn gamma_at_negative_half() {
        // Γ(-1/2) = -2√π
        close(gamma_jet(-0.5, 1).0[0], -2.0 * PI.sqrt(), 1e-14);
        close(gamma_jet(-2.5, 1).0[0], -8.0 * PI.sqrt() / 15.0, 1e-14);
    }

    #[test]
    fn laurent_recurrence_agrees_with_direct_expansion() {
        let table = gamma_laurent_table(10, 10);
        close(table[1][0], -0.5772156649015328606, 1e-15);
        for m in 1..=10 {
            let direct = gamma_laurent_direct(m, 11);
            for j in 0..=10 {
                let scale = direct[j].abs().max(1.0);
                assert!(
                    (table[m][j] - direct[j]).abs() <= 1e-12 * scale,
                    "c[{m}][{j}]: {} vs {}",
                    table[m][j],
                    direct[j]
                );
            }
        }
    }
}
