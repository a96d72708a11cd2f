//! Dormand–Prince 5(4) integrator with its 4th-order continuous extension.

/// Step-control settings.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step magnitude.
    pub h_init: f64,
    /// Largest step magnitude.
    pub h_max: f64,
    /// Step magnitude below which integration is abandoned.
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            h_init: 1e-3,
            h_max: f64::INFINITY,
            h_min: 1e-14,
            max_steps: 200_000,
        }
    }
}

/// One accepted step with the data needed for dense output.
#[derive(Debug, Clone, Copy)]
pub struct Step<const N: usize> {
    pub x0: f64,
    pub x1: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    pub d0: [f64; N],
    pub d1: [f64; N],
    /// Extra coefficient of the continuous extension (zero gives cubic Hermite).
    pub r5: [f64; N],
}

impl<const N: usize> Step<N> {
    /// Interpolated state at `x` (between `x0` and `x1`).
    pub fn eval(&self, x: f64) -> [f64; N] {
        let h = self.x1 - self.x0;
        let s = (x - self.x0) / h;
        std::array::from_fn(|i| {
            let r2 = self.y1[i] - self.y0[i];
            let r3 = h * self.d0[i] - r2;
            let r4 = r2 - h * self.d1[i] - r3;
            self.y0[i] + s * (r2 + (1.0 - s) * (r3 + s * (r4 + (1.0 - s) * self.r5[i])))
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = if self.x0 <= self.x1 {
            (self.x0, self.x1)
        } else {
            (self.x1, self.x0)
        };
        (lo..=hi).contains(&x)
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub steps: Vec<Step<N>>,
    /// Whether the stop predicate ended the run before `x_end`.
    pub stopped: bool,
}

impl<const N: usize> Trajectory<N> {
    pub fn end(&self) -> Option<(f64, [f64; N])> {
        self.steps.last().map(|s| (s.x1, s.y1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeFailure {
    pub x: f64,
    pub reason: String,
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// difference between the 5th and 4th order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
// dense output weights
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Integrates `y' = rhs(x, y)` from `x0` towards `x_end` (either direction).
///
/// `rhs` returns `None` when a stage leaves the domain of the right-hand
/// side; the step is then retried with half the size. `stop` is consulted
/// after each accepted step and ends the run when it returns `true`.
pub fn integrate<const N: usize, F, S>(
    mut rhs: F,
    x0: f64,
    y0: [f64; N],
    x_end: f64,
    opts: &OdeOptions,
    mut stop: S,
) -> Result<Trajectory<N>, OdeFailure>
where
    F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
    S: FnMut(&Step<N>) -> bool,
{
    let dir = if x_end >= x0 { 1.0 } else { -1.0 };
    let mut x = x0;
    let mut y = y0;
    let mut dy = rhs(x, &y).ok_or_else(|| OdeFailure {
        x,
        reason: "initial state outside the domain of the equation".into(),
    })?;
    let mut h = opts.h_init.min(opts.h_max).min((x_end - x0).abs());
    let mut steps = Vec::new();
    let mut k = [[0.0; N]; 7];

    while (x_end - x) * dir > 0.0 {
        if steps.len() >= opts.max_steps {
            return Err(OdeFailure {
                x,
                reason: format!("step budget of {} exhausted", opts.max_steps),
            });
        }
        if h < opts.h_min {
            return Err(OdeFailure {
                x,
                reason: format!("step size {h:e} underflowed"),
            });
        }
        let last = h >= (x_end - x).abs();
        let hs = if last { x_end - x } else { h * dir };

        k[0] = dy;
        let mut inside = true;
        for s in 1..7 {
            let ys: [f64; N] = std::array::from_fn(|i| {
                y[i] + hs * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>()
            });
            match rhs(x + C[s] * hs, &ys) {
                Some(v) => k[s] = v,
                None => {
                    inside = false;
                    break;
                }
            }
        }
        if !inside {
            h *= 0.5;
            continue;
        }
        let y_new: [f64; N] =
            std::array::from_fn(|i| y[i] + hs * (0..6).map(|j| A[6][j] * k[j][i]).sum::<f64>());
        let err = (0..N)
            .map(|i| {
                let e = hs * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
                let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                (e / sc).powi(2)
            })
            .sum::<f64>()
            / N as f64;
        let err = err.sqrt();
        if !err.is_finite() {
            h *= 0.25;
            continue;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        if err > 1.0 {
            h = hs.abs() * factor.min(1.0);
            continue;
        }
        let x_new = if last { x_end } else { x + hs };
        let step = Step {
            x0: x,
            x1: x_new,
            y0: y,
            y1: y_new,
            d0: dy,
            d1: k[6],
            r5: std::array::from_fn(|i| hs * (0..7).map(|j| D[j] * k[j][i]).sum::<f64>()),
        };
        x = x_new;
        y = y_new;
        dy = k[6];
        steps.push(step);
        h = (hs.abs() * factor).min(opts.h_max);
        if stop(&step) {
            return Ok(Trajectory {
                steps,
                stopped: true,
            });
        }
    }
    Ok(Trajectory {
        steps,
        stopped: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let opts = OdeOptions {
            rtol: 1e-12,
            atol: 1e-14,
            h_init: 0.01,
            ..Default::default()
        };
        let tr = integrate(|_, y: &[f64; 1]| Some([-y[0]]), 0.0, [1.0], 5.0, &opts, |_| false)
            .unwrap();
        let (x, y) = tr.end().unwrap();
        assert_eq!(x, 5.0);
        assert!((y[0] - (-5f64).exp()).abs() < 1e-12);
        let mid = tr.steps.iter().find(|s| s.contains(2.5)).unwrap();
        assert!((mid.eval(2.5)[0] - (-2.5f64).exp()).abs() < 1e-8);
    }

    #[test]
    fn backwards_and_stop() {
        let opts = OdeOptions::default();
        let tr = integrate(
            |_, y: &[f64; 2]| Some([y[1], -y[0]]),
            0.0,
            [0.0, 1.0],
            -10.0,
            &opts,
            |s| s.y1[0] < -0.5,
        )
        .unwrap();
        assert!(tr.stopped);
        let (x, y) = tr.end().unwrap();
        assert!((y[0] - x.sin()).abs() < 1e-8);
    }

    #[test]
    fn domain_exits_shrink_the_step() {
        // y' = sqrt(y) leaves its domain if a stage overshoots below zero
        let opts = OdeOptions {
            h_init: 1.0,
            ..Default::default()
        };
        let tr = integrate(
            |_, y: &[f64; 1]| (y[0] >= 0.0).then(|| [-y[0].sqrt()]),
            0.0,
            [1.0],
            1.9,
            &opts,
            |_| false,
        )
        .unwrap();
        let (_, y) = tr.end().unwrap();
        assert!((y[0] - (1.0 - 0.95f64).powi(2)).abs() < 1e-8);
    }
}
