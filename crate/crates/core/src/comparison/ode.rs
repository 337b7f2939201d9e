use serde::Serialize;

use super::CurvatureProfile;
use crate::{Error, Result};

/// Magnitude of `k_g` treated as a blow-up of the Riccati solution.
pub const BLOW_UP: f64 = 1e6;

/// Values of a function on the uniform grid `start + i * step`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sampled {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl Sampled {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn u(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.u(i)).collect()
    }

    /// Derivative at sample `i`: central differences inside, second-order
    /// one-sided differences at the ends.
    pub fn derivative(&self, i: usize) -> Result<f64> {
        let n = self.len();
        if n < 3 {
            return Err(Error::Degenerate(format!(
                "need at least 3 samples to differentiate, have {n}"
            )));
        }
        if i >= n {
            return Err(Error::Degenerate(format!(
                "sample index {i} out of range (len {n})"
            )));
        }
        let v = &self.values;
        let h = self.step;
        Ok(if i == 0 {
            (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
        } else if i == n - 1 {
            (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h)
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        })
    }
}

/// Splits `[0, extent]` into equal steps no longer than `step`.
///
/// Requires `step <= extent / 10`. Returns the step count and the actual step.
pub fn uniform_grid(extent: f64, step: f64) -> Result<(usize, f64)> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::domain("step", step, "step > 0"));
    }
    if step > extent / 10.0 * (1.0 + 1e-12) {
        return Err(Error::domain("step", step, "step <= U/10"));
    }
    let steps = (extent / step - 1e-9).ceil() as usize;
    Ok((steps, extent / steps as f64))
}

/// Classical fixed-step fourth-order Runge–Kutta for `y' = f(u, y)` started
/// at `u = 0`. `observe` is called with every node, including the initial
/// one, and may abort the integration.
pub fn rk4<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    y0: [f64; N],
    h: f64,
    steps: usize,
    mut observe: impl FnMut(usize, f64, &[f64; N]) -> Result<()>,
) -> Result<[f64; N]> {
    let axpy = |y: &[f64; N], a: f64, k: &[f64; N]| -> [f64; N] {
        let mut out = *y;
        for (o, ki) in out.iter_mut().zip(k) {
            *o += a * ki;
        }
        out
    };
    let mut y = y0;
    observe(0, 0.0, &y)?;
    for i in 0..steps {
        let u = i as f64 * h;
        let k1 = f(u, &y);
        let k2 = f(u + 0.5 * h, &axpy(&y, 0.5 * h, &k1));
        let k3 = f(u + 0.5 * h, &axpy(&y, 0.5 * h, &k2));
        let k4 = f(u + h, &axpy(&y, h, &k3));
        for j in 0..N {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        observe(i + 1, (i + 1) as f64 * h, &y)?;
    }
    Ok(y)
}

/// Integrates the Riccati equation `k' = K(u) + k²`, `k(0) = 0`, satisfied by
/// the geodesic curvature of the level curves `u = const` oriented as the
/// boundary of `{u' >= u}`.
pub fn integrate_riccati(profile: &CurvatureProfile, step: f64) -> Result<Sampled> {
    let (steps, h) = uniform_grid(profile.extent(), step)?;
    profile.check_hypothesis(steps, h)?;
    let mut values = Vec::with_capacity(steps + 1);
    rk4(
        |u, y: &[f64; 1]| [profile.eval(u) + y[0] * y[0]],
        [0.0],
        h,
        steps,
        |_, u, y| {
            if !y[0].is_finite() || y[0].abs() > BLOW_UP {
                return Err(Error::BlowUp { u });
            }
            values.push(y[0]);
            Ok(())
        },
    )?;
    Ok(Sampled {
        start: 0.0,
        step: h,
        values,
    })
}

/// `J` and `J'` along the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiSolution {
    pub j: Sampled,
    pub dj: Sampled,
}

/// Integrates the Jacobi equation `J'' = −K(u) J` with `J(0) = 1`,
/// `J'(0) = 0`, i.e. the metric coefficient in `ds² = du² + J² dv²` along
/// one `v`-slice.
pub fn integrate_jacobi(profile: &CurvatureProfile, step: f64) -> Result<JacobiSolution> {
    let (steps, h) = uniform_grid(profile.extent(), step)?;
    profile.check_hypothesis(steps, h)?;
    let mut j = Vec::with_capacity(steps + 1);
    let mut dj = Vec::with_capacity(steps + 1);
    rk4(
        |u, y: &[f64; 2]| [y[1], -profile.eval(u) * y[0]],
        [1.0, 0.0],
        h,
        steps,
        |_, u, y| {
            if !(y[0].is_finite() && y[1].is_finite()) {
                return Err(Error::Degenerate(format!(
                    "Jacobi field overflowed at u = {u}"
                )));
            }
            j.push(y[0]);
            dj.push(y[1]);
            Ok(())
        },
    )?;
    let sampled = |values| Sampled {
        start: 0.0,
        step: h,
        values,
    };
    Ok(JacobiSolution {
        j: sampled(j),
        dj: sampled(dj),
    })
}
