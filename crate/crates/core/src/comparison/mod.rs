//! Numerical certificate for the geodesic-curvature comparison `k_g <= h`.
//!
//! Along a geodesic leaving a geodesic boundary orthogonally, write the metric
//! as `du² + J(u)² dv²`. The curvature `K = −J''/J` and the geodesic
//! curvature `k_g = −J'/J` of the level curves (oriented as the boundary of
//! `{u' >= u}`) satisfy the Riccati equation `k_g' = K + k_g²` with
//! `k_g(0) = 0`. For `K <= −1` the solution stays below `h(u) = −tanh u`,
//! which solves the same equation with `K ≡ −1`.
//!
//! [`verify_comparison`] integrates both the Riccati and the Jacobi form of
//! the problem on one grid and reports how well every link of that argument
//! holds numerically. It is a grid certificate, not a proof.

mod curvature;
mod ode;
mod profile;

use serde::Serialize;

pub use curvature::{general_geodesic_curvature, vcurve_geodesic_curvature, Orientation};
pub use ode::{
    integrate_jacobi, integrate_riccati, rk4, uniform_grid, JacobiSolution, Sampled, BLOW_UP,
};
pub use profile::CurvatureProfile;

use crate::hypmath::comparison_h;
use crate::Result;

/// Default certification tolerance (absolute).
pub const DEFAULT_TOLERANCE: f64 = 1e-7;

/// Default number of integration steps on `[0, U]`.
pub const DEFAULT_STEPS: usize = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub profile: String,
    #[serde(rename = "U")]
    pub extent: f64,
    pub step: f64,
    pub tolerance: f64,
    pub grid: Vec<f64>,
    pub kg: Vec<f64>,
    pub h: Vec<f64>,
    #[serde(rename = "J")]
    pub j: Vec<f64>,
    /// `min (h − k_g)` over the whole grid. Zero at best, since both vanish
    /// at `u = 0`.
    pub margin: f64,
    /// `min (h − k_g)` over grid points with `u > 0`.
    pub margin_interior: f64,
    pub certified: bool,
    /// `max k_g`; the argument needs `k_g <= 0`.
    pub kg_max: f64,
    /// Largest excess of the numerical `(k_g − h)'` over
    /// `(k_g − h)(k_g + h)` at interior points.
    pub riccati_inequality_excess: f64,
    pub riccati_inequality_holds: bool,
    pub jacobi_min: f64,
    /// `min (J' − ∫₀ᵘ J)` with the integral by the trapezoidal rule,
    /// after adding the rule's error bound.
    pub jacobi_integral_slack: f64,
    pub jacobi_inequality_holds: bool,
    /// `max |−J'/J − k_g|`, the disagreement between the two integrations.
    pub riccati_jacobi_gap: f64,
}

impl ComparisonReport {
    /// Keeps every `every`-th grid row (always including the last), for
    /// compact serialization of fine grids. Scalars are left untouched.
    pub fn thinned(mut self, every: usize) -> Self {
        if every <= 1 {
            return self;
        }
        let n = self.grid.len();
        let keep = |v: &mut Vec<f64>| {
            *v = v
                .iter()
                .enumerate()
                .filter(|(i, _)| i % every == 0 || *i + 1 == n)
                .map(|(_, x)| *x)
                .collect();
        };
        keep(&mut self.grid);
        keep(&mut self.kg);
        keep(&mut self.h);
        keep(&mut self.j);
        self
    }
}

/// Integrates the Riccati and Jacobi equations for `profile` and checks the
/// comparison `k_g <= h` together with the inequalities feeding it.
///
/// `certified` is `margin >= −tolerance`; the remaining checks are reported
/// alongside.
pub fn verify_comparison(
    profile: &CurvatureProfile,
    step: f64,
    tolerance: f64,
) -> Result<ComparisonReport> {
    let kg = integrate_riccati(profile, step)?;
    let jac = integrate_jacobi(profile, step)?;
    let h_step = kg.step;
    let grid = kg.grid();
    let h = grid
        .iter()
        .map(|&u| comparison_h(u))
        .collect::<Result<Vec<_>>>()?;

    let diff: Vec<f64> = h.iter().zip(&kg.values).map(|(h, k)| h - k).collect();
    let margin = diff.iter().copied().fold(f64::INFINITY, f64::min);
    let margin_interior = diff.iter().skip(1).copied().fold(f64::INFINITY, f64::min);
    let kg_max = kg.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    // (k - h)' <= (k - h)(k + h), derivative by central differences.
    let n = grid.len();
    let mut excess = f64::NEG_INFINITY;
    for i in 1..n.saturating_sub(1) {
        let d = |i: usize| kg.values[i] - h[i];
        let lhs = (d(i + 1) - d(i - 1)) / (2.0 * h_step);
        let rhs = d(i) * (kg.values[i] + h[i]);
        excess = excess.max(lhs - rhs);
    }

    // J' >= ∫ J. Trapezoid error on [0, u] is at most u h² max|J''| / 12 with
    // J'' = -K J.
    let mut integral = 0.0;
    let mut max_second = 0.0f64;
    let mut slack = f64::INFINITY;
    for (i, &u) in grid.iter().enumerate() {
        let jv = jac.j.values[i];
        max_second = max_second.max((profile.eval(u) * jv).abs());
        if i > 0 {
            integral += 0.5 * h_step * (jac.j.values[i - 1] + jv);
        }
        let bound = u * h_step * h_step * max_second / 12.0;
        slack = slack.min(jac.dj.values[i] - integral + bound);
    }
    let jacobi_min = jac.j.values.iter().copied().fold(f64::INFINITY, f64::min);

    let gap = jac
        .j
        .values
        .iter()
        .zip(&jac.dj.values)
        .zip(&kg.values)
        .map(|((j, dj), k)| (-dj / j - k).abs())
        .fold(0.0, f64::max);

    Ok(ComparisonReport {
        profile: profile.label().to_string(),
        extent: profile.extent(),
        step: h_step,
        tolerance,
        grid,
        kg: kg.values,
        h,
        j: jac.j.values,
        margin,
        margin_interior,
        certified: margin >= -tolerance,
        kg_max,
        riccati_inequality_excess: excess,
        riccati_inequality_holds: excess <= tolerance,
        jacobi_min,
        jacobi_integral_slack: slack,
        jacobi_inequality_holds: slack >= -tolerance && jacobi_min >= 1.0 - tolerance,
        riccati_jacobi_gap: gap,
    })
}
