use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::Sampled;
use crate::{Error, Result};

/// Orientation of a level curve `{u = c}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// As the boundary of `{0 <= u <= c}`.
    Inner,
    /// As the boundary of `{u >= c}`.
    Outer,
}

/// Geodesic curvature `±J_u / J` of the `v`-curve through sample `index` of a
/// sampled metric coefficient `J`.
pub fn vcurve_geodesic_curvature(
    j: &Sampled,
    index: usize,
    orientation: Orientation,
) -> Result<f64> {
    let dj = j.derivative(index)?;
    let jv = j.values[index];
    if !(jv > 0.0) {
        return Err(Error::Degenerate(format!(
            "J = {jv} is not positive at sample {index}"
        )));
    }
    let k = dj / jv;
    Ok(match orientation {
        Orientation::Inner => k,
        Orientation::Outer => -k,
    })
}

// Step for the central differences in the general formula.
const DIFF_STEP: f64 = 1e-4;

/// Geodesic curvature of the curve `t ↦ (u(t), v(t))` in the orthogonal
/// metric `E du² + G dv²`, by Liouville's formula
///
/// ```text
/// k_g = 1/√(E u'² + G v'²) · ( φ' + (G_u v' − E_v u') / (2√(EG)) )
/// ```
///
/// where `φ` is the angle from the `u`-curves to the curve. Every derivative
/// (of the curve, of `φ` and of the metric coefficients) is taken by central
/// differences.
pub fn general_geodesic_curvature<E, G, C>(e: E, g: G, curve: C, t: f64) -> Result<f64>
where
    E: Fn(f64, f64) -> f64,
    G: Fn(f64, f64) -> f64,
    C: Fn(f64) -> (f64, f64),
{
    let dt = DIFF_STEP * t.abs().max(1.0);
    let velocity = |t: f64| {
        let (u1, v1) = curve(t + dt);
        let (u0, v0) = curve(t - dt);
        ((u1 - u0) / (2.0 * dt), (v1 - v0) / (2.0 * dt))
    };
    let angle = |t: f64| -> Result<f64> {
        let (u, v) = curve(t);
        let (du, dv) = velocity(t);
        let (ev, gv) = (e(u, v), g(u, v));
        if !(ev > 0.0 && gv > 0.0) {
            return Err(Error::Degenerate(format!(
                "metric not positive at ({u}, {v}): E = {ev}, G = {gv}"
            )));
        }
        Ok((gv.sqrt() * dv).atan2(ev.sqrt() * du))
    };

    let (u, v) = curve(t);
    let (du, dv) = velocity(t);
    if du * du + dv * dv <= 1e-20 {
        return Err(Error::Degenerate(format!(
            "curve is not regular at t = {t}"
        )));
    }
    let (ev, gv) = (e(u, v), g(u, v));
    if !(ev > 0.0 && gv > 0.0) {
        return Err(Error::Degenerate(format!(
            "metric not positive at ({u}, {v}): E = {ev}, G = {gv}"
        )));
    }

    let mut dphi = angle(t + dt)? - angle(t - dt)?;
    // unwrap across the branch cut of atan2
    if dphi > PI {
        dphi -= 2.0 * PI;
    } else if dphi < -PI {
        dphi += 2.0 * PI;
    }
    let dphi = dphi / (2.0 * dt);

    let dx = DIFF_STEP * u.abs().max(v.abs()).max(1.0);
    let g_u = (g(u + dx, v) - g(u - dx, v)) / (2.0 * dx);
    let e_v = (e(u, v + dx) - e(u, v - dx)) / (2.0 * dx);

    let speed = (ev * du * du + gv * dv * dv).sqrt();
    Ok((dphi + (g_u * dv - e_v * du) / (2.0 * (ev * gv).sqrt())) / speed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cosh_grid(step: f64, n: usize) -> Sampled {
        Sampled {
            start: 0.0,
            step,
            values: (0..=n).map(|i| (i as f64 * step).cosh()).collect(),
        }
    }

    #[test]
    fn vcurve_on_cosh_metric() {
        let j = cosh_grid(1e-3, 2000);
        assert!(
            vcurve_geodesic_curvature(&j, 0, Orientation::Outer)
                .unwrap()
                .abs()
                < 1e-6
        );
        let k = vcurve_geodesic_curvature(&j, 1000, Orientation::Outer).unwrap();
        assert!((k + 1.0f64.tanh()).abs() < 1e-6);
        for i in 0..=2000 {
            let a = vcurve_geodesic_curvature(&j, i, Orientation::Inner).unwrap();
            let b = vcurve_geodesic_curvature(&j, i, Orientation::Outer).unwrap();
            assert_eq!(a + b, 0.0);
        }
    }

    #[test]
    fn vcurve_needs_three_points() {
        let j = Sampled {
            start: 0.0,
            step: 0.1,
            values: vec![1.0, 1.005],
        };
        assert!(vcurve_geodesic_curvature(&j, 0, Orientation::Outer).is_err());
    }

    #[test]
    fn general_formula_reduces_to_vcurve_formula() {
        let jf = |u: f64| 1.0 + 0.3 * u * u + u.sinh();
        let djf = |u: f64| 0.6 * u + u.cosh();
        for c in [0.0, 0.4, 1.2] {
            let k = general_geodesic_curvature(|_, _| 1.0, |u, _| jf(u).powi(2), |t| (c, t), 0.7)
                .unwrap();
            assert!((k - djf(c) / jf(c)).abs() < 1e-6, "c = {c}");
        }
    }

    #[test]
    fn u_curves_are_geodesics() {
        let jf = |u: f64, v: f64| u.cosh() * (1.0 + 0.1 * v.sin());
        for v0 in [0.0, 0.5, 2.0] {
            let k =
                general_geodesic_curvature(|_, _| 1.0, |u, v| jf(u, v).powi(2), |t| (t, v0), 0.8)
                    .unwrap();
            assert!(k.abs() < 1e-6, "v0 = {v0}: {k}");
        }
    }

    #[test]
    fn euclidean_circle() {
        for r in [0.5, 1.0, 3.0] {
            for t in [0.0, 1.0, 3.0, 5.5] {
                let k = general_geodesic_curvature(
                    |_, _| 1.0,
                    |_, _| 1.0,
                    |t| (r * t.cos(), r * t.sin()),
                    t,
                )
                .unwrap();
                assert!((k - 1.0 / r).abs() < 1e-5, "r = {r}, t = {t}: {k}");
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(general_geodesic_curvature(|_, _| 1.0, |_, _| 1.0, |_| (1.0, 1.0), 0.0).is_err());
        assert!(general_geodesic_curvature(|_, _| 1.0, |_, _| -1.0, |t| (t, 0.0), 0.0).is_err());
    }
}
