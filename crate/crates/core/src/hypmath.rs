//! Closed-form hyperbolic-plane quantities shared by the rest of the crate.
//!
//! Every function is pure and evaluated in double precision. Arguments that
//! fall outside a formula's domain, or within [`DOMAIN_GUARD`] of a pole, are
//! rejected with [`Error::Domain`] rather than clamped.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Width of the band around a pole inside which inputs are rejected.
pub const DOMAIN_GUARD: f64 = 1e-12;

/// Default short-geodesic cutoff `L`. Below this length the collar half-width
/// exceeds half the geodesic length and every collar has area at least 2.
pub const SHORT_GEODESIC_CUTOFF: f64 = 1.75;

pub const FOUR_PI: f64 = 4.0 * PI;

/// Which formula to use for the area of a hyperbolic disk of radius `R`.
///
/// `TrueArea` is the hyperbolic area `4π sinh²(R/2) = 2π(cosh R − 1)`.
/// `PaperVariant` is `4π / (1 − tanh²(R/2)) = 2π(cosh R + 1)`, the expression
/// the slope-count bound is usually quoted with. The two differ by exactly
/// `4π` for every radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AreaConvention {
    TrueArea,
    #[default]
    PaperVariant,
}

impl AreaConvention {
    pub fn other(self) -> Self {
        match self {
            AreaConvention::TrueArea => AreaConvention::PaperVariant,
            AreaConvention::PaperVariant => AreaConvention::TrueArea,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AreaConvention::TrueArea => "true_area",
            AreaConvention::PaperVariant => "paper_variant",
        }
    }
}

impl fmt::Display for AreaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AreaConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true_area" | "true" => Ok(AreaConvention::TrueArea),
            "paper_variant" | "paper" => Ok(AreaConvention::PaperVariant),
            other => Err(Error::Config(format!(
                "unknown area convention {other:?} (expected true_area or paper_variant)"
            ))),
        }
    }
}

fn require_finite(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, value, "must be finite"))
    }
}

/// The comparison function `h(u) = (e^{-u} − e^{u}) / (e^{-u} + e^{u})`.
///
/// This is the solution of `h' = −1 + h²` with `h(0) = 0`, i.e. `−tanh u`.
/// The quotient is evaluated after multiplying through by `e^{-u}`, which
/// keeps it finite for every `u >= 0`.
pub fn comparison_h(u: f64) -> Result<f64> {
    require_finite("u", u)?;
    if u < 0.0 {
        return Err(Error::domain("u", u, "u >= 0"));
    }
    // (e^{-2u} - 1) / (e^{-2u} + 1), with expm1 for accuracy near 0.
    let m = (-2.0 * u).exp_m1();
    Ok(m / (m + 2.0))
}

/// Area of the hyperbolic disk of radius `r` under the given convention.
pub fn disk_area(r: f64, convention: AreaConvention) -> Result<f64> {
    require_finite("R", r)?;
    if r < 0.0 {
        return Err(Error::domain("R", r, "R >= 0"));
    }
    let s = (0.5 * r).sinh();
    let true_area = FOUR_PI * s * s;
    Ok(match convention {
        AreaConvention::TrueArea => true_area,
        // 1/(1 - tanh^2 x) = cosh^2 x = 1 + sinh^2 x
        AreaConvention::PaperVariant => FOUR_PI + true_area,
    })
}

/// Natural log of [`disk_area`], finite for radii where the area itself
/// overflows. Returns `-inf` for `disk_area(0, TrueArea)`.
pub fn ln_disk_area(r: f64, convention: AreaConvention) -> Result<f64> {
    require_finite("R", r)?;
    if r < 0.0 {
        return Err(Error::domain("R", r, "R >= 0"));
    }
    let x = 0.5 * r;
    Ok(FOUR_PI.ln()
        + 2.0
            * match convention {
                AreaConvention::TrueArea => ln_sinh(x),
                AreaConvention::PaperVariant => ln_cosh(x),
            })
}

fn ln_sinh(x: f64) -> f64 {
    if x > 1.0 {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

fn ln_cosh(x: f64) -> f64 {
    x - LN_2 + (-2.0 * x).exp().ln_1p()
}

/// Collar half-width `S(x) = arcsinh(1 / sinh(x/2))` around a simple closed
/// geodesic of length `x`.
pub fn collar_halfwidth(x: f64) -> Result<f64> {
    require_finite("x", x)?;
    if x <= DOMAIN_GUARD {
        return Err(Error::domain("x", x, "geodesic length x > 0"));
    }
    Ok((1.0 / (0.5 * x).sinh()).asinh())
}

/// Area `2 d sinh(S(d)) = 2d / sinh(d/2)` of the standard collar around a
/// simple closed geodesic of length `d`.
pub fn collar_area(d: f64) -> Result<f64> {
    require_finite("d_c", d)?;
    if d <= DOMAIN_GUARD {
        return Err(Error::domain("d_c", d, "geodesic length d_c > 0"));
    }
    Ok(2.0 * d / (0.5 * d).sinh())
}

/// Lower bound `U* = ¼ ln((g+1)/(g−1))` on the width of an embedded collar
/// around a totally geodesic boundary of genus `g >= 2`.
pub fn basmajian_width(g_boundary: u32) -> Result<f64> {
    if g_boundary <= 1 {
        return Err(Error::domain(
            "g_boundary",
            f64::from(g_boundary),
            "genus >= 2 (the width formula has a pole at genus 1; torus components need an external N(g))",
        ));
    }
    let g = f64::from(g_boundary);
    Ok(0.25 * ((g + 1.0) / (g - 1.0)).ln())
}
