//! The slope-length and slope-count bounds.
//!
//! For an essential surface of genus `g` with `n` boundary curves in a
//! manifold whose totally geodesic boundary has an embedded collar of width
//! `U*`, every boundary slope has length
//!
//! ```text
//! d <= 2π(2g + n − 2) / (−h n) <= 2π(2g + 1) / (−h),    h = h(U*) = −tanh U*
//! ```
//!
//! Counting candidate slopes of length in `[L, d_max]` with a separated-point
//! count in the disk of radius `d_max` gives the lattice term
//! `A(d_max + L) / A(L)`, and the collar lemma bounds the number of shorter
//! ones by `2π(g∂ − 1)`. Their sum is the slope-count bound `n(g, g∂)`.
//!
//! The lattice term grows like `e^{d_max}` and leaves the range of `f64`
//! quickly, so every count is carried together with its natural log
//! (see [`Count`]).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::hypmath::{self, AreaConvention, SHORT_GEODESIC_CUTOFF};
use crate::output::{csv_f64, csv_opt};
use crate::{Error, Result};

/// Smallest accepted short-geodesic cutoff; `A(L) → 0` as `L → 0`.
pub const MIN_CUTOFF: f64 = 1e-6;

/// A nonnegative real bound, with its log and its floor.
///
/// `value` is `+inf` (serialized as `null`) once it overflows; `ln_value`
/// stays finite. `floor` is absent when the value does not fit a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Count {
    pub value: f64,
    pub ln_value: f64,
    pub floor: Option<u64>,
}

impl Count {
    pub const ZERO: Count = Count {
        value: 0.0,
        ln_value: f64::NEG_INFINITY,
        floor: Some(0),
    };

    pub fn from_value(value: f64) -> Self {
        debug_assert!(value >= 0.0);
        Self {
            value,
            ln_value: value.ln(),
            floor: floor_u64(value),
        }
    }

    pub fn from_ln(ln_value: f64) -> Self {
        let value = ln_value.exp();
        Self {
            value,
            ln_value,
            floor: floor_u64(value),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Count) -> Count {
        let sum = self.value + other.value;
        if sum.is_finite() {
            return Count::from_value(sum);
        }
        let (hi, lo) = if self.ln_value >= other.ln_value {
            (self.ln_value, other.ln_value)
        } else {
            (other.ln_value, self.ln_value)
        };
        Count::from_ln(hi + (lo - hi).exp().ln_1p())
    }

    /// `self <= other`, decided on the logs when a value has overflowed.
    pub fn le(&self, other: &Count) -> bool {
        if self.value.is_finite() && other.value.is_finite() {
            self.value <= other.value
        } else {
            self.ln_value <= other.ln_value
        }
    }
}

impl std::iter::Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Self {
        iter.fold(Count::ZERO, Count::add)
    }
}

fn floor_u64(value: f64) -> Option<u64> {
    (0.0..9.2e18).contains(&value).then(|| value.floor() as u64)
}

/// Both forms of the slope-length bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeLengthBound {
    /// `2π(2g + n − 2) / (−h n)`
    pub detailed: f64,
    /// `2π(2g + 1) / (−h)`
    pub simplified: f64,
}

/// Upper bound on the length of a boundary slope of an essential genus-`g`
/// surface with `n` boundary curves, given `h = h(U) < 0`.
pub fn slope_length_bound(g: u32, n: u32, h_val: f64) -> Result<SlopeLengthBound> {
    if !(h_val < 0.0) || !h_val.is_finite() {
        return Err(Error::domain("h", h_val, "h < 0"));
    }
    if n < 1 {
        return Err(Error::domain(
            "n",
            f64::from(n),
            "at least one boundary component",
        ));
    }
    let chi_neg = 2 * i64::from(g) + i64::from(n) - 2;
    if chi_neg <= 0 {
        return Err(Error::domain(
            "2g + n - 2",
            chi_neg as f64,
            "2g + n - 2 > 0 (disks and annuli are not essential surfaces here)",
        ));
    }
    let g = f64::from(g);
    let n = f64::from(n);
    Ok(SlopeLengthBound {
        detailed: 2.0 * PI * chi_neg as f64 / (-h_val * n),
        simplified: 2.0 * PI * (2.0 * g + 1.0) / (-h_val),
    })
}

/// The admissible range `[L, 2π(2g+1)/tanh U*]` of slope lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LengthWindow {
    pub lower: f64,
    pub upper: f64,
    /// `L > upper`: no slope of length at least `L` can occur.
    pub empty: bool,
}

pub fn length_window(g: u32, u_star: f64, cutoff: f64) -> Result<LengthWindow> {
    if !(u_star > 0.0) {
        return Err(Error::domain("U*", u_star, "U* > 0"));
    }
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(Error::domain("L", cutoff, "L > 0"));
    }
    let upper = 2.0 * PI * (2.0 * f64::from(g) + 1.0) / u_star.tanh();
    Ok(LengthWindow {
        lower: cutoff,
        upper,
        empty: cutoff > upper,
    })
}

/// The lattice-count bound and its audit variants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeCount {
    /// `R = 2π(2g+1)/tanh U*`.
    #[serde(rename = "R")]
    pub radius: f64,
    pub convention: AreaConvention,
    /// `A(R + L) / A(L)` under `convention`.
    pub bound: Count,
    /// The same ratio under the other convention.
    pub bound_other_convention: Count,
    /// `A_true(R + L/2) / A_true(L/2)`, the disjoint-ball packing bound.
    pub rigorous: Count,
}

fn area_ratio(num_r: f64, den_r: f64, convention: AreaConvention) -> Result<Count> {
    let num = hypmath::disk_area(num_r, convention)?;
    let den = hypmath::disk_area(den_r, convention)?;
    if num.is_finite() && den > 0.0 {
        return Ok(Count::from_value(num / den));
    }
    Ok(Count::from_ln(
        hypmath::ln_disk_area(num_r, convention)? - hypmath::ln_disk_area(den_r, convention)?,
    ))
}

/// Bound on the number of `L`-separated points in the disk of radius
/// `R = 2π(2g+1)/tanh U*`, `A(R + L)/A(L)`.
pub fn lattice_count_bound(
    g: u32,
    u_star: f64,
    cutoff: f64,
    convention: AreaConvention,
) -> Result<LatticeCount> {
    if !(cutoff >= MIN_CUTOFF) || !cutoff.is_finite() {
        return Err(Error::domain("L", cutoff, "L >= 1e-6"));
    }
    let radius = length_window(g, u_star, cutoff)?.upper;
    Ok(LatticeCount {
        radius,
        convention,
        bound: area_ratio(radius + cutoff, cutoff, convention)?,
        bound_other_convention: area_ratio(radius + cutoff, cutoff, convention.other())?,
        rigorous: area_ratio(
            radius + 0.5 * cutoff,
            0.5 * cutoff,
            AreaConvention::TrueArea,
        )?,
    })
}

/// Collar-lemma bound `2π(g − 1)` on the number of short simple closed
/// geodesics on a closed surface of genus `g`.
pub fn collar_count_bound(genus: u32) -> Result<f64> {
    if genus < 1 {
        return Err(Error::domain("genus", f64::from(genus), "genus >= 1"));
    }
    Ok(2.0 * PI * f64::from(genus - 1))
}

/// Boundary components of the 3-manifold: `k` tori and the genera of the
/// higher-genus components.
///
/// Parses from `"t:<k>;g:<g1>,<g2>,..."`; either part may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoundaryComponents {
    pub tori: u32,
    pub genera: Vec<u32>,
}

impl BoundaryComponents {
    pub fn connected(genus: u32) -> Self {
        Self {
            tori: 0,
            genera: vec![genus],
        }
    }

    /// Total boundary genus `Σ g_i + k`.
    pub fn total_genus(&self) -> u32 {
        self.genera.iter().sum::<u32>() + self.tori
    }
}

impl FromStr for BoundaryComponents {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BoundaryComponents::default();
        let bad = |msg: String| Error::Config(format!("components {s:?}: {msg}"));
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (tag, rest) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("expected t:<count> or g:<list>, found {part:?}")))?;
            match tag.trim() {
                "t" => {
                    out.tori = rest
                        .trim()
                        .parse()
                        .map_err(|e| bad(format!("torus count {rest:?}: {e}")))?;
                }
                "g" => {
                    for item in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                        out.genera.push(
                            item.parse()
                                .map_err(|e| bad(format!("genus {item:?}: {e}")))?,
                        );
                    }
                }
                other => return Err(bad(format!("unknown tag {other:?}"))),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BoundaryComponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let genera: Vec<String> = self.genera.iter().map(u32::to_string).collect();
        write!(f, "t:{};g:{}", self.tori, genera.join(","))
    }
}

/// Everything the slope-count bound depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    /// Genus of the essential surface.
    pub g: u32,
    /// Number of boundary curves of the surface, if known. Enables the
    /// detailed slope-length bound.
    pub n: Option<u32>,
    pub components: BoundaryComponents,
    /// Replaces the genus-derived collar width of every component.
    #[serde(rename = "U_star")]
    pub u_star: Option<f64>,
    #[serde(rename = "L")]
    pub cutoff: f64,
    /// Externally supplied bound `N(g)` on slopes per torus component.
    #[serde(rename = "N_torus")]
    pub n_torus: Option<u64>,
    pub convention: AreaConvention,
}

impl BoundInput {
    pub fn connected(g: u32, g_boundary: u32) -> Self {
        Self {
            g,
            n: None,
            components: BoundaryComponents::connected(g_boundary),
            u_star: None,
            cutoff: SHORT_GEODESIC_CUTOFF,
            n_torus: None,
            convention: AreaConvention::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cutoff > 0.0) || !self.cutoff.is_finite() {
            return Err(Error::domain("L", self.cutoff, "L > 0"));
        }
        if let Some(u) = self.u_star {
            if !(u > 0.0) || !u.is_finite() {
                return Err(Error::domain("U*", u, "U* > 0"));
            }
        }
        let min_genus = if self.u_star.is_some() { 1 } else { 2 };
        if let Some(&bad) = self.components.genera.iter().find(|&&gi| gi < min_genus) {
            return Err(Error::Config(if bad == 1 {
                "a genus-1 boundary component has no collar-width formula (pole at genus 1); \
                 list it as a torus (t:<count>) and supply N(g) with --N"
                    .to_string()
            } else {
                format!("boundary component genus {bad} is not allowed")
            }));
        }
        if self.components.tori > 0 && self.n_torus.is_none() {
            return Err(Error::Config(format!(
                "{} torus component(s) need the external per-torus slope count N(g)",
                self.components.tori
            )));
        }
        if self.components.tori == 0 && self.components.genera.is_empty() {
            return Err(Error::Config("no boundary components given".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthSource {
    Basmajian,
    Override,
}

/// Full trace of `n(g, g_i)` for one higher-genus boundary component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentBound {
    pub genus: u32,
    #[serde(rename = "U_star")]
    pub u_star: f64,
    pub u_star_source: WidthSource,
    #[serde(rename = "h_at_U")]
    pub h_at_u: f64,
    pub d_max_detailed: Option<f64>,
    pub d_max: f64,
    pub length_window: LengthWindow,
    pub lattice: LatticeCount,
    pub count_collar: Count,
    pub total: Count,
    pub total_other_convention: Count,
}

fn component_bound(input: &BoundInput, genus: u32) -> Result<ComponentBound> {
    let (u_star, u_star_source) = match input.u_star {
        Some(u) => (u, WidthSource::Override),
        None => (hypmath::basmajian_width(genus)?, WidthSource::Basmajian),
    };
    let h_at_u = -u_star.tanh();
    let d_max_detailed = input
        .n
        .map(|n| slope_length_bound(input.g, n, h_at_u).map(|b| b.detailed))
        .transpose()?;
    let window = length_window(input.g, u_star, input.cutoff)?;
    let lattice = lattice_count_bound(input.g, u_star, input.cutoff, input.convention)?;
    let count_collar = Count::from_value(collar_count_bound(genus)?);
    Ok(ComponentBound {
        genus,
        u_star,
        u_star_source,
        h_at_u,
        d_max_detailed,
        d_max: window.upper,
        length_window: window,
        lattice,
        count_collar,
        total: lattice.bound.add(count_collar),
        total_other_convention: lattice.bound_other_convention.add(count_collar),
    })
}

/// Evaluation of the inequality `Σ n(g, g_i) + N(g) <= n(g, g∂)` relating the
/// per-component bounds to the bound for a connected boundary of the same
/// total genus. Recorded, never enforced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosingClaim {
    pub g_boundary_total: u32,
    pub lhs: Count,
    pub rhs: Count,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub g: u32,
    pub n: Option<u32>,
    pub components: BoundaryComponents,
    /// Total boundary genus `Σ g_i + k`.
    pub g_boundary: u32,
    #[serde(rename = "L")]
    pub cutoff: f64,
    pub area_convention: AreaConvention,
    /// The lattice radius is read with `tanh U*`; a literal `tan U*` reading
    /// is not used.
    pub lattice_radius_reading: &'static str,
    /// Smallest collar width over the higher-genus components.
    #[serde(rename = "U_star")]
    pub u_star: Option<f64>,
    /// Weakest (largest) `h(U*)` over the components.
    #[serde(rename = "h_at_U")]
    pub h_at_u: Option<f64>,
    pub d_max_detailed: Option<f64>,
    pub d_max: Option<f64>,
    #[serde(rename = "R")]
    pub radius: Option<f64>,
    pub count_lattice: Count,
    pub count_collar: Count,
    /// `k · N(g)`.
    pub count_torus: Count,
    pub total: Count,
    pub total_other_convention: Count,
    pub per_component: Vec<ComponentBound>,
    pub n_torus: Option<u64>,
    pub closing_claim: Option<ClosingClaim>,
}

/// Slope-count bound `Σ n(g, g_i) + k N(g)` for a boundary made of
/// higher-genus components `g_i` and `k` tori, with the per-component trace.
pub fn multi_component_bound(input: &BoundInput) -> Result<BoundReport> {
    input.validate()?;
    let per_component = input
        .components
        .genera
        .iter()
        .map(|&gi| component_bound(input, gi))
        .collect::<Result<Vec<_>>>()?;

    let k = input.components.tori;
    let count_torus = if k > 0 {
        Count::from_value(f64::from(k) * input.n_torus.expect("validated") as f64)
    } else {
        Count::ZERO
    };
    let count_lattice: Count = per_component.iter().map(|c| c.lattice.bound).sum();
    let count_collar: Count = per_component.iter().map(|c| c.count_collar).sum();
    let component_total: Count = per_component.iter().map(|c| c.total).sum();
    let component_total_other: Count = per_component.iter().map(|c| c.total_other_convention).sum();

    let max_of = |f: fn(&ComponentBound) -> f64| per_component.iter().map(f).reduce(f64::max);
    let min_of = |f: fn(&ComponentBound) -> f64| per_component.iter().map(f).reduce(f64::min);
    let d_max_detailed = per_component
        .iter()
        .map(|c| c.d_max_detailed)
        .collect::<Option<Vec<f64>>>()
        .and_then(|v| v.into_iter().reduce(f64::max));

    let g_boundary = input.components.total_genus();
    let multi = k > 0 || per_component.len() > 1;
    let closing_claim = if multi && g_boundary >= 2 {
        let connected = BoundInput {
            n: None,
            components: BoundaryComponents::connected(g_boundary),
            n_torus: None,
            ..input.clone()
        };
        let rhs = component_bound(&connected, g_boundary)?.total;
        let lhs = component_total.add(Count::from_value(input.n_torus.unwrap_or(0) as f64));
        Some(ClosingClaim {
            g_boundary_total: g_boundary,
            lhs,
            rhs,
            holds: lhs.le(&rhs),
        })
    } else {
        None
    };

    Ok(BoundReport {
        g: input.g,
        n: input.n,
        components: input.components.clone(),
        g_boundary,
        cutoff: input.cutoff,
        area_convention: input.convention,
        lattice_radius_reading: "tanh",
        u_star: min_of(|c| c.u_star),
        h_at_u: max_of(|c| c.h_at_u),
        d_max_detailed,
        d_max: max_of(|c| c.d_max),
        radius: max_of(|c| c.lattice.radius),
        count_lattice,
        count_collar,
        count_torus,
        total: component_total.add(count_torus),
        total_other_convention: component_total_other.add(count_torus),
        per_component,
        n_torus: input.n_torus,
        closing_claim,
    })
}

/// `n(g, g∂)` for a connected boundary of genus `g∂ >= 2`, collar width from
/// the boundary genus.
pub fn combined_bound(
    g: u32,
    g_boundary: u32,
    cutoff: f64,
    convention: AreaConvention,
) -> Result<BoundReport> {
    hypmath::basmajian_width(g_boundary)?;
    multi_component_bound(&BoundInput {
        cutoff,
        convention,
        ..BoundInput::connected(g, g_boundary)
    })
}

/// One row of a `(g, g∂)` sweep table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub g: u32,
    pub g_boundary: u32,
    #[serde(rename = "U_star")]
    pub u_star: f64,
    #[serde(rename = "h_at_U")]
    pub h_at_u: f64,
    pub d_max: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub count_lattice: Count,
    pub count_collar: Count,
    pub total: Count,
    pub total_other_convention: Count,
}

impl SweepRow {
    pub fn from_component(g: u32, c: &ComponentBound) -> Self {
        Self {
            g,
            g_boundary: c.genus,
            u_star: c.u_star,
            h_at_u: c.h_at_u,
            d_max: c.d_max,
            radius: c.lattice.radius,
            count_lattice: c.lattice.bound,
            count_collar: c.count_collar,
            total: c.total,
            total_other_convention: c.total_other_convention,
        }
    }
}

pub const SWEEP_CSV_HEADER: &str = "g,g_boundary,U_star,h_at_U,d_max,R,count_lattice,ln_count_lattice,count_collar,total,ln_total,total_floor,total_other_convention,convention";

/// Combined bounds over `g ∈ g_range` × `g∂ ∈ gb_range`, `g` varying
/// slowest.
pub fn sweep(
    g_range: std::ops::RangeInclusive<u32>,
    gb_range: std::ops::RangeInclusive<u32>,
    cutoff: f64,
    convention: AreaConvention,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for g in g_range {
        for gb in gb_range.clone() {
            let r = combined_bound(g, gb, cutoff, convention)?;
            rows.push(SweepRow::from_component(g, &r.per_component[0]));
        }
    }
    Ok(rows)
}

/// Renders sweep rows under [`SWEEP_CSV_HEADER`].
pub fn sweep_csv(rows: &[SweepRow], convention: AreaConvention) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [
            r.g.to_string(),
            r.g_boundary.to_string(),
            csv_f64(r.u_star),
            csv_f64(r.h_at_u),
            csv_f64(r.d_max),
            csv_f64(r.radius),
            csv_f64(r.count_lattice.value),
            csv_f64(r.count_lattice.ln_value),
            csv_f64(r.count_collar.value),
            csv_f64(r.total.value),
            csv_f64(r.total.ln_value),
            csv_opt(r.total.floor),
            csv_f64(r.total_other_convention.value),
            convention.as_str().to_string(),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// One configuration of the closing-claim sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimRow {
    pub g: u32,
    pub tori: u32,
    pub genera: Vec<u32>,
    pub claim: ClosingClaim,
}

pub const CLAIM_CSV_HEADER: &str = "g,tori,genera,g_boundary_total,ln_lhs,ln_rhs,holds";

/// Evaluates the closing claim for `g <= max_g` over boundaries with one or
/// two higher-genus components of genus `2..=max_component_genus` (as
/// multisets) and zero or one torus.
pub fn closing_claim_sweep(
    max_g: u32,
    max_component_genus: u32,
    n_torus: u64,
    cutoff: f64,
    convention: AreaConvention,
) -> Result<Vec<ClaimRow>> {
    let mut layouts: Vec<Vec<u32>> = (2..=max_component_genus).map(|a| vec![a]).collect();
    for a in 2..=max_component_genus {
        for b in a..=max_component_genus {
            layouts.push(vec![a, b]);
        }
    }
    let mut rows = Vec::new();
    for g in 0..=max_g {
        for tori in 0..=1 {
            for genera in &layouts {
                if tori == 0 && genera.len() == 1 {
                    continue;
                }
                let input = BoundInput {
                    g,
                    n: None,
                    components: BoundaryComponents {
                        tori,
                        genera: genera.clone(),
                    },
                    u_star: None,
                    cutoff,
                    n_torus: Some(n_torus),
                    convention,
                };
                let report = multi_component_bound(&input)?;
                rows.push(ClaimRow {
                    g,
                    tori,
                    genera: genera.clone(),
                    claim: report.closing_claim.expect("multi-component layout"),
                });
            }
        }
    }
    Ok(rows)
}

/// Renders claim rows under [`CLAIM_CSV_HEADER`]; genera are `;`-separated.
pub fn claim_csv(rows: &[ClaimRow]) -> String {
    let mut out = String::from(CLAIM_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let genera: Vec<String> = r.genera.iter().map(u32::to_string).collect();
        let cells = [
            r.g.to_string(),
            r.tori.to_string(),
            genera.join(";"),
            r.claim.g_boundary_total.to_string(),
            csv_f64(r.claim.lhs.ln_value),
            csv_f64(r.claim.rhs.ln_value),
            r.claim.holds.to_string(),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
