//! Separated point sets in the hyperbolic plane, used to stress-test the
//! lattice-count bound `A(R + L)/A(L)`.
//!
//! Points live in the Poincaré disk. [`greedy_pack`] draws candidates
//! uniformly with respect to hyperbolic area in the disk `D(R)` about the
//! origin and keeps every candidate at distance at least `L` from all points
//! kept so far. The random stream is ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`; a candidate consumes two `f64` draws, the
//! radial variate `t` first and then the angle variate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::hypmath::{disk_area, AreaConvention, DOMAIN_GUARD};
use crate::{Error, Result};

/// Largest disk radius accepted by the experiments. Beyond it points crowd
/// the ideal boundary and disk coordinates lose precision.
pub const MAX_RADIUS: f64 = 10.0;

/// Slack allowed when re-checking separation after the fact.
pub const SEPARATION_SLACK: f64 = 1e-9;

/// A point of the Poincaré disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub const ORIGIN: HPoint = HPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        let norm = x.hypot(y);
        if !(norm < 1.0 - DOMAIN_GUARD) {
            return Err(Error::domain(
                "|p|",
                norm,
                "|p| < 1 - 1e-12 (inside the Poincaré disk)",
            ));
        }
        Ok(Self { x, y })
    }

    /// The point at hyperbolic distance `r` from the origin in direction
    /// `theta`.
    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        let rho = (0.5 * r).tanh();
        Self::new(rho * theta.cos(), rho * theta.sin())
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Hyperboloid-model coordinates `(cosh r, sinh r cos θ, sinh r sin θ)`.
    #[cfg(test)]
    fn hyperboloid(&self) -> [f64; 3] {
        let s = 1.0 - self.norm_sq();
        [
            (1.0 + self.norm_sq()) / s,
            2.0 * self.x / s,
            2.0 * self.y / s,
        ]
    }
}

impl Serialize for HPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(serializer)
    }
}

/// Hyperbolic distance in the Poincaré disk,
/// `arccosh(1 + 2|p−q|² / ((1−|p|²)(1−|q|²)))`, evaluated as
/// `2 arcsinh √(|p−q|² / ((1−|p|²)(1−|q|²)))` to keep small distances
/// accurate.
pub fn hyp_distance(p: &HPoint, q: &HPoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let s = (dx * dx + dy * dy) / ((1.0 - p.norm_sq()) * (1.0 - q.norm_sq()));
    2.0 * s.sqrt().asinh()
}

/// Hyperbolic radius (distance to the origin) of a uniform-area sample in
/// `D(radius)` from the uniform variate `t ∈ [0, 1)`:
/// `r = arccosh(1 + t (cosh R − 1))`.
pub fn area_uniform_radius(t: f64, radius: f64) -> f64 {
    // 1 + t (cosh R - 1) = 1 + 2 t sinh^2(R/2); arccosh(1 + 2s^2) = 2 arcsinh(s)
    2.0 * (t.sqrt() * (0.5 * radius).sinh()).asinh()
}

/// Draws one candidate: a point uniform in hyperbolic area within `D(radius)`.
pub fn sample_in_disk(rng: &mut impl Rng, radius: f64) -> (f64, f64) {
    let t: f64 = rng.random();
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    (area_uniform_radius(t, radius), theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuditFlags {
    /// More points than the (informational) `A(R+L)/A(L)` bound.
    pub paper_bound_exceeded: bool,
    /// More points than `floor(A_true(R+L/2)/A_true(L/2))`. Must never happen.
    pub rigorous_bound_exceeded: bool,
}

/// One greedy packing and the bounds it is compared against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackingExperiment {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "L")]
    pub separation: f64,
    pub seed: u64,
    pub attempts: u64,
    pub points: Vec<HPoint>,
    pub count: usize,
    /// `A(R+L)/A(L)` under [`AreaConvention::PaperVariant`].
    pub bound_paper: f64,
    /// `A_true(R+L/2)/A_true(L/2)`.
    pub bound_rigorous: f64,
    pub flags: AuditFlags,
}

fn check_params(radius: f64, separation: f64) -> Result<()> {
    if !(radius > 0.0 && radius <= MAX_RADIUS) {
        return Err(Error::domain("R", radius, "0 < R <= 10"));
    }
    if !(separation > 0.0) || !separation.is_finite() {
        return Err(Error::domain("L", separation, "L > 0"));
    }
    Ok(())
}

fn paper_bound(radius: f64, separation: f64, convention: AreaConvention) -> Result<f64> {
    Ok(disk_area(radius + separation, convention)? / disk_area(separation, convention)?)
}

fn rigorous_bound(radius: f64, separation: f64) -> Result<f64> {
    let half = 0.5 * separation;
    Ok(disk_area(radius + half, AreaConvention::TrueArea)?
        / disk_area(half, AreaConvention::TrueArea)?)
}

/// Greedy `L`-separated packing of `D(R)`: candidates are drawn until
/// `attempts` consecutive candidates have been rejected.
pub fn greedy_pack(
    radius: f64,
    separation: f64,
    seed: u64,
    attempts: u64,
) -> Result<PackingExperiment> {
    check_params(radius, separation)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cosh_sep = separation.cosh();
    let mut points = Vec::new();
    let mut hyper: Vec<[f64; 3]> = Vec::new();
    let mut rejected = 0u64;
    while rejected < attempts {
        let (r, theta) = sample_in_disk(&mut rng, radius);
        let p = HPoint::from_polar(r, theta)?;
        let c = [r.cosh(), r.sinh() * theta.cos(), r.sinh() * theta.sin()];
        // cosh d(p, q) is the Minkowski form -<p, q>
        let clear = hyper
            .iter()
            .all(|q| c[0] * q[0] - c[1] * q[1] - c[2] * q[2] >= cosh_sep);
        if clear {
            points.push(p);
            hyper.push(c);
            rejected = 0;
        } else {
            rejected += 1;
        }
    }
    let count = points.len();
    let bound_paper = paper_bound(radius, separation, AreaConvention::PaperVariant)?;
    let bound_rigorous = rigorous_bound(radius, separation)?;
    Ok(PackingExperiment {
        radius,
        separation,
        seed,
        attempts,
        points,
        count,
        bound_paper,
        bound_rigorous,
        flags: AuditFlags {
            paper_bound_exceeded: count as f64 > bound_paper,
            rigorous_bound_exceeded: count as f64 > bound_rigorous.floor(),
        },
    })
}

impl PackingExperiment {
    /// Smallest pairwise distance and largest distance from the origin,
    /// recomputed in the disk model. `O(count²)`.
    pub fn geometry(&self) -> (f64, f64) {
        let mut min_sep = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                min_sep = min_sep.min(hyp_distance(p, q));
            }
        }
        let max_r = self
            .points
            .iter()
            .map(|p| hyp_distance(p, &HPoint::ORIGIN))
            .fold(0.0, f64::max);
        (min_sep, max_r)
    }

    /// Whether the stored points are `L`-separated and inside `D(R)`, up to
    /// [`SEPARATION_SLACK`].
    pub fn is_valid(&self) -> bool {
        let (min_sep, max_r) = self.geometry();
        min_sep >= self.separation - SEPARATION_SLACK && max_r <= self.radius + SEPARATION_SLACK
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditRecord {
    pub count: usize,
    pub convention: AreaConvention,
    /// `A(R+L)/A(L)` under `convention`.
    pub bound_paper: f64,
    pub bound_rigorous: f64,
    pub bound_rigorous_floor: u64,
    pub flags: AuditFlags,
}

/// Compares a packing against both counting bounds.
pub fn audit_bound(exp: &PackingExperiment, convention: AreaConvention) -> Result<AuditRecord> {
    check_params(exp.radius, exp.separation)?;
    let bound_paper = paper_bound(exp.radius, exp.separation, convention)?;
    let bound_rigorous = rigorous_bound(exp.radius, exp.separation)?;
    let floor = bound_rigorous.floor() as u64;
    Ok(AuditRecord {
        count: exp.count,
        convention,
        bound_paper,
        bound_rigorous,
        bound_rigorous_floor: floor,
        flags: AuditFlags {
            paper_bound_exceeded: exp.count as f64 > bound_paper,
            rigorous_bound_exceeded: exp.count as u64 > floor,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub count: usize,
    pub paper_bound_exceeded: bool,
    pub rigorous_bound_exceeded: bool,
}

/// Aggregate of a packing campaign over many seeds at fixed `(R, L)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "L")]
    pub separation: f64,
    pub attempts: u64,
    pub convention: AreaConvention,
    pub seeds: Vec<SeedOutcome>,
    pub max_count: usize,
    pub min_count: usize,
    pub bound_paper: f64,
    pub bound_rigorous: f64,
    pub bound_rigorous_floor: u64,
    pub paper_violations: usize,
    pub rigorous_violations: usize,
    pub invalid_experiments: usize,
}

/// Runs [`greedy_pack`] for every seed (in parallel), audits each packing
/// and re-verifies its geometry. Experiments are returned in seed order.
pub fn packing_campaign(
    radius: f64,
    separation: f64,
    seeds: &[u64],
    attempts: u64,
    convention: AreaConvention,
) -> Result<(CampaignSummary, Vec<PackingExperiment>)> {
    check_params(radius, separation)?;
    let runs = seeds
        .par_iter()
        .map(|&seed| {
            let exp = greedy_pack(radius, separation, seed, attempts)?;
            let audit = audit_bound(&exp, convention)?;
            let valid = exp.is_valid();
            Ok((exp, audit, valid))
        })
        .collect::<Result<Vec<_>>>()?;

    let bound_paper = paper_bound(radius, separation, convention)?;
    let bound_rigorous = rigorous_bound(radius, separation)?;
    let outcomes: Vec<SeedOutcome> = runs
        .iter()
        .map(|(exp, audit, _)| SeedOutcome {
            seed: exp.seed,
            count: exp.count,
            paper_bound_exceeded: audit.flags.paper_bound_exceeded,
            rigorous_bound_exceeded: audit.flags.rigorous_bound_exceeded,
        })
        .collect();
    let summary = CampaignSummary {
        radius,
        separation,
        attempts,
        convention,
        max_count: outcomes.iter().map(|o| o.count).max().unwrap_or(0),
        min_count: outcomes.iter().map(|o| o.count).min().unwrap_or(0),
        paper_violations: outcomes.iter().filter(|o| o.paper_bound_exceeded).count(),
        rigorous_violations: outcomes
            .iter()
            .filter(|o| o.rigorous_bound_exceeded)
            .count(),
        invalid_experiments: runs.iter().filter(|(_, _, valid)| !valid).count(),
        seeds: outcomes,
        bound_paper,
        bound_rigorous,
        bound_rigorous_floor: bound_rigorous.floor() as u64,
    };
    Ok((summary, runs.into_iter().map(|(exp, _, _)| exp).collect()))
}
