use std::fmt;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

type CurvatureFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Shape {
    Constant(f64),
    Function(CurvatureFn),
    /// Piecewise-linear interpolation of `(u, K)` samples; `u` strictly
    /// increasing and starting at 0.
    Samples {
        u: Vec<f64>,
        k: Vec<f64>,
    },
}

/// A Gaussian-curvature profile `K(u)` on `[0, U]` along a geodesic
/// orthogonal to the boundary.
///
/// The profile is only usable for integration if `K(u) <= -1` on the
/// evaluation grid; [`CurvatureProfile::check_hypothesis`] enforces this and
/// is called by every integrator before it takes a step.
#[derive(Clone)]
pub struct CurvatureProfile {
    shape: Shape,
    extent: f64,
    label: String,
}

impl fmt::Debug for CurvatureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurvatureProfile")
            .field("label", &self.label)
            .field("extent", &self.extent)
            .finish_non_exhaustive()
    }
}

fn check_extent(extent: f64) -> Result<()> {
    if extent.is_finite() && extent > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("U", extent, "U > 0"))
    }
}

impl CurvatureProfile {
    pub fn constant(k: f64, extent: f64) -> Result<Self> {
        check_extent(extent)?;
        if !k.is_finite() {
            return Err(Error::domain("K", k, "finite"));
        }
        Ok(Self {
            shape: Shape::Constant(k),
            extent,
            label: format!("constant:{k}"),
        })
    }

    pub fn from_fn(
        label: impl Into<String>,
        extent: f64,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        check_extent(extent)?;
        Ok(Self {
            shape: Shape::Function(Arc::new(f)),
            extent,
            label: label.into(),
        })
    }

    /// Piecewise-linear profile through the given samples. The extent is the
    /// last sample position.
    pub fn from_samples(u: Vec<f64>, k: Vec<f64>) -> Result<Self> {
        if u.len() != k.len() {
            return Err(Error::Config(format!(
                "{} positions but {} curvature values",
                u.len(),
                k.len()
            )));
        }
        if u.len() < 2 {
            return Err(Error::Config(
                "a sampled profile needs at least two samples".into(),
            ));
        }
        if u[0] != 0.0 {
            return Err(Error::Config(format!(
                "samples must start at u = 0, found {}",
                u[0]
            )));
        }
        if let Some(w) = u.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::Config(format!(
                "sample positions must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if let Some((i, _)) = u
            .iter()
            .zip(&k)
            .enumerate()
            .find(|(_, (a, b))| !a.is_finite() || !b.is_finite())
        {
            return Err(Error::Config(format!("non-finite sample at row {i}")));
        }
        let extent = *u.last().expect("len >= 2");
        Ok(Self {
            shape: Shape::Samples { u, k },
            extent,
            label: "samples".into(),
        })
    }

    /// Parses the two-column `u K` text format: whitespace separated, one
    /// sample per line, `#` starts a comment.
    pub fn parse_samples(text: &str) -> Result<Self> {
        let mut u = Vec::new();
        let mut k = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Config(format!("line {}: {s:?}: {e}", lineno + 1)))
            };
            match cols.as_slice() {
                [a, b] => {
                    u.push(parse(a)?);
                    k.push(parse(b)?);
                }
                _ => {
                    return Err(Error::Config(format!(
                        "line {}: expected two columns (u K), found {}",
                        lineno + 1,
                        cols.len()
                    )))
                }
            }
        }
        Self::from_samples(u, k)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut profile = Self::parse_samples(&text).map_err(|e| match e {
            Error::Config(message) => Error::Parse {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })?;
        profile.label = path.display().to_string();
        Ok(profile)
    }

    /// A smooth random profile `K(u) = −1 − Σ a_j (1 + sin(ω_j u + φ_j))`
    /// with three modes, `a_j ∈ [0, 1)`, `ω_j ∈ [0.5, 4)`. The perturbation is
    /// nonnegative term by term, so `K <= −1` holds exactly in floating point.
    pub fn perturbed(seed: u64, extent: f64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let modes: Vec<(f64, f64, f64)> = (0..3)
            .map(|_| {
                let a = rng.random::<f64>();
                let w = rng.random_range(0.5..4.0);
                let phi = rng.random_range(0.0..std::f64::consts::TAU);
                (a, w, phi)
            })
            .collect();
        let mut p = Self::from_fn(format!("perturbed:{seed}"), extent, move |u| {
            let bump: f64 = modes
                .iter()
                .map(|&(a, w, phi)| a * (1.0 + (w * u + phi).sin()))
                .sum();
            -1.0 - bump
        })?;
        p.label = format!("perturbed:{seed}");
        Ok(p)
    }

    /// Restricts (or, for closed forms, sets) the integration interval.
    pub fn with_extent(mut self, extent: f64) -> Result<Self> {
        check_extent(extent)?;
        if let Shape::Samples { u, .. } = &self.shape {
            let last = *u.last().expect("validated");
            if extent > last {
                return Err(Error::Config(format!(
                    "U = {extent} exceeds the last sample position {last}"
                )));
            }
        }
        self.extent = extent;
        Ok(self)
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, u: f64) -> f64 {
        match &self.shape {
            Shape::Constant(k) => *k,
            Shape::Function(f) => f(u),
            Shape::Samples { u: us, k } => {
                let idx = us.partition_point(|&x| x <= u);
                if idx == 0 {
                    return k[0];
                }
                if idx >= us.len() {
                    return *k.last().expect("validated");
                }
                let (u0, u1) = (us[idx - 1], us[idx]);
                let t = (u - u0) / (u1 - u0);
                k[idx - 1] + t * (k[idx] - k[idx - 1])
            }
        }
    }

    /// Checks `K <= -1` at every point an RK4 grid of `steps` steps of size
    /// `h` will evaluate (nodes and midpoints). Sampled profiles are first
    /// checked at their samples, then at sample midpoints, so the reported
    /// position is a sample whenever a sample is at fault.
    pub fn check_hypothesis(&self, steps: usize, h: f64) -> Result<()> {
        let check = |u: f64, k: f64| {
            if k > -1.0 || k.is_nan() {
                Err(Error::CurvatureAboveMinusOne { u, k })
            } else {
                Ok(())
            }
        };
        if let Shape::Samples { u, k } = &self.shape {
            for (&ui, &ki) in u.iter().zip(k) {
                if ui <= self.extent {
                    check(ui, ki)?;
                }
            }
            for w in u.windows(2) {
                let m = 0.5 * (w[0] + w[1]);
                if m <= self.extent {
                    check(m, self.eval(m))?;
                }
            }
        }
        for i in 0..=2 * steps {
            let u = 0.5 * i as f64 * h;
            check(u, self.eval(u))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_profile_interpolates_linearly() {
        let p =
            CurvatureProfile::from_samples(vec![0.0, 1.0, 3.0], vec![-1.0, -3.0, -2.0]).unwrap();
        assert_eq!(p.extent(), 3.0);
        assert_eq!(p.eval(0.5), -2.0);
        assert_eq!(p.eval(2.0), -2.5);
        assert_eq!(p.eval(3.0), -2.0);
    }

    #[test]
    fn parse_tsv_with_comments() {
        let text = "# u K\n0\t-1\n0.5 -2 # inline\n\n1.0\t-1.5\n";
        let p = CurvatureProfile::parse_samples(text).unwrap();
        assert_eq!(p.extent(), 1.0);
        assert_eq!(p.eval(0.25), -1.5);
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(CurvatureProfile::parse_samples("0 -1 3\n1 -1\n").is_err());
        assert!(CurvatureProfile::parse_samples("0 -1\n").is_err());
        assert!(CurvatureProfile::parse_samples("0.1 -1\n1 -1\n").is_err());
        assert!(CurvatureProfile::parse_samples("0 -1\n1 -1\n1 -2\n").is_err());
        assert!(CurvatureProfile::parse_samples("0 -1\n1 abc\n").is_err());
    }

    #[test]
    fn hypothesis_violation_names_the_sample() {
        let p = CurvatureProfile::parse_samples("0 -1\n0.5 -0.5\n1 -1\n").unwrap();
        match p.check_hypothesis(100, 0.01) {
            Err(Error::CurvatureAboveMinusOne { u, k }) => {
                assert_eq!(u, 0.5);
                assert_eq!(k, -0.5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hypothesis_checked_between_grid_nodes() {
        // K rises above -1 only near u = 0.505, i.e. at a midpoint of the
        // h = 0.01 grid.
        let p = CurvatureProfile::from_fn("spike", 1.0, |u| {
            if (u - 0.505).abs() < 1e-9 {
                -0.9
            } else {
                -1.0
            }
        })
        .unwrap();
        assert!(p.check_hypothesis(100, 0.01).is_err());
    }

    #[test]
    fn perturbed_profiles_satisfy_hypothesis() {
        for seed in 0..20 {
            let p = CurvatureProfile::perturbed(seed, 5.0).unwrap();
            p.check_hypothesis(5000, 1e-3).unwrap();
            assert_eq!(
                p.eval(1.3).to_bits(),
                CurvatureProfile::perturbed(seed, 5.0)
                    .unwrap()
                    .eval(1.3)
                    .to_bits()
            );
        }
    }

    #[test]
    fn with_extent_cannot_exceed_samples() {
        let p = CurvatureProfile::from_samples(vec![0.0, 1.0], vec![-1.0, -1.0]).unwrap();
        assert!(p.clone().with_extent(2.0).is_err());
        assert_eq!(p.with_extent(0.5).unwrap().extent(), 0.5);
    }
}
