//! Boundary-slope bounds for essential surfaces in hyperbolic 3-manifolds with
//! totally geodesic boundary, together with the numerical machinery that
//! checks the inequalities those bounds rest on.
//!
//! The crate is organised by subsystem:
//!
//! * [`hypmath`]: closed-form hyperbolic primitives (the comparison function
//!   `h(u) = -tanh u`, disk areas, collar half-width and area, the
//!   boundary-genus collar width).
//! * [`comparison`]: fixed-step RK4 integration of the Riccati equation
//!   `k' = K + k^2` and the Jacobi equation `J'' = -K J` for curvature
//!   profiles `K <= -1`, with certificates that `k_g <= h`.
//! * [`bounds`]: the slope-length bound, the lattice and collar counting
//!   bounds and the combined slope-count bound, including multi-component
//!   boundaries.
//! * [`lattice`]: seeded greedy packings in the Poincaré disk, audited against
//!   the counting bounds.
//! * [`spectra`]: length-spectrum enumeration for Fuchsian groups and
//!   collar-lemma reports on the short geodesics found.
//! * [`cli`]: the `slopebound` command line (also usable as a library).
//!
//! Runnable tours of each subsystem live in `examples/`.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod comparison;
mod error;
pub mod hypmath;
pub mod lattice;
pub mod output;
pub mod spectra;

pub use error::{Error, Result};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
