//! Integrates the Riccati equation `k' = K + k²` for a few curvature profiles
//! with `K <= -1` and checks that `k_g` stays below `h(u) = -tanh u`.
//!
//!     cargo run --example riccati_comparison

use slopebound::comparison::{verify_comparison, CurvatureProfile, DEFAULT_TOLERANCE};

fn main() -> slopebound::Result<()> {
    let profiles = vec![
        CurvatureProfile::constant(-1.0, 5.0)?,
        CurvatureProfile::constant(-4.0, 3.0)?,
        CurvatureProfile::from_fn("quartic", 3.0, |u| -1.0 - u.powi(4))?,
        CurvatureProfile::perturbed(7, 5.0)?,
        CurvatureProfile::from_samples(vec![0.0, 1.0, 2.0, 4.0], vec![-1.0, -3.0, -1.5, -2.0])?,
    ];

    println!(
        "{:<14} {:>5} {:>12} {:>12} {:>12} {:>9}",
        "profile", "U", "k_g(U)", "h(U)", "margin", "certified"
    );
    for p in &profiles {
        let step = p.extent() / 1e5;
        let r = verify_comparison(p, step, DEFAULT_TOLERANCE)?;
        println!(
            "{:<14} {:>5} {:>12.8} {:>12.8} {:>12.3e} {:>9}",
            r.profile,
            r.extent,
            r.kg.last().unwrap(),
            r.h.last().unwrap(),
            r.margin,
            r.certified
        );
        println!(
            "    J' >= ∫J: {}   riccati/jacobi gap {:.2e}",
            r.jacobi_inequality_holds, r.riccati_jacobi_gap
        );
    }

    // Above -1 the hypothesis fails and nothing is integrated.
    let bad = CurvatureProfile::from_samples(vec![0.0, 0.5, 1.0], vec![-1.5, -0.5, -2.0])?;
    match verify_comparison(&bad, 1e-4, DEFAULT_TOLERANCE) {
        Err(e) => println!("\nrejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
