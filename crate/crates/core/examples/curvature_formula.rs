//! Geodesic curvature from the metric in orthogonal coordinates, compared
//! with the `-J'/J` shortcut for the level curves of a Jacobi field.
//!
//!     cargo run --example curvature_formula

use slopebound::comparison::{
    general_geodesic_curvature, integrate_jacobi, vcurve_geodesic_curvature, CurvatureProfile,
    Orientation,
};

fn main() -> slopebound::Result<()> {
    // du² + cosh²u dv²: the collar around a geodesic in the hyperbolic plane.
    let profile = CurvatureProfile::constant(-1.0, 2.0)?;
    let jac = integrate_jacobi(&profile, 1e-4)?;

    println!(
        "{:>5} {:>14} {:>14} {:>14}",
        "u", "-J'/J", "Liouville", "-tanh u"
    );
    for i in [0, 2500, 5000, 10_000, 20_000] {
        let u = jac.j.u(i);
        let shortcut = vcurve_geodesic_curvature(&jac.j, i, Orientation::Outer)?;
        // The level curve traversed with decreasing v, which orients it as
        // the boundary of {u' >= u}.
        let general = general_geodesic_curvature(
            |_u, _v| 1.0,
            |u, _v| u.cosh().powi(2),
            move |t| (u, -t),
            0.3,
        )?;
        println!(
            "{u:>5.2} {shortcut:>14.10} {general:>14.10} {:>14.10}",
            -u.tanh()
        );
    }

    let r = 2.0;
    let k =
        general_geodesic_curvature(|_, _| 1.0, |_, _| 1.0, |t| (r * t.cos(), r * t.sin()), 0.7)?;
    println!("\nEuclidean circle of radius {r}: k = {k:.8}");
    Ok(())
}
