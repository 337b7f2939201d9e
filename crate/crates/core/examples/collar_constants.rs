//! Collar half-width and collar area of short geodesics, and the collar width
//! a totally geodesic boundary gets from its genus.
//!
//!     cargo run --example collar_constants

use slopebound::hypmath::{
    basmajian_width, collar_area, collar_halfwidth, comparison_h, SHORT_GEODESIC_CUTOFF,
};

fn main() -> slopebound::Result<()> {
    let l = SHORT_GEODESIC_CUTOFF;
    println!("cutoff L = {l}");
    println!("S(L)            = {:.6}", collar_halfwidth(l)?);
    println!("L / sinh(L/2)   = {:.6}", l / (l / 2.0).sinh());
    println!("collar area(L)  = {:.6}", collar_area(l)?);
    println!();

    println!("{:>6} {:>10} {:>10} {:>10}", "d", "S(d)", "d/2", "area");
    for d in [0.1, 0.5, 1.0, 1.5, 1.75, 3.0, 5.0] {
        println!(
            "{d:>6.2} {:>10.6} {:>10.6} {:>10.6}",
            collar_halfwidth(d)?,
            d / 2.0,
            collar_area(d)?
        );
    }
    println!();

    println!("{:>4} {:>12} {:>12}", "g∂", "U*", "h(U*)");
    for g in 2..=8 {
        let u = basmajian_width(g)?;
        println!("{g:>4} {u:>12.8} {:>12.8}", comparison_h(u)?);
    }
    Ok(())
}
