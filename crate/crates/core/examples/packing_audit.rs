//! Greedy `L`-separated packings of hyperbolic disks, audited against the
//! counting bounds.
//!
//!     cargo run --release --example packing_audit

use slopebound::hypmath::AreaConvention;
use slopebound::lattice::{greedy_pack, packing_campaign};

fn main() -> slopebound::Result<()> {
    let seeds: Vec<u64> = (1..=50).collect();
    println!(
        "{:>3} {:>5} {:>9} {:>12} {:>12} {:>7} {:>7}",
        "R", "L", "max", "A(R+L)/A(L)", "rigorous", "paper>", "rig>"
    );
    for r in [1.0, 2.0, 3.0, 4.0, 5.0] {
        let (s, _) = packing_campaign(r, 1.75, &seeds, 2000, AreaConvention::PaperVariant)?;
        println!(
            "{r:>3} {:>5} {:>9} {:>12.3} {:>12} {:>7} {:>7}",
            s.separation,
            s.max_count,
            s.bound_paper,
            s.bound_rigorous_floor,
            s.paper_violations,
            s.rigorous_violations
        );
    }

    let exp = greedy_pack(3.0, 1.75, 42, 2000)?;
    let (min_sep, max_r) = exp.geometry();
    println!(
        "\nseed 42: {} points, closest pair {min_sep:.4}, farthest from origin {max_r:.4}",
        exp.count
    );
    Ok(())
}
