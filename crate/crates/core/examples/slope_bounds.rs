//! The slope-length bound and the slope-count bound `n(g, g∂)` for connected
//! boundaries, under both disk-area conventions.
//!
//!     cargo run --example slope_bounds

use slopebound::bounds::{combined_bound, slope_length_bound, sweep, sweep_csv};
use slopebound::hypmath::{basmajian_width, comparison_h, AreaConvention};

fn main() -> slopebound::Result<()> {
    let u = basmajian_width(2)?;
    let h = comparison_h(u)?;
    println!("g∂ = 2: U* = {u:.12}, h(U*) = {h:.12}");
    for (g, n) in [(0, 3), (1, 1), (2, 1), (2, 4)] {
        let b = slope_length_bound(g, n, h)?;
        println!(
            "  g = {g}, n = {n}: d <= {:.6} <= {:.6}",
            b.detailed, b.simplified
        );
    }

    println!();
    for conv in [AreaConvention::PaperVariant, AreaConvention::TrueArea] {
        let r = combined_bound(0, 2, 1.75, conv)?;
        println!(
            "n(0, 2) with {conv}: R = {:.6}, lattice {:.6e}, collar {:.4}, total {}",
            r.radius.unwrap(),
            r.count_lattice.value,
            r.count_collar.value,
            r.total
                .floor
                .map_or("(beyond u64)".into(), |f| f.to_string())
        );
    }

    println!("\nln n(g, g∂) for larger boundaries:");
    for r in sweep(0..=3, 2..=10, 1.75, AreaConvention::PaperVariant)?
        .iter()
        .filter(|r| r.g_boundary % 4 == 2)
    {
        println!(
            "  g = {}, g∂ = {:>2}: ln n = {:.4}",
            r.g, r.g_boundary, r.total.ln_value
        );
    }

    println!(
        "\n{}",
        sweep_csv(
            &sweep(0..=1, 2..=3, 1.75, AreaConvention::PaperVariant)?,
            AreaConvention::PaperVariant
        )
    );
    Ok(())
}
