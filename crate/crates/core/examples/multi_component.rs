//! Slope-count bounds for disconnected boundaries: higher-genus components
//! each contribute `n(g, g_i)`, tori contribute an external `N(g)`.
//!
//!     cargo run --example multi_component
//!     cargo run --example multi_component -- --claim-csv > data/closing_claim_sweep.csv

use slopebound::bounds::{claim_csv, closing_claim_sweep, multi_component_bound, BoundInput};
use slopebound::hypmath::AreaConvention;

fn main() -> slopebound::Result<()> {
    if std::env::args().any(|a| a == "--claim-csv") {
        print!(
            "{}",
            claim_csv(&closing_claim_sweep(
                5,
                5,
                5,
                1.75,
                AreaConvention::PaperVariant
            )?)
        );
        return Ok(());
    }

    let input = BoundInput {
        components: "t:2;g:2,3".parse()?,
        n_torus: Some(5),
        ..BoundInput::connected(1, 2)
    };
    let r = multi_component_bound(&input)?;
    println!("g = 1, boundary {}", r.components);
    for c in &r.per_component {
        println!(
            "  genus {}: U* = {:.6}, R = {:.4}, ln n = {:.4}",
            c.genus, c.u_star, c.lattice.radius, c.total.ln_value
        );
    }
    println!("  tori: {}", r.count_torus.value);
    println!("  ln total = {:.6}", r.total.ln_value);
    if let Some(claim) = r.closing_claim {
        println!(
            "  vs connected genus {}: ln {:.4} <= ln {:.4}: {}",
            claim.g_boundary_total, claim.lhs.ln_value, claim.rhs.ln_value, claim.holds
        );
    }

    // A genus-1 component has no collar formula; it must be listed as a torus.
    let err = multi_component_bound(&BoundInput::connected(0, 1)).unwrap_err();
    println!("\n{err}");

    let rows = closing_claim_sweep(5, 5, 5, 1.75, AreaConvention::PaperVariant)?;
    let failing = rows.iter().filter(|r| !r.claim.holds).count();
    println!(
        "\nclosing claim over {} layouts: {failing} fail",
        rows.len()
    );
    Ok(())
}
