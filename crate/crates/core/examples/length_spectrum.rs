//! Length spectra of the shipped surface groups and the collar report for
//! their short geodesics.
//!
//!     cargo run --release --example length_spectrum

use slopebound::spectra::{collar_report, enumerate_spectrum, presets, translation_length, Word};

fn main() -> slopebound::Result<()> {
    for (group, l_max, words) in [
        (presets::modular_torus(), 5.0, 8),
        (presets::octagon_genus2(), 6.0, 6),
    ] {
        let s = enumerate_spectrum(&group, l_max, words)?;
        println!(
            "{} (genus {}): {} cyclically reduced words up to length {words}",
            group.name, group.genus, s.words_examined
        );
        for e in &s.entries {
            println!(
                "  {:>12.9}  |tr| {:>10.6}  {:<8} x{:<4}{}",
                e.length,
                e.trace_abs,
                e.representative_word.to_string(),
                e.multiplicity,
                if e.primitive { "" } else { " (multiple)" }
            );
        }
        let c = collar_report(&s.entries, 1.75, group.genus)?;
        println!(
            "  lengths <= 1.75: {} (bound {}), flagged {}\n",
            c.count, c.bound_floor, c.flagged
        );
    }

    let octagon = presets::octagon_genus2();
    let w = Word(vec![1, 2, -1, -2]);
    let e = octagon.element(&w)?;
    println!("ℓ({w}) in octagon-g2 = {:.9}", translation_length(&e)?);
    Ok(())
}
