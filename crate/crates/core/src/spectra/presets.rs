//! Shipped surface groups.

use super::{FuchsianGroup, Mat2};

/// The once-punctured torus `ℍ / Γ'` where `Γ'` is the commutator subgroup of
/// `SL(2, ℤ)`, freely generated by `[[1,1],[1,2]]` and `[[1,−1],[−1,2]]`.
/// Both generators have trace 3, which is also the systole's trace.
pub fn modular_torus() -> FuchsianGroup {
    FuchsianGroup::new(
        "modular-torus",
        1,
        vec![
            Mat2::new(1.0, 1.0, 1.0, 2.0),
            Mat2::new(1.0, -1.0, -1.0, 2.0),
        ],
    )
    .expect("preset is valid")
}

/// Generators of the genus-2 surface glued from the regular hyperbolic
/// octagon with interior angles `π/4`, opposite sides identified.
///
/// Construction: in the disk model the side pairing across the side whose
/// midpoint lies in direction `kπ/4` is the translation
/// `[[α, β e^{ikπ/4}], [β e^{−ikπ/4}, α]]` with `α = 1 + √2`, the hyperbolic
/// cosine of the inradius, and `β = √(2 + 2√2)`, so that `α² − β² = 1`.
/// Conjugating by the Cayley transform `z ↦ (z − i)/(z + i)` gives the real
/// matrices below, `k = 0..3`, stored to 15 significant digits. Every
/// generator has trace `2(1 + √2)`, translation length
/// `2 arccosh(1 + √2) ≈ 3.0571`, which is the systole.
pub fn octagon_genus2() -> FuchsianGroup {
    FuchsianGroup::new(
        "octagon-g2",
        2,
        vec![
            Mat2::new(4.61158178930872, 0.0, 0.0, 0.216845335437475),
            Mat2::new(
                3.96798753640313,
                -1.55377397403004,
                -1.55377397403004,
                0.860439588343058,
            ),
            Mat2::new(
                2.41421356237310,
                -2.19736822693562,
                -2.19736822693562,
                2.41421356237310,
            ),
            Mat2::new(
                0.860439588343058,
                -1.55377397403004,
                -1.55377397403004,
                3.96798753640313,
            ),
        ],
    )
    .expect("preset is valid")
}

/// Looks a preset up by its name.
pub fn preset(name: &str) -> Option<FuchsianGroup> {
    match name {
        "modular-torus" => Some(modular_torus()),
        "octagon-g2" => Some(octagon_genus2()),
        _ => None,
    }
}

pub const PRESET_NAMES: [&str; 2] = ["modular-torus", "octagon-g2"];
