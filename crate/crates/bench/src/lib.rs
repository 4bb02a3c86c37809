//! Shared inputs for the criterion benchmarks.

use pdgenus::census::theta;
use pdgenus::{RotationSystem, SignedRotation};

/// Bouquets timed by the engine benches, with a short name each.
pub fn bouquets() -> Vec<(&'static str, SignedRotation)> {
    let parse = |s: &str| s.parse::<SignedRotation>().expect("fixture parses");
    vec![
        ("theta8", theta(8)),
        ("theta12", theta(12)),
        (
            "nine_edge",
            parse("(h, a, b, c, d, c, a, d, b, h, i, e, f, -e, g, -f, g, -i)"),
        ),
        (
            "eight_edge_join",
            parse("(a, c, h, c, b, h, b, a, d, g, e, f, e, d, g, f)"),
        ),
    ]
}

pub fn systems() -> Vec<(&'static str, RotationSystem)> {
    bouquets()
        .into_iter()
        .map(|(name, r)| (name, r.to_rotation_system()))
        .collect()
}
