//! Fixtures shared by the benchmarks.

use muext_core::global::RingSpec;

/// `(label, ring)` for the worked examples.
pub fn example_rings() -> Vec<(&'static str, RingSpec)> {
    vec![
        ("z_third_p2", RingSpec::new(1, 2, vec![3]).expect("valid ring")),
        ("gaussian_half_p3", RingSpec::new(4, 3, vec![2]).expect("valid ring")),
        ("z_seventh_p2", RingSpec::new(1, 2, vec![7]).expect("valid ring")),
    ]
}
