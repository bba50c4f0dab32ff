//! Shared inputs for the criterion benches.

use vertexlab_core::{LegTriple, Partition2D};

/// Leg triples exercised by the vertex benches, smallest first.
pub fn bench_legs() -> Vec<(&'static str, LegTriple)> {
    let p = |rows: &[u32]| Partition2D::new(rows.to_vec()).expect("valid partition");
    vec![
        ("1;;", LegTriple::new(p(&[1]), p(&[]), p(&[]))),
        ("1;1;", LegTriple::new(p(&[1]), p(&[1]), p(&[]))),
        ("1;1;1", LegTriple::new(p(&[1]), p(&[1]), p(&[1]))),
        ("2;1;1", LegTriple::new(p(&[2]), p(&[1]), p(&[1]))),
    ]
}
