#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use vertexlab_core::gv::GVTable;
use vertexlab_core::qseries::{int, ClassLattice, ClassVector};
use vertexlab_core::{LegTriple, Partition2D};

pub fn legs(s: &str) -> LegTriple {
    s.parse().expect("valid leg triple")
}

/// Partitions of size at most `n`.
pub fn small_partitions(n: u32) -> Vec<Partition2D> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition2D>) {
        out.push(Partition2D::new(cur.clone()).unwrap());
        for r in (1..=rem.min(max)).rev() {
            cur.push(r);
            go(rem - r, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All leg triples whose legs have size at most `n`.
pub fn small_leg_triples(n: u32) -> Vec<LegTriple> {
    let ps = small_partitions(n);
    let mut out = Vec::new();
    for a in &ps {
        for b in &ps {
            for c in &ps {
                out.push(LegTriple::new(a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

pub fn arb_partition(n: u32) -> impl Strategy<Value = Partition2D> {
    let ps = small_partitions(n);
    (0..ps.len()).prop_map(move |i| ps[i].clone())
}

pub fn arb_legs(n: u32) -> impl Strategy<Value = LegTriple> {
    (arb_partition(n), arb_partition(n), arb_partition(n))
        .prop_map(|(a, b, c)| LegTriple::new(a, b, c))
}

/// Random integer table: rank 1 or 2, classes of degree at most
/// `max_degree`, genera in `genus`, entries in `[-bound, bound]`.
pub fn random_table<R: Rng>(
    rng: &mut R,
    max_degree: u64,
    genus: std::ops::RangeInclusive<i64>,
    bound: i64,
) -> GVTable {
    let rank = rng.gen_range(1..=2);
    let lattice = ClassLattice::uniform(rank);
    let classes = lattice.effective_classes(max_degree);
    let mut t = GVTable::new(lattice);
    let count = rng.gen_range(1..=4);
    for _ in 0..count {
        let b: ClassVector = classes[rng.gen_range(0..classes.len())].clone();
        let g = rng.gen_range(genus.clone());
        let mut n = 0;
        while n == 0 {
            n = rng.gen_range(-bound..=bound);
        }
        t.insert(g, b, int(n)).unwrap();
    }
    t
}
