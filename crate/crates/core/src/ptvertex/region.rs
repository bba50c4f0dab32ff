//! Weight-space model of the leg module modulo the structure sheaf.

use crate::partitions::LegTriple;

use super::fp::{Subspace, Vec3};

/// Data attached to a torus weight `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightNode {
    pub w: [i64; 3],
    /// Bit `i` set when leg `i` contributes a basis vector at `w`.
    pub legs_present: u8,
    pub has_o: bool,
}

impl WeightNode {
    pub fn at(legs: &LegTriple, w: [i64; 3]) -> Self {
        let legs_present = legs_present(legs, w);
        let nonneg = w.iter().all(|&x| x >= 0);
        WeightNode {
            w,
            legs_present,
            has_o: nonneg && legs_present != 0,
        }
    }

    /// Ambient dimension `k(w)`.
    pub fn k(&self) -> usize {
        self.legs_present.count_ones() as usize
    }

    /// Quotient dimension `k(w) - [has O]`.
    pub fn d(&self) -> usize {
        self.k() - usize::from(self.has_o)
    }

    pub fn coord_sum(&self) -> i64 {
        self.w.iter().sum()
    }

    /// The all-ones vector on the present legs.
    pub fn ones(&self) -> Vec3 {
        let mut v = [0; 3];
        for (i, x) in v.iter_mut().enumerate() {
            *x = u64::from(self.legs_present >> i & 1);
        }
        v
    }

    /// The subspace forced on a weight outside the region.
    pub fn forced(&self, p: u64) -> Subspace {
        if self.has_o {
            Subspace::span(&[self.ones()], p)
        } else {
            Subspace::zero()
        }
    }
}

/// Legs whose (extended) cylinder contains `w`. Leg `i` allows any
/// integer `w_i`; the other two coordinates must form a cell.
pub fn legs_present(legs: &LegTriple, w: [i64; 3]) -> u8 {
    let mut mask = 0;
    for i in 0..3 {
        if legs.in_leg(i, w) {
            mask |= 1 << i;
        }
    }
    mask
}

/// `x_j` on the three-leg basis: keep `b_i` iff leg `i` is present at the
/// target weight.
pub fn apply_x(v: Vec3, target_mask: u8) -> Vec3 {
    let mut out = v;
    for (i, x) in out.iter_mut().enumerate() {
        if target_mask >> i & 1 == 0 {
            *x = 0;
        }
    }
    out
}

/// Weights where a submodule of length at most `l` can differ from the
/// structure sheaf, sorted by decreasing coordinate sum.
#[derive(Clone, Debug)]
pub struct SupportRegion {
    pub legs: LegTriple,
    pub depth: usize,
    pub nodes: Vec<WeightNode>,
}

impl SupportRegion {
    pub fn index_of(&self, w: [i64; 3]) -> Option<usize> {
        self.nodes.iter().position(|n| n.w == w)
    }

    /// Number of nodes with a two-dimensional quotient.
    pub fn num_planes(&self) -> usize {
        self.nodes.iter().filter(|n| n.d() == 2).count()
    }

    pub fn positive_part(&self) -> impl Iterator<Item = &WeightNode> {
        self.nodes.iter().filter(|n| n.w.iter().all(|&x| x >= 0))
    }
}

/// All `w >= 0` lying in at least two cylinders, plus each leg's negative
/// ray over its cells down to depth `l`.
pub fn build_region(legs: &LegTriple, l: usize) -> SupportRegion {
    let mut nodes = Vec::new();
    let e = i64::from(legs.max_extent());
    for a in 0..e {
        for b in 0..e {
            for c in 0..e {
                let node = WeightNode::at(legs, [a, b, c]);
                if node.k() >= 2 {
                    nodes.push(node);
                }
            }
        }
    }
    for i in 0..3 {
        let leg = legs.leg(i);
        for (a, &len) in leg.rows().iter().enumerate() {
            for b in 0..i64::from(len) {
                for m in 1..=l as i64 {
                    let mut w = [0; 3];
                    w[i] = -m;
                    let (j, k) = match i {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    w[j] = a as i64;
                    w[k] = b;
                    nodes.push(WeightNode::at(legs, w));
                }
            }
        }
    }
    nodes.sort_by(|x, y| y.coord_sum().cmp(&x.coord_sum()).then(x.w.cmp(&y.w)));
    SupportRegion {
        legs: legs.clone(),
        depth: l,
        nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legs(s: &str) -> LegTriple {
        s.parse().unwrap()
    }

    #[test]
    fn three_unit_legs() {
        let r = build_region(&legs("1;1;1"), 2);
        let pos: Vec<_> = r.positive_part().collect();
        assert_eq!(pos.len(), 1);
        assert_eq!(pos[0].w, [0, 0, 0]);
        assert_eq!(pos[0].d(), 2);
        assert_eq!(r.nodes.len(), 7);
        assert!(r.nodes.iter().skip(1).all(|n| n.d() == 1 && n.k() == 1));
        assert!(r.index_of([-2, 0, 0]).is_some());
        assert_eq!(r.num_planes(), 1);
    }

    #[test]
    fn single_leg_and_empty() {
        let r = build_region(&legs("1;;"), 3);
        assert_eq!(r.positive_part().count(), 0);
        let ws: Vec<_> = r.nodes.iter().map(|n| n.w).collect();
        assert_eq!(ws, vec![[-1, 0, 0], [-2, 0, 0], [-3, 0, 0]]);
        assert!(build_region(&LegTriple::empty(), 4).nodes.is_empty());
    }

    #[test]
    fn node_invariants() {
        for s in ["2;1;1", "2,1;1;", "1,1;2;1", "2;2;2"] {
            let r = build_region(&legs(s), 3);
            for n in &r.nodes {
                assert!(n.d() >= 1 && n.d() <= 2, "{s} {:?}", n.w);
                if n.w.iter().any(|&x| x < 0) {
                    assert!(n.k() <= 1);
                }
            }
            for pair in r.nodes.windows(2) {
                assert!(pair[0].coord_sum() >= pair[1].coord_sum());
            }
        }
    }
}
