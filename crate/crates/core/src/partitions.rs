//! Two-dimensional partitions, leg triples and the minimal monomial
//! configuration they determine.
//!
//! Leg `i` is a cylinder along the `x_i` axis: leg 1 constrains `(w2, w3)`,
//! leg 2 constrains `(w1, w3)`, leg 3 constrains `(w1, w2)`. Cells are
//! 0-indexed in English notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A 2D partition stored by weakly decreasing positive row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition2D {
    rows: Vec<u32>,
}

impl Partition2D {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::Domain(format!(
                "partition rows must be positive: {rows:?}"
            )));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "partition rows must be weakly decreasing: {rows:?}"
            )));
        }
        Ok(Partition2D { rows })
    }

    pub fn empty() -> Self {
        Partition2D::default()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().map(|&r| u64::from(r)).sum()
    }

    /// Whether `(a, b)` is a cell: `a < #rows` and `b < rows[a]`.
    pub fn contains(&self, a: i64, b: i64) -> bool {
        if a < 0 || b < 0 {
            return false;
        }
        match self.rows.get(a as usize) {
            Some(&r) => b < i64::from(r),
            None => false,
        }
    }

    /// Conjugate partition: cell `(a, b)` becomes `(b, a)`.
    pub fn transpose(&self) -> Self {
        let width = self.rows.first().copied().unwrap_or(0);
        let rows = (0..width)
            .map(|j| self.rows.iter().filter(|&&r| r > j).count() as u32)
            .collect();
        Partition2D { rows }
    }

    /// Largest of the number of rows and the first row length.
    pub fn extent(&self) -> u32 {
        (self.rows.len() as u32).max(self.rows.first().copied().unwrap_or(0))
    }
}

impl fmt::Display for Partition2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition2D {
    type Err = Error;

    /// Comma-separated row lengths; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition2D::empty());
        }
        let rows = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition row {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition2D::new(rows)
    }
}

/// Three outgoing partitions, any of which may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LegTriple {
    legs: [Partition2D; 3],
}

impl LegTriple {
    pub fn new(mu1: Partition2D, mu2: Partition2D, mu3: Partition2D) -> Self {
        LegTriple {
            legs: [mu1, mu2, mu3],
        }
    }

    pub fn empty() -> Self {
        LegTriple::default()
    }

    pub fn legs(&self) -> &[Partition2D; 3] {
        &self.legs
    }

    /// Leg `i` for `i` in `0..3`.
    pub fn leg(&self, i: usize) -> &Partition2D {
        &self.legs[i]
    }

    pub fn total_size(&self) -> u64 {
        self.legs.iter().map(Partition2D::size).sum()
    }

    pub fn max_extent(&self) -> u32 {
        self.legs.iter().map(Partition2D::extent).max().unwrap_or(0)
    }

    pub fn num_nonempty(&self) -> usize {
        self.legs.iter().filter(|p| !p.is_empty()).count()
    }

    /// `(mu1, mu2, mu3) -> (mu3, mu1', mu2')` with `'` the conjugate,
    /// matching the coordinate map `(w1, w2, w3) -> (w3, w1, w2)` given by
    /// [`rotate_point`]. Legs 1 and 2 read their cells in the opposite
    /// order after the move, hence the conjugates.
    pub fn rotated(&self) -> Self {
        let [a, b, c] = self.legs.clone();
        LegTriple::new(c, a.transpose(), b.transpose())
    }

    /// Whether leg `i` (0-based) contains `w` in its cylinder, ignoring
    /// the sign of `w_i`.
    pub fn in_leg(&self, i: usize, w: [i64; 3]) -> bool {
        let (a, b) = match i {
            0 => (w[1], w[2]),
            1 => (w[0], w[2]),
            _ => (w[0], w[1]),
        };
        self.legs[i].contains(a, b)
    }

    /// Number of legs whose cylinder contains `w`, for `w >= 0`.
    pub fn multiplicity(&self, w: [i64; 3]) -> usize {
        if w.iter().any(|&x| x < 0) {
            return 0;
        }
        (0..3).filter(|&i| self.in_leg(i, w)).count()
    }
}

/// Coordinate rotation paired with [`LegTriple::rotated`].
pub fn rotate_point(w: [i64; 3]) -> [i64; 3] {
    [w[2], w[0], w[1]]
}

impl fmt::Display for LegTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.legs[0], self.legs[1], self.legs[2])
    }
}

impl FromStr for LegTriple {
    type Err = Error;

    /// `"1;1;1"`, `"2,1;;"`: legs separated by semicolons, rows by commas.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected three ';'-separated legs, got {s:?}"
            )));
        }
        Ok(LegTriple::new(
            parts[0].parse()?,
            parts[1].parse()?,
            parts[2].parse()?,
        ))
    }
}

/// Membership in the minimal configuration: `w >= 0` and some leg
/// cylinder contains `w`.
pub fn minimal_membership(legs: &LegTriple, w: [i64; 3]) -> bool {
    legs.multiplicity(w) >= 1
}

fn boxes_in_cube(legs: &LegTriple, n: i64) -> i64 {
    let mut count = 0;
    for a in 0..=n {
        for b in 0..=n {
            for c in 0..=n {
                if minimal_membership(legs, [a, b, c]) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn volume_at(legs: &LegTriple, n: i64) -> i64 {
    boxes_in_cube(legs, n) - (n + 1) * legs.total_size() as i64
}

/// Cutoff used by [`renormalized_volume`].
pub fn volume_cutoff(legs: &LegTriple) -> i64 {
    1 + legs.total_size() as i64 + i64::from(legs.max_extent())
}

/// Box count of the minimal configuration in `[0, N]^3` minus
/// `(N+1)` times the total leg size, checked stable at `N` and `N + 1`.
pub fn renormalized_volume(legs: &LegTriple) -> Result<i64> {
    let n = volume_cutoff(legs);
    let v = volume_at(legs, n);
    let v1 = volume_at(legs, n + 1);
    if v != v1 {
        return Err(Error::Consistency(format!(
            "renormalized volume of {legs} changes from {v} to {v1} between cutoffs {n} and {}",
            n + 1
        )));
    }
    Ok(v)
}

/// Same quantity at an explicit cutoff, for stability checks.
pub fn renormalized_volume_at(legs: &LegTriple, n: i64) -> i64 {
    volume_at(legs, n)
}
