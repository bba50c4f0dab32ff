//! Donaldson-Thomas vertex: 3D partitions with prescribed legs counted by
//! the number of boxes added to the minimal configuration.

use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{minimal_membership, renormalized_volume, LegTriple};
use crate::qseries::{binomial, int, HalfLaurentSeries, Rational};

pub type Box3 = [i64; 3];

/// Default cap on the number of added boxes.
pub const DEFAULT_MAX_LEN: usize = 10;
/// Default cap on the number of configurations visited.
pub const DEFAULT_MAX_STATES: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_len: usize,
    pub max_states: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_len: DEFAULT_MAX_LEN,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// `counts[l]` is the number of configurations with `l` added boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtCountVector {
    pub counts: Vec<u64>,
}

struct Search<'a> {
    legs: &'a LegTriple,
    lmax: usize,
    max_states: u64,
    visited: &'a AtomicU64,
}

impl Search<'_> {
    fn present(&self, added: &[Box3], w: Box3) -> bool {
        minimal_membership(self.legs, w) || added.contains(&w)
    }

    fn addable(&self, added: &[Box3], w: Box3) -> bool {
        if self.present(added, w) {
            return false;
        }
        (0..3).all(|j| {
            let mut p = w;
            p[j] -= 1;
            p[j] < 0 || self.present(added, p)
        })
    }

    fn dfs(
        &self,
        cands: &[Box3],
        added: &mut Vec<Box3>,
        counts: &mut [u64],
        pending: &mut u64,
    ) -> Result<()> {
        for i in 0..cands.len() {
            self.branch(cands, i, added, counts, pending)?;
        }
        Ok(())
    }

    /// Adds `cands[i]`, counts the result and recurses on the boxes that
    /// come after it.
    fn branch(
        &self,
        cands: &[Box3],
        i: usize,
        added: &mut Vec<Box3>,
        counts: &mut [u64],
        pending: &mut u64,
    ) -> Result<()> {
        let c = cands[i];
        added.push(c);
        let depth = added.len();
        counts[depth] += 1;
        *pending += 1;
        if *pending >= 4096 {
            self.flush(pending)?;
        }
        if depth < self.lmax {
            let mut next: Vec<Box3> = cands[i + 1..].to_vec();
            for j in 0..3 {
                let mut w = c;
                w[j] += 1;
                if self.addable(added, w) {
                    next.push(w);
                }
            }
            next.sort_unstable();
            self.dfs(&next, added, counts, pending)?;
        }
        added.pop();
        Ok(())
    }

    fn flush(&self, pending: &mut u64) -> Result<()> {
        let total = self.visited.fetch_add(*pending, Ordering::Relaxed) + *pending;
        *pending = 0;
        if total > self.max_states {
            return Err(Error::ResourceLimit(format!(
                "DT enumeration exceeded {} states",
                self.max_states
            )));
        }
        Ok(())
    }
}

/// Boxes addable to the minimal configuration itself, in lexicographic order.
pub fn initial_addable(legs: &LegTriple) -> Vec<Box3> {
    let e = i64::from(legs.max_extent()) + 1;
    let search = Search {
        legs,
        lmax: 0,
        max_states: 0,
        visited: &AtomicU64::new(0),
    };
    let mut out = Vec::new();
    for a in 0..=e {
        for b in 0..=e {
            for c in 0..=e {
                if search.addable(&[], [a, b, c]) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Counts order ideals containing the minimal configuration by number of
/// added boxes, for `0 <= l <= lmax`.
///
/// Boxes are added in strictly increasing lexicographic order. Every
/// predecessor of a box is lexicographically smaller, so each finite
/// ideal arises from exactly one such sequence.
pub fn dt_counts(legs: &LegTriple, lmax: usize, limits: SearchLimits) -> Result<DtCountVector> {
    if lmax > limits.max_len {
        return Err(Error::ResourceLimit(format!(
            "lmax {lmax} exceeds configured limit {}",
            limits.max_len
        )));
    }
    let visited = AtomicU64::new(0);
    let search = Search {
        legs,
        lmax,
        max_states: limits.max_states,
        visited: &visited,
    };
    let init = initial_addable(legs);
    let mut counts = vec![0u64; lmax + 1];
    counts[0] = 1;
    if lmax == 0 {
        return Ok(DtCountVector { counts });
    }
    let branches = (0..init.len())
        .into_par_iter()
        .map(|i| {
            let mut local = vec![0u64; lmax + 1];
            let mut pending = 0;
            let mut added = Vec::with_capacity(lmax);
            search.branch(&init, i, &mut added, &mut local, &mut pending)?;
            search.flush(&mut pending)?;
            Ok(local)
        })
        .collect::<Result<Vec<_>>>()?;
    for local in branches {
        for (c, x) in counts.iter_mut().zip(local) {
            *c += x;
        }
    }
    Ok(DtCountVector { counts })
}

/// `∏_{n>=1} (1 - (-q)^n)^(-n)` through `q^order`.
pub fn macmahon(order: i64) -> HalfLaurentSeries {
    let len = order.max(0) as usize + 1;
    let mut acc = vec![Rational::zero(); len];
    acc[0] = int(1);
    for n in 1..len {
        // (1 - x)^(-n) = Σ_k binom(n+k-1, k) x^k with x = (-q)^n
        let mut factor = vec![Rational::zero(); len];
        for k in 0..=(len - 1) / n {
            let sign = if (n * k) % 2 == 0 { 1 } else { -1 };
            factor[n * k] = binomial(&int((n + k - 1) as i64), k as u64) * int(sign);
        }
        let mut next = vec![Rational::zero(); len];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.iter().enumerate().take(len - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    HalfLaurentSeries::from_int_coeffs(0, &acc, order.max(0)).expect("valid window")
}

/// `Σ_l counts[l] (-q)^(shift + l)`, known through `q^(shift + #counts - 1)`.
pub fn signed_count_series(counts: &[u64], shift: i64) -> HalfLaurentSeries {
    let hi = shift + counts.len() as i64 - 1;
    HalfLaurentSeries::from_int_terms(
        counts.iter().enumerate().map(|(l, &c)| {
            let e = shift + l as i64;
            let v = int(c as i64);
            (e, if e.rem_euclid(2) == 1 { -v } else { v })
        }),
        shift.min(hi),
        hi,
    )
    .expect("valid window")
}

/// `Z = (-q)^|mu| Σ_l N_l (-q)^l`.
pub fn dt_series(legs: &LegTriple, lmax: usize, limits: SearchLimits) -> Result<HalfLaurentSeries> {
    let vol = renormalized_volume(legs)?;
    let counts = dt_counts(legs, lmax, limits)?;
    Ok(signed_count_series(&counts.counts, vol))
}

/// `Z / Z_empty`, known through `q^(|mu| + lmax)`.
pub fn dt_vertex_normalized(
    legs: &LegTriple,
    lmax: usize,
    limits: SearchLimits,
) -> Result<HalfLaurentSeries> {
    let z = dt_series(legs, lmax, limits)?;
    let m = macmahon(lmax as i64);
    Ok(&z * &m.inverse()?)
}
