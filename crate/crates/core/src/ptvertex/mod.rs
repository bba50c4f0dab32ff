//! Stable-pairs vertex via finite-field point counts of torus-fixed
//! submodules of the leg module modulo the structure sheaf.
//!
//! A submodule is encoded by the larger module `F ⊇ O`: one subspace per
//! weight, containing the all-ones vector wherever `O` is nonzero, closed
//! under the coordinate maps `x_j`.

pub mod fp;
pub mod interp;
pub mod region;

use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::dtvertex::{dt_vertex_normalized, signed_count_series, SearchLimits};
use crate::error::{Error, Result};
use crate::partitions::{renormalized_volume, LegTriple};
use crate::qseries::{int, HalfLaurentSeries, Poly, Rational};

pub use fp::{all_subspaces, Subspace, Vec3};
pub use region::{apply_x, build_region, legs_present, SupportRegion, WeightNode};

enum Target {
    Node(usize),
    Fixed(Subspace),
}

struct Counter<'a> {
    p: u64,
    l: usize,
    candidates: Vec<Vec<(Subspace, usize)>>,
    targets: Vec<[(Target, u8); 3]>,
    capacity: Vec<usize>,
    max_states: u64,
    visited: &'a AtomicU64,
}

impl Counter<'_> {
    fn new<'a>(
        region: &SupportRegion,
        l: usize,
        p: u64,
        max_states: u64,
        visited: &'a AtomicU64,
    ) -> Counter<'a> {
        let n = region.nodes.len();
        let mut candidates = Vec::with_capacity(n);
        let mut targets = Vec::with_capacity(n);
        for node in &region.nodes {
            let ones = node.ones();
            let base = usize::from(node.has_o);
            let cands = all_subspaces(node.legs_present, p)
                .into_iter()
                .filter(|s| !node.has_o || s.contains(ones, p))
                .map(|s| {
                    let q = s.dim() - base;
                    (s, q)
                })
                .filter(|(_, q)| *q <= l)
                .collect();
            candidates.push(cands);
            let t = [0, 1, 2].map(|j| {
                let mut w = node.w;
                w[j] += 1;
                let target = WeightNode::at(&region.legs, w);
                let kind = match region.index_of(w) {
                    Some(i) => Target::Node(i),
                    None => Target::Fixed(target.forced(p)),
                };
                (kind, target.legs_present)
            });
            targets.push(t);
        }
        let mut capacity = vec![0; n + 1];
        for i in (0..n).rev() {
            capacity[i] = capacity[i + 1] + region.nodes[i].d();
        }
        Counter {
            p,
            l,
            candidates,
            targets,
            capacity,
            max_states,
            visited,
        }
    }

    fn closed(&self, idx: usize, s: &Subspace, chosen: &[usize]) -> bool {
        self.targets[idx].iter().all(|(target, mask)| {
            let fixed;
            let f = match target {
                Target::Node(t) => &self.candidates[*t][chosen[*t]].0,
                Target::Fixed(sub) => {
                    fixed = sub;
                    fixed
                }
            };
            s.rows()
                .iter()
                .all(|&r| f.contains(apply_x(r, *mask), self.p))
        })
    }

    fn count(
        &self,
        idx: usize,
        used: usize,
        chosen: &mut Vec<usize>,
        pending: &mut u64,
    ) -> Result<u64> {
        if idx == self.candidates.len() {
            return Ok(u64::from(used == self.l));
        }
        if used + self.capacity[idx] < self.l {
            return Ok(0);
        }
        *pending += 1;
        if *pending >= 4096 {
            self.flush(pending)?;
        }
        let mut total = 0;
        for (ci, (s, q)) in self.candidates[idx].iter().enumerate() {
            if used + q > self.l || !self.closed(idx, s, chosen) {
                continue;
            }
            chosen.push(ci);
            total += self.count(idx + 1, used + q, chosen, pending)?;
            chosen.pop();
        }
        Ok(total)
    }

    fn flush(&self, pending: &mut u64) -> Result<()> {
        let total = self.visited.fetch_add(*pending, Ordering::Relaxed) + *pending;
        *pending = 0;
        if total > self.max_states {
            return Err(Error::ResourceLimit(format!(
                "submodule enumeration exceeded {} states",
                self.max_states
            )));
        }
        Ok(())
    }
}

/// Number of closed assignments over `F_p` with total quotient dimension `l`.
/// The region must have depth at least `l`.
pub fn count_submodules_fq(
    region: &SupportRegion,
    l: usize,
    p: u64,
    limits: SearchLimits,
) -> Result<u64> {
    if l > limits.max_len {
        return Err(Error::ResourceLimit(format!(
            "length {l} exceeds configured limit {}",
            limits.max_len
        )));
    }
    if region.depth < l {
        return Err(Error::Domain(format!(
            "region depth {} is below length {l}",
            region.depth
        )));
    }
    let visited = AtomicU64::new(0);
    let counter = Counter::new(region, l, p, limits.max_states, &visited);
    let mut pending = 0;
    let n = counter.count(
        0,
        0,
        &mut Vec::with_capacity(region.nodes.len()),
        &mut pending,
    )?;
    counter.flush(&mut pending)?;
    Ok(n)
}

/// Point counts and the interpolated count polynomial for one length.
#[derive(Clone, Debug, PartialEq)]
pub struct PtLengthData {
    pub length: usize,
    /// `(p, N_p)` for each sampled prime; the last one is the check sample.
    pub samples: Vec<(u64, u64)>,
    /// `P(t)`, ascending coefficients.
    pub poly: Poly,
    /// `P` in the basis `(t + 1)^f`.
    pub plus_one_coeffs: Poly,
    pub euler: u64,
}

impl PtLengthData {
    /// All coefficients in the `(t + 1)`-power basis are non-negative integers.
    pub fn is_sum_of_line_products(&self) -> bool {
        self.plus_one_coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PtEulerVector {
    pub lengths: Vec<PtLengthData>,
}

impl PtEulerVector {
    pub fn euler(&self) -> Vec<u64> {
        self.lengths.iter().map(|d| d.euler).collect()
    }
}

/// Euler characteristics of the fixed loci for `0 <= l <= lmax`.
///
/// For each length the count is sampled at the first `D + 2` primes, where
/// `D` is the number of two-dimensional quotient weights. The first `D + 1`
/// samples determine a polynomial of degree at most `D`; the last one must
/// agree with it.
pub fn pt_euler_counts(
    legs: &LegTriple,
    lmax: usize,
    limits: SearchLimits,
) -> Result<PtEulerVector> {
    if lmax > limits.max_len {
        return Err(Error::ResourceLimit(format!(
            "lmax {lmax} exceeds configured limit {}",
            limits.max_len
        )));
    }
    let region = build_region(legs, lmax);
    let planes = region.num_planes();
    let primes = interp::first_primes(planes + 2);
    let tasks: Vec<(usize, u64)> = (0..=lmax)
        .flat_map(|l| primes.iter().map(move |&p| (l, p)))
        .collect();
    let counts = tasks
        .par_iter()
        .map(|&(l, p)| count_submodules_fq(&region, l, p, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut lengths = Vec::with_capacity(lmax + 1);
    for (l, chunk) in counts.chunks(primes.len()).enumerate() {
        let samples: Vec<(u64, u64)> = primes.iter().copied().zip(chunk.iter().copied()).collect();
        lengths.push(interpolate_length(legs, l, samples)?);
    }
    Ok(PtEulerVector { lengths })
}

fn interpolate_length(
    legs: &LegTriple,
    l: usize,
    samples: Vec<(u64, u64)>,
) -> Result<PtLengthData> {
    let pts: Vec<(Rational, Rational)> = samples
        .iter()
        .map(|&(p, n)| (int(p as i64), Rational::from_integer(n.into())))
        .collect();
    let (fit, check) = pts.split_at(pts.len() - 1);
    let poly = interp::lagrange(fit);
    let (cp, cn) = &check[0];
    let predicted = interp::eval(&poly, cp);
    if &predicted != cn {
        return Err(Error::Consistency(format!(
            "non-polynomial count for legs {legs} at length {l}: samples {samples:?} predict {predicted} at p = {cp}"
        )));
    }
    let e = interp::eval(&poly, &int(1));
    if !e.is_integer() || e.is_negative() {
        return Err(Error::Consistency(format!(
            "Euler characteristic {e} for legs {legs} at length {l} is not a non-negative integer"
        )));
    }
    let euler = u64::try_from(e.to_integer())
        .map_err(|_| Error::ResourceLimit(format!("Euler characteristic {e} overflows u64")))?;
    let plus_one_coeffs = interp::plus_one_basis(&poly);
    Ok(PtLengthData {
        length: l,
        samples,
        poly,
        plus_one_coeffs,
        euler,
    })
}

/// `(-q)^|mu| Σ_l e_l (-q)^l`.
pub fn pt_vertex(legs: &LegTriple, lmax: usize, limits: SearchLimits) -> Result<HalfLaurentSeries> {
    let vol = renormalized_volume(legs)?;
    let e = pt_euler_counts(legs, lmax, limits)?;
    Ok(signed_count_series(&e.euler(), vol))
}

/// Coefficientwise comparison of the normalized DT vertex and the PT vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexComparison {
    pub lmax: usize,
    pub volume: i64,
    pub dt: HalfLaurentSeries,
    pub pt: HalfLaurentSeries,
    /// `(exponent, dt - pt)` for each differing coefficient.
    pub differences: Vec<(i64, Rational)>,
}

impl VertexComparison {
    pub fn equal(&self) -> bool {
        self.differences.is_empty()
    }
}

/// Compares both vertices through `(-q)^(|mu| + lmax)`.
pub fn vertex_compare(
    legs: &LegTriple,
    lmax: usize,
    limits: SearchLimits,
) -> Result<VertexComparison> {
    let volume = renormalized_volume(legs)?;
    let dt = dt_vertex_normalized(legs, lmax, limits)?;
    let pt = pt_vertex(legs, lmax, limits)?;
    let differences = dt
        .differences(&pt)?
        .into_iter()
        .filter(|(k, c)| k % 2 == 0 && !c.is_zero())
        .map(|(k, c)| (k / 2, c))
        .collect();
    Ok(VertexComparison {
        lmax,
        volume,
        dt,
        pt,
        differences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legs(s: &str) -> LegTriple {
        s.parse().unwrap()
    }

    fn count(s: &str, l: usize, p: u64) -> u64 {
        count_submodules_fq(&build_region(&legs(s), l), l, p, SearchLimits::default()).unwrap()
    }

    #[test]
    fn hand_counts() {
        assert_eq!(count("1;1;1", 1, 2), 3);
        assert_eq!(count("1;1;1", 1, 5), 6);
        for p in [2, 3, 5, 7] {
            assert_eq!(count("1;1;1", 2, p), 4);
        }
        assert_eq!(count("2;1;1", 0, 3), 1);
        assert_eq!(count(";;", 0, 2), 1);
        assert_eq!(count(";;", 2, 2), 0);
    }

    #[test]
    fn euler_examples() {
        let lim = SearchLimits::default();
        assert_eq!(
            pt_euler_counts(&legs("1;1;1"), 5, lim).unwrap().euler(),
            vec![1, 2, 4, 6, 9, 13]
        );
        assert_eq!(
            pt_euler_counts(&legs("1;;"), 3, lim).unwrap().euler(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            pt_euler_counts(&LegTriple::empty(), 3, lim)
                .unwrap()
                .euler(),
            vec![1, 0, 0, 0]
        );
    }

    #[test]
    fn vertex_text_examples() {
        let lim = SearchLimits::default();
        let v = pt_vertex(&legs("1;1;1"), 3, lim).unwrap().shift(2);
        assert_eq!(
            v.int_coeffs(0, 3).unwrap(),
            vec![int(1), int(-2), int(4), int(-6)]
        );
        assert!(pt_vertex(&LegTriple::empty(), 4, lim)
            .unwrap()
            .agrees_with(&HalfLaurentSeries::one(4))
            .unwrap());
    }

    #[test]
    fn small_comparisons() {
        let lim = SearchLimits::default();
        assert!(vertex_compare(&legs("1;1;1"), 3, lim).unwrap().equal());
        assert!(vertex_compare(&legs("1;;"), 5, lim).unwrap().equal());
        assert!(vertex_compare(&legs("1;1;"), 4, lim).unwrap().equal());
    }
}
