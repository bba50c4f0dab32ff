//! Series graded by effective curve classes: `Z(q, v) = c + Σ_β Z_β(q) v^β`.
//!
//! A class missing from the map has coefficient exactly zero; a class that is
//! present carries its own truncation window.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{int, Rational};
use super::laurent::HalfLaurentSeries;
use crate::error::{Error, Result};

/// A vector in the free class lattice with non-negative components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVector(Vec<u32>);

impl ClassVector {
    pub fn new(components: Vec<u32>) -> Self {
        ClassVector(components)
    }

    pub fn zero(rank: usize) -> Self {
        ClassVector(vec![0; rank])
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// gcd of the nonzero components (0 for the zero class).
    pub fn divisibility(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &c| g.gcd(&c))
    }

    pub fn scaled(&self, k: u32) -> Self {
        ClassVector(self.0.iter().map(|&c| c * k).collect())
    }

    /// `self / r` when every component is divisible by `r`.
    pub fn divided(&self, r: u32) -> Option<Self> {
        if r == 0 || self.0.iter().any(|c| c % r != 0) {
            None
        } else {
            Some(ClassVector(self.0.iter().map(|&c| c / r).collect()))
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.rank() != other.rank() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ClassVector)
    }

    pub fn add(&self, other: &Self) -> Self {
        ClassVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Rank and degree weights of the class lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLattice {
    weights: Vec<u32>,
}

impl ClassLattice {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::Domain(format!(
                "degree weights must be positive, got {weights:?}"
            )));
        }
        Ok(ClassLattice { weights })
    }

    /// All-ones weights.
    pub fn uniform(rank: usize) -> Self {
        ClassLattice {
            weights: vec![1; rank.max(1)],
        }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self, beta: &ClassVector) -> u64 {
        beta.0
            .iter()
            .zip(&self.weights)
            .map(|(&b, &w)| u64::from(b) * u64::from(w))
            .sum()
    }

    pub fn check(&self, beta: &ClassVector) -> Result<()> {
        if beta.rank() != self.rank() {
            return Err(Error::Domain(format!(
                "class {beta} has rank {}, lattice rank is {}",
                beta.rank(),
                self.rank()
            )));
        }
        if beta.is_zero() {
            return Err(Error::Domain(
                "the zero class is not an effective curve class".into(),
            ));
        }
        Ok(())
    }

    /// Nonzero effective classes of degree at most `cutoff`, ordered by
    /// degree and then lexicographically.
    pub fn effective_classes(&self, cutoff: u64) -> Vec<ClassVector> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.rank()];
        self.fill(0, cutoff, &mut cur, &mut out);
        out.retain(|c| !c.is_zero());
        out.sort_by_key(|c| (self.degree(c), c.clone()));
        out
    }

    fn fill(&self, idx: usize, budget: u64, cur: &mut Vec<u32>, out: &mut Vec<ClassVector>) {
        if idx == self.rank() {
            out.push(ClassVector(cur.clone()));
            return;
        }
        let w = u64::from(self.weights[idx]);
        let mut k = 0u64;
        while k * w <= budget {
            cur[idx] = k as u32;
            self.fill(idx + 1, budget - k * w, cur, out);
            k += 1;
        }
        cur[idx] = 0;
    }
}

/// `constant + Σ_β terms[β] v^β`, truncated at class degree `cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiClassSeries {
    lattice: ClassLattice,
    cutoff: u64,
    constant: Rational,
    terms: BTreeMap<ClassVector, HalfLaurentSeries>,
}

impl MultiClassSeries {
    pub fn new(lattice: ClassLattice, cutoff: u64, constant: Rational) -> Self {
        MultiClassSeries {
            lattice,
            cutoff,
            constant,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero(lattice: ClassLattice, cutoff: u64) -> Self {
        Self::new(lattice, cutoff, Rational::zero())
    }

    pub fn one(lattice: ClassLattice, cutoff: u64) -> Self {
        Self::new(lattice, cutoff, Rational::one())
    }

    pub fn lattice(&self) -> &ClassLattice {
        &self.lattice
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn set_constant(&mut self, c: Rational) {
        self.constant = c;
    }

    /// Sets the coefficient of `v^beta`. Classes above the cutoff are rejected.
    pub fn insert(&mut self, beta: ClassVector, series: HalfLaurentSeries) -> Result<()> {
        self.lattice.check(&beta)?;
        let d = self.lattice.degree(&beta);
        if d > self.cutoff {
            return Err(Error::Domain(format!(
                "class {beta} has degree {d} above cutoff {}",
                self.cutoff
            )));
        }
        self.terms.insert(beta, series);
        Ok(())
    }

    pub fn get(&self, beta: &ClassVector) -> Option<&HalfLaurentSeries> {
        self.terms.get(beta)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClassVector, &HalfLaurentSeries)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self, beta: &ClassVector) -> u64 {
        self.lattice.degree(beta)
    }

    /// Present classes sorted by degree.
    pub fn classes_by_degree(&self) -> Vec<ClassVector> {
        let mut v: Vec<_> = self.terms.keys().cloned().collect();
        v.sort_by_key(|c| (self.degree(c), c.clone()));
        v
    }

    /// Keeps only the classes satisfying `keep`.
    pub fn filter_classes(&self, keep: impl Fn(&ClassVector) -> bool) -> Self {
        let mut out = self.clone();
        out.terms.retain(|b, _| keep(b));
        out
    }

    /// Drops classes whose known coefficients all vanish.
    pub fn without_vanishing_classes(&self) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, s| !s.is_zero_on_window());
        out
    }

    /// Truncates every class to `q^hi`; fails where a window is shorter.
    pub fn truncate(&self, hi: i64) -> Result<Self> {
        let mut out = Self::new(self.lattice.clone(), self.cutoff, self.constant.clone());
        for (b, s) in &self.terms {
            out.terms.insert(
                b.clone(),
                s.truncate(hi).map_err(|e| match e {
                    Error::InsufficientWindow(m) => {
                        Error::InsufficientWindow(format!("class {b}: {m}"))
                    }
                    other => other,
                })?,
            );
        }
        Ok(out)
    }

    /// Smallest window end over the present classes.
    pub fn min_hi_exp(&self) -> Option<i64> {
        self.terms.values().map(|s| s.hi_exp()).min()
    }

    /// Largest pole order per unit of degree, rounded up; bounds how much a
    /// graded product can shrink windows.
    pub fn pole_density(&self) -> i64 {
        self.terms
            .iter()
            .filter_map(|(b, s)| {
                let v = s.valuation_key()?;
                let d = self.degree(b) as i64;
                (v < 0).then(|| Integer::div_ceil(&(-v), &(2 * d)))
            })
            .max()
            .unwrap_or(0)
    }

    /// Truncated product of two graded series.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(Error::Domain("class lattices differ".into()));
        }
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = Self::new(
            self.lattice.clone(),
            cutoff,
            &self.constant * &other.constant,
        );
        let mut acc: BTreeMap<ClassVector, HalfLaurentSeries> = BTreeMap::new();
        let mut push = |b: ClassVector, s: HalfLaurentSeries| {
            let merged = match acc.remove(&b) {
                Some(prev) => &prev + &s,
                None => s,
            };
            acc.insert(b, merged);
        };
        for (b, s) in &self.terms {
            if self.degree(b) <= cutoff {
                push(b.clone(), s.scale(&other.constant));
            }
        }
        for (b, s) in &other.terms {
            if self.degree(b) <= cutoff {
                push(b.clone(), s.scale(&self.constant));
            }
        }
        for (ba, sa) in &self.terms {
            for (bb, sb) in &other.terms {
                let b = ba.add(bb);
                if self.degree(&b) <= cutoff {
                    push(b, sa * sb);
                }
            }
        }
        out.terms = acc;
        Ok(out)
    }

    /// `exp(F)` by the degree recursion `deg(β) Z_β = Σ deg(γ) F_γ Z_{β-γ}`.
    pub fn graded_exp(&self) -> Result<Self> {
        if !self.constant.is_zero() {
            return Err(Error::Domain(format!(
                "exp needs a vanishing class-0 part, got {}",
                self.constant
            )));
        }
        let mut z: BTreeMap<ClassVector, HalfLaurentSeries> = BTreeMap::new();
        for beta in self.lattice.effective_classes(self.cutoff) {
            let mut sum: Option<HalfLaurentSeries> = None;
            for (gamma, f) in &self.terms {
                let Some(rest) = beta.checked_sub(gamma) else {
                    continue;
                };
                let term = if rest.is_zero() {
                    f.clone()
                } else if let Some(zr) = z.get(&rest) {
                    f * zr
                } else {
                    continue;
                };
                let term = term.scale(&int(self.degree(gamma) as i64));
                sum = Some(match sum {
                    Some(s) => &s + &term,
                    None => term,
                });
            }
            if let Some(s) = sum {
                let d = int(self.degree(&beta) as i64);
                z.insert(beta, s.scale(&(Rational::one() / d)));
            }
        }
        let mut out = Self::one(self.lattice.clone(), self.cutoff);
        out.terms = z;
        Ok(out)
    }

    /// `log(Z)` by `F_β = Z_β - (1/deg β) Σ_{γ,δ≠0} deg(γ) F_γ Z_δ`.
    pub fn graded_log(&self) -> Result<Self> {
        if !self.constant.is_one() {
            return Err(Error::Domain(format!(
                "log needs class-0 part equal to 1, got {}",
                self.constant
            )));
        }
        let mut f: BTreeMap<ClassVector, HalfLaurentSeries> = BTreeMap::new();
        for beta in self.lattice.effective_classes(self.cutoff) {
            let mut sum: Option<HalfLaurentSeries> = None;
            for (delta, zd) in &self.terms {
                let Some(gamma) = beta.checked_sub(delta) else {
                    continue;
                };
                if gamma.is_zero() {
                    continue;
                }
                let Some(fg) = f.get(&gamma) else { continue };
                let term = (fg * zd).scale(&int(self.degree(&gamma) as i64));
                sum = Some(match sum {
                    Some(s) => &s + &term,
                    None => term,
                });
            }
            let d = int(self.degree(&beta) as i64);
            let value = match (self.terms.get(&beta), sum) {
                (Some(zb), Some(s)) => Some(zb - &s.scale(&(Rational::one() / d))),
                (Some(zb), None) => Some(zb.clone()),
                (None, Some(s)) => Some(-&s.scale(&(Rational::one() / d))),
                (None, None) => None,
            };
            if let Some(v) = value {
                f.insert(beta, v);
            }
        }
        let mut out = Self::zero(self.lattice.clone(), self.cutoff);
        out.terms = f;
        Ok(out)
    }

    /// Class-by-class comparison through the smaller window end of each
    /// class; an absent class is zero.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.first_disagreement(other)?.is_none())
    }

    /// First class (by degree) whose coefficients differ.
    pub fn first_disagreement(&self, other: &Self) -> Result<Option<ClassVector>> {
        if self.constant != other.constant {
            return Ok(Some(ClassVector::zero(self.lattice.rank())));
        }
        let mut classes: Vec<_> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        classes.sort_by_key(|c| (self.degree(c), c.clone()));
        classes.dedup();
        for b in classes {
            let same = match (self.terms.get(&b), other.terms.get(&b)) {
                (Some(a), Some(c)) => {
                    let hi = a.hi_key().min(c.hi_key());
                    a.truncate_key(hi)?.agrees_with(&c.truncate_key(hi)?)?
                }
                (Some(a), None) | (None, Some(a)) => a.is_zero_on_window(),
                (None, None) => true,
            };
            if !same {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// `(class, exponent key)` pairs whose coefficient is not an integer.
    pub fn non_integral_terms(&self) -> Vec<(ClassVector, i64, Rational)> {
        let mut out = Vec::new();
        for (b, s) in &self.terms {
            for (k, c) in s.terms() {
                if !c.is_integer() {
                    out.push((b.clone(), k, c.clone()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::field::rat;

    fn lat1() -> ClassLattice {
        ClassLattice::uniform(1)
    }

    #[test]
    fn divisibility_and_degrees() {
        let b = ClassVector::new(vec![4, 6]);
        assert_eq!(b.divisibility(), 2);
        assert_eq!(b.divided(2), Some(ClassVector::new(vec![2, 3])));
        assert_eq!(b.divided(4), None);
        let lat = ClassLattice::new(vec![1, 2]).unwrap();
        assert_eq!(lat.degree(&b), 16);
        assert!(ClassLattice::new(vec![1, 0]).is_err());
        let classes = lat.effective_classes(2);
        assert_eq!(
            classes,
            vec![
                ClassVector::new(vec![1, 0]),
                ClassVector::new(vec![0, 1]),
                ClassVector::new(vec![2, 0])
            ]
        );
    }

    #[test]
    fn single_class_exponential() {
        let beta = ClassVector::new(vec![1]);
        let mut f = MultiClassSeries::zero(lat1(), 3);
        f.insert(beta.clone(), HalfLaurentSeries::monomial(0, rat(3, 1), 5))
            .unwrap();
        let z = f.graded_exp().unwrap();
        assert_eq!(z.get(&beta).unwrap().coeff(0), Some(rat(3, 1)));
        assert_eq!(z.get(&beta.scaled(2)).unwrap().coeff(0), Some(rat(9, 2)));
        assert_eq!(z.get(&beta.scaled(3)).unwrap().coeff(0), Some(rat(9, 2)));
    }

    #[test]
    fn log_below_interaction_cutoff() {
        let beta = ClassVector::new(vec![1]);
        let s = HalfLaurentSeries::from_int_coeffs(-1, &[rat(2, 1), rat(1, 3)], 4).unwrap();
        let mut z = MultiClassSeries::one(lat1(), 1);
        z.insert(beta.clone(), s.clone()).unwrap();
        let f = z.graded_log().unwrap();
        assert!(f.get(&beta).unwrap().agrees_with(&s).unwrap());
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn normalization_errors() {
        let z = MultiClassSeries::new(lat1(), 2, rat(2, 1));
        assert!(matches!(z.graded_log(), Err(Error::Domain(_))));
        assert!(matches!(z.graded_exp(), Err(Error::Domain(_))));
    }
}
