//! Generic truncated Laurent series over an exact field.
//!
//! A value carries a window `[lo, hi]` of integer keys. The series is known
//! exactly through key `hi`: every coefficient below `lo` is zero, stored
//! keys inside the window are the nonzero coefficients, and everything above
//! `hi` is unknown. Every operation computes the largest window on which its
//! result is authoritative.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Truncated<C> {
    coeffs: BTreeMap<i64, C>,
    lo: i64,
    hi: i64,
}

impl<C: Field> Truncated<C> {
    /// Builds a series from `(key, coefficient)` pairs. Zero coefficients are
    /// dropped; keys must lie in `[lo, hi]`.
    pub fn from_terms<I>(terms: I, lo: i64, hi: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        if lo > hi {
            return Err(Error::Domain(format!("empty window [{lo}, {hi}]")));
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if k < lo || k > hi {
                return Err(Error::Domain(format!(
                    "key {k} outside window [{lo}, {hi}]"
                )));
            }
            if !c.is_zero() {
                let slot = coeffs.entry(k).or_insert_with(C::zero);
                *slot = slot.clone() + &c;
                if slot.is_zero() {
                    coeffs.remove(&k);
                }
            }
        }
        Ok(Truncated { coeffs, lo, hi })
    }

    /// Terms outside the window are silently discarded.
    pub(crate) fn from_terms_clipped<I>(terms: I, lo: i64, hi: i64) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        let lo = lo.min(hi);
        let coeffs = terms
            .into_iter()
            .filter(|(k, c)| *k >= lo && *k <= hi && !c.is_zero())
            .collect();
        Truncated { coeffs, lo, hi }
    }

    pub fn zero(lo: i64, hi: i64) -> Self {
        Truncated {
            coeffs: BTreeMap::new(),
            lo: lo.min(hi),
            hi,
        }
    }

    pub fn monomial_key(key: i64, c: C, hi: i64) -> Result<Self> {
        Self::from_terms([(key, c)], key.min(hi), hi)
    }

    pub fn lo_key(&self) -> i64 {
        self.lo
    }

    pub fn hi_key(&self) -> i64 {
        self.hi
    }

    /// Nonzero terms in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at `key`, or `None` when the key lies above the window.
    pub fn get_key(&self, key: i64) -> Option<C> {
        if key > self.hi {
            None
        } else {
            Some(self.coeffs.get(&key).cloned().unwrap_or_else(C::zero))
        }
    }

    /// Key of the first nonzero coefficient.
    pub fn valuation_key(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Lower bound on the valuation usable for window propagation: the
    /// first nonzero key, or `hi + 1` when the known part vanishes.
    fn effective_valuation(&self) -> i64 {
        self.valuation_key().unwrap_or(self.hi + 1)
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops knowledge above `hi`. Fails if `hi` exceeds the current window.
    pub fn truncate_key(&self, hi: i64) -> Result<Self> {
        if hi > self.hi {
            return Err(Error::InsufficientWindow(format!(
                "cannot extend window from {} to {hi}",
                self.hi
            )));
        }
        let lo = self.lo.min(hi);
        let coeffs = self
            .coeffs
            .range(..=hi)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        Ok(Truncated { coeffs, lo, hi })
    }

    /// Multiplies by `x^shift` (exact, window moves with it).
    pub fn shift_key(&self, shift: i64) -> Self {
        Truncated {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k + shift, c.clone()))
                .collect(),
            lo: self.lo + shift,
            hi: self.hi + shift,
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Truncated::zero(self.lo, self.hi);
        }
        Truncated {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, c.clone() * s))
                .collect(),
            lo: self.lo,
            hi: self.hi,
        }
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.scale(&C::from_rational(s.clone()))
    }

    /// Maps coefficients through `f`, keeping the window.
    pub fn map_coeffs<D: Field>(&self, f: impl Fn(i64, &C) -> D) -> Truncated<D> {
        Truncated::from_terms_clipped(
            self.coeffs.iter().map(|(k, c)| (*k, f(*k, c))),
            self.lo,
            self.hi,
        )
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let hi = self.hi.min(other.hi);
        let lo = self.lo.min(other.lo).min(hi);
        let mut coeffs: BTreeMap<i64, C> = self
            .coeffs
            .range(..=hi)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        for (k, c) in other.coeffs.range(..=hi) {
            let c = if negate_other { -c.clone() } else { c.clone() };
            match coeffs.get_mut(k) {
                Some(slot) => {
                    *slot = slot.clone() + &c;
                    if slot.is_zero() {
                        coeffs.remove(k);
                    }
                }
                None => {
                    coeffs.insert(*k, c);
                }
            }
        }
        Truncated { coeffs, lo, hi }
    }

    /// Truncated product. The result window ends at
    /// `min(hi(a) + val(b), val(a) + hi(b))`.
    pub fn mul_series(&self, other: &Self) -> Self {
        let va = self.effective_valuation();
        let vb = other.effective_valuation();
        let hi = (self.hi + vb).min(va + other.hi);
        let lo = (self.lo + other.lo).min(hi);
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in other.coeffs.range(..=hi - ka) {
                let prod = ca.clone() * cb;
                let slot = acc.entry(ka + kb).or_insert_with(C::zero);
                *slot = slot.clone() + &prod;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Truncated {
            coeffs: acc,
            lo,
            hi,
        }
    }

    /// Multiplicative inverse. The relative precision `hi - val` is preserved.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation_key().ok_or_else(|| {
            Error::NotInvertible(format!(
                "no nonzero coefficient on window [{}, {}]",
                self.lo, self.hi
            ))
        })?;
        let lead = self.coeffs[&v].clone();
        let span = self.hi - v;
        let lo = -v;
        let hi = -v + span;
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        for m in 0..=span {
            // (a * c)_m = δ_{m,0}; solve for c_{m - v}.
            let mut s = if m == 0 { C::one() } else { C::zero() };
            for (j, aj) in self.coeffs.range(v + 1..v + m + 1) {
                if let Some(c) = out.get(&(m - j)) {
                    s = s - aj.clone() * c;
                }
            }
            if !s.is_zero() {
                out.insert(m - v, s / lead.clone());
            }
        }
        Ok(Truncated {
            coeffs: out,
            lo,
            hi,
        })
    }

    /// Integer power; negative exponents go through [`Truncated::inverse`].
    pub fn pow(&self, e: i64, one_hi: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Truncated::from_terms([(0, C::one())], 0.min(one_hi), one_hi)?;
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_series(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul_series(&sq);
            }
        }
        Ok(acc)
    }

    /// Coefficientwise comparison through the smaller of the two windows.
    /// The windows must overlap.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// Smallest key at which the two series differ, inside the common window.
    pub fn first_difference(&self, other: &Self) -> Result<Option<i64>> {
        let hi = self.hi.min(other.hi);
        let lo = self.lo.max(other.lo);
        if lo > hi {
            return Err(Error::InsufficientWindow(format!(
                "windows [{}, {}] and [{}, {}] do not overlap",
                self.lo, self.hi, other.lo, other.hi
            )));
        }
        let diff = self.combine(other, true);
        Ok(diff.coeffs.range(..=hi).next().map(|(k, _)| *k))
    }

    /// Difference terms `(key, self - other)` inside the common window.
    pub fn differences(&self, other: &Self) -> Result<Vec<(i64, C)>> {
        self.first_difference(other)?;
        let diff = self.combine(other, true);
        Ok(diff.coeffs.into_iter().collect())
    }
}

impl<'a, C: Field> Add<&'a Truncated<C>> for &'a Truncated<C> {
    type Output = Truncated<C>;
    fn add(self, rhs: &'a Truncated<C>) -> Truncated<C> {
        self.combine(rhs, false)
    }
}

impl<'a, C: Field> Sub<&'a Truncated<C>> for &'a Truncated<C> {
    type Output = Truncated<C>;
    fn sub(self, rhs: &'a Truncated<C>) -> Truncated<C> {
        self.combine(rhs, true)
    }
}

impl<'a, C: Field> Mul<&'a Truncated<C>> for &'a Truncated<C> {
    type Output = Truncated<C>;
    fn mul(self, rhs: &'a Truncated<C>) -> Truncated<C> {
        self.mul_series(rhs)
    }
}

impl<C: Field> Neg for &Truncated<C> {
    type Output = Truncated<C>;
    fn neg(self) -> Truncated<C> {
        Truncated {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
            lo: self.lo,
            hi: self.hi,
        }
    }
}
