//! Exact truncated series arithmetic.
//!
//! Everything here is exact: coefficients are big rationals (or Gaussian
//! rationals for the `u` side), and every series records the window on which
//! it is authoritative.

mod field;
mod laurent;
mod multiclass;
mod ratfunc;
mod truncated;
mod upower;

pub use field::{binomial, int, is_integral, rat, Field, GaussianRational, Rational};
pub use laurent::{monomial_text, HalfLaurentSeries};
pub use multiclass::{ClassLattice, ClassVector, MultiClassSeries};
pub use ratfunc::{poly_divrem, poly_gcd, poly_mul, Poly, RationalFunction};
pub use truncated::Truncated;
pub use upower::UPowerSeries;

use crate::error::Result;

/// Truncated product of two `q`-series.
pub fn series_mul(a: &HalfLaurentSeries, b: &HalfLaurentSeries) -> HalfLaurentSeries {
    a * b
}

pub fn series_inverse(a: &HalfLaurentSeries) -> Result<HalfLaurentSeries> {
    a.inverse()
}

pub fn subst_neg_power(s: &HalfLaurentSeries, r: u32) -> Result<HalfLaurentSeries> {
    s.subst_neg_power(r)
}

pub fn graded_exp(f: &MultiClassSeries) -> Result<MultiClassSeries> {
    f.graded_exp()
}

pub fn graded_log(z: &MultiClassSeries) -> Result<MultiClassSeries> {
    z.graded_log()
}

pub fn rf_expand(r: &RationalFunction, hi: i64) -> Result<HalfLaurentSeries> {
    r.expand(hi)
}

pub fn rf_symmetry_check(r: &RationalFunction) -> bool {
    r.is_symmetric()
}
