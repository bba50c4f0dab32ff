//! Membership in `V_d = span{Φ((-q)^r)^(g-1) : g >= 0, 1 <= r <= d}`.
//!
//! `V_d` is the symmetric Laurent polynomials plus the span of
//! `Φ((-q)^r)^(-1) = x/(1-x)^2`, `x = (-q)^r`, for `r <= d`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::phi::{phi_power, v0_decompose};
use crate::error::{Error, Result};
use crate::qseries::{HalfLaurentSeries, Rational, RationalFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct VdMembership {
    pub member: bool,
    /// `(g, r) -> coefficient of Φ((-q)^r)^(g-1)`.
    pub witness: BTreeMap<(i64, u32), Rational>,
    /// Input minus the witness combination on the input window.
    pub residual: HalfLaurentSeries,
}

/// Decides whether `L` lies in `V_d` on its window.
///
/// The symmetric Laurent polynomial part is read off the polar part and
/// the constant term; the coefficients of `q^1, ..., q^d` then fix the
/// `Φ((-q)^r)^(-1)` components one at a time. `L` is a member iff nothing
/// remains on the window.
pub fn vd_membership(l: &HalfLaurentSeries, d: u32) -> Result<VdMembership> {
    if d == 0 {
        return Err(Error::Domain("V_d needs d >= 1".into()));
    }
    if l.has_half_exponents() {
        return Err(Error::Domain(
            "V_d membership needs integer exponents".into(),
        ));
    }
    let hi = l.hi_exp();
    if hi < i64::from(d) {
        return Err(Error::InsufficientWindow(format!(
            "window ends at q^{hi}; deciding V_{d} needs at least q^{d}"
        )));
    }
    let mut theta_terms = Vec::new();
    let lo = l.lo_exp().min(0);
    for n in lo..=0 {
        let c = l.coeff(n).expect("below window end");
        if c.is_zero() {
            continue;
        }
        theta_terms.push((n, c.clone()));
        if n < 0 && -n <= hi {
            theta_terms.push((-n, c));
        }
    }
    let theta = HalfLaurentSeries::from_int_terms(theta_terms, lo, hi)?;
    let mut witness = BTreeMap::new();
    for (g, c) in v0_decompose(&theta)?.coeffs {
        witness.insert((g, 1), c);
    }
    let mut residual = l - &theta;
    for r in 1..=d {
        let c = residual.coeff(i64::from(r)).expect("r <= hi");
        if c.is_zero() {
            continue;
        }
        // Φ((-q)^r)^(-1) starts with (-1)^r q^r
        let c = if r % 2 == 0 { c } else { -c };
        residual = &residual - &phi_power(-1, r, hi).scale(&c);
        let slot = witness.entry((0, r)).or_insert_with(Rational::zero);
        *slot += c;
    }
    witness.retain(|_, c| !c.is_zero());
    Ok(VdMembership {
        member: residual.is_zero_on_window(),
        witness,
        residual,
    })
}

/// [`vd_membership`] for a rational function expanded through `q^hi`.
pub fn vd_membership_rf(r: &RationalFunction, d: u32, hi: i64) -> Result<VdMembership> {
    vd_membership(&r.expand(hi)?, d)
}
