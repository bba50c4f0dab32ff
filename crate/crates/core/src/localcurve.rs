//! Contributions of an isolated nonsingular curve of genus `g` with
//! `∫_C c_1(X) = l`, on the pairs side and on the Gromov-Witten side.

use num_traits::One;

use crate::error::{Error, Result};
use crate::qseries::{
    binomial, int, GaussianRational, HalfLaurentSeries, Rational, RationalFunction, UPowerSeries,
};

/// Largest `u`-order accepted by [`correspondence_check`].
pub const MAX_CORRESPONDENCE_ORDER: i64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub g: u32,
    pub l: i64,
}

impl CurveData {
    pub fn new(g: u32, l: i64) -> Self {
        CurveData { g, l }
    }

    /// `2g - 2 + l`.
    pub fn exponent(&self) -> i64 {
        2 * i64::from(self.g) - 2 + self.l
    }
}

/// `q^(1-g) (1+q)^(2g-2+l)` through `q^hi`.
pub fn pairs_contribution(c: CurveData, hi: i64) -> Result<HalfLaurentSeries> {
    let shift = 1 - i64::from(c.g);
    let inner = hi - shift;
    if inner < 0 {
        return Ok(HalfLaurentSeries::zero(2 * hi, 2 * hi));
    }
    Ok(HalfLaurentSeries::one_plus_q_pow(c.exponent(), inner)?.shift(shift))
}

/// The same contribution as an exact rational function.
pub fn pairs_rational_function(c: CurveData) -> Result<RationalFunction> {
    let e = c.exponent();
    let shift = 1 - i64::from(c.g);
    let one_plus_q =
        |k: i64| -> Vec<Rational> { (0..=k).map(|j| binomial(&int(k), j as u64)).collect() };
    let monomial = |k: i64| -> Vec<Rational> {
        let mut v = vec![int(0); k as usize + 1];
        v[k as usize] = Rational::one();
        v
    };
    let num = crate::qseries::poly_mul(&monomial(shift.max(0)), &one_plus_q(e.max(0)));
    let den = crate::qseries::poly_mul(&monomial((-shift).max(0)), &one_plus_q((-e).max(0)));
    RationalFunction::new(num, den)
}

/// `binom(2g-2+l, d)`, the generalized binomial with `d` falling factors.
pub fn taut_chern_integral(g: u32, l: i64, d: u64) -> Rational {
    binomial(&int(2 * i64::from(g) - 2 + l), d)
}

/// `χ(Sym^d C)`: the coefficient of `q^d` in `(1-q)^(2g-2)`.
pub fn sym_euler(g: u32, d: u64) -> Rational {
    let c = binomial(&int(2 * i64::from(g) - 2), d);
    if d.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// `(sin(u/2)/(u/2))^(2g-2+l) u^(2g-2)` through `u^order`.
pub fn gw_contribution(c: CurveData, order: i64) -> Result<UPowerSeries> {
    let shift = 2 * i64::from(c.g) - 2;
    let inner = order - shift;
    if inner < 0 {
        return Ok(UPowerSeries::zero(order, order));
    }
    let s = UPowerSeries::sinc_half(inner).pow(c.exponent(), inner)?;
    Ok(s.truncate_key(inner)?.shift_key(shift))
}

/// Both sides of the pairs/Gromov-Witten change of variables `-q = e^{iu}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Correspondence {
    /// `(-q)^(-l/2) Z_P` at `q = -e^{iu}`, with `(-q)^(1/2) = e^{iu/2}`.
    pub pairs_side: UPowerSeries,
    /// `(-iu)^l Z_GW`.
    pub gw_side: UPowerSeries,
    /// `(u-exponent, pairs - gw)` for each differing coefficient.
    pub differences: Vec<(i64, GaussianRational)>,
}

impl Correspondence {
    pub fn equal(&self) -> bool {
        self.differences.is_empty()
    }
}

/// Compares the two sides coefficientwise through `u^order`.
pub fn correspondence_check(c: CurveData, order: i64) -> Result<Correspondence> {
    if order > MAX_CORRESPONDENCE_ORDER {
        return Err(Error::ResourceLimit(format!(
            "u-order {order} exceeds configured bound {MAX_CORRESPONDENCE_ORDER}"
        )));
    }
    let rf = pairs_rational_function(c)?;
    // The pole at u = 0 has order at most the multiplicity of q = -1 in
    // the denominator; expand that much further before multiplying.
    let headroom = (-c.exponent()).max(0);
    let work = order + headroom;
    let z = rf.substitute_neg_exp_iu(work)?;
    let half = UPowerSeries::exp_iu(&Rational::new((-c.l).into(), 2.into()), work);
    let pairs_side = (&z * &half).truncate_key(order).map_err(|e| match e {
        Error::InsufficientWindow(m) => Error::InsufficientWindow(format!("pairs side: {m}")),
        other => other,
    })?;
    let gw = gw_contribution(c, order - c.l)?;
    let gw_side = gw
        .shift_key(c.l)
        .scale(&GaussianRational::i_pow(-c.l).scale(&int(1)));
    let gw_side = gw_side.truncate_key(order.min(gw_side.hi_key()))?;
    let differences = pairs_side.differences(&gw_side)?;
    Ok(Correspondence {
        pairs_side,
        gw_side,
        differences,
    })
}
