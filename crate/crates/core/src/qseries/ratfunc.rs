//! Exact rational functions in `q` and their expansions.

use std::fmt;

use num_traits::{One, Zero};

use super::field::{int, GaussianRational, Rational};
use super::laurent::HalfLaurentSeries;
use super::upower::UPowerSeries;
use crate::error::{Error, Result};

/// Dense polynomial in `q`, ascending coefficients, no trailing zeros.
pub type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Polynomial long division `a = quot * b + rem`.
pub fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap().clone() / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn poly_gcd(a: &[Rational], b: &[Rational]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        x.iter_mut().for_each(|c| *c = c.clone() / &lead);
    }
    x
}

/// `q^deg p(1/q)` for the given degree bound.
fn reversed(p: &[Rational], deg: usize) -> Poly {
    let mut out = vec![Rational::zero(); deg + 1];
    for (i, c) in p.iter().enumerate() {
        out[deg - i] = c.clone();
    }
    trim(out)
}

fn valuation(p: &[Rational]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

/// `numerator / denominator`, kept gcd-reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        let numerator = trim(numerator);
        let denominator = trim(denominator);
        if denominator.is_empty() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if numerator.is_empty() {
            return Ok(RationalFunction {
                numerator,
                denominator: vec![Rational::one()],
            });
        }
        let g = poly_gcd(&numerator, &denominator);
        let (mut num, _) = poly_divrem(&numerator, &g);
        let (mut den, _) = poly_divrem(&denominator, &g);
        let lead = den.last().unwrap().clone();
        num.iter_mut().for_each(|c| *c = c.clone() / &lead);
        den.iter_mut().for_each(|c| *c = c.clone() / &lead);
        Ok(RationalFunction {
            numerator: num,
            denominator: den,
        })
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(
            num.iter().map(|&x| int(x)).collect(),
            den.iter().map(|&x| int(x)).collect(),
        )
    }

    pub fn numerator(&self) -> &[Rational] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Rational] {
        &self.denominator
    }

    /// Decides `R(q) = R(1/q)` exactly by cross-multiplying the reversed
    /// polynomials: `N · rev(D) · q^deg N = rev(N) · D · q^deg D`.
    pub fn is_symmetric(&self) -> bool {
        if self.numerator.is_empty() {
            return true;
        }
        let dn = self.numerator.len() - 1;
        let dd = self.denominator.len() - 1;
        let nrev = reversed(&self.numerator, dn);
        let drev = reversed(&self.denominator, dd);
        let mut lhs = poly_mul(&self.numerator, &drev);
        let mut rhs = poly_mul(&nrev, &self.denominator);
        lhs.splice(0..0, std::iter::repeat_n(Rational::zero(), dn));
        rhs.splice(0..0, std::iter::repeat_n(Rational::zero(), dd));
        trim(lhs) == trim(rhs)
    }

    /// Laurent expansion about `q = 0`, known through `q^hi`.
    pub fn expand(&self, hi: i64) -> Result<HalfLaurentSeries> {
        if self.numerator.is_empty() {
            return Ok(HalfLaurentSeries::zero(2 * hi.min(0), 2 * hi));
        }
        let vd = valuation(&self.denominator).expect("nonzero denominator") as i64;
        let vn = valuation(&self.numerator).unwrap() as i64;
        let lo = vn - vd;
        if hi < lo {
            return Ok(HalfLaurentSeries::zero(2 * hi, 2 * hi));
        }
        let num_hi = hi + vd;
        let den_hi = hi + 2 * vd;
        let n = poly_series(&self.numerator, num_hi);
        let d = poly_series(&self.denominator, den_hi);
        let out = &n * &d.inverse()?;
        out.truncate(hi)
    }

    /// Substitutes `q = -e^{iu}` and expands in `u` through `u^order`.
    pub fn substitute_neg_exp_iu(&self, order: i64) -> Result<UPowerSeries> {
        let den_zero = zero_order_at_minus_one(&self.denominator) as i64;
        let work = order + 2 * den_zero;
        let n = poly_at_neg_exp_iu(&self.numerator, work);
        let d = poly_at_neg_exp_iu(&self.denominator, work);
        let out = &n * &d.inverse()?;
        out.truncate_key(order)
    }
}

fn poly_series(p: &[Rational], hi: i64) -> HalfLaurentSeries {
    HalfLaurentSeries::from_terms_clipped(
        p.iter().enumerate().map(|(i, c)| (2 * i as i64, c.clone())),
        0,
        2 * hi,
    )
}

/// Multiplicity of `q = -1` as a root.
fn zero_order_at_minus_one(p: &[Rational]) -> usize {
    let divisor = vec![int(1), int(1)];
    let mut cur = trim(p.to_vec());
    let mut k = 0;
    while !cur.is_empty() {
        let (quot, rem) = poly_divrem(&cur, &divisor);
        if !rem.is_empty() {
            break;
        }
        cur = quot;
        k += 1;
    }
    k
}

/// `p(-e^{iu}) = Σ_m (i^m / m!) (Σ_k p_k (-1)^k k^m) u^m`.
fn poly_at_neg_exp_iu(p: &[Rational], order: i64) -> UPowerSeries {
    let mut terms = Vec::new();
    let mut fact = Rational::one();
    for m in 0..=order {
        if m > 0 {
            fact *= int(m);
        }
        let mut s = Rational::zero();
        for (k, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let km = if m == 0 {
                Rational::one()
            } else {
                int(k as i64).pow(m as i32)
            };
            s += c * sign * km;
        }
        terms.push((m, GaussianRational::i_pow(m).scale(&(s / &fact))));
    }
    UPowerSeries::from_terms_clipped(terms, 0, order)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &[Rational]| -> String {
            let s = poly_series(p, p.len() as i64).to_string();
            s.rsplit_once(" + O(")
                .map(|(a, _)| a.to_string())
                .unwrap_or_else(|| "0".into())
        };
        write!(
            f,
            "({}) / ({})",
            show(&self.numerator),
            show(&self.denominator)
        )
    }
}
