//! Power series in `u` with Gaussian-rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{int, GaussianRational, Rational};
use super::truncated::Truncated;
use crate::error::Result;

/// Truncated Laurent series in `u` (keys are plain integer exponents).
pub type UPowerSeries = Truncated<GaussianRational>;

impl Truncated<GaussianRational> {
    pub fn from_real(s: &Truncated<Rational>) -> Self {
        s.map_coeffs(|_, c| GaussianRational::real(c.clone()))
    }

    pub fn u_coeff(&self, n: i64) -> Option<GaussianRational> {
        self.get_key(n)
    }

    /// `e^{i a u}` through `u^order`.
    pub fn exp_iu(a: &Rational, order: i64) -> Self {
        let mut terms = Vec::new();
        let mut pow = Rational::one();
        let mut fact = Rational::one();
        for m in 0..=order {
            if m > 0 {
                pow *= a;
                fact *= int(m);
            }
            let c = GaussianRational::i_pow(m).scale(&(pow.clone() / fact.clone()));
            terms.push((m, c));
        }
        Truncated::from_terms_clipped(terms, 0, order)
    }

    /// `(sin(u/2)/(u/2))` through `u^order`, an even series.
    pub fn sinc_half(order: i64) -> Self {
        let mut terms = Vec::new();
        let mut k = 0i64;
        while 2 * k <= order {
            // (-1)^k (u/2)^{2k} / (2k+1)!
            let mut fact = BigInt::one();
            for j in 2..=(2 * k + 1) {
                fact *= j;
            }
            let den = fact * BigInt::from(4).pow(k as u32);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            terms.push((
                2 * k,
                GaussianRational::real(Rational::new(BigInt::from(sign), den)),
            ));
            k += 1;
        }
        Truncated::from_terms_clipped(terms, 0, order)
    }

    /// `c u^n` known through `u^hi`.
    pub fn u_monomial(n: i64, c: GaussianRational, hi: i64) -> Result<Self> {
        Truncated::monomial_key(n, c, hi)
    }

    pub fn is_real(&self) -> bool {
        self.terms().all(|(_, c)| c.im.is_zero())
    }
}

impl fmt::Display for Truncated<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})u")?,
                _ => write!(f, "({c})u^{k}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(u^{})", self.hi_key() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::field::rat;

    #[test]
    fn exp_iu_times_conjugate_is_one() {
        let e = UPowerSeries::exp_iu(&rat(1, 2), 10);
        let f = UPowerSeries::exp_iu(&rat(-1, 2), 10);
        let p = &e * &f;
        let one = UPowerSeries::from_terms([(0, GaussianRational::one())], 0, 10).unwrap();
        assert!(p.agrees_with(&one).unwrap());
    }

    #[test]
    fn sinc_half_prefix() {
        let s = UPowerSeries::sinc_half(4);
        assert_eq!(s.u_coeff(0), Some(GaussianRational::one()));
        assert_eq!(s.u_coeff(2), Some(GaussianRational::real(rat(-1, 24))));
        assert_eq!(s.u_coeff(4), Some(GaussianRational::real(rat(1, 1920))));
        assert_eq!(s.u_coeff(3), Some(GaussianRational::zero()));
    }
}
