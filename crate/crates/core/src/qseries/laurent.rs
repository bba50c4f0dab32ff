//! Laurent series in `q` with half-integer exponents.
//!
//! Keys are doubled exponents: key `k` stands for `q^(k/2)`.

use std::fmt;

use num_traits::{One, Signed};

use super::field::{int, Rational};
use super::truncated::Truncated;
use crate::error::{Error, Result};

/// Truncated Laurent series in `q` with exact rational coefficients.
pub type HalfLaurentSeries = Truncated<Rational>;

impl Truncated<Rational> {
    /// Integer-exponent constructor: `coeffs[i]` multiplies `q^(lo + i)`,
    /// and the result is known through `q^hi`.
    pub fn from_int_coeffs(lo: i64, coeffs: &[Rational], hi: i64) -> Result<Self> {
        Self::from_int_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (lo + i as i64, c.clone())),
            lo.min(hi),
            hi,
        )
    }

    pub fn from_int_terms<I>(terms: I, lo: i64, hi: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        Self::from_terms(terms.into_iter().map(|(n, c)| (2 * n, c)), 2 * lo, 2 * hi)
    }

    /// `1 + O(q^(hi+1))`.
    pub fn one(hi: i64) -> Self {
        Self::from_int_terms([(0, Rational::one())], 0.min(hi), hi).expect("valid window")
    }

    /// `c q^n`, known through `q^hi`.
    pub fn monomial(n: i64, c: Rational, hi: i64) -> Self {
        Self::from_int_terms([(n, c)], n.min(hi), hi).expect("valid window")
    }

    /// Coefficient of `q^n`; `None` above the window.
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        self.get_key(2 * n)
    }

    /// Highest integer exponent covered by the window.
    pub fn hi_exp(&self) -> i64 {
        self.hi_key().div_euclid(2)
    }

    /// Lowest integer exponent of the window.
    pub fn lo_exp(&self) -> i64 {
        -((-self.lo_key()).div_euclid(2))
    }

    /// Valuation as an integer exponent, rejecting half-integer leads.
    pub fn valuation(&self) -> Option<i64> {
        self.valuation_key().map(|k| k.div_euclid(2))
    }

    pub fn has_half_exponents(&self) -> bool {
        self.terms().any(|(k, _)| k % 2 != 0)
    }

    pub fn truncate(&self, hi: i64) -> Result<Self> {
        self.truncate_key(2 * hi)
    }

    /// Multiplies by `q^n`.
    pub fn shift(&self, n: i64) -> Self {
        self.shift_key(2 * n)
    }

    /// Coefficients of `q^lo, ..., q^hi` as a dense vector; fails above the window.
    pub fn int_coeffs(&self, lo: i64, hi: i64) -> Result<Vec<Rational>> {
        (lo..=hi)
            .map(|n| {
                self.coeff(n).ok_or_else(|| {
                    Error::InsufficientWindow(format!("q^{n} above window end q^{}", self.hi_exp()))
                })
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, c)| c.is_integer())
    }

    /// Formal substitution `(-q) -> (-q)^r`, i.e. `q -> (-1)^(r+1) q^r`.
    pub fn subst_neg_power(&self, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("substitution power must be positive".into()));
        }
        let r = i64::from(r);
        let odd_sign = r % 2 == 0;
        let mut terms = Vec::with_capacity(self.num_terms());
        for (k, c) in self.terms() {
            if k % 2 != 0 && odd_sign {
                return Err(Error::Domain(format!(
                    "half-integer exponent {k}/2 has no sign under (-q) -> (-q)^{r}"
                )));
            }
            // q^(k/2) -> ((-1)^(r+1))^(k/2) q^(r k/2)
            let negate = odd_sign && (k / 2).rem_euclid(2) == 1;
            terms.push((r * k, if negate { -c.clone() } else { c.clone() }));
        }
        // The first unknown key hi+1 lands on r(hi+1).
        Self::from_terms(terms, r * self.lo_key(), r * (self.hi_key() + 1) - 1)
    }

    /// `(1+q)^e` for any integer `e`, known through `q^hi`.
    pub fn one_plus_q_pow(e: i64, hi: i64) -> Result<Self> {
        let base = Self::from_int_coeffs(0, &[int(1), int(1)], hi.max(1))?;
        let p = base.pow(e, 2 * hi)?;
        let hi_key = (2 * hi).min(p.hi_key());
        p.truncate_key(hi_key)
    }
}

impl fmt::Display for Truncated<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = monomial_text("q", k);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        let next_key = if self.has_half_exponents() {
            self.hi_key() + 1
        } else {
            2 * (self.hi_exp() + 1)
        };
        let next = monomial_text("q", next_key);
        if first {
            write!(
                f,
                "O({})",
                if next.is_empty() {
                    "1".to_string()
                } else {
                    next
                }
            )
        } else {
            write!(
                f,
                " + O({})",
                if next.is_empty() {
                    "1".to_string()
                } else {
                    next
                }
            )
        }
    }
}

/// Renders `var^(key/2)`; empty string for the constant.
pub fn monomial_text(var: &str, key: i64) -> String {
    if key == 0 {
        String::new()
    } else if key == 2 {
        var.to_string()
    } else if key % 2 == 0 {
        format!("{var}^{}", key / 2)
    } else {
        format!("{var}^({key}/2)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::field::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn square_of_one_plus_q() {
        let a = HalfLaurentSeries::from_int_coeffs(0, &ints(&[1, 1]), 6).unwrap();
        let sq = &a * &a;
        assert_eq!(sq.int_coeffs(0, 4).unwrap(), ints(&[1, 2, 1, 0, 0]));
        assert_eq!(sq.hi_exp(), 6);
    }

    #[test]
    fn identity_element() {
        let s = HalfLaurentSeries::from_int_coeffs(-2, &ints(&[3, 0, -1, 5]), 4).unwrap();
        let p = &s * &HalfLaurentSeries::one(10);
        assert!(p.agrees_with(&s).unwrap());
        assert_eq!(p.hi_exp(), 4);
        assert_eq!(p.lo_exp(), -2);
    }

    #[test]
    fn telescoping_geometric_sum() {
        let a = HalfLaurentSeries::from_int_coeffs(0, &ints(&[1, -1]), 5).unwrap();
        let b = HalfLaurentSeries::from_int_coeffs(0, &ints(&[1; 6]), 5).unwrap();
        let p = &a * &b;
        assert_eq!(p.hi_exp(), 5);
        assert!(p.agrees_with(&HalfLaurentSeries::one(5)).unwrap());
    }

    #[test]
    fn window_rule_for_products() {
        // a known through q^3 with valuation -1, b known through q^4 with valuation 2
        let a = HalfLaurentSeries::from_int_coeffs(-1, &ints(&[1, 2]), 3).unwrap();
        let b = HalfLaurentSeries::from_int_coeffs(2, &ints(&[1]), 4).unwrap();
        let p = &a * &b;
        // min(3 + 2, -1 + 4) = 3
        assert_eq!(p.hi_exp(), 3);
    }

    #[test]
    fn inverses() {
        let a = HalfLaurentSeries::from_int_coeffs(0, &ints(&[1, -1]), 6).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.int_coeffs(0, 6).unwrap(), ints(&[1; 7]));

        let q = HalfLaurentSeries::monomial(1, int(1), 5);
        let qi = q.inverse().unwrap();
        assert_eq!(qi.valuation(), Some(-1));
        assert_eq!(qi.num_terms(), 1);
        assert_eq!(qi.hi_exp(), 3);

        // MacMahon prefix 1 + Q + 3Q^2 + 6Q^3 inverts to 1 - Q - 2Q^2 - Q^3
        let m = HalfLaurentSeries::from_int_coeffs(0, &ints(&[1, 1, 3, 6]), 3).unwrap();
        assert_eq!(
            m.inverse().unwrap().int_coeffs(0, 3).unwrap(),
            ints(&[1, -1, -2, -1])
        );

        let z = HalfLaurentSeries::zero(0, 4);
        assert!(matches!(z.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn substitution_examples() {
        let q = HalfLaurentSeries::monomial(1, int(1), 4);
        let s = q.subst_neg_power(2).unwrap();
        assert_eq!(s.coeff(2), Some(int(-1)));
        assert_eq!(s.num_terms(), 1);

        // (-q) - 2 + (-q)^-1 under r = 3 is (-q)^3 - 2 + (-q)^-3
        let phi = HalfLaurentSeries::from_int_coeffs(-1, &ints(&[-1, -2, -1]), 1).unwrap();
        let s3 = phi.subst_neg_power(3).unwrap();
        let expect =
            HalfLaurentSeries::from_int_terms([(-3, int(-1)), (0, int(-2)), (3, int(-1))], -3, 3)
                .unwrap();
        assert!(s3.agrees_with(&expect).unwrap());

        let half = HalfLaurentSeries::from_terms([(1, rat(1, 1))], 0, 4).unwrap();
        assert!(half.subst_neg_power(2).is_err());
        assert!(half.subst_neg_power(3).is_ok());
    }

    #[test]
    fn comparison_requires_overlap() {
        let a = HalfLaurentSeries::from_int_coeffs(5, &ints(&[1]), 8).unwrap();
        let b = HalfLaurentSeries::from_int_coeffs(0, &ints(&[1]), 2).unwrap();
        assert!(matches!(
            a.agrees_with(&b),
            Err(Error::InsufficientWindow(_))
        ));
    }

    #[test]
    fn display_format() {
        let s = HalfLaurentSeries::from_int_coeffs(0, &ints(&[1, -1, 3, -6]), 3).unwrap();
        assert_eq!(s.to_string(), "1 - q + 3q^2 - 6q^3 + O(q^4)");
        let h = HalfLaurentSeries::from_terms([(-1, rat(1, 2))], -1, 2).unwrap();
        assert_eq!(h.to_string(), "1/2q^(-1/2) + O(q^(3/2))");
    }
}
