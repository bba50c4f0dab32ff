//! Powers of `Φ(q) = (1 - q)^2 / q` and decomposition of symmetric
//! series in the basis `Φ(-q)^(g-1)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qseries::{binomial, int, HalfLaurentSeries, Rational};

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `Φ((-q)^r)^m` known through `q^hi`.
///
/// With `x = (-q)^r`: `Φ(x)^m = Σ_j binom(2m, j) (-1)^j x^(j-m)` for `m >= 0`
/// and `Φ(x)^(-k) = Σ_j binom(2k+j-1, j) x^(k+j)` for `k > 0`.
pub fn phi_power(m: i64, r: u32, hi: i64) -> HalfLaurentSeries {
    assert!(r > 0, "substitution power must be positive");
    let r = i64::from(r);
    let mut terms = Vec::new();
    // x^e = (-1)^(r e) q^(r e)
    let mut push = |e: i64, c: Rational| {
        let n = r * e;
        if n <= hi {
            terms.push((n, c * sign(n)));
        }
    };
    let lo;
    if m >= 0 {
        lo = -r * m;
        for j in 0..=2 * m {
            push(j - m, binomial(&int(2 * m), j as u64) * sign(j));
        }
    } else {
        let k = -m;
        lo = r * k;
        let mut j = 0;
        while r * (k + j) <= hi {
            push(k + j, binomial(&int(2 * k + j - 1), j as u64));
            j += 1;
        }
    }
    HalfLaurentSeries::from_int_terms(terms, lo.min(hi), hi).expect("terms lie in window")
}

/// Coefficients `l_g` with `L = Σ_g l_g Φ(-q)^(g-1)` on a certified window.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiDecomposition {
    /// Nonzero coefficients keyed by genus.
    pub coeffs: BTreeMap<i64, Rational>,
    /// The decomposition reproduces the input through `q^certified_hi`;
    /// coefficients are determined for every `g >= 1 - certified_hi`.
    pub certified_hi: i64,
}

impl PhiDecomposition {
    pub fn get(&self, g: i64) -> Rational {
        self.coeffs.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest genus whose coefficient is determined.
    pub fn min_genus(&self) -> i64 {
        1 - self.certified_hi
    }

    /// `Σ l_g Φ(-q)^(g-1)` through `q^hi`.
    pub fn reconstruct(&self, hi: i64) -> HalfLaurentSeries {
        self.coeffs
            .iter()
            .fold(HalfLaurentSeries::zero(2 * hi, 2 * hi), |acc, (g, l)| {
                &acc + &phi_power(g - 1, 1, hi).scale(l)
            })
    }
}

/// Writes `L` in the basis `Φ(-q)^(g-1)`.
///
/// Poles are matched from the most negative exponent upward (`g > 1`),
/// then the coefficients of `q^0, q^1, ...` fix `g = 1, 0, -1, ...`. The
/// window must reach `q^0` so that the polar part is fully known.
pub fn v0_decompose(l: &HalfLaurentSeries) -> Result<PhiDecomposition> {
    if l.has_half_exponents() {
        return Err(Error::Domain(
            "Φ-decomposition needs integer exponents".into(),
        ));
    }
    let hi = l.hi_exp();
    if hi < 0 {
        return Err(Error::InsufficientWindow(format!(
            "window ends at q^{hi}; the polar part is certified only through q^0"
        )));
    }
    let mut residual = l.clone();
    let mut coeffs = BTreeMap::new();
    if let Some(v) = residual.valuation() {
        for n in (1..=-v).rev() {
            let c = residual.coeff(-n).unwrap_or_else(Rational::zero);
            if c.is_zero() {
                continue;
            }
            // Φ(-q)^n has leading term (-1)^n q^(-n)
            let lg = c * sign(n);
            residual = &residual - &phi_power(n, 1, hi).scale(&lg);
            coeffs.insert(n + 1, lg);
        }
    }
    for k in 0..=hi {
        let c = residual.coeff(k).unwrap_or_else(Rational::zero);
        if c.is_zero() {
            continue;
        }
        // Φ(-q)^(-k) has leading term (-1)^k q^k
        let lg = c * sign(k);
        residual = &residual - &phi_power(-k, 1, hi).scale(&lg);
        coeffs.insert(1 - k, lg);
    }
    if !residual.is_zero_on_window() {
        return Err(Error::Consistency(format!(
            "nonzero Φ-decomposition residual {residual}"
        )));
    }
    Ok(PhiDecomposition {
        coeffs,
        certified_hi: hi,
    })
}

/// `n_g = (-1)^(g-1) l_g` from a decomposition.
pub fn bps_from_phi(d: &PhiDecomposition) -> BTreeMap<i64, Rational> {
    d.coeffs
        .iter()
        .map(|(g, l)| (*g, l * sign(g - 1)))
        .collect()
}

/// `(-1)^(g-1)`.
pub fn genus_sign(g: i64) -> Rational {
    sign(g - 1)
}

/// Invariants `n_g` of a series written as
/// `F = (1+q)^c Σ_g n_g (-1)^(g-1) Φ(-q)^(g-1)`.
pub fn fano_extract(f: &HalfLaurentSeries, c: u32) -> Result<BTreeMap<i64, Rational>> {
    if f.is_zero_on_window() {
        return Ok(BTreeMap::new());
    }
    let hi = f.hi_exp();
    let inv = HalfLaurentSeries::one_plus_q_pow(-i64::from(c), hi.max(0))?;
    let g = f * &inv;
    let d = v0_decompose(&g)?;
    Ok(bps_from_phi(&d))
}
