//! Prime sampling and exact polynomial interpolation.

use num_traits::{One, Zero};

use crate::qseries::{int, poly_mul, Poly, Rational};

/// The first `n` primes, starting at 2.
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut c = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// The unique polynomial of degree `< points.len()` through the points.
pub fn lagrange(points: &[(Rational, Rational)]) -> Poly {
    let mut out: Poly = vec![Rational::zero(); points.len()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis: Poly = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = poly_mul(&basis, &[-xj.clone(), Rational::one()]);
                denom *= xi - xj;
            }
        }
        let scale = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

pub fn eval(poly: &[Rational], x: &Rational) -> Rational {
    poly.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Coefficients of `P(s + a)` in powers of `s`.
pub fn taylor_shift(poly: &[Rational], a: &Rational) -> Poly {
    // Horner with polynomial arithmetic: P(s + a) = (...(c_n (s+a) + c_{n-1})(s+a) ...)
    let lin = [a.clone(), Rational::one()];
    let mut acc: Poly = Vec::new();
    for c in poly.iter().rev() {
        acc = poly_mul(&acc, &lin);
        if acc.is_empty() {
            acc.push(Rational::zero());
        }
        acc[0] += c;
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    acc
}

/// Coefficients of `P` in the basis `(t + 1)^f`.
pub fn plus_one_basis(poly: &[Rational]) -> Poly {
    taylor_shift(poly, &int(-1))
}
