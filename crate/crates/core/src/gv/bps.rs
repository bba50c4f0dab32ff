//! Extraction of BPS numbers from a connected potential and generation of
//! the partition function from BPS numbers.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::phi::{bps_from_phi, genus_sign, phi_power, v0_decompose};
use super::GVTable;
use crate::error::{Error, Result};
use crate::qseries::{binomial, int, ClassVector, HalfLaurentSeries, MultiClassSeries, Rational};

fn divisors_above_one(n: u32) -> impl Iterator<Item = u32> {
    (2..=n).filter(move |r| n.is_multiple_of(*r))
}

fn add_into(
    acc: &mut BTreeMap<ClassVector, HalfLaurentSeries>,
    beta: ClassVector,
    s: HalfLaurentSeries,
) {
    let merged = match acc.remove(&beta) {
        Some(prev) => &prev + &s,
        None => s,
    };
    acc.insert(beta, merged);
}

/// `F = Σ_{g,γ,k} ñ_{g,γ} (1/k) Φ((-q)^k)^(g-1) v^(kγ)` through `q^hi`,
/// with `ñ = (-1)^(g-1) n`.
pub fn gv_connected(table: &GVTable, hi: i64, cutoff: u64) -> Result<MultiClassSeries> {
    let lattice = table.lattice().clone();
    let mut acc = BTreeMap::new();
    for (g, gamma, n) in table.iter() {
        let nt = genus_sign(g) * n;
        let d = lattice.degree(gamma);
        let mut k = 1u32;
        while u64::from(k) * d <= cutoff {
            let term = phi_power(g - 1, k, hi).scale(&(&nt / int(i64::from(k))));
            add_into(&mut acc, gamma.scaled(k), term);
            k += 1;
        }
    }
    let mut f = MultiClassSeries::zero(lattice, cutoff);
    for (b, s) in acc {
        f.insert(b, s)?;
    }
    Ok(f)
}

/// Working precision that survives the window loss of a graded product.
fn headroom(table: &GVTable, hi: i64, cutoff: u64) -> i64 {
    hi + table.pole_density() * cutoff as i64
}

/// `Z = exp(F)` with every class known through `q^hi`.
pub fn gv_generate(table: &GVTable, hi: i64, cutoff: u64) -> Result<MultiClassSeries> {
    let f = gv_connected(table, headroom(table, hi, cutoff), cutoff)?;
    f.graded_exp()?.truncate(hi)
}

/// Solves for `n_{g,β}` class by class in increasing degree: subtract the
/// multiple-cover terms of already solved classes `β/r`, then decompose
/// the remainder in the `Φ(-q)^(g-1)` basis.
///
/// Each present class needs a window through `q^div(β)`. Genera below
/// `1 - hi` are not determined and are recorded as the class's genus floor.
pub fn extract_gv(f: &MultiClassSeries) -> Result<GVTable> {
    if !f.constant().is_zero() {
        return Err(Error::Domain(format!(
            "extraction needs a connected potential (class-0 part 0), got {}",
            f.constant()
        )));
    }
    let lattice = f.lattice().clone();
    let mut table = GVTable::new(lattice.clone());
    for beta in lattice.effective_classes(f.cutoff()) {
        let div = beta.divisibility();
        let mut limit: Option<i64> = None;
        let mut covers = Vec::new();
        for r in divisors_above_one(div) {
            let gamma = beta.divided(r).expect("r divides β");
            if let Some(floor) = table.genus_floor(&gamma) {
                // Unknown genera g < floor reach F_β from q^(r (2 - floor)) on.
                let bound = i64::from(r) * (2 - floor) - 1;
                limit = Some(limit.map_or(bound, |l: i64| l.min(bound)));
            }
            for (g, n) in table.class_entries(&gamma) {
                covers.push((r, g, n));
            }
        }
        let given = f.get(&beta);
        if given.is_none() && covers.is_empty() {
            continue;
        }
        let mut hi = match (given, limit) {
            (Some(s), _) => s.hi_exp(),
            (None, Some(l)) => l,
            (None, None) => unreachable!("cover terms come from classes with a genus floor"),
        };
        if let Some(l) = limit {
            hi = hi.min(l);
        }
        if hi < i64::from(div) {
            return Err(Error::InsufficientWindow(format!(
                "class {beta} is determined only through q^{hi}; extraction needs q^{div}"
            )));
        }
        let mut residual = match given {
            Some(s) => s.truncate(hi)?,
            None => HalfLaurentSeries::zero(0, 2 * hi),
        };
        for (r, g, n) in covers {
            let c = genus_sign(g) * n / int(i64::from(r));
            residual = &residual - &phi_power(g - 1, r, hi).scale(&c);
        }
        let d = v0_decompose(&residual).map_err(|e| match e {
            Error::Consistency(m) => Error::Consistency(format!("class {beta}: {m}")),
            other => other,
        })?;
        for (g, n) in bps_from_phi(&d) {
            table.insert(g, beta.clone(), n)?;
        }
        table.set_genus_floor(beta, d.min_genus());
    }
    Ok(table)
}

/// `Z = ∏_{g,γ} ∏_l (1 - Q^l v^γ)^(-ñ_{g,γ} φ^{g-1}_l)` with `Q = -q` and
/// `Φ(Q)^(g-1) = Σ_l φ^{g-1}_l Q^l`, expanded by the binomial series.
/// Exponents may be any rationals.
pub fn product_form(table: &GVTable, hi: i64, cutoff: u64) -> Result<MultiClassSeries> {
    let lattice = table.lattice().clone();
    let work = headroom(table, hi, cutoff);
    let mut exponents: BTreeMap<(ClassVector, i64), Rational> = BTreeMap::new();
    for (g, gamma, n) in table.iter() {
        if lattice.degree(gamma) > cutoff {
            continue;
        }
        let nt = genus_sign(g) * n;
        let phi = phi_power(g - 1, 1, work);
        for (key, c) in phi.terms() {
            let l = key / 2;
            // [Q^l] = (-1)^l [q^l]
            let phi_l = if l.rem_euclid(2) == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            let slot = exponents
                .entry((gamma.clone(), l))
                .or_insert_with(Rational::zero);
            *slot += &nt * phi_l;
        }
    }
    let mut z = MultiClassSeries::one(lattice.clone(), cutoff);
    for ((gamma, l), e) in exponents {
        if e.is_zero() {
            continue;
        }
        let d = lattice.degree(&gamma);
        let mut factor = MultiClassSeries::one(lattice.clone(), cutoff);
        let mut j = 1u32;
        while u64::from(j) * d <= cutoff {
            let jj = i64::from(j);
            // (1 - y)^(-e) = Σ_j binom(-e, j) (-y)^j, y^j = (-1)^(l j) q^(l j) v^(jγ)
            let mut c = binomial(&(-e.clone()), u64::from(j));
            if (jj + l * jj).rem_euclid(2) == 1 {
                c = -c;
            }
            let exp = l * jj;
            let s = if exp <= work {
                HalfLaurentSeries::monomial(exp, c, work)
            } else {
                HalfLaurentSeries::zero(2 * work, 2 * work)
            };
            factor.insert(gamma.scaled(j), s)?;
            j += 1;
        }
        z = z.mul(&factor)?;
    }
    z.truncate(hi)
}

/// `(extracted table, whether it equals the input)` for
/// `extract_gv(graded_log(gv_generate(T)))`.
pub fn gv_roundtrip(table: &GVTable, cutoff: u64) -> Result<(GVTable, bool)> {
    let lattice = table.lattice();
    let max_div = lattice
        .effective_classes(cutoff)
        .iter()
        .map(|b| i64::from(b.divisibility()))
        .max()
        .unwrap_or(1);
    let hi = max_div.max(1).max(1 - table.min_genus().unwrap_or(1));
    let z = gv_generate(table, headroom(table, hi, cutoff), cutoff)?;
    let f = z.graded_log()?;
    let back = extract_gv(&f)?;
    let mut expected = GVTable::new(lattice.clone());
    for (g, b, n) in table.iter() {
        if lattice.degree(b) <= cutoff {
            expected.insert(g, b.clone(), n.clone())?;
        }
    }
    let same = back == expected;
    Ok((back, same))
}

/// Non-integral coefficients found in either direction of the
/// integrality theorem.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntegralityReport {
    /// `(class, exponent, coefficient)` of the generated partition function.
    pub series: Vec<(ClassVector, i64, Rational)>,
    /// `(genus, class, n)` of an extracted table.
    pub table: Vec<(i64, ClassVector, Rational)>,
}

impl IntegralityReport {
    pub fn is_integral(&self) -> bool {
        self.series.is_empty() && self.table.is_empty()
    }
}

/// Generates `Z` from the table and lists its non-integral coefficients,
/// together with non-integral table entries.
pub fn integrality_check(table: &GVTable, hi: i64, cutoff: u64) -> Result<IntegralityReport> {
    let z = gv_generate(table, hi, cutoff)?;
    let series = z
        .non_integral_terms()
        .into_iter()
        .map(|(b, k, c)| {
            debug_assert!(k % 2 == 0);
            (b, k / 2, c)
        })
        .collect();
    Ok(IntegralityReport {
        series,
        table: table.non_integral(),
    })
}

/// Extracts the table from a partition function and lists non-integral
/// entries, together with non-integral input coefficients.
pub fn integrality_check_series(z: &MultiClassSeries) -> Result<(GVTable, IntegralityReport)> {
    let t = extract_gv(&z.graded_log()?)?;
    let series = z
        .non_integral_terms()
        .into_iter()
        .map(|(b, k, c)| (b, k / 2, c))
        .collect();
    let report = IntegralityReport {
        series,
        table: t.non_integral(),
    };
    Ok((t, report))
}

/// Entries with `g < 0` and `n != 0`.
pub fn vanishing_check(table: &GVTable) -> Vec<(i64, ClassVector, Rational)> {
    table
        .iter()
        .filter(|(g, _, _)| *g < 0)
        .map(|(g, b, n)| (g, b.clone(), n.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{rat, ClassLattice, RationalFunction};

    fn rank1() -> ClassLattice {
        ClassLattice::uniform(1)
    }

    fn b(k: u32) -> ClassVector {
        ClassVector::new(vec![k])
    }

    fn table(entries: &[(i64, u32, Rational)]) -> GVTable {
        let mut t = GVTable::new(rank1());
        for (g, k, n) in entries {
            t.insert(*g, b(*k), n.clone()).unwrap();
        }
        t
    }

    fn series(num: &[i64], den: &[i64], hi: i64) -> HalfLaurentSeries {
        RationalFunction::from_ints(num, den)
            .unwrap()
            .expand(hi)
            .unwrap()
    }

    #[test]
    fn extraction_examples() {
        for g0 in 0..4i64 {
            // q^(1-g)(1+q)^(2g-2)
            let s = HalfLaurentSeries::one_plus_q_pow(2 * g0 - 2, 6)
                .unwrap()
                .shift(1 - g0)
                .truncate(4)
                .unwrap();
            let mut f = MultiClassSeries::zero(rank1(), 1);
            f.insert(b(1), s).unwrap();
            assert_eq!(
                extract_gv(&f).unwrap(),
                table(&[(g0, 1, int(1))]),
                "g = {g0}"
            );
        }
        assert!(extract_gv(&MultiClassSeries::zero(rank1(), 3))
            .unwrap()
            .is_empty());

        let mut f = MultiClassSeries::zero(rank1(), 2);
        f.insert(b(1), series(&[0, 1], &[1, 2, 1], 6)).unwrap();
        // -(1/2) q^2 / (1 - q^2)^2
        f.insert(b(2), series(&[0, 0, -1], &[2, 0, -4, 0, 2], 6))
            .unwrap();
        assert_eq!(extract_gv(&f).unwrap(), table(&[(0, 1, int(1))]));
    }

    #[test]
    fn extraction_needs_divisibility_window() {
        let mut f = MultiClassSeries::zero(rank1(), 2);
        f.insert(b(1), series(&[0, 1], &[1, 2, 1], 4)).unwrap();
        f.insert(b(2), series(&[0, 1], &[1, 2, 1], 1)).unwrap();
        assert!(matches!(extract_gv(&f), Err(Error::InsufficientWindow(_))));
    }

    #[test]
    fn generation_examples() {
        let t = table(&[(0, 1, int(1))]);
        let z = gv_generate(&t, 3, 2).unwrap();
        assert!(z
            .get(&b(1))
            .unwrap()
            .agrees_with(&series(&[0, 1], &[1, 2, 1], 3))
            .unwrap());
        // Z_2 = F_2 + F_1^2 / 2 with F_2 = -(1/2) q^2/(1-q^2)^2
        let f1 = series(&[0, 1], &[1, 2, 1], 3);
        let f2 = series(&[0, 0, -1], &[2, 0, -4, 0, 2], 3);
        let expect = &f2 + &(&f1 * &f1).scale(&rat(1, 2));
        assert!(z.get(&b(2)).unwrap().agrees_with(&expect).unwrap());
        assert_eq!(z.get(&b(2)).unwrap().coeff(2), Some(int(0)));
        assert_eq!(z.get(&b(2)).unwrap().coeff(3), Some(int(-2)));

        let empty = gv_generate(&GVTable::new(rank1()), 4, 3).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.constant(), &int(1));

        let z = gv_generate(&table(&[(1, 1, int(1))]), 4, 1).unwrap();
        assert!(z
            .get(&b(1))
            .unwrap()
            .agrees_with(&HalfLaurentSeries::one(4))
            .unwrap());
    }

    #[test]
    fn product_form_matches_exponential() {
        let tables = [
            table(&[(0, 1, int(1))]),
            table(&[(0, 1, int(2)), (1, 1, int(-1)), (2, 2, int(3))]),
            table(&[(3, 1, int(1)), (0, 3, int(-2))]),
            table(&[(0, 1, rat(1, 2))]),
        ];
        for t in &tables {
            let a = gv_generate(t, 4, 3).unwrap();
            let p = product_form(t, 4, 3).unwrap();
            assert!(a.agrees_with(&p).unwrap(), "{t:?}");
        }
        assert_eq!(
            product_form(&GVTable::new(rank1()), 3, 3).unwrap(),
            MultiClassSeries::one(rank1(), 3)
        );
    }

    #[test]
    fn integrality_examples() {
        let r = integrality_check(&table(&[(0, 1, rat(1, 2))]), 3, 1).unwrap();
        assert_eq!(r.series.first().map(|(_, n, _)| *n), Some(1));
        assert!(!r.is_integral());
        assert!(
            integrality_check(&table(&[(0, 1, int(3)), (2, 2, int(-1))]), 4, 3)
                .unwrap()
                .is_integral()
        );

        let mut z = MultiClassSeries::one(rank1(), 1);
        z.insert(b(1), series(&[0, 1], &[1, 2, 1], 4)).unwrap();
        let (t, r) = integrality_check_series(&z).unwrap();
        assert!(r.is_integral());
        assert_eq!(t, table(&[(0, 1, int(1))]));
    }

    #[test]
    fn vanishing_examples() {
        assert!(vanishing_check(&table(&[(0, 1, int(1))])).is_empty());
        assert_eq!(
            vanishing_check(&table(&[(-1, 1, int(1)), (0, 1, int(2))])).len(),
            1
        );
    }

    #[test]
    fn roundtrip_small() {
        let t = table(&[
            (0, 1, int(1)),
            (0, 2, int(-1)),
            (2, 1, int(5)),
            (1, 3, int(2)),
        ]);
        let (back, same) = gv_roundtrip(&t, 4).unwrap();
        assert!(same, "{back:?}");
    }
}
