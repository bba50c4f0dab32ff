//! Recovery of the full partition function from its coefficients of
//! `q^n`, `n <= 1`, assuming `n_{g,β} = 0` for `g < 0`.

use num_traits::One;

use super::bps::{gv_connected, gv_generate};
use super::phi::{bps_from_phi, genus_sign, phi_power, v0_decompose};
use super::GVTable;
use crate::error::{Error, Result};
use crate::qseries::{int, ClassVector, HalfLaurentSeries, MultiClassSeries};

/// Solves for the BPS numbers degree by degree and regenerates `Z`
/// through `q^hi`.
///
/// For a class `β` of degree `d`, the connected coefficient through `q^1`
/// is `Z_β` minus the `β` part of `exp` of the already known lower-degree
/// potential. After the multiple-cover terms of `β/r` are removed, the
/// coefficients of `q^n`, `n <= 1`, fix `n_{g,β}` for every `g >= 0`.
///
/// The regenerated series must reproduce every supplied coefficient;
/// otherwise the first offending class is reported.
pub fn reconstruct_from_truncation(
    data: &MultiClassSeries,
    hi: i64,
) -> Result<(GVTable, MultiClassSeries)> {
    if !data.constant().is_one() {
        return Err(Error::Domain(format!(
            "partition function must start with 1, got {}",
            data.constant()
        )));
    }
    let lattice = data.lattice().clone();
    let cutoff = data.cutoff();
    let mut table = GVTable::new(lattice.clone());
    let classes = lattice.effective_classes(cutoff);
    let mut start = 0;
    while start < classes.len() {
        let deg = lattice.degree(&classes[start]);
        let end = classes[start..]
            .iter()
            .position(|b| lattice.degree(b) != deg)
            .map_or(classes.len(), |i| start + i);
        let layer = &classes[start..end];
        let work = 1 + table.pole_density() * deg as i64;
        let lower = gv_connected(&table, work, deg)?.filter_classes(|b| lattice.degree(b) < deg);
        let nonlinear = lower.graded_exp()?;
        let mut solved = Vec::new();
        for beta in layer {
            let z = match data.get(beta) {
                Some(s) => s.truncate(1).map_err(|_| {
                    Error::InsufficientWindow(format!(
                        "class {beta}: data must reach q^1, ends at q^{}",
                        s.hi_exp()
                    ))
                })?,
                None => HalfLaurentSeries::zero(0, 2),
            };
            let mut f = match nonlinear.get(beta) {
                Some(e) => &z - &e.truncate(1)?,
                None => z,
            };
            for r in (2..=beta.divisibility()).filter(|r| beta.divisibility() % r == 0) {
                let gamma = beta.divided(r).expect("r divides β");
                for (g, n) in table.class_entries(&gamma) {
                    let c = genus_sign(g) * n / int(i64::from(r));
                    f = &f - &phi_power(g - 1, r, 1).scale(&c);
                }
            }
            let d = v0_decompose(&f).map_err(|e| locus(beta, e))?;
            solved.push((beta.clone(), bps_from_phi(&d)));
        }
        for (beta, entries) in solved {
            for (g, n) in entries {
                table.insert(g, beta.clone(), n)?;
            }
        }
        start = end;
    }
    let check_hi = data
        .iter()
        .map(|(_, s)| s.hi_exp())
        .max()
        .unwrap_or(1)
        .max(hi);
    let regenerated = gv_generate(&table, check_hi, cutoff)?;
    if let Some(beta) = regenerated.first_disagreement(data)? {
        return Err(Error::Consistency(format!(
            "reconstruction does not reproduce the supplied coefficients of class {beta}"
        )));
    }
    Ok((table, regenerated.truncate(hi)?))
}

fn locus(beta: &ClassVector, e: Error) -> Error {
    match e {
        Error::Consistency(m) => Error::Consistency(format!("class {beta}: {m}")),
        Error::InsufficientWindow(m) => Error::InsufficientWindow(format!("class {beta}: {m}")),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ClassLattice;

    fn roundtrip(table: &GVTable, cutoff: u64, hi: i64) {
        let z = gv_generate(table, hi, cutoff).unwrap();
        let (t, regen) = reconstruct_from_truncation(&z.truncate(1).unwrap(), hi).unwrap();
        assert_eq!(&t, table);
        assert!(regen.agrees_with(&z).unwrap());
    }

    #[test]
    fn primitive_class() {
        let mut t = GVTable::new(ClassLattice::uniform(1));
        t.insert(0, ClassVector::new(vec![1]), int(1)).unwrap();
        t.insert(1, ClassVector::new(vec![1]), int(2)).unwrap();
        roundtrip(&t, 1, 6);
    }

    #[test]
    fn double_cover() {
        let mut t = GVTable::new(ClassLattice::uniform(1));
        t.insert(0, ClassVector::new(vec![1]), int(1)).unwrap();
        t.insert(0, ClassVector::new(vec![2]), int(-1)).unwrap();
        roundtrip(&t, 3, 6);
    }

    #[test]
    fn higher_genus_and_two_classes() {
        let mut t = GVTable::new(ClassLattice::uniform(2));
        t.insert(2, ClassVector::new(vec![1, 0]), int(1)).unwrap();
        t.insert(0, ClassVector::new(vec![0, 1]), int(-2)).unwrap();
        t.insert(3, ClassVector::new(vec![1, 1]), int(3)).unwrap();
        t.insert(0, ClassVector::new(vec![2, 0]), int(1)).unwrap();
        roundtrip(&t, 2, 5);
    }

    #[test]
    fn zero_data() {
        let z = MultiClassSeries::one(ClassLattice::uniform(1), 3);
        let (t, regen) = reconstruct_from_truncation(&z, 4).unwrap();
        assert!(t.is_empty());
        assert!(regen.is_empty());
    }

    #[test]
    fn inconsistent_data_is_reported() {
        let mut t = GVTable::new(ClassLattice::uniform(1));
        t.insert(0, ClassVector::new(vec![1]), int(1)).unwrap();
        let mut z = gv_generate(&t, 3, 2).unwrap();
        let b2 = ClassVector::new(vec![2]);
        let s = z.get(&b2).unwrap().clone();
        let bumped = &s + &HalfLaurentSeries::monomial(3, int(1), 3);
        z.insert(b2, bumped).unwrap();
        let err = reconstruct_from_truncation(&z, 3).unwrap_err();
        assert!(err.is_consistency(), "{err}");
    }
}
