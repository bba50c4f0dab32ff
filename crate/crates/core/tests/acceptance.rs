//! The ten acceptance criteria. Each prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{legs, random_table};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vertexlab_core::dtvertex::{dt_counts, SearchLimits};
use vertexlab_core::gv::{
    extract_gv, gv_generate, gv_roundtrip, integrality_check, integrality_check_series,
    product_form, reconstruct_from_truncation, vd_membership_rf, GVTable,
};
use vertexlab_core::localcurve::{
    correspondence_check, pairs_contribution, taut_chern_integral, CurveData,
};
use vertexlab_core::partitions::{
    minimal_membership, renormalized_volume, renormalized_volume_at, volume_cutoff,
};
use vertexlab_core::ptvertex::{pt_euler_counts, pt_vertex, vertex_compare};
use vertexlab_core::qseries::{
    int, rf_symmetry_check, ClassLattice, ClassVector, HalfLaurentSeries, MultiClassSeries,
    Rational, RationalFunction,
};
use vertexlab_core::LegTriple;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn lim() -> SearchLimits {
    SearchLimits::default()
}

fn c1_empty_vertex() -> Outcome {
    let start = Instant::now();
    let got = dt_counts(&LegTriple::empty(), 8, lim())
        .map_err(|e| e.to_string())?
        .counts;
    // ∏ (1 - Q^n)^(-n) by repeated multiplication with 1/(1 - Q^n), n times.
    let mut prod = [0i64; 9];
    prod[0] = 1;
    for n in 1..=8 {
        for _ in 0..n {
            for k in n..=8 {
                prod[k] += prod[k - n];
            }
        }
    }
    let want: Vec<u64> = prod.iter().map(|&x| x as u64).collect();
    ensure(got == want, || format!("counts {got:?}, product {want:?}"))?;
    ensure(want == [1, 1, 3, 6, 13, 24, 48, 86, 160], || {
        format!("product {want:?}")
    })?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("{got:?}"))
}

fn naive_count(t: &LegTriple, l: usize) -> u64 {
    // Every l-subset of boxes in a bounding cube whose union with the
    // minimal configuration is downward closed.
    let n = i64::from(t.max_extent()) + l as i64;
    let cells: Vec<[i64; 3]> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
        .filter(|&w| !minimal_membership(t, w))
        .collect();
    let mut count = 0;
    let mut idx: Vec<usize> = (0..l).collect();
    if l == 0 {
        return 1;
    }
    if cells.len() < l {
        return 0;
    }
    loop {
        let set: Vec<[i64; 3]> = idx.iter().map(|&i| cells[i]).collect();
        let closed = set.iter().all(|&w| {
            (0..3).all(|j| {
                let mut p = w;
                p[j] -= 1;
                p[j] < 0 || minimal_membership(t, p) || set.contains(&p)
            })
        });
        if closed {
            count += 1;
        }
        let mut i = l;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if idx[i] < cells.len() - l + i {
                idx[i] += 1;
                for k in i + 1..l {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn c2_three_leg_dt() -> Outcome {
    let start = Instant::now();
    let t = legs("1;1;1");
    let got = dt_counts(&t, 4, lim()).map_err(|e| e.to_string())?.counts;
    ensure(got[..4] == [1, 3, 9, 22], || format!("raw counts {got:?}"))?;
    let naive: Vec<u64> = (0..=4).map(|l| naive_count(&t, l)).collect();
    ensure(got == naive, || {
        format!("search {got:?}, naive filter {naive:?}")
    })?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{got:?}"))
}

fn c3_three_leg_pt() -> Outcome {
    let start = Instant::now();
    let t = legs("1;1;1");
    let e = pt_euler_counts(&t, 8, lim())
        .map_err(|e| e.to_string())?
        .euler();
    let want: Vec<u64> = (0..=8u64)
        .map(|l| if l < 2 { l + 1 } else { l * (l - 1) / 2 + 3 })
        .collect();
    ensure(e == want, || format!("euler {e:?}, expected {want:?}"))?;
    let w = pt_vertex(&t, 8, lim()).map_err(|e| e.to_string())?.shift(2);
    let closed = RationalFunction::from_ints(&[1, 0, 0, 0, 0, -1], &[1, 2, 0, -2, -1])
        .and_then(|r| r.expand(8))
        .map_err(|e| e.to_string())?;
    ensure(w.hi_exp() == 8, || {
        format!("window ends at q^{}", w.hi_exp())
    })?;
    ensure(w.agrees_with(&closed).map_err(|e| e.to_string())?, || {
        format!("{w} vs {closed}")
    })?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{e:?}"))
}

fn c4_vertex_conjecture() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("1;;", 6),
        ("2;;", 6),
        ("1;1;", 6),
        ("2;1;", 6),
        ("1;1;1", 4),
        ("2;1;1", 4),
    ];
    for (s, order) in cases {
        let c = vertex_compare(&legs(s), order, lim()).map_err(|e| format!("{s}: {e}"))?;
        ensure(c.equal(), || {
            format!("legs {s} differ at {:?}", c.differences)
        })?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} leg triples", cases.len()))
}

fn c5_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let t = random_table(&mut rng, 4, 0..=3, 5);
        let (back, same) = gv_roundtrip(&t, 4).map_err(|e| format!("table {i}: {e}"))?;
        ensure(same, || format!("table {i}: {t:?} came back as {back:?}"))?;
    }
    Ok("100 tables".into())
}

fn random_integer_series<R: Rng>(rng: &mut R) -> MultiClassSeries {
    let lattice = ClassLattice::uniform(rng.gen_range(1..=2));
    let mut z = MultiClassSeries::one(lattice.clone(), 3);
    for beta in lattice.effective_classes(3) {
        let coeffs: Vec<Rational> = (0..6).map(|_| int(rng.gen_range(-5..=5))).collect();
        z.insert(
            beta,
            HalfLaurentSeries::from_int_coeffs(0, &coeffs, 5).expect("window"),
        )
        .expect("class");
    }
    z
}

fn c6_integrality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..50 {
        let t = random_table(&mut rng, 4, 0..=3, 5);
        let r = integrality_check(&t, 4, 4).map_err(|e| format!("table {i}: {e}"))?;
        ensure(r.is_integral(), || {
            format!("table {i}: non-integral series {:?}", r.series)
        })?;
        let a = product_form(&t, 4, 4).map_err(|e| e.to_string())?;
        let z = gv_generate(&t, 4, 4).map_err(|e| e.to_string())?;
        ensure(a.agrees_with(&z).map_err(|e| e.to_string())?, || {
            format!("table {i}: product form differs")
        })?;

        let z = random_integer_series(&mut rng);
        let (_, r) = integrality_check_series(&z).map_err(|e| format!("series {i}: {e}"))?;
        ensure(r.is_integral(), || {
            format!("series {i}: non-integral table {:?}", r.table)
        })?;
    }
    Ok("50 tables, 50 series".into())
}

fn c7_reconstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..20 {
        let t = random_table(&mut rng, 3, 0..=3, 5);
        let cutoff = t.max_degree();
        let z = gv_generate(&t, 6, cutoff).map_err(|e| e.to_string())?;
        let data = z.truncate(1).map_err(|e| e.to_string())?;
        let (back, regen) =
            reconstruct_from_truncation(&data, 6).map_err(|e| format!("table {i}: {e}"))?;
        ensure(back == t, || {
            format!("table {i}: {t:?} reconstructed as {back:?}")
        })?;
        ensure(regen.agrees_with(&z).map_err(|e| e.to_string())?, || {
            format!("table {i}: series differ")
        })?;
    }
    Ok("20 tables".into())
}

fn c8_local_curve() -> Outcome {
    let p = pairs_contribution(CurveData::new(0, 0), 10).map_err(|e| e.to_string())?;
    let rf = RationalFunction::from_ints(&[0, 1], &[1, 2, 1])
        .and_then(|r| r.expand(10))
        .map_err(|e| e.to_string())?;
    ensure(p.agrees_with(&rf).map_err(|e| e.to_string())?, || {
        format!("{p}")
    })?;
    for g in 0..=4u32 {
        for l in -4..=4 {
            let base = 1 - i64::from(g);
            let s =
                pairs_contribution(CurveData::new(g, l), base + 6).map_err(|e| e.to_string())?;
            for d in 0..=6u64 {
                let c = s.coeff(base + d as i64).unwrap_or_default();
                ensure(c == taut_chern_integral(g, l, d), || {
                    format!("g={g} l={l} d={d}: {c}")
                })?;
            }
        }
    }
    for g in 0..=4u32 {
        let s = pairs_contribution(CurveData::new(g, 0), 4).map_err(|e| e.to_string())?;
        let mut f = MultiClassSeries::zero(ClassLattice::uniform(1), 1);
        f.insert(ClassVector::new(vec![1]), s)
            .map_err(|e| e.to_string())?;
        let t = extract_gv(&f).map_err(|e| e.to_string())?;
        let mut want = GVTable::new(ClassLattice::uniform(1));
        want.insert(i64::from(g), ClassVector::new(vec![1]), int(1))
            .map_err(|e| e.to_string())?;
        ensure(t == want, || format!("g={g}: extracted {t:?}"))?;
    }
    for g in 0..=2u32 {
        for l in 0..=2 {
            let c = correspondence_check(CurveData::new(g, l), 8).map_err(|e| e.to_string())?;
            ensure(c.equal(), || {
                format!(
                    "correspondence (g={g}, l={l}) differs at {:?}",
                    c.differences
                )
            })?;
        }
    }
    Ok("pairs, Chern integrals, extraction, correspondence".into())
}

fn c9_psi() -> Outcome {
    let psi = RationalFunction::from_ints(&[0, 1], &[1, 1, 1]).map_err(|e| e.to_string())?;
    for d in 1..=3 {
        let m = vd_membership_rf(&psi, d, 12).map_err(|e| e.to_string())?;
        ensure(!m.member, || {
            format!("Ψ reported in V_{d} with witness {:?}", m.witness)
        })?;
    }
    ensure(rf_symmetry_check(&psi), || "Ψ reported asymmetric".into())?;
    Ok("excluded from V_1, V_2, V_3; symmetric".into())
}

fn c10_structure() -> Outcome {
    let test_legs = [
        ";;", "1;;", "2;;", "1;1;", "2;1;", "1;1;1", "2;1;1", "2,1;1;", "2;2;2", "1,1;2;1",
    ];
    for s in test_legs {
        let t = legs(s);
        let v = renormalized_volume(&t).map_err(|e| format!("{s}: {e}"))?;
        let n = volume_cutoff(&t);
        for extra in 1..=3 {
            let w = renormalized_volume_at(&t, n + extra);
            ensure(w == v, || {
                format!("{s}: volume {v} at cutoff {n}, {w} at {}", n + extra)
            })?;
        }
        let e = pt_euler_counts(&t, 6, lim()).map_err(|e| format!("{s}: {e}"))?;
        for d in &e.lengths {
            ensure(d.is_sum_of_line_products(), || {
                format!(
                    "{s}, length {}: (t+1)-basis coefficients {:?}",
                    d.length, d.plus_one_coeffs
                )
            })?;
        }
    }
    Ok(format!("{} leg triples through length 6", test_legs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("DT empty vertex is MacMahon through 8", c1_empty_vertex),
        (
            "DT (1),(1),(1) raw counts and naive filter",
            c2_three_leg_dt,
        ),
        (
            "PT (1),(1),(1) Euler counts and closed form through 8",
            c3_three_leg_pt,
        ),
        ("DT = PT on the listed leg triples", c4_vertex_conjecture),
        ("GV roundtrip on 100 random tables", c5_roundtrip),
        ("integrality both ways and product form", c6_integrality),
        ("reconstruction from q^n, n <= 1", c7_reconstruction),
        ("local curve suite", c8_local_curve),
        ("Ψ exclusion and symmetry", c9_psi),
        ("structural self-checks", c10_structure),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{detail}] ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({t:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
