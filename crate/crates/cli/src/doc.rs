//! JSON documents for series, multi-class series and GV tables.
//!
//! Rationals travel as `"num/den"` strings in lowest terms. Series keys are
//! doubled exponents for `q`-series and plain exponents for `u`-series.

use serde_json::{json, Value};
use vertexlab_core::gv::GVTable;
use vertexlab_core::qseries::{
    ClassLattice, ClassVector, GaussianRational, HalfLaurentSeries, MultiClassSeries, Rational,
    UPowerSeries,
};
use vertexlab_core::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| bad(format!("bad rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| {
                bad(format!(
                    "rational {n} must be an integer or a \"num/den\" string"
                ))
            }),
        other => Err(bad(format!("expected a rational, got {other}"))),
    }
}

fn int_of(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| bad(format!("{what} must be an integer, got {v}")))
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| bad(format!("missing field {name:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn window_of(obj: &Value) -> Result<(i64, i64)> {
    let w = array(field(obj, "window")?, "window")?;
    if w.len() != 2 {
        return Err(bad("window must be [lo, hi]"));
    }
    Ok((
        int_of(&w[0], "window bound")?,
        int_of(&w[1], "window bound")?,
    ))
}

pub fn series_to_json(s: &HalfLaurentSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(k, c)| json!([k, rational_to_json(c)]))
        .collect();
    json!({ "terms": terms, "window": [s.lo_key(), s.hi_key()] })
}

pub fn series_from_json(v: &Value) -> Result<HalfLaurentSeries> {
    let (lo, hi) = window_of(v)?;
    let mut terms = Vec::new();
    let mut last = None;
    for t in array(field(v, "terms")?, "terms")? {
        let pair = array(t, "term")?;
        if pair.len() != 2 {
            return Err(bad("term must be [doubled_exponent, \"num/den\"]"));
        }
        let k = int_of(&pair[0], "exponent")?;
        if last.is_some_and(|p| p >= k) {
            return Err(bad("exponents must be strictly ascending"));
        }
        last = Some(k);
        terms.push((k, rational_from_json(&pair[1])?));
    }
    HalfLaurentSeries::from_terms(terms, lo, hi)
}

pub fn useries_to_json(s: &UPowerSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(k, c)| json!([k, rational_to_json(&c.re), rational_to_json(&c.im)]))
        .collect();
    json!({ "terms": terms, "window": [s.lo_key(), s.hi_key()] })
}

pub fn useries_from_json(v: &Value) -> Result<UPowerSeries> {
    let (lo, hi) = window_of(v)?;
    let mut terms = Vec::new();
    for t in array(field(v, "terms")?, "terms")? {
        let triple = array(t, "term")?;
        if triple.len() != 3 {
            return Err(bad("u-term must be [exponent, \"re\", \"im\"]"));
        }
        let c = GaussianRational::new(
            rational_from_json(&triple[1])?,
            rational_from_json(&triple[2])?,
        );
        terms.push((int_of(&triple[0], "exponent")?, c));
    }
    UPowerSeries::from_terms(terms, lo, hi)
}

fn class_to_json(b: &ClassVector) -> Value {
    json!(b.components())
}

fn class_from_json(v: &Value) -> Result<ClassVector> {
    let comps = array(v, "class")?
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| {
                    bad(format!(
                        "class components must be non-negative integers, got {x}"
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassVector::new(comps))
}

fn weights_from_json(v: Option<&Value>, rank: usize) -> Result<ClassLattice> {
    match v {
        None => Ok(ClassLattice::uniform(rank)),
        Some(w) => {
            let ws = array(w, "weights")?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| bad("weights must be positive"))
                })
                .collect::<Result<Vec<_>>>()?;
            ClassLattice::new(ws)
        }
    }
}

pub fn multiclass_to_json(z: &MultiClassSeries) -> Value {
    let classes: Vec<Value> = z
        .classes_by_degree()
        .iter()
        .map(|b| {
            let s = z.get(b).expect("listed class");
            let mut doc = series_to_json(s);
            doc["class"] = class_to_json(b);
            doc
        })
        .collect();
    json!({
        "weights": z.lattice().weights(),
        "cutoff": z.cutoff(),
        "constant": rational_to_json(z.constant()),
        "classes": classes,
    })
}

pub fn multiclass_from_json(v: &Value) -> Result<MultiClassSeries> {
    let blocks = array(field(v, "classes")?, "classes")?;
    let rank = match (v.get("weights"), blocks.first()) {
        (Some(w), _) => array(w, "weights")?.len(),
        (None, Some(b)) => array(field(b, "class")?, "class")?.len(),
        (None, None) => 1,
    };
    let lattice = weights_from_json(v.get("weights"), rank)?;
    let mut classes = Vec::with_capacity(blocks.len());
    for b in blocks {
        classes.push((class_from_json(field(b, "class")?)?, series_from_json(b)?));
    }
    let cutoff = match v.get("cutoff") {
        Some(c) => c
            .as_u64()
            .ok_or_else(|| bad("cutoff must be a non-negative integer"))?,
        None => classes
            .iter()
            .map(|(b, _)| lattice.degree(b))
            .max()
            .unwrap_or(0),
    };
    let constant = match v.get("constant") {
        Some(c) => rational_from_json(c)?,
        None => Rational::from_integer(1.into()),
    };
    let mut z = MultiClassSeries::new(lattice, cutoff, constant);
    for (b, s) in classes {
        if z.get(&b).is_some() {
            return Err(bad(format!("class {b} listed twice")));
        }
        z.insert(b, s)?;
    }
    Ok(z)
}

pub fn table_to_json(t: &GVTable) -> Value {
    let entries: Vec<Value> = t
        .iter()
        .map(|(g, b, n)| json!([g, class_to_json(b), rational_to_json(n)]))
        .collect();
    let uniform = t.lattice().weights().iter().all(|&w| w == 1);
    if uniform && (t.lattice().rank() == 1 || !t.is_empty()) {
        Value::Array(entries)
    } else {
        json!({ "weights": t.lattice().weights(), "entries": entries })
    }
}

/// A bare entry list, or `{"weights": [...], "entries": [...]}` for
/// non-uniform degree weights.
pub fn table_from_json(v: &Value) -> Result<GVTable> {
    let (entries, weights) = match v {
        Value::Array(a) => (a, None),
        Value::Object(_) => (array(field(v, "entries")?, "entries")?, v.get("weights")),
        _ => {
            return Err(bad(
                "GV table must be an object or an array of [g, [class], \"n\"]",
            ))
        }
    };
    let mut parsed = Vec::with_capacity(entries.len());
    for e in entries {
        let e = array(e, "entry")?;
        if e.len() != 3 {
            return Err(bad("entry must be [g, [class], \"num/den\"]"));
        }
        parsed.push((
            int_of(&e[0], "genus")?,
            class_from_json(&e[1])?,
            rational_from_json(&e[2])?,
        ));
    }
    let rank = match weights {
        Some(w) => array(w, "weights")?.len(),
        None => parsed.first().map_or(1, |(_, b, _)| b.rank()),
    };
    let mut t = GVTable::new(weights_from_json(weights, rank)?);
    for (g, b, n) in parsed {
        if b.is_zero() {
            return Err(bad("GV entries need a nonzero class"));
        }
        t.insert(g, b, n)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vertexlab_core::qseries::{int, rat};

    #[test]
    fn rationals() {
        assert_eq!(rational_to_json(&rat(-6, 4)), json!("-3/2"));
        assert_eq!(rational_to_json(&int(5)), json!("5/1"));
        assert_eq!(rational_from_json(&json!("4/6")).unwrap(), rat(2, 3));
        assert_eq!(rational_from_json(&json!(-7)).unwrap(), int(-7));
        assert!(rational_from_json(&json!("1/0")).is_err());
        assert!(rational_from_json(&json!(0.5)).is_err());
    }

    #[test]
    fn series_roundtrip() {
        let s = HalfLaurentSeries::from_terms([(-1, rat(1, 2)), (4, int(-3))], -2, 8).unwrap();
        let back = series_from_json(&series_to_json(&s)).unwrap();
        assert_eq!(back, s);
        let unsorted = json!({"terms": [[2, "1/1"], [0, "1/1"]], "window": [0, 4]});
        assert!(series_from_json(&unsorted).is_err());
    }

    #[test]
    fn table_forms() {
        let bare = json!([[0, [1], "1/1"], [1, [2], "-2"]]);
        let t = table_from_json(&bare).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(table_from_json(&table_to_json(&t)).unwrap(), t);
        assert!(table_from_json(&json!([[0, [0], "1"]])).is_err());
    }
}
