//! JSON element files and entry parsing shared by the CLI and tests.
//!
//! An element file looks like
//! `{"model": "disk:1", "terms": [{"index": {"P": [1], "Q": [0]}, "re": "1/2", "im": "0"}]}`.
//! Gaussian entries are accepted as a rational string, an integer, a `[re, im]` pair
//! or an object with `re` and `im`.

use serde_json::{json, Map, Value};

use crate::algebra::{Element, StructureModel};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, GaussRat, MultiIndex, Rational};
use crate::symmetry::{CMatrix, GnsVector};

fn parse_err(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {msg}"))
}

/// A rational given as `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational_value(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(at, e)),
        Value::Number(n) => match n.as_i64() {
            Some(k) => Ok(Rational::from_integer(k.into())),
            None => Err(parse_err(at, format!("{n} is not an integer; write fractions as \"p/q\""))),
        },
        other => Err(parse_err(at, format!("expected a rational, found {other}"))),
    }
}

pub fn parse_gauss(v: &Value, at: &str) -> Result<GaussRat> {
    match v {
        Value::Array(xs) if xs.len() == 2 => Ok(GaussRat::new(
            parse_rational_value(&xs[0], &format!("{at}[0]"))?,
            parse_rational_value(&xs[1], &format!("{at}[1]"))?,
        )),
        Value::Array(xs) => Err(parse_err(at, format!("expected [re, im], found {} entries", xs.len()))),
        Value::Object(m) => Ok(GaussRat::new(opt_part(m, "re", at)?, opt_part(m, "im", at)?)),
        _ => Ok(GaussRat::real(parse_rational_value(v, at)?)),
    }
}

fn opt_part(m: &Map<String, Value>, key: &str, at: &str) -> Result<Rational> {
    match m.get(key) {
        Some(x) => parse_rational_value(x, &format!("{at}.{key}")),
        None => Ok(Rational::from_integer(0.into())),
    }
}

pub fn gauss_json(c: &GaussRat) -> Value {
    json!({ "re": format_rational(&c.re), "im": format_rational(&c.im) })
}

/// Serializes an element with indices in basis order.
pub fn element_to_json<M: StructureModel>(model: &M, a: &Element<M::Index>) -> Value {
    let terms: Vec<Value> = a
        .iter()
        .map(|(i, c)| json!({ "index": model.index_json(i), "re": format_rational(&c.re), "im": format_rational(&c.im) }))
        .collect();
    json!({ "model": model.name(), "terms": terms })
}

/// Parses an element file; a `model` field, when present, must name `model`.
pub fn element_from_json<M: StructureModel>(model: &M, v: &Value) -> Result<Element<M::Index>> {
    let obj = v.as_object().ok_or_else(|| parse_err("element", "expected an object with a \"terms\" array"))?;
    if let Some(name) = obj.get("model") {
        let name = name.as_str().ok_or_else(|| parse_err("model", "expected a string"))?;
        if name != model.name() {
            return Err(Error::InvalidArgument(format!("element file is for model {name}, not {}", model.name())));
        }
    }
    let terms = obj.get("terms").and_then(Value::as_array).ok_or_else(|| parse_err("terms", "missing or not an array"))?;
    let mut out = Element::zero();
    for (k, t) in terms.iter().enumerate() {
        let at = format!("terms[{k}]");
        let t = t.as_object().ok_or_else(|| parse_err(&at, "expected an object"))?;
        let idx = t.get("index").ok_or_else(|| parse_err(&at, "missing field \"index\""))?;
        let i = model.parse_index(idx).map_err(|e| match e {
            Error::Parse(m) => parse_err(&format!("{at}.index"), m),
            other => other,
        })?;
        let c = GaussRat::new(opt_part(t, "re", &at)?, opt_part(t, "im", &at)?);
        out.add_term(i, c);
    }
    Ok(out)
}

/// A square matrix given as rows of Gaussian entries.
pub fn parse_matrix(v: &Value) -> Result<CMatrix> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix", "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| parse_err(&format!("matrix[{i}]"), "expected an array"))?;
        out.push(r.iter().enumerate().map(|(j, x)| parse_gauss(x, &format!("matrix[{i}][{j}]"))).collect::<Result<Vec<_>>>()?);
    }
    CMatrix::from_rows(out).ok_or_else(|| parse_err("matrix", "not a non-empty square matrix"))
}

/// Reads `[{"Q": [..], "re": .., "im": ..}, ..]`; a missing `im` is zero.
pub fn parse_gns_vector(v: &Value) -> Result<GnsVector> {
    let terms = v.as_array().ok_or_else(|| parse_err("gns vector", "expected an array of terms"))?;
    let mut out = GnsVector::zero();
    for (k, t) in terms.iter().enumerate() {
        let at = format!("terms[{k}]");
        let q = t.get("Q").ok_or_else(|| parse_err(&at, "missing field `Q`"))?;
        let q: MultiIndex = serde_json::from_value(q.clone()).map_err(|e| parse_err(&format!("{at}.Q"), e))?;
        out.add_term(q, parse_gauss(t, &at)?);
    }
    Ok(out)
}

pub fn gns_vector_json(psi: &GnsVector) -> Value {
    serde_json::to_value(psi).expect("gns vector serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{DiskIndex, DiskModel};
    use crate::exact::rational::rat;
    use crate::exact::MultiIndex;
    use crate::zoo::{PolyBasis, PolyModel};

    #[test]
    fn gauss_forms() {
        let want = GaussRat::new(rat(1, 2), rat(-3, 1));
        assert_eq!(parse_gauss(&json!(["1/2", -3]), "x").unwrap(), want);
        assert_eq!(parse_gauss(&json!({"re": "1/2", "im": "-3"}), "x").unwrap(), want);
        assert_eq!(parse_gauss(&json!("5/4"), "x").unwrap(), GaussRat::real(rat(5, 4)));
        assert!(parse_gauss(&json!(0.5), "x").is_err());
    }

    #[test]
    fn element_round_trip() {
        let model = DiskModel::new(1, rat(1, 2)).unwrap();
        let d = |p: u32, q: u32| DiskIndex::new(MultiIndex::new(vec![p]), MultiIndex::new(vec![q])).unwrap();
        let a = Element::from_terms([(d(1, 0), GaussRat::new(rat(1, 2), rat(2, 3))), (d(0, 2), GaussRat::from_ints(-1, 0))]);
        let v = element_to_json(&model, &a);
        assert_eq!(element_from_json(&model, &v).unwrap(), a);
        assert_eq!(element_to_json(&model, &element_from_json(&model, &v).unwrap()), v);
    }

    #[test]
    fn errors_name_the_field() {
        let model = PolyModel::new(PolyBasis::Monomial);
        let bad = json!({"terms": [{"index": 1, "re": "1"}, {"index": "x", "re": "1"}]});
        let msg = element_from_json(&model, &bad).unwrap_err().to_string();
        assert!(msg.contains("terms[1].index"), "{msg}");
        let wrong = json!({"model": "disk:1", "terms": []});
        assert!(matches!(element_from_json(&model, &wrong), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn matrices() {
        let m = parse_matrix(&json!([["5/4", "3/4"], ["3/4", "5/4"]])).unwrap();
        assert_eq!(m.size(), 2);
        assert!(parse_matrix(&json!([["1", "0"]])).is_err());
    }
}
