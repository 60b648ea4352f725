//! JSON encodings of the objects exchanged with the command line.
//!
//! - scalar: a string `"p/q"` or `"p"`, or a JSON integer;
//! - series: `{"valuation": v, "precision": N, "coeffs": {"k": c, ...}}`
//!   with omitted exponents in `[v, N)` equal to zero;
//! - Lie series: the same with each coefficient a map `{"label": scalar}`;
//! - algebra: `{"type": "A", "rank": l}`;
//! - oper: `{"algebra": .., "order": n, "x": Lie series}` (`order` optional);
//! - canonical form: `{"algebra": .., "v": [series, ...]}`;
//! - gauge transform: `{"factors": [{"degree": d, "y": Lie series}, ...]}`;
//! - jet class: `{"jets": [[scalar, ...], ...]}`;
//! - jet weight: `{"n": n, "lambdas": [[scalar, ...], ...]}`;
//! - Cartan connection: `{"algebra": .., "twist": "+rho", "order": n,
//!   "u": Lie series}`.
//!
//! Parsers reject unknown shapes with [`Error::Parse`] and bound the size of
//! every window so that hostile input cannot force large allocations.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::freefield::{FieldExpression, FockVector};
use crate::liealg::{ChevalleyAlgebra, LieElement, LieSeries};
use crate::miura::{HConnection, Twist};
use crate::opers::{CanonicalForm, GaugeTransform, JetInvariantClass};
use crate::rational::{format_q, parse_q, Q};
use crate::series::{Coeff, JetPoly, TruncLaurent};
use crate::takiff::JetWeight;

/// Largest accepted `precision - valuation`, jet length or exponent size.
pub const MAX_WINDOW: i64 = 4096;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn integer(v: &Value, what: &str) -> Result<i64> {
    let k = v.as_i64().ok_or_else(|| perr(format!("{what} must be an integer")))?;
    if k.abs() > MAX_WINDOW * 16 {
        return Err(perr(format!("{what} = {k} is out of range")));
    }
    Ok(k)
}

fn count(v: &Value, what: &str) -> Result<usize> {
    let k = integer(v, what)?;
    if !(1..=MAX_WINDOW).contains(&k) {
        return Err(perr(format!("{what} must be in 1..={MAX_WINDOW}")));
    }
    Ok(k as usize)
}

pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

pub fn scalar_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| Q::from_integer(k.into()))
            .ok_or_else(|| perr(format!("scalar {n} is not an integer; use \"p/q\""))),
        _ => Err(perr("scalar must be a string or an integer")),
    }
}

pub fn scalar_to_json(x: &Q) -> Value {
    Value::String(format_q(x))
}

fn window_from_json<C: Coeff>(
    v: &Value,
    zero: C,
    coeff: impl Fn(&Value) -> Result<C>,
) -> Result<TruncLaurent<C>> {
    let obj = object(v, "series")?;
    let val = integer(field(obj, "valuation")?, "valuation")?;
    let prec = integer(field(obj, "precision")?, "precision")?;
    if prec <= val || prec - val > MAX_WINDOW {
        return Err(perr(format!("window [{val}, {prec}) must be nonempty and at most {MAX_WINDOW} long")));
    }
    let mut coeffs = vec![zero; (prec - val) as usize];
    if let Some(cs) = obj.get("coeffs") {
        for (key, c) in object(cs, "coeffs")? {
            let k: i64 = key.trim().parse().map_err(|_| perr(format!("exponent {key:?} is not an integer")))?;
            if k < val || k >= prec {
                return Err(perr(format!("exponent {k} outside the window [{val}, {prec})")));
            }
            coeffs[(k - val) as usize] = coeff(c)?;
        }
    }
    TruncLaurent::new(val, coeffs)
}

fn window_to_json<C: Coeff>(s: &TruncLaurent<C>, coeff: impl Fn(&C) -> Value) -> Value {
    let mut cs = Map::new();
    for (i, c) in s.coeffs().iter().enumerate() {
        if !c.is_zero_coeff() {
            cs.insert((s.valuation() + i as i64).to_string(), coeff(c));
        }
    }
    json!({"valuation": s.valuation(), "precision": s.precision(), "coeffs": cs})
}

pub fn series_from_json(v: &Value) -> Result<TruncLaurent> {
    window_from_json(v, Q::from_integer(0.into()), scalar_from_json)
}

pub fn series_to_json(s: &TruncLaurent) -> Value {
    window_to_json(s, scalar_to_json)
}

pub fn lie_element_from_json(alg: &ChevalleyAlgebra, v: &Value) -> Result<LieElement> {
    let mut x = alg.zero();
    for (label, c) in object(v, "Lie element")? {
        let k = alg.index_of(label).ok_or_else(|| perr(format!("unknown basis label {label:?}")))?;
        x.set(k, scalar_from_json(c)?);
    }
    Ok(x)
}

pub fn lie_element_to_json(alg: &ChevalleyAlgebra, x: &LieElement) -> Value {
    let mut obj = Map::new();
    for (k, c) in x.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            obj.insert(alg.label(k).to_string(), scalar_to_json(c));
        }
    }
    Value::Object(obj)
}

pub fn lie_series_from_json(alg: &ChevalleyAlgebra, v: &Value) -> Result<LieSeries> {
    window_from_json(v, alg.zero(), |c| lie_element_from_json(alg, c))
}

pub fn lie_series_to_json(alg: &ChevalleyAlgebra, s: &LieSeries) -> Value {
    window_to_json(s, |c| lie_element_to_json(alg, c))
}

pub fn algebra_from_json(v: &Value) -> Result<ChevalleyAlgebra> {
    let obj = object(v, "algebra")?;
    let kind = field(obj, "type")?.as_str().ok_or_else(|| perr("algebra type must be a string"))?;
    let rank = count(field(obj, "rank")?, "rank")?;
    ChevalleyAlgebra::build(kind, rank)
}

pub fn algebra_to_json(alg: &ChevalleyAlgebra) -> Value {
    json!({"type": alg.kind(), "rank": alg.rank()})
}

/// A parsed oper document.
#[derive(Clone, Debug)]
pub struct OperDoc {
    pub alg: ChevalleyAlgebra,
    pub order: Option<usize>,
    pub x: LieSeries,
}

pub fn oper_from_json(v: &Value) -> Result<OperDoc> {
    let obj = object(v, "oper")?;
    let alg = algebra_from_json(field(obj, "algebra")?)?;
    let order = obj.get("order").map(|o| count(o, "order")).transpose()?;
    let x = lie_series_from_json(&alg, field(obj, "x")?)?;
    Ok(OperDoc { alg, order, x })
}

pub fn oper_to_json(alg: &ChevalleyAlgebra, order: Option<usize>, x: &LieSeries) -> Value {
    let mut obj = Map::new();
    obj.insert("algebra".into(), algebra_to_json(alg));
    if let Some(n) = order {
        obj.insert("order".into(), json!(n));
    }
    obj.insert("x".into(), lie_series_to_json(alg, x));
    Value::Object(obj)
}

pub fn canonical_from_json(v: &Value) -> Result<(ChevalleyAlgebra, CanonicalForm)> {
    let obj = object(v, "canonical form")?;
    let alg = algebra_from_json(field(obj, "algebra")?)?;
    let v = array(field(obj, "v")?, "v")?
        .iter()
        .map(series_from_json)
        .collect::<Result<Vec<_>>>()?;
    let expected = alg.vcan().vectors.len();
    if v.len() != expected {
        return Err(perr(format!("expected {expected} canonical coordinates, got {}", v.len())));
    }
    Ok((alg, CanonicalForm { v }))
}

pub fn canonical_to_json(alg: &ChevalleyAlgebra, c: &CanonicalForm) -> Value {
    json!({"algebra": algebra_to_json(alg), "v": c.v.iter().map(series_to_json).collect::<Vec<_>>()})
}

pub fn gauge_from_json(alg: &ChevalleyAlgebra, v: &Value) -> Result<GaugeTransform> {
    let obj = object(v, "gauge transform")?;
    let factors = array(field(obj, "factors")?, "factors")?
        .iter()
        .map(|f| {
            let f = object(f, "factor")?;
            let d = integer(field(f, "degree")?, "degree")?;
            Ok((d, lie_series_from_json(alg, field(f, "y")?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    GaugeTransform::new(alg, factors).map_err(|e| perr(e.to_string()))
}

pub fn gauge_to_json(alg: &ChevalleyAlgebra, s: &GaugeTransform) -> Value {
    let factors: Vec<Value> = s
        .factors()
        .iter()
        .map(|(d, y)| json!({"degree": d, "y": lie_series_to_json(alg, y)}))
        .collect();
    json!({ "factors": factors })
}

fn scalar_rows(v: &Value, what: &str) -> Result<Vec<Vec<Q>>> {
    let rows = array(v, what)?;
    if rows.len() as i64 > MAX_WINDOW {
        return Err(perr(format!("{what} has too many rows")));
    }
    rows.iter()
        .map(|row| {
            let row = array(row, what)?;
            if row.is_empty() || row.len() as i64 > MAX_WINDOW {
                return Err(perr(format!("{what} rows must have 1..={MAX_WINDOW} entries")));
            }
            row.iter().map(scalar_from_json).collect()
        })
        .collect()
}

fn rows_to_json(rows: &[Vec<Q>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect())
}

pub fn class_from_json(v: &Value) -> Result<JetInvariantClass> {
    let obj = object(v, "class")?;
    let rows = scalar_rows(field(obj, "jets")?, "jets")?;
    if rows.is_empty() {
        return Err(perr("a class needs at least one jet"));
    }
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(perr("all jets must have the same length"));
    }
    let jets = rows.into_iter().map(JetPoly::new).collect::<Result<Vec<_>>>()?;
    Ok(JetInvariantClass { jets })
}

pub fn class_to_json(c: &JetInvariantClass) -> Value {
    let rows: Vec<Vec<Q>> = c.jets.iter().map(|j| j.coeffs().to_vec()).collect();
    json!({ "jets": rows_to_json(&rows) })
}

pub fn jet_weight_from_json(v: &Value) -> Result<JetWeight> {
    let obj = object(v, "jet weight")?;
    let n = count(field(obj, "n")?, "n")?;
    let rows = scalar_rows(field(obj, "lambdas")?, "lambdas")?;
    if rows.len() != n {
        return Err(perr(format!("expected {n} weights, got {}", rows.len())));
    }
    let rank = rows[0].len();
    if rows.iter().any(|r| r.len() != rank) {
        return Err(perr("all weights must have the same rank"));
    }
    JetWeight::new(rows)
}

pub fn jet_weight_to_json(w: &JetWeight) -> Value {
    json!({"n": w.n(), "lambdas": rows_to_json(w.lambdas())})
}

pub fn connection_from_json(v: &Value) -> Result<(ChevalleyAlgebra, HConnection)> {
    let obj = object(v, "connection")?;
    let alg = algebra_from_json(field(obj, "algebra")?)?;
    let twist = Twist::parse(field(obj, "twist")?.as_str().ok_or_else(|| perr("twist must be a string"))?)?;
    let order = count(field(obj, "order")?, "order")?;
    let u = lie_series_from_json(&alg, field(obj, "u")?)?;
    let conn = HConnection::new(&alg, twist, order, u).map_err(|e| perr(e.to_string()))?;
    Ok((alg, conn))
}

pub fn connection_to_json(alg: &ChevalleyAlgebra, c: &HConnection) -> Value {
    json!({
        "algebra": algebra_to_json(alg),
        "twist": c.twist.as_str(),
        "order": c.order,
        "u": lie_series_to_json(alg, &c.u),
    })
}

/// A Fock vector as a map from monomial to coefficient; the empty key is
/// the vacuum.
pub fn fock_vector_to_json(v: &FockVector) -> Value {
    let mut obj = Map::new();
    for (m, c) in v.terms() {
        let key: Vec<String> = m.iter().map(|(x, e)| if *e == 1 { x.to_string() } else { format!("{x}^{e}") }).collect();
        obj.insert(key.join(" "), scalar_to_json(c));
    }
    Value::Object(obj)
}

/// A field expression as a list of `{"coeff": c, "factors": [..]}` terms.
pub fn field_expression_to_json(e: &FieldExpression) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|t| json!({"coeff": scalar_to_json(&t.coeff), "factors": t.factors.iter().map(ToString::to_string).collect::<Vec<_>>()}))
        .collect();
    Value::Array(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn series_round_trip() {
        let s = TruncLaurent::new(-2, vec![q(1), q(0), qf(-3, 4), q(5)]).unwrap();
        let v = series_to_json(&s);
        assert_eq!(v.to_string(), r#"{"valuation":-2,"precision":2,"coeffs":{"-2":"1","0":"-3/4","1":"5"}}"#);
        assert_eq!(series_from_json(&v).unwrap(), s);
    }

    #[test]
    fn oper_round_trip() {
        let text = r#"{"algebra":{"type":"A","rank":1},"order":2,
            "x":{"valuation":0,"precision":3,"coeffs":{"0":{"h":"1/2"},"2":{"e":3}}}}"#;
        let doc = oper_from_json(&parse_text(text).unwrap()).unwrap();
        assert_eq!(doc.order, Some(2));
        assert_eq!(doc.x.coeff(0).unwrap().get(doc.alg.h(0)), &qf(1, 2));
        let back = oper_to_json(&doc.alg, doc.order, &doc.x);
        let again = oper_from_json(&back).unwrap();
        assert_eq!(again.x, doc.x);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "[]",
            r#"{"algebra":{"type":"B","rank":1},"x":{}}"#,
            r#"{"algebra":{"type":"A","rank":1},"x":{"valuation":0,"precision":0}}"#,
            r#"{"algebra":{"type":"A","rank":1},"x":{"valuation":0,"precision":99999999}}"#,
            r#"{"algebra":{"type":"A","rank":1},"x":{"valuation":0,"precision":2,"coeffs":{"5":{"e":1}}}}"#,
            r#"{"algebra":{"type":"A","rank":1},"x":{"valuation":0,"precision":2,"coeffs":{"0":{"q":1}}}}"#,
            r#"{"algebra":{"type":"A","rank":1},"x":{"valuation":0,"precision":2,"coeffs":{"0":{"e":"1/0"}}}}"#,
        ] {
            assert!(oper_from_json(&parse_text(text).unwrap()).is_err(), "{text}");
        }
        assert!(parse_text("{").is_err());
    }

    #[test]
    fn weights_and_classes() {
        let w = JetWeight::new(vec![vec![q(1), qf(1, 2)], vec![q(0), q(-3)]]).unwrap();
        assert_eq!(jet_weight_from_json(&jet_weight_to_json(&w)).unwrap(), w);
        let bad = json!({"n": 3, "lambdas": [["1"]]});
        assert!(jet_weight_from_json(&bad).is_err());
        let c = JetInvariantClass { jets: vec![JetPoly::new(vec![q(2), qf(7, 3)]).unwrap()] };
        assert_eq!(class_from_json(&class_to_json(&c)).unwrap(), c);
    }
}
