//! Versioned JSON documents for scalars, polynomials, representations and
//! results.

use crate::engine::TapResult;
use crate::error::{Error, Result};
use crate::group::Presentation;
use crate::laurent::{LaurentPoly, Mat2};
use crate::repn::{validate_named, Representation};
use crate::scalar::{AlgebraicExt, ComplexFloat, Field, GaussianRational, Modulus, UPoly};
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

pub const POLYNOMIAL_SCHEMA: &str = "tapkit.polynomial/1";
pub const REPRESENTATION_SCHEMA: &str = "tapkit.representation/1";
pub const RESULT_SCHEMA: &str = "tapkit.result/1";

/// Reserved keys of a representation document; every other key is a generator.
const SCHEMA_KEY: &str = "$schema";
const FIELD_KEY: &str = "$field";

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Shared state while reading scalars: the extension modulus seen so far.
#[derive(Default, Debug)]
pub struct ScalarContext {
    modulus: Option<Arc<Modulus>>,
}

impl ScalarContext {
    pub fn with_modulus(modulus: Arc<Modulus>) -> Self {
        ScalarContext {
            modulus: Some(modulus),
        }
    }

    fn modulus_for(
        &mut self,
        poly: UPoly<GaussianRational>,
        root: Option<Complex64>,
    ) -> Result<Arc<Modulus>> {
        let fresh = Modulus::new(poly, root)?;
        match &self.modulus {
            Some(m) if m.poly() == fresh.poly() => Ok(m.clone()),
            Some(_) => Err(bad("scalars use different extension moduli")),
            None => {
                self.modulus = Some(fresh.clone());
                Ok(fresh)
            }
        }
    }
}

/// Scalars with a JSON literal form.
pub trait JsonScalar: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, ctx: &mut ScalarContext) -> Result<Self>;
}

fn rational_literal(v: &Value) -> Result<num_rational::BigRational> {
    match v {
        Value::String(s) => GaussianRational::parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(num_rational::BigRational::from_integer(
            n.as_i64().unwrap().into(),
        )),
        _ => Err(bad(format!("expected a rational string, got {v}"))),
    }
}

fn float_literal(v: &Value) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| bad(format!("expected a number, got {v}")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("expected an object, got {v}")))
}

fn part<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| bad(format!("missing `{key}`")))
}

impl JsonScalar for GaussianRational {
    fn to_json(&self) -> Value {
        let re = GaussianRational::rational_to_string(&self.re);
        if self.is_real() {
            return Value::String(re);
        }
        json!({ "re": re, "im": GaussianRational::rational_to_string(&self.im) })
    }

    fn from_json(v: &Value, _: &mut ScalarContext) -> Result<Self> {
        if let Ok(q) = rational_literal(v) {
            return Ok(GaussianRational::from_rational(q));
        }
        let o = object(v)?;
        let im = o
            .get("im")
            .map(rational_literal)
            .transpose()?
            .unwrap_or_default();
        Ok(GaussianRational::new(rational_literal(part(o, "re")?)?, im))
    }
}

impl JsonScalar for ComplexFloat {
    fn to_json(&self) -> Value {
        json!({ "re": self.0.re, "im": self.0.im })
    }

    fn from_json(v: &Value, _: &mut ScalarContext) -> Result<Self> {
        if let Some(x) = v.as_f64() {
            return Ok(ComplexFloat::new(x, 0.0));
        }
        let o = object(v)?;
        let im = o.get("im").map(float_literal).transpose()?.unwrap_or(0.0);
        Ok(ComplexFloat::new(float_literal(part(o, "re")?)?, im))
    }
}

fn upoly_json(p: &UPoly<GaussianRational>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| c.to_json()).collect())
}

fn upoly_from(v: &Value, ctx: &mut ScalarContext) -> Result<UPoly<GaussianRational>> {
    let items = v
        .as_array()
        .ok_or_else(|| bad("expected a coefficient list"))?;
    Ok(UPoly::new(
        items
            .iter()
            .map(|c| GaussianRational::from_json(c, ctx))
            .collect::<Result<_>>()?,
    ))
}

impl JsonScalar for AlgebraicExt {
    fn to_json(&self) -> Value {
        if self.residue().degree().unwrap_or(0) == 0 {
            return self.residue().coeff(0).to_json();
        }
        let mut o = Map::new();
        o.insert("poly".into(), upoly_json(self.residue()));
        if let Some(m) = self.modulus() {
            o.insert("modulus".into(), upoly_json(m.poly()));
            if let Some(r) = m.root() {
                o.insert("root".into(), ComplexFloat(r).to_json());
            }
        }
        Value::Object(o)
    }

    fn from_json(v: &Value, ctx: &mut ScalarContext) -> Result<Self> {
        let Some((o, poly)) = v.as_object().and_then(|o| Some((o, o.get("poly")?))) else {
            return Ok(AlgebraicExt::constant(GaussianRational::from_json(v, ctx)?));
        };
        let residue = upoly_from(poly, ctx)?;
        match o.get("modulus") {
            Some(m) => {
                let root = o
                    .get("root")
                    .map(|r| ComplexFloat::from_json(r, ctx))
                    .transpose()?
                    .map(|c| c.0);
                let poly = upoly_from(m, ctx)?;
                let modulus = ctx.modulus_for(poly, root)?;
                AlgebraicExt::new(residue, &modulus)
            }
            None if residue.degree().unwrap_or(0) == 0 => {
                Ok(AlgebraicExt::constant(residue.coeff(0)))
            }
            None => match ctx.modulus.clone() {
                Some(m) => AlgebraicExt::new(residue, &m),
                None => Err(bad("non-constant residue without a modulus")),
            },
        }
    }
}

/// Field name implied by a scalar literal: exact, algebraic or float.
pub fn literal_field(v: &Value) -> Option<&'static str> {
    match v {
        Value::String(_) => Some(GaussianRational::NAME),
        Value::Number(n) if n.is_i64() => None,
        Value::Number(_) => Some(ComplexFloat::NAME),
        Value::Object(o) if o.contains_key("poly") => Some(AlgebraicExt::NAME),
        Value::Object(o) => o.get("re").and_then(literal_field),
        _ => None,
    }
}

pub fn matrix_to_json<F: JsonScalar>(m: &Mat2<F>) -> Value {
    json!([
        [m.e[0].to_json(), m.e[1].to_json()],
        [m.e[2].to_json(), m.e[3].to_json()]
    ])
}

pub fn matrix_from_json<F: JsonScalar>(v: &Value, ctx: &mut ScalarContext) -> Result<Mat2<F>> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| bad("a matrix is [[a, b], [c, d]]"))?;
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let row = row
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| bad("a matrix row has two entries"))?;
        for x in row {
            e.push(F::from_json(x, ctx)?);
        }
    }
    let [a, b, c, d]: [F; 4] = e.try_into().map_err(|_| bad("matrix has four entries"))?;
    Ok(Mat2::new(a, b, c, d))
}

fn coeffs_json<F: JsonScalar>(p: &LaurentPoly<F>) -> Value {
    let mut o = Map::new();
    for (e, c) in p.terms() {
        if !c.is_zero() {
            o.insert(e.to_string(), c.to_json());
        }
    }
    Value::Object(o)
}

fn coeffs_from<F: JsonScalar>(v: &Value, ctx: &mut ScalarContext) -> Result<LaurentPoly<F>> {
    let mut terms = Vec::new();
    for (k, c) in object(v)? {
        let e: i64 = k
            .parse()
            .map_err(|_| bad(format!("exponent key `{k}` is not an integer")))?;
        terms.push((e, F::from_json(c, ctx)?));
    }
    Ok(LaurentPoly::from_terms(terms))
}

fn check_schema(o: &Map<String, Value>, key: &str, want: &str) -> Result<()> {
    match o.get(key).and_then(Value::as_str) {
        Some(s) if s == want => Ok(()),
        Some(s) => Err(bad(format!("unsupported schema `{s}`, expected `{want}`"))),
        None => Ok(()),
    }
}

pub fn polynomial_to_json<F: JsonScalar>(p: &LaurentPoly<F>) -> Value {
    json!({ SCHEMA_KEY: POLYNOMIAL_SCHEMA, "field": F::NAME, "coeffs": coeffs_json(p) })
}

pub fn polynomial_from_json<F: JsonScalar>(v: &Value) -> Result<LaurentPoly<F>> {
    let o = object(v)?;
    check_schema(o, SCHEMA_KEY, POLYNOMIAL_SCHEMA)?;
    coeffs_from(part(o, "coeffs")?, &mut ScalarContext::default())
}

pub fn representation_to_json<F: JsonScalar>(rep: &Representation<F>) -> Value {
    let mut o = Map::new();
    o.insert(SCHEMA_KEY.into(), REPRESENTATION_SCHEMA.into());
    o.insert(FIELD_KEY.into(), F::NAME.into());
    for (name, m) in rep.names().iter().zip(rep.images()) {
        o.insert(name.clone(), matrix_to_json(m));
    }
    Value::Object(o)
}

/// Field name declared by a representation document, or implied by its
/// first scalar literal.
pub fn representation_field(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if let Some(f) = o.get(FIELD_KEY).and_then(Value::as_str) {
        return Some(f.to_string());
    }
    o.iter()
        .filter(|(k, _)| !k.starts_with('$'))
        .flat_map(|(_, m)| m.as_array().into_iter().flatten())
        .flat_map(|r| r.as_array().into_iter().flatten())
        .find_map(literal_field)
        .map(String::from)
}

/// Reads and validates a representation of `p`.
pub fn representation_from_json<F: JsonScalar>(
    p: &Presentation,
    v: &Value,
    tol: f64,
) -> Result<Representation<F>> {
    representation_from_json_in(p, v, tol, &mut ScalarContext::default())
}

pub fn representation_from_json_in<F: JsonScalar>(
    p: &Presentation,
    v: &Value,
    tol: f64,
    ctx: &mut ScalarContext,
) -> Result<Representation<F>> {
    let o = object(v)?;
    check_schema(o, SCHEMA_KEY, REPRESENTATION_SCHEMA)?;
    if let Some(f) = o.get(FIELD_KEY).and_then(Value::as_str) {
        if f != F::NAME {
            return Err(bad(format!(
                "representation is over `{f}`, expected `{}`",
                F::NAME
            )));
        }
    }
    let mut named = BTreeMap::new();
    for (k, m) in o.iter().filter(|(k, _)| !k.starts_with('$')) {
        named.insert(k.clone(), matrix_from_json(m, ctx)?);
    }
    validate_named(p, &named, tol)
}

pub fn result_to_json<F: JsonScalar>(r: &TapResult<F>, tol: f64) -> Value {
    let mut o = Map::new();
    o.insert(SCHEMA_KEY.into(), RESULT_SCHEMA.into());
    o.insert("field".into(), F::NAME.into());
    o.insert(
        "method".into(),
        serde_json::to_value(r.method).expect("method serializes"),
    );
    o.insert("column".into(), r.column.clone().into());
    o.insert("polynomial".into(), polynomial_to_json(&r.polynomial));
    o.insert(
        "denominator".into(),
        r.denominator
            .as_ref()
            .map(polynomial_to_json)
            .unwrap_or(Value::Null),
    );
    o.insert("degree".into(), r.degree.into());
    o.insert("leading".into(), r.leading.to_json());
    o.insert("trailing".into(), r.trailing.to_json());
    o.insert("monic".into(), r.is_monic(tol).into());
    o.insert("remainder_norm".into(), r.remainder_norm.into());
    Value::Object(o)
}

/// Canonical text of a JSON value: pretty printed with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_text(s: &str) -> Result<Value> {
    serde_json::from_str(s)
        .map_err(|e| bad(format!("line {} column {}: {e}", e.line(), e.column())))
}
