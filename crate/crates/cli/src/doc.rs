use crate::error::CliError;
use crate::family::Family;
use serde_json::{json, Map, Value};
use std::fs;
use std::io::Read;
use std::path::Path;
use tapkit_core::group::{Presentation, PresentationJson};
use tapkit_core::json::{
    parse_text, representation_field, representation_from_json, representation_to_json, to_text,
};
use tapkit_core::repn::Representation;
use tapkit_core::scalar::{AlgebraicExt, ComplexFloat, Field, GaussianRational};

pub const PRESENTATION_SCHEMA: &str = "tapkit.presentation/1";

pub enum AnyRep {
    Exact(Representation<GaussianRational>),
    Algebraic(Representation<AlgebraicExt>),
    Float(Representation<ComplexFloat>),
}

#[macro_export]
macro_rules! with_rep {
    ($rep:expr, $r:ident => $body:expr) => {
        match $rep {
            $crate::doc::AnyRep::Exact($r) => $body,
            $crate::doc::AnyRep::Algebraic($r) => $body,
            $crate::doc::AnyRep::Float($r) => $body,
        }
    };
}

impl AnyRep {
    pub fn to_json(&self) -> Value {
        with_rep!(self, r => representation_to_json(r))
    }
}

/// Reads a file, or standard input for `None` and `-`.
pub fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Invalid(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

pub fn read_json(path: Option<&Path>) -> Result<Value, CliError> {
    let text = read_input(path)?;
    let what = path.map_or("standard input".into(), |p| p.display().to_string());
    parse_text(&text).map_err(|e| CliError::Invalid(format!("{what}: {e}")))
}

pub fn write_output(v: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = to_text(v);
    match out {
        Some(p) if p != Path::new("-") => fs::write(p, text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", p.display()))),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

pub struct KnotDoc {
    pub presentation: Presentation,
    pub family: Option<Family>,
}

pub fn presentation_doc(p: &Presentation, family: Option<&Family>) -> Value {
    let mut o = Map::new();
    o.insert("$schema".into(), PRESENTATION_SCHEMA.into());
    if let Some(f) = family {
        o.insert("family".into(), json!(f));
    }
    let j = p.to_json();
    o.insert("generators".into(), json!(j.generators));
    o.insert("relators".into(), json!(j.relators));
    o.insert("meridian".into(), json!(j.meridian));
    Value::Object(o)
}

pub fn knot_doc(v: &Value) -> Result<KnotDoc, CliError> {
    let mut o = v
        .as_object()
        .cloned()
        .ok_or_else(|| CliError::Invalid("presentation document must be an object".into()))?;
    if let Some(s) = o.remove("$schema") {
        if s != PRESENTATION_SCHEMA {
            return Err(CliError::Invalid(format!(
                "unsupported presentation schema {s}"
            )));
        }
    }
    let family = o
        .remove("family")
        .map(serde_json::from_value::<Family>)
        .transpose()
        .map_err(|e| CliError::Invalid(format!("family: {e}")))?;
    let j: PresentationJson = serde_json::from_value(Value::Object(o))
        .map_err(|e| CliError::Invalid(format!("presentation: {e}")))?;
    let presentation = Presentation::from_json(&j)?;
    if let Some(f) = &family {
        let built = f.build()?;
        if built.presentation() != &presentation {
            return Err(CliError::Invalid(
                "presentation does not match its family parameters".into(),
            ));
        }
    }
    Ok(KnotDoc {
        presentation,
        family,
    })
}

/// Reads a representation document over the field it declares.
pub fn read_rep(p: &Presentation, v: &Value, tol: f64) -> Result<AnyRep, CliError> {
    let field = representation_field(v).unwrap_or_else(|| GaussianRational::NAME.into());
    Ok(match field.as_str() {
        GaussianRational::NAME => AnyRep::Exact(representation_from_json(p, v, 0.0)?),
        AlgebraicExt::NAME => AnyRep::Algebraic(representation_from_json(p, v, 0.0)?),
        ComplexFloat::NAME => AnyRep::Float(representation_from_json(p, v, tol)?),
        other => return Err(CliError::Invalid(format!("unknown field `{other}`"))),
    })
}
