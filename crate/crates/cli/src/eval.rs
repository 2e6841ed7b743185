use crate::doc::AnyRep;
use crate::error::CliError;
use crate::family::{Family, Knot};
use crate::with_rep;
use serde_json::{json, Value};
use tapkit_core::closed::{
    case3_leading, case3_polynomial, coeffs_case2, leading_coeff_two_bridge, recursion_case2,
    recursion_two_bridge, trace_formula_mismatches, Case2Branch,
};
use tapkit_core::engine::{twisted_alexander, TapOptions, TapResult};
use tapkit_core::group::Presentation;
use tapkit_core::json::{polynomial_to_json, result_to_json, JsonScalar};
use tapkit_core::repn::Representation;
use tapkit_core::Result;

pub const COMPARISON_SCHEMA: &str = "tapkit.comparison/1";

pub fn engine<F: JsonScalar>(
    p: &Presentation,
    rep: &Representation<F>,
    column: Option<&str>,
    tol: f64,
) -> Result<TapResult<F>> {
    let mut opts = TapOptions::with_tol(tol);
    if let Some(c) = column {
        opts = opts.column(p.gen_by_name(c)?);
    }
    twisted_alexander(p, rep, &opts)
}

pub fn closed_form<F: JsonScalar>(
    knot: &Knot,
    rep: &Representation<F>,
    tol: f64,
) -> Result<TapResult<F>> {
    match knot {
        Knot::TwoBridge(k) => Ok(recursion_two_bridge(k, rep, tol)?.result),
        Knot::Case2(k) => Ok(recursion_case2(k, rep, tol)?.result),
        Knot::Case3(k) => case3_polynomial(k, rep, tol),
    }
}

/// Extreme coefficient predicted by the closed forms and the degree it implies.
pub struct Prediction<F> {
    pub quantity: &'static str,
    pub value: F,
    pub degree: i64,
    pub diagnostics: Value,
}

pub fn prediction<F: JsonScalar>(
    knot: &Knot,
    rep: &Representation<F>,
    tol: f64,
) -> Result<Prediction<F>> {
    Ok(match knot {
        Knot::TwoBridge(k) => Prediction {
            quantity: "kappa0",
            value: leading_coeff_two_bridge(k, rep)?,
            degree: 2 * k.spec.k() as i64,
            diagnostics: Value::Null,
        },
        Knot::Case2(k) => {
            let c = coeffs_case2(k, rep)?;
            Prediction {
                quantity: match c.branch {
                    Case2Branch::Kappa => "kappa0",
                    Case2Branch::Lambda => "lambda0",
                },
                value: c.value,
                degree: c.degree as i64,
                diagnostics: Value::Null,
            }
        }
        Knot::Case3(k) => Prediction {
            quantity: if k.spec.is_even() {
                "kappa0"
            } else {
                "lambda0"
            },
            value: case3_leading(k, rep)?,
            degree: if k.spec.is_even() { 14 } else { 6 },
            diagnostics: json!({
                "trace_formula_mismatches": trace_formula_mismatches(k, rep, tol.max(1e-7))?,
            }),
        },
    })
}

impl<F: JsonScalar> Prediction<F> {
    pub fn is_nonzero(&self, tol: f64) -> bool {
        if F::EXACT {
            !self.value.is_zero()
        } else {
            self.value.norm() > tol.sqrt()
        }
    }

    pub fn to_json(&self, tol: f64) -> Value {
        json!({
            "quantity": self.quantity,
            "value": self.value.to_json(),
            "nonzero": self.is_nonzero(tol),
            "degree": self.degree,
            "diagnostics": self.diagnostics,
        })
    }
}

/// Largest coefficient difference of the normalized numerators, relative to
/// their size, after aligning signs.
fn residual<F: JsonScalar>(a: &TapResult<F>, b: &TapResult<F>) -> f64 {
    let (x, y) = (a.polynomial.normalized(), b.polynomial.normalized());
    let scale = x.max_norm().max(y.max_norm()).max(1.0);
    let d = |y: &tapkit_core::laurent::LaurentPoly<F>| (x.clone() - y.clone()).max_norm() / scale;
    d(&y).min(d(&-y.clone()))
}

pub struct Comparison {
    pub record: Value,
    pub agree: bool,
}

/// Runs the engine on the closed form's column and compares the two.
pub fn compare<F: JsonScalar>(
    family: &Family,
    knot: &Knot,
    rep: &Representation<F>,
    tol: f64,
) -> std::result::Result<Comparison, CliError> {
    let closed = closed_form(knot, rep, tol)?;
    let eng = engine(knot.presentation(), rep, Some(&closed.column), tol)?;
    let agree = closed.equivalent(&eng, tol);
    let pred = prediction(knot, rep, tol)?;
    let record = json!({
        "$schema": COMPARISON_SCHEMA,
        "family": family,
        "field": F::NAME,
        "nonabelian": rep.is_nonabelian(),
        "agree": agree,
        "residual": residual(&closed, &eng),
        "engine": result_to_json(&eng, tol),
        "closed_form": result_to_json(&closed, tol),
        "prediction": pred.to_json(tol),
        "genus_check": genus_check(family, &eng, &pred, rep.is_nonabelian(), tol),
    });
    Ok(Comparison { record, agree })
}

/// `deg = 4g - 2` whenever the predicted extreme coefficient is nonzero.
fn genus_check<F: JsonScalar>(
    family: &Family,
    r: &TapResult<F>,
    pred: &Prediction<F>,
    nonabelian: bool,
    tol: f64,
) -> Value {
    match family.genus() {
        Some(g) if nonabelian && pred.is_nonzero(tol) && r.denominator.is_none() => json!({
            "genus": g,
            "holds": r.degree == 4 * g as i64 - 2,
        }),
        _ => Value::Null,
    }
}

pub fn compare_any(
    family: &Family,
    knot: &Knot,
    rep: &AnyRep,
    tol: f64,
) -> std::result::Result<Comparison, CliError> {
    with_rep!(rep, r => compare(family, knot, r, tol))
}

pub fn alexander_json(p: &Presentation) -> Result<Value> {
    Ok(polynomial_to_json(
        &tapkit_core::engine::alexander(p)?.normalized(),
    ))
}
