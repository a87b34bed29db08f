//! The single-input CLI commands. Each returns reports; the binary only
//! handles arguments, files and exit codes.

use serde_json::{json, Value};

use super::{nullstellensatz_check, parse_polynomial_list, Check, ScenarioReport, SuiteConfig, Verdict};
use crate::error::{Error, Result};
use crate::exponent::{NormExponent, NormValue};
use crate::io::{
    exponent_to_json, gr_coeff_to_json, norm_to_json, parse_value, q_to_json, series_to_json,
    teich_from_json, Input, JsonCoeff,
};
use crate::newton::{is_unit_tate, newton_polygon};
use crate::series::RestrictedSeries;
use crate::weierstrass::{weierstrass_divide, weierstrass_divide_linear, weierstrass_prepare};
use crate::witt::{dominant_term, invert_by_domination, lambda_bound, sigma_membership, Dominance};

fn report(scenario: &str, inputs: &Value, checks: Vec<Check>, outputs: Value) -> ScenarioReport {
    ScenarioReport {
        scenario: scenario.into(),
        inputs: inputs.clone(),
        checks,
        outputs,
    }
}

fn error_report(scenario: &str, inputs: &Value, name: &str, e: &Error) -> ScenarioReport {
    report(
        scenario,
        inputs,
        vec![Check::new(name, Verdict::of_error(e), e.to_string())],
        Value::Null,
    )
}

fn le_check(name: &str, value: &NormValue, n: &NormExponent) -> Check {
    let v = match value.is_le(&NormValue::Exact(n.clone())) {
        Some(true) => Verdict::Pass,
        Some(false) => Verdict::Fail,
        None => Verdict::Indeterminate,
    };
    Check::new(name, v, format!("{value} against p^-({n})"))
}

fn series_field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key)
        .ok_or_else(|| Error::parse(format!("$.{key}"), "missing field"))
}

/// Dispatches a series-valued JSON document on its base ring.
macro_rules! with_series {
    ($v:expr, $f:ident ( $($arg:expr),* )) => {
        match parse_value($v)? {
            Input::QpSeries(s) => $f(&s, $($arg),*),
            Input::PerfSeries(s) => $f(&s, $($arg),*),
            Input::NestedSeries(s) => $f(&s, $($arg),*),
            _ => Err(Error::parse("$", "expected a series")),
        }
    };
}

fn as_same<R: JsonCoeff>(g: &Value) -> Result<RestrictedSeries<R>> {
    let g: RestrictedSeries<R> = crate::io::series_from_json(g, "$.g")?;
    Ok(g)
}

fn divide_typed<R: JsonCoeff>(
    f: &RestrictedSeries<R>,
    g_doc: &Value,
    inputs: &Value,
) -> Result<ScenarioReport> {
    let g = as_same::<R>(g_doc)?;
    if g.series_ctx().base != f.series_ctx().base {
        return Err(Error::parse("$.g.base", "f and g have different base rings"));
    }
    let n = R::precision(&f.series_ctx().base);
    let div = match weierstrass_divide(f, &g) {
        Ok(d) => d,
        Err(e) => return Ok(error_report("wdiv", inputs, "division", &e)),
    };
    let mut checks = vec![le_check("residual |g - fq - r|", &div.residual, &n)];
    let (gn, qn, rn) = (g.gauss_norm(), div.q.gauss_norm(), div.r.gauss_norm());
    if [&gn, &qn, &rn].iter().all(|x| !matches!(x, NormValue::AtMost(_))) {
        let m = qn.max(&rn);
        let equal = gn.is_le(&m) == Some(true) && m.is_le(&gn) == Some(true);
        checks.push(Check::new(
            "norm identity |g| = max(|q|, |r|)",
            if equal { Verdict::Pass } else { Verdict::Fail },
            format!("|g| = {gn}, |q| = {qn}, |r| = {rn}"),
        ));
    }
    if f.is_polynomial() && g.is_polynomial() {
        let check = match weierstrass_divide_linear(f, &g) {
            Ok(lin) => {
                let ok = div.q.agrees_to(&lin.q, &n) && div.r.agrees_to(&lin.r, &n);
                Check::new(
                    "linear-solve division agrees",
                    if ok { Verdict::Pass } else { Verdict::Fail },
                    format!("to p^-({n})"),
                )
            }
            Err(e) => Check::new(
                "linear-solve division agrees",
                Verdict::of_error(&e),
                e.to_string(),
            ),
        };
        checks.push(check);
    }
    let outputs = json!({
        "q": series_to_json(&div.q),
        "r": series_to_json(&div.r),
        "residual": norm_to_json(&div.residual),
        "iterations": div.iterations,
    });
    Ok(report("wdiv", inputs, checks, outputs))
}

/// `{"f": series, "g": series}` → `g = f q + r`.
pub fn wdiv(doc: &Value) -> Result<ScenarioReport> {
    let f = series_field(doc, "f")?;
    let g = series_field(doc, "g")?;
    with_series!(f, divide_typed(g, doc))
}

fn prepare_typed<R: JsonCoeff>(f: &RestrictedSeries<R>, inputs: &Value) -> Result<ScenarioReport> {
    let n = R::precision(&f.series_ctx().base);
    let prep = match weierstrass_prepare(f) {
        Ok(p) => p,
        Err(e) => return Ok(error_report("wprep", inputs, "preparation", &e)),
    };
    let unit = match is_unit_tate(&prep.unit) {
        Ok(true) => Check::new("cofactor is a unit", Verdict::Pass, "unit criterion holds"),
        Ok(false) => Check::new("cofactor is a unit", Verdict::Fail, "unit criterion fails"),
        Err(e) => Check::new("cofactor is a unit", Verdict::of_error(&e), e.to_string()),
    };
    let checks = vec![le_check("residual |f - g u|", &prep.residual, &n), unit];
    let outputs = json!({
        "g": series_to_json(&prep.monic),
        "u": series_to_json(&prep.unit),
        "residual": norm_to_json(&prep.residual),
    });
    Ok(report("wprep", inputs, checks, outputs))
}

/// `{"f": series}` or a bare series → `f = g u`.
pub fn wprep(doc: &Value) -> Result<ScenarioReport> {
    let f = doc.get("f").unwrap_or(doc);
    with_series!(f, prepare_typed(doc))
}

fn newton_typed<R: JsonCoeff>(f: &RestrictedSeries<R>, inputs: &Value) -> Result<ScenarioReport> {
    let poly = match newton_polygon(f) {
        Ok(p) => p,
        Err(e) => return Ok(error_report("newton", inputs, "Newton polygon", &e)),
    };
    // slopes are reported as root valuations
    let mut outputs = json!({
        "vertices": poly.vertices.iter().map(|(i, e)| json!([i, q_to_json(e)])).collect::<Vec<_>>(),
        "slopes": poly.slopes.iter().map(|(s, l)| json!([q_to_json(&-s), l])).collect::<Vec<_>>(),
    });
    if poly.zero_roots > 0 {
        outputs["zero_roots"] = json!(poly.zero_roots);
    }
    let check = Check::new(
        "Newton polygon",
        Verdict::Pass,
        format!("{} vertices, {} slopes", poly.vertices.len(), poly.slopes.len()),
    );
    Ok(report("newton", inputs, vec![check], outputs))
}

pub fn newton(doc: &Value) -> Result<ScenarioReport> {
    with_series!(doc, newton_typed(doc))
}

/// A Teichmüller sum document: `λ_t`, `Σ_L` membership, dominance and,
/// when a term dominates, the inverse to `p^-target`.
pub fn lambda(doc: &Value, config: &SuiteConfig) -> Result<ScenarioReport> {
    let (x, _, t) = teich_from_json(doc, "$")?;
    let target = NormExponent::integer(config.target as i128);
    let mut checks = Vec::new();
    let mut outputs = json!({
        "lambda": norm_to_json(&lambda_bound(&x, &t)?),
        "sigma_membership": sigma_membership(&t),
    });
    match dominant_term(&x, &t)? {
        Dominance::Tie(ids) => {
            outputs["dominance"] = json!({ "tie": ids });
            checks.push(Check::new(
                "strict dominance",
                Verdict::Indeterminate,
                format!("terms {ids:?} tie for λ_t; no dominant term to invert"),
            ));
        }
        Dominance::Dominant {
            index,
            exponent,
            pairwise_distinct,
        } => {
            outputs["dominance"] = json!({
                "index": index,
                "exponent": exponent_to_json(&exponent),
                "pairwise_distinct": pairwise_distinct,
            });
            checks.push(Check::new(
                "strict dominance",
                Verdict::Pass,
                format!("term {index}"),
            ));
            match invert_by_domination(&x, &t, &target) {
                Ok(inv) => {
                    checks.push(le_check("inverse residual λ_t(x y - 1)", &inv.residual, &target));
                    outputs["inverse"] = json!({
                        "terms": inv.inverse.terms().map(|(a, c)| json!([q_to_json(a), gr_coeff_to_json(c, inv.inverse.prime())])).collect::<Vec<_>>(),
                        "residual": norm_to_json(&inv.residual),
                        "series_terms": inv.terms,
                    });
                }
                Err(e) => checks.push(Check::new("inversion", Verdict::of_error(&e), e.to_string())),
            }
        }
    }
    Ok(report("lambda", doc, checks, outputs))
}

/// One report per polynomial of a series or `{"polynomials":[…]}`.
pub fn nullcheck(doc: &Value) -> Result<Vec<ScenarioReport>> {
    Ok(parse_polynomial_list(doc)?
        .iter()
        .map(nullstellensatz_check)
        .collect())
}
