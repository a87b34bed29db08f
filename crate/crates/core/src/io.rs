//! Canonical JSON encodings.
//!
//! Objects are written with sorted keys and no whitespace, so equal values
//! serialize to identical bytes. Rationals are JSON integers when integral
//! and `"a/b"` strings otherwise; both forms are accepted on input.
//!
//! | value | encoding |
//! |---|---|
//! | `Q_p` descriptor | `{"cap":16,"p":2,"ring":"Qp"}` |
//! | `L` descriptor | `{"q":2,"ring":"PerfL","root_denom":3,"trunc":4}` (`trunc` null when exact) |
//! | `A<X>` descriptor | `{"base":…,"max_degree":512,"ring":"Tate"}` |
//! | `Q_p` element | integer at full cap, else `{"cap":c,"m":m,"s":s}` for `m p^-s mod p^c` |
//! | `L` element | `[[α, c],…]`, or `{"prec":M,"terms":[…]}` below the field truncation |
//! | series | `{"base":…,"coeffs":[[deg, elem],…],"tail_exp":e\|null}` |
//! | algebra | `{"base":…,"modulus":[c0,…,1]}` |
//! | Teichmüller sum | `{"base":…,"t":{"a":…,"b":…,"d":…},"terms":[[n, elem],…]}` |

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exponent::{NormExponent, NormValue, QuadraticScale, Scale, Q};
use crate::finite_alg::FiniteFreeAlgebra;
use crate::padic::{PadicElement, QpCtx};
use crate::perf::{PerfCtx, PerfElement};
use crate::series::{RestrictedSeries, SeriesCtx};
use crate::witt::group_ring::GrCoeff;
use crate::witt::{LambdaParam, TeichSum};

pub fn q_to_json(x: &Q) -> Value {
    if x.is_integer() {
        match i64::try_from(*x.numer()) {
            Ok(n) => json!(n),
            Err(_) => json!(x.numer().to_string()),
        }
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn q_from_json(v: &Value, path: &str) -> Result<Q> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| Q::from_integer(n as i128))
            .ok_or_else(|| Error::parse(path, "expected an integer or \"a/b\"")),
        Value::String(s) => {
            let s = s.trim();
            let (a, b) = s.split_once('/').unwrap_or((s, "1"));
            let a: i128 = a
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, format!("bad rational `{s}`")))?;
            let b: i128 = b
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, format!("bad rational `{s}`")))?;
            if b == 0 {
                return Err(Error::parse(path, "zero denominator"));
            }
            Ok(Q::new(a, b))
        }
        _ => Err(Error::parse(path, "expected an integer or \"a/b\"")),
    }
}

pub fn exponent_to_json(e: &NormExponent) -> Value {
    match e.scale() {
        Scale::Unit => q_to_json(e.a()),
        Scale::Quadratic(s) => json!({
            "a": q_to_json(e.a()),
            "b": q_to_json(e.b()),
            "tau": { "u": q_to_json(s.u()), "v": q_to_json(s.v()), "d": s.d() as i64 },
        }),
    }
}

pub fn exponent_from_json(v: &Value, path: &str) -> Result<NormExponent> {
    if let Value::Object(o) = v {
        let tau = field(o, "tau", path)?;
        let tp = format!("{path}.tau");
        let tau_obj = as_object(tau, &tp)?;
        let s = QuadraticScale::new(
            q_from_json(field(tau_obj, "u", &tp)?, &format!("{tp}.u"))?,
            q_from_json(field(tau_obj, "v", &tp)?, &format!("{tp}.v"))?,
            int(field(tau_obj, "d", &tp)?, &format!("{tp}.d"))? as i128,
        )
        .ok_or_else(|| Error::parse(&tp, "not a quadratic irrational"))?;
        return Ok(NormExponent::new(
            q_from_json(field(o, "a", path)?, &format!("{path}.a"))?,
            q_from_json(field(o, "b", path)?, &format!("{path}.b"))?,
            Scale::Quadratic(s),
        ));
    }
    Ok(NormExponent::rational(q_from_json(v, path)?))
}

pub fn norm_to_json(n: &NormValue) -> Value {
    match n {
        NormValue::Exact(e) => json!({ "exact": exponent_to_json(e) }),
        NormValue::AtMost(e) => json!({ "at_most": exponent_to_json(e) }),
        NormValue::ExactZero => json!("zero"),
    }
}

/// `{"u":u,"v":v,"rel":r}` for `u p^v` with `u` known mod `p^r` (signed
/// representative), or `{"zero_mod":a}`.
pub fn gr_coeff_to_json(c: &GrCoeff, p: u64) -> Value {
    match c {
        GrCoeff::Zero { abs } => json!({ "zero_mod": abs }),
        GrCoeff::Val { v, u, rel } => {
            let m = (p as i128).pow(*rel);
            let u = *u as i128;
            let signed = if 2 * u > m { u - m } else { u };
            json!({ "u": signed as i64, "v": v, "rel": rel })
        }
    }
}

pub fn lambda_param_to_json(t: &LambdaParam) -> Value {
    match t {
        LambdaParam::Rational(x) => json!({ "a": q_to_json(x), "b": 0, "d": 0 }),
        LambdaParam::Quadratic(s) => {
            json!({ "a": q_to_json(s.u()), "b": q_to_json(s.v()), "d": s.d() as i64 })
        }
    }
}

pub fn lambda_param_from_json(v: &Value, path: &str) -> Result<LambdaParam> {
    let o = as_object(v, path)?;
    let a = q_from_json(field(o, "a", path)?, &format!("{path}.a"))?;
    let b = match o.get("b") {
        Some(b) => q_from_json(b, &format!("{path}.b"))?,
        None => Q::zero(),
    };
    let d = match o.get("d") {
        Some(d) => int(d, &format!("{path}.d"))? as i128,
        None => 0,
    };
    if b.is_zero() {
        LambdaParam::rational(a)
    } else {
        LambdaParam::quadratic(a, b, d)
    }
    .map_err(|e| Error::parse(path, e.to_string()))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(path, "expected an array"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key)
        .ok_or_else(|| Error::parse(format!("{path}.{key}"), "missing field"))
}

fn int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::parse(path, "expected an integer"))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::parse(path, "expected a nonnegative integer"))
}

fn pair<'a>(v: &'a Value, path: &str) -> Result<(&'a Value, &'a Value)> {
    match as_array(v, path)?.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(Error::parse(path, "expected a pair")),
    }
}

fn ctx_err(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::parse(path, e.to_string())
}

/// Base rings with a JSON encoding.
pub trait JsonCoeff: Coeff {
    fn ctx_to_json(ctx: &Self::Ctx) -> Value;
    fn ctx_from_json(v: &Value, path: &str) -> Result<Self::Ctx>;
    fn elem_to_json(&self, ctx: &Self::Ctx) -> Value;
    fn elem_from_json(ctx: &Self::Ctx, v: &Value, path: &str) -> Result<Self>;
}

impl JsonCoeff for PadicElement {
    fn ctx_to_json(ctx: &QpCtx) -> Value {
        json!({ "ring": "Qp", "p": ctx.p, "cap": ctx.cap })
    }

    fn ctx_from_json(v: &Value, path: &str) -> Result<QpCtx> {
        let o = as_object(v, path)?;
        if field(o, "ring", path)? != "Qp" {
            return Err(Error::parse(format!("{path}.ring"), "expected \"Qp\""));
        }
        let p = uint(field(o, "p", path)?, &format!("{path}.p"))?;
        let cap = int(field(o, "cap", path)?, &format!("{path}.cap"))?;
        let cap = i32::try_from(cap).map_err(|_| Error::parse(format!("{path}.cap"), "out of range"))?;
        QpCtx::new(p, cap).map_err(ctx_err(path))
    }

    fn elem_to_json(&self, ctx: &QpCtx) -> Value {
        if self.shift() == 0 && self.cap() == ctx.cap {
            json!(self.signed_mantissa() as i64)
        } else {
            json!({ "m": self.signed_mantissa() as i64, "s": self.shift(), "cap": self.cap() })
        }
    }

    fn elem_from_json(ctx: &QpCtx, v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::Number(_) => Ok(PadicElement::from_i64(ctx, int(v, path)?)),
            Value::String(_) => {
                let x = q_from_json(v, path)?;
                let (n, d) = (i64::try_from(*x.numer()), i64::try_from(*x.denom()));
                match (n, d) {
                    (Ok(n), Ok(d)) => PadicElement::from_rational(ctx, n, d).map_err(ctx_err(path)),
                    _ => Err(Error::parse(path, "rational out of range")),
                }
            }
            Value::Object(o) => {
                let m = int(field(o, "m", path)?, &format!("{path}.m"))?;
                let s = uint(field(o, "s", path)?, &format!("{path}.s"))?;
                let cap = int(field(o, "cap", path)?, &format!("{path}.cap"))?;
                if cap > ctx.cap as i64 {
                    return Err(Error::parse(
                        format!("{path}.cap"),
                        format!("element cap {cap} exceeds ring cap {}", ctx.cap),
                    ));
                }
                let s = u32::try_from(s).map_err(|_| Error::parse(format!("{path}.s"), "out of range"))?;
                Ok(PadicElement::from_parts(ctx, m as i128, s).with_cap(cap as i32))
            }
            _ => Err(Error::parse(path, "expected a p-adic element")),
        }
    }
}

impl JsonCoeff for PerfElement {
    fn ctx_to_json(ctx: &PerfCtx) -> Value {
        json!({
            "ring": "PerfL",
            "q": ctx.p,
            "root_denom": ctx.root_denom,
            "trunc": ctx.trunc().as_ref().map_or(Value::Null, q_to_json),
        })
    }

    fn ctx_from_json(v: &Value, path: &str) -> Result<PerfCtx> {
        let o = as_object(v, path)?;
        if field(o, "ring", path)? != "PerfL" {
            return Err(Error::parse(format!("{path}.ring"), "expected \"PerfL\""));
        }
        let p = uint(field(o, "q", path)?, &format!("{path}.q"))?;
        let k = uint(field(o, "root_denom", path)?, &format!("{path}.root_denom"))?;
        let k = u32::try_from(k).map_err(|_| Error::parse(format!("{path}.root_denom"), "out of range"))?;
        match o.get("trunc") {
            None | Some(Value::Null) => PerfCtx::exact(p, k),
            Some(t) => PerfCtx::truncated(p, k, q_from_json(t, &format!("{path}.trunc"))?),
        }
        .map_err(ctx_err(path))
    }

    fn elem_to_json(&self, ctx: &PerfCtx) -> Value {
        let terms: Vec<Value> = self.terms().map(|(e, c)| json!([q_to_json(&e), c])).collect();
        if self.precision() == ctx.trunc() {
            Value::Array(terms)
        } else {
            let prec = self
                .precision()
                .expect("elements carry at most the field truncation");
            json!({ "terms": terms, "prec": q_to_json(&prec) })
        }
    }

    fn elem_from_json(ctx: &PerfCtx, v: &Value, path: &str) -> Result<Self> {
        let (list, prec) = match v {
            Value::Object(o) => (
                field(o, "terms", path)?,
                Some(q_from_json(field(o, "prec", path)?, &format!("{path}.prec"))?),
            ),
            _ => (v, None),
        };
        let mut terms = Vec::new();
        for (i, t) in as_array(list, path)?.iter().enumerate() {
            let tp = format!("{path}[{i}]");
            let (e, c) = pair(t, &tp)?;
            terms.push((
                q_from_json(e, &format!("{tp}[0]"))?,
                uint(c, &format!("{tp}[1]"))?,
            ));
        }
        let x = PerfElement::from_terms(ctx, &terms).map_err(ctx_err(path))?;
        match prec {
            Some(m) => x.truncate(m).map_err(ctx_err(path)),
            None => Ok(x),
        }
    }
}

impl<R: JsonCoeff> JsonCoeff for RestrictedSeries<R> {
    fn ctx_to_json(ctx: &SeriesCtx<R>) -> Value {
        json!({ "ring": "Tate", "base": R::ctx_to_json(&ctx.base), "max_degree": ctx.max_degree })
    }

    fn ctx_from_json(v: &Value, path: &str) -> Result<SeriesCtx<R>> {
        let o = as_object(v, path)?;
        if field(o, "ring", path)? != "Tate" {
            return Err(Error::parse(format!("{path}.ring"), "expected \"Tate\""));
        }
        let base = R::ctx_from_json(field(o, "base", path)?, &format!("{path}.base"))?;
        Ok(match o.get("max_degree") {
            Some(d) => SeriesCtx::with_max_degree(base, uint(d, &format!("{path}.max_degree"))? as usize),
            None => SeriesCtx::new(base),
        })
    }

    fn elem_to_json(&self, _ctx: &SeriesCtx<R>) -> Value {
        let mut o = series_body(self);
        o.remove("base");
        Value::Object(o)
    }

    fn elem_from_json(ctx: &SeriesCtx<R>, v: &Value, path: &str) -> Result<Self> {
        series_body_from_json(ctx, as_object(v, path)?, path)
    }
}

fn series_body<R: JsonCoeff>(f: &RestrictedSeries<R>) -> Map<String, Value> {
    let ctx = f.series_ctx();
    let coeffs: Vec<Value> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != R::zero(&ctx.base))
        .map(|(i, c)| json!([i, c.elem_to_json(&ctx.base)]))
        .collect();
    let mut o = Map::new();
    o.insert("base".into(), R::ctx_to_json(&ctx.base));
    o.insert("coeffs".into(), Value::Array(coeffs));
    o.insert(
        "tail_exp".into(),
        f.tail_exponent().map_or(Value::Null, exponent_to_json),
    );
    o
}

fn series_body_from_json<R: JsonCoeff>(
    ctx: &SeriesCtx<R>,
    o: &Map<String, Value>,
    path: &str,
) -> Result<RestrictedSeries<R>> {
    let cp = format!("{path}.coeffs");
    let mut coeffs: Vec<R> = Vec::new();
    for (i, entry) in as_array(field(o, "coeffs", path)?, &cp)?.iter().enumerate() {
        let ep = format!("{cp}[{i}]");
        let (deg, c) = pair(entry, &ep)?;
        let deg = deg
            .as_u64()
            .ok_or_else(|| Error::parse(format!("{ep}[0]"), "degree must be a nonnegative integer"))?
            as usize;
        if deg > ctx.max_degree {
            return Err(Error::parse(format!("{ep}[0]"), "degree exceeds max_degree"));
        }
        if deg < coeffs.len() {
            return Err(Error::parse(format!("{ep}[0]"), format!("repeated degree {deg}")));
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, R::zero(&ctx.base));
        }
        coeffs[deg] = R::elem_from_json(&ctx.base, c, &format!("{ep}[1]"))?;
    }
    let tail = match o.get("tail_exp") {
        None | Some(Value::Null) => None,
        Some(t) => Some(exponent_from_json(t, &format!("{path}.tail_exp"))?),
    };
    Ok(RestrictedSeries::new(ctx, coeffs, tail))
}

pub fn series_to_json<R: JsonCoeff>(f: &RestrictedSeries<R>) -> Value {
    Value::Object(series_body(f))
}

pub fn series_from_json<R: JsonCoeff>(v: &Value, path: &str) -> Result<RestrictedSeries<R>> {
    let o = as_object(v, path)?;
    let base = R::ctx_from_json(field(o, "base", path)?, &format!("{path}.base"))?;
    series_body_from_json(&SeriesCtx::new(base), o, path)
}

pub fn algebra_to_json<R: JsonCoeff>(a: &FiniteFreeAlgebra<R>) -> Value {
    let modulus: Vec<Value> = a.modulus().iter().map(|c| c.elem_to_json(a.base())).collect();
    json!({ "base": R::ctx_to_json(a.base()), "modulus": modulus })
}

pub fn algebra_from_json<R: JsonCoeff>(v: &Value, path: &str) -> Result<FiniteFreeAlgebra<R>> {
    let o = as_object(v, path)?;
    let base = R::ctx_from_json(field(o, "base", path)?, &format!("{path}.base"))?;
    let mp = format!("{path}.modulus");
    let coeffs = as_array(field(o, "modulus", path)?, &mp)?
        .iter()
        .enumerate()
        .map(|(i, c)| R::elem_from_json(&base, c, &format!("{mp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    FiniteFreeAlgebra::new(&base, coeffs).map_err(ctx_err(&mp))
}

pub fn teich_to_json(x: &TeichSum, ctx: &PerfCtx, t: &LambdaParam) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(n, xn)| json!([n, xn.elem_to_json(ctx)]))
        .collect();
    json!({ "base": PerfElement::ctx_to_json(ctx), "terms": terms, "t": lambda_param_to_json(t) })
}

pub fn teich_from_json(v: &Value, path: &str) -> Result<(TeichSum, PerfCtx, LambdaParam)> {
    let o = as_object(v, path)?;
    let ctx = PerfElement::ctx_from_json(field(o, "base", path)?, &format!("{path}.base"))?;
    let t = lambda_param_from_json(field(o, "t", path)?, &format!("{path}.t"))?;
    let tp = format!("{path}.terms");
    let mut terms = Vec::new();
    for (i, entry) in as_array(field(o, "terms", path)?, &tp)?.iter().enumerate() {
        let ep = format!("{tp}[{i}]");
        let (n, xn) = pair(entry, &ep)?;
        terms.push((
            int(n, &format!("{ep}[0]"))?,
            PerfElement::elem_from_json(&ctx, xn, &format!("{ep}[1]"))?,
        ));
    }
    let x = TeichSum::new(terms).map_err(ctx_err(&tp))?;
    Ok((x, ctx, t))
}

/// A parsed input document.
#[derive(Debug, Clone)]
pub enum Input {
    QpSeries(RestrictedSeries<PadicElement>),
    PerfSeries(RestrictedSeries<PerfElement>),
    /// Series over `Q_p<X>`.
    NestedSeries(RestrictedSeries<RestrictedSeries<PadicElement>>),
    Algebra(FiniteFreeAlgebra<PadicElement>),
    Teich(TeichSum, PerfCtx, LambdaParam),
}

impl Input {
    pub fn to_json(&self) -> Value {
        match self {
            Input::QpSeries(f) => series_to_json(f),
            Input::PerfSeries(f) => series_to_json(f),
            Input::NestedSeries(f) => series_to_json(f),
            Input::Algebra(a) => algebra_to_json(a),
            Input::Teich(x, ctx, t) => teich_to_json(x, ctx, t),
        }
    }
}

fn ring_of(v: &Value) -> Option<&str> {
    v.get("base")?.get("ring")?.as_str()
}

/// Parses a document, dispatching on its fields and base ring.
pub fn parse_value(v: &Value) -> Result<Input> {
    let o = as_object(v, "$")?;
    if o.contains_key("modulus") {
        return Ok(Input::Algebra(algebra_from_json(v, "$")?));
    }
    if o.contains_key("terms") {
        let (x, ctx, t) = teich_from_json(v, "$")?;
        return Ok(Input::Teich(x, ctx, t));
    }
    if o.contains_key("coeffs") {
        return match ring_of(v) {
            Some("Qp") => Ok(Input::QpSeries(series_from_json(v, "$")?)),
            Some("PerfL") => Ok(Input::PerfSeries(series_from_json(v, "$")?)),
            Some("Tate") => Ok(Input::NestedSeries(series_from_json(v, "$")?)),
            Some(r) => Err(Error::parse("$.base.ring", format!("unknown ring `{r}`"))),
            None => Err(Error::parse("$.base.ring", "missing field")),
        };
    }
    Err(Error::parse("$", "expected a series, algebra or Teichmüller sum"))
}

pub fn parse_input(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    parse_value(&v)
}

/// Compact, key-sorted form.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::qi;

    #[test]
    fn qp_series_round_trip_is_byte_identical() {
        let text = r#"{"base":{"cap":16,"p":2,"ring":"Qp"},"coeffs":[[0,-2],[2,1]],"tail_exp":null}"#;
        let parsed = parse_input(text).unwrap();
        assert_eq!(canonical(&parsed.to_json()), text);
        let Input::QpSeries(f) = parsed else { panic!() };
        assert_eq!(
            f,
            SeriesCtx::new(QpCtx::new(2, 16).unwrap()).from_ints(&[-2, 0, 1])
        );
    }

    #[test]
    fn reduced_precision_elements() {
        let ctx = QpCtx::new(3, 10).unwrap();
        let x = PadicElement::from_rational(&ctx, 1, 9).unwrap().with_cap(4);
        let v = x.elem_to_json(&ctx);
        assert_eq!(PadicElement::elem_from_json(&ctx, &v, "$").unwrap(), x);
        let y = PadicElement::elem_from_json(&ctx, &json!("1/9"), "$").unwrap();
        assert_eq!(y, PadicElement::from_rational(&ctx, 1, 9).unwrap());
    }

    #[test]
    fn malformed_degree_names_the_field() {
        let text = r#"{"base":{"cap":8,"p":2,"ring":"Qp"},"coeffs":[["x",1]],"tail_exp":null}"#;
        match parse_input(text) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "$.coeffs[0][0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perf_and_teich_round_trip() {
        let ctx = PerfCtx::truncated(2, 3, qi(4)).unwrap();
        let x = PerfElement::from_terms(&ctx, &[(crate::exponent::q(3, 2), 1), (qi(2), 1)]).unwrap();
        let v = x.elem_to_json(&ctx);
        assert_eq!(canonical(&v), r#"[["3/2",1],[2,1]]"#);
        let t = LambdaParam::sqrt(2).unwrap();
        let s = TeichSum::new(vec![(0, x), (1, PerfElement::one(&ctx))]).unwrap();
        let doc = teich_to_json(&s, &ctx, &t);
        let (s2, ctx2, t2) = teich_from_json(&doc, "$").unwrap();
        assert_eq!((s2, ctx2, t2), (s, ctx, t));
    }

    #[test]
    fn series_with_tail_and_nesting() {
        let base = SeriesCtx::<PadicElement>::new(QpCtx::new(2, 8).unwrap());
        let ctx = SeriesCtx::new(base.clone());
        let f = RestrictedSeries::new(
            &ctx,
            vec![base.from_ints(&[1, 2]), base.from_ints(&[0, 0, 4])],
            Some(NormExponent::integer(3)),
        );
        let v = series_to_json(&f);
        let back: RestrictedSeries<RestrictedSeries<PadicElement>> = series_from_json(&v, "$").unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn algebra_round_trip() {
        let a =
            FiniteFreeAlgebra::<PadicElement>::from_ints(&QpCtx::new(2, 16).unwrap(), &[2, 0, 1]).unwrap();
        let v = algebra_to_json(&a);
        assert_eq!(
            canonical(&v),
            r#"{"base":{"cap":16,"p":2,"ring":"Qp"},"modulus":[2,0,1]}"#
        );
        let b: FiniteFreeAlgebra<PadicElement> = algebra_from_json(&v, "$").unwrap();
        assert_eq!(b.modulus(), a.modulus());
    }
}
