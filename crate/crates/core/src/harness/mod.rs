//! Verification scenarios, reports and the suite runner behind the CLI.

pub mod commands;
pub mod gen;
mod scenarios;

use std::fmt;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::{parse_value, series_to_json, Input};
use crate::newton::{irreducibility_certificate, residue_degree};
use crate::padic::{PadicElement, QpCtx};
use crate::series::{RestrictedSeries, SeriesCtx};
use crate::weierstrass::{rescale_to_distinguished, weierstrass_prepare};
use crate::witt::LambdaParam;

pub const SCENARIOS: [&str; 7] = [
    "division-norm-identity",
    "preparation-roundtrip",
    "polygon-additivity",
    "perturbation",
    "witt-axioms",
    "dim0-inversion",
    "nullstellensatz-batch",
];

const DEFAULT_CORPUS: &str = include_str!("../../corpus/nullstellensatz.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Indeterminate,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Indeterminate => "INDETERMINATE",
            Verdict::Fail => "FAIL",
        })
    }
}

impl Verdict {
    /// Errors that only mean "cannot decide at this precision".
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::Indeterminate(_) | Error::InsufficientPrecision(_) => Verdict::Indeterminate,
            _ => Verdict::Fail,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub summary: String,
    pub detail: Value,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict, summary: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict,
            summary: summary.into(),
            detail: Value::Null,
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v =
            json!({ "name": self.name, "verdict": self.verdict.to_string(), "summary": self.summary });
        if !self.detail.is_null() {
            v["detail"] = self.detail.clone();
        }
        v
    }
}

/// Counts outcomes of a per-sample check.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    /// Samples where the check does not apply.
    pub skipped: usize,
    notes: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, v: Verdict, note: impl FnOnce() -> String) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Indeterminate => self.indeterminate += 1,
        }
        if v != Verdict::Pass && self.notes.len() < 5 {
            self.notes.push(note());
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.fail > 0 {
            Verdict::Fail
        } else if self.indeterminate > 0 || self.pass == 0 {
            Verdict::Indeterminate
        } else {
            Verdict::Pass
        }
    }

    pub fn check(&self, name: &str) -> Check {
        let total = self.pass + self.fail + self.indeterminate;
        let mut summary = format!("{}/{} pass", self.pass, total);
        if self.fail > 0 {
            summary += &format!(", {} fail", self.fail);
        }
        if self.indeterminate > 0 {
            summary += &format!(", {} indeterminate", self.indeterminate);
        }
        if self.skipped > 0 {
            summary += &format!(", {} not applicable", self.skipped);
        }
        let detail = if self.notes.is_empty() {
            Value::Null
        } else {
            json!({ "first_problems": self.notes })
        };
        Check::new(name, self.verdict(), summary).with_detail(detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub scenario: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    /// Computed values, for single commands.
    pub outputs: Value,
}

impl ScenarioReport {
    pub fn verdict(&self) -> Verdict {
        self.checks
            .iter()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::Indeterminate)
    }

    pub fn summary(&self) -> String {
        let count = |v| self.checks.iter().filter(|c| c.verdict == v).count();
        format!(
            "{} {}: {} checks, {} pass, {} fail, {} indeterminate",
            self.verdict(),
            self.scenario,
            self.checks.len(),
            count(Verdict::Pass),
            count(Verdict::Fail),
            count(Verdict::Indeterminate)
        )
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "scenario": self.scenario,
            "verdict": self.verdict().to_string(),
            "inputs": self.inputs,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "summary": self.summary(),
        });
        if !self.outputs.is_null() {
            v["outputs"] = self.outputs.clone();
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = self.summary();
        for c in &self.checks {
            out += &format!("\n  {} {}: {}", c.verdict, c.name, c.summary);
        }
        if let Value::Object(o) = &self.outputs {
            for (k, v) in o {
                out += &format!("\n  {k} = {}", crate::io::canonical(v));
            }
        }
        out
    }
}

/// Exit status for a batch of reports: 1 on any failure, 2 on an
/// indeterminate result under `strict`, else 0.
pub fn exit_code(reports: &[ScenarioReport], strict: bool) -> i32 {
    let worst = reports.iter().map(ScenarioReport::verdict).max();
    match worst {
        Some(Verdict::Fail) => 1,
        Some(Verdict::Indeterminate) if strict => 2,
        _ => 0,
    }
}

fn default_t() -> Value {
    json!({ "a": 0, "b": 1, "d": 2 })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Scenario ids; all of them when empty.
    pub scenarios: Vec<String>,
    pub seed: u64,
    pub cap: i32,
    /// Overrides every per-group sample count.
    pub samples: Option<usize>,
    /// Radius for the `λ_t` scenarios, as `{"a":…,"b":…,"d":…}`.
    pub t: Value,
    /// Target exponent `N'` for inversion residuals.
    pub target: i64,
    /// Polynomial corpus for the Nullstellensatz batch; the shipped corpus
    /// when absent.
    pub corpus: Option<PathBuf>,
    pub parallel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            scenarios: Vec::new(),
            seed: 20_240_601,
            cap: 16,
            samples: None,
            t: default_t(),
            target: 10,
            corpus: None,
            parallel: true,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("config line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn lambda_param(&self) -> Result<LambdaParam> {
        crate::io::lambda_param_from_json(&self.t, "config.t")
    }

    pub(crate) fn count(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn scenario_list(&self) -> Result<Vec<&'static str>> {
        if self.scenarios.is_empty() {
            return Ok(SCENARIOS.to_vec());
        }
        let mut out = Vec::new();
        for s in &self.scenarios {
            let id = SCENARIOS
                .iter()
                .find(|k| **k == s.as_str())
                .ok_or_else(|| Error::UnknownScenario(s.clone()))?;
            if !out.contains(id) {
                out.push(*id);
            }
        }
        out.sort_by_key(|id| SCENARIOS.iter().position(|k| k == id));
        Ok(out)
    }

    /// The configured corpus, or the bundled one.
    pub fn corpus(&self) -> Result<Vec<RestrictedSeries<PadicElement>>> {
        let text = match &self.corpus {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?,
            None => DEFAULT_CORPUS.to_string(),
        };
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::parse("corpus", e.to_string()))?;
        parse_polynomial_list(&v)
    }
}

/// A single `Q_p` series or `{"polynomials":[…]}`.
pub fn parse_polynomial_list(v: &Value) -> Result<Vec<RestrictedSeries<PadicElement>>> {
    let items: Vec<&Value> = match v.get("polynomials") {
        Some(Value::Array(a)) => a.iter().collect(),
        Some(_) => return Err(Error::parse("$.polynomials", "expected an array")),
        None => vec![v],
    };
    items
        .into_iter()
        .enumerate()
        .map(|(i, item)| match parse_value(item) {
            Ok(Input::QpSeries(f)) => Ok(f),
            Ok(_) => Err(Error::parse(
                format!("$.polynomials[{i}]"),
                "expected a series over Qp",
            )),
            Err(e) => Err(e),
        })
        .collect()
}

fn scenario_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a, so each scenario's stream is independent of the others
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

pub fn run_scenario(id: &str, config: &SuiteConfig) -> Result<ScenarioReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(scenario_seed(config.seed, id));
    let inputs = json!({ "seed": config.seed, "cap": config.cap });
    let checks = match id {
        "division-norm-identity" => scenarios::division(config, &mut rng)?,
        "preparation-roundtrip" => scenarios::preparation(config, &mut rng)?,
        "polygon-additivity" => scenarios::polygons(config, &mut rng)?,
        "perturbation" => scenarios::perturbation(config, &mut rng)?,
        "witt-axioms" => scenarios::witt(config, &mut rng)?,
        "dim0-inversion" => scenarios::dim0(config, &mut rng)?,
        "nullstellensatz-batch" => {
            let corpus = config.corpus()?;
            corpus
                .iter()
                .enumerate()
                .flat_map(|(i, f)| {
                    nullstellensatz_check(f).checks.into_iter().map(move |mut c| {
                        c.name = format!("polynomial {i}: {}", c.name);
                        c
                    })
                })
                .collect()
        }
        other => return Err(Error::UnknownScenario(other.into())),
    };
    let mut inputs = inputs;
    if id == "dim0-inversion" || id == "witt-axioms" {
        inputs["t"] = config.t.clone();
        inputs["target"] = json!(config.target);
    }
    Ok(ScenarioReport {
        scenario: id.into(),
        inputs,
        checks,
        outputs: Value::Null,
    })
}

/// Runs the configured scenarios; reports come back in scenario order
/// whether or not they ran in parallel.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<ScenarioReport>> {
    let ids = config.scenario_list()?;
    config.lambda_param()?;
    if !config.parallel {
        return ids.iter().map(|id| run_scenario(id, config)).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .iter()
            .map(|id| s.spawn(move || run_scenario(id, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    })
}

/// Scales `f` to a distinguished series. Dividing by a coefficient of
/// positive valuation costs digits, so the result lives in a ring capped at
/// the precision that survives; its leading coefficient is exactly 1.
fn rescale_honestly(f: &RestrictedSeries<PadicElement>) -> Result<RestrictedSeries<PadicElement>> {
    let (c, cert) = rescale_to_distinguished(f)?;
    let base = f.series_ctx().base;
    let scaled = f.scale(&c);
    let cap = scaled
        .coeffs()
        .iter()
        .map(PadicElement::cap)
        .min()
        .unwrap_or(base.cap);
    let ctx = QpCtx::new(base.p, cap.min(base.cap))?;
    let coeffs = scaled
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if i == cert.n0 {
                PadicElement::one(&ctx)
            } else {
                PadicElement::from_parts(&ctx, x.signed_mantissa(), x.shift()).with_cap(x.cap())
            }
        })
        .collect();
    Ok(RestrictedSeries::new(
        &SeriesCtx::new(ctx),
        coeffs,
        f.tail_exponent().cloned(),
    ))
}

/// Certifies that `(f)` is a maximal ideal of `Q_p<T>` with residue field
/// finite over `Q_p`: rescale to a distinguished series, prepare, and
/// certify the monic factor irreducible.
pub fn nullstellensatz_check(f: &RestrictedSeries<PadicElement>) -> ScenarioReport {
    let pipeline = || -> Result<_> {
        let scaled = rescale_honestly(f)?;
        let prep = weierstrass_prepare(&scaled)?;
        let cert = irreducibility_certificate(&prep.monic)?;
        Ok((prep, cert))
    };
    let check = match pipeline() {
        Err(e) => Check::new(
            "residue degree",
            Verdict::Indeterminate,
            format!("no certificate: {e}"),
        ),
        Ok((prep, cert)) => {
            let degree = prep.monic.visible_degree().unwrap_or(0);
            let detail = json!({
                "working_cap": prep.monic.series_ctx().base.cap,
                "monic": series_to_json(&prep.monic),
                "certificate": format!("{cert:?}"),
            });
            match residue_degree(&cert) {
                None => Check::new(
                    "residue degree",
                    Verdict::Indeterminate,
                    format!("no certificate fires for the monic factor of degree {degree}"),
                ),
                Some(d) if d == degree => Check::new(
                    "residue degree",
                    Verdict::Pass,
                    format!(
                        "maximal ideal (f) of Q_{}<T> has residue field of finite degree {d} over Q_{}: strong-Nullstellensatz conclusion verified",
                        f.series_ctx().base.p,
                        f.series_ctx().base.p
                    ),
                ),
                Some(d) => Check::new(
                    "residue degree",
                    Verdict::Fail,
                    format!("certificate degree {d} differs from the monic factor degree {degree}"),
                ),
            }
            .with_detail(detail)
        }
    };
    ScenarioReport {
        scenario: "nullcheck".into(),
        inputs: series_to_json(f),
        checks: vec![check],
        outputs: Value::Null,
    }
}
