use std::io::Read;

use clap::Args;
use serde::Serialize;
use serde_json::{json, Value};
use triplebent::bentlab::{FunctionJson, SpectrumSummary, WalshSpectrum};
use triplebent::constructions::{SearchShape, TripleJson};
use triplebent::{
    e_union, enumerate_params, oracle, search_custom_triples, synthesize, verify_an,
    walsh_spectrum, AnReport, BooleanFunction, EUnionReport, FamilyParams, FamilyTag, FieldCtx,
    PermutationTriple,
};

use crate::report::{Failure, RunReport, Timings, EXIT_RESOURCE};
use crate::GlobalOpts;

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// fam1, fam2, fam3i, fam3ii, fam4 or fam5.
    #[arg(long)]
    family: FamilyTag,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Parameters as hex field elements, in the family's order
    /// (fam4: alpha beta; fam5: c d lambda).
    #[arg(long, num_args = 1.., conflicts_with_all = ["lambda", "alpha", "beta", "c", "d"])]
    param: Vec<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Triple JSON file, or - for standard input.
    #[arg(long, default_value = "-")]
    triple: String,
    /// Also synthesize the function and certify bentness from its spectrum.
    #[arg(long)]
    bent: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Triple JSON file, or - for standard input.
    #[arg(long, default_value = "-")]
    triple: String,
}

#[derive(Debug, Args)]
pub struct WalshArgs {
    /// Function or triple JSON file, or - for standard input.
    #[arg(default_value = "-")]
    input: String,
    /// Print every spectrum value as CSV instead of the summary.
    #[arg(long)]
    full: bool,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    family: FamilyTag,
    #[arg(long)]
    m: u32,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Field degree; may be omitted when --field is given.
    #[arg(long)]
    n: Option<u32>,
    /// monomials, binomials, fam1, fam1-free or linear.
    #[arg(long, default_value = "monomials")]
    shape: SearchShape,
    /// Maximum number of candidate triples examined.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
}

fn pretty<T: Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

/// Parses a JSON document, unwrapping the `results` of a run report so
/// `--json` output can be piped back in.
fn read_json(path: &str) -> Result<Value, Failure> {
    let mut value: Value = serde_json::from_str(&read_input(path)?)?;
    if let Some(obj) = value.as_object_mut() {
        if obj.contains_key("version") && obj.contains_key("results") {
            return Ok(obj.remove("results").unwrap_or(Value::Null));
        }
    }
    Ok(value)
}

fn read_triple(path: &str) -> Result<PermutationTriple, Failure> {
    let json: TripleJson = serde_json::from_value(read_json(path)?)?;
    Ok(PermutationTriple::from_json(&json)?)
}

fn field_for_degree(g: &GlobalOpts, degree: u32) -> Result<FieldCtx, Failure> {
    match &g.field {
        Some(spec) => {
            let ctx: FieldCtx = spec.parse()?;
            if ctx.degree() != degree {
                return Err(Failure::usage(format!(
                    "--field {spec} has degree {}, but {degree} is required",
                    ctx.degree()
                )));
            }
            Ok(ctx)
        }
        None => Ok(FieldCtx::with_default_modulus(degree)?),
    }
}

fn check_field(g: &GlobalOpts, ctx: &FieldCtx) -> Result<(), Failure> {
    if let Some(spec) = &g.field {
        let wanted: FieldCtx = spec.parse()?;
        if wanted != *ctx {
            return Err(Failure::usage(format!(
                "input is over {}, but --field {spec} was given",
                ctx.spec_string()
            )));
        }
    }
    Ok(())
}

fn emit(
    g: &GlobalOpts,
    command: &str,
    field: Option<&FieldCtx>,
    inputs: Value,
    results: Value,
    timings: Timings,
    bare: impl FnOnce() -> Result<String, Failure>,
) -> Result<String, Failure> {
    if g.json {
        pretty(&RunReport {
            command: command.to_string(),
            field: field.map(|f| f.spec_string()),
            inputs,
            results,
            timings_ms: timings.into_inner(),
            version: env!("CARGO_PKG_VERSION"),
        })
    } else {
        bare()
    }
}

pub fn construct(g: &GlobalOpts, a: &ConstructArgs) -> Result<String, Failure> {
    if a.family == FamilyTag::Custom {
        return Err(Failure::usage("custom triples are not constructed from parameters"));
    }
    let degree = a
        .family
        .field_degree(a.m)
        .filter(|_| a.m > 0)
        .ok_or_else(|| Failure::usage("m must be positive"))?;
    let ctx = field_for_degree(g, degree)?;
    let names = a.family.param_names();
    let raw: Vec<String> = if !a.param.is_empty() {
        a.param.clone()
    } else {
        let named = [
            ("lambda", &a.lambda),
            ("alpha", &a.alpha),
            ("beta", &a.beta),
            ("c", &a.c),
            ("d", &a.d),
        ];
        if let Some((extra, _)) = named
            .iter()
            .find(|(name, v)| v.is_some() && !names.contains(name))
        {
            return Err(Failure::usage(format!("{} takes no --{extra}", a.family)));
        }
        names
            .iter()
            .map(|name| {
                named
                    .iter()
                    .find(|(n, _)| n == name)
                    .and_then(|(_, v)| (*v).clone())
                    .ok_or_else(|| {
                        let flags: Vec<String> = names.iter().map(|n| format!("--{n}")).collect();
                        Failure::usage(format!("{} needs {}", a.family, flags.join(" ")))
                    })
            })
            .collect::<Result<_, _>>()?
    };
    let values = raw
        .iter()
        .map(|s| ctx.parse_elem(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut timings = Timings::default();
    let triple = timings.time("construct", || {
        FamilyParams::from_values(a.family, a.m, &values)?.build(&ctx)
    })?;
    let json = triple.to_json();
    let inputs = json!({
        "family": a.family.as_str(),
        "m": a.m,
        "params": json.params,
    });
    emit(g, "construct", Some(&ctx), inputs, serde_json::to_value(&json)?, timings, || pretty(&json))
}

#[derive(Debug, Serialize)]
struct OracleDiff {
    an_agrees: bool,
    e_union_agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum_agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
struct VerifyResult {
    family: String,
    satisfied: bool,
    covers_field: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_bent: Option<bool>,
    an: AnReport,
    e_union: EUnionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum: Option<SpectrumSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleDiff>,
}

/// The brute-force spectrum: literal up to 12 variables, separated
/// character sums up to 16.
fn reference_spectrum(f: &BooleanFunction) -> Result<WalshSpectrum, Failure> {
    if f.ctx().degree() <= 6 {
        Ok(oracle::naive_walsh(f)?)
    } else {
        Ok(oracle::separable_walsh(f)?)
    }
}

fn oracle_failure(what: &str) -> Failure {
    Failure::usage(format!("oracle disagreement: {what}"))
}

pub fn verify(g: &GlobalOpts, a: &VerifyArgs) -> Result<String, Failure> {
    let mut timings = Timings::default();
    let triple = read_triple(&a.triple)?;
    let ctx = *triple.ctx();
    check_field(g, &ctx)?;
    let an = timings.time("verify_an", || verify_an(&triple));
    let e = timings.time("e_union", || e_union(&triple))?;
    let mut function = None;
    let spectrum = if a.bent {
        let f = timings.time("synthesize", || synthesize(&triple))?;
        let s = timings.time("walsh", || walsh_spectrum(&f))?;
        let summary = s.summary(f.weight());
        function = Some((f, s));
        Some(summary)
    } else {
        None
    };
    let oracle_diff = if g.oracle {
        let pointwise = timings.time("oracle_an", || oracle::pointwise_an_check(&triple))?;
        let pointwise_e = timings.time("oracle_e_union", || oracle::pointwise_e_union(&triple))?;
        let spectrum_agrees = match &function {
            Some((f, s)) => Some(timings.time("oracle_walsh", || reference_spectrum(f))? == *s),
            None => None,
        };
        Some(OracleDiff {
            an_agrees: pointwise == an,
            e_union_agrees: pointwise_e == e,
            spectrum_agrees,
        })
    } else {
        None
    };
    let result = VerifyResult {
        family: triple.family_tag().as_str().to_string(),
        satisfied: an.satisfied,
        covers_field: e.covers_field,
        is_bent: spectrum.map(|s| s.is_bent),
        an,
        e_union: e,
        spectrum,
        oracle: oracle_diff,
    };
    if let Some(d) = &result.oracle {
        if !d.an_agrees || !d.e_union_agrees || d.spectrum_agrees == Some(false) {
            return Err(oracle_failure(&serde_json::to_string(d)?));
        }
    }
    let inputs = json!({ "triple": a.triple, "bent": a.bent, "oracle": g.oracle });
    emit(g, "verify", Some(&ctx), inputs, serde_json::to_value(&result)?, timings, || pretty(&result))
}

pub fn synth(g: &GlobalOpts, a: &SynthArgs) -> Result<String, Failure> {
    let mut timings = Timings::default();
    let triple = read_triple(&a.triple)?;
    check_field(g, triple.ctx())?;
    let f = timings.time("synthesize", || synthesize(&triple))?;
    let json = f.to_json(Some(&triple));
    let inputs = json!({ "triple": a.triple });
    emit(g, "synth", Some(triple.ctx()), inputs, serde_json::to_value(&json)?, timings, || pretty(&json))
}

#[derive(Debug, Serialize)]
struct WalshSummary {
    #[serde(flatten)]
    summary: SpectrumSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
}

pub fn walsh(g: &GlobalOpts, a: &WalshArgs) -> Result<String, Failure> {
    let mut timings = Timings::default();
    let value = read_json(&a.input)?;
    let f = if value.get("table").is_some() {
        let json: FunctionJson = serde_json::from_value(value)?;
        BooleanFunction::from_json(&json)?
    } else if value.get("phi1").is_some() {
        let json: TripleJson = serde_json::from_value(value)?;
        let triple = PermutationTriple::from_json(&json)?;
        timings.time("synthesize", || synthesize(&triple))?
    } else {
        return Err(Failure::usage("input is neither a function nor a triple"));
    };
    let ctx = *f.ctx();
    check_field(g, &ctx)?;
    let s = timings.time("walsh", || walsh_spectrum(&f))?;
    let oracle_agrees = if g.oracle {
        if 2 * ctx.degree() > oracle::MAX_NAIVE_WALSH_VARS {
            return Err(Failure {
                code: EXIT_RESOURCE,
                message: format!(
                    "reference spectrum limited to {} variables",
                    oracle::MAX_NAIVE_WALSH_VARS
                ),
            });
        }
        let agrees = timings.time("oracle_walsh", || reference_spectrum(&f))? == s;
        if !agrees {
            return Err(oracle_failure("fast and reference spectra differ"));
        }
        Some(agrees)
    } else {
        None
    };
    let summary = WalshSummary {
        summary: s.summary(f.weight()),
        oracle_agrees,
    };
    let results = if a.full {
        json!({ "summary": summary, "values": s.values() })
    } else {
        serde_json::to_value(&summary)?
    };
    let inputs = json!({ "input": a.input, "full": a.full, "oracle": g.oracle });
    emit(g, "walsh", Some(&ctx), inputs, results, timings, || {
        if a.full {
            Ok(s.to_csv())
        } else {
            pretty(&summary)
        }
    })
}

pub fn params(g: &GlobalOpts, a: &ParamsArgs) -> Result<String, Failure> {
    let degree = a
        .family
        .field_degree(a.m)
        .filter(|_| a.m > 0)
        .ok_or_else(|| Failure::usage("params needs a family and a positive m"))?;
    let ctx = field_for_degree(g, degree)?;
    let mut timings = Timings::default();
    let list = timings.time("enumerate", || enumerate_params(&ctx, a.family, a.m))?;
    let names = a.family.param_names();
    let entries: Vec<Value> = list
        .iter()
        .map(|p| {
            let hex: Vec<String> = p.values().into_iter().map(|v| ctx.format_elem(v)).collect();
            if hex.len() == 1 {
                Value::String(hex[0].clone())
            } else {
                names
                    .iter()
                    .zip(hex)
                    .map(|(n, h)| (n.to_string(), Value::String(h)))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            }
        })
        .collect();
    let results = Value::Array(entries);
    let inputs = json!({ "family": a.family.as_str(), "m": a.m });
    emit(g, "params", Some(&ctx), inputs, results.clone(), timings, || pretty(&results))
}

#[derive(Debug, Serialize)]
struct FoundTriple {
    triple: TripleJson,
    e_union: EUnionReport,
}

#[derive(Debug, Serialize)]
struct SearchResult {
    status: triplebent::constructions::SearchStatus,
    examined: u64,
    found: Vec<FoundTriple>,
}

pub fn search(g: &GlobalOpts, a: &SearchArgs) -> Result<String, Failure> {
    let ctx = match (a.n, &g.field) {
        (Some(n), _) => field_for_degree(g, n)?,
        (None, Some(spec)) => spec.parse()?,
        (None, None) => return Err(Failure::usage("search needs --n or --field")),
    };
    let mut timings = Timings::default();
    let outcome = timings.time("search", || search_custom_triples(&ctx, a.shape, a.budget, g.seed))?;
    if g.oracle {
        for (t, e) in &outcome.found {
            let an = timings.time("oracle", || oracle::pointwise_an_check(t))?;
            let pe = timings.time("oracle", || oracle::pointwise_e_union(t))?;
            if !an.satisfied || pe != *e {
                return Err(oracle_failure("a found triple fails the pointwise check"));
            }
        }
    }
    let result = SearchResult {
        status: outcome.status,
        examined: outcome.examined,
        found: outcome
            .found
            .iter()
            .map(|(t, e)| FoundTriple {
                triple: t.to_json(),
                e_union: *e,
            })
            .collect(),
    };
    let inputs = json!({
        "n": ctx.degree(),
        "shape": a.shape.as_str(),
        "budget": a.budget,
        "seed": g.seed,
        "oracle": g.oracle,
    });
    emit(g, "search", Some(&ctx), inputs, serde_json::to_value(&result)?, timings, || pretty(&result))
}
