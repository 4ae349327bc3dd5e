use std::collections::BTreeMap;
use std::io::Read;

use cfreduce::cf::{
    detect_quasi_period, expand_series, expand_surd, find_quasi_period, ContinuedFraction, Termination,
};
use cfreduce::families::{
    closed_form_quotients, quotient_closed_forms, regulator_sweep, s_sequence, sweep_regulators, torsion_condition,
    yu_certificate, FamilyParams, SweepResult, YuOutcome, YuWitness,
};
use cfreduce::reduction::{verify_reduction_theorem, Reducible, Reduction, Target, TheoremInput, Verdict};
use cfreduce::series::{g3_series, series_sqrt, LaurentSeries};
use cfreduce::{Coeff, Field, Poly};
use serde_json::{json, Value};

use crate::parse::{parse_rational, PolyExpr};
use crate::report::{
    period_json, period_text, poly_json, quotients_json, termination_name, CliError, Outcome, EXIT_BAD_REDUCTION,
    EXIT_VERIFY_FAILED,
};
use crate::{Engine, ExpandArgs, FamilyArgs, InputArgs, ReduceArgs, SweepArgs, TargetArgs};

const DEFAULT_SERIES_PREC: usize = 60;
const DEFAULT_QUOTIENTS: usize = 10;

enum Input {
    Sqrt(Poly),
    Series(LaurentSeries),
}

impl Input {
    fn field(&self) -> Field {
        match self {
            Input::Sqrt(d) => d.field(),
            Input::Series(f) => f.field(),
        }
    }

    fn describe(&self) -> String {
        match self {
            Input::Sqrt(d) => format!("sqrt({d})"),
            Input::Series(f) => match f.precision() {
                Some(n) => format!("{f} ({n} guaranteed coefficients)"),
                None => format!("{f} (exact)"),
            },
        }
    }

    fn json(&self) -> Value {
        match self {
            Input::Sqrt(d) => json!({ "kind": "sqrt", "d": poly_json(d), "field": d.field().to_string() }),
            Input::Series(f) => json!({
                "kind": "series",
                "text": f.to_string(),
                "field": f.field().to_string(),
                "guaranteed_coefficients": f.precision(),
            }),
        }
    }
}

fn read_items(source: &str) -> Result<Vec<String>, CliError> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| CliError::parse(format!("reading stdin: {e}")))?;
        Ok(buf.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect())
    } else {
        Ok(source.split(',').map(|s| s.trim().to_string()).collect())
    }
}

fn series_from_items(items: &[String]) -> Result<LaurentSeries, CliError> {
    let exprs = items.iter().map(|s| PolyExpr::parse(s)).collect::<Result<Vec<_>, _>>()?;
    let (head, tail) = exprs.split_first().ok_or_else(|| CliError::parse("--coeffs needs a polynomial part"))?;
    let field = if exprs.iter().any(PolyExpr::uses_t) { Field::RatFun } else { Field::Rational };
    let poly = head.to_poly(field)?;
    let top = poly.degree().unwrap_or(0);
    let mut coeffs: Vec<Coeff> = (0..=top).rev().map(|i| poly.coeff(i)).collect();
    for e in tail {
        coeffs.push(e.to_coeff(field)?);
    }
    Ok(LaurentSeries::truncated(field, top as i64, coeffs))
}

fn parse_input(args: &InputArgs) -> Result<Input, CliError> {
    if let Some(s) = &args.sqrt {
        let e = PolyExpr::parse(s)?;
        return Ok(Input::Sqrt(e.to_poly(e.natural_field())?));
    }
    if let Some(source) = &args.coeffs {
        let f = series_from_items(&read_items(source)?)?;
        return Ok(Input::Series(match args.prec {
            Some(n) => f.truncate(n),
            None => f,
        }));
    }
    Ok(Input::Series(g3_series(args.prec.unwrap_or(DEFAULT_SERIES_PREC), Field::Rational)))
}

fn parse_target(t: &TargetArgs) -> Result<Option<Target>, CliError> {
    if let Some(p) = t.modulus {
        Field::prime(p).map_err(|e| CliError::parse(format!("--mod {p}: {e}")))?;
        return Ok(Some(Target::Prime(p)));
    }
    if let Some(tau) = &t.param_value {
        return Ok(Some(Target::Point(parse_rational(tau)?)));
    }
    Ok(None)
}

fn check_source(field: Field, target: &Target) -> Result<(), CliError> {
    match (target, field) {
        (Target::Prime(_), Field::RatFun) => Err(CliError::parse("input depends on t; specialise with --param-value")),
        (Target::Point(_), Field::Rational) => Err(CliError::parse("input does not involve t; nothing to specialise")),
        (Target::Prime(_), Field::Prime(_)) => Err(CliError::parse("input is already over a finite field")),
        _ => Ok(()),
    }
}

fn good<T>(r: Reduction<T>) -> Result<T, CliError> {
    match r {
        Reduction::Good(v) => Ok(v),
        Reduction::Bad(b) => Err(CliError::bad_reduction(b.to_string())),
    }
}

fn apply_target(input: Input, target: Option<&Target>) -> Result<Input, CliError> {
    let Some(target) = target else { return Ok(input) };
    if matches!(target, Target::Point(_)) && input.field() == Field::Rational {
        return Ok(input);
    }
    check_source(input.field(), target)?;
    Ok(match input {
        Input::Sqrt(d) => Input::Sqrt(good(d.reduce(target)?)?),
        Input::Series(f) => Input::Series(good(f.reduce(target)?)?),
    })
}

fn cf_text(out: &mut Outcome, cf: &ContinuedFraction) {
    for (h, a) in cf.entries().iter().enumerate() {
        out.line(format!("a_{h} = {a}"));
    }
    let n = cf.len();
    out.line(match cf.termination() {
        Termination::Complete => format!("termination: complete after {n} quotients (exact value reached)"),
        Termination::Limit => format!("termination: limit of {n} quotients"),
        Termination::PrecisionExhausted => {
            format!("termination: insufficient precision for a_{n} ({n} quotients are guaranteed)")
        }
    });
}

pub fn expand(a: &ExpandArgs) -> Result<Outcome, CliError> {
    let target = parse_target(&a.target)?;
    let input = apply_target(parse_input(&a.input)?, target.as_ref())?;
    let mut out = Outcome::new("expand");
    out.line(format!("input: {} over {}", input.describe(), input.field()));
    out.set("input", input.json());
    let quotients = a.quotients.unwrap_or(match &input {
        Input::Sqrt(_) => DEFAULT_QUOTIENTS,
        Input::Series(f) => f.precision().map_or(DEFAULT_QUOTIENTS, |n| n + 1),
    });
    let (cf, period) = match &input {
        Input::Sqrt(d) => match a.engine {
            Engine::Surd => {
                let (cf, state) = expand_surd(d, quotients)?;
                (cf, detect_quasi_period(&state))
            }
            Engine::Series => {
                let half = d.degree().unwrap_or(0) / 2;
                let prec = a.input.prec.unwrap_or(2 * half.max(1) * quotients + 2 * half + 4);
                (expand_series(&series_sqrt(d, prec)?, quotients), None)
            }
        },
        Input::Series(f) => (expand_series(f, quotients), None),
    };
    out.set(
        "engine",
        json!(if matches!(input, Input::Sqrt(_)) && a.engine == Engine::Surd { "surd" } else { "series" }),
    );
    cf_text(&mut out, &cf);
    out.set("quotients", quotients_json(&cf));
    out.set("termination", termination_name(cf.termination()).into());
    out.set("insufficient_precision", (cf.termination() == Termination::PrecisionExhausted).into());
    match &period {
        Some(info) => {
            out.line(format!("periodic: {}", period_text(info)));
            out.set("period", period_json(info));
        }
        None => out.set("period", Value::Null),
    }
    Ok(out)
}

pub fn reduce(a: &ReduceArgs) -> Result<Outcome, CliError> {
    let target = parse_target(&a.target)?.ok_or_else(|| CliError::parse("reduce needs --mod or --param-value"))?;
    let input = parse_input(&a.input)?;
    check_source(input.field(), &target)?;
    let mut out = Outcome::new("reduce");
    out.line(format!("input: {} over {}", input.describe(), input.field()));
    out.line(format!("target: {target}"));
    out.set("input", input.json());
    out.set("target", target_json(&target));
    if a.verify {
        verify(&mut out, input, &target, a.depth)?;
    } else {
        reduce_plain(&mut out, input, &target, a.depth)?;
    }
    Ok(out)
}

fn target_json(t: &Target) -> Value {
    match t {
        Target::Prime(p) => json!({ "prime": p.to_string() }),
        Target::Point(tau) => json!({ "param_value": tau.to_string() }),
    }
}

fn source_cf(input: &Input, depth: usize) -> Result<ContinuedFraction, CliError> {
    Ok(match input {
        Input::Sqrt(d) => expand_surd(d, depth)?.0,
        Input::Series(f) => expand_series(f, depth),
    })
}

fn reduce_plain(out: &mut Outcome, input: Input, target: &Target, depth: usize) -> Result<(), CliError> {
    let cf = source_cf(&input, depth)?;
    let reduced: Result<String, String> = match &input {
        Input::Sqrt(d) => match d.reduce(target)? {
            Reduction::Good(r) => Ok(r.to_string()),
            Reduction::Bad(b) => Err(b.to_string()),
        },
        Input::Series(f) => match f.reduce(target)? {
            Reduction::Good(r) => Ok(r.to_string()),
            Reduction::Bad(b) => Err(b.to_string()),
        },
    };
    let blowups: Vec<_> = cf.reduce(target)?.into_iter().filter_map(|r| r.bad().cloned()).collect();
    match &reduced {
        Ok(r) => out.line(format!("reduced input: {r}")),
        Err(b) => out.line(format!("reduced input: bad reduction ({b})")),
    }
    for b in &blowups {
        out.line(format!("blowup: {b}"));
    }
    if blowups.is_empty() {
        out.line(format!("no blowups among the first {} partial quotients", cf.len()));
    }
    match &reduced {
        Ok(r) => out.set("reduced_input", r.clone().into()),
        Err(b) => {
            out.set("reduced_input", Value::Null);
            out.set("bad_reason", b.clone().into());
            out.code = EXIT_BAD_REDUCTION;
        }
    }
    out.set("blowups", blowups_json(&blowups));
    Ok(())
}

fn blowups_json(b: &[cfreduce::reduction::BadReduction]) -> Value {
    Value::Array(
        b.iter()
            .map(|b| json!({ "object": b.object, "exponent": b.exponent, "coefficient": b.coefficient.to_string() }))
            .collect(),
    )
}

fn verify(out: &mut Outcome, input: Input, target: &Target, depth: usize) -> Result<(), CliError> {
    let theorem_input = match input {
        Input::Sqrt(d) => TheoremInput::Sqrt(d),
        Input::Series(f) => TheoremInput::Series(f),
    };
    let report = verify_reduction_theorem(&theorem_input, target, depth)?;
    let verdict = match report.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::BadReduction => "BAD REDUCTION",
    };
    out.line(format!("verdict: {verdict}"));
    if let Some(reason) = &report.bad {
        out.line(format!("reason: {reason}"));
    }
    if report.verdict != Verdict::BadReduction {
        out.line(format!(
            "matched {} of {} reduced convergent classes against {} direct convergents",
            report.matched,
            report.reduced.len(),
            report.direct.len()
        ));
        for c in &report.reduced {
            let range = if c.is_collapse() { format!("r_{}..r_{}", c.lo, c.hi) } else { format!("r_{}", c.lo) };
            out.line(format!("  {range}: ({}) / ({})  normalizer {}", c.x, c.y, c.normalizer));
        }
        let classes = report.collapse_classes();
        if classes.is_empty() {
            out.line("collapse classes: none");
        } else {
            let list: Vec<String> = classes.iter().map(|(lo, hi)| format!("r_{lo}..r_{hi}")).collect();
            out.line(format!("collapse classes: {}", list.join(", ")));
        }
        if let Some(i) = report.mismatch {
            out.line(format!("first mismatch at class {i}"));
        }
    }
    for b in &report.blowups {
        out.line(format!("blowup: {b}"));
    }
    out.set("verdict", json!(verdict.to_lowercase().replace(' ', "_")));
    out.set("bad_reason", report.bad.clone().map_or(Value::Null, Value::String));
    out.set("matched", report.matched.into());
    out.set(
        "reduced_convergents",
        Value::Array(
            report
                .reduced
                .iter()
                .map(|c| {
                    json!({
                        "lo": c.lo, "hi": c.hi, "normalizer": c.normalizer,
                        "x": poly_json(&c.x), "y": poly_json(&c.y),
                    })
                })
                .collect(),
        ),
    );
    out.set(
        "direct_convergents",
        Value::Array(report.direct.iter().map(|c| json!({ "x": poly_json(&c.x), "y": poly_json(&c.y) })).collect()),
    );
    out.set(
        "collapse_classes",
        Value::Array(report.collapse_classes().iter().map(|(lo, hi)| json!([lo, hi])).collect()),
    );
    out.set("blowups", blowups_json(&report.blowups));
    out.code = match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_VERIFY_FAILED,
        Verdict::BadReduction => EXIT_BAD_REDUCTION,
    };
    Ok(())
}

fn rational_poly(s: &str) -> Result<Poly, CliError> {
    Ok(PolyExpr::parse(s)?.to_poly(Field::Rational)?)
}

fn sweep(out: &mut Outcome, a: &SweepArgs) -> Result<BTreeMap<u64, SweepResult>, CliError> {
    let d = rational_poly(&a.sqrt)?;
    for &p in &a.primes {
        Field::prime(p).map_err(|e| CliError::parse(format!("--primes: {e}")))?;
    }
    let table = regulator_sweep(&d, &a.primes, a.bound)?;
    out.line(format!("D = {d}"));
    out.set("d", poly_json(&d));
    let mut json_table = serde_json::Map::new();
    for (p, r) in &table {
        let (line, v) = match r {
            SweepResult::Regulator(info) => {
                let mut v = period_json(info);
                v["status"] = "regulator".into();
                (period_text(info), v)
            }
            SweepResult::Bad(b) => (format!("bad reduction: {b}"), json!({ "status": "bad", "reason": b.to_string() })),
            SweepResult::NotFound { steps } => (
                format!("no quasi-period within {steps} partial quotients"),
                json!({ "status": "not_found", "steps": steps }),
            ),
            SweepResult::Square => ("D is a square mod p".to_string(), json!({ "status": "square" })),
        };
        out.line(format!("p = {p}: {line}"));
        json_table.insert(p.to_string(), v);
    }
    out.set("regulators", Value::Object(json_table));
    Ok(table)
}

pub fn regulator(a: &SweepArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("regulator");
    sweep(&mut out, a)?;
    Ok(out)
}

pub fn yu(a: &SweepArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("yu");
    let table = sweep(&mut out, a)?;
    match yu_certificate(&sweep_regulators(&table)) {
        YuOutcome::NonPeriodic(c) => {
            let (kind, ell, vp, vq) = match c.witness {
                YuWitness::Core { ell, v_p_side, v_q_side } => ("core", ell, v_p_side, v_q_side),
                YuWitness::Exponent { ell, v_p_side, v_q_side } => ("exponent", ell, v_p_side, v_q_side),
            };
            out.line(format!(
                "NON-PERIODIC over Q: {mp}*{p}^i = {mq}*{q}^j has no solution in integers i, j >= 0 (m_{p} = {mp}, m_{q} = {mq})",
                p = c.p,
                q = c.q,
                mp = c.m_p,
                mq = c.m_q
            ));
            out.line(format!("witness ({kind}): v_{ell}({}) = {vp}, v_{ell}({}) = {vq}", c.m_p, c.m_q));
            out.set(
                "certificate",
                json!({
                    "verdict": "non_periodic",
                    "p": c.p.to_string(), "m_p": c.m_p.to_string(),
                    "q": c.q.to_string(), "m_q": c.m_q.to_string(),
                    "witness": { "kind": kind, "prime": ell.to_string(), "v_p_side": vp, "v_q_side": vq },
                }),
            );
        }
        YuOutcome::Inconclusive { reason } => {
            out.line(format!("INCONCLUSIVE: {reason}"));
            out.set("certificate", json!({ "verdict": "inconclusive", "reason": reason }));
        }
    }
    Ok(out)
}

fn family_coeff(s: &str, field: Field, target: Option<&Target>) -> Result<Coeff, CliError> {
    let e = PolyExpr::parse(s)?;
    let c = e.to_coeff(field)?;
    let Some(target) = target else { return Ok(c) };
    if matches!(target, Target::Point(_)) && field == Field::Rational {
        return Ok(c);
    }
    check_source(field, target)?;
    Ok(good(Poly::constant(c).reduce(target)?)?.coeff(0))
}

pub fn family(a: &FamilyArgs) -> Result<Outcome, CliError> {
    let target = parse_target(&a.target)?;
    let exprs: Vec<&String> = [Some(&a.v), Some(&a.w), a.u.as_ref()].into_iter().flatten().collect();
    let mut field = Field::Rational;
    for s in &exprs {
        if PolyExpr::parse(s)?.uses_t() {
            field = Field::RatFun;
        }
    }
    let v = family_coeff(&a.v, field, target.as_ref())?;
    let w = family_coeff(&a.w, field, target.as_ref())?;
    let params = match &a.u {
        Some(u) => FamilyParams::new(family_coeff(u, field, target.as_ref())?, v, w)?,
        None => FamilyParams::normalized(v, w)?,
    };
    let d = params.quartic();
    let mut out = Outcome::new("family");
    out.line(format!("u = {}, v = {}, w = {} over {}", params.u(), params.v(), params.w(), params.field()));
    out.line(format!("D = {d}"));
    out.set(
        "params",
        json!({
            "u": params.u().to_string(), "v": params.v().to_string(), "w": params.w().to_string(),
            "field": params.field().to_string(), "normalized": params.is_normalized(),
        }),
    );
    out.set("d", poly_json(&d));

    if params.is_normalized() {
        let seq = s_sequence(&params, a.n + 1)?;
        let s_text: Vec<String> = seq.values().iter().enumerate().map(|(h, s)| format!("s_{h} = {s}")).collect();
        out.line(s_text.join(", "));
        out.set("s", Value::Array(seq.values().iter().map(|s| s.to_string().into()).collect()));
        out.set("terminal", json!(seq.terminal()));
        let k = seq.terminal().map_or(a.n, |t| a.n.min(t - 1));
        let bc = quotient_closed_forms(&seq, &params, k)?;
        let closed = closed_form_quotients(&params, k)?;
        let (direct, _) = expand_surd(&d, k + 1)?;
        let mut rows = Vec::new();
        for (h, (b, c)) in bc.iter().enumerate() {
            let h = h + 1;
            out.line(format!("h = {h}: b = {b}, c = {c}, a_{h} = {}", closed[h]));
            rows.push(json!({ "h": h, "b": b.to_string(), "c": c.to_string(), "a": poly_json(&closed[h]) }));
        }
        out.set("closed_forms", Value::Array(rows));
        let agree = direct.entries().len() >= closed.len() && direct.entries()[..closed.len()] == closed[..];
        out.line(format!(
            "closed forms {} the direct expansion through a_{k}",
            if agree { "agree with" } else { "DISAGREE with" }
        ));
        out.set("oracle_agrees", agree.into());
        if let Some(t) = seq.terminal() {
            out.line(format!("s_{t} = inf: a_{t} blows up to degree 2"));
        }
    } else {
        out.line("parameters are not normalized (u + w^2 != v); s-sequence skipped");
    }

    if let Some(m) = a.check_m {
        let holds = torsion_condition(m, &params)?;
        out.line(format!("torsion condition for m = {m}: {}", if holds { "holds" } else { "fails" }));
        let mut check = json!({ "m": m, "holds": holds });
        if holds {
            let found = find_quasi_period(&d, 4 * m as usize + 8)?.0.regulator();
            match found {
                Some(r) => out.line(format!("direct expansion: regulator {r}")),
                None => out.line("direct expansion: no quasi-period found"),
            }
            check["regulator"] = json!(found);
        }
        out.set("torsion", check);
    }
    Ok(out)
}
