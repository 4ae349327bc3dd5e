//! Exit codes, errors and exact-string JSON encoding.

use cfreduce::cf::{ContinuedFraction, PeriodInfo, Termination};
use cfreduce::{Error, Poly};
use serde_json::{json, Map, Value};

use crate::parse::ParseError;

pub const SCHEMA: &str = "cfreduce/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_CHAR2: u8 = 3;
pub const EXIT_BAD_REDUCTION: u8 = 4;
pub const EXIT_VERIFY_FAILED: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_PARSE, kind: "parse", message: message.into() }
    }

    pub fn bad_reduction(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_BAD_REDUCTION, kind: "bad_reduction", message: message.into() }
    }

    pub fn to_json(&self, command: &str) -> Value {
        json!({
            "schema": SCHEMA,
            "command": command,
            "error": { "kind": self.kind, "message": self.message, "exit_code": self.code },
        })
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::parse(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Characteristic2 => CliError { code: EXIT_CHAR2, kind: "characteristic_2", message: e.to_string() },
            _ => CliError { code: EXIT_FAILURE, kind: "math", message: e.to_string() },
        }
    }
}

/// Text for humans, JSON for machines, and the exit code.
pub struct Outcome {
    pub text: String,
    pub json: Map<String, Value>,
    pub code: u8,
}

impl Outcome {
    pub fn new(command: &str) -> Outcome {
        let mut json = Map::new();
        json.insert("schema".into(), SCHEMA.into());
        json.insert("command".into(), command.into());
        Outcome { text: String::new(), json, code: EXIT_OK }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.to_string(), value);
    }
}

pub fn poly_json(p: &Poly) -> Value {
    json!({
        "text": p.to_string(),
        "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::Complete => "complete",
        Termination::Limit => "limit",
        Termination::PrecisionExhausted => "precision_exhausted",
    }
}

pub fn quotients_json(cf: &ContinuedFraction) -> Value {
    Value::Array(
        cf.entries()
            .iter()
            .enumerate()
            .map(|(h, a)| {
                let mut v = poly_json(a);
                v["index"] = h.into();
                v
            })
            .collect(),
    )
}

pub fn period_json(info: &PeriodInfo) -> Value {
    json!({
        "quasi_period": info.quasi_period,
        "regulator": info.regulator,
        "multiplier": info.multiplier.to_string(),
        "full_period": info.full_period,
    })
}

pub fn period_text(info: &PeriodInfo) -> String {
    let full = match info.full_period {
        Some(l) => format!(", full period {l}"),
        None => String::new(),
    };
    format!("quasi-period r = {}, regulator m = {}, Q_r = {}{full}", info.quasi_period, info.regulator, info.multiplier)
}
