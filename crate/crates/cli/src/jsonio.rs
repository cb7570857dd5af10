//! Report assembly and input parsing shared by all subcommands.
//!
//! Reports are single JSON objects with a `schema` field, the invoked
//! `command`, a `status` of `ok` / `false` / `error`, and the payload
//! fields flattened alongside. Keys serialize in sorted order, so
//! identical invocations produce byte-identical output.

use std::cmp::Ordering;

use serde_json::{json, Map, Value};

use majorize::{
    format_rat, parse_rat, DoublyStochastic, Error, ExponentVector, MeanMode, MeanValue, PermGroup,
    Permutation, RVector, Rat, Result, SquareMatrix, DEFAULT_GROUP_CAP,
};

use crate::{ModeArg, SCHEMA};

pub const CAP_ENV: &str = "MAJORIZE_GROUP_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    False,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::False => "false",
            Status::Error => "error",
        }
    }
}

pub struct Outcome {
    pub command: &'static str,
    pub status: Status,
    pub payload: Map<String, Value>,
}

impl Outcome {
    pub fn ok(command: &'static str, payload: Map<String, Value>) -> Self {
        Outcome {
            command,
            status: Status::Ok,
            payload,
        }
    }

    pub fn falsified(command: &'static str, payload: Map<String, Value>) -> Self {
        Outcome {
            command,
            status: Status::False,
            payload,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::False => 1,
            Status::Error => 2,
        }
    }
}

pub fn error_report(command: &'static str, message: &str) -> Outcome {
    let mut payload = Map::new();
    payload.insert("message".into(), json!(message));
    Outcome {
        command,
        status: Status::Error,
        payload,
    }
}

pub fn print_report(outcome: Outcome, pretty: bool, quiet: bool) {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(outcome.command));
    doc.insert("status".into(), json!(outcome.status.as_str()));
    if !quiet {
        for (k, v) in outcome.payload {
            doc.insert(k, v);
        }
    }
    let value = Value::Object(doc);
    let text = if pretty {
        serde_json::to_string_pretty(&value).expect("serializable")
    } else {
        serde_json::to_string(&value).expect("serializable")
    };
    println!("{text}");
}

// ---- input parsing ----

pub fn parse_vector(text: &str) -> Result<RVector> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad vector {text:?}: {e}")))
}

pub fn parse_exponents(text: &str) -> Result<ExponentVector> {
    ExponentVector::new(parse_vector(text)?)
}

pub fn parse_rational(text: &str) -> Result<Rat> {
    parse_rat(text)
}

pub fn group_cap() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad {CAP_ENV} value {raw:?}"))),
        Err(_) => Ok(DEFAULT_GROUP_CAP),
    }
}

/// Group spec: `"S"` expands to the full symmetric group of the given
/// degree; otherwise semicolon-separated generators in cycle notation
/// (`"e"` allowed). The JSON object form `{"n":4,"cycles":"(1,2)"}` is
/// accepted as well; its degree must match.
pub fn parse_group(spec: &str, n: usize) -> Result<PermGroup> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        let value: Value = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("bad group object: {e}")))?;
        let declared = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("group object needs an integer \"n\"".into()))?
            as usize;
        if declared != n {
            return Err(Error::DegreeMismatch {
                left: declared,
                right: n,
            });
        }
        let cycles = value
            .get("cycles")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("group object needs a \"cycles\" string".into()))?;
        return parse_group(cycles, n);
    }
    if trimmed.eq_ignore_ascii_case("s") {
        return PermGroup::symmetric(n);
    }
    let cap = group_cap()?;
    let generators: Vec<Permutation> = trimmed
        .split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| Permutation::parse_cycles(part, n))
        .collect::<Result<_>>()?;
    PermGroup::generate(n, &generators, cap)
}

pub fn mean_mode(mode: ModeArg) -> MeanMode {
    match mode {
        ModeArg::Exact => MeanMode::Exact,
        ModeArg::Float => MeanMode::Float,
    }
}

// ---- payload building blocks ----

pub fn rat_json(r: &Rat) -> Value {
    json!(format_rat(r))
}

pub fn mean_json(v: &MeanValue) -> Value {
    match v {
        MeanValue::Exact(r) => rat_json(r),
        MeanValue::Float(f) => json!(f),
    }
}

pub fn mode_json(v: &MeanValue) -> Value {
    match v.mode() {
        MeanMode::Exact => json!("exact"),
        MeanMode::Float => json!("float"),
    }
}

pub fn ordering_json(o: Ordering) -> Value {
    json!(match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    })
}

pub fn matrix_json(m: &SquareMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(rat_json).collect()))
            .collect(),
    )
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

// ---- report field extraction (verify side) ----

pub fn field<'v>(doc: &'v Value, key: &str) -> Result<&'v Value> {
    doc.get(key)
        .ok_or_else(|| Error::Parse(format!("report is missing {key:?}")))
}

pub fn vector_field(doc: &Value, key: &str) -> Result<RVector> {
    serde_json::from_value(field(doc, key)?.clone())
        .map_err(|e| Error::Parse(format!("bad {key:?}: {e}")))
}

pub fn usize_field(doc: &Value, key: &str) -> Result<usize> {
    field(doc, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::Parse(format!("bad {key:?}: expected an integer")))
}

pub fn string_field<'v>(doc: &'v Value, key: &str) -> Result<&'v str> {
    field(doc, key)?
        .as_str()
        .ok_or_else(|| Error::Parse(format!("bad {key:?}: expected a string")))
}

pub fn rat_field(doc: &Value, key: &str) -> Result<Rat> {
    parse_rat(string_field(doc, key)?)
}

pub fn matrix_field(doc: &Value, key: &str) -> Result<DoublyStochastic> {
    let rows_value = field(doc, key)?
        .as_array()
        .ok_or_else(|| Error::Parse(format!("bad {key:?}: expected an array of rows")))?;
    let mut rows = Vec::with_capacity(rows_value.len());
    for row in rows_value {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        let mut parsed = Vec::with_capacity(cells.len());
        for cell in cells {
            let s = cell
                .as_str()
                .ok_or_else(|| Error::Parse("matrix entry must be a string".into()))?;
            parsed.push(parse_rat(s)?);
        }
        rows.push(parsed);
    }
    DoublyStochastic::new(SquareMatrix::from_rows(rows)?)
}
