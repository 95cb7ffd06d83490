//! Report envelope and JSON conventions.

use serde::Serialize;
use serde_json::{Map, Value};

/// Rewrites every non-integer JSON number as a decimal string.
///
/// Exact values already serialise as `{"a": "p/q", "b": "r/s"}`; integers such
/// as counts and indices stay numeric.
pub fn floats_to_strings(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            Value::String(n.as_f64().map(format_float).unwrap_or_else(|| n.to_string()))
        }
        Value::Array(a) => Value::Array(a.into_iter().map(floats_to_strings).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, floats_to_strings(v))).collect()),
        other => other,
    }
}

/// Shortest round-tripping decimal form.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        x.to_string()
    }
}

/// A finished command: the report plus whether every assertion held.
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn new(report: &impl Serialize, text: String, passed: bool) -> Self {
        Self {
            report: serde_json::to_value(report).expect("reports serialise"),
            text,
            passed,
        }
    }
}

pub fn envelope(argv: &[String], outcome: &Outcome) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), Value::from(argv.to_vec()));
    m.insert("status".into(), Value::from(if outcome.passed { "ok" } else { "fail" }));
    m.insert("report".into(), floats_to_strings(outcome.report.clone()));
    Value::Object(m)
}

pub fn error_envelope(argv: &[String], kind: &str, message: &str) -> Value {
    serde_json::json!({
        "command": argv,
        "status": "error",
        "error": { "kind": kind, "message": message },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_become_strings() {
        let v = serde_json::json!({"x": 1.5, "n": 3, "a": [0.1, -2]});
        let w = floats_to_strings(v);
        assert_eq!(w, serde_json::json!({"x": "1.5", "n": 3, "a": ["0.1", -2]}));
    }
}
