//! The JSON envelope and CSV writer.

use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

/// A float as a JSON number with 17 significant digits; non-finite values
/// become the strings `"+inf"`, `"-inf"` and `"nan"`, and `-0` becomes `0`.
pub fn num(x: f64) -> Value {
    let x = if x == 0.0 { 0.0 } else { x };
    if x.is_nan() {
        Value::String("nan".into())
    } else if x.is_infinite() {
        Value::String(if x > 0.0 { "+inf" } else { "-inf" }.into())
    } else {
        let s = format!("{x:.16e}");
        Value::Number(Number::from_str(&s).expect("formatted float is a JSON number"))
    }
}

/// Builds an object from `(key, value)` pairs; keys come out sorted.
pub fn obj<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub struct Envelope {
    pub command: String,
    pub params: Map<String, Value>,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Envelope {
    pub fn new(command: &str) -> Self {
        Envelope {
            command: command.into(),
            params: Map::new(),
            payload: Value::Null,
            diagnostics: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<String>) {
        self.params.insert(key.into(), Value::String(value.into()));
    }

    pub fn to_value(&self) -> Value {
        obj([
            ("schema_version", Value::String(SCHEMA_VERSION.into())),
            ("command", Value::String(self.command.clone())),
            ("params", Value::Object(self.params.clone())),
            ("payload", self.payload.clone()),
            (
                "diagnostics",
                Value::Array(
                    self.diagnostics
                        .iter()
                        .cloned()
                        .map(Value::String)
                        .collect(),
                ),
            ),
        ])
    }

    pub fn write_json(&self, w: &mut dyn Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, &self.to_value())?;
        writeln!(w)
    }
}

/// Writes `radius,p,g,neg` rows.
pub fn write_profile_csv(w: &mut dyn Write, rows: &[[f64; 4]]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["radius", "p", "g", "neg"])?;
    for row in rows {
        out.write_record(row.iter().map(|x| csv_num(*x)))?;
    }
    out.flush()?;
    Ok(())
}

fn csv_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "+inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_full_precision() {
        let v = num(0.1);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "1.0000000000000001e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
        assert_eq!(num(f64::INFINITY), Value::String("+inf".into()));
        assert_eq!(num(f64::NEG_INFINITY), Value::String("-inf".into()));
        assert_eq!(num(-0.0), num(0.0));
    }
}
