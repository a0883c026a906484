//! Flat key/value records rendered as csv, json or plain text. Floats are
//! printed with 17 significant digits so every format round-trips exactly.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Str(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Str(x.to_owned())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(x) => fmt_float(*x),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => s.clone(),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(i) => Json::from(*i),
            // serde_json prints the shortest digits that round-trip, which
            // parse to the same double as the 17-digit text
            Value::Float(x) => Number::from_f64(*x).map_or_else(|| Json::String(x.to_string()), Json::Number),
            Value::Bool(b) => Json::Bool(*b),
            Value::Str(s) => Json::String(s.clone()),
            Value::Null => Json::Null,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    pub fn push(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.0.push((key, value.into()));
        self
    }
}

/// Write `records` (all with the same keys) to `out`. json emits an object
/// for a single record and an array otherwise.
pub fn emit(out: &mut dyn Write, format: Format, records: &[Record]) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.0.iter().map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(r.0.iter().map(|(_, v)| v.text()))?;
            }
            w.flush()
        }
        Format::Json => {
            let objects: Vec<Json> = records
                .iter()
                .map(|r| Json::Object(r.0.iter().map(|(k, v)| (k.to_string(), v.json())).collect::<Map<_, _>>()))
                .collect();
            let doc = match <[Json; 1]>::try_from(objects) {
                Ok([one]) => one,
                Err(many) => Json::Array(many),
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Plain => {
            for (i, r) in records.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let width = r.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &r.0 {
                    writeln!(out, "{k:<width$}  {}", v.text())?;
                }
            }
            Ok(())
        }
    }
}
