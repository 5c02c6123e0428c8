//! Record emission: CSV with a single header row, or newline-delimited
//! JSON objects. Integer-valued fields are serialized as decimal strings in
//! JSON so arbitrary-precision counts survive consumers that parse numbers
//! as doubles.

use num_bigint::BigUint;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Value {
    Text(String),
    Int(i64),
    UInt(u64),
    Float(f64),
    Big(BigUint),
    Bool(bool),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Int(v) => v.to_string(),
            Value::UInt(v) => v.to_string(),
            Value::Float(v) => format!("{v}"),
            Value::Big(v) => v.to_string(),
            Value::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Text(s) => json_string(s),
            Value::Int(v) => json_string(&v.to_string()),
            Value::UInt(v) => json_string(&v.to_string()),
            Value::Float(v) => {
                if v.is_finite() {
                    format!("{v}")
                } else {
                    json_string(&v.to_string())
                }
            }
            Value::Big(v) => json_string(&v.to_string()),
            Value::Bool(v) => v.to_string(),
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub struct Emitter<W: Write> {
    format: Format,
    out: W,
    header_written: bool,
}

impl<W: Write> Emitter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Emitter {
            format,
            out,
            header_written: false,
        }
    }

    pub fn emit(&mut self, fields: &[(&str, Value)]) -> std::io::Result<()> {
        match self.format {
            Format::Csv => {
                if !self.header_written {
                    let header: Vec<&str> = fields.iter().map(|(name, _)| *name).collect();
                    writeln!(self.out, "{}", header.join(","))?;
                    self.header_written = true;
                }
                let row: Vec<String> = fields.iter().map(|(_, v)| v.csv()).collect();
                writeln!(self.out, "{}", row.join(","))
            }
            Format::Json => {
                let body: Vec<String> = fields
                    .iter()
                    .map(|(name, v)| format!("{}:{}", json_string(name), v.json()))
                    .collect();
                writeln!(self.out, "{{{}}}", body.join(","))
            }
        }
    }
}
