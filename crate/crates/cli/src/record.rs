//! One-line `key=value` records for machine consumption.
//!
//! Pairs are separated by single spaces. Inside values, `%`, space, `=` and
//! newline are written as `%25`, `%20`, `%3D` and `%0A`, so every record is
//! self-delimiting and parses back to itself.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordError(pub String);

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed record: {}", self.0)
    }
}

impl std::error::Error for RecordError {}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a field. Keys are fixed identifiers without spaces or `=`.
    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        debug_assert!(!key.is_empty() && !key.contains([' ', '=', '%', '\n']));
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }
}

fn escape(v: &str) -> String {
    let mut out = String::with_capacity(v.len());
    for c in v.chars() {
        match c {
            '%' => out.push_str("%25"),
            ' ' => out.push_str("%20"),
            '=' => out.push_str("%3D"),
            '\n' => out.push_str("%0A"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(v: &str) -> Result<String, RecordError> {
    let mut out = String::with_capacity(v.len());
    let mut rest = v;
    while let Some(i) = rest.find('%') {
        out.push_str(&rest[..i]);
        let code = rest.get(i + 1..i + 3).ok_or_else(|| RecordError(v.to_string()))?;
        out.push(match code {
            "25" => '%',
            "20" => ' ',
            "3D" => '=',
            "0A" => '\n',
            _ => return Err(RecordError(v.to_string())),
        });
        rest = &rest[i + 3..];
    }
    out.push_str(rest);
    Ok(out)
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={}", escape(v))?;
        }
        Ok(())
    }
}

impl FromStr for Record {
    type Err = RecordError;

    fn from_str(s: &str) -> Result<Self, RecordError> {
        let mut fields = Vec::new();
        if s.is_empty() {
            return Ok(Record { fields });
        }
        for pair in s.split(' ') {
            let (k, v) = pair.split_once('=').ok_or_else(|| RecordError(pair.to_string()))?;
            if k.is_empty() {
                return Err(RecordError(pair.to_string()));
            }
            fields.push((k.to_string(), unescape(v)?));
        }
        Ok(Record { fields })
    }
}
