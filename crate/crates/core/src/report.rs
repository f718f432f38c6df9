//! Flat key/value report records with stable field names.
//!
//! The same record renders as `key: value` lines or as JSON. Nested records
//! flatten to dotted keys in the text form.

use std::fmt;

use serde_json::{Map, Value};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record {
    fields: Map<String, Value>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// Stores any `Display` value (sets, rationals, classes) as its text form.
    pub fn text(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.set(key, value.to_string())
    }

    pub fn nest(&mut self, key: &str, child: Record) -> &mut Self {
        self.set(key, Value::Object(child.fields))
    }

    pub fn list(&mut self, key: &str, items: Vec<Record>) -> &mut Self {
        self.set(key, Value::Array(items.into_iter().map(|r| Value::Object(r.fields)).collect()))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.fields.clone())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.fields).expect("record serializes")
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, out);
            }
        }
        Value::Array(items) if items.is_empty() => out.push((prefix.to_string(), "[]".to_string())),
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), joined.join(", ")));
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        flatten("", &Value::Object(self.fields.clone()), &mut lines);
        for (k, v) in lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}
