//! One structured document per run, rendered as JSON or indented text.

use serde_json::{json, Map, Value};

pub struct Report {
    pub command: &'static str,
    pub inputs: Vec<Value>,
    pub seed: u64,
    pub timing_ms: Option<f64>,
    pub warnings: Vec<String>,
    pub result: Value,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "warnings": self.warnings,
            "result": self.result,
        });
        if let Some(ms) = self.timing_ms {
            v["timing_ms"] = json!((ms * 1000.0).round() / 1000.0);
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let Value::Object(map) = self.to_value() else {
            unreachable!()
        };
        render_map(&map, 0, &mut out);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// Arrays of scalars, or arrays of arrays of scalars (matrices), fit on one line.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| match x {
            Value::Array(row) => row.iter().all(is_scalar),
            other => is_scalar(other),
        }),
        other => is_scalar(other),
    }
}

fn render_map(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (key, value) in map {
        match value {
            Value::Object(inner) if !inner.is_empty() => {
                out.push_str(&format!("{pad}{key}:\n"));
                render_map(inner, depth + 1, out);
            }
            Value::Array(items) if !items.is_empty() && !is_flat(value) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for item in items {
                    render_item(item, depth + 1, out);
                }
            }
            _ => out.push_str(&format!("{pad}{key}: {}\n", inline(value))),
        }
    }
}

fn render_item(item: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match item {
        Value::Object(inner) => {
            out.push_str(&format!("{pad}-\n"));
            render_map(inner, depth + 1, out);
        }
        other => out.push_str(&format!("{pad}- {}\n", inline(other))),
    }
}
