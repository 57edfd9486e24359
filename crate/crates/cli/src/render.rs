//! Plain text rendering of a JSON report, line per leaf.

use std::fmt::Write;

use serde_json::Value;

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, v, 0, None);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn walk(out: &mut String, v: &Value, depth: usize, key: Option<&str>) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        match key {
            Some(k) => writeln!(out, "{pad}{k}: {s}").unwrap(),
            None => writeln!(out, "{pad}{s}").unwrap(),
        }
        return;
    }
    if let Some(k) = key {
        writeln!(out, "{pad}{k}:").unwrap();
    }
    let inner = if key.is_some() { depth + 1 } else { depth };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                walk(out, x, inner, Some(k));
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                walk(out, x, inner, Some(&format!("[{i}]")));
            }
        }
        _ => unreachable!(),
    }
}
