//! Plain-text rendering of an envelope for terminals.

use std::fmt::Write;

use serde_json::Value;

use crate::envelope::Envelope;

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && is_flat_leaf(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn is_flat_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        _ => v.to_string(),
    }
}

fn walk(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in map {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}{k:<width$}  {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    walk(out, x, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}[{i}] {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}[{i}]");
                    walk(out, x, indent + 1);
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", inline(v));
        }
    }
}

pub fn render(env: &Envelope) -> String {
    let mut out = format!(
        "{} (schema {}, v{})\n",
        env.command, env.schema_version, env.tool_version
    );
    out.push_str("\nresult\n");
    walk(&mut out, &env.result, 1);
    out.push_str("\nconventions\n");
    for c in &env.provenance.conventions {
        let _ = writeln!(out, "  - {c}");
    }
    for n in &env.provenance.notes {
        let _ = writeln!(out, "  * {n}");
    }
    out
}
