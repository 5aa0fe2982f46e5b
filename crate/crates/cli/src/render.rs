//! Plain-text rendering of a JSON report.
//!
//! Scalars print as `key: value`, balls as `mid +/- rad`, and arrays of
//! objects as aligned tables.

use serde_json::{Map, Value};

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => object(&mut out, map, 0),
        other => out.push_str(&cell(other)),
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

fn object(out: &mut String, map: &Map<String, Value>, indent: usize) {
    let pad = " ".repeat(indent);
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (key, value) in map {
        match value {
            Value::Object(inner) if !is_ball(inner) => {
                out.push_str(&format!("{pad}{key}:\n"));
                object(out, inner, indent + 2);
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                out.push_str(&format!("{pad}{key}:\n"));
                table(out, items, indent + 2);
            }
            _ => out.push_str(&format!("{pad}{key:<width$}  {}\n", cell(value))),
        }
    }
}

fn table(out: &mut String, rows: &[Value], indent: usize) {
    let mut header: Vec<&str> = Vec::new();
    for row in rows {
        for key in row.as_object().expect("checked object").keys() {
            if !header.contains(&key.as_str()) {
                header.push(key);
            }
        }
    }
    let cells: Vec<Vec<String>> =
        rows.iter().map(|row| header.iter().map(|h| row.get(*h).map_or_else(String::new, cell)).collect()).collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let pad = " ".repeat(indent);
    let line = |items: Vec<&str>| {
        let joined: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("{pad}{}\n", joined.join("  ").trim_end())
    };
    out.push_str(&line(header.clone()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}

fn is_ball(map: &Map<String, Value>) -> bool {
    map.len() == 2 && map.contains_key("mid") && map.contains_key("rad")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Object(m) if is_ball(m) => {
            format!("{} +/- {}", m["mid"].as_str().unwrap_or(""), m["rad"].as_str().unwrap_or(""))
        }
        Value::Object(m) => {
            let fields: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
            format!("{{{}}}", fields.join(" "))
        }
        Value::Array(items) => format!("[{}]", items.iter().map(cell).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
