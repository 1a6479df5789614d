//! Plain-text rendering of report documents for the terminal.

use std::fmt::Write;

use hhcyc::io::ReportDocument;
use serde_json::Value;

pub fn render(report: &ReportDocument) -> String {
    let p = &report.parameters;
    let mut out = format!(
        "{} {}  L={} N={} window {}..{} field {}\n",
        report.tool, report.command, p.max_bar_length, p.max_u_power, p.window.0, p.window.1, p.field
    );
    for input in &report.inputs {
        let _ = writeln!(out, "input {} sha256:{}", input.name, &input.sha256[..16]);
    }
    if !report.seeds.is_empty() && report.seeds.len() <= 8 {
        let _ = writeln!(out, "seeds {:?}", report.seeds);
    }
    value(&report.result, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Number(_) | Value::String(_) | Value::Bool(_))) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Array(_))) && items.iter().all(|i| scalar(i).is_some()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")))
        }
        _ => None,
    }
}

/// A map keyed by degrees whose values share scalar fields, as a table.
fn degree_table(map: &serde_json::Map<String, Value>, indent: usize, out: &mut String) -> bool {
    if map.is_empty() || !map.keys().all(|k| k.parse::<i64>().is_ok()) {
        return false;
    }
    let Some(Value::Object(first)) = map.values().next() else {
        return false;
    };
    let columns: Vec<&String> = first.iter().filter(|(_, v)| scalar(v).is_some()).map(|(k, _)| k).collect();
    if columns.is_empty() {
        return false;
    }
    let mut rows: Vec<(i64, Vec<String>)> = Vec::new();
    for (k, v) in map {
        let Value::Object(o) = v else { return false };
        rows.push((k.parse().unwrap(), columns.iter().map(|c| o.get(*c).and_then(scalar).unwrap_or_default()).collect()));
    }
    rows.sort_by_key(|r| r.0);
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for (_, cells) in &rows {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.chars().count());
        }
    }
    let pad = " ".repeat(indent);
    let _ = write!(out, "{pad}{:>6}", "n");
    for (c, w) in columns.iter().zip(&widths) {
        let _ = write!(out, "  {c:>w$}");
    }
    out.push('\n');
    for (n, cells) in rows {
        let _ = write!(out, "{pad}{n:>6}");
        for (c, w) in cells.iter().zip(&widths) {
            let _ = write!(out, "  {c:>w$}");
        }
        out.push('\n');
    }
    true
}

fn value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            if degree_table(map, indent, out) {
                return;
            }
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        value(item, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        value(item, indent + 2, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
