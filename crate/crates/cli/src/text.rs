//! Plain-text rendering. It walks the JSON form of the report, so both
//! formats carry the same numbers.

use std::fmt::Write;

use serde_json::Value;

use crate::report::ReportFile;

pub fn render(report: &ReportFile) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut out = String::new();
    if let Some(v) = report.family.as_ref().map(|f| f.verdicts) {
        if report.command == "zariski" {
            let _ = writeln!(out, "Zariski equisingular: {}", verdict(v.zariski));
        }
    }
    if let Value::Object(map) = &value {
        for (k, v) in map {
            if k == "family" {
                family(&mut out, v);
            } else {
                entry(&mut out, 0, k, v);
            }
        }
    }
    out
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes (no jump detected on samples)",
        Some(false) => "no (jump detected)",
        None => "undetermined",
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn entry(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let items: Vec<String> = items.iter().filter_map(scalar).collect();
            let inline = format!("[{}]", items.join(", "));
            if pad.len() + key.len() + inline.len() <= 100 {
                let _ = writeln!(out, "{pad}{key}: {inline}");
            } else {
                let _ = writeln!(out, "{pad}{key}:");
                for item in items {
                    let _ = writeln!(out, "{pad}  - {item}");
                }
            }
        }
        Value::Object(map) if depth > 0 && key.starts_with('[') && map.values().all(|v| scalar(v).is_some()) => {
            let fields: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", scalar(v).unwrap_or_default())).collect();
            let _ = writeln!(out, "{pad}{key} {}", fields.join(" "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                entry(out, depth + 1, &format!("[{i}]"), item);
            }
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                entry(out, depth + 1, k, v);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// The family block, with the samples as a table.
fn family(out: &mut String, v: &Value) {
    let _ = writeln!(out, "family:");
    let Value::Object(map) = v else { return };
    for (k, v) in map {
        match (k.as_str(), v) {
            ("samples", Value::Array(rows)) if !rows.is_empty() => {
                let Some(Value::Object(first)) = rows.first() else { continue };
                let cols: Vec<&String> = first.keys().collect();
                let cells: Vec<Vec<String>> =
                    rows.iter().map(|r| cols.iter().map(|c| r.get(c.as_str()).and_then(scalar).unwrap_or_default()).collect()).collect();
                let widths: Vec<usize> =
                    cols.iter().enumerate().map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0)).collect();
                let line = |vals: Vec<&str>| vals.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect::<Vec<_>>().join("  ");
                let _ = writeln!(out, "  samples:");
                let _ = writeln!(out, "    {}", line(cols.iter().map(|c| c.as_str()).collect()));
                for r in &cells {
                    let _ = writeln!(out, "    {}", line(r.iter().map(String::as_str).collect()));
                }
            }
            _ => entry(out, 1, k, v),
        }
    }
}
