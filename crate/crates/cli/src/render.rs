//! Text rendering of JSON reports: one `key: value` line per field, matrices
//! as indented rows, checks as `[ok]` / `[FAIL]` lines.

use serde_json::{Map, Value};

fn is_matrix(obj: &Map<String, Value>) -> bool {
    obj.contains_key("rows") && obj.contains_key("cols") && obj.contains_key("entries")
}

fn is_check(v: &Value) -> bool {
    v.get("name").is_some() && v.get("holds").map_or(false, Value::is_boolean)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("n/a".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            items
                .iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Value::Object(o) => o.get("display").and_then(Value::as_str).map(str::to_string),
        _ => None,
    }
}

fn rows(entries: &Value, indent: usize, out: &mut String) {
    for row in entries.as_array().into_iter().flatten() {
        let cells: Vec<String> = row.as_array().into_iter().flatten().map(|x| x.to_string()).collect();
        out.push_str(&format!("{}[{}]\n", " ".repeat(indent), cells.join(", ")));
    }
}

fn field(key: &str, v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) if is_matrix(o) => {
            out.push_str(&format!("{}{}:\n", pad, key));
            rows(&o["entries"], indent + 2, out);
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(is_check) => {
            out.push_str(&format!("{}{}:\n", pad, key));
            for c in items {
                let mark = if c["holds"].as_bool() == Some(true) {
                    "ok"
                } else {
                    "FAIL"
                };
                let detail = c
                    .get("detail")
                    .and_then(Value::as_str)
                    .map(|d| format!(" ({})", d))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{}  [{}] {}{}\n",
                    pad,
                    mark,
                    c["name"].as_str().unwrap_or(""),
                    detail
                ));
            }
        }
        Value::Array(items) if items.iter().all(Value::is_array) && !items.is_empty() => {
            out.push_str(&format!("{}{}:\n", pad, key));
            rows(v, indent + 2, out);
        }
        _ => match scalar(v) {
            Some(s) => out.push_str(&format!("{}{}: {}\n", pad, key, s)),
            None => {
                out.push_str(&format!("{}{}:\n", pad, key));
                value(v, indent + 2, out);
            }
        },
    }
}

fn value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                field(k, x, indent, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                field(&format!("[{}]", i), x, indent, out);
            }
        }
        other => out.push_str(&format!(
            "{}{}\n",
            " ".repeat(indent),
            scalar(other).unwrap_or_default()
        )),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    value(v, 0, &mut out);
    out
}
