//! Plain-text rendering: one `path = value` line per scalar, matrices as
//! aligned rows.

use serde_json::Value;

pub fn table(v: &Value) -> String {
    let mut out = String::new();
    walk("", v, &mut out);
    out
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

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn matrix_rows(v: &Value) -> Option<Vec<Vec<String>>> {
    let obj = v.as_object()?;
    if obj.len() != 3 || !obj.contains_key("rows") || !obj.contains_key("cols") {
        return None;
    }
    obj.get("entries")?
        .as_array()?
        .iter()
        .map(|row| row.as_array().map(|r| r.iter().filter_map(scalar).collect()))
        .collect()
}

fn walk(prefix: &str, v: &Value, out: &mut String) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{prefix} = {s}\n"));
        return;
    }
    if let Some(rows) = matrix_rows(v) {
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        out.push_str(&format!("{prefix} =\n"));
        for row in rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&format!("    [{}]\n", cells.join(" ")));
        }
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            let cells: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(&format!("{prefix} = [{}]\n", cells.join(", ")));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                walk(&format!("{prefix}[{i}]"), item, out);
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                walk(&join(prefix, k), item, out);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
