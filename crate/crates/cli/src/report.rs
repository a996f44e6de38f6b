use cophi_core::coalg::Side;
use serde::Serialize;
use serde_json::{json, Value};

/// Run parameters embedded in every report.
#[derive(Serialize)]
pub struct Context {
    pub command: String,
    pub field: u32,
    pub window: Option<usize>,
    pub coalgebra: Option<String>,
    pub side: Option<Side>,
    pub horizon: usize,
    pub seed: u64,
    pub attempts: usize,
}

pub fn wrap(ctx: &Context, result: Value) -> Value {
    json!({
        "tool": "cophi",
        "version": env!("CARGO_PKG_VERSION"),
        "run": ctx,
        "result": result,
    })
}

/// Two aligned columns, one row per scalar leaf. Arrays of scalars stay on
/// one row.
pub fn table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let pad = width - k.chars().count();
        out.push_str(&k);
        out.push_str(&" ".repeat(pad + 2));
        out.push_str(&v);
        out.push('\n');
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
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

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            if map.is_empty() {
                rows.push((prefix.to_string(), "{}".into()));
            }
            for (k, x) in map {
                flatten(&join(prefix, k), x, rows);
            }
        }
        Value::Array(items) => {
            let scalars: Option<Vec<String>> = items.iter().map(scalar).collect();
            match scalars {
                Some(s) => rows.push((prefix.to_string(), format!("[{}]", s.join(", ")))),
                None => {
                    for (i, x) in items.iter().enumerate() {
                        flatten(&format!("{prefix}[{i}]"), x, rows);
                    }
                }
            }
        }
        _ => rows.push((prefix.to_string(), scalar(v).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_align() {
        let t =
            table(&json!({"a": 1, "long_key": {"x": [1, 2], "y": null}, "list": [{"k": true}]}));
        assert_eq!(
            t,
            "a           1\nlist[0].k   true\nlong_key.x  [1, 2]\nlong_key.y  -\n"
        );
    }
}
