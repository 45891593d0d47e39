//! Aligned text rendering of JSON reports for `--format table`.

use serde_json::Value;

/// Renders a report as aligned rows. Law reports become a `law | cases |
/// failures` table, lists of objects get one column per key, and other
/// documents are flattened to `path  value` rows.
pub fn table(report: &Value) -> String {
    if let Some(entries) = report.get("entries").and_then(Value::as_array) {
        let mut rows = vec![vec!["law".to_string(), "cases".to_string(), "failures".to_string()]];
        for e in entries {
            rows.push(["law", "cases", "failures"].iter().map(|k| scalar(e.get(*k).unwrap_or(&Value::Null))).collect());
        }
        let mut out = String::new();
        if let Some(subject) = report.get("subject").and_then(Value::as_str) {
            out.push_str(subject);
            out.push('\n');
        }
        out.push_str(&align(&rows));
        for e in entries.iter().filter(|e| e.get("counterexample").is_some()) {
            out.push_str(&format!("\ncounterexample for {}: {}", scalar(&e["law"]), e["counterexample"]));
        }
        return out;
    }
    if let Some(items) = report.as_array().filter(|a| !a.is_empty() && a.iter().all(Value::is_object)) {
        let mut columns: Vec<String> = Vec::new();
        for item in items {
            for k in item.as_object().expect("object").keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
        let mut rows = vec![columns.clone()];
        rows.extend(items.iter().map(|item| columns.iter().map(|c| item.get(c).map(scalar).unwrap_or_default()).collect()));
        return align(&rows);
    }
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    align(&rows)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&path, x, rows);
            }
        }
        other => rows.push(vec![if prefix.is_empty() { "value".into() } else { prefix.to_string() }, scalar(other)]),
    }
}

fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().enumerate().map(|(i, s)| format!("{s:<w$}", w = widths[i])).collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn law_reports_render_as_columns() {
        let r = json!({ "subject": "s", "entries": [{ "law": "assoc", "cases": 10, "failures": 0 }] });
        assert_eq!(table(&r), "s\nlaw    cases  failures\nassoc  10     0");
    }

    #[test]
    fn row_lists_render_as_columns() {
        let r = json!([{ "in": [0], "out": [0], "value": { "id": "1" } }]);
        assert_eq!(table(&r), "in   out  value\n[0]  [0]  {\"id\":\"1\"}");
    }

    #[test]
    fn documents_flatten_to_paths() {
        let r = json!({ "n": 12, "inner": { "d": 6 } });
        assert_eq!(table(&r), "inner.d  6\nn        12");
    }
}
