//! Config files pre-seed flags: `key = value` lines, or the `parameters`
//! object of a run manifest. Flags given on the command line win.

use std::collections::BTreeMap;

/// Flag names that take no value.
const SWITCHES: &[&str] = &["pedestal-poly", "override-guard", "raw"];

pub fn parse_key_values(text: &str) -> Result<Vec<(String, Vec<String>)>, String> {
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", k + 1))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(format!("config line {}: empty key", k + 1));
        }
        let value = value.trim().trim_matches('"').to_string();
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, values)) => values.push(value),
            None => out.push((key, vec![value])),
        }
    }
    Ok(out)
}

/// The `parameters` object of a manifest as flag values.
pub fn parse_manifest(text: &str) -> Result<Vec<(String, Vec<String>)>, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("manifest: {e}"))?;
    let params = value
        .get("parameters")
        .and_then(|p| p.as_object())
        .ok_or("manifest has no parameters object")?;
    let mut out = Vec::new();
    for (key, v) in params {
        let key = key.replace('_', "-");
        let values: Vec<String> = match v {
            serde_json::Value::Null => continue,
            serde_json::Value::Bool(false) => continue,
            serde_json::Value::Bool(true) => vec!["true".into()],
            serde_json::Value::Array(items) => items.iter().map(scalar).collect(),
            other => vec![scalar(other)],
        };
        if !values.is_empty() {
            out.push((key, values));
        }
    }
    Ok(out)
}

fn scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Finds `--config PATH` (or `--config=PATH`) in `argv` and appends every
/// configured flag the command line does not already set.
pub fn merge(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (k, a) in argv.iter().enumerate() {
        if a == "--config" {
            path = argv.get(k + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let entries = if text.trim_start().starts_with('{') {
        parse_manifest(&text)?
    } else {
        parse_key_values(&text)?
    };
    let given: BTreeMap<String, ()> = argv
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| (a.split('=').next().unwrap_or(a).to_string(), ()))
        .collect();
    let mut merged = argv;
    for (key, values) in entries {
        if given.contains_key(&key) || key == "config" {
            continue;
        }
        for v in values {
            if SWITCHES.contains(&key.as_str()) {
                if v == "true" {
                    merged.push(format!("--{key}"));
                }
            } else {
                merged.push(format!("--{key}={v}"));
            }
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_lines() {
        let parsed = parse_key_values("# comment\nbeta = 0.7\nemit = a.csv\nemit = b.pgm\n").unwrap();
        assert_eq!(parsed[0], ("beta".into(), vec!["0.7".into()]));
        assert_eq!(parsed[1].1, vec!["a.csv".to_string(), "b.pgm".to_string()]);
        assert!(parse_key_values("nonsense").is_err());
    }

    #[test]
    fn manifest_parameters() {
        let text = r#"{"parameters": {"size": 8, "bc": "+", "emit": ["t.csv"], "override_guard": false, "pedestal_poly": true, "hole": null}}"#;
        let parsed = parse_manifest(text).unwrap();
        assert!(parsed.contains(&("size".into(), vec!["8".into()])));
        assert!(parsed.contains(&("pedestal-poly".into(), vec!["true".into()])));
        assert!(!parsed.iter().any(|(k, _)| k == "override-guard" || k == "hole"));
    }
}
