//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use folia::io::parse::{parse_form, strip_comments, Params};
use folia::FoliationForm;
use serde_json::Value;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// The fixed corpus: every `.form` file under `tests/data/corpus`, by name.
pub fn corpus() -> Vec<(String, FoliationForm)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(data_dir().join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "form"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let form = parse_form(&strip_comments(&text), &Params::new())
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, form)
        })
        .collect()
}

/// Checks `doc` against the subset of JSON Schema used by the published
/// schema: type, properties, required, additionalProperties, items, enum,
/// minimum, oneOf and local `$ref`s. Returns the first violation.
pub fn validate(schema: &Value, doc: &Value) -> Result<(), String> {
    check(schema, schema, doc, "$")
}

fn resolve<'a>(root: &'a Value, node: &'a Value) -> &'a Value {
    match node.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let path = r.strip_prefix("#/").expect("local reference");
            path.split('/').fold(root, |v, key| &v[key])
        }
        None => node,
    }
}

fn check(root: &Value, node: &Value, doc: &Value, at: &str) -> Result<(), String> {
    let node = resolve(root, node);
    if let Some(t) = node.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => doc.is_object(),
            "array" => doc.is_array(),
            "string" => doc.is_string(),
            "integer" => doc.is_u64() || doc.is_i64(),
            "boolean" => doc.is_boolean(),
            other => return Err(format!("{at}: unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{at}: expected {t}, found {doc}"));
        }
    }
    if let Some(options) = node.get("enum").and_then(Value::as_array) {
        if !options.contains(doc) {
            return Err(format!("{at}: {doc} not in {options:?}"));
        }
    }
    if let (Some(min), Some(v)) = (node.get("minimum").and_then(Value::as_i64), doc.as_i64()) {
        if v < min {
            return Err(format!("{at}: {v} below {min}"));
        }
    }
    if let Some(obj) = doc.as_object() {
        for key in node.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("{at}: missing {key}"));
            }
        }
        let props = node.get("properties").and_then(Value::as_object);
        for (k, v) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => check(root, sub, v, &format!("{at}.{k}"))?,
                None if node.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{at}: unexpected property {k}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (node.get("items"), doc.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            check(root, items, v, &format!("{at}[{i}]"))?;
        }
    }
    if let Some(options) = node.get("oneOf").and_then(Value::as_array) {
        let matching = options
            .iter()
            .filter(|o| check(root, o, doc, at).is_ok())
            .count();
        if matching != 1 {
            return Err(format!("{at}: matches {matching} alternatives of oneOf"));
        }
    }
    Ok(())
}
