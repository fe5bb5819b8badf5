//! Validator for the JSON Schema keywords used by `schema/output.schema.json`:
//! type, const, enum, required, properties, additionalProperties (false),
//! items, oneOf, $ref (local), pattern and minimum.

use regex::Regex;
use serde_json::Value;

pub struct Schema {
    root: Value,
}

impl Schema {
    pub fn load() -> Schema {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/output.schema.json");
        let text = std::fs::read_to_string(path).expect("schema file");
        Schema {
            root: serde_json::from_str(&text).expect("schema is JSON"),
        }
    }

    /// Every violation found, as `path: message`.
    pub fn errors(&self, doc: &Value) -> Vec<String> {
        let mut out = Vec::new();
        self.check(&self.root, doc, "$", &mut out);
        out
    }

    fn resolve<'a>(&'a self, r: &str) -> &'a Value {
        let ptr = r.strip_prefix('#').expect("only local references");
        self.root.pointer(ptr).unwrap_or_else(|| panic!("dangling $ref {r}"))
    }

    fn check(&self, schema: &Value, doc: &Value, path: &str, out: &mut Vec<String>) {
        let Some(s) = schema.as_object() else {
            return;
        };
        for key in s.keys() {
            assert!(
                KNOWN.contains(&key.as_str()),
                "schema uses {key:?}, which this validator does not implement"
            );
        }
        if let Some(r) = s.get("$ref").and_then(Value::as_str) {
            self.check(self.resolve(r), doc, path, out);
        }
        if let Some(t) = s.get("type") {
            let ok = match t {
                Value::String(t) => has_type(doc, t),
                Value::Array(ts) => ts.iter().any(|t| has_type(doc, t.as_str().unwrap())),
                _ => panic!("bad type keyword"),
            };
            if !ok {
                out.push(format!("{path}: expected type {t}, got {doc}"));
                return;
            }
        }
        if let Some(c) = s.get("const") {
            if c != doc {
                out.push(format!("{path}: expected {c}, got {doc}"));
            }
        }
        if let Some(Value::Array(vs)) = s.get("enum") {
            if !vs.contains(doc) {
                out.push(format!("{path}: {doc} not in {vs:?}"));
            }
        }
        if let (Some(p), Some(text)) = (s.get("pattern").and_then(Value::as_str), doc.as_str()) {
            if !Regex::new(p).expect("valid pattern").is_match(text) {
                out.push(format!("{path}: {text:?} does not match {p}"));
            }
        }
        if let (Some(m), Some(v)) = (s.get("minimum").and_then(Value::as_f64), doc.as_f64()) {
            if v < m {
                out.push(format!("{path}: {v} below minimum {m}"));
            }
        }
        if let Some(obj) = doc.as_object() {
            if let Some(Value::Array(req)) = s.get("required") {
                for r in req.iter().filter_map(Value::as_str) {
                    if !obj.contains_key(r) {
                        out.push(format!("{path}: missing {r:?}"));
                    }
                }
            }
            let props = s.get("properties").and_then(Value::as_object);
            for (k, v) in obj {
                match props.and_then(|p| p.get(k)) {
                    Some(sub) => self.check(sub, v, &format!("{path}.{k}"), out),
                    None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                        out.push(format!("{path}: unexpected property {k:?}"))
                    }
                    None => {}
                }
            }
        }
        if let (Some(items), Some(arr)) = (s.get("items"), doc.as_array()) {
            for (i, v) in arr.iter().enumerate() {
                self.check(items, v, &format!("{path}[{i}]"), out);
            }
        }
        if let Some(Value::Array(branches)) = s.get("oneOf") {
            let matching = branches
                .iter()
                .filter(|b| {
                    let mut e = Vec::new();
                    self.check(b, doc, path, &mut e);
                    e.is_empty()
                })
                .count();
            if matching != 1 {
                out.push(format!("{path}: {matching} oneOf branches match"));
            }
        }
    }
}

const KNOWN: &[&str] = &[
    "$schema",
    "$id",
    "$defs",
    "$ref",
    "title",
    "type",
    "const",
    "enum",
    "required",
    "properties",
    "additionalProperties",
    "items",
    "oneOf",
    "pattern",
    "minimum",
];

fn has_type(v: &Value, t: &str) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        _ => panic!("unknown type {t}"),
    }
}
