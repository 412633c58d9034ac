//! Ordered key/value reports, rendered as indented text or flat JSON.

use serde_json::{Map, Value as Json};

#[derive(Debug, Clone)]
pub enum Value {
    Text(String),
    Bool(bool),
    Count(usize),
    List(Vec<String>),
    Block(Report),
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn text(&mut self, key: &str, v: impl ToString) -> &mut Self {
        self.push(key, Value::Text(v.to_string()))
    }

    pub fn flag(&mut self, key: &str, v: bool) -> &mut Self {
        self.push(key, Value::Bool(v))
    }

    pub fn count(&mut self, key: &str, v: usize) -> &mut Self {
        self.push(key, Value::Count(v))
    }

    pub fn list<T: ToString>(&mut self, key: &str, items: impl IntoIterator<Item = T>) -> &mut Self {
        self.push(key, Value::List(items.into_iter().map(|i| i.to_string()).collect()))
    }

    pub fn block(&mut self, key: &str, r: Report) -> &mut Self {
        self.push(key, Value::Block(r))
    }

    fn push(&mut self, key: &str, v: Value) -> &mut Self {
        self.entries.push((key.to_string(), v));
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        for (k, v) in &self.entries {
            match v {
                Value::Text(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                Value::Bool(b) => out.push_str(&format!("{pad}{k}: {b}\n")),
                Value::Count(n) => out.push_str(&format!("{pad}{k}: {n}\n")),
                Value::List(items) => out.push_str(&format!("{pad}{k}: [{}]\n", items.join(", "))),
                Value::Block(r) => {
                    out.push_str(&format!("{pad}{k}:\n"));
                    r.write_text(out, depth + 1);
                }
            }
        }
    }

    /// Nested keys are joined with `.`.
    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        self.flatten("", &mut map);
        Json::Object(map)
    }

    fn flatten(&self, prefix: &str, map: &mut Map<String, Json>) {
        for (k, v) in &self.entries {
            let key = if prefix.is_empty() {
                k.clone()
            } else {
                format!("{prefix}.{k}")
            };
            let j = match v {
                Value::Text(s) => Json::String(s.clone()),
                Value::Bool(b) => Json::Bool(*b),
                Value::Count(n) => Json::from(*n),
                Value::List(items) => Json::Array(items.iter().cloned().map(Json::String).collect()),
                Value::Block(r) => {
                    r.flatten(&key, map);
                    continue;
                }
            };
            map.insert(key, j);
        }
    }
}
