//! Rendering one command result as JSON, TSV or text.

use serde::Serialize;
use serde_json::Value;

use crate::Format;

#[derive(Debug, Clone)]
pub struct Report {
    body: Body,
    text: Option<String>,
    tsv: Option<String>,
    pub code: i32,
}

#[derive(Debug, Clone)]
enum Body {
    Json(Value),
    /// Preformatted output printed as-is in every format.
    Raw(String),
}

impl Report {
    pub fn json(v: Value, code: i32) -> Self {
        Report { body: Body::Json(v), text: None, tsv: None, code }
    }

    pub fn value<T: Serialize>(v: &T, code: i32) -> Self {
        Self::json(serde_json::to_value(v).expect("reports serialize"), code)
    }

    pub fn raw(s: String, code: i32) -> Self {
        Report { body: Body::Raw(s), text: None, tsv: None, code }
    }

    pub fn with_text(mut self, s: String) -> Self {
        self.text = Some(s);
        self
    }

    pub fn with_tsv(mut self, s: String) -> Self {
        self.tsv = Some(s);
        self
    }

    pub fn render(&self, format: Format) -> String {
        let v = match &self.body {
            Body::Raw(s) => return s.clone(),
            Body::Json(v) => v,
        };
        match format {
            Format::Json => format!("{v}\n"),
            Format::Tsv => match &self.tsv {
                Some(s) => s.clone(),
                None => flatten(v).into_iter().map(|(k, x)| format!("{k}\t{x}\n")).collect(),
            },
            Format::Text => match &self.text {
                Some(s) => format!("{s}\n"),
                None => flatten(v).into_iter().map(|(k, x)| format!("{k}: {x}\n")).collect(),
            },
        }
    }
}

/// Leaf values keyed by dotted paths, in document order.
fn flatten(v: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| walk(&key(k), x, out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| walk(&key(&i.to_string()), x, out)),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let v = json!({ "a": 1, "b": { "c": "x", "d": [true, null] } });
        let r = Report::json(v, 0);
        assert_eq!(r.render(Format::Tsv), "a\t1\nb.c\tx\nb.d.0\ttrue\nb.d.1\tnull\n");
        assert_eq!(r.render(Format::Text).lines().next(), Some("a: 1"));
        assert_eq!(r.render(Format::Json), "{\"a\":1,\"b\":{\"c\":\"x\",\"d\":[true,null]}}\n");
    }

    #[test]
    fn overrides() {
        let r = Report::json(json!({ "twice": 2 }), 0).with_text("1".into());
        assert_eq!(r.render(Format::Text), "1\n");
        assert_eq!(Report::raw("digraph {}\n".into(), 0).render(Format::Json), "digraph {}\n");
    }
}
