//! Ordered reports with a plain-text and a JSON rendering.

use num_bigint::BigInt;
use serde_json::{Map, Value as Json};

use hilblat::{IntMatrix, LatticeVector, SignatureTriple};

#[derive(Clone, Debug)]
pub enum Value {
    Text(String),
    Int(BigInt),
    Count(usize),
    Flag(bool),
    /// Rendered inline as `(a, b, c)`.
    Tuple(Vec<String>),
    List(Vec<Value>),
    Section(Report),
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub fn vector(v: &LatticeVector) -> Self {
        Value::Tuple(v.0.iter().map(|x| x.to_string()).collect())
    }

    pub fn signature(s: SignatureTriple) -> Self {
        Value::Tuple(vec![
            s.pos.to_string(),
            s.zero.to_string(),
            s.neg.to_string(),
        ])
    }

    /// Columns of `m` as a list of tuples.
    pub fn columns(m: &IntMatrix) -> Self {
        Value::List(
            m.columns()
                .into_iter()
                .map(|c| Value::vector(&LatticeVector(c)))
                .collect(),
        )
    }

    /// Rows of `m` as a list of tuples.
    pub fn rows(m: &IntMatrix) -> Self {
        Value::List(
            m.to_rows()
                .into_iter()
                .map(|r| Value::vector(&LatticeVector(r)))
                .collect(),
        )
    }

    fn inline(&self) -> Option<String> {
        match self {
            Value::Text(s) => Some(s.clone()),
            Value::Int(n) => Some(n.to_string()),
            Value::Count(n) => Some(n.to_string()),
            Value::Flag(b) => Some(b.to_string()),
            Value::Tuple(xs) => Some(format!("({})", xs.join(", "))),
            Value::List(_) | Value::Section(_) => None,
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Text(s) => Json::String(s.clone()),
            Value::Int(n) => Json::String(n.to_string()),
            Value::Count(n) => Json::from(*n),
            Value::Flag(b) => Json::Bool(*b),
            Value::Tuple(xs) => Json::Array(xs.iter().cloned().map(Json::String).collect()),
            Value::List(items) => Json::Array(items.iter().map(Value::to_json).collect()),
            Value::Section(r) => r.to_json(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    /// `key: value`
    Colon,
    /// `key = value`
    Equation,
    /// Just the value.
    Bare,
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    style: Style,
    value: Value,
    /// Keep the key as is in JSON.
    verbatim: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: &str, value: Value) -> &mut Self {
        self.push(key, Style::Colon, value)
    }

    pub fn equation(&mut self, key: &str, value: Value) -> &mut Self {
        self.push(key, Style::Equation, value)
    }

    /// A line holding only `value`; the key appears in JSON output only.
    pub fn headline(&mut self, key: &str, value: &str) -> &mut Self {
        self.push(key, Style::Bare, Value::text(value))
    }

    pub fn section(&mut self, key: &str, r: Report) -> &mut Self {
        self.push(key, Style::Colon, Value::Section(r))
    }

    /// A section keyed by a workspace name, which JSON output keeps verbatim.
    pub fn named(&mut self, name: &str, r: Report) -> &mut Self {
        self.push(name, Style::Colon, Value::Section(r));
        self.entries.last_mut().expect("just pushed").verbatim = true;
        self
    }

    fn push(&mut self, key: &str, style: Style, value: Value) -> &mut Self {
        self.entries.push(Entry {
            key: key.to_string(),
            style,
            value,
            verbatim: false,
        });
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        for e in &self.entries {
            match (e.style, e.value.inline()) {
                (Style::Bare, Some(v)) => out.push_str(&format!("{pad}{v}\n")),
                (Style::Equation, Some(v)) => out.push_str(&format!("{pad}{} = {v}\n", e.key)),
                (_, Some(v)) => out.push_str(&format!("{pad}{}: {v}\n", e.key)),
                (_, None) => {
                    out.push_str(&format!("{pad}{}:\n", e.key));
                    write_block(&e.value, out, depth + 1);
                }
            }
        }
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        for e in &self.entries {
            let key = if e.verbatim {
                e.key.clone()
            } else {
                json_key(&e.key)
            };
            map.insert(key, e.value.to_json());
        }
        Json::Object(map)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain JSON values");
        s.push('\n');
        s
    }
}

fn write_block(v: &Value, out: &mut String, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Section(r) => r.write_text(out, depth),
        Value::List(items) if items.is_empty() => out.push_str(&format!("{pad}(none)\n")),
        Value::List(items) => {
            for item in items {
                match item.inline() {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_block(item, out, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", other.inline().unwrap_or_default())),
    }
}

/// `"Tr_G rank"` becomes `"tr_g_rank"`.
fn json_key(key: &str) -> String {
    key.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect::<String>()
        .split('_')
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("_")
}
