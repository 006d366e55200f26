//! Nested check records rendered either as indented text or as JSON.

use std::fmt::Display;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub name: String,
    pub value: Option<String>,
    /// `None` for informational lines.
    pub status: Option<bool>,
    pub children: Vec<Record>,
}

impl Record {
    pub fn new(name: impl Into<String>) -> Self {
        Record {
            name: name.into(),
            value: None,
            status: None,
            children: Vec::new(),
        }
    }

    pub fn info(name: impl Into<String>, value: impl Display) -> Self {
        Record::new(name).value(value)
    }

    pub fn check(name: impl Into<String>, ok: bool) -> Self {
        Record::new(name).status(ok)
    }

    pub fn value(mut self, value: impl Display) -> Self {
        self.value = Some(value.to_string());
        self
    }

    pub fn status(mut self, ok: bool) -> Self {
        self.status = Some(ok);
        self
    }

    pub fn child(mut self, child: Record) -> Self {
        self.children.push(child);
        self
    }

    pub fn push(&mut self, child: Record) {
        self.children.push(child);
    }

    /// True when no record in the tree failed.
    pub fn passed(&self) -> bool {
        self.status != Some(false) && self.children.iter().all(Record::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&self.name);
        if let Some(v) = &self.value {
            out.push_str(": ");
            out.push_str(v);
        }
        match self.status {
            Some(true) => out.push_str(" [pass]"),
            Some(false) => out.push_str(" [FAIL]"),
            None => {}
        }
        out.push('\n');
        for c in &self.children {
            c.write_text(depth + 1, out);
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("name".into(), json!(self.name));
        if let Some(v) = &self.value {
            map.insert("value".into(), json!(v));
        }
        if let Some(ok) = self.status {
            map.insert("status".into(), json!(if ok { "pass" } else { "fail" }));
        }
        if !self.children.is_empty() {
            map.insert(
                "children".into(),
                Value::Array(self.children.iter().map(Record::to_json).collect()),
            );
        }
        Value::Object(map)
    }

    /// The whole run as one record: `{"passed": .., "report": ..}`.
    pub fn to_structured(&self) -> Value {
        json!({ "passed": self.passed(), "report": self.to_json() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_mirror() {
        let r = Record::new("run")
            .child(Record::info("n", 4))
            .child(Record::check("rank 2", true))
            .child(Record::check("rank 4", false));
        assert_eq!(r.to_text(), "run\n  n: 4\n  rank 2 [pass]\n  rank 4 [FAIL]\n");
        assert!(!r.passed());
        let j = r.to_structured();
        assert_eq!(j["passed"], json!(false));
        assert_eq!(j["report"]["children"][2]["status"], json!("fail"));
    }
}
