//! Deterministic reports in two renderings.

use serde_json::{json, Map, Value};

#[derive(Debug)]
pub struct Report {
    command: String,
    digest: String,
    lines: Vec<String>,
    outputs: Map<String, Value>,
    assertions: Vec<(String, bool)>,
}

impl Report {
    pub fn new(command: String, digest: String) -> Self {
        Self {
            command,
            digest,
            lines: Vec::new(),
            outputs: Map::new(),
            assertions: Vec::new(),
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn blank(&mut self) {
        if self.lines.last().is_some_and(|l| !l.is_empty()) {
            self.lines.push(String::new());
        }
    }

    pub fn table(&mut self, header: &[&str], rows: Vec<Vec<String>>) {
        let mut all = vec![header.iter().map(|h| h.to_string()).collect::<Vec<_>>()];
        all.extend(rows);
        self.lines.extend(align(&all));
    }

    pub fn output(&mut self, key: &str, value: Value) {
        self.outputs.insert(key.to_string(), value);
    }

    pub fn assert(&mut self, claim: impl Into<String>, holds: bool) {
        self.assertions.push((claim.into(), holds));
    }

    pub fn all_hold(&self) -> bool {
        self.assertions.iter().all(|(_, h)| *h)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("$ {}\ninputs sha256 {}\n", self.command, self.digest);
        if !self.lines.is_empty() {
            out.push('\n');
            for l in &self.lines {
                out.push_str(l.trim_end());
                out.push('\n');
            }
        }
        if !self.assertions.is_empty() {
            out.push_str("\nassertions\n");
            for (claim, holds) in &self.assertions {
                out.push_str(&format!("  [{}] {claim}\n", if *holds { "PASS" } else { "FAIL" }));
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let assertions: Vec<Value> = self
            .assertions
            .iter()
            .map(|(c, h)| json!({ "claim": c, "holds": h }))
            .collect();
        let doc = json!({
            "command": self.command,
            "inputs_sha256": self.digest,
            "outputs": Value::Object(self.outputs.clone()),
            "assertions": assertions,
            "ok": self.all_hold(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("reports serialise");
        s.push('\n');
        s
    }
}

/// Pad every column to its widest cell, counting characters rather than bytes.
pub fn align(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(c, cell)| format!("{cell}{}", " ".repeat(widths[c] - cell.chars().count())))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_line_up_with_wide_glyphs() {
        let rows = vec![
            vec!["x".to_string(), "∅".to_string(), "end".to_string()],
            vec!["long".to_string(), "{Out}".to_string(), "e".to_string()],
        ];
        let lines = align(&rows);
        assert_eq!(lines[0], "x     ∅      end");
        assert_eq!(lines[1], "long  {Out}  e");
    }

    #[test]
    fn renderings_are_stable() {
        let mut r = Report::new("solve sr g.json".into(), "00".into());
        r.line("hello");
        r.assert("claim", true);
        assert_eq!(r.render_text(), "$ solve sr g.json\ninputs sha256 00\n\nhello\n\nassertions\n  [PASS] claim\n");
        assert!(r.render_json().ends_with("}\n"));
    }
}
