//! Tabular result container shared by the command-line tools.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// One command's result. Every cell is a string so that big integers and
/// rationals survive any JSON consumer unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub degree: Option<u32>,
    pub parameters: IndexMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: IndexMap<String, String>,
    pub provenance: Vec<String>,
}

impl OutputEnvelope {
    pub fn new(tool: &str, version: &str, command: &str) -> Self {
        OutputEnvelope {
            tool: tool.to_string(),
            version: version.to_string(),
            command: command.to_string(),
            degree: None,
            parameters: IndexMap::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            summary: IndexMap::new(),
            provenance: Vec::new(),
        }
    }

    pub fn degree(mut self, d: u32) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn columns<S: AsRef<str>>(mut self, cols: &[S]) -> Self {
        self.columns = cols.iter().map(|c| c.as_ref().to_string()).collect();
        self
    }

    pub fn push_row<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }

    pub fn summarize(&mut self, key: &str, value: impl ToString) {
        self.summary.insert(key.to_string(), value.to_string());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.provenance.push(text.into());
    }

    /// Value of `column` in the last row.
    pub fn last(&self, column: &str) -> Option<&str> {
        let i = self.columns.iter().position(|c| c == column)?;
        self.rows.last()?.get(i).map(String::as_str)
    }

    pub fn column(&self, column: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == column)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let mut env = OutputEnvelope::new("t", "0", "gw")
            .degree(3)
            .param("max_m", 4)
            .columns(&["m", "N"]);
        env.push_row(["1", "27"]);
        env.push_row(["4", "540"]);
        env.summarize("count", 2);
        assert_eq!(env.last("N"), Some("540"));
        assert_eq!(env.column("m").unwrap(), vec!["1", "4"]);
        assert!(env.last("missing").is_none());
        let json = serde_json::to_string(&env).unwrap();
        let back: OutputEnvelope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, env);
    }
}
