//! JSON reports: a header naming what is checked, then one entry per check.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// What is asserted, in words.
    pub statement: String,
    pub pass: bool,
    /// The computed values the verdict rests on.
    pub witness: Value,
}

impl Check {
    pub fn new(name: &str, statement: &str, pass: bool, witness: Value) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            pass,
            witness,
        }
    }

    /// A check whose computation itself failed.
    pub fn error(name: &str, statement: &str, err: impl std::fmt::Display) -> Self {
        Self::new(
            name,
            statement,
            false,
            serde_json::json!({ "error": err.to_string() }),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub about: String,
    pub config: Value,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Command-specific results that are reported but not asserted.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, about: &str, config: Value, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            command: command.into(),
            about: about.into(),
            config,
            pass,
            checks,
            data: Value::Null,
        }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn overall_verdict_needs_every_check() {
        let ok = Check::new("a", "holds", true, json!(1));
        let bad = Check::new("b", "fails", false, json!(2));
        assert!(Report::new("x", "", json!({}), vec![ok.clone()]).pass);
        let r = Report::new("x", "", json!({}), vec![ok, bad]);
        assert!(!r.pass);
        assert_eq!(r.failed().len(), 1);
    }

    #[test]
    fn data_is_omitted_when_empty() {
        let r = Report::new("x", "", json!({}), vec![]);
        assert!(!r.to_json().contains("\"data\""));
        assert!(r.with_data(json!([1])).to_json().contains("\"data\""));
    }
}
