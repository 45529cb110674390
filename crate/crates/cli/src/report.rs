//! Command reports: text for people, JSON for machines.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Grouping label, e.g. the criterion number in the reproduction suite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section: Option<String>,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub output: Vec<Entry>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.output.push(Entry {
            key: key.into(),
            value: value.to_string(),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            section: None,
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn section_check(&mut self, section: &str, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            section: Some(section.to_string()),
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# lieb {}\n", self.command);
        for e in &self.output {
            if e.value.contains('\n') {
                out.push_str(&format!("{}:\n", e.key));
                for line in e.value.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            } else {
                out.push_str(&format!("{} = {}\n", e.key, e.value));
            }
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let section = c.section.as_ref().map(|s| format!("{s} ")).unwrap_or_default();
            if c.detail.is_empty() {
                out.push_str(&format!("[{tag}] {section}{}\n", c.name));
            } else {
                out.push_str(&format!("[{tag}] {section}{}: {}\n", c.name, c.detail));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!("checks: {} passed, {failed} failed\n", self.checks.len() - failed));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_checks() {
        let mut r = Report::new("x");
        r.put("a", 1);
        assert_eq!(r.exit_code(), 0);
        r.check("ok", true, "");
        r.check("bad", false, "residual 1");
        assert_eq!(r.exit_code(), 1);
        let text = r.to_text();
        assert!(text.contains("[FAIL] bad: residual 1"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["checks"][1]["pass"], false);
        assert!(json["checks"][0].get("section").is_none());
    }
}
