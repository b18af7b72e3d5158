//! Verification reports: named residual checks with a shared text/JSON
//! rendering used by verifiers and the CLI alike.

use serde::{Deserialize, Serialize};

/// One named check: a residual compared against a threshold.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Check { name: name.into(), residual, threshold, pass: residual.abs() <= threshold }
    }

    /// Boolean condition as a check: residual 0 when it holds, 1 when not.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), residual: if ok { 0.0 } else { 1.0 }, threshold: 0.0, pass: ok }
    }

    pub fn render(&self) -> String {
        format!(
            "CHECK {} residual={:e} threshold={:e} {}",
            self.name,
            self.residual,
            self.threshold,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// A batch of checks under a common title.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn add(&mut self, name: impl Into<String>, residual: f64, threshold: f64) {
        self.push(Check::new(name, residual, threshold));
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn worst(&self) -> Option<&Check> {
        self.checks.iter().filter(|c| !c.pass).max_by(|a, b| {
            (a.residual / a.threshold.max(f64::MIN_POSITIVE))
                .total_cmp(&(b.residual / b.threshold.max(f64::MIN_POSITIVE)))
        })
    }

    /// Line-oriented text: one `CHECK ...` line per entry.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.render());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_passes_iff_residual_within_threshold() {
        assert!(Check::new("sum", 1e-12, 1e-10).pass);
        assert!(!Check::new("sum", 1e-8, 1e-10).pass);
        assert!(Check::new("exact", 0.0, 0.0).pass);
    }

    #[test]
    fn render_format_is_line_oriented() {
        let c = Check::new("commutator_eh", 5e-12, 1e-10);
        let line = c.render();
        assert!(line.starts_with("CHECK commutator_eh residual="));
        assert!(line.ends_with("PASS"));
        assert!(line.contains("threshold="));
    }

    #[test]
    fn report_aggregates_and_serializes() {
        let mut r = Report::new("jordan");
        r.add("sum", 0.0, 1e-10);
        r.push(Check::holds("nilpotent", false));
        assert!(!r.pass());
        assert_eq!(r.worst().unwrap().name, "nilpotent");
        let json = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
