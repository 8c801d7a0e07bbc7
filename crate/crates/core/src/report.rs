//! Schema-versioned analysis and verification reports.
//!
//! All maps are `BTreeMap`s and instances keep corpus order, so the JSON
//! rendering of a report is byte-identical across runs for the same input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "isgw-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisStatus {
    Met,
    /// The hypothesis fails and the check was not run.
    UnmetSkipped,
    /// The hypothesis fails; the check ran and its outcome is informational.
    UnmetRecorded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Property {
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub hypothesis: HypothesisStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremEntry {
    pub outcome: Outcome,
    pub hypothesis: HypothesisStatus,
    /// Number of individual checks folded into this entry.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl TheoremEntry {
    /// A failure only falsifies when the hypotheses were met.
    pub fn is_falsification(&self) -> bool {
        self.outcome == Outcome::Fail && self.hypothesis == HypothesisStatus::Met
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: String,
    pub kind: String,
    pub properties: BTreeMap<String, Property>,
    pub theorems: BTreeMap<String, TheoremEntry>,
}

impl InstanceReport {
    pub fn new(id: impl Into<String>, kind: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind: kind.into(),
            properties: BTreeMap::new(),
            theorems: BTreeMap::new(),
        }
    }

    pub fn property(&mut self, name: &str, value: impl Serialize) {
        self.property_with(name, value, None, HypothesisStatus::Met);
    }

    pub fn property_with(&mut self, name: &str, value: impl Serialize, witness: Option<String>, hypothesis: HypothesisStatus) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.properties.insert(
            name.to_string(),
            Property {
                value,
                witness,
                hypothesis,
            },
        );
    }

    /// Folds one check into the named theorem entry. The first failure's
    /// counterexample is kept.
    pub fn check(&mut self, theorem: &str, hypothesis: HypothesisStatus, outcome: std::result::Result<(), String>) {
        let entry = self.theorems.entry(theorem.to_string()).or_insert(TheoremEntry {
            outcome: Outcome::Pass,
            hypothesis,
            checks: 0,
            counterexample: None,
        });
        if hypothesis == HypothesisStatus::UnmetSkipped {
            if entry.checks == 0 {
                entry.outcome = Outcome::Skipped;
                entry.hypothesis = hypothesis;
            }
            return;
        }
        if entry.outcome == Outcome::Skipped {
            entry.outcome = Outcome::Pass;
        }
        if hypothesis == HypothesisStatus::UnmetRecorded {
            entry.hypothesis = hypothesis;
        }
        entry.checks += 1;
        if let Err(c) = outcome {
            if entry.outcome != Outcome::Fail {
                entry.outcome = Outcome::Fail;
                entry.counterexample = Some(c);
            }
        }
    }

    pub fn skip(&mut self, theorem: &str) {
        self.check(theorem, HypothesisStatus::UnmetSkipped, Ok(()));
    }

    pub fn falsifications(&self) -> impl Iterator<Item = (&String, &TheoremEntry)> {
        self.theorems.iter().filter(|(_, t)| t.is_falsification())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    /// Failures under unmet hypotheses, which do not count against the run.
    pub recorded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub config: BTreeMap<String, Value>,
    pub instances: Vec<InstanceReport>,
    pub summary: BTreeMap<String, Tally>,
}

impl Report {
    pub fn new(config: BTreeMap<String, Value>, instances: Vec<InstanceReport>) -> Self {
        let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
        for inst in &instances {
            for (name, t) in &inst.theorems {
                let tally = summary.entry(name.clone()).or_default();
                match (t.outcome, t.is_falsification()) {
                    (Outcome::Pass, _) => tally.pass += 1,
                    (Outcome::Skipped, _) => tally.skipped += 1,
                    (Outcome::Fail, true) => tally.fail += 1,
                    (Outcome::Fail, false) => tally.recorded += 1,
                }
            }
        }
        Self {
            schema: SCHEMA_VERSION.to_string(),
            config,
            instances,
            summary,
        }
    }

    pub fn has_falsification(&self) -> bool {
        self.summary.values().any(|t| t.fail > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let _ = writeln!(out, "== {} ({})", inst.id, inst.kind);
            for (name, p) in &inst.properties {
                let _ = write!(out, "  {name}: {}", p.value);
                if let Some(w) = &p.witness {
                    let _ = write!(out, "  [witness {w}]");
                }
                if p.hypothesis != HypothesisStatus::Met {
                    let _ = write!(out, "  ({:?})", p.hypothesis);
                }
                out.push('\n');
            }
            for (name, t) in &inst.theorems {
                let _ = write!(out, "  [{:?}] {name} x{}", t.outcome, t.checks);
                if t.hypothesis != HypothesisStatus::Met {
                    let _ = write!(out, " ({:?})", t.hypothesis);
                }
                if let Some(c) = &t.counterexample {
                    let _ = write!(out, ": {c}");
                }
                out.push('\n');
            }
        }
        if !self.summary.is_empty() {
            out.push_str("== summary\n");
            for (name, t) in &self.summary {
                let _ = writeln!(
                    out,
                    "  {name}: pass {} fail {} skipped {} recorded {}",
                    t.pass, t.fail, t.skipped, t.recorded
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding_keeps_first_counterexample() {
        let mut r = InstanceReport::new("x", "semigroup");
        r.check("t", HypothesisStatus::Met, Ok(()));
        r.check("t", HypothesisStatus::Met, Err("first".into()));
        r.check("t", HypothesisStatus::Met, Err("second".into()));
        let t = &r.theorems["t"];
        assert_eq!((t.outcome, t.checks), (Outcome::Fail, 3));
        assert_eq!(t.counterexample.as_deref(), Some("first"));
        assert!(t.is_falsification());
    }

    #[test]
    fn recorded_failures_do_not_falsify() {
        let mut r = InstanceReport::new("x", "semigroup");
        r.check("t", HypothesisStatus::UnmetRecorded, Err("c".into()));
        r.skip("u");
        let rep = Report::new(BTreeMap::new(), vec![r]);
        assert!(!rep.has_falsification());
        assert_eq!(rep.summary["t"].recorded, 1);
        assert_eq!(rep.summary["u"].skipped, 1);
        assert_eq!(rep.instances[0].theorems["u"].hypothesis, HypothesisStatus::UnmetSkipped);
    }

    #[test]
    fn json_uses_kebab_statuses() {
        let mut r = InstanceReport::new("x", "graph");
        r.property_with("p", true, None, HypothesisStatus::UnmetRecorded);
        let j = Report::new(BTreeMap::new(), vec![r]).to_json();
        assert!(j.contains("\"unmet-recorded\""));
        assert!(j.contains(SCHEMA_VERSION));
    }
}
