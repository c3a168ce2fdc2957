//! Structured verification reports with expected/observed pairs and a single verdict.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// The input lies outside the class the statement is about.
    #[serde(rename = "NOT-APPLICABLE")]
    NotApplicable,
    /// The statement applies but its extra hypothesis does not hold here.
    #[serde(rename = "HYPOTHESIS-NOT-MET")]
    HypothesisNotMet,
}

impl Verdict {
    /// Fails only on `Fail`.
    pub fn is_ok(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "NOT-APPLICABLE",
            Verdict::HypothesisNotMet => "HYPOTHESIS-NOT-MET",
        })
    }
}

/// Where a report's numbers came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportInputs {
    pub complex: String,
    pub field: String,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

impl ReportInputs {
    pub fn new(
        complex: impl Into<String>,
        field: FieldSpec,
        seed: Option<u64>,
        trials: Option<usize>,
    ) -> Self {
        ReportInputs {
            complex: complex.into(),
            field: field.to_string(),
            seed,
            trials,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub inputs: ReportInputs,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>, inputs: ReportInputs) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            inputs,
            checks: Vec::new(),
            verdict: Verdict::Pass,
            notes: Vec::new(),
        }
    }

    /// Records a check that passes iff both sides serialize identically.
    pub fn check<E: Serialize, O: Serialize>(
        &mut self,
        name: impl Into<String>,
        expected: E,
        observed: O,
    ) -> bool {
        let (expected, observed) = (to_value(&expected), to_value(&observed));
        let pass = expected == observed;
        self.checks.push(Check {
            name: name.into(),
            expected,
            observed,
            pass,
        });
        pass
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Appends checks from another report under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Sorts checks by name and sets the verdict. A gate verdict other than `Pass` overrides the
    /// outcome of the checks, which are still kept for inspection.
    pub fn finalize(mut self, gate: Verdict) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.verdict = match gate {
            Verdict::Pass if self.all_pass() => Verdict::Pass,
            Verdict::Pass => Verdict::Fail,
            g => g,
        };
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering: a header, one line per check and the notes.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} [{}] field={} seed={} trials={}\n",
            self.theorem,
            self.inputs.complex,
            self.inputs.field,
            self.inputs
                .seed
                .map(|s| s.to_string())
                .unwrap_or_else(|| "-".into()),
            self.inputs
                .trials
                .map(|s| s.to_string())
                .unwrap_or_else(|| "-".into()),
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {}: expected {} observed {}\n",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.expected,
                c.observed
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(&format!("  verdict: {}\n", self.verdict));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs() -> ReportInputs {
        ReportInputs::new("t", FieldSpec::Rationals, Some(1), Some(3))
    }

    #[test]
    fn verdict_follows_checks() {
        let mut r = VerificationReport::new("x", inputs());
        r.check("b", vec![1, 2], vec![1, 2]);
        r.check("a", 3, 3);
        let r = r.finalize(Verdict::Pass);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.checks[0].name, "a");

        let mut r = VerificationReport::new("x", inputs());
        r.check("a", 3, 4);
        assert_eq!(r.finalize(Verdict::Pass).verdict, Verdict::Fail);
    }

    #[test]
    fn gates_override() {
        let mut r = VerificationReport::new("x", inputs());
        r.check("a", 3, 4);
        let r = r.finalize(Verdict::NotApplicable);
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(r.verdict.is_ok());
        assert_eq!(r.checks.len(), 1);
    }

    #[test]
    fn json_shape() {
        let mut r = VerificationReport::new("x", inputs());
        r.check("a", true, true);
        let v: Value =
            serde_json::from_str(&r.finalize(Verdict::HypothesisNotMet).to_json()).unwrap();
        assert_eq!(v["verdict"], "HYPOTHESIS-NOT-MET");
        assert_eq!(v["inputs"]["field"], "Q");
        assert_eq!(v["checks"][0]["pass"], true);
        assert!(v.get("notes").is_none());
    }
}
