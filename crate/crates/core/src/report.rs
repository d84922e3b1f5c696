//! Structured pass/fail verdicts with per-check details.

/// One verified quantity inside a [`TestReport`].
#[derive(Debug, Clone)]
pub struct Check {
    /// Short identifier of what was checked, e.g. `m=2 x=01`.
    pub label: String,
    /// The measured value (a frequency, an overlap, a residual norm).
    pub observed: f64,
    /// How far the measured value sits from its target, in the units the
    /// producing test documents.
    pub deviation: f64,
    pub passed: bool,
}

/// Outcome of a statistical or algebraic verification.
#[derive(Debug, Clone)]
pub struct TestReport {
    pub name: &'static str,
    pub passed: bool,
    /// Key used for the observed value when rendering detail lines.
    pub value_key: &'static str,
    pub checks: Vec<Check>,
}

impl TestReport {
    pub fn new(name: &'static str, value_key: &'static str) -> TestReport {
        TestReport {
            name,
            passed: true,
            value_key,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, observed: f64, deviation: f64, passed: bool) {
        self.passed &= passed;
        self.checks.push(Check {
            label: label.into(),
            observed,
            deviation,
            passed,
        });
    }

    /// Largest recorded deviation, 0 for an empty report.
    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }

    /// Line-based text form: a `verdict:` line, then one `detail:` line per check.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(if self.passed {
            "verdict: PASS\n"
        } else {
            "verdict: FAIL\n"
        });
        for c in &self.checks {
            out.push_str(&format!(
                "detail: {} {}={} dev={}\n",
                c.label, self.value_key, c.observed, c.deviation
            ));
        }
        out
    }
}
