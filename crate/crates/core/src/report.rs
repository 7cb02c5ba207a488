//! Structured result records shared by the checks and the CLI.

use serde::Serialize;

/// Version of the JSON record layout emitted by the CLI.
pub const SCHEMA_VERSION: &str = "1.0";

/// Serialize a number as its decimal string.
pub(crate) fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Overall verdict of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    /// Worst of two verdicts: `Fail` beats `Inconclusive` beats `Pass`.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }

    /// Process exit code: 0 pass, 1 fail, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a single witness satisfied its predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Violated,
    Inconclusive,
    /// Informational value with no predicate attached.
    Info,
}

/// One evaluated quantity backing a check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub expression: String,
    pub value: String,
    pub predicate: String,
    pub outcome: Outcome,
    #[serde(serialize_with = "as_string")]
    pub precision_bits: u32,
}

/// Result of checking one claim.
///
/// The status is derived from the witnesses: any violated witness fails the
/// report, otherwise any inconclusive one makes it inconclusive. A report
/// without predicate witnesses is inconclusive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaperCheckReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub claim_id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(serialize_with = "as_string")]
    pub precision_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PaperCheckReport {
    pub fn new(claim_id: impl Into<String>, anchor: impl Into<String>, precision_bits: u32) -> Self {
        PaperCheckReport {
            schema_version: SCHEMA_VERSION,
            kind: "paper_check",
            claim_id: claim_id.into(),
            anchor: anchor.into(),
            status: Status::Inconclusive,
            precision_bits,
            seed: None,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed.to_string());
        self
    }

    fn push(&mut self, expression: String, value: String, predicate: String, outcome: Outcome) {
        self.witnesses.push(Witness {
            expression,
            value,
            predicate,
            outcome,
            precision_bits: self.precision_bits,
        });
        self.status = Self::derive_status(&self.witnesses);
    }

    /// Record a witness whose predicate was decided.
    pub fn check(
        &mut self,
        expression: impl Into<String>,
        value: impl ToString,
        predicate: impl Into<String>,
        holds: bool,
    ) -> bool {
        let outcome = if holds { Outcome::Holds } else { Outcome::Violated };
        self.push(expression.into(), value.to_string(), predicate.into(), outcome);
        holds
    }

    /// Record a witness whose predicate could not be decided.
    pub fn undecided(
        &mut self,
        expression: impl Into<String>,
        value: impl ToString,
        predicate: impl Into<String>,
    ) {
        self.push(expression.into(), value.to_string(), predicate.into(), Outcome::Inconclusive);
    }

    /// Record a value without a predicate.
    pub fn info(&mut self, expression: impl Into<String>, value: impl ToString) {
        self.push(expression.into(), value.to_string(), String::new(), Outcome::Info);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Append the witnesses of `other`, prefixing their expressions.
    pub fn absorb(&mut self, prefix: &str, other: &PaperCheckReport) {
        for w in &other.witnesses {
            self.push(
                format!("{prefix}{}", w.expression),
                w.value.clone(),
                w.predicate.clone(),
                w.outcome,
            );
        }
        for n in &other.notes {
            self.notes.push(format!("{prefix}{n}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Witnesses that did not hold.
    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.outcome == Outcome::Violated)
    }

    fn derive_status(ws: &[Witness]) -> Status {
        if ws.iter().any(|w| w.outcome == Outcome::Violated) {
            Status::Fail
        } else if ws.iter().any(|w| w.outcome == Outcome::Inconclusive)
            || !ws.iter().any(|w| w.outcome == Outcome::Holds)
        {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    /// Multi-line human readable rendering.
    pub fn render_text(&self) -> String {
        let mut s = format!("[{}] {} ({})\n", self.status, self.claim_id, self.anchor);
        for w in &self.witnesses {
            let mark = match w.outcome {
                Outcome::Holds => "ok ",
                Outcome::Violated => "BAD",
                Outcome::Inconclusive => "?? ",
                Outcome::Info => "   ",
            };
            if w.predicate.is_empty() {
                s.push_str(&format!("  {mark} {} = {}\n", w.expression, w.value));
            } else {
                s.push_str(&format!("  {mark} {} = {}  [{}]\n", w.expression, w.value, w.predicate));
            }
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}

/// Worst status over a collection of reports; `Pass` when empty.
pub fn overall_status<'a>(reports: impl IntoIterator<Item = &'a PaperCheckReport>) -> Status {
    reports.into_iter().fold(Status::Pass, |acc, r| acc.combine(r.status))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_witnesses() {
        let mut r = PaperCheckReport::new("x", "y", 64);
        assert_eq!(r.status, Status::Inconclusive);
        r.info("a", 1);
        assert_eq!(r.status, Status::Inconclusive);
        r.check("b", 2, "> 0", true);
        assert_eq!(r.status, Status::Pass);
        r.undecided("c", "?", "> 0");
        assert_eq!(r.status, Status::Inconclusive);
        r.check("d", -1, "> 0", false);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_shape() {
        let mut r = PaperCheckReport::new("lemma-x", "anchor", 128).with_seed(7);
        r.check("v", "1.5", ">= 1", true);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["status"], "pass");
        assert_eq!(v["seed"], "7");
        assert_eq!(v["witnesses"][0]["outcome"], "holds");
    }
}
