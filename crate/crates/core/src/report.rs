//! Structured certifier output.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::rational::Rational;

/// Lemmas are conditional statements; a failed hypothesis is reported as
/// `NotApplicable`, never as `Fail`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Bool(bool),
    Int(i64),
    Rational(Rational),
    Real(f64),
    Text(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Bool(b) => write!(f, "{b}"),
            Quantity::Int(i) => write!(f, "{i}"),
            Quantity::Rational(r) => write!(f, "{r}"),
            Quantity::Real(x) => write!(f, "{x:.6}"),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

impl From<bool> for Quantity {
    fn from(b: bool) -> Self {
        Quantity::Bool(b)
    }
}
impl From<usize> for Quantity {
    fn from(n: usize) -> Self {
        Quantity::Int(n as i64)
    }
}
impl From<i64> for Quantity {
    fn from(n: i64) -> Self {
        Quantity::Int(n)
    }
}
impl From<Rational> for Quantity {
    fn from(r: Rational) -> Self {
        Quantity::Rational(r)
    }
}
impl From<&Rational> for Quantity {
    fn from(r: &Rational) -> Self {
        Quantity::Rational(r.clone())
    }
}
impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Quantity::Real(x)
    }
}
impl From<String> for Quantity {
    fn from(s: String) -> Self {
        Quantity::Text(s)
    }
}
impl From<&str> for Quantity {
    fn from(s: &str) -> Self {
        Quantity::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub instance: String,
    pub verdict: Verdict,
    pub pass: bool,
    pub counts: BTreeMap<String, Quantity>,
    pub witnesses: Vec<String>,
}

impl LemmaReport {
    pub fn new(lemma: &str, instance: impl Into<String>) -> Self {
        LemmaReport {
            lemma: lemma.to_string(),
            instance: instance.into(),
            verdict: Verdict::Pass,
            pass: true,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Quantity>) -> &mut Self {
        self.counts.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Quantity> {
        self.counts.get(key)
    }

    pub fn int(&self, key: &str) -> Option<i64> {
        match self.counts.get(key) {
            Some(Quantity::Int(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn set_verdict(&mut self, verdict: Verdict) -> &mut Self {
        self.verdict = verdict;
        self.pass = verdict == Verdict::Pass;
        self
    }

    pub fn not_applicable(&mut self, reason: impl Into<String>) -> &mut Self {
        self.set("hypothesis", false);
        self.set("reason", reason.into());
        self.set_verdict(Verdict::NotApplicable)
    }

    pub fn fail(&mut self, witness: impl Into<String>) -> &mut Self {
        self.witness(witness);
        self.set_verdict(Verdict::Fail)
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "lemma: {}", self.lemma).unwrap();
        writeln!(out, "instance: {}", self.instance).unwrap();
        writeln!(out, "verdict: {}", self.verdict).unwrap();
        for (k, v) in &self.counts {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for w in &self.witnesses {
            writeln!(out, "witness: {w}").unwrap();
        }
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
    fn text_and_json_agree_on_keys() {
        let mut r = LemmaReport::new("moore-dispersion", "petersen");
        r.set("paths", 30usize).set("ratio", Rational::new(3, 2));
        let text = r.to_text();
        assert!(text.contains("verdict: pass\n"));
        assert!(text.contains("paths: 30\n"));
        assert!(text.contains("ratio: 3/2\n"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["verdict"], "pass");
        assert_eq!(json["pass"], true);
        assert_eq!(json["counts"]["paths"], 30);
        assert_eq!(json["counts"]["ratio"], "3/2");
    }

    #[test]
    fn not_applicable_is_not_a_failure() {
        let mut r = LemmaReport::new("x", "y");
        r.not_applicable("girth too small");
        assert!(!r.is_fail());
        assert!(!r.is_pass());
        assert!(!r.pass);
        r.fail("counterexample");
        assert!(r.is_fail());
        assert_eq!(r.witnesses.len(), 1);
    }
}
