use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Vacuous,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Vacuous => "vacuous",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

/// One claimed relation and whether it held.
///
/// Conditional relations are only claimed when the antecedent holds;
/// unconditional ones are claimed whenever the side conditions are met.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub held: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unconditional: bool,
}

/// Verdict of one theorem check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub side_conditions_met: bool,
    pub antecedent_held: bool,
    pub relations: Vec<Relation>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witness: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremReport {
    pub fn new(theorem: &str) -> TheoremReport {
        TheoremReport {
            theorem: theorem.to_string(),
            side_conditions_met: true,
            antecedent_held: true,
            relations: Vec::new(),
            verdict: Verdict::Pass,
            witness: BTreeMap::new(),
            extension_count: None,
            note: None,
        }
    }

    /// A report for an instance whose side conditions fail.
    pub fn skipped(theorem: &str, reason: impl Into<String>) -> TheoremReport {
        let mut r = TheoremReport::new(theorem);
        r.side_conditions_met = false;
        r.note = Some(reason.into());
        r.finish()
    }

    pub fn side_conditions(mut self, met: bool) -> Self {
        self.side_conditions_met = met;
        self
    }

    pub fn antecedent(mut self, held: bool) -> Self {
        self.antecedent_held = held;
        self
    }

    pub fn relation(mut self, name: &str, held: bool) -> Self {
        self.relations.push(Relation {
            name: name.to_string(),
            held,
            unconditional: false,
        });
        self
    }

    pub fn invariant(mut self, name: &str, held: bool) -> Self {
        self.relations.push(Relation {
            name: name.to_string(),
            held,
            unconditional: true,
        });
        self
    }

    pub fn witness(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.witness.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn extensions(mut self, count: usize) -> Self {
        self.extension_count = Some(count);
        self
    }

    /// Computes the verdict from the recorded fields.
    pub fn finish(mut self) -> Self {
        self.verdict = if !self.side_conditions_met {
            Verdict::Skipped
        } else if self
            .relations
            .iter()
            .any(|r| !r.held && (r.unconditional || self.antecedent_held))
        {
            Verdict::Fail
        } else if !self.antecedent_held {
            Verdict::Vacuous
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn relation_held(&self, name: &str) -> Option<bool> {
        self.relations
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.held)
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::Vacuous)
    }
}
