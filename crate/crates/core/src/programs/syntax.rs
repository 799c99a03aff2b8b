use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Atom, Signature};

/// An atom or its classical negation `-a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: true,
        }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: false,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl std::str::FromStr for Literal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Literal> {
        let s = s.trim();
        let (positive, name) = match s.strip_prefix('-') {
            Some(rest) => (false, rest.trim_start()),
            None => (true, s),
        };
        if name == "not" {
            return Err(Error::InvalidAtom(name.into()));
        }
        Ok(Literal {
            atom: Atom::new(name)?,
            positive,
        })
    }
}

/// `h1 | … | hl :- p1, …, pn, not n1, …, not nm.`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub head: Vec<Literal>,
    pub pos: Vec<Literal>,
    pub neg: Vec<Literal>,
}

fn dedup(mut v: Vec<Literal>) -> Vec<Literal> {
    let mut seen = BTreeSet::new();
    v.retain(|l| seen.insert(l.clone()));
    v
}

impl Rule {
    /// Builds a rule, dropping repeated literals.
    pub fn new(head: Vec<Literal>, pos: Vec<Literal>, neg: Vec<Literal>) -> Rule {
        Rule {
            head: dedup(head),
            pos: dedup(pos),
            neg: dedup(neg),
        }
    }

    pub fn fact(head: Literal) -> Rule {
        Rule::new(vec![head], Vec::new(), Vec::new())
    }

    pub fn is_fact(&self) -> bool {
        self.head.len() == 1 && self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head.iter().chain(&self.pos).chain(&self.neg)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(|l| l.to_string()).collect();
        f.write_str(&head.join(" | "))?;
        let body: Vec<String> = self
            .pos
            .iter()
            .map(|l| l.to_string())
            .chain(self.neg.iter().map(|l| format!("not {l}")))
            .collect();
        if !body.is_empty() {
            if !head.is_empty() {
                f.write_str(" ")?;
            }
            write!(f, ":- {}", body.join(", "))?;
        }
        f.write_str(".")
    }
}

/// A finite extended disjunctive program.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Program {
        Program { rules }
    }

    /// Atoms in order of first occurrence.
    pub fn atoms(&self) -> Signature {
        self.rules
            .iter()
            .flat_map(|r| r.literals())
            .map(|l| l.atom.clone())
            .collect()
    }

    pub fn has_classical_negation(&self) -> bool {
        self.rules
            .iter()
            .flat_map(|r| r.literals())
            .any(|l| !l.positive)
    }

    pub fn is_disjunctive(&self) -> bool {
        self.rules.iter().any(|r| r.head.len() > 1)
    }

    /// Single positive head atoms, no classical negation.
    pub fn is_normal(&self) -> bool {
        !self.has_classical_negation() && self.rules.iter().all(|r| r.head.len() == 1)
    }

    pub fn is_positive(&self) -> bool {
        self.rules.iter().all(|r| r.neg.is_empty())
    }

    pub fn union(&self, other: &Program) -> Program {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        Program { rules }
    }

    /// Literals occurring in heads.
    pub fn head_literals(&self) -> BTreeSet<Literal> {
        self.rules
            .iter()
            .flat_map(|r| r.head.iter().cloned())
            .collect()
    }

    /// Literals occurring in bodies, under `not` or not.
    pub fn body_literals(&self) -> BTreeSet<Literal> {
        self.rules
            .iter()
            .flat_map(|r| r.pos.iter().chain(&r.neg).cloned())
            .collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Program {
    type Err = Error;

    fn from_str(s: &str) -> Result<Program> {
        parse_program(s)
    }
}

/// Parser switches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Dialect {
    /// Accept rules with an empty head (`:- a, not b.`).
    pub allow_constraints: bool,
}

/// Parses one rule per line; `%` starts a comment.
pub fn parse_program(text: &str) -> Result<Program> {
    parse_program_with(text, Dialect::default())
}

pub fn parse_program_with(text: &str, dialect: Dialect) -> Result<Program> {
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('%').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        rules.push(parse_rule(line, idx + 1, dialect)?);
    }
    Ok(Program::new(rules))
}

fn parse_rule(line: &str, line_no: usize, dialect: Dialect) -> Result<Rule> {
    let err = |column: usize, message: String| Error::Syntax {
        line: line_no,
        column,
        message,
    };
    let trimmed = line.trim_end();
    let Some(body_text) = trimmed.strip_suffix('.') else {
        return Err(err(
            trimmed.chars().count() + 1,
            "rule must end with `.`".into(),
        ));
    };
    let (head_text, body) = match body_text.find(":-") {
        Some(i) => (&body_text[..i], Some((&body_text[i + 2..], i + 3))),
        None => (body_text, None),
    };

    let mut head = Vec::new();
    if !head_text.trim().is_empty() {
        let mut offset = 0;
        for part in head_text.split('|') {
            let col = offset + (part.len() - part.trim_start().len()) + 1;
            head.push(
                part.parse::<Literal>()
                    .map_err(|_| err(col, format!("invalid head literal `{}`", part.trim())))?,
            );
            offset += part.len() + 1;
        }
    } else if !dialect.allow_constraints {
        return Err(err(
            line.len() - line.trim_start().len() + 1,
            "rules need at least one head literal".into(),
        ));
    }

    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    if let Some((text, start)) = body {
        if text.trim().is_empty() {
            return Err(err(start, "empty body after `:-`".into()));
        }
        let mut offset = start - 1;
        for part in text.split(',') {
            let col = offset + (part.len() - part.trim_start().len()) + 1;
            let item = part.trim();
            let (target, lit) = match item.strip_prefix("not ") {
                Some(rest) => (&mut neg, rest),
                None => (&mut pos, item),
            };
            target.push(
                lit.parse::<Literal>()
                    .map_err(|_| err(col, format!("invalid body literal `{item}`")))?,
            );
            offset += part.len() + 1;
        }
    }
    Ok(Rule::new(head, pos, neg))
}
