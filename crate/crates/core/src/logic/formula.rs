use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::logic::Signature;

/// A propositional symbol. Two atoms are equal iff their names are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Accepts `[A-Za-z][A-Za-z0-9_]*` except the constants `true` and `false`.
    pub fn new(name: &str) -> Result<Atom> {
        if is_valid_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Atom> {
        Atom::new(s.trim())
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Atom, D::Error> {
        let name = String::deserialize(d)?;
        Atom::new(&name).map_err(serde::de::Error::custom)
    }
}

/// Propositional formula over named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Atom formula from a name known to be valid.
    ///
    /// Panics on an invalid name; use [`Atom::new`] for untrusted input.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).unwrap_or_else(|e| panic!("{e}")))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conjoin<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(|acc, f| acc.and(f))
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn disjoin<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(|acc, f| acc.or(f))
            .unwrap_or(Formula::False)
    }

    /// Atoms in order of first occurrence, left to right.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        self.collect_atoms(&mut sig);
        sig
    }

    pub(crate) fn collect_atoms(&self, sig: &mut Signature) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                sig.insert(a.clone());
            }
            Formula::Not(f) => f.collect_atoms(sig),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(sig);
                r.collect_atoms(sig);
            }
        }
    }

    pub fn mentions(&self, atom: &Atom) -> bool {
        match self {
            Formula::True | Formula::False => false,
            Formula::Atom(a) => a == atom,
            Formula::Not(f) => f.mentions(atom),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.mentions(atom) || r.mentions(atom),
        }
    }

    /// Classical evaluation under a valuation of the atoms.
    pub fn eval<F: Fn(&Atom) -> bool + Copy>(&self, value: F) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => value(a),
            Formula::Not(f) => !f.eval(value),
            Formula::And(l, r) => l.eval(value) && r.eval(value),
            Formula::Or(l, r) => l.eval(value) || r.eval(value),
            Formula::Implies(l, r) => !l.eval(value) || r.eval(value),
            Formula::Iff(l, r) => l.eval(value) == r.eval(value),
        }
    }

    /// Replaces `atom` by a truth constant and simplifies the result.
    pub fn assign(&self, atom: &Atom, value: bool) -> Formula {
        match self {
            Formula::Atom(a) if a == atom => {
                if value {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => mk_not(f.assign(atom, value)),
            Formula::And(l, r) => mk_and(l.assign(atom, value), r.assign(atom, value)),
            Formula::Or(l, r) => mk_or(l.assign(atom, value), r.assign(atom, value)),
            Formula::Implies(l, r) => mk_implies(l.assign(atom, value), r.assign(atom, value)),
            Formula::Iff(l, r) => mk_iff(l.assign(atom, value), r.assign(atom, value)),
        }
    }

    /// Bottom-up constant propagation, double-negation removal and
    /// idempotence on syntactically equal operands.
    pub fn simplify(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => mk_not(f.simplify()),
            Formula::And(l, r) => mk_and(l.simplify(), r.simplify()),
            Formula::Or(l, r) => mk_or(l.simplify(), r.simplify()),
            Formula::Implies(l, r) => mk_implies(l.simplify(), r.simplify()),
            Formula::Iff(l, r) => mk_iff(l.simplify(), r.simplify()),
        }
    }

    /// Top-level conjuncts; a non-conjunction is its own single conjunct.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::And(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Rewrites every atom through `map`.
    pub fn map_atoms<F: Fn(&Atom) -> Formula + Copy>(&self, map: F) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => map(a),
            Formula::Not(f) => f.map_atoms(map).not(),
            Formula::And(l, r) => l.map_atoms(map).and(r.map_atoms(map)),
            Formula::Or(l, r) => l.map_atoms(map).or(r.map_atoms(map)),
            Formula::Implies(l, r) => l.map_atoms(map).implies(r.map_atoms(map)),
            Formula::Iff(l, r) => l.map_atoms(map).iff(r.map_atoms(map)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            _ => 6,
        }
    }
}

fn mk_not(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(inner) => *inner,
        other => other.not(),
    }
}

fn mk_and(l: Formula, r: Formula) -> Formula {
    match (l, r) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, x) | (x, Formula::True) => x,
        (l, r) if l == r => l,
        (l, r) => l.and(r),
    }
}

fn mk_or(l: Formula, r: Formula) -> Formula {
    match (l, r) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, x) | (x, Formula::False) => x,
        (l, r) if l == r => l,
        (l, r) => l.or(r),
    }
}

fn mk_implies(l: Formula, r: Formula) -> Formula {
    match (l, r) {
        (Formula::False, _) | (_, Formula::True) => Formula::True,
        (Formula::True, x) => x,
        (x, Formula::False) => mk_not(x),
        (l, r) if l == r => Formula::True,
        (l, r) => l.implies(r),
    }
}

fn mk_iff(l: Formula, r: Formula) -> Formula {
    match (l, r) {
        (Formula::True, x) | (x, Formula::True) => x,
        (Formula::False, x) | (x, Formula::False) => mk_not(x),
        (l, r) if l == r => Formula::True,
        (l, r) => l.iff(r),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(inner) => {
                f.write_str("!")?;
                write_operand(f, inner, inner.precedence() < 5)
            }
            Formula::And(l, r) => write_binary(f, self, l, r, "&", false),
            Formula::Or(l, r) => write_binary(f, self, l, r, "|", false),
            Formula::Implies(l, r) => write_binary(f, self, l, r, "->", true),
            Formula::Iff(l, r) => write_binary(f, self, l, r, "<->", false),
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, operand: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({operand})")
    } else {
        write!(f, "{operand}")
    }
}

fn write_binary(
    f: &mut fmt::Formatter<'_>,
    node: &Formula,
    l: &Formula,
    r: &Formula,
    op: &str,
    right_assoc: bool,
) -> fmt::Result {
    let p = node.precedence();
    let left_parens = l.precedence() < p || (l.precedence() == p && right_assoc);
    let right_parens = r.precedence() < p || (r.precedence() == p && !right_assoc);
    write_operand(f, l, left_parens)?;
    write!(f, " {op} ")?;
    write_operand(f, r, right_parens)
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        crate::logic::parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
