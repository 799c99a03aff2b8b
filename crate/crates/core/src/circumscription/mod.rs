//! Parallel propositional circumscription under the minimal-model semantics.
//!
//! `Circ[T; P; Q]` keeps the models of `T` whose extension of the minimized
//! atoms `P` is subset-minimal among the models that agree with them on every
//! atom outside `P ∪ Q`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{
    parse_at, positions, project_index, strip_comment, Assignment, Atom, Formula, Signature,
    Theory, TruthTable,
};

mod theorems;

pub use theorems::{
    check_circ_gamma_t, check_circ_interp1, check_circ_interp2, check_circ_t_gamma,
    check_interpolation_between_theories, circ1_keep_set, interpolate_circ1, interpolate_circ2,
};

/// A circumscription problem: theory, minimized atoms and varied atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircProblem {
    theory: Theory,
    minimize: Signature,
    vary: Signature,
}

impl CircProblem {
    pub fn new(theory: Theory, minimize: Signature, vary: Signature) -> Result<CircProblem> {
        if !minimize.is_disjoint(&vary) {
            return Err(Error::Precondition(format!(
                "minimized {} and varied {} overlap",
                minimize, vary
            )));
        }
        Ok(CircProblem {
            theory,
            minimize,
            vary,
        })
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn minimize(&self) -> &Signature {
        &self.minimize
    }

    pub fn vary(&self) -> &Signature {
        &self.vary
    }

    /// Same minimized/varied atoms over another theory.
    pub fn with_theory(&self, theory: Theory) -> CircProblem {
        CircProblem {
            theory,
            minimize: self.minimize.clone(),
            vary: self.vary.clone(),
        }
    }

    /// `signature(T) ∪ P ∪ Q ∪ extra`; atoms outside `P ∪ Q` are fixed.
    pub fn evaluation_signature(&self, extra: &Signature) -> Signature {
        self.theory
            .signature()
            .union(&self.minimize)
            .union(&self.vary)
            .union(extra)
    }

    /// Table of the minimal models over `signature`, which must contain the
    /// evaluation signature.
    pub(crate) fn minimal_table(&self, sig: &Signature, limits: &Limits) -> Result<TruthTable> {
        let models = self.theory.table(sig, limits)?;
        let p = mask_of(sig, &self.minimize);
        let q = mask_of(sig, &self.vary);
        Ok(TruthTable::from_indices(
            sig.len(),
            minimal_indices(models.models(), p, q, sig.len()),
        ))
    }
}

impl fmt::Display for CircProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circ[{}; {}; {}]", self.theory, self.minimize, self.vary)
    }
}

fn mask_of(sig: &Signature, subset: &Signature) -> u64 {
    subset
        .iter()
        .filter_map(|a| sig.index_of(a))
        .fold(0, |m, i| m | (1 << i))
}

/// Models not strictly dominated by another model with the same fixed part.
fn minimal_indices(models: impl Iterator<Item = u64>, p: u64, q: u64, width: usize) -> Vec<u64> {
    let all = if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    let fixed = all & !(p | q);
    let mut groups: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for m in models {
        groups.entry(m & fixed).or_default().push(m);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let projections: BTreeSet<u64> = members.iter().map(|m| m & p).collect();
        let minimal: BTreeSet<u64> = projections
            .iter()
            .copied()
            .filter(|x| !projections.iter().any(|y| y != x && y & !x == 0))
            .collect();
        out.extend(
            members
                .iter()
                .copied()
                .filter(|m| minimal.contains(&(m & p))),
        );
    }
    out.sort_unstable();
    out
}

/// How `m` relates to `n` under the preference order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    /// `m` agrees with `n` off `P ∪ Q` and makes a strict subset of `P` true.
    StrictlyLess,
    /// `m` agrees with `n` off `P ∪ Q` and its `P`-extension is a subset of `n`'s.
    LessEq,
    /// `m ≤ n` fails.
    Incomparable,
}

/// Compares two assignments under `≤_{P,Q}`.
pub fn preferred(
    m: &Assignment,
    n: &Assignment,
    minimize: &Signature,
    vary: &Signature,
) -> Result<Preference> {
    if m.signature() != n.signature() {
        return Err(Error::SignatureMismatch(format!(
            "{} vs {}",
            m.signature(),
            n.signature()
        )));
    }
    let free = minimize.union(vary);
    let agree_fixed = m
        .signature()
        .iter()
        .filter(|a| !free.contains(a))
        .all(|a| m.value(a) == n.value(a));
    if !agree_fixed {
        return Ok(Preference::Incomparable);
    }
    let em = m.extension(minimize);
    let en = n.extension(minimize);
    Ok(if !em.is_subset(&en) {
        Preference::Incomparable
    } else if em.len() < en.len() {
        Preference::StrictlyLess
    } else {
        Preference::LessEq
    })
}

/// Minimal models of a circumscription problem over a fixed signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModelSet {
    pub signature: Signature,
    pub models: Vec<Assignment>,
}

impl MinimalModelSet {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn contains_true_atoms(&self, true_atoms: &[&str]) -> bool {
        let wanted = Assignment::from_true_atoms(&self.signature, true_atoms);
        self.models.contains(&wanted)
    }
}

impl fmt::Display for MinimalModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.models.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Minimal models over `signature(T) ∪ P ∪ Q`.
pub fn minimal_models(cp: &CircProblem, limits: &Limits) -> Result<MinimalModelSet> {
    minimal_models_over(cp, &Signature::new(), limits)
}

/// Minimal models over the evaluation signature padded with `extra` fixed atoms.
pub fn minimal_models_over(
    cp: &CircProblem,
    extra: &Signature,
    limits: &Limits,
) -> Result<MinimalModelSet> {
    let sig = cp.evaluation_signature(extra);
    let table = cp.minimal_table(&sig, limits)?;
    Ok(MinimalModelSet {
        models: table
            .models()
            .map(|i| Assignment::new(sig.clone(), i))
            .collect(),
        signature: sig,
    })
}

/// `Circ[T; P; Q] ⊨ φ`: every minimal model satisfies `φ`.
pub fn circ_entails(cp: &CircProblem, phi: &Formula, limits: &Limits) -> Result<bool> {
    let sig = cp.evaluation_signature(&phi.signature());
    let min = cp.minimal_table(&sig, limits)?;
    Ok(min.implies(&TruthTable::of(phi, &sig)?))
}

/// Projections of the minimal models onto `onto`, evaluated over the
/// evaluation signature padded with `onto`.
///
/// Two problems entail the same formulas over `onto` iff these sets agree.
pub fn minimal_projections(
    cp: &CircProblem,
    onto: &Signature,
    limits: &Limits,
) -> Result<BTreeSet<u64>> {
    let sig = cp.evaluation_signature(onto);
    let min = cp.minimal_table(&sig, limits)?;
    let pos = positions(&sig, onto);
    Ok(min.models().map(|i| project_index(i, &pos)).collect())
}

/// Parses theory lines plus `@minimize a, b` and `@vary c` directives.
pub fn parse_circ_problem(text: &str) -> Result<CircProblem> {
    let mut formulas = Vec::new();
    let mut minimize = Signature::new();
    let mut vary = Signature::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('@') {
            let (directive, args) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let target = match directive {
                "minimize" => &mut minimize,
                "vary" => &mut vary,
                other => {
                    return Err(Error::Syntax {
                        line: idx + 1,
                        column: 1,
                        message: format!("unknown directive `@{other}`"),
                    })
                }
            };
            target.extend(parse_atom_list(args, idx + 1)?.iter().cloned());
            continue;
        }
        let f = parse_at(line, idx + 1)?;
        formulas.push(f);
    }
    CircProblem::new(Theory::new(formulas), minimize, vary)
}

/// Comma- or whitespace-separated atom names.
pub fn parse_atom_list(text: &str, line: usize) -> Result<Signature> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            Atom::new(s).map_err(|_| Error::Syntax {
                line,
                column: 1,
                message: format!("invalid atom name `{s}`"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    const L: Limits = Limits::DEFAULT;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn cp(theory: &[&str], p: &[&str], q: &[&str]) -> CircProblem {
        CircProblem::new(
            Theory::new(theory.iter().map(|s| f(s)).collect()),
            Signature::of(p),
            Signature::of(q),
        )
        .unwrap()
    }

    #[test]
    fn overlapping_minimize_and_vary_rejected() {
        assert!(CircProblem::new(
            Theory::default(),
            Signature::of(&["p"]),
            Signature::of(&["p"])
        )
        .is_err());
    }

    #[test]
    fn preference_examples() {
        let sig = Signature::of(&["P", "Q"]);
        let m = Assignment::from_true_atoms(&sig, &["Q"]);
        let n = Assignment::from_true_atoms(&sig, &["P"]);
        let (p, q) = (Signature::of(&["P"]), Signature::of(&["Q"]));
        assert_eq!(preferred(&m, &n, &p, &q).unwrap(), Preference::StrictlyLess);
        assert_eq!(preferred(&m, &m, &p, &q).unwrap(), Preference::LessEq);

        let sig = Signature::of(&["p", "r"]);
        let m = Assignment::from_true_atoms(&sig, &["r"]);
        let n = Assignment::from_true_atoms(&sig, &["p"]);
        assert_eq!(
            preferred(&m, &n, &Signature::of(&["p"]), &Signature::new()).unwrap(),
            Preference::Incomparable
        );

        let other = Assignment::from_true_atoms(&Signature::of(&["p"]), &[]);
        assert!(preferred(&m, &other, &Signature::of(&["p"]), &Signature::new()).is_err());
    }

    #[test]
    fn minimal_models_examples() {
        let mm = minimal_models(&cp(&["!P -> Q"], &["P"], &["Q"]), &L).unwrap();
        assert_eq!(mm.len(), 1);
        assert!(mm.contains_true_atoms(&["Q"]));

        let mm = minimal_models(&cp(&[], &["p"], &[]), &L).unwrap();
        assert_eq!(mm.len(), 1);
        assert!(mm.contains_true_atoms(&[]));

        let mm = minimal_models(&cp(&["p | q"], &["p", "q"], &[]), &L).unwrap();
        assert_eq!(mm.to_string(), "[{p}, {q}]");
    }

    #[test]
    fn fixed_atoms_split_the_comparison() {
        // r is fixed: both r-worlds keep their own minimum.
        let mm = minimal_models(&cp(&["r -> p"], &["p"], &[]), &L).unwrap();
        assert_eq!(mm.to_string(), "[{}, {r, p}]");
    }

    #[test]
    fn circ_entailment_examples() {
        assert!(circ_entails(&cp(&["!P -> Q"], &["P"], &["Q"]), &f("Q"), &L).unwrap());
        assert!(!circ_entails(&cp(&["true"], &["P"], &["Q"]), &f("Q"), &L).unwrap());
        assert!(circ_entails(&cp(&["p | q"], &["p", "q"], &[]), &f("!(p & q)"), &L).unwrap());
    }

    #[test]
    fn parse_directives() {
        let p = parse_circ_problem("!P -> Q  # theory\n@minimize P\n@vary Q\n").unwrap();
        assert_eq!(p.minimize(), &Signature::of(&["P"]));
        assert_eq!(p.vary(), &Signature::of(&["Q"]));
        assert_eq!(p.theory().formulas().len(), 1);
        assert!(matches!(
            parse_circ_problem("@fix p"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_circ_problem("p\n\np &"),
            Err(Error::Syntax { line: 3, .. })
        ));
    }
}
