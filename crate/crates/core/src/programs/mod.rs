//! Extended disjunctive logic programs under the answer-set semantics, their
//! translations into default logic, and the two interpolation checks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::default_logic::{extensions, DefaultRule, DefaultTheory};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{Atom, Formula, Signature, Theory};

mod answer;
mod interpolation;
mod syntax;

pub use answer::{
    all_literals, answer_sets, answer_sets_positive, is_answer_set, lp_brave, lp_cautious, reduct,
    LiteralSet,
};
pub use interpolation::{
    check_lp_brave, check_lp_cautious, heads_meet_bodies, lp_brave_side_conditions,
    lp_interpolant_brave, lp_interpolant_cautious, Disjointness,
};
pub use syntax::{parse_program, parse_program_with, Dialect, Literal, Program, Rule};

/// Fresh atoms standing for classically negated atoms: `-a` becomes `a_neg`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenameTable {
    pairs: Vec<(Atom, Atom)>,
}

impl RenameTable {
    /// `(original, fresh)` pairs in order of first negative occurrence.
    pub fn pairs(&self) -> &[(Atom, Atom)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn fresh_for(&self, atom: &Atom) -> Option<&Atom> {
        self.pairs.iter().find(|(a, _)| a == atom).map(|(_, f)| f)
    }

    pub fn original_of(&self, fresh: &Atom) -> Option<&Atom> {
        self.pairs.iter().find(|(_, f)| f == fresh).map(|(a, _)| a)
    }

    pub fn fresh_atoms(&self) -> Signature {
        self.pairs.iter().map(|(_, f)| f.clone()).collect()
    }

    /// Rewrites `!a` to `a_neg` for every renamed `a`.
    pub fn rewrite(&self, phi: &Formula) -> Formula {
        if self.is_empty() {
            return phi.clone();
        }
        match phi {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(a) => match self.fresh_for(a) {
                    Some(fresh) => Formula::Atom(fresh.clone()),
                    None => phi.clone(),
                },
                other => self.rewrite(other).not(),
            },
            Formula::And(l, r) => self.rewrite(l).and(self.rewrite(r)),
            Formula::Or(l, r) => self.rewrite(l).or(self.rewrite(r)),
            Formula::Implies(l, r) => self.rewrite(l).implies(self.rewrite(r)),
            Formula::Iff(l, r) => self.rewrite(l).iff(self.rewrite(r)),
            Formula::True | Formula::False | Formula::Atom(_) => phi.clone(),
        }
    }

    /// Renames every negative literal of `p`; each negated atom must be in the table.
    pub(crate) fn apply(&self, p: &Program) -> Program {
        let rename = |ls: &[Literal]| ls.iter().map(|l| self.literal(l)).collect::<Vec<_>>();
        Program::new(
            p.rules
                .iter()
                .map(|r| Rule::new(rename(&r.head), rename(&r.pos), rename(&r.neg)))
                .collect(),
        )
    }

    fn literal(&self, l: &Literal) -> Literal {
        if l.positive {
            l.clone()
        } else {
            Literal::pos(self.fresh_for(&l.atom).expect("renamed").clone())
        }
    }
}

pub(crate) fn rename_table(p: &Program) -> Result<RenameTable> {
    let atoms = p.atoms();
    let mut pairs: Vec<(Atom, Atom)> = Vec::new();
    for l in p.rules.iter().flat_map(|r| r.literals()) {
        if l.positive || pairs.iter().any(|(a, _)| *a == l.atom) {
            continue;
        }
        let name = format!("{}_neg", l.atom);
        let fresh = Atom::new(&name)?;
        if atoms.contains(&fresh) {
            return Err(Error::NameCollision(name));
        }
        pairs.push((l.atom.clone(), fresh));
    }
    Ok(RenameTable { pairs })
}

/// Replaces every `-a` by a fresh positive atom `a_neg`.
pub fn eliminate_classical_negation(p: &Program) -> Result<(Program, RenameTable)> {
    let table = rename_table(p)?;
    Ok((table.apply(p), table))
}

/// Maps answer sets of the renamed program back to the original.
///
/// Sets holding both `a` and `a_neg` are dropped; `Lit` is added exactly when
/// it is an answer set of `original`.
pub fn restore_answer_sets(
    renamed: &[LiteralSet],
    table: &RenameTable,
    original: &Program,
    limits: &Limits,
) -> Result<Vec<LiteralSet>> {
    let mut out = Vec::new();
    for set in renamed {
        let LiteralSet::Consistent(lits) = set else {
            continue;
        };
        let clash = table.pairs().iter().any(|(a, fresh)| {
            lits.contains(&Literal::pos(a.clone())) && lits.contains(&Literal::pos(fresh.clone()))
        });
        if clash {
            continue;
        }
        let back = lits.iter().map(|l| match table.original_of(&l.atom) {
            Some(a) if l.positive => Literal::neg(a.clone()),
            _ => l.clone(),
        });
        out.push(LiteralSet::Consistent(back.collect()));
    }
    if is_answer_set(original, &LiteralSet::All, limits)? {
        out.push(LiteralSet::All);
    }
    Ok(out)
}

fn atom_formula(l: &Literal) -> Formula {
    Formula::Atom(l.atom.clone())
}

/// Normal rule `a :- b1, …, bm, not c1, …, not cn` becomes the default
/// `b1 ∧ … ∧ bm : ¬c1, …, ¬cn / a`; facts go to `W`.
pub fn translate_normal_to_default(p: &Program) -> Result<DefaultTheory> {
    if !p.is_normal() {
        return Err(Error::NotNormal(
            "needs single-atom heads and no classical negation".into(),
        ));
    }
    let mut facts = Vec::new();
    let mut defaults = Vec::new();
    for r in &p.rules {
        let head = atom_formula(&r.head[0]);
        if r.is_fact() {
            facts.push(head);
            continue;
        }
        defaults.push(DefaultRule::new(
            Formula::conjoin(r.pos.iter().map(atom_formula)),
            r.neg.iter().map(|l| atom_formula(l).not()).collect(),
            head,
        ));
    }
    Ok(DefaultTheory::new(Theory::new(facts), defaults))
}

/// Each rule becomes `: ¬c1, …, ¬cn / (b1 ∧ … ∧ bm → a1 ∨ … ∨ al)` and each
/// atom `a` contributes `: ¬a / ¬a`; `W` is empty.
pub fn translate_disjunctive_to_default(p: &Program) -> Result<DefaultTheory> {
    if p.has_classical_negation() {
        return Err(Error::ClassicalNegation(
            "eliminate classical negation before translating".into(),
        ));
    }
    let mut defaults: Vec<DefaultRule> = p
        .rules
        .iter()
        .map(|r| {
            let head = Formula::disjoin(r.head.iter().map(atom_formula));
            let cons = if r.pos.is_empty() {
                head
            } else {
                Formula::conjoin(r.pos.iter().map(atom_formula)).implies(head)
            };
            DefaultRule::new(
                Formula::True,
                r.neg.iter().map(|l| atom_formula(l).not()).collect(),
                cons,
            )
        })
        .collect();
    for a in p.atoms().iter() {
        let neg = Formula::Atom(a.clone()).not();
        defaults.push(DefaultRule::new(Formula::True, vec![neg.clone()], neg));
    }
    Ok(DefaultTheory::new(Theory::default(), defaults))
}

/// For each extension, the atoms of `atoms` it entails.
pub fn extension_atom_sets(
    dt: &DefaultTheory,
    atoms: &Signature,
    limits: &Limits,
) -> Result<Vec<BTreeSet<Atom>>> {
    let mut out = Vec::new();
    for e in extensions(dt, limits)? {
        let mut set = BTreeSet::new();
        for a in atoms.iter() {
            if crate::logic::implies(&e.representative, &Formula::Atom(a.clone()), limits)? {
                set.insert(a.clone());
            }
        }
        out.push(set);
    }
    Ok(out)
}

/// Atom sets of the answer sets of `p`.
pub fn stable_atom_sets(p: &Program, limits: &Limits) -> Result<Vec<BTreeSet<Atom>>> {
    let atoms = p.atoms();
    Ok(answer_sets(p, limits)?
        .iter()
        .map(|x| x.true_atoms(&atoms))
        .collect())
}
