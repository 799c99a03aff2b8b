//! Propositional Reiter default logic.
//!
//! Extensions are found by enumerating candidate sets of generating defaults:
//! `D′` generates `E = Cn(W ∪ cons(D′))` iff `D′` is grounded in `W` and is
//! exactly the set of defaults applicable to `E`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{parse_at, strip_comment, Formula, Signature, Theory, TruthTable};

mod interpolation;
mod split;
pub(crate) use interpolation::{all_formulas, EXHAUSTIVE_ATOMS};

pub use interpolation::{
    brave_interpolant, cautious_chain, check_dl_brave, check_dl_cautious, dl_interpolants_cautious,
    extension_interpolation, reverse_extension_check, strong_disjointness, weak_disjointness,
    CautiousChain, CautiousInterpolants, CautiousVariant,
};
pub use split::{check_turner_splitting, e_a, splitting_set, SplitRejection, SplitSpec};

/// A default `pre : j1, …, jn / cons`. Justifications are checked one at a time.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefaultRule {
    pub prerequisite: Formula,
    pub justifications: Vec<Formula>,
    pub consequent: Formula,
}

impl DefaultRule {
    pub fn new(prerequisite: Formula, justifications: Vec<Formula>, consequent: Formula) -> Self {
        DefaultRule {
            prerequisite,
            justifications,
            consequent,
        }
    }

    /// `: / f`, the default form of a fact.
    pub fn fact(consequent: Formula) -> Self {
        DefaultRule::new(Formula::True, Vec::new(), consequent)
    }

    /// `pre : c / c`.
    pub fn normal(prerequisite: Formula, consequent: Formula) -> Self {
        DefaultRule::new(prerequisite, vec![consequent.clone()], consequent)
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        self.prerequisite.collect_atoms(&mut sig);
        for j in &self.justifications {
            j.collect_atoms(&mut sig);
        }
        self.consequent.collect_atoms(&mut sig);
        sig
    }

    pub fn is_normal(&self) -> bool {
        self.justifications.len() == 1 && self.justifications[0] == self.consequent
    }
}

impl fmt::Display for DefaultRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prerequisite != Formula::True {
            write!(f, "{} ", self.prerequisite)?;
        }
        f.write_str(":")?;
        for (i, j) in self.justifications.iter().enumerate() {
            write!(f, "{}{j}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, " / {}", self.consequent)
    }
}

impl std::str::FromStr for DefaultRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_default(s, 1)
    }
}

fn parse_default(line: &str, line_no: usize) -> Result<DefaultRule> {
    let syntax = |message: &str| Error::Syntax {
        line: line_no,
        column: 1,
        message: message.to_string(),
    };
    let (pre, rest) = line
        .split_once(':')
        .ok_or_else(|| syntax("default is missing `:`"))?;
    let (justs, cons) = rest
        .rsplit_once('/')
        .ok_or_else(|| syntax("default is missing `/`"))?;
    let prerequisite = if pre.trim().is_empty() {
        Formula::True
    } else {
        parse_at(pre, line_no)?
    };
    let justifications = if justs.trim().is_empty() {
        Vec::new()
    } else {
        justs
            .split(',')
            .map(|j| parse_at(j, line_no))
            .collect::<Result<_>>()?
    };
    if cons.trim().is_empty() {
        return Err(syntax("default is missing a consequent"));
    }
    Ok(DefaultRule::new(
        prerequisite,
        justifications,
        parse_at(cons, line_no)?,
    ))
}

/// A default theory `⟨W, D⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DefaultTheory {
    pub facts: Theory,
    pub defaults: Vec<DefaultRule>,
}

impl DefaultTheory {
    pub fn new(facts: Theory, defaults: Vec<DefaultRule>) -> Self {
        DefaultTheory { facts, defaults }
    }

    /// `L(W) ∪ L(D)`.
    pub fn signature(&self) -> Signature {
        let mut sig = self.facts.signature().clone();
        sig.extend(self.default_signature().iter().cloned());
        sig
    }

    pub fn default_signature(&self) -> Signature {
        signature_of(&self.defaults)
    }

    pub fn prerequisite_signature(&self) -> Signature {
        formulas_signature(self.defaults.iter().map(|d| &d.prerequisite))
    }

    pub fn justification_signature(&self) -> Signature {
        formulas_signature(self.defaults.iter().flat_map(|d| &d.justifications))
    }

    pub fn consequent_signature(&self) -> Signature {
        formulas_signature(self.defaults.iter().map(|d| &d.consequent))
    }

    /// `⟨W1 ∪ W2, D1 ∪ D2⟩`.
    pub fn union(&self, other: &DefaultTheory) -> DefaultTheory {
        let mut defaults = self.defaults.clone();
        defaults.extend(other.defaults.iter().cloned());
        DefaultTheory::new(self.facts.union(&other.facts), defaults)
    }

    /// The same defaults over `W ∪ {extra}`.
    pub fn with_fact(&self, extra: Formula) -> DefaultTheory {
        let mut facts = self.facts.clone();
        facts.push(extra);
        DefaultTheory::new(facts, self.defaults.clone())
    }

    /// `W` folded into prerequisite-free defaults `: / w`, followed by `D`.
    pub fn fold_facts(&self) -> Vec<DefaultRule> {
        self.facts
            .formulas()
            .iter()
            .cloned()
            .map(DefaultRule::fact)
            .chain(self.defaults.iter().cloned())
            .collect()
    }
}

impl fmt::Display for DefaultTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("W:\n")?;
        for w in self.facts.formulas() {
            writeln!(f, "{w}")?;
        }
        f.write_str("D:\n")?;
        for d in &self.defaults {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

pub(crate) fn signature_of(defaults: &[DefaultRule]) -> Signature {
    let mut sig = Signature::new();
    for d in defaults {
        sig.extend(d.signature().iter().cloned());
    }
    sig
}

fn formulas_signature<'a>(fs: impl Iterator<Item = &'a Formula>) -> Signature {
    let mut sig = Signature::new();
    for f in fs {
        f.collect_atoms(&mut sig);
    }
    sig
}

/// Parses a file with a `W:` section of formulas and a `D:` section of defaults.
pub fn parse_default_theory(text: &str) -> Result<DefaultTheory> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Facts,
        Defaults,
    }
    let mut section = Section::None;
    let mut facts = Vec::new();
    let mut defaults = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "W:" => section = Section::Facts,
            "D:" => section = Section::Defaults,
            _ => match section {
                Section::Facts => facts.push(parse_at(line, idx + 1)?),
                Section::Defaults => defaults.push(parse_default(line, idx + 1)?),
                Section::None => {
                    return Err(Error::Syntax {
                        line: idx + 1,
                        column: 1,
                        message: "expected a `W:` or `D:` section header".into(),
                    })
                }
            },
        }
    }
    Ok(DefaultTheory::new(Theory::new(facts), defaults))
}

/// One extension, described by its generating defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    /// Indices into `D`, ascending.
    pub generating: Vec<usize>,
    /// `⋀W ∧ ⋀cons(generating)`; `E ⊨ ψ` iff this formula entails `ψ`.
    pub representative: Formula,
    pub inconsistent: bool,
}

impl fmt::Display for ExtensionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cn({})", self.representative)
    }
}

/// Truth tables of every component of a default theory over one signature.
pub(crate) struct Compiled {
    pub sig: Signature,
    w: TruthTable,
    pre: Vec<TruthTable>,
    just: Vec<Vec<TruthTable>>,
    cons: Vec<TruthTable>,
}

impl Compiled {
    /// Compiles over `extra ∪ L(W) ∪ L(D)`, keeping the order of `extra`.
    pub fn new(dt: &DefaultTheory, extra: &Signature, limits: &Limits) -> Result<Compiled> {
        limits.check_defaults(dt.defaults.len())?;
        let sig = extra.union(&dt.signature());
        let w = dt.facts.table(&sig, limits)?;
        let mut pre = Vec::with_capacity(dt.defaults.len());
        let mut just = Vec::with_capacity(dt.defaults.len());
        let mut cons = Vec::with_capacity(dt.defaults.len());
        for d in &dt.defaults {
            pre.push(TruthTable::of(&d.prerequisite, &sig)?);
            just.push(
                d.justifications
                    .iter()
                    .map(|j| TruthTable::of(j, &sig))
                    .collect::<Result<_>>()?,
            );
            cons.push(TruthTable::of(&d.consequent, &sig)?);
        }
        Ok(Compiled {
            sig,
            w,
            pre,
            just,
            cons,
        })
    }

    fn applicable(&self, d: usize, e: &TruthTable) -> bool {
        e.implies(&self.pre[d]) && self.just[d].iter().all(|j| e.intersects(j))
    }

    fn grounded(&self, mask: u64) -> bool {
        let mut applied = 0u64;
        let mut derived = self.w.clone();
        loop {
            let next = (0..self.pre.len()).find(|&d| {
                mask >> d & 1 == 1 && applied >> d & 1 == 0 && derived.implies(&self.pre[d])
            });
            match next {
                Some(d) => {
                    applied |= 1 << d;
                    derived = derived.and(&self.cons[d]);
                }
                None => return applied == mask,
            }
        }
    }

    /// Generating masks with their extension tables, in ascending mask order.
    pub fn extensions(&self) -> Vec<(u64, TruthTable)> {
        let mut out = Vec::new();
        self.search(0, 0, self.w.clone(), &mut out);
        out.sort_by_key(|(m, _)| *m);
        out
    }

    fn search(&self, d: usize, mask: u64, e: TruthTable, out: &mut Vec<(u64, TruthTable)>) {
        if d == self.pre.len() {
            let fixpoint = (0..d).all(|i| self.applicable(i, &e) == (mask >> i & 1 == 1));
            if fixpoint && self.grounded(mask) {
                out.push((mask, e));
            }
            return;
        }
        // Including d only shrinks E further, so a justification already
        // refuted stays refuted.
        let with = e.and(&self.cons[d]);
        if self.just[d].iter().all(|j| with.intersects(j)) {
            self.search(d + 1, mask | 1 << d, with, out);
        }
        self.search(d + 1, mask, e, out);
    }

    pub fn table(&self, f: &Formula) -> Result<TruthTable> {
        TruthTable::of(f, &self.sig)
    }
}

fn mask_indices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn representative(dt: &DefaultTheory, generating: &[usize]) -> Formula {
    Formula::conjoin(
        dt.facts.formulas().iter().cloned().chain(
            generating
                .iter()
                .map(|&i| dt.defaults[i].consequent.clone()),
        ),
    )
}

/// All extensions of `dt`, one per generating set.
pub fn extensions(dt: &DefaultTheory, limits: &Limits) -> Result<Vec<ExtensionDescriptor>> {
    let c = Compiled::new(dt, &Signature::new(), limits)?;
    Ok(c.extensions()
        .into_iter()
        .map(|(mask, table)| {
            let generating = mask_indices(mask, dt.defaults.len());
            ExtensionDescriptor {
                representative: representative(dt, &generating),
                generating,
                inconsistent: table.is_empty(),
            }
        })
        .collect())
}

/// `⋀W ∧ ⋀cons(D′)` is grounded: every default of `D′` can be fired in some
/// order using only prerequisites derived so far.
pub fn is_grounded(facts: &Theory, defaults: &[DefaultRule], limits: &Limits) -> Result<bool> {
    let dt = DefaultTheory::new(facts.clone(), defaults.to_vec());
    let c = Compiled::new(&dt, &Signature::new(), limits)?;
    let all = if defaults.is_empty() {
        0
    } else {
        u64::MAX >> (64 - defaults.len())
    };
    Ok(c.grounded(all))
}

/// True when no generating set is a strict subset of another, so reading
/// "minimal set of generating defaults" as an extra filter changes nothing.
pub fn generating_sets_minimal(dt: &DefaultTheory, limits: &Limits) -> Result<bool> {
    let masks: Vec<u64> = Compiled::new(dt, &Signature::new(), limits)?
        .extensions()
        .into_iter()
        .map(|(m, _)| m)
        .collect();
    Ok(!masks
        .iter()
        .any(|a| masks.iter().any(|b| a != b && a & !b == 0)))
}

/// `W |~_D φ`: every extension entails `φ`. Vacuously true without extensions.
pub fn cautious_entails(dt: &DefaultTheory, phi: &Formula, limits: &Limits) -> Result<bool> {
    let c = Compiled::new(dt, &phi.signature(), limits)?;
    let target = c.table(phi)?;
    Ok(c.extensions().iter().all(|(_, e)| e.implies(&target)))
}

/// `W |~ᵇ_D φ`: some extension entails `φ`.
pub fn brave_entails(dt: &DefaultTheory, phi: &Formula, limits: &Limits) -> Result<bool> {
    let c = Compiled::new(dt, &phi.signature(), limits)?;
    let target = c.table(phi)?;
    Ok(c.extensions().iter().any(|(_, e)| e.implies(&target)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{equivalent, parse_formula};

    const L: Limits = Limits::DEFAULT;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn d(s: &str) -> DefaultRule {
        s.parse().unwrap()
    }

    fn dt(w: &[&str], ds: &[&str]) -> DefaultTheory {
        DefaultTheory::new(
            Theory::new(w.iter().map(|s| f(s)).collect()),
            ds.iter().map(|s| d(s)).collect(),
        )
    }

    fn reps(t: &DefaultTheory) -> Vec<Formula> {
        extensions(t, &L)
            .unwrap()
            .into_iter()
            .map(|e| e.representative)
            .collect()
    }

    #[test]
    fn default_syntax() {
        let r = d("bird : fly / fly");
        assert!(r.is_normal());
        assert_eq!(r.to_string(), "bird : fly / fly");
        let r = d(" : / a -> !b");
        assert_eq!(r.prerequisite, Formula::True);
        assert!(r.justifications.is_empty());
        assert_eq!(r.to_string(), ": / a -> !b");
        assert_eq!(d(": b, !c / c").justifications.len(), 2);
        assert!("a / b".parse::<DefaultRule>().is_err());
        assert!("a : b".parse::<DefaultRule>().is_err());
        assert!("a : b /".parse::<DefaultRule>().is_err());
    }

    #[test]
    fn theory_file() {
        let t = parse_default_theory("# tweety\nW:\nbird\nD:\nbird : fly / fly\n").unwrap();
        assert_eq!(t.facts.formulas(), &[f("bird")]);
        assert_eq!(t.defaults.len(), 1);
        assert_eq!(parse_default_theory(&t.to_string()).unwrap(), t);
        assert!(matches!(
            parse_default_theory("bird"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_default_theory("W:\nD:\n: p /"),
            Err(Error::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn groundedness() {
        let w = Theory::new(vec![f("bird")]);
        assert!(is_grounded(&w, &[d("bird : fly / fly")], &L).unwrap());
        assert!(!is_grounded(&Theory::default(), &[d("p : q / q")], &L).unwrap());
        assert!(is_grounded(&Theory::default(), &[d("a : / b"), d(": / a")], &L).unwrap());
    }

    #[test]
    fn tweety() {
        let t = dt(&["bird"], &["bird : fly / fly"]);
        let r = reps(&t);
        assert_eq!(r.len(), 1);
        assert!(equivalent(&r[0], &f("bird & fly"), &L).unwrap());
        assert!(cautious_entails(&t, &f("fly"), &L).unwrap());
    }

    #[test]
    fn two_extension_theory() {
        let t = dt(&[], &[": b / b", ": !b / !b", "b : c / c", "!b : c / c"]);
        let r = reps(&t);
        assert_eq!(r.len(), 2);
        assert!(r.iter().any(|e| equivalent(e, &f("b & c"), &L).unwrap()));
        assert!(r.iter().any(|e| equivalent(e, &f("!b & c"), &L).unwrap()));
        assert!(cautious_entails(&t, &f("c"), &L).unwrap());
        assert!(!cautious_entails(&t, &f("b"), &L).unwrap());
        assert!(brave_entails(&t, &f("b"), &L).unwrap());
    }

    #[test]
    fn self_defeating_default_has_no_extension() {
        let t = dt(&[], &[": !p / p"]);
        assert!(reps(&t).is_empty());
        assert!(cautious_entails(&t, &f("false"), &L).unwrap());
        assert!(!brave_entails(&t, &f("true"), &L).unwrap());
    }

    #[test]
    fn single_normal_default() {
        let t = dt(&[], &[": p / p"]);
        assert!(!brave_entails(&t, &f("!p"), &L).unwrap());
        assert!(brave_entails(&t, &f("p"), &L).unwrap());
    }

    #[test]
    fn inconsistent_facts_give_one_inconsistent_extension() {
        let t = dt(&["p", "!p"], &[": q / q", ": / r"]);
        let ex = extensions(&t, &L).unwrap();
        assert_eq!(ex.len(), 1);
        assert!(ex[0].inconsistent);
        assert_eq!(ex[0].generating, vec![1]);
    }

    #[test]
    fn justification_free_defaults_can_clash() {
        let ex = extensions(&dt(&[], &[": / p", ": / !p"]), &L).unwrap();
        assert_eq!(ex.len(), 1);
        assert!(ex[0].inconsistent);
    }

    #[test]
    fn ungrounded_self_support_is_rejected() {
        // {p : / p} would be a fixpoint of the applicability test alone.
        let t = dt(&[], &["p : / p"]);
        let ex = extensions(&t, &L).unwrap();
        assert_eq!(ex.len(), 1);
        assert!(ex[0].generating.is_empty());
    }

    #[test]
    fn caps() {
        let many: Vec<String> = (0..15).map(|i| format!(": / x{i}")).collect();
        let refs: Vec<&str> = many.iter().map(|s| s.as_str()).collect();
        assert!(matches!(
            extensions(&dt(&[], &refs), &L),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn minimality_reading() {
        let t = dt(&[], &[": b / b", ": !b / !b", "b : c / c", "!b : c / c"]);
        assert!(generating_sets_minimal(&t, &L).unwrap());
    }
}
