use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Literal, Program, RenameTable, Rule};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{implies, Atom, Formula, Signature};

/// A set of literals that is either consistent or the set of all literals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LiteralSet {
    Consistent(BTreeSet<Literal>),
    /// `Lit`: every literal, the only logically closed inconsistent set.
    All,
}

impl LiteralSet {
    /// Collapses an inconsistent collection to `All`.
    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> LiteralSet {
        let set: BTreeSet<Literal> = lits.into_iter().collect();
        if set.iter().any(|l| set.contains(&l.complement())) {
            LiteralSet::All
        } else {
            LiteralSet::Consistent(set)
        }
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        match self {
            LiteralSet::Consistent(s) => s.contains(lit),
            LiteralSet::All => true,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, LiteralSet::Consistent(_))
    }

    /// Atoms occurring positively; every atom of `universe` for `All`.
    pub fn true_atoms(&self, universe: &Signature) -> BTreeSet<Atom> {
        match self {
            LiteralSet::Consistent(s) => s
                .iter()
                .filter(|l| l.positive)
                .map(|l| l.atom.clone())
                .collect(),
            LiteralSet::All => universe.iter().cloned().collect(),
        }
    }
}

impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiteralSet::Consistent(s) => {
                let parts: Vec<String> = s.iter().map(|l| l.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            LiteralSet::All => f.write_str("Lit"),
        }
    }
}

/// `P^X`: drop rules whose `not`-literals meet `X`, strip the rest.
pub fn reduct(p: &Program, x: &LiteralSet) -> Program {
    Program::new(
        p.rules
            .iter()
            .filter(|r| !r.neg.iter().any(|l| x.contains(l)))
            .map(|r| Rule::new(r.head.clone(), r.pos.clone(), Vec::new()))
            .collect(),
    )
}

/// Rules as literal bitmasks: bit `2i` is atom `i`, bit `2i+1` its negation.
struct Encoded {
    atoms: Signature,
    rules: Vec<(u64, u64, u64)>,
}

impl Encoded {
    fn new(p: &Program, limits: &Limits) -> Result<Encoded> {
        let atoms = p.atoms();
        limits.check_program_atoms(atoms.len())?;
        let bit = |l: &Literal| {
            let i = atoms
                .index_of(&l.atom)
                .expect("atom collected from the program");
            1u64 << (2 * i + usize::from(!l.positive))
        };
        let mask = |ls: &[Literal]| ls.iter().fold(0, |m, l| m | bit(l));
        let rules = p
            .rules
            .iter()
            .map(|r| (mask(&r.head), mask(&r.pos), mask(&r.neg)))
            .collect();
        Ok(Encoded { atoms, rules })
    }

    /// Every consistent literal mask, each atom true, false or unknown.
    fn consistent_sets(&self) -> impl Iterator<Item = u64> {
        let n = self.atoms.len() as u32;
        (0..3u64.pow(n)).map(move |mut code| {
            let mut mask = 0;
            for i in 0..n {
                match code % 3 {
                    1 => mask |= 1 << (2 * i),
                    2 => mask |= 1 << (2 * i + 1),
                    _ => {}
                }
                code /= 3;
            }
            mask
        })
    }

    /// Rules of the reduct by `x` (`None` = `Lit`), as (head, pos).
    fn reduct(&self, x: Option<u64>) -> Vec<(u64, u64)> {
        self.rules
            .iter()
            .filter(|(_, _, neg)| match x {
                Some(x) => neg & x == 0,
                None => *neg == 0,
            })
            .map(|&(h, p, _)| (h, p))
            .collect()
    }

    fn decode(&self, mask: u64) -> LiteralSet {
        let lits = self.atoms.iter().enumerate().flat_map(|(i, a)| {
            [(2 * i, true), (2 * i + 1, false)]
                .into_iter()
                .filter(move |(b, _)| mask >> b & 1 == 1)
                .map(move |(_, positive)| Literal {
                    atom: a.clone(),
                    positive,
                })
        });
        LiteralSet::Consistent(lits.collect())
    }

    fn encode(&self, set: &LiteralSet) -> Option<u64> {
        match set {
            LiteralSet::All => None,
            LiteralSet::Consistent(s) => {
                Some(s.iter().fold(0, |m, l| match self.atoms.index_of(&l.atom) {
                    Some(i) => m | 1 << (2 * i + usize::from(!l.positive)),
                    None => m,
                }))
            }
        }
    }
}

fn closed(rules: &[(u64, u64)], y: u64) -> bool {
    rules.iter().all(|&(h, p)| p & !y != 0 || h & y != 0)
}

/// `x` is a minimal consistent set closed under `rules`.
fn minimal_closed(rules: &[(u64, u64)], x: u64) -> bool {
    if !closed(rules, x) {
        return false;
    }
    // proper submasks of x, largest first
    let mut sub = x;
    while sub != 0 {
        sub = (sub - 1) & x;
        if closed(rules, sub) {
            return false;
        }
    }
    true
}

fn some_consistent_closed(enc: &Encoded, rules: &[(u64, u64)]) -> bool {
    enc.consistent_sets().any(|y| closed(rules, y))
}

/// Answer sets of a positive program: the minimal closed consistent sets,
/// or `Lit` alone when there are none.
pub fn answer_sets_positive(p: &Program, limits: &Limits) -> Result<Vec<LiteralSet>> {
    if !p.is_positive() {
        return Err(Error::Precondition(
            "program uses negation as failure".into(),
        ));
    }
    let enc = Encoded::new(p, limits)?;
    let rules = enc.reduct(Some(0));
    let out: Vec<LiteralSet> = enc
        .consistent_sets()
        .filter(|&x| minimal_closed(&rules, x))
        .map(|x| enc.decode(x))
        .collect();
    Ok(if out.is_empty() {
        vec![LiteralSet::All]
    } else {
        out
    })
}

/// Whether `x` is an answer set of `p`.
pub fn is_answer_set(p: &Program, x: &LiteralSet, limits: &Limits) -> Result<bool> {
    let enc = Encoded::new(p, limits)?;
    Ok(match enc.encode(x) {
        Some(mask) => {
            // literals outside the program can never be derived
            x.is_consistent()
                && enc.decode(mask) == *x
                && minimal_closed(&enc.reduct(Some(mask)), mask)
        }
        None => !some_consistent_closed(&enc, &enc.reduct(None)),
    })
}

/// All answer sets, consistent ones first in enumeration order, then `Lit`.
pub fn answer_sets(p: &Program, limits: &Limits) -> Result<Vec<LiteralSet>> {
    let enc = Encoded::new(p, limits)?;
    let mut out: Vec<LiteralSet> = enc
        .consistent_sets()
        .filter(|&x| minimal_closed(&enc.reduct(Some(x)), x))
        .map(|x| enc.decode(x))
        .collect();
    if !some_consistent_closed(&enc, &enc.reduct(None)) {
        out.push(LiteralSet::All);
    }
    Ok(out)
}

/// `Lit` together with every literal over `atoms`, for display.
pub fn all_literals(atoms: &Signature) -> BTreeSet<Literal> {
    atoms
        .iter()
        .flat_map(|a| [Literal::pos(a.clone()), Literal::neg(a.clone())])
        .collect()
}

/// How formulas are read against answer sets of one program.
///
/// An atom `a` is true iff `a ∈ X`; for classically negated atoms the fresh
/// atom `a_neg` is true iff `-a ∈ X`, and `!a` in a query is read as `a_neg`.
/// `Lit` entails everything.
pub(crate) struct QueryFrame {
    pub atoms: Signature,
    pub renames: RenameTable,
}

impl QueryFrame {
    pub fn new(p: &Program) -> Result<QueryFrame> {
        Ok(QueryFrame {
            atoms: p.atoms(),
            renames: super::rename_table(p)?,
        })
    }

    pub fn query(&self, phi: &Formula) -> Formula {
        self.renames.rewrite(phi)
    }

    /// Atoms a rewritten query may use.
    pub fn vocabulary(&self) -> Signature {
        self.atoms.union(&self.renames.fresh_atoms())
    }

    pub fn characteristic(&self, x: &LiteralSet) -> Formula {
        if !x.is_consistent() {
            return Formula::False;
        }
        let lit = |a: &Atom, on: bool| {
            let f = Formula::Atom(a.clone());
            if on {
                f
            } else {
                f.not()
            }
        };
        Formula::conjoin(
            self.atoms
                .iter()
                .map(|a| lit(a, x.contains(&Literal::pos(a.clone()))))
                .chain(
                    self.renames
                        .pairs()
                        .iter()
                        .map(|(a, fresh)| lit(fresh, x.contains(&Literal::neg(a.clone())))),
                ),
        )
    }

    /// `X ⊨ φ` for an already rewritten `φ`.
    pub fn satisfies(&self, x: &LiteralSet, rewritten: &Formula, limits: &Limits) -> Result<bool> {
        implies(&self.characteristic(x), rewritten, limits)
    }
}

/// `φ` holds in every answer set (vacuously true without any).
pub fn lp_cautious(p: &Program, phi: &Formula, limits: &Limits) -> Result<bool> {
    let frame = QueryFrame::new(p)?;
    let q = frame.query(phi);
    for x in answer_sets(p, limits)? {
        if !frame.satisfies(&x, &q, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `φ` holds in some answer set.
pub fn lp_brave(p: &Program, phi: &Formula, limits: &Limits) -> Result<bool> {
    let frame = QueryFrame::new(p)?;
    let q = frame.query(phi);
    for x in answer_sets(p, limits)? {
        if frame.satisfies(&x, &q, limits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    const L: Limits = Limits::DEFAULT;

    fn prog(s: &str) -> Program {
        s.parse().unwrap()
    }

    fn lits(s: &[&str]) -> LiteralSet {
        LiteralSet::from_literals(s.iter().map(|l| l.parse::<Literal>().unwrap()))
    }

    fn shown(sets: &[LiteralSet]) -> Vec<String> {
        sets.iter().map(|s| s.to_string()).collect()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn reduct_examples() {
        assert_eq!(reduct(&prog("a :- not b."), &lits(&["a"])), prog("a."));
        assert_eq!(
            reduct(&prog("a :- not a."), &lits(&["a"])),
            Program::default()
        );
        assert_eq!(
            reduct(&prog("a | b :- c, not d."), &lits(&["b"])),
            prog("a | b :- c.")
        );
        assert_eq!(
            reduct(&prog("a :- not b.\nc."), &LiteralSet::All),
            prog("c.")
        );
    }

    #[test]
    fn positive_programs() {
        assert_eq!(
            shown(&answer_sets_positive(&prog("a."), &L).unwrap()),
            ["{a}"]
        );
        assert_eq!(
            shown(&answer_sets_positive(&prog("a | b."), &L).unwrap()),
            ["{a}", "{b}"]
        );
        assert_eq!(
            answer_sets_positive(&prog("a.\n-a."), &L).unwrap(),
            vec![LiteralSet::All]
        );
        assert!(answer_sets_positive(&prog("a :- not b."), &L).is_err());
    }

    #[test]
    fn general_programs() {
        assert_eq!(
            shown(&answer_sets(&prog("a :- not b.\nb :- not a."), &L).unwrap()),
            ["{a}", "{b}"]
        );
        assert!(answer_sets(&prog("a :- not a."), &L).unwrap().is_empty());
        assert_eq!(shown(&answer_sets(&prog("a."), &L).unwrap()), ["{a}"]);
        assert_eq!(
            answer_sets(&prog("a.\n-a.\nb :- not c."), &L).unwrap(),
            vec![LiteralSet::All]
        );
        assert_eq!(
            shown(&answer_sets(&prog("-a :- not a."), &L).unwrap()),
            ["{-a}"]
        );
    }

    #[test]
    fn answer_set_membership() {
        let p = prog("a :- not b.\nb :- not a.");
        assert!(is_answer_set(&p, &lits(&["a"]), &L).unwrap());
        assert!(!is_answer_set(&p, &lits(&["a", "b"]), &L).unwrap());
        assert!(!is_answer_set(&p, &lits(&["a", "z"]), &L).unwrap());
        assert!(!is_answer_set(&p, &LiteralSet::All, &L).unwrap());
        assert!(is_answer_set(&prog("a.\n-a."), &LiteralSet::All, &L).unwrap());
    }

    #[test]
    fn queries() {
        let p = prog("a :- not b.\nb :- not a.\nc :- a.\nc :- b.");
        assert!(lp_cautious(&p, &f("c"), &L).unwrap());
        assert!(!lp_cautious(&p, &f("a"), &L).unwrap());
        assert!(lp_brave(&p, &f("a"), &L).unwrap());
        assert!(lp_brave(&p, &f("a & !b"), &L).unwrap());

        let empty = Program::default();
        assert!(lp_cautious(&empty, &f("true"), &L).unwrap());
        assert!(!lp_cautious(&empty, &f("a"), &L).unwrap());

        let none = prog("a :- not a.");
        assert!(lp_cautious(&none, &f("false"), &L).unwrap());
        assert!(!lp_brave(&none, &f("true"), &L).unwrap());
    }

    #[test]
    fn classical_negation_in_queries() {
        let p = prog("-a :- not a.\nb :- -a.");
        assert!(lp_cautious(&p, &f("!a & b"), &L).unwrap());
        // atoms outside the program are unconstrained, as in the extension reading
        assert!(!lp_cautious(&prog("b."), &f("!a"), &L).unwrap());
        assert!(lp_cautious(&prog("b :- not a."), &f("!a"), &L).unwrap());
        let p = prog("a.\n-a.");
        assert!(lp_cautious(&p, &f("false"), &L).unwrap());
    }

    #[test]
    fn cap() {
        let src: String = (0..11).map(|i| format!("x{i}.\n")).collect();
        assert!(matches!(
            answer_sets(&prog(&src), &L),
            Err(Error::CapExceeded { .. })
        ));
    }
}
