use serde::{Deserialize, Serialize};

use super::answer::QueryFrame;
use super::{answer_sets, lp_brave, rename_table, translate_disjunctive_to_default, Program};
use crate::default_logic::{all_formulas, brave_entails, EXHAUSTIVE_ATOMS};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{implies, restrict_consequences, Formula, Signature, Theory};
use crate::report::TheoremReport;

/// How `head(P2) ∩ body(P1) = ∅` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Disjointness {
    /// No atom of a head of `P2` occurs in a body of `P1`, whatever the sign.
    #[default]
    Atoms,
    /// No head literal of `P2` occurs, with the same sign, in a body of `P1`.
    Literals,
}

impl std::str::FromStr for Disjointness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Disjointness> {
        match s {
            "atoms" => Ok(Disjointness::Atoms),
            "literals" => Ok(Disjointness::Literals),
            other => Err(Error::Config(format!(
                "unknown disjointness mode `{other}`"
            ))),
        }
    }
}

/// Whether a head of `p2` meets a body of `p1` under `mode`.
pub fn heads_meet_bodies(p1: &Program, p2: &Program, mode: Disjointness) -> bool {
    let heads = p2.head_literals();
    let bodies = p1.body_literals();
    match mode {
        Disjointness::Literals => !heads.is_disjoint(&bodies),
        Disjointness::Atoms => heads
            .iter()
            .any(|h| bodies.iter().any(|b| b.atom == h.atom)),
    }
}

struct Cautious {
    gamma: Formula,
    query: Formula,
    frame: QueryFrame,
    holds_everywhere: bool,
}

fn cautious_parts(p: &Program, phi: &Formula, limits: &Limits) -> Result<Cautious> {
    let frame = QueryFrame::new(p)?;
    let query = frame.query(phi);
    let sets = answer_sets(p, limits)?;
    let mut holds_everywhere = true;
    for x in &sets {
        holds_everywhere &= frame.satisfies(x, &query, limits)?;
    }
    let lambda = Formula::disjoin(sets.iter().map(|x| frame.characteristic(x)));
    let keep = frame.vocabulary().intersection(&query.signature());
    let gamma = restrict_consequences(
        &Theory::with_signature(vec![lambda], &frame.vocabulary()),
        &keep,
        limits,
    )?;
    Ok(Cautious {
        gamma,
        query,
        frame,
        holds_everywhere,
    })
}

/// `γ` over `L(P) ∩ L(φ)` with `P |~ γ` and `γ ⊨ φ`: the disjunction of the
/// answer sets' characteristic formulas with every atom outside `L(φ)` forgotten.
///
/// For programs with classical negation, `γ` is stated over the renamed
/// vocabulary (`a_neg` for `-a`).
pub fn lp_interpolant_cautious(p: &Program, phi: &Formula, limits: &Limits) -> Result<Formula> {
    let c = cautious_parts(p, phi, limits)?;
    if !c.holds_everywhere {
        return Err(Error::Precondition(format!(
            "`{phi}` does not hold in every answer set"
        )));
    }
    Ok(c.gamma)
}

pub fn check_lp_cautious(p: &Program, phi: &Formula, limits: &Limits) -> Result<TheoremReport> {
    let c = cautious_parts(p, phi, limits)?;
    let sets = answer_sets(p, limits)?;
    let mut program_gamma = true;
    for x in &sets {
        program_gamma &= c.frame.satisfies(x, &c.gamma, limits)?;
    }
    let shared = c.frame.vocabulary().intersection(&c.query.signature());
    Ok(TheoremReport::new("lp-cautious")
        .antecedent(c.holds_everywhere)
        .extensions(sets.len())
        .relation("program_cautious_gamma", program_gamma)
        .relation("gamma_entails_phi", implies(&c.gamma, &c.query, limits)?)
        .invariant("gamma_vocabulary", c.gamma.signature().is_subset(&shared))
        .witness("gamma", &c.gamma)
        .finish())
}

/// Both programs renamed with one table, so `a_neg` means the same in each.
struct BravePair {
    p1: Program,
    renamed2: Program,
    /// Evaluates answer sets of `P1` over the renamed vocabulary.
    frame: QueryFrame,
    query: Formula,
    shared: Signature,
    /// `⋁ (a ∧ a_neg)`: an extension containing both stands for `Lit`.
    clash: Formula,
}

fn brave_pair(p1: &Program, p2: &Program, phi: &Formula) -> Result<BravePair> {
    let table = rename_table(&p1.union(p2))?;
    let (r1, r2) = (table.apply(p1), table.apply(p2));
    let shared = r1.atoms().intersection(&r2.atoms());
    let clash = Formula::disjoin(
        table
            .pairs()
            .iter()
            .map(|(a, fresh)| Formula::Atom(a.clone()).and(Formula::Atom(fresh.clone()))),
    );
    Ok(BravePair {
        query: table.rewrite(phi),
        frame: QueryFrame {
            atoms: p1.atoms(),
            renames: table,
        },
        p1: p1.clone(),
        renamed2: r2,
        shared,
        clash,
    })
}

impl BravePair {
    /// `φ` must lie in `L(P2)` after `!a` is read as `a_neg`.
    fn side_conditions(
        &self,
        p1: &Program,
        p2: &Program,
        mode: Disjointness,
    ) -> Option<&'static str> {
        if heads_meet_bodies(p1, p2, mode) {
            return Some("head(P2) meets body(P1)");
        }
        if !self.query.signature().is_subset(&self.renamed2.atoms()) {
            return Some("query outside L(P2)");
        }
        None
    }

    fn p1_brave(&self, gamma: &Formula, limits: &Limits) -> Result<bool> {
        for x in answer_sets(&self.p1, limits)? {
            if self.frame.satisfies(&x, gamma, limits)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `W = {γ}` added to the disjunctive translation of the renamed `P2`.
    fn p2_brave(&self, gamma: &Formula, limits: &Limits) -> Result<bool> {
        let dt = translate_disjunctive_to_default(&self.renamed2)?.with_fact(gamma.clone());
        brave_entails(&dt, &self.query.clone().or(self.clash.clone()), limits)
    }

    /// Per answer set `X` of `P1`: `X` restricted to the shared atoms, and a
    /// weaker form that leaves false head atoms of `P2` open.
    fn candidates(&self, limits: &Limits) -> Result<Vec<Formula>> {
        let heads2: Signature = self
            .renamed2
            .head_literals()
            .into_iter()
            .map(|l| l.atom)
            .collect();
        let mut out = Vec::new();
        for x in answer_sets(&self.p1, limits)? {
            let chi = self.frame.characteristic(&x);
            out.push(restrict_consequences(
                &Theory::with_signature(vec![chi.clone()], &self.frame.vocabulary()),
                &self.shared,
                limits,
            )?);
            if !x.is_consistent() {
                continue;
            }
            let mut open = Vec::new();
            for a in self.shared.iter() {
                let atom = Formula::Atom(a.clone());
                if implies(&chi, &atom, limits)? {
                    open.push(atom);
                } else if !heads2.contains(a) {
                    open.push(atom.not());
                }
            }
            out.push(Formula::conjoin(open));
        }
        Ok(out)
    }

    fn search(&self, limits: &Limits) -> Result<(Option<Formula>, &'static str)> {
        for gamma in self.candidates(limits)? {
            if self.p2_brave(&gamma, limits)? {
                return Ok((Some(gamma), "answer-set-restrictions"));
            }
        }
        if self.shared.len() > EXHAUSTIVE_ATOMS {
            return Ok((None, "answer-set-restrictions"));
        }
        for gamma in all_formulas(&self.shared) {
            if self.p1_brave(&gamma, limits)? && self.p2_brave(&gamma, limits)? {
                return Ok((Some(gamma), "exhaustive"));
            }
        }
        Ok((None, "exhaustive"))
    }
}

/// Why `(P1, P2, φ)` falls outside the brave theorem, if it does.
pub fn lp_brave_side_conditions(
    p1: &Program,
    p2: &Program,
    phi: &Formula,
    mode: Disjointness,
) -> Result<Option<&'static str>> {
    Ok(brave_pair(p1, p2, phi)?.side_conditions(p1, p2, mode))
}

/// `γ` over `L(P1) ∩ L(P2)` with `P1 |~ᵇ γ` and `γ ∪ P2 |~ᵇ φ`, the latter read
/// through the disjunctive default translation of `P2` with `γ` as a fact.
///
/// With classical negation both programs are renamed by one table, `γ` is
/// stated over the renamed vocabulary, and an extension holding `a` and
/// `a_neg` counts as inconsistent.
pub fn lp_interpolant_brave(
    p1: &Program,
    p2: &Program,
    phi: &Formula,
    mode: Disjointness,
    limits: &Limits,
) -> Result<Formula> {
    let pair = brave_pair(p1, p2, phi)?;
    if let Some(why) = pair.side_conditions(p1, p2, mode) {
        return Err(Error::SideCondition(why.into()));
    }
    if !lp_brave(&p1.union(p2), phi, limits)? {
        return Err(Error::Precondition(format!(
            "`{phi}` holds in no answer set of P1 ∪ P2"
        )));
    }
    pair.search(limits)?
        .0
        .ok_or_else(|| Error::Precondition(format!("no shared-language interpolant for `{phi}`")))
}

pub fn check_lp_brave(
    p1: &Program,
    p2: &Program,
    phi: &Formula,
    mode: Disjointness,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "lp-brave";
    let pair = brave_pair(p1, p2, phi)?;
    if let Some(why) = pair.side_conditions(p1, p2, mode) {
        return Ok(TheoremReport::skipped(NAME, why));
    }
    if !lp_brave(&p1.union(p2), phi, limits)? {
        return Ok(TheoremReport::new(NAME).antecedent(false).finish());
    }
    let (found, search) = pair.search(limits)?;
    let mut r = TheoremReport::new(NAME)
        .relation("interpolant_found", found.is_some())
        .witness("search", search);
    if let Some(gamma) = found {
        r = r
            .relation("p1_brave_gamma", pair.p1_brave(&gamma, limits)?)
            .relation("gamma_p2_brave_phi", pair.p2_brave(&gamma, limits)?)
            .invariant(
                "gamma_vocabulary",
                gamma.signature().is_subset(&pair.shared),
            )
            .witness("gamma", gamma);
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{equivalent, parse_formula};
    use crate::report::Verdict;

    const L: Limits = Limits::DEFAULT;

    fn prog(s: &str) -> Program {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    const TWO: &str = "a :- not b.\nb :- not a.\nc :- a.\nc :- b.";

    #[test]
    fn cautious_interpolants() {
        let g = lp_interpolant_cautious(&prog(TWO), &f("c | d"), &L).unwrap();
        assert!(equivalent(&g, &f("c"), &L).unwrap());
        let g = lp_interpolant_cautious(&prog(TWO), &f("a | !a"), &L).unwrap();
        assert!(equivalent(&g, &Formula::True, &L).unwrap());
        let g = lp_interpolant_cautious(&prog("a."), &f("a"), &L).unwrap();
        assert!(equivalent(&g, &f("a"), &L).unwrap());
        assert!(matches!(
            lp_interpolant_cautious(&prog(TWO), &f("a"), &L),
            Err(Error::Precondition(_))
        ));
        let r = check_lp_cautious(&prog(TWO), &f("c | d"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.extension_count, Some(2));
        assert_eq!(
            check_lp_cautious(&prog(TWO), &f("a"), &L).unwrap().verdict,
            Verdict::Vacuous
        );
    }

    #[test]
    fn cautious_with_classical_negation() {
        let p = prog("-a :- not a.\nb :- -a.");
        let g = lp_interpolant_cautious(&p, &f("!a & b"), &L).unwrap();
        assert!(equivalent(&g, &f("a_neg & b"), &L).unwrap());
        assert_eq!(
            check_lp_cautious(&p, &f("!a"), &L).unwrap().verdict,
            Verdict::Pass
        );
    }

    #[test]
    fn brave_interpolants() {
        let g = lp_interpolant_brave(
            &prog("a :- not b."),
            &prog("c :- a."),
            &f("c"),
            Disjointness::Atoms,
            &L,
        )
        .unwrap();
        assert!(equivalent(&g, &f("a"), &L).unwrap());

        let g = lp_interpolant_brave(&prog("x."), &prog("c."), &f("c"), Disjointness::Atoms, &L)
            .unwrap();
        assert!(equivalent(&g, &Formula::True, &L).unwrap());

        let r = check_lp_brave(
            &prog("a | b."),
            &prog("c :- a.\nd :- b."),
            &f("d"),
            Disjointness::Atoms,
            &L,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }

    #[test]
    fn brave_side_conditions() {
        let p1 = prog("a :- not c.");
        let p2 = prog("c.");
        assert_eq!(
            check_lp_brave(&p1, &p2, &f("c"), Disjointness::Atoms, &L)
                .unwrap()
                .verdict,
            Verdict::Skipped
        );
        // `-c` in a head of P2 and `c` in a body of P1 differ only as literals.
        let p1 = prog("a :- not c.");
        let p2 = prog("-c.\nb :- a.");
        assert_eq!(
            check_lp_brave(&p1, &p2, &f("b"), Disjointness::Atoms, &L)
                .unwrap()
                .verdict,
            Verdict::Skipped
        );
        let r = check_lp_brave(&p1, &p2, &f("b"), Disjointness::Literals, &L).unwrap();
        assert_ne!(r.verdict, Verdict::Skipped);
        assert!(matches!(
            lp_interpolant_brave(
                &prog("a."),
                &prog("c :- a."),
                &f("z"),
                Disjointness::Atoms,
                &L
            ),
            Err(Error::SideCondition(_))
        ));
        assert_eq!(
            "literals".parse::<Disjointness>().unwrap(),
            Disjointness::Literals
        );
    }
}
