//! Fixed counterexamples with their documented outcomes. Hard-coded, never generated.

use serde::{Deserialize, Serialize};

use crate::circumscription::{circ_entails, CircProblem};
use crate::default_logic::{
    brave_entails, cautious_chain, cautious_entails, parse_default_theory, DefaultTheory,
};
use crate::error::Result;
use crate::limits::Limits;
use crate::logic::{is_valid, parse_formula, restrict_consequences, Signature, Theory};

/// One expected fact about a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub claim: String,
    pub expected: bool,
    pub observed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCase {
    pub name: String,
    pub expectations: Vec<Expectation>,
}

impl GoldenCase {
    fn new(name: &str) -> GoldenCase {
        GoldenCase {
            name: name.into(),
            expectations: Vec::new(),
        }
    }

    fn expect(mut self, claim: &str, expected: bool, observed: bool) -> Self {
        self.expectations.push(Expectation {
            claim: claim.into(),
            expected,
            observed,
        });
        self
    }

    pub fn confirmed(&self) -> bool {
        self.expectations.iter().all(|e| e.expected == e.observed)
    }
}

/// `T = {¬P → Q}` minimizing `P`, varying `Q`: forgetting down to `L(Q)` loses
/// the entailment of `Q`; keeping `P` as well restores it.
pub fn circ_counterexample(limits: &Limits) -> Result<GoldenCase> {
    let t = Theory::new(vec![parse_formula("!P -> Q")?]);
    let q = parse_formula("Q")?;
    let cp = CircProblem::new(t.clone(), Signature::of(&["P"]), Signature::of(&["Q"]))?;
    let narrow = restrict_consequences(&t, &Signature::of(&["Q"]), limits)?;
    let wide = restrict_consequences(&t, &Signature::of(&["Q", "P"]), limits)?;
    let circ_of = |g| cp.with_theory(Theory::new(vec![g]));
    Ok(GoldenCase::new("circ: forgetting the minimized atom")
        .expect(
            "Circ[T;P;Q] entails Q",
            true,
            circ_entails(&cp, &q, limits)?,
        )
        .expect(
            "T restricted to L(Q) is a tautology",
            true,
            is_valid(&narrow, limits)?,
        )
        .expect(
            "Circ[that restriction;P;Q] entails Q",
            false,
            circ_entails(&circ_of(narrow), &q, limits)?,
        )
        .expect(
            "Circ[T restricted to L(Q) ∪ P;P;Q] entails Q",
            true,
            circ_entails(&circ_of(wide), &q, limits)?,
        ))
}

fn dt(text: &str) -> Result<DefaultTheory> {
    parse_default_theory(text)
}

/// `D1 = {:b/b, :¬b/¬b}`, `D2 = {b:c/c, ¬b:c/c}`: the union cautiously
/// entails `c`, yet no non-tautological formula over the shared `{b}` carries
/// the entailment cautiously from `D1` to `D2`.
pub fn two_extension_counterexample(limits: &Limits) -> Result<GoldenCase> {
    let d1 = dt("D:\n: b / b\n: !b / !b\n")?;
    let d2 = dt("D:\nb : c / c\n!b : c / c\n")?;
    let c = parse_formula("c")?;
    let combined = d1.union(&d2);
    let chain = cautious_chain(&d1, &d2, &c, limits)?;
    let mut nontrivial = false;
    for g in &chain.witnesses {
        nontrivial |= !is_valid(g, limits)?;
    }
    let exts = crate::default_logic::extensions(&combined, limits)?;
    let bc = parse_formula("b & c")?;
    let nbc = parse_formula("!b & c")?;
    let mut shapes = (false, false);
    for e in &exts {
        shapes.0 |= crate::logic::equivalent(&e.representative, &bc, limits)?;
        shapes.1 |= crate::logic::equivalent(&e.representative, &nbc, limits)?;
    }
    Ok(
        GoldenCase::new("dl: two extensions, no cautious interpolant")
            .expect(
                "the union has exactly two extensions, b ∧ c and ¬b ∧ c",
                true,
                exts.len() == 2 && shapes.0 && shapes.1,
            )
            .expect(
                "the union cautiously entails c",
                true,
                cautious_entails(&combined, &c, limits)?,
            )
            .expect(
                "some non-tautological shared γ links D1 and D2 cautiously",
                false,
                nontrivial,
            ),
    )
}

/// `d1 = :/(a → ¬b)`, `d2 = :b/c`, `W2 = {a}`: `⟨W2, {d2}⟩` alone reaches `c`,
/// the union has no extension containing `c`.
pub fn reverse_counterexample(limits: &Limits) -> Result<GoldenCase> {
    let t1 = dt("D:\n: / a -> !b\n")?;
    let t2 = dt("W:\na\nD:\n: b / c\n")?;
    let c = parse_formula("c")?;
    Ok(
        GoldenCase::new("dl: reverse direction without disjointness")
            .expect(
                "⟨{a}, {:b/c}⟩ bravely entails c",
                true,
                brave_entails(&t2, &c, limits)?,
            )
            .expect(
                "the union has an extension entailing c",
                false,
                brave_entails(&t1.union(&t2), &c, limits)?,
            ),
    )
}

pub fn golden(limits: &Limits) -> Result<Vec<GoldenCase>> {
    Ok(vec![
        circ_counterexample(limits)?,
        two_extension_counterexample(limits)?,
        reverse_counterexample(limits)?,
    ])
}
