use serde::{Deserialize, Serialize};

use super::{brave_entails, cautious_entails, extensions, DefaultTheory};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{
    entails, implies, restrict_consequences, Formula, Signature, Theory, TruthTable,
};
use crate::report::TheoremReport;

/// Which of the two cautious interpolation statements to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CautiousVariant {
    /// `γ1` over `L(W) ∩ L(D ∪ {φ})`, `γ2` over `L(W ∪ D) ∩ L(φ)`.
    One,
    /// Both over `L(W) ∩ L(D)`.
    Two,
}

pub struct CautiousInterpolants {
    pub gamma1: Formula,
    pub gamma2: Formula,
    pub report: TheoremReport,
}

/// `Λ`: the disjunction of all extension representatives (`False` if none).
fn extension_disjunction(dt: &DefaultTheory, limits: &Limits) -> Result<(Formula, usize)> {
    let ex = extensions(dt, limits)?;
    let n = ex.len();
    Ok((
        Formula::disjoin(ex.into_iter().map(|e| e.representative)),
        n,
    ))
}

fn from_facts(gamma: &Formula, dt: &DefaultTheory) -> DefaultTheory {
    DefaultTheory::new(Theory::new(vec![gamma.clone()]), dt.defaults.clone())
}

fn build_cautious(
    dt: &DefaultTheory,
    phi: &Formula,
    variant: CautiousVariant,
    limits: &Limits,
) -> Result<CautiousInterpolants> {
    let lw = dt.facts.signature();
    let ld = dt.default_signature();
    let lphi = phi.signature();
    let antecedent = cautious_entails(dt, phi, limits)?;
    let (lambda, count) = extension_disjunction(dt, limits)?;
    let lambda_theory = Theory::new(vec![lambda.clone()]);

    let (name, keep1, keep2) = match variant {
        CautiousVariant::One => ("dl-cautious-1", ld.union(&lphi), lphi.clone()),
        CautiousVariant::Two => ("dl-cautious-2", ld.clone(), lw.intersection(&ld)),
    };
    let gamma1 = restrict_consequences(&dt.facts, &keep1, limits)?;
    let gamma2 = restrict_consequences(&lambda_theory, &keep2, limits)?;
    let from_gamma1 = from_facts(&gamma1, dt);
    let lwd = dt.signature();

    let mut r = TheoremReport::new(name)
        .antecedent(antecedent)
        .extensions(count)
        .relation("w_entails_gamma1", entails(&dt.facts, &gamma1, limits)?)
        .relation(
            "gamma1_cautious_gamma2",
            cautious_entails(&from_gamma1, &gamma2, limits)?,
        );
    r = match variant {
        CautiousVariant::One => r
            .relation("gamma2_entails_phi", implies(&gamma2, phi, limits)?)
            .relation("w_cautious_gamma2", cautious_entails(dt, &gamma2, limits)?)
            .relation(
                "gamma1_cautious_phi",
                cautious_entails(&from_gamma1, phi, limits)?,
            )
            .invariant(
                "gamma1_vocabulary",
                gamma1
                    .signature()
                    .is_subset(&lw.intersection(&ld.union(&lphi))),
            )
            .invariant(
                "gamma2_vocabulary",
                gamma2.signature().is_subset(&lwd.intersection(&lphi)),
            ),
        CautiousVariant::Two => {
            let with_w = dt.facts.union(&Theory::new(vec![gamma2.clone()]));
            let closes = entails(&with_w, phi, limits)?;
            let r = r
                .relation("gamma2_and_w_entail_phi", closes)
                .relation("w_cautious_gamma2", cautious_entails(dt, &gamma2, limits)?)
                .invariant(
                    "gamma_vocabulary",
                    gamma1
                        .signature()
                        .union(&gamma2.signature())
                        .is_subset(&lw.intersection(&ld)),
                );
            if antecedent && !closes {
                // γ2 is the strongest shared formula cautiously entailed, so
                // no weaker choice can close the gap either.
                r.note("no formula over L(W) ∩ L(D) cautiously entailed by the theory yields φ together with W")
            } else {
                r
            }
        }
    };
    let report = r
        .witness("gamma1", &gamma1)
        .witness("gamma2", &gamma2)
        .witness("lambda", &lambda)
        .finish();
    Ok(CautiousInterpolants {
        gamma1,
        gamma2,
        report,
    })
}

/// The two cautious interpolants of `W |~_D φ`, with the relations they satisfy.
pub fn dl_interpolants_cautious(
    dt: &DefaultTheory,
    phi: &Formula,
    variant: CautiousVariant,
    limits: &Limits,
) -> Result<CautiousInterpolants> {
    if !cautious_entails(dt, phi, limits)? {
        return Err(Error::Precondition(format!(
            "the default theory does not cautiously entail `{phi}`"
        )));
    }
    build_cautious(dt, phi, variant, limits)
}

/// Report-only form of [`dl_interpolants_cautious`]: a false antecedent is vacuous.
pub fn check_dl_cautious(
    dt: &DefaultTheory,
    phi: &Formula,
    variant: CautiousVariant,
    limits: &Limits,
) -> Result<TheoremReport> {
    Ok(build_cautious(dt, phi, variant, limits)?.report)
}

/// `L(cons(D2)) ∩ L(pre(D1) ∪ just(D1) ∪ W1) = ∅`.
pub fn weak_disjointness(dt1: &DefaultTheory, dt2: &DefaultTheory) -> bool {
    let lhs = dt2.consequent_signature();
    let rhs = dt1
        .prerequisite_signature()
        .union(&dt1.justification_signature())
        .union(dt1.facts.signature());
    lhs.is_disjoint(&rhs)
}

/// `L(W2 ∪ cons(D2)) ∩ L(D1 ∪ W1) = ∅`.
pub fn strong_disjointness(dt1: &DefaultTheory, dt2: &DefaultTheory) -> bool {
    dt2.facts
        .signature()
        .union(&dt2.consequent_signature())
        .is_disjoint(&dt1.signature())
}

/// First `γ = Cn(E1) ∩ L(W2 ∪ D2)` over the extensions `E1` of `dt1` such
/// that `⟨W2 ∪ {γ}, D2⟩` has an extension entailing `φ`.
fn restriction_witness(
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
    limits: &Limits,
) -> Result<Option<(usize, Formula)>> {
    let target = dt2.signature();
    for (i, e1) in extensions(dt1, limits)?.into_iter().enumerate() {
        let gamma = restrict_consequences(&Theory::new(vec![e1.representative]), &target, limits)?;
        if brave_entails(&dt2.with_fact(gamma.clone()), phi, limits)? {
            return Ok(Some((i, gamma)));
        }
    }
    Ok(None)
}

/// Largest shared language searched exhaustively (2^2^3 = 256 truth functions).
pub(crate) const EXHAUSTIVE_ATOMS: usize = 3;

/// Every truth function over `sig`, as DNF formulas.
pub(crate) fn all_formulas(sig: &Signature) -> impl Iterator<Item = Formula> + '_ {
    let rows = 1u64 << sig.len();
    (0..1u64 << rows).map(move |f| {
        TruthTable::from_indices(sig.len(), (0..rows).filter(|i| f >> i & 1 == 1)).to_dnf(sig)
    })
}

fn check_weak_sides(
    name: &str,
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
) -> Option<TheoremReport> {
    if !weak_disjointness(dt1, dt2) {
        return Some(TheoremReport::skipped(
            name,
            "L(cons(D2)) meets L(pre(D1) ∪ just(D1) ∪ W1)",
        ));
    }
    if !phi.signature().is_subset(&dt2.signature()) {
        return Some(TheoremReport::skipped(name, "query outside L(W2 ∪ D2)"));
    }
    None
}

/// If the combined theory has an extension entailing `φ`, some extension
/// `E1` of `⟨W1, D1⟩` restricted to `L(W2 ∪ D2)` lets `⟨W2 ∪ {γ}, D2⟩` reach `φ`.
///
/// `Cn(E1) ∩ L(W2 ∪ D2) = γ` pins `γ` to these restrictions, so the search
/// over extensions of `⟨W1, D1⟩` is exhaustive.
pub fn extension_interpolation(
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "dl-ext-interp";
    if let Some(r) = check_weak_sides(NAME, dt1, dt2, phi) {
        return Ok(r);
    }
    let combined = dt1.union(dt2);
    let antecedent = brave_entails(&combined, phi, limits)?;
    let found = restriction_witness(dt1, dt2, phi, limits)?;
    let mut r = TheoremReport::new(NAME)
        .antecedent(antecedent)
        .extensions(extensions(&combined, limits)?.len())
        .relation("interpolant_found", found.is_some())
        .witness("strong_disjointness", strong_disjointness(dt1, dt2));
    if let Some((i, gamma)) = found {
        r = r.witness("gamma", gamma).witness("e1_index", i);
    }
    Ok(r.finish())
}

/// Under `L(W2 ∪ cons(D2)) ∩ L(D1 ∪ W1) = ∅`, an interpolating pair
/// `E1`, `E2` yields a combined extension entailing `φ`.
pub fn reverse_extension_check(
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "dl-reverse";
    if !strong_disjointness(dt1, dt2) {
        return Ok(TheoremReport::skipped(
            NAME,
            "L(W2 ∪ cons(D2)) meets L(D1 ∪ W1)",
        ));
    }
    if !phi.signature().is_subset(&dt2.signature()) {
        return Ok(TheoremReport::skipped(NAME, "query outside L(W2 ∪ D2)"));
    }
    let found = restriction_witness(dt1, dt2, phi, limits)?;
    let combined = dt1.union(dt2);
    let mut r = TheoremReport::new(NAME)
        .antecedent(found.is_some())
        .relation("combined_brave_phi", brave_entails(&combined, phi, limits)?);
    if let Some((_, gamma)) = found {
        r = r.witness("gamma", gamma);
    }
    Ok(r.finish())
}

fn brave_search(
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
    limits: &Limits,
) -> Result<(Option<Formula>, &'static str)> {
    if let Some((_, gamma)) = restriction_witness(dt1, dt2, phi, limits)? {
        return Ok((Some(gamma), "extension-restrictions"));
    }
    let shared = dt1.signature().intersection(&dt2.signature());
    if shared.len() > EXHAUSTIVE_ATOMS {
        return Ok((None, "extension-restrictions"));
    }
    for gamma in all_formulas(&shared) {
        if brave_entails(dt1, &gamma, limits)?
            && brave_entails(&dt2.with_fact(gamma.clone()), phi, limits)?
        {
            return Ok((Some(gamma), "exhaustive"));
        }
    }
    Ok((None, "exhaustive"))
}

/// `γ` over the shared language with `W1 |~ᵇ_{D1} γ` and `W2 ∪ {γ} |~ᵇ_{D2} φ`.
pub fn brave_interpolant(
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
    limits: &Limits,
) -> Result<Formula> {
    if !weak_disjointness(dt1, dt2) {
        return Err(Error::SideCondition(
            "L(cons(D2)) meets L(pre(D1) ∪ just(D1) ∪ W1)".into(),
        ));
    }
    if !brave_entails(&dt1.union(dt2), phi, limits)? {
        return Err(Error::Precondition(format!(
            "the combined theory does not bravely entail `{phi}`"
        )));
    }
    brave_search(dt1, dt2, phi, limits)?
        .0
        .ok_or_else(|| Error::Precondition(format!("no shared-language interpolant for `{phi}`")))
}

pub fn check_dl_brave(
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "dl-brave";
    if let Some(r) = check_weak_sides(NAME, dt1, dt2, phi) {
        return Ok(r);
    }
    let antecedent = brave_entails(&dt1.union(dt2), phi, limits)?;
    if !antecedent {
        return Ok(TheoremReport::new(NAME).antecedent(false).finish());
    }
    let (found, search) = brave_search(dt1, dt2, phi, limits)?;
    let shared = dt1.signature().intersection(&dt2.signature());
    let mut r = TheoremReport::new(NAME)
        .relation("interpolant_found", found.is_some())
        .witness("search", search)
        .witness("strong_disjointness", strong_disjointness(dt1, dt2));
    if let Some(gamma) = found {
        r = r
            .relation("d1_brave_gamma", brave_entails(dt1, &gamma, limits)?)
            .relation(
                "gamma_d2_brave_phi",
                brave_entails(&dt2.with_fact(gamma.clone()), phi, limits)?,
            )
            .invariant("gamma_vocabulary", gamma.signature().is_subset(&shared))
            .witness("gamma", gamma);
    }
    Ok(r.finish())
}

/// The cautious reading of the brave chain, searched over every truth function
/// of the shared language.
#[derive(Debug, Clone)]
pub struct CautiousChain {
    /// Shared formulas `γ` with `W1 |~_{D1} γ`.
    pub entailed: Vec<Formula>,
    /// Those that also give `W2 ∪ {γ} |~_{D2} φ`.
    pub witnesses: Vec<Formula>,
}

pub fn cautious_chain(
    dt1: &DefaultTheory,
    dt2: &DefaultTheory,
    phi: &Formula,
    limits: &Limits,
) -> Result<CautiousChain> {
    let shared = dt1.signature().intersection(&dt2.signature());
    if shared.len() > EXHAUSTIVE_ATOMS + 1 {
        return Err(Error::CapExceeded {
            what: "shared language",
            size: shared.len(),
            cap: EXHAUSTIVE_ATOMS + 1,
        });
    }
    let mut entailed = Vec::new();
    let mut witnesses = Vec::new();
    for gamma in all_formulas(&shared) {
        if cautious_entails(dt1, &gamma, limits)? {
            if cautious_entails(&dt2.with_fact(gamma.clone()), phi, limits)? {
                witnesses.push(gamma.clone());
            }
            entailed.push(gamma);
        }
    }
    Ok(CautiousChain {
        entailed,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::default_logic::DefaultRule;
    use crate::logic::{equivalent, is_valid, parse_formula};
    use crate::report::Verdict;

    const L: Limits = Limits::DEFAULT;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn dt(w: &[&str], ds: &[&str]) -> DefaultTheory {
        DefaultTheory::new(
            Theory::new(w.iter().map(|s| f(s)).collect()),
            ds.iter()
                .map(|s| s.parse::<DefaultRule>().unwrap())
                .collect(),
        )
    }

    fn eq(a: &Formula, b: &str) -> bool {
        equivalent(a, &f(b), &L).unwrap()
    }

    #[test]
    fn tweety_first_variant() {
        let t = dt(&["bird"], &["bird : fly / fly"]);
        let out = dl_interpolants_cautious(&t, &f("fly"), CautiousVariant::One, &L).unwrap();
        assert!(eq(&out.gamma1, "bird"));
        assert!(eq(&out.gamma2, "fly"));
        assert_eq!(out.report.verdict, Verdict::Pass);
        assert!(out.report.relations.iter().all(|r| r.held));
    }

    #[test]
    fn classical_consequence_reduces_to_craig() {
        let t = dt(&["p & q"], &[": r / r"]);
        let out = dl_interpolants_cautious(&t, &f("q | s"), CautiousVariant::One, &L).unwrap();
        assert!(eq(&out.gamma2, "q"));
        assert_eq!(out.report.verdict, Verdict::Pass);
    }

    #[test]
    fn two_extension_theory_first_variant() {
        let t = dt(&[], &[": b / b", ": !b / !b", "b : c / c", "!b : c / c"]);
        let out = dl_interpolants_cautious(&t, &f("c"), CautiousVariant::One, &L).unwrap();
        assert!(eq(&out.gamma2, "c"));
        assert_eq!(out.report.relation_held("w_cautious_gamma2"), Some(true));
        assert_eq!(out.report.extension_count, Some(2));
    }

    #[test]
    fn precondition_enforced() {
        let t = dt(&[], &[": p / p"]);
        assert!(matches!(
            dl_interpolants_cautious(&t, &f("!p"), CautiousVariant::One, &L),
            Err(Error::Precondition(_))
        ));
        let r = check_dl_cautious(&t, &f("!p"), CautiousVariant::One, &L).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
    }

    #[test]
    fn second_variant_fails_without_shared_vocabulary() {
        // L(W) ∩ L(D) is empty, so only tautologies are available, yet the
        // conclusion needs the default.
        let t = dt(&[], &[": p / p"]);
        let r = check_dl_cautious(&t, &f("p"), CautiousVariant::Two, &L).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.relation_held("gamma2_and_w_entail_phi"), Some(false));
        assert!(r.note.is_some());
    }

    #[test]
    fn second_variant_needs_the_query_in_the_shared_vocabulary() {
        let t = dt(&["bird"], &["bird : fly / fly"]);
        let r = check_dl_cautious(&t, &f("fly"), CautiousVariant::Two, &L).unwrap();
        assert_eq!(r.verdict, Verdict::Fail, "fly is outside L(W): {r:?}");
        let t = dt(&["bird", "fly -> bird"], &["bird : fly / fly"]);
        let r = check_dl_cautious(&t, &f("fly"), CautiousVariant::Two, &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }

    #[test]
    fn chained_theories() {
        let (d1, d2) = (dt(&[], &[": b / b"]), dt(&[], &["b : c / c"]));
        let r = extension_interpolation(&d1, &d2, &f("c"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(eq(&parse_formula(&r.witness["gamma"]).unwrap(), "b"));
        assert!(eq(&brave_interpolant(&d1, &d2, &f("c"), &L).unwrap(), "b"));
        assert_eq!(
            check_dl_brave(&d1, &d2, &f("c"), &L).unwrap().verdict,
            Verdict::Pass
        );
    }

    #[test]
    fn classical_second_theory() {
        let (d1, d2) = (dt(&[], &[]), dt(&["q"], &[]));
        assert!(eq(
            &brave_interpolant(&d1, &d2, &f("q"), &L).unwrap(),
            "true"
        ));
        let r = extension_interpolation(&d1, &d2, &f("q"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = extension_interpolation(&d1, &d2, &f("!q"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
    }

    #[test]
    fn facts_of_the_second_theory_can_fire_first_theory_defaults() {
        // W2 supplies the prerequisite of a D1 default; the stated side
        // condition only constrains cons(D2), so it admits this instance.
        let (d1, d2) = (dt(&[], &["a : / c"]), dt(&["a", "c -> d"], &[]));
        let r = extension_interpolation(&d1, &d2, &f("d"), &L).unwrap();
        assert!(r.side_conditions_met);
        assert_eq!(r.verdict, Verdict::Fail);
        let r = check_dl_brave(&d1, &d2, &f("d"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witness["search"], "exhaustive");
        assert!(brave_interpolant(&d1, &d2, &f("d"), &L).is_err());
    }

    #[test]
    fn reverse_direction() {
        let (d1, d2) = (dt(&[], &[": / a -> !b", ": b / c"]), dt(&["a"], &[]));
        let r = reverse_extension_check(&d1, &d2, &f("c"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Skipped);
        assert!(!brave_entails(&d1.union(&d2), &f("c"), &L).unwrap());
        assert!(brave_entails(&d1, &f("c"), &L).unwrap());

        let (d1, d2) = (dt(&[], &[": p / p"]), dt(&["q"], &[]));
        let r = reverse_extension_check(&d1, &d2, &f("q"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = reverse_extension_check(&d1, &d2, &f("!q"), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
    }

    #[test]
    fn cautious_chain_on_two_extension_theory() {
        let d1 = dt(&[], &[": b / b", ": !b / !b"]);
        let d2 = dt(&[], &["b : c / c", "!b : c / c"]);
        assert!(cautious_entails(&d1.union(&d2), &f("c"), &L).unwrap());
        let chain = cautious_chain(&d1, &d2, &f("c"), &L).unwrap();
        assert_eq!(chain.entailed.len(), 1);
        assert!(is_valid(&chain.entailed[0], &L).unwrap());
        assert!(chain.witnesses.is_empty());
    }
}
