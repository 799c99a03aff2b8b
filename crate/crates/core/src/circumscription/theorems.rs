use std::collections::BTreeSet;

use super::{circ_entails, minimal_projections, CircProblem};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{entails, restrict_consequences, Formula, Signature, Theory};
use crate::report::TheoremReport;

/// `L(φ) ∪ P`: the vocabulary the first interpolant may use.
pub fn circ1_keep_set(cp: &CircProblem, phi: &Formula) -> Signature {
    phi.signature().union(cp.minimize())
}

/// `γ` over `L(T) ∩ (L(φ) ∪ P)` with `T ⊨ γ` and `Circ[γ;P;Q] ⊨ φ`.
pub fn interpolate_circ1(cp: &CircProblem, phi: &Formula, limits: &Limits) -> Result<Formula> {
    if !circ_entails(cp, phi, limits)? {
        return Err(Error::Precondition(format!("{cp} does not entail `{phi}`")));
    }
    restrict_consequences(cp.theory(), &circ1_keep_set(cp, phi), limits)
}

/// `γ` over `L(T) ∩ (L2 ∪ P)` preserving every circumscriptive consequence
/// over `L2`. Requires `P ∪ Q ⊇ L(T)`.
pub fn interpolate_circ2(cp: &CircProblem, l2: &Signature, limits: &Limits) -> Result<Formula> {
    let free = cp.minimize().union(cp.vary());
    if !cp.theory().signature().is_subset(&free) {
        return Err(Error::SideCondition(format!(
            "P ∪ Q = {free} does not cover the theory signature {}",
            cp.theory().signature()
        )));
    }
    restrict_consequences(cp.theory(), &l2.union(cp.minimize()), limits)
}

fn show(set: &BTreeSet<u64>, sig: &Signature) -> String {
    let parts: Vec<String> = set
        .iter()
        .map(|bits| crate::logic::Assignment::new(sig.clone(), *bits).to_string())
        .collect();
    format!("[{}]", parts.join(", "))
}

fn theory_with(t: &Theory, gamma: &Formula) -> Theory {
    t.union(&Theory::new(vec![gamma.clone()]))
}

pub fn check_circ_interp1(
    cp: &CircProblem,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "circ-interp-1";
    let keep = circ1_keep_set(cp, phi);
    let gamma = restrict_consequences(cp.theory(), &keep, limits)?;
    let antecedent = circ_entails(cp, phi, limits)?;
    let reduced = cp.with_theory(Theory::new(vec![gamma.clone()]));
    let consequent = circ_entails(&reduced, phi, limits)?;
    let vocab = cp.theory().signature().intersection(&keep);
    Ok(TheoremReport::new(NAME)
        .antecedent(antecedent)
        .invariant(
            "theory_entails_gamma",
            entails(cp.theory(), &gamma, limits)?,
        )
        .invariant("gamma_vocabulary", gamma.signature().is_subset(&vocab))
        .relation("circ_gamma_entails_phi", consequent)
        .witness("gamma", &gamma)
        .finish())
}

/// Checks the second construction for one `φ` over `L2`, and for every
/// formula over `L2` at once by comparing minimal-model projections.
pub fn check_circ_interp2(
    cp: &CircProblem,
    l2: &Signature,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "circ-interp-2";
    let free = cp.minimize().union(cp.vary());
    if !cp.theory().signature().is_subset(&free) {
        return Ok(TheoremReport::skipped(NAME, "P ∪ Q does not cover L(T)"));
    }
    if !phi.signature().is_subset(l2) {
        return Ok(TheoremReport::skipped(NAME, "query outside L2"));
    }
    let gamma = interpolate_circ2(cp, l2, limits)?;
    let reduced = cp.with_theory(Theory::new(vec![gamma.clone()]));
    let original = circ_entails(cp, phi, limits)?;
    let via_gamma = circ_entails(&reduced, phi, limits)?;
    let lhs = minimal_projections(cp, l2, limits)?;
    let rhs = minimal_projections(&reduced, l2, limits)?;
    let vocab = cp
        .theory()
        .signature()
        .intersection(&l2.union(cp.minimize()));
    Ok(TheoremReport::new(NAME)
        .antecedent(original || via_gamma)
        .invariant(
            "theory_entails_gamma",
            entails(cp.theory(), &gamma, limits)?,
        )
        .invariant("gamma_vocabulary", gamma.signature().is_subset(&vocab))
        .relation("agree_on_phi", original == via_gamma)
        .invariant("agree_on_all_l2_formulas", lhs == rhs)
        .witness("gamma", &gamma)
        .finish())
}

/// Shared side conditions of the three two-theory results.
fn two_theory_sides(
    t1: &Theory,
    t2: &Theory,
    p: &Signature,
    q: &Signature,
    phi: &Formula,
) -> std::result::Result<(), &'static str> {
    let l1 = t1.signature();
    if !p.is_disjoint(q) {
        return Err("P and Q overlap");
    }
    if !p.is_subset(l1) {
        return Err("P is not inside L(T1)");
    }
    if !p.union(q).is_subset(&l1.union(t2.signature())) {
        return Err("P ∪ Q is not inside L(T1) ∪ L(T2)");
    }
    if !phi.signature().is_subset(l1) {
        return Err("query is not in the language of T1");
    }
    Ok(())
}

struct TwoTheory {
    gamma: Formula,
    combined: CircProblem,
    reduced: CircProblem,
    combined_entails: bool,
    reduced_entails: bool,
    combined_proj: BTreeSet<u64>,
    reduced_proj: BTreeSet<u64>,
}

fn two_theory(
    t1: &Theory,
    t2: &Theory,
    p: &Signature,
    q: &Signature,
    phi: &Formula,
    limits: &Limits,
) -> Result<TwoTheory> {
    let gamma = restrict_consequences(t2, t1.signature(), limits)?;
    let combined = CircProblem::new(t1.union(t2), p.clone(), q.clone())?;
    let reduced = CircProblem::new(theory_with(t1, &gamma), p.clone(), q.clone())?;
    Ok(TwoTheory {
        combined_entails: circ_entails(&combined, phi, limits)?,
        reduced_entails: circ_entails(&reduced, phi, limits)?,
        combined_proj: minimal_projections(&combined, t1.signature(), limits)?,
        reduced_proj: minimal_projections(&reduced, t1.signature(), limits)?,
        gamma,
        combined,
        reduced,
    })
}

fn with_common(r: TheoremReport, t1: &Theory, t2: &Theory, w: &TwoTheory) -> TheoremReport {
    let shared = t1.signature().intersection(t2.signature());
    r.invariant("gamma_vocabulary", w.gamma.signature().is_subset(&shared))
        .witness("gamma", &w.gamma)
        .witness("combined", &w.combined)
        .witness("reduced", &w.reduced)
        .witness(
            "combined_minimal_on_l1",
            show(&w.combined_proj, t1.signature()),
        )
        .witness(
            "reduced_minimal_on_l1",
            show(&w.reduced_proj, t1.signature()),
        )
}

/// Replacing `T2` by its consequences over `L(T1)` preserves circumscriptive
/// consequences over `L(T1)`.
pub fn check_circ_t_gamma(
    t1: &Theory,
    t2: &Theory,
    p: &Signature,
    q: &Signature,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "circ-T-gamma";
    if let Err(why) = two_theory_sides(t1, t2, p, q, phi) {
        return Ok(TheoremReport::skipped(NAME, why));
    }
    let w = two_theory(t1, t2, p, q, phi, limits)?;
    let r = TheoremReport::new(NAME)
        .antecedent(w.combined_entails)
        .relation("reduced_entails_phi", w.reduced_entails)
        .invariant(
            "all_l1_consequences_kept",
            w.reduced_proj.is_subset(&w.combined_proj),
        );
    Ok(with_common(r, t1, t2, &w).finish())
}

/// The converse direction, when `P ∪ Q ⊇ L(T2)`.
pub fn check_circ_gamma_t(
    t1: &Theory,
    t2: &Theory,
    p: &Signature,
    q: &Signature,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "circ-gamma-T";
    if let Err(why) = two_theory_sides(t1, t2, p, q, phi) {
        return Ok(TheoremReport::skipped(NAME, why));
    }
    if !t2.signature().is_subset(&p.union(q)) {
        return Ok(TheoremReport::skipped(NAME, "P ∪ Q does not cover L(T2)"));
    }
    let w = two_theory(t1, t2, p, q, phi, limits)?;
    let r = TheoremReport::new(NAME)
        .antecedent(w.reduced_entails)
        .relation("combined_entails_phi", w.combined_entails)
        .invariant(
            "all_l1_consequences_kept",
            w.combined_proj.is_subset(&w.reduced_proj),
        );
    Ok(with_common(r, t1, t2, &w).finish())
}

/// Both directions at once. `P ∪ Q ⊇ L(T2)` is read non-strictly; the
/// witness records whether the strict reading would also admit the instance.
pub fn check_interpolation_between_theories(
    t1: &Theory,
    t2: &Theory,
    p: &Signature,
    q: &Signature,
    phi: &Formula,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "circ-between";
    if let Err(why) = two_theory_sides(t1, t2, p, q, phi) {
        return Ok(TheoremReport::skipped(NAME, why));
    }
    let pq = p.union(q);
    if !t2.signature().is_subset(&pq) {
        return Ok(TheoremReport::skipped(NAME, "P ∪ Q does not cover L(T2)"));
    }
    let strict = pq.len() > t2.signature().len();
    let w = two_theory(t1, t2, p, q, phi, limits)?;
    let r = TheoremReport::new(NAME)
        .antecedent(w.combined_entails || w.reduced_entails)
        .relation("agree_on_phi", w.combined_entails == w.reduced_entails)
        .invariant(
            "agree_on_all_l1_formulas",
            w.combined_proj == w.reduced_proj,
        )
        .witness("strict_superset", strict);
    Ok(with_common(r, t1, t2, &w).finish())
}
