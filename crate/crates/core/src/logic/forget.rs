use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{implies, Atom, Formula, Signature, Theory, TruthTable};

/// Boole expansion `φ[a/⊤] ∨ φ[a/⊥]`, simplified.
///
/// The result does not mention `atom` and has exactly the consequences of
/// `formula` that do not mention it.
pub fn forget(formula: &Formula, atom: &Atom) -> Formula {
    if !formula.mentions(atom) {
        return formula.clone();
    }
    let hi = formula.assign(atom, true);
    let lo = formula.assign(atom, false);
    hi.or(lo).simplify()
}

/// Collapses a formula to a constant when its truth table is one.
fn collapse(formula: Formula, limits: &Limits) -> Result<Formula> {
    let sig = formula.signature();
    limits.check_atoms(sig.len())?;
    let t = TruthTable::of(&formula, &sig)?;
    Ok(if t.is_empty() {
        Formula::False
    } else if t.is_full() {
        Formula::True
    } else {
        formula
    })
}

/// The strongest formula over `signature(theory) ∩ keep` entailed by `theory`.
///
/// Conjoins the theory and forgets every atom outside `keep` in signature
/// order. An inconsistent theory yields `False`.
pub fn restrict_consequences(
    theory: &Theory,
    keep: &Signature,
    limits: &Limits,
) -> Result<Formula> {
    limits.check_atoms(theory.signature().len())?;
    let mut gamma = collapse(theory.conjunction().simplify(), limits)?;
    if gamma == Formula::False {
        return Ok(Formula::False);
    }
    for atom in theory.signature().iter().filter(|a| !keep.contains(a)) {
        gamma = collapse(forget(&gamma, atom), limits)?;
        if matches!(gamma, Formula::True | Formula::False) {
            break;
        }
    }
    Ok(gamma)
}

/// Craig interpolant of `alpha ⊨ beta` over their shared atoms.
pub fn craig_interpolant(alpha: &Formula, beta: &Formula, limits: &Limits) -> Result<Formula> {
    if !implies(alpha, beta, limits)? {
        return Err(Error::Precondition(format!(
            "`{alpha}` does not entail `{beta}`"
        )));
    }
    restrict_consequences(&Theory::new(vec![alpha.clone()]), &beta.signature(), limits)
}
