use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{Atom, Formula, Signature, TruthTable};

/// A finite list of formulas together with a signature covering them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Theory {
    formulas: Vec<Formula>,
    signature: Signature,
}

impl Theory {
    pub fn new(formulas: Vec<Formula>) -> Theory {
        let mut signature = Signature::new();
        for f in &formulas {
            f.collect_atoms(&mut signature);
        }
        Theory {
            formulas,
            signature,
        }
    }

    /// A theory whose signature is padded with `extra` atoms.
    pub fn with_signature(formulas: Vec<Formula>, extra: &Signature) -> Theory {
        let mut t = Theory::new(formulas);
        t.signature.extend(extra.iter().cloned());
        t
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn conjunction(&self) -> Formula {
        Formula::conjoin(self.formulas.iter().cloned())
    }

    pub fn union(&self, other: &Theory) -> Theory {
        let mut formulas = self.formulas.clone();
        formulas.extend(other.formulas.iter().cloned());
        let mut t = Theory::new(formulas);
        t.signature = self.signature.union(&other.signature);
        t
    }

    pub fn push(&mut self, formula: Formula) {
        formula.collect_atoms(&mut self.signature);
        self.formulas.push(formula);
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub(crate) fn table(&self, sig: &Signature, limits: &Limits) -> Result<TruthTable> {
        limits.check_atoms(sig.len())?;
        TruthTable::of_all(&self.formulas, sig)
    }
}

impl From<Vec<Formula>> for Theory {
    fn from(formulas: Vec<Formula>) -> Theory {
        Theory::new(formulas)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.formulas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// A total truth assignment over a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    signature: Signature,
    bits: u64,
}

impl Assignment {
    /// Bit `j` of `bits` is the value of the `j`-th atom of `signature`.
    pub fn new(signature: Signature, bits: u64) -> Assignment {
        let bits = if signature.len() >= 64 {
            bits
        } else {
            bits & ((1u64 << signature.len()) - 1)
        };
        Assignment { signature, bits }
    }

    /// The assignment making exactly `true_atoms` true.
    pub fn from_true_atoms(signature: &Signature, true_atoms: &[&str]) -> Assignment {
        let mut bits = 0;
        for name in true_atoms {
            let atom = Atom::new(name).unwrap_or_else(|e| panic!("{e}"));
            let idx = signature
                .index_of(&atom)
                .unwrap_or_else(|| panic!("`{name}` not in {signature}"));
            bits |= 1 << idx;
        }
        Assignment::new(signature.clone(), bits)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn value(&self, atom: &Atom) -> Option<bool> {
        self.signature
            .index_of(atom)
            .map(|i| (self.bits >> i) & 1 == 1)
    }

    /// Atoms of `subset` made true, in `subset` order.
    pub fn extension(&self, subset: &Signature) -> Signature {
        subset
            .iter()
            .filter(|a| self.value(a) == Some(true))
            .cloned()
            .collect()
    }

    pub fn true_atoms(&self) -> Signature {
        self.extension(&self.signature)
    }

    pub fn satisfies(&self, formula: &Formula) -> bool {
        formula.eval(|a| self.value(a).unwrap_or(false))
    }

    /// Conjunction of literals pinning every atom to its value.
    pub fn to_formula(&self) -> Formula {
        Formula::conjoin(self.signature.iter().map(|a| {
            let lit = Formula::Atom(a.clone());
            if self.value(a) == Some(true) {
                lit
            } else {
                lit.not()
            }
        }))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.true_atoms())
    }
}

/// All assignments over `sig` satisfying every formula of `theory`.
pub fn models(theory: &Theory, sig: &Signature, limits: &Limits) -> Result<Vec<Assignment>> {
    if !theory.signature().is_subset(sig) {
        return Err(Error::SignatureMismatch(format!(
            "{} does not cover the theory signature {}",
            sig,
            theory.signature()
        )));
    }
    let table = theory.table(sig, limits)?;
    Ok(table
        .models()
        .map(|i| Assignment::new(sig.clone(), i))
        .collect())
}

/// Classical consequence `theory ⊨ formula` over the joint signature.
pub fn entails(theory: &Theory, formula: &Formula, limits: &Limits) -> Result<bool> {
    let sig = theory.signature().union(&formula.signature());
    let t = theory.table(&sig, limits)?;
    Ok(t.implies(&TruthTable::of(formula, &sig)?))
}

/// `premise ⊨ conclusion` for two single formulas.
pub fn implies(premise: &Formula, conclusion: &Formula, limits: &Limits) -> Result<bool> {
    entails(&Theory::new(vec![premise.clone()]), conclusion, limits)
}

pub fn equivalent(a: &Formula, b: &Formula, limits: &Limits) -> Result<bool> {
    let sig = a.signature().union(&b.signature());
    limits.check_atoms(sig.len())?;
    Ok(TruthTable::of(a, &sig)? == TruthTable::of(b, &sig)?)
}

pub fn satisfiable(formula: &Formula, limits: &Limits) -> Result<bool> {
    let sig = formula.signature();
    limits.check_atoms(sig.len())?;
    Ok(!TruthTable::of(formula, &sig)?.is_empty())
}

pub fn is_valid(formula: &Formula, limits: &Limits) -> Result<bool> {
    let sig = formula.signature();
    limits.check_atoms(sig.len())?;
    Ok(TruthTable::of(formula, &sig)?.is_full())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn th(src: &[&str]) -> Theory {
        Theory::new(src.iter().map(|s| parse_formula(s).unwrap()).collect())
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    const L: Limits = Limits::DEFAULT;

    #[test]
    fn models_of_disjunction() {
        let sig = Signature::of(&["p", "q"]);
        let ms = models(&th(&["p | q"]), &sig, &L).unwrap();
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["{p}", "{q}", "{p, q}"]);
    }

    #[test]
    fn models_of_empty_theory_and_contradiction() {
        let sig = Signature::of(&["p"]);
        assert_eq!(models(&th(&[]), &sig, &L).unwrap().len(), 2);
        assert!(models(&th(&["p", "!p"]), &sig, &L).unwrap().is_empty());
    }

    #[test]
    fn models_rejects_narrow_signature() {
        let sig = Signature::of(&["p"]);
        assert!(matches!(
            models(&th(&["p | q"]), &sig, &L),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn models_cap() {
        let names: Vec<String> = (0..21).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let sig = Signature::of(&refs);
        assert!(matches!(
            models(&th(&[]), &sig, &L),
            Err(Error::CapExceeded { .. })
        ));
        let wide = Limits { max_atoms: 21, ..L };
        assert_eq!(
            models(
                &th(&["x0 & x1 & x2 & x3 & x4 & x5 & x6 & x7 & x8 & x9 & x10"]),
                &sig,
                &wide
            )
            .unwrap()
            .len(),
            1 << 10
        );
    }

    #[test]
    fn entailment_examples() {
        assert!(entails(&th(&["p & q"]), &f("p"), &L).unwrap());
        assert!(!entails(&th(&["!P -> Q"]), &f("Q"), &L).unwrap());
        assert!(entails(&th(&["p", "!p"]), &f("q"), &L).unwrap());
    }

    #[test]
    fn assignment_extension() {
        let sig = Signature::of(&["p", "q", "r"]);
        let m = Assignment::from_true_atoms(&sig, &["p", "r"]);
        assert_eq!(
            m.extension(&Signature::of(&["r", "q"])),
            Signature::of(&["r"])
        );
        assert!(m.satisfies(&f("p & !q")));
        assert!(implies(&m.to_formula(), &f("p & r & !q"), &L).unwrap());
    }
}
