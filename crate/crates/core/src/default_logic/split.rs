use std::fmt;

use super::{signature_of, Compiled, DefaultRule, DefaultTheory};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{implies, satisfiable, Formula, Signature, Theory, TruthTable};
use crate::report::TheoremReport;

/// A valid splitting set `A` of a default set, with `B = L(D) ∖ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub a: Signature,
    pub b: Signature,
    /// Indices of `b_A(D)`: defaults whose whole vocabulary lies in `A`.
    pub base: Vec<usize>,
    pub rest: Vec<usize>,
}

/// Why a candidate splitting set was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRejection {
    pub default: Option<usize>,
    pub reason: String,
}

impl fmt::Display for SplitRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.default {
            Some(i) => write!(f, "default {i}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

fn inside(f: &Formula, sig: &Signature) -> bool {
    f.signature().is_subset(sig)
}

/// Validates `A` as a splitting set of `defaults`.
///
/// Prerequisites are split into top-level conjuncts first; each conjunct,
/// each justification and the consequent must lie wholly in `L(A)` or in
/// `L(B)`, and a default whose consequent is not in `L(B)` must lie in `A`.
pub fn splitting_set(
    a: &Signature,
    defaults: &[DefaultRule],
) -> std::result::Result<SplitSpec, SplitRejection> {
    let all = signature_of(defaults);
    if !a.is_subset(&all) {
        return Err(SplitRejection {
            default: None,
            reason: format!("{a} is not inside L(D) = {all}"),
        });
    }
    let b = all.difference(a);
    let reject = |i: usize, reason: String| SplitRejection {
        default: Some(i),
        reason,
    };
    let (mut base, mut rest) = (Vec::new(), Vec::new());
    for (i, d) in defaults.iter().enumerate() {
        let side_ok = |f: &Formula| inside(f, a) || inside(f, &b);
        if let Some(c) = d.prerequisite.conjuncts().into_iter().find(|c| !side_ok(c)) {
            return Err(reject(
                i,
                format!("prerequisite conjunct `{c}` straddles A and B"),
            ));
        }
        if let Some(j) = d.justifications.iter().find(|j| !side_ok(j)) {
            return Err(reject(i, format!("justification `{j}` straddles A and B")));
        }
        if !side_ok(&d.consequent) {
            return Err(reject(
                i,
                format!("consequent `{}` straddles A and B", d.consequent),
            ));
        }
        let in_a = d.signature().is_subset(a);
        if !inside(&d.consequent, &b) && !in_a {
            return Err(reject(
                i,
                "consequent lies in A but the default mentions B".into(),
            ));
        }
        if in_a {
            base.push(i);
        } else {
            rest.push(i);
        }
    }
    Ok(SplitSpec {
        a: a.clone(),
        b,
        base,
        rest,
    })
}

/// `e_A(D, X)`: the non-base defaults partially evaluated against an
/// extension `X` of the base, given by its representative.
pub fn e_a(
    spec: &SplitSpec,
    defaults: &[DefaultRule],
    x: &Formula,
    limits: &Limits,
) -> Result<Vec<DefaultRule>> {
    let mut out = Vec::new();
    'defaults: for &i in &spec.rest {
        let d = defaults
            .get(i)
            .ok_or_else(|| Error::InvalidSplit(format!("no default {i}")))?;
        let mut kept_pre = Vec::new();
        for c in d.prerequisite.conjuncts() {
            if inside(c, &spec.a) && !implies(x, c, limits)? {
                continue 'defaults;
            }
            if inside(c, &spec.b) {
                kept_pre.push(c.clone());
            }
        }
        for j in &d.justifications {
            if !satisfiable(&x.clone().and(j.clone()), limits)? {
                continue 'defaults;
            }
        }
        out.push(DefaultRule::new(
            Formula::conjoin(kept_pre),
            d.justifications
                .iter()
                .filter(|j| inside(j, &spec.b))
                .cloned()
                .collect(),
            d.consequent.clone(),
        ));
    }
    Ok(out)
}

fn consistent_tables(
    dt: &DefaultTheory,
    sig: &Signature,
    limits: &Limits,
) -> Result<Vec<TruthTable>> {
    let c = Compiled::new(dt, sig, limits)?;
    Ok(c.extensions()
        .into_iter()
        .map(|(_, t)| t)
        .filter(|t| !t.is_empty())
        .collect())
}

fn same_set(a: &[TruthTable], b: &[TruthTable]) -> bool {
    a.iter().all(|t| b.contains(t)) && b.iter().all(|t| a.contains(t))
}

/// Consistent extensions of `⟨∅, D⟩` computed directly versus composed from
/// base extensions `X` and extensions `Y` of `e_A(D, X)`.
pub fn check_turner_splitting(
    defaults: &[DefaultRule],
    a: &Signature,
    limits: &Limits,
) -> Result<TheoremReport> {
    const NAME: &str = "dl-turner-split";
    let spec = match splitting_set(a, defaults) {
        Ok(spec) => spec,
        Err(why) => return Ok(TheoremReport::skipped(NAME, why.to_string())),
    };
    let sig = signature_of(defaults);
    let direct = consistent_tables(
        &DefaultTheory::new(Theory::default(), defaults.to_vec()),
        &sig,
        limits,
    )?;

    let base_theory = DefaultTheory::new(
        Theory::default(),
        spec.base.iter().map(|&i| defaults[i].clone()).collect(),
    );
    let base_sig = base_theory.signature();
    let mut composed: Vec<TruthTable> = Vec::new();
    let bases = consistent_tables(&base_theory, &base_sig, limits)?;
    for x in &bases {
        let x_formula = x.to_dnf(&base_sig);
        let remainder =
            DefaultTheory::new(Theory::default(), e_a(&spec, defaults, &x_formula, limits)?);
        let x_full = TruthTable::of(&x_formula, &sig)?;
        for y in consistent_tables(&remainder, &sig, limits)? {
            let e = x_full.and(&y);
            if !e.is_empty() && !composed.contains(&e) {
                composed.push(e);
            }
        }
    }
    Ok(TheoremReport::new(NAME)
        .invariant("extensions_match", same_set(&direct, &composed))
        .extensions(direct.len())
        .witness("a", &spec.a)
        .witness("base_extensions", bases.len())
        .witness("composed_extensions", composed.len())
        .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{equivalent, parse_formula};
    use crate::report::Verdict;

    const L: Limits = Limits::DEFAULT;

    fn ds(src: &[&str]) -> Vec<DefaultRule> {
        src.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn validity_examples() {
        let d = ds(&[": b / b", "b : c / c"]);
        let spec = splitting_set(&Signature::of(&["b"]), &d).unwrap();
        assert_eq!(spec.base, vec![0]);
        assert_eq!(spec.b, Signature::of(&["c"]));

        let spec = splitting_set(&Signature::of(&["b", "c"]), &d).unwrap();
        assert_eq!(spec.base, vec![0, 1]);

        assert!(splitting_set(&Signature::of(&["b"]), &ds(&[": b / b & c"])).is_err());
        assert!(splitting_set(&Signature::of(&["z"]), &d).is_err());
        // consequent in A while the prerequisite is in B
        let err = splitting_set(&Signature::of(&["b"]), &ds(&["c : / b"])).unwrap_err();
        assert_eq!(err.default, Some(0));
    }

    #[test]
    fn mixed_prerequisites_split_by_conjunct() {
        let d = ds(&[": a / a", "a & c : / d"]);
        let spec = splitting_set(&Signature::of(&["a"]), &d).unwrap();
        let x = parse_formula("a").unwrap();
        let e = e_a(&spec, &d, &x, &L).unwrap();
        assert_eq!(e, ds(&["c : / d"]));
    }

    #[test]
    fn partial_evaluation() {
        let d = ds(&[": b / b", "b : c / c"]);
        let spec = splitting_set(&Signature::of(&["b"]), &d).unwrap();
        let b = parse_formula("b").unwrap();
        let e = e_a(&spec, &d, &b, &L).unwrap();
        assert_eq!(e, ds(&[": c / c"]));

        let d = ds(&[": !b / !b", ": b / c"]);
        let spec = splitting_set(&Signature::of(&["b"]), &d).unwrap();
        assert!(e_a(&spec, &d, &parse_formula("!b").unwrap(), &L)
            .unwrap()
            .is_empty());

        let d = ds(&[": b / b", "!b : / c"]);
        let spec = splitting_set(&Signature::of(&["b"]), &d).unwrap();
        assert!(e_a(&spec, &d, &b, &L).unwrap().is_empty());
    }

    #[test]
    fn composition_matches_direct() {
        let d = ds(&[": b / b", "b : c / c"]);
        let r = check_turner_splitting(&d, &Signature::of(&["b"]), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.extension_count, Some(1));

        let d = ds(&[": b / b", ": !b / !b", "b : c / c", "!b : !c / d"]);
        let r = check_turner_splitting(&d, &Signature::of(&["b"]), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(r.extension_count, Some(2));

        let r = check_turner_splitting(&d, &Signature::of(&["b", "c", "d"]), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn folded_facts() {
        let t = DefaultTheory::new(
            Theory::new(vec![parse_formula("p").unwrap()]),
            ds(&["p : q / q"]),
        );
        let folded = t.fold_facts();
        assert_eq!(folded[0], DefaultRule::fact(parse_formula("p").unwrap()));
        let r = check_turner_splitting(&folded, &Signature::of(&["p"]), &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let ex =
            crate::default_logic::extensions(&DefaultTheory::new(Theory::default(), folded), &L)
                .unwrap();
        assert!(equivalent(&ex[0].representative, &parse_formula("p & q").unwrap(), &L).unwrap());
    }
}
