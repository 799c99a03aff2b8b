mod common;

use std::collections::BTreeSet;

use common::{random_program, stable_models};
use nmterp_core::logic::{parse_formula, Atom};
use nmterp_core::programs::{
    answer_sets, answer_sets_positive, eliminate_classical_negation, extension_atom_sets, lp_brave,
    lp_cautious, parse_program, reduct, restore_answer_sets, stable_atom_sets,
    translate_disjunctive_to_default, translate_normal_to_default, LiteralSet, Program,
};
use nmterp_core::workbench::{
    generate, verify, Family, GenSpec, Instance, Mode, ProgramShape, Summary,
};
use nmterp_core::Limits;

const L: Limits = Limits::DEFAULT;

const MIXED: ProgramShape = ProgramShape {
    disjunction: 0.3,
    classical: 0.15,
};

fn as_set(v: Vec<BTreeSet<Atom>>) -> BTreeSet<BTreeSet<Atom>> {
    v.into_iter().collect()
}

/// Programs up to six atoms and eight rules once classical negation is renamed
/// away, so the oracle and both translations apply: a third start from three
/// atoms with `-a` literals, the rest from six atoms without.
fn positive_literal_programs() -> impl Iterator<Item = Program> {
    (0..300).map(|seed| {
        let p = if seed % 3 == 0 {
            random_program(31_000 + seed, 3, 8, MIXED)
        } else {
            let shape = ProgramShape {
                classical: 0.0,
                ..MIXED
            };
            random_program(31_000 + seed, 6, 8, shape)
        };
        let renamed = eliminate_classical_negation(&p).unwrap().0;
        assert!(renamed.atoms().len() <= 6);
        renamed
    })
}

#[test]
fn stable_models_match_oracle() {
    for p in positive_literal_programs() {
        assert_eq!(
            as_set(stable_atom_sets(&p, &L).unwrap()),
            stable_models(&p),
            "{p}"
        );
    }
}

#[test]
fn disjunctive_translation_preserves_stable_models() {
    for p in positive_literal_programs() {
        let dt = translate_disjunctive_to_default(&p).unwrap();
        let got = as_set(extension_atom_sets(&dt, &p.atoms(), &L).unwrap());
        assert_eq!(got, stable_models(&p), "{p}");
    }
}

#[test]
fn normal_translation_preserves_stable_models() {
    for seed in 0..300 {
        let p = random_program(41_000 + seed, 6, 8, ProgramShape::NORMAL);
        let dt = translate_normal_to_default(&p).unwrap();
        let got = as_set(extension_atom_sets(&dt, &p.atoms(), &L).unwrap());
        assert_eq!(got, stable_models(&p), "{p}");
    }
}

#[test]
fn translations_reject_out_of_fragment_programs() {
    let disjunctive = parse_program("a | b.\n").unwrap();
    assert!(translate_normal_to_default(&disjunctive).is_err());
    let classical = parse_program("-a :- not b.\n").unwrap();
    assert!(translate_normal_to_default(&classical).is_err());
    assert!(translate_disjunctive_to_default(&classical).is_err());
}

#[test]
fn answer_sets_are_fixpoints_and_an_antichain() {
    for seed in 0..200 {
        let p = random_program(51_000 + seed, 5, 7, MIXED);
        let sets = answer_sets(&p, &L).unwrap();
        for x in &sets {
            let r = reduct(&p, x);
            assert!(
                answer_sets_positive(&r, &L).unwrap().contains(x),
                "{p} / {x}"
            );
        }
        for x in &sets {
            for y in &sets {
                if let (LiteralSet::Consistent(a), LiteralSet::Consistent(b)) = (x, y) {
                    assert!(a == b || !a.is_subset(b), "{p}: {x} ⊂ {y}");
                }
            }
        }
    }
}

#[test]
fn renaming_round_trips_answer_sets() {
    for seed in 0..200 {
        let p = random_program(61_000 + seed, 5, 7, MIXED);
        let (renamed, table) = eliminate_classical_negation(&p).unwrap();
        assert!(!renamed.has_classical_negation());
        let restored =
            restore_answer_sets(&answer_sets(&renamed, &L).unwrap(), &table, &p, &L).unwrap();
        let direct: BTreeSet<_> = answer_sets(&p, &L).unwrap().into_iter().collect();
        assert_eq!(restored.into_iter().collect::<BTreeSet<_>>(), direct, "{p}");
    }
}

#[test]
fn contradictory_program_has_lit() {
    let p = parse_program("a.\n-a.\n").unwrap();
    assert_eq!(answer_sets(&p, &L).unwrap(), vec![LiteralSet::All]);
    let q = parse_formula("b").unwrap();
    assert!(lp_cautious(&p, &q, &L).unwrap());
    assert!(lp_brave(&p, &q, &L).unwrap());
}

#[test]
fn interpolation_sweeps() {
    for family in [Family::LpCautious, Family::LpBrave] {
        let reports = verify(&GenSpec::new(family, 6), 150, &L, Mode::default()).unwrap();
        let s = Summary::of_trials(&reports);
        assert_eq!(s.fail, 0, "{family}: {s}");
        assert_eq!(s.skipped, 0, "{family}: {s}");
        assert!(s.non_vacuous_rate() >= 0.2, "{family}: {s}");
    }
}

#[test]
fn brave_pairs_separate_heads_and_bodies() {
    for inst in generate(&GenSpec::new(Family::LpBrave, 8), 60).unwrap() {
        let Instance::ProgramPair { p1, p2, .. } = inst else {
            panic!("pair family")
        };
        let heads: BTreeSet<Atom> = p2.head_literals().into_iter().map(|l| l.atom).collect();
        let bodies: BTreeSet<Atom> = p1.body_literals().into_iter().map(|l| l.atom).collect();
        assert!(heads.is_disjoint(&bodies), "{p1} / {p2}");
    }
}
