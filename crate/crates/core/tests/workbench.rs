use nmterp_core::logic::Theory;
use nmterp_core::workbench::{
    from_json_lines, generate, golden, replay, to_json_lines, verify, Config, Family, GenSpec,
    Instance, Mode,
};
use nmterp_core::{Error, Limits, Verdict};

const L: Limits = Limits::DEFAULT;

#[test]
fn identical_specs_give_identical_reports() {
    for family in Family::ALL {
        let spec = GenSpec::new(family, 21);
        let a = to_json_lines(&verify(&spec, 30, &L, Mode::Parallel).unwrap());
        let b = to_json_lines(&verify(&spec, 30, &L, Mode::Sequential).unwrap());
        let c = to_json_lines(&verify(&spec, 30, &L, Mode::Parallel).unwrap());
        assert_eq!(a, b, "{family}");
        assert_eq!(a, c, "{family}");
    }
}

#[test]
fn different_seeds_differ() {
    let a = generate(&GenSpec::new(Family::Craig, 1), 10).unwrap();
    let b = generate(&GenSpec::new(Family::Craig, 2), 10).unwrap();
    assert_ne!(a, b);
}

#[test]
fn reports_round_trip_and_replay() {
    for family in Family::ALL {
        let reports = verify(&GenSpec::new(family, 1), 40, &L, Mode::default()).unwrap();
        let parsed = from_json_lines(&to_json_lines(&reports)).unwrap();
        assert_eq!(parsed, reports);
        for t in parsed.iter().filter(|t| t.report.verdict == Verdict::Fail) {
            assert_eq!(replay(t, &L).verdict, Verdict::Fail);
        }
    }
}

#[test]
fn circ_between_instances_meet_side_conditions() {
    for inst in generate(&GenSpec::new(Family::CircBetween, 1), 10).unwrap() {
        let Instance::CircPair {
            t1,
            t2,
            minimize,
            vary,
            ..
        } = inst
        else {
            panic!("pair family")
        };
        assert!(minimize.is_subset(Theory::new(t1).signature()));
        assert!(Theory::new(t2)
            .signature()
            .is_subset(&minimize.union(&vary)));
    }
}

#[test]
fn budget_exhaustion_is_an_error() {
    let mut spec = GenSpec::new(Family::Craig, 1);
    spec.budget = 0;
    assert!(matches!(
        verify(&spec, 3, &L, Mode::Sequential),
        Err(Error::BudgetExhausted { .. })
    ));
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("nmterp-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("caps.conf");
    std::fs::write(&path, "max_atoms = 4\nbudget = 50\nweight_iff = 0\n").unwrap();
    let mut cfg = Config::load(&path).unwrap();
    assert_eq!(cfg.max_atoms, 4);
    assert_eq!(cfg.budget, 50);
    cfg.set("max_atoms", "3").unwrap();
    assert_eq!(cfg.spec(Family::Craig, 9).max_atoms, 3);
    assert!(cfg.set("nonsense", "1").is_err());
    assert!(cfg.set("max_atoms", "many").is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn golden_suite_confirms() {
    let cases = golden(&L).unwrap();
    assert_eq!(cases.len(), 3);
    for c in &cases {
        assert!(c.confirmed(), "{c:?}");
    }
}
