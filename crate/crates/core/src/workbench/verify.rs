use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::{Family, GenSpec};
use super::generate::{generate_one, Instance};
use super::run::{map_trials, Mode};
use crate::circumscription::{
    check_circ_gamma_t, check_circ_interp1, check_circ_interp2, check_circ_t_gamma,
    check_interpolation_between_theories, CircProblem,
};
use crate::default_logic::{
    check_dl_brave, check_dl_cautious, check_turner_splitting, extension_interpolation,
    reverse_extension_check, CautiousVariant, DefaultTheory,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{craig_interpolant, implies, Formula, Theory};
use crate::programs::{check_lp_brave, check_lp_cautious};
use crate::report::{TheoremReport, Verdict};

/// One line of a sweep: the instance and the verdict it received.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub family: Family,
    pub seed: u64,
    pub trial: u64,
    pub instance: Instance,
    #[serde(flatten)]
    pub report: TheoremReport,
}

/// `γ = α` with every atom outside `L(β)` forgotten.
pub fn check_craig(alpha: &Formula, beta: &Formula, limits: &Limits) -> Result<TheoremReport> {
    const NAME: &str = "craig";
    if !implies(alpha, beta, limits)? {
        return Ok(TheoremReport::new(NAME).antecedent(false).finish());
    }
    let gamma = craig_interpolant(alpha, beta, limits)?;
    let shared = alpha.signature().intersection(&beta.signature());
    Ok(TheoremReport::new(NAME)
        .relation("alpha_entails_gamma", implies(alpha, &gamma, limits)?)
        .relation("gamma_entails_beta", implies(&gamma, beta, limits)?)
        .invariant("gamma_vocabulary", gamma.signature().is_subset(&shared))
        .witness("gamma", gamma)
        .finish())
}

fn theory(fs: &[Formula]) -> Theory {
    Theory::new(fs.to_vec())
}

fn mismatch(family: Family, instance: &Instance) -> Error {
    let kind = serde_json::to_value(instance)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(String::from))
        .unwrap_or_default();
    Error::Config(format!("{family} cannot check a `{kind}` instance"))
}

/// Runs the checker registered for `family` on one instance.
pub fn check(family: Family, instance: &Instance, limits: &Limits) -> Result<TheoremReport> {
    use Family as F;
    match (family, instance) {
        (F::Craig, Instance::Craig { alpha, beta }) => check_craig(alpha, beta, limits),
        (
            F::CircInterp1,
            Instance::Circ {
                theory: t,
                minimize,
                vary,
                query,
                ..
            },
        ) => {
            let cp = CircProblem::new(theory(t), minimize.clone(), vary.clone())?;
            check_circ_interp1(&cp, query, limits)
        }
        (
            F::CircInterp2,
            Instance::Circ {
                theory: t,
                minimize,
                vary,
                query,
                l2,
            },
        ) => {
            let cp = CircProblem::new(theory(t), minimize.clone(), vary.clone())?;
            let l2 = l2.clone().unwrap_or_else(|| query.signature());
            check_circ_interp2(&cp, &l2, query, limits)
        }
        (
            F::CircTGamma | F::CircGammaT | F::CircBetween,
            Instance::CircPair {
                t1,
                t2,
                minimize,
                vary,
                query,
            },
        ) => {
            let run = match family {
                F::CircTGamma => check_circ_t_gamma,
                F::CircGammaT => check_circ_gamma_t,
                _ => check_interpolation_between_theories,
            };
            run(&theory(t1), &theory(t2), minimize, vary, query, limits)
        }
        (
            F::DlCautious1 | F::DlCautious2,
            Instance::Default {
                facts,
                defaults,
                query,
            },
        ) => {
            let dt = DefaultTheory::new(theory(facts), defaults.clone());
            let variant = if family == F::DlCautious1 {
                CautiousVariant::One
            } else {
                CautiousVariant::Two
            };
            check_dl_cautious(&dt, query, variant, limits)
        }
        (
            F::DlExtInterp | F::DlReverse | F::DlBrave,
            Instance::DefaultPair {
                w1,
                d1,
                w2,
                d2,
                query,
            },
        ) => {
            let dt1 = DefaultTheory::new(theory(w1), d1.clone());
            let dt2 = DefaultTheory::new(theory(w2), d2.clone());
            let run = match family {
                F::DlExtInterp => extension_interpolation,
                F::DlReverse => reverse_extension_check,
                _ => check_dl_brave,
            };
            run(&dt1, &dt2, query, limits)
        }
        (F::DlTurnerSplit, Instance::Split { defaults, a }) => {
            check_turner_splitting(defaults, a, limits)
        }
        (F::LpCautious, Instance::Program { program, query }) => {
            check_lp_cautious(program, query, limits)
        }
        (
            F::LpBrave,
            Instance::ProgramPair {
                p1,
                p2,
                query,
                disjointness,
            },
        ) => check_lp_brave(p1, p2, query, *disjointness, limits),
        _ => Err(mismatch(family, instance)),
    }
}

/// Like [`check`], but engine errors become skipped reports carrying the reason.
pub fn check_or_skip(family: Family, instance: &Instance, limits: &Limits) -> TheoremReport {
    check(family, instance, limits)
        .unwrap_or_else(|e| TheoremReport::skipped(family.name(), format!("engine error: {e}")))
}

/// Generates and checks `trials` instances. Budget exhaustion is an error,
/// never a silent skip.
pub fn verify(
    spec: &GenSpec,
    trials: usize,
    limits: &Limits,
    mode: Mode,
) -> Result<Vec<TrialReport>> {
    map_trials(trials, mode, |i| {
        let trial = i as u64;
        let instance = generate_one(spec, trial)?;
        let report = check_or_skip(spec.family, &instance, limits);
        Ok(TrialReport {
            family: spec.family,
            seed: spec.seed,
            trial,
            instance,
            report,
        })
    })
    .into_iter()
    .collect()
}

/// Re-checks the serialized instance of a report.
pub fn replay(report: &TrialReport, limits: &Limits) -> TheoremReport {
    check_or_skip(report.family, &report.instance, limits)
}

pub fn to_json_lines(reports: &[TrialReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

pub fn from_json_lines(text: &str) -> Result<Vec<TrialReport>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| Error::Config(format!("report line {}: {e}", i + 1)))
        })
        .collect()
}

/// Verdict counts of a sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub vacuous: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of<'a, I: IntoIterator<Item = &'a TheoremReport>>(reports: I) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            s.total += 1;
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Vacuous => s.vacuous += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn of_trials(trials: &[TrialReport]) -> Summary {
        Summary::of(trials.iter().map(|t| &t.report))
    }

    /// Share of checked (not skipped) instances whose antecedent held.
    pub fn non_vacuous_rate(&self) -> f64 {
        let checked = self.pass + self.fail + self.vacuous;
        if checked == 0 {
            0.0
        } else {
            (self.pass + self.fail) as f64 / checked as f64
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "total={} pass={} vacuous={} fail={} skipped={} non-vacuous={:.1}%",
            self.total,
            self.pass,
            self.vacuous,
            self.fail,
            self.skipped,
            100.0 * self.non_vacuous_rate()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    const L: Limits = Limits::DEFAULT;

    #[test]
    fn craig_report() {
        let a = parse_formula("p & q").unwrap();
        let b = parse_formula("q | r").unwrap();
        let r = check_craig(&a, &b, &L).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness["gamma"], "q");
        let r = check_craig(&b, &a, &L).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
    }

    #[test]
    fn family_instance_mismatch() {
        let inst = Instance::Craig {
            alpha: Formula::True,
            beta: Formula::True,
        };
        assert!(check(Family::LpBrave, &inst, &L).is_err());
        assert_eq!(
            check_or_skip(Family::LpBrave, &inst, &L).verdict,
            Verdict::Skipped
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let spec = GenSpec::new(Family::DlBrave, 5);
        let a = verify(&spec, 12, &L, Mode::Sequential).unwrap();
        let b = verify(&spec, 12, &L, Mode::Parallel).unwrap();
        assert_eq!(to_json_lines(&a), to_json_lines(&b));
        assert_eq!(from_json_lines(&to_json_lines(&a)).unwrap(), a);
        for t in &a {
            assert_eq!(replay(t, &L), t.report);
        }
    }

    #[test]
    fn summary_counts() {
        let reports = [
            TheoremReport::new("x").finish(),
            TheoremReport::new("x").antecedent(false).finish(),
            TheoremReport::skipped("x", "no"),
        ];
        let s = Summary::of(&reports);
        assert_eq!((s.pass, s.vacuous, s.skipped, s.fail), (1, 1, 1, 0));
        assert!((s.non_vacuous_rate() - 0.5).abs() < 1e-12);
    }
}
