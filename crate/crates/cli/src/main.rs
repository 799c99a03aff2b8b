use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use nmterp_core::circumscription::{
    check_circ_interp1, check_circ_interp2, circ_entails, interpolate_circ1, interpolate_circ2,
    minimal_models, parse_atom_list, parse_circ_problem, CircProblem,
};
use nmterp_core::default_logic::{
    brave_entails, cautious_entails, check_dl_cautious, extensions, parse_default_theory,
    CautiousVariant,
};
use nmterp_core::logic::{entails, models, parse_formula, parse_theory, Formula, Theory};
use nmterp_core::programs::{
    answer_sets, check_lp_brave, check_lp_cautious, eliminate_classical_negation, lp_brave,
    lp_cautious, lp_interpolant_brave, lp_interpolant_cautious, parse_program_with,
    translate_disjunctive_to_default, translate_normal_to_default, Dialect, Disjointness, Program,
};
use nmterp_core::workbench::{
    check_craig, golden, to_json_lines, verify, Config, Family, Mode, Summary,
};
use nmterp_core::{Error, Limits, TheoremReport, Verdict};

#[derive(Parser)]
#[command(
    name = "nmterp",
    version,
    about = "Nonmonotonic reasoning and interpolation workbench"
)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

/// Config file plus per-key overrides; flags win over the file.
#[derive(Args)]
struct Caps {
    /// key = value config file (default: $NMTERP_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    max_atoms: Option<usize>,
    #[arg(long, global = true)]
    max_formulas: Option<usize>,
    #[arg(long, global = true)]
    max_defaults: Option<usize>,
    #[arg(long, global = true)]
    max_rules: Option<usize>,
    #[arg(long, global = true)]
    max_formula_depth: Option<usize>,
    /// Resampling attempts per generated instance
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// head/body disjointness for lp-brave: atoms or literals
    #[arg(long, global = true)]
    disjointness: Option<Disjointness>,
}

impl Caps {
    fn config(&self) -> nmterp_core::Result<Config> {
        let mut cfg = match &self.config {
            Some(path) => Config::load(path)?,
            None => Config::from_env()?,
        };
        let overrides = [
            ("max_atoms", self.max_atoms),
            ("max_formulas", self.max_formulas),
            ("max_defaults", self.max_defaults),
            ("max_rules", self.max_rules),
            ("max_formula_depth", self.max_formula_depth),
            ("budget", self.budget),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, &v.to_string())?;
            }
        }
        if let Some(d) = self.disjointness {
            cfg.disjointness = d;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the models of a theory over its own signature
    Models { file: PathBuf },
    /// Classical entailment
    Entail {
        file: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Minimal models and circumscriptive entailment
    Circ {
        file: PathBuf,
        /// Minimized atoms (adds to any @minimize lines)
        #[arg(long)]
        minimize: Option<String>,
        /// Varying atoms (adds to any @vary lines)
        #[arg(long)]
        vary: Option<String>,
        #[arg(long)]
        query: Option<String>,
    },
    /// Construct and check an interpolant
    Interpolate {
        #[command(subcommand)]
        kind: Interpolate,
    },
    /// Default-theory extensions
    Extensions {
        file: PathBuf,
        #[arg(long, conflicts_with = "brave")]
        cautious: Option<String>,
        #[arg(long)]
        brave: Option<String>,
    },
    /// Answer sets of a program
    Stable {
        file: PathBuf,
        #[arg(long, conflicts_with = "brave")]
        cautious: Option<String>,
        #[arg(long)]
        brave: Option<String>,
        /// Accept rules with an empty head
        #[arg(long)]
        constraints: bool,
    },
    /// Translate a program
    Translate {
        #[arg(value_enum)]
        kind: Translation,
        file: PathBuf,
    },
    /// Generate seeded instances of a family and check them
    Verify {
        family: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Stream one JSON report per line
        #[arg(long)]
        json: bool,
        /// Check trials one after another
        #[arg(long)]
        sequential: bool,
    },
    /// Re-check the hard-coded counterexamples
    Golden,
}

#[derive(Subcommand)]
enum Interpolate {
    /// Craig interpolant of ALPHA ⊨ BETA
    Craig { alpha: String, beta: String },
    /// Interpolant over L(φ) ∪ P of a circumscription file
    Circ1 {
        file: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Interpolant over L2 ∪ P; needs P ∪ Q ⊇ L(T)
    Circ2 {
        file: PathBuf,
        /// Comma-separated target vocabulary
        #[arg(long)]
        l2: String,
        #[arg(long)]
        query: Option<String>,
    },
    /// First cautious default-logic construction
    Dl1 {
        file: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Second cautious default-logic construction
    Dl2 {
        file: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Cautious answer-set interpolant
    LpCautious {
        file: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Brave answer-set interpolant between two programs
    LpBrave {
        p1: PathBuf,
        p2: PathBuf,
        #[arg(long)]
        query: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Translation {
    /// Normal program to default theory
    Gl,
    /// Disjunctive program to default theory
    Si,
    /// Replace `-a` by fresh atoms
    Rename,
}

/// Exit 1: a checked property failed.
struct PropertyFailure;

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn formula(text: &str) -> anyhow::Result<Formula> {
    parse_formula(text).with_context(|| format!("in query `{text}`"))
}

fn program(path: &Path, constraints: bool) -> anyhow::Result<Program> {
    let dialect = Dialect {
        allow_constraints: constraints,
    };
    parse_program_with(&read(path)?, dialect).with_context(|| format!("parsing {}", path.display()))
}

fn print_report(r: &TheoremReport) -> Result<(), PropertyFailure> {
    println!("{}", serde_json::to_string(r).expect("reports serialize"));
    if r.verdict == Verdict::Fail {
        Err(PropertyFailure)
    } else {
        Ok(())
    }
}

type Outcome = anyhow::Result<Result<(), PropertyFailure>>;

fn run(cli: Cli) -> Outcome {
    let cfg = cli.caps.config()?;
    let limits = cfg.limits();
    match cli.command {
        Command::Models { file } => {
            let t = Theory::new(parse_theory(&read(&file)?)?);
            let ms = models(&t, t.signature(), &limits)?;
            println!("{} model(s) over {}", ms.len(), t.signature());
            for m in ms {
                println!("{m}");
            }
        }
        Command::Entail { file, query } => {
            let t = Theory::new(parse_theory(&read(&file)?)?);
            println!("entailed: {}", entails(&t, &formula(&query)?, &limits)?);
        }
        Command::Circ {
            file,
            minimize,
            vary,
            query,
        } => {
            let mut cp = parse_circ_problem(&read(&file)?)?;
            if minimize.is_some() || vary.is_some() {
                let p = match minimize {
                    Some(s) => cp.minimize().union(&parse_atom_list(&s, 1)?),
                    None => cp.minimize().clone(),
                };
                let q = match vary {
                    Some(s) => cp.vary().union(&parse_atom_list(&s, 1)?),
                    None => cp.vary().clone(),
                };
                cp = CircProblem::new(cp.theory().clone(), p, q)?;
            }
            println!("{cp}");
            println!("minimal models: {}", minimal_models(&cp, &limits)?);
            if let Some(q) = query {
                println!("entailed: {}", circ_entails(&cp, &formula(&q)?, &limits)?);
            }
        }
        Command::Interpolate { kind } => return interpolate(kind, &cfg, &limits),
        Command::Extensions {
            file,
            cautious,
            brave,
        } => {
            let dt = parse_default_theory(&read(&file)?)?;
            let exts = extensions(&dt, &limits)?;
            println!("{} extension(s)", exts.len());
            for e in &exts {
                println!("{e}  generated by {:?}", e.generating);
            }
            if let Some(q) = cautious {
                println!(
                    "cautious: {}",
                    cautious_entails(&dt, &formula(&q)?, &limits)?
                );
            }
            if let Some(q) = brave {
                println!("brave: {}", brave_entails(&dt, &formula(&q)?, &limits)?);
            }
        }
        Command::Stable {
            file,
            cautious,
            brave,
            constraints,
        } => {
            let p = program(&file, constraints)?;
            let sets = answer_sets(&p, &limits)?;
            println!("{} answer set(s)", sets.len());
            for x in &sets {
                println!("{x}");
            }
            if let Some(q) = cautious {
                println!("cautious: {}", lp_cautious(&p, &formula(&q)?, &limits)?);
            }
            if let Some(q) = brave {
                println!("brave: {}", lp_brave(&p, &formula(&q)?, &limits)?);
            }
        }
        Command::Translate { kind, file } => {
            let p = program(&file, false)?;
            match kind {
                Translation::Gl => print!("{}", translate_normal_to_default(&p)?),
                Translation::Si => print!("{}", translate_disjunctive_to_default(&p)?),
                Translation::Rename => {
                    let (renamed, table) = eliminate_classical_negation(&p)?;
                    print!("{renamed}");
                    for (orig, fresh) in table.pairs() {
                        println!("% -{orig} => {fresh}");
                    }
                }
            }
        }
        Command::Verify {
            family,
            seed,
            trials,
            json,
            sequential,
        } => {
            let family: Family = family.parse()?;
            let mode = if sequential {
                Mode::Sequential
            } else {
                Mode::Parallel
            };
            let reports = verify(&cfg.spec(family, seed), trials, &limits, mode)?;
            let summary = Summary::of_trials(&reports);
            if json {
                print!("{}", to_json_lines(&reports));
            } else {
                for r in reports.iter().filter(|r| r.report.verdict == Verdict::Fail) {
                    println!("FAIL trial {}: {}", r.trial, serde_json::to_string(r)?);
                }
            }
            eprintln!("{family} seed={seed}: {summary}");
            if summary.non_vacuous_rate() < cfg.min_non_vacuous {
                eprintln!(
                    "warning: non-vacuous rate below {:.0}%",
                    100.0 * cfg.min_non_vacuous
                );
            }
            if summary.fail > 0 {
                return Ok(Err(PropertyFailure));
            }
        }
        Command::Golden => {
            let mut ok = true;
            for case in golden(&limits)? {
                let mark = if case.confirmed() {
                    "confirmed"
                } else {
                    "MISMATCH"
                };
                println!("{mark}: {}", case.name);
                for e in &case.expectations {
                    println!("  {} = {} (expected {})", e.claim, e.observed, e.expected);
                }
                ok &= case.confirmed();
            }
            if !ok {
                return Ok(Err(PropertyFailure));
            }
        }
    }
    Ok(Ok(()))
}

fn interpolate(kind: Interpolate, cfg: &Config, limits: &Limits) -> Outcome {
    // the constructors that print their own γ first
    let printed = matches!(
        kind,
        Interpolate::Circ1 { .. }
            | Interpolate::Circ2 { .. }
            | Interpolate::LpCautious { .. }
            | Interpolate::LpBrave { .. }
    );
    let report = match kind {
        Interpolate::Craig { alpha, beta } => {
            check_craig(&formula(&alpha)?, &formula(&beta)?, limits)?
        }
        Interpolate::Circ1 { file, query } => {
            let cp = parse_circ_problem(&read(&file)?)?;
            let phi = formula(&query)?;
            println!("gamma: {}", interpolate_circ1(&cp, &phi, limits)?);
            check_circ_interp1(&cp, &phi, limits)?
        }
        Interpolate::Circ2 { file, l2, query } => {
            let cp = parse_circ_problem(&read(&file)?)?;
            let l2 = parse_atom_list(&l2, 1)?;
            println!("gamma: {}", interpolate_circ2(&cp, &l2, limits)?);
            match query {
                Some(q) => check_circ_interp2(&cp, &l2, &formula(&q)?, limits)?,
                None => return Ok(Ok(())),
            }
        }
        Interpolate::Dl1 { file, query } => {
            let dt = parse_default_theory(&read(&file)?)?;
            check_dl_cautious(&dt, &formula(&query)?, CautiousVariant::One, limits)?
        }
        Interpolate::Dl2 { file, query } => {
            let dt = parse_default_theory(&read(&file)?)?;
            check_dl_cautious(&dt, &formula(&query)?, CautiousVariant::Two, limits)?
        }
        Interpolate::LpCautious { file, query } => {
            let p = program(&file, false)?;
            let phi = formula(&query)?;
            println!("gamma: {}", lp_interpolant_cautious(&p, &phi, limits)?);
            check_lp_cautious(&p, &phi, limits)?
        }
        Interpolate::LpBrave { p1, p2, query } => {
            let (p1, p2) = (program(&p1, false)?, program(&p2, false)?);
            let phi = formula(&query)?;
            let mode = cfg.disjointness;
            println!(
                "gamma: {}",
                lp_interpolant_brave(&p1, &p2, &phi, mode, limits)?
            );
            check_lp_brave(&p1, &p2, &phi, mode, limits)?
        }
    };
    for key in ["gamma", "gamma1", "gamma2", "lambda"] {
        if let Some(w) = report.witness.get(key).filter(|_| !printed) {
            println!("{key}: {w}");
        }
    }
    Ok(print_report(&report))
}

/// Parse and usage problems exit 2; everything else the engines reject exits 1.
fn exit_code(err: &anyhow::Error) -> u8 {
    let usage = err.chain().any(|cause| {
        cause.is::<std::io::Error>()
            || matches!(
                cause.downcast_ref::<Error>(),
                Some(Error::Syntax { .. } | Error::InvalidAtom(_) | Error::Config(_))
            )
    });
    if usage {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(PropertyFailure)) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
