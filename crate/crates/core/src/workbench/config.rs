use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::programs::Disjointness;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "NMTERP_CONFIG";

/// Instance families, one per checked result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "circ-T-gamma")]
    CircTGamma,
    #[serde(rename = "circ-gamma-T")]
    CircGammaT,
    #[serde(rename = "circ-between")]
    CircBetween,
    #[serde(rename = "circ-interp-1")]
    CircInterp1,
    #[serde(rename = "circ-interp-2")]
    CircInterp2,
    #[serde(rename = "dl-cautious-1")]
    DlCautious1,
    #[serde(rename = "dl-cautious-2")]
    DlCautious2,
    #[serde(rename = "dl-ext-interp")]
    DlExtInterp,
    #[serde(rename = "dl-reverse")]
    DlReverse,
    #[serde(rename = "dl-brave")]
    DlBrave,
    #[serde(rename = "dl-turner-split")]
    DlTurnerSplit,
    #[serde(rename = "lp-cautious")]
    LpCautious,
    #[serde(rename = "lp-brave")]
    LpBrave,
    #[serde(rename = "craig")]
    Craig,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::CircTGamma,
        Family::CircGammaT,
        Family::CircBetween,
        Family::CircInterp1,
        Family::CircInterp2,
        Family::DlCautious1,
        Family::DlCautious2,
        Family::DlExtInterp,
        Family::DlReverse,
        Family::DlBrave,
        Family::DlTurnerSplit,
        Family::LpCautious,
        Family::LpBrave,
        Family::Craig,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CircTGamma => "circ-T-gamma",
            Family::CircGammaT => "circ-gamma-T",
            Family::CircBetween => "circ-between",
            Family::CircInterp1 => "circ-interp-1",
            Family::CircInterp2 => "circ-interp-2",
            Family::DlCautious1 => "dl-cautious-1",
            Family::DlCautious2 => "dl-cautious-2",
            Family::DlExtInterp => "dl-ext-interp",
            Family::DlReverse => "dl-reverse",
            Family::DlBrave => "dl-brave",
            Family::DlTurnerSplit => "dl-turner-split",
            Family::LpCautious => "lp-cautious",
            Family::LpBrave => "lp-brave",
            Family::Craig => "craig",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts the canonical names plus `γ` spellings (`circ-T-γ`).
    fn from_str(s: &str) -> Result<Family> {
        let canonical = s.replace('γ', "gamma");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == canonical)
            .ok_or_else(|| Error::Config(format!("unknown family `{s}`")))
    }
}

/// Relative weights of the connectives drawn by the formula generator.
///
/// Implications and conjunctions dominate so that queries are entailed often
/// enough for sweeps to stay mostly non-vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormulaWeights {
    pub literal: u32,
    pub implies: u32,
    pub and: u32,
    pub or: u32,
    pub not: u32,
    pub iff: u32,
}

impl Default for FormulaWeights {
    fn default() -> Self {
        FormulaWeights {
            literal: 4,
            implies: 3,
            and: 3,
            or: 2,
            not: 1,
            iff: 1,
        }
    }
}

/// Caps, budgets and generator knobs, loadable from a `key = value` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub max_atoms: usize,
    pub max_formulas: usize,
    pub max_defaults: usize,
    pub max_rules: usize,
    pub max_formula_depth: usize,
    /// Resampling attempts per instance before giving up.
    pub budget: usize,
    /// Smallest acceptable share of non-vacuous verdicts in a sweep.
    pub min_non_vacuous: f64,
    pub disjointness: Disjointness,
    pub weights: FormulaWeights,
    pub limits_atoms: usize,
    pub limits_defaults: usize,
    pub limits_program_atoms: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_atoms: 5,
            max_formulas: 3,
            max_defaults: 4,
            max_rules: 6,
            max_formula_depth: 2,
            budget: 500,
            min_non_vacuous: 0.2,
            disjointness: Disjointness::Atoms,
            weights: FormulaWeights::default(),
            limits_atoms: Limits::DEFAULT.max_atoms,
            limits_defaults: Limits::DEFAULT.max_defaults,
            limits_program_atoms: Limits::DEFAULT.max_program_atoms,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value `{value}` for `{key}`")))
}

impl Config {
    /// Sets one key; unknown keys are an error.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "max_atoms" => self.max_atoms = parse_value(key, v)?,
            "max_formulas" => self.max_formulas = parse_value(key, v)?,
            "max_defaults" => self.max_defaults = parse_value(key, v)?,
            "max_rules" => self.max_rules = parse_value(key, v)?,
            "max_formula_depth" => self.max_formula_depth = parse_value(key, v)?,
            "budget" => self.budget = parse_value(key, v)?,
            "min_non_vacuous" => self.min_non_vacuous = parse_value(key, v)?,
            "disjointness" => self.disjointness = v.parse()?,
            "weight_literal" => self.weights.literal = parse_value(key, v)?,
            "weight_implies" => self.weights.implies = parse_value(key, v)?,
            "weight_and" => self.weights.and = parse_value(key, v)?,
            "weight_or" => self.weights.or = parse_value(key, v)?,
            "weight_not" => self.weights.not = parse_value(key, v)?,
            "weight_iff" => self.weights.iff = parse_value(key, v)?,
            "limits_atoms" => self.limits_atoms = parse_value(key, v)?,
            "limits_defaults" => self.limits_defaults = parse_value(key, v)?,
            "limits_program_atoms" => self.limits_program_atoms = parse_value(key, v)?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    /// The file named by `NMTERP_CONFIG`, or the defaults when it is unset.
    pub fn from_env() -> Result<Config> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Config::load(Path::new(&path)),
            None => Ok(Config::default()),
        }
    }

    pub fn limits(&self) -> Limits {
        Limits {
            max_atoms: self.limits_atoms,
            max_defaults: self.limits_defaults,
            max_program_atoms: self.limits_program_atoms,
        }
    }

    pub fn spec(&self, family: Family, seed: u64) -> GenSpec {
        GenSpec {
            seed,
            family,
            max_atoms: self.max_atoms,
            max_formulas: self.max_formulas,
            max_defaults: self.max_defaults,
            max_rules: self.max_rules,
            max_formula_depth: self.max_formula_depth,
            budget: self.budget,
            disjointness: self.disjointness,
            weights: self.weights,
        }
    }
}

impl FromStr for Config {
    type Err = Error;

    /// One `key = value` per line; `#` starts a comment.
    fn from_str(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            cfg.set(key, value)?;
        }
        Ok(cfg)
    }
}

/// Everything that determines an instance stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub family: Family,
    pub max_atoms: usize,
    pub max_formulas: usize,
    pub max_defaults: usize,
    pub max_rules: usize,
    pub max_formula_depth: usize,
    pub budget: usize,
    pub disjointness: Disjointness,
    pub weights: FormulaWeights,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> GenSpec {
        Config::default().spec(family, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            let json = serde_json::to_string(&f).unwrap();
            assert_eq!(json, format!("\"{}\"", f.name()));
        }
        assert_eq!("circ-T-γ".parse::<Family>().unwrap(), Family::CircTGamma);
        assert_eq!("circ-γ-T".parse::<Family>().unwrap(), Family::CircGammaT);
        assert!("circ".parse::<Family>().is_err());
    }

    #[test]
    fn key_value_file() {
        let cfg: Config = "# caps\nmax_atoms = 4\nbudget=10 # inline\ndisjointness = literals\n"
            .parse()
            .unwrap();
        assert_eq!(cfg.max_atoms, 4);
        assert_eq!(cfg.budget, 10);
        assert_eq!(cfg.disjointness, Disjointness::Literals);
        assert_eq!(cfg.max_rules, Config::default().max_rules);
        assert!("max_atoms".parse::<Config>().is_err());
        assert!("colour = red".parse::<Config>().is_err());
        assert!("max_atoms = lots".parse::<Config>().is_err());
    }
}
