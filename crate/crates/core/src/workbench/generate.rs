//! Seeded random instances. Trial `i` of a spec draws from its own ChaCha
//! stream (family index and `i`) of the spec's seed, so trials are
//! independent and can be generated in any order without changing the stream.

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{Family, FormulaWeights, GenSpec};
use super::text;
use crate::circumscription::{circ_entails, CircProblem};
use crate::default_logic::{
    brave_entails, cautious_entails, splitting_set, strong_disjointness, weak_disjointness,
    DefaultRule, DefaultTheory,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{implies, satisfiable, Atom, Formula, Signature, Theory};
use crate::programs::{
    lp_brave, lp_brave_side_conditions, lp_cautious, Disjointness, Literal, Program, Rule,
};

/// One generated problem. Formulas, defaults and programs serialize in their
/// surface syntax so a report line can be pasted back into the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    Craig {
        alpha: Formula,
        beta: Formula,
    },
    Circ {
        theory: Vec<Formula>,
        minimize: Signature,
        vary: Signature,
        query: Formula,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        l2: Option<Signature>,
    },
    CircPair {
        t1: Vec<Formula>,
        t2: Vec<Formula>,
        minimize: Signature,
        vary: Signature,
        query: Formula,
    },
    Default {
        facts: Vec<Formula>,
        #[serde(with = "text::vec")]
        defaults: Vec<DefaultRule>,
        query: Formula,
    },
    DefaultPair {
        w1: Vec<Formula>,
        #[serde(with = "text::vec")]
        d1: Vec<DefaultRule>,
        w2: Vec<Formula>,
        #[serde(with = "text::vec")]
        d2: Vec<DefaultRule>,
        query: Formula,
    },
    Split {
        #[serde(with = "text::vec")]
        defaults: Vec<DefaultRule>,
        a: Signature,
    },
    Program {
        #[serde(with = "text")]
        program: Program,
        query: Formula,
    },
    ProgramPair {
        #[serde(with = "text")]
        p1: Program,
        #[serde(with = "text")]
        p2: Program,
        query: Formula,
        disjointness: Disjointness,
    },
}

/// `a, b, c, …, z, a1, b1, …`
pub fn atom_pool(n: usize) -> Vec<Atom> {
    (0..n)
        .map(|i| {
            let letter = (b'a' + (i % 26) as u8) as char;
            let name = match i / 26 {
                0 => letter.to_string(),
                k => format!("{letter}{k}"),
            };
            Atom::new(&name).expect("generated names are valid")
        })
        .collect()
}

/// Shape knobs for random programs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProgramShape {
    /// Chance that a rule gets a second head literal.
    pub disjunction: f64,
    /// Chance that a literal is classically negated.
    pub classical: f64,
}

impl ProgramShape {
    pub const NORMAL: ProgramShape = ProgramShape {
        disjunction: 0.0,
        classical: 0.0,
    };
}

/// Random formulas, theories, defaults and programs from one ChaCha stream.
pub struct Sampler {
    rng: ChaCha8Rng,
    weights: FormulaWeights,
    depth: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler::with_weights(seed, FormulaWeights::default(), 2)
    }

    pub fn with_weights(seed: u64, weights: FormulaWeights, depth: usize) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            weights,
            depth,
        }
    }

    /// The sampler for trial `trial` of `spec`.
    pub fn for_trial(spec: &GenSpec, trial: u64) -> Sampler {
        let mut s = Sampler::with_weights(spec.seed, spec.weights, spec.max_formula_depth);
        let family = Family::ALL
            .iter()
            .position(|f| *f == spec.family)
            .unwrap_or(0) as u64;
        s.rng.set_stream(family << 40 | trial);
        s
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p.clamp(0.0, 1.0))
    }

    /// Uniform in `lo..=hi`; `hi < lo` gives `lo`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        if hi <= lo {
            lo
        } else {
            self.rng.gen_range(lo..=hi)
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty choice")
    }

    /// Each atom independently with probability `p`.
    pub fn subset(&mut self, atoms: &[Atom], p: f64) -> Vec<Atom> {
        atoms.iter().filter(|_| self.chance(p)).cloned().collect()
    }

    pub fn nonempty_subset(&mut self, atoms: &[Atom], p: f64) -> Vec<Atom> {
        let mut s = self.subset(atoms, p);
        if s.is_empty() && !atoms.is_empty() {
            s.push(self.pick(atoms).clone());
        }
        s
    }

    pub fn literal(&mut self, atoms: &[Atom]) -> Formula {
        if atoms.is_empty() {
            return if self.chance(0.5) {
                Formula::True
            } else {
                Formula::False
            };
        }
        let a = Formula::Atom(self.pick(atoms).clone());
        if self.chance(0.3) {
            a.not()
        } else {
            a
        }
    }

    pub fn formula(&mut self, atoms: &[Atom], depth: usize) -> Formula {
        if depth == 0 || atoms.is_empty() {
            return self.literal(atoms);
        }
        let w = self.weights;
        let table = [w.literal, w.implies, w.and, w.or, w.not, w.iff];
        let choice = match WeightedIndex::new(table) {
            Ok(dist) => dist.sample(&mut self.rng),
            Err(_) => 0,
        };
        if choice == 0 {
            return self.literal(atoms);
        }
        let mut sub = || self.formula(atoms, depth - 1);
        match choice {
            1 => sub().implies(sub()),
            2 => sub().and(sub()),
            3 => sub().or(sub()),
            4 => sub().not(),
            _ => sub().iff(sub()),
        }
    }

    /// Formula at the configured depth.
    pub fn any_formula(&mut self, atoms: &[Atom]) -> Formula {
        let d = self.range(0, self.depth);
        self.formula(atoms, d)
    }

    /// Small query: a literal, or one connective over two literals.
    pub fn query(&mut self, atoms: &[Atom]) -> Formula {
        let d = self.range(0, self.depth.min(1));
        self.formula(atoms, d)
    }

    pub fn theory(&mut self, atoms: &[Atom], min: usize, max: usize) -> Vec<Formula> {
        let n = self.range(min, max);
        (0..n).map(|_| self.any_formula(atoms)).collect()
    }

    /// A default whose prerequisite, justifications and consequent draw on the
    /// given atoms. Normal when the consequent fits the justification atoms
    /// and a coin says so.
    pub fn default_rule(&mut self, pre: &[Atom], just: &[Atom], cons: &[Atom]) -> DefaultRule {
        let consequent = if self.chance(0.6) {
            self.literal(cons)
        } else {
            self.formula(cons, 1)
        };
        let prerequisite = if pre.is_empty() || self.chance(0.4) {
            Formula::True
        } else {
            self.query(pre)
        };
        let fits = consequent.signature().iter().all(|a| just.contains(a));
        let justifications = if fits && self.chance(0.5) {
            vec![consequent.clone()]
        } else if just.is_empty() {
            Vec::new()
        } else {
            let n = self.range(0, 2);
            (0..n).map(|_| self.literal(just)).collect()
        };
        DefaultRule::new(prerequisite, justifications, consequent)
    }

    pub fn defaults(
        &mut self,
        min: usize,
        max: usize,
        pre: &[Atom],
        just: &[Atom],
        cons: &[Atom],
    ) -> Vec<DefaultRule> {
        let n = self.range(min, max);
        (0..n).map(|_| self.default_rule(pre, just, cons)).collect()
    }

    fn program_literal(&mut self, atoms: &[Atom], shape: ProgramShape) -> Literal {
        let atom = self.pick(atoms).clone();
        if self.chance(shape.classical) {
            Literal::neg(atom)
        } else {
            Literal::pos(atom)
        }
    }

    pub fn rule(&mut self, heads: &[Atom], bodies: &[Atom], shape: ProgramShape) -> Rule {
        let mut head = vec![self.program_literal(heads, shape)];
        if self.chance(shape.disjunction) {
            head.push(self.program_literal(heads, shape));
        }
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        if !bodies.is_empty() {
            for _ in 0..self.range(0, 2) {
                pos.push(self.program_literal(bodies, shape));
            }
            for _ in 0..self.range(0, 2) {
                neg.push(self.program_literal(bodies, shape));
            }
        }
        Rule::new(head, pos, neg)
    }

    pub fn program(
        &mut self,
        heads: &[Atom],
        bodies: &[Atom],
        min: usize,
        max: usize,
        shape: ProgramShape,
    ) -> Program {
        let n = self.range(min, max);
        Program::new((0..n).map(|_| self.rule(heads, bodies, shape)).collect())
    }

    /// A random split of `atoms` into two non-empty parts (given two atoms or more).
    pub fn partition(&mut self, atoms: &[Atom]) -> (Vec<Atom>, Vec<Atom>) {
        let mut shuffled = atoms.to_vec();
        shuffled.shuffle(&mut self.rng);
        let k = self.range(1, atoms.len().saturating_sub(1).max(1));
        let right = shuffled.split_off(k.min(shuffled.len()));
        (shuffled, right)
    }

    /// Draws a few candidate queries and, half of the time, prefers one whose
    /// antecedent holds, keeping sweeps from degenerating into vacuous passes.
    fn biased_query<F>(&mut self, atoms: &[Atom], mut antecedent: F) -> Result<Formula>
    where
        F: FnMut(&Formula) -> Result<bool>,
    {
        const CANDIDATES: usize = 6;
        let qs: Vec<Formula> = (0..CANDIDATES).map(|_| self.query(atoms)).collect();
        if self.chance(0.5) {
            for q in &qs {
                if antecedent(q)? {
                    return Ok(q.clone());
                }
            }
        }
        Ok(qs[0].clone())
    }
}

fn sig(atoms: &[Atom]) -> Signature {
    atoms.iter().cloned().collect()
}

fn theory_sig(fs: &[Formula]) -> Signature {
    Theory::new(fs.to_vec()).signature().clone()
}

fn atoms_of(s: &Signature) -> Vec<Atom> {
    s.atoms()
}

const LIMITS: Limits = Limits::DEFAULT;

fn circ_pair(s: &mut Sampler, spec: &GenSpec, cover_t2: bool) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(3, spec.max_atoms.max(3)));
    let (left, right) = s.partition(&pool);
    // the shared part keeps T2 talking about T1's atoms
    let shared = s.nonempty_subset(&left, 0.5);
    let l2: Vec<Atom> = right.iter().chain(&shared).cloned().collect();
    let t1 = s.theory(&left, 1, spec.max_formulas);
    let t2 = s.theory(&l2, 1, spec.max_formulas);
    let (s1, s2) = (theory_sig(&t1), theory_sig(&t2));
    let both = Formula::conjoin(t1.iter().chain(&t2).cloned());
    if s1.is_empty() || !satisfiable(&both, &LIMITS)? {
        return Ok(None);
    }
    let p = sig(&s.nonempty_subset(&atoms_of(&s1), 0.4));
    let rest = s1.union(&s2).difference(&p);
    let mut q = sig(&s.subset(&atoms_of(&rest), 0.5));
    if cover_t2 {
        q = q.union(&s2.difference(&p));
    }
    if !p.union(&q).is_subset(&s1.union(&s2)) || (cover_t2 && !s2.is_subset(&p.union(&q))) {
        return Ok(None);
    }
    let combined = CircProblem::new(
        Theory::new(t1.iter().chain(&t2).cloned().collect()),
        p.clone(),
        q.clone(),
    )?;
    let query = s.biased_query(&atoms_of(&s1), |f| circ_entails(&combined, f, &LIMITS))?;
    Ok(Some(Instance::CircPair {
        t1,
        t2,
        minimize: p,
        vary: q,
        query,
    }))
}

fn circ_single(s: &mut Sampler, spec: &GenSpec, second: bool) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(2, spec.max_atoms.max(2)));
    let t = s.theory(&pool, 1, spec.max_formulas);
    let lt = theory_sig(&t);
    if lt.is_empty() || !satisfiable(&Formula::conjoin(t.iter().cloned()), &LIMITS)? {
        return Ok(None);
    }
    let p = sig(&s.nonempty_subset(&atoms_of(&lt), 0.4));
    let others = lt.difference(&p);
    let q = if second {
        others
    } else {
        sig(&s.subset(&atoms_of(&others), 0.5))
    };
    let cp = CircProblem::new(Theory::new(t.clone()), p.clone(), q.clone())?;
    let (l2, query_atoms) = if second {
        let l2 = s.nonempty_subset(&pool, 0.5);
        (Some(sig(&l2)), l2)
    } else {
        (None, pool.clone())
    };
    let query = s.biased_query(&query_atoms, |f| circ_entails(&cp, f, &LIMITS))?;
    Ok(Some(Instance::Circ {
        theory: t,
        minimize: p,
        vary: q,
        query,
        l2,
    }))
}

fn dl_single(s: &mut Sampler, spec: &GenSpec) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(2, spec.max_atoms.max(2)));
    let facts = s.theory(&pool, 0, spec.max_formulas.saturating_sub(1));
    let defaults = s.defaults(1, spec.max_defaults, &pool, &pool, &pool);
    let dt = DefaultTheory::new(Theory::new(facts.clone()), defaults.clone());
    let query = s.biased_query(&pool, |f| cautious_entails(&dt, f, &LIMITS))?;
    Ok(Some(Instance::Default {
        facts,
        defaults,
        query,
    }))
}

fn dl_pair(s: &mut Sampler, spec: &GenSpec, strong: bool) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(3, spec.max_atoms.max(3)));
    let (x, y) = s.partition(&pool);
    let half = spec.max_formulas.saturating_sub(1).max(1);
    let (w1, d1, w2, d2);
    if strong {
        w1 = s.theory(&x, 0, half);
        d1 = s.defaults(1, spec.max_defaults, &x, &x, &x);
        w2 = s.theory(&y, 0, half);
        d2 = s.defaults(1, spec.max_defaults, &pool, &pool, &y);
    } else {
        w1 = s.theory(&x, 0, half);
        d1 = s.defaults(1, spec.max_defaults, &x, &x, &pool);
        w2 = s.theory(&pool, 0, half);
        d2 = s.defaults(1, spec.max_defaults, &pool, &pool, &y);
    }
    let dt1 = DefaultTheory::new(Theory::new(w1.clone()), d1.clone());
    let dt2 = DefaultTheory::new(Theory::new(w2.clone()), d2.clone());
    let ok = if strong {
        strong_disjointness(&dt1, &dt2)
    } else {
        weak_disjointness(&dt1, &dt2)
    };
    let l2 = dt2.signature();
    if !ok || l2.is_empty() {
        return Ok(None);
    }
    let combined = dt1.union(&dt2);
    let query = s.biased_query(&atoms_of(&l2), |f| brave_entails(&combined, f, &LIMITS))?;
    Ok(Some(Instance::DefaultPair {
        w1,
        d1,
        w2,
        d2,
        query,
    }))
}

fn dl_split(s: &mut Sampler, spec: &GenSpec) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(2, spec.max_atoms.max(2)));
    let (a, b) = s.partition(&pool);
    let base_max = (spec.max_defaults / 2).max(1);
    let mut defaults = s.defaults(1, base_max, &a, &a, &a);
    for _ in 0..s.range(1, spec.max_defaults.saturating_sub(defaults.len()).max(1)) {
        let mut pre = Vec::new();
        if s.chance(0.5) {
            pre.push(s.literal(&a));
        }
        if s.chance(0.4) {
            pre.push(s.literal(&b));
        }
        let consequent = s.literal(&b);
        let mut justifications = Vec::new();
        if s.chance(0.5) {
            justifications.push(consequent.clone());
        }
        if s.chance(0.4) {
            let side = if s.chance(0.5) { &a } else { &b };
            justifications.push(s.literal(side));
        }
        defaults.push(DefaultRule::new(
            Formula::conjoin(pre),
            justifications,
            consequent,
        ));
    }
    let used =
        crate::default_logic::DefaultTheory::new(Theory::default(), defaults.clone()).signature();
    let a_sig = sig(&a).intersection(&used);
    if a_sig.is_empty() || splitting_set(&a_sig, &defaults).is_err() {
        return Ok(None);
    }
    Ok(Some(Instance::Split { defaults, a: a_sig }))
}

fn lp_single(s: &mut Sampler, spec: &GenSpec) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(2, spec.max_atoms.max(2)));
    let shape = ProgramShape {
        disjunction: 0.2,
        classical: 0.1,
    };
    let program = s.program(&pool, &pool, 1, spec.max_rules, shape);
    let atoms = atoms_of(&program.atoms());
    let query = s.biased_query(&atoms, |f| lp_cautious(&program, f, &LIMITS))?;
    Ok(Some(Instance::Program { program, query }))
}

fn lp_pair(s: &mut Sampler, spec: &GenSpec) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(3, spec.max_atoms.max(3)));
    let (heads2, bodies1) = s.partition(&pool);
    let shape = ProgramShape {
        disjunction: 0.2,
        classical: 0.1,
    };
    let half = (spec.max_rules / 2).max(1);
    let p1 = s.program(&pool, &bodies1, 1, half, shape);
    let p2 = s.program(&heads2, &pool, 1, half, shape);
    if lp_brave_side_conditions(&p1, &p2, &Formula::True, spec.disjointness)?.is_some() {
        return Ok(None);
    }
    let union = p1.union(&p2);
    let query = s.biased_query(&atoms_of(&p2.atoms()), |f| lp_brave(&union, f, &LIMITS))?;
    if lp_brave_side_conditions(&p1, &p2, &query, spec.disjointness)?.is_some() {
        return Ok(None);
    }
    Ok(Some(Instance::ProgramPair {
        p1,
        p2,
        query,
        disjointness: spec.disjointness,
    }))
}

fn craig(s: &mut Sampler, spec: &GenSpec) -> Result<Option<Instance>> {
    let pool = atom_pool(s.range(2, spec.max_atoms.max(2)));
    let parts = s.theory(&pool, 1, spec.max_formulas);
    let alpha = Formula::conjoin(parts.iter().cloned());
    let weakening = s.any_formula(&pool);
    let beta = if s.chance(0.6) {
        s.pick(&parts).clone().or(weakening)
    } else {
        weakening
    };
    if !satisfiable(&alpha, &LIMITS)? || !implies(&alpha, &beta, &LIMITS)? {
        return Ok(None);
    }
    Ok(Some(Instance::Craig { alpha, beta }))
}

/// Instance `trial` of the stream described by `spec`.
pub fn generate_one(spec: &GenSpec, trial: u64) -> Result<Instance> {
    let mut s = Sampler::for_trial(spec, trial);
    for _ in 0..spec.budget {
        let candidate = match spec.family {
            Family::CircTGamma => circ_pair(&mut s, spec, false)?,
            Family::CircGammaT | Family::CircBetween => circ_pair(&mut s, spec, true)?,
            Family::CircInterp1 => circ_single(&mut s, spec, false)?,
            Family::CircInterp2 => circ_single(&mut s, spec, true)?,
            Family::DlCautious1 | Family::DlCautious2 => dl_single(&mut s, spec)?,
            Family::DlExtInterp | Family::DlBrave => dl_pair(&mut s, spec, false)?,
            Family::DlReverse => dl_pair(&mut s, spec, true)?,
            Family::DlTurnerSplit => dl_split(&mut s, spec)?,
            Family::LpCautious => lp_single(&mut s, spec)?,
            Family::LpBrave => lp_pair(&mut s, spec)?,
            Family::Craig => craig(&mut s, spec)?,
        };
        if let Some(instance) = candidate {
            return Ok(instance);
        }
    }
    Err(Error::BudgetExhausted {
        family: spec.family.name().to_string(),
        budget: spec.budget,
    })
}

/// The first `n` instances of the stream.
pub fn generate(spec: &GenSpec, n: usize) -> Result<Vec<Instance>> {
    super::run::map_trials(n, super::run::Mode::default(), |i| {
        generate_one(spec, i as u64)
    })
    .into_iter()
    .collect()
}
