//! Brute-force oracles used by the integration tests. They share nothing with
//! the engine beyond the AST types: formulas are evaluated world by world and
//! extensions and answer sets are found by naive guess-and-check.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use nmterp_core::default_logic::{DefaultRule, DefaultTheory};
use nmterp_core::logic::{Atom, Formula, Signature, Theory};
use nmterp_core::programs::{Literal, Program};
use nmterp_core::workbench::{atom_pool, ProgramShape, Sampler};

/// A set of worlds, one flag per assignment.
pub type Worlds = Vec<bool>;

/// All assignments over a fixed list of atoms; atom `i` is bit `i`.
pub struct Universe {
    atoms: Vec<Atom>,
}

impl Universe {
    pub fn new<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> Universe {
        let mut sig = Signature::new();
        for f in formulas {
            sig = sig.union(&f.signature());
        }
        Universe::of(&sig)
    }

    pub fn of(sig: &Signature) -> Universe {
        assert!(sig.len() <= 12, "oracle universe too large");
        Universe { atoms: sig.atoms() }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn size(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn holds(&self, f: &Formula, world: usize) -> bool {
        let atoms = &self.atoms;
        f.eval(|a| {
            let i = atoms
                .iter()
                .position(|b| b == a)
                .expect("atom outside universe");
            world >> i & 1 == 1
        })
    }

    pub fn worlds(&self, f: &Formula) -> Worlds {
        (0..self.size()).map(|w| self.holds(f, w)).collect()
    }

    pub fn worlds_all(&self, fs: &[Formula]) -> Worlds {
        (0..self.size())
            .map(|w| fs.iter().all(|f| self.holds(f, w)))
            .collect()
    }

    pub fn entails(&self, premises: &[Formula], f: &Formula) -> bool {
        (0..self.size()).all(|w| !fs_hold(self, premises, w) || self.holds(f, w))
    }

    pub fn value(&self, atom: &Atom, world: usize) -> bool {
        let i = self
            .atoms
            .iter()
            .position(|b| b == atom)
            .expect("atom outside universe");
        world >> i & 1 == 1
    }
}

fn fs_hold(u: &Universe, fs: &[Formula], w: usize) -> bool {
    fs.iter().all(|f| u.holds(f, w))
}

pub fn subset(a: &Worlds, b: &Worlds) -> bool {
    a.iter().zip(b).all(|(x, y)| !x || *y)
}

pub fn meet(a: &Worlds, b: &Worlds) -> Worlds {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}

pub fn intersects(a: &Worlds, b: &Worlds) -> bool {
    a.iter().zip(b).any(|(x, y)| *x && *y)
}

/// Extensions by Reiter's iteration: guess `E = Th(W ∪ cons(S))` for every
/// subset `S`, compute `Γ(E)` from `W` upward, keep the fixpoints.
pub fn reiter_extensions(u: &Universe, dt: &DefaultTheory) -> BTreeSet<Worlds> {
    let w = u.worlds_all(dt.facts.formulas());
    let d = &dt.defaults;
    let pre: Vec<Worlds> = d.iter().map(|r| u.worlds(&r.prerequisite)).collect();
    let cons: Vec<Worlds> = d.iter().map(|r| u.worlds(&r.consequent)).collect();
    let just: Vec<Vec<Worlds>> = d
        .iter()
        .map(|r| r.justifications.iter().map(|j| u.worlds(j)).collect())
        .collect();
    let mut out = BTreeSet::new();
    for guess in 0u32..1 << d.len() {
        let mut e = w.clone();
        for i in 0..d.len() {
            if guess >> i & 1 == 1 {
                e = meet(&e, &cons[i]);
            }
        }
        let mut cur = w.clone();
        let mut applied = vec![false; d.len()];
        loop {
            let mut changed = false;
            for i in 0..d.len() {
                if !applied[i] && subset(&cur, &pre[i]) && just[i].iter().all(|j| intersects(&e, j))
                {
                    applied[i] = true;
                    cur = meet(&cur, &cons[i]);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if cur == e {
            out.insert(e);
        }
    }
    out
}

/// Models of `theory` over `u` not strictly dominated under `≤_{P,Q}`.
pub fn circ_minimal(u: &Universe, theory: &[Formula], p: &Signature, q: &Signature) -> Vec<usize> {
    let models: Vec<usize> = (0..u.size()).filter(|&w| fs_hold(u, theory, w)).collect();
    let fixed: Vec<&Atom> = u
        .atoms()
        .iter()
        .filter(|a| !p.contains(a) && !q.contains(a))
        .collect();
    let below = |m: usize, n: usize| {
        fixed.iter().all(|a| u.value(a, m) == u.value(a, n))
            && p.iter().all(|a| !u.value(a, m) || u.value(a, n))
            && p.iter().any(|a| u.value(a, n) && !u.value(a, m))
    };
    models
        .iter()
        .copied()
        .filter(|&n| !models.iter().any(|&m| below(m, n)))
        .collect()
}

pub fn circ_entails(theory: &[Formula], p: &Signature, q: &Signature, phi: &Formula) -> bool {
    let sig = theory
        .iter()
        .fold(phi.signature(), |s, f| s.union(&f.signature()))
        .union(p)
        .union(q);
    let u = Universe::of(&sig);
    circ_minimal(&u, theory, p, q)
        .into_iter()
        .all(|w| u.holds(phi, w))
}

/// Stable models of a program without classical negation: `X` is a minimal
/// model of the reduct `P^X`.
pub fn stable_models(p: &Program) -> BTreeSet<BTreeSet<Atom>> {
    let atoms = p.atoms().atoms();
    let n = atoms.len();
    let has = |x: usize, l: &Literal| {
        assert!(
            l.positive,
            "oracle takes programs without classical negation"
        );
        x >> atoms.iter().position(|a| *a == l.atom).unwrap() & 1 == 1
    };
    let mut out = BTreeSet::new();
    for x in 0usize..1 << n {
        let reduct: Vec<_> = p
            .rules
            .iter()
            .filter(|r| !r.neg.iter().any(|l| has(x, l)))
            .collect();
        let closed = |y: usize| {
            reduct
                .iter()
                .all(|r| !r.pos.iter().all(|l| has(y, l)) || r.head.iter().any(|l| has(y, l)))
        };
        if !closed(x) {
            continue;
        }
        // a proper subset of x, enumerated by the standard submask walk
        let mut y = x;
        let mut minimal = true;
        while y > 0 {
            y = (y - 1) & x;
            if closed(y) {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.insert(
                (0..n)
                    .filter(|i| x >> i & 1 == 1)
                    .map(|i| atoms[i].clone())
                    .collect(),
            );
        }
    }
    out
}

/// A default theory with at most `max_atoms` atoms and `max_defaults` defaults.
pub fn random_default_theory(seed: u64, max_atoms: usize, max_defaults: usize) -> DefaultTheory {
    let mut s = Sampler::new(seed);
    let pool = atom_pool(s.range(2, max_atoms));
    let facts = s.theory(&pool, 0, 2);
    let defaults: Vec<DefaultRule> = s.defaults(1, max_defaults, &pool, &pool, &pool);
    DefaultTheory::new(Theory::new(facts), defaults)
}

pub fn random_program(
    seed: u64,
    max_atoms: usize,
    max_rules: usize,
    shape: ProgramShape,
) -> Program {
    let mut s = Sampler::new(seed);
    let pool = atom_pool(s.range(2, max_atoms));
    s.program(&pool, &pool, 1, max_rules, shape)
}

/// Formulas over the given atom names, depth at most `depth`.
pub fn arb_formula(
    names: &'static [&'static str],
    depth: u32,
) -> impl proptest::strategy::Strategy<Value = Formula> {
    use proptest::prelude::*;
    let leaf = prop_oneof![
        8 => proptest::sample::select(names).prop_map(Formula::atom),
        1 => Just(Formula::True),
        1 => Just(Formula::False),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.iff(b)),
        ]
    })
}
