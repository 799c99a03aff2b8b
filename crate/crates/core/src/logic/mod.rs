//! Propositional formulas, truth-table semantics, forgetting and Craig interpolants.

mod forget;
mod formula;
mod parse;
mod semantics;
mod signature;
mod table;

pub use forget::{craig_interpolant, forget, restrict_consequences};
pub use formula::{Atom, Formula};
pub use parse::{parse_formula, parse_theory};
pub use semantics::{
    entails, equivalent, implies, is_valid, models, satisfiable, Assignment, Theory,
};
pub use signature::Signature;
pub use table::TruthTable;

pub(crate) use parse::{parse_at, strip_comment};
pub(crate) use table::{positions, project_index};
