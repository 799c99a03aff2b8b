//! Propositional nonmonotonic reasoning: circumscription, Reiter default
//! logic and answer-set programs, with interpolant constructors and
//! seeded sweeps that check the interpolation properties of each system.

pub mod circumscription;
pub mod default_logic;
mod error;
mod limits;
pub mod logic;
pub mod programs;
pub mod report;
pub mod workbench;

pub use error::{Error, Result};
pub use limits::Limits;
pub use report::{Relation, TheoremReport, Verdict};
