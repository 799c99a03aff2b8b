use crate::error::{Error, Result};

/// Hard upper bound on the truth-table width; 2^26 assignments is already 8 MiB per table.
pub const MAX_TABLE_ATOMS: usize = 26;

/// Enumeration caps shared by every engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest signature a truth table may range over.
    pub max_atoms: usize,
    /// Largest default set whose subsets are enumerated.
    pub max_defaults: usize,
    /// Largest program signature for answer-set candidate enumeration.
    pub max_program_atoms: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_atoms: 20,
        max_defaults: 14,
        max_program_atoms: 10,
    };

    pub(crate) fn check_atoms(&self, size: usize) -> Result<()> {
        let cap = self.max_atoms.min(MAX_TABLE_ATOMS);
        if size > cap {
            return Err(Error::CapExceeded {
                what: "signature",
                size,
                cap,
            });
        }
        Ok(())
    }

    pub(crate) fn check_defaults(&self, size: usize) -> Result<()> {
        if size > self.max_defaults.min(30) {
            return Err(Error::CapExceeded {
                what: "default set",
                size,
                cap: self.max_defaults,
            });
        }
        Ok(())
    }

    pub(crate) fn check_program_atoms(&self, size: usize) -> Result<()> {
        if size > self.max_program_atoms.min(20) {
            return Err(Error::CapExceeded {
                what: "program signature",
                size,
                cap: self.max_program_atoms,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}
