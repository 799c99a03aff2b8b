use crate::error::{Error, Result};
use crate::logic::{Formula, Signature};

/// Truth table of a formula (or a set of assignments) over a fixed signature.
///
/// Assignment `i` gives atom `j` of the signature the value of bit `j` of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    width: usize,
    words: Vec<u64>,
}

impl TruthTable {
    /// Number of words backing a table over `width` atoms.
    fn word_count(width: usize) -> usize {
        if width >= 6 {
            1 << (width - 6)
        } else {
            1
        }
    }

    fn tail_mask(width: usize) -> u64 {
        if width >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << width)) - 1
        }
    }

    pub fn empty(width: usize) -> TruthTable {
        TruthTable {
            width,
            words: vec![0; Self::word_count(width)],
        }
    }

    pub fn full(width: usize) -> TruthTable {
        let mut words = vec![u64::MAX; Self::word_count(width)];
        if let Some(last) = words.last_mut() {
            *last &= Self::tail_mask(width);
        }
        TruthTable { width, words }
    }

    /// Table of the `index`-th atom.
    pub fn variable(width: usize, index: usize) -> TruthTable {
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let n = Self::word_count(width);
        let words = (0..n)
            .map(|w| {
                let word = if index < 6 {
                    PATTERNS[index]
                } else if (w >> (index - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
                word & if w + 1 == n {
                    Self::tail_mask(width)
                } else {
                    u64::MAX
                }
            })
            .collect();
        TruthTable { width, words }
    }

    /// Evaluates `formula` over `sig`; every atom of the formula must be in `sig`.
    pub fn of(formula: &Formula, sig: &Signature) -> Result<TruthTable> {
        let width = sig.len();
        Ok(match formula {
            Formula::True => TruthTable::full(width),
            Formula::False => TruthTable::empty(width),
            Formula::Atom(a) => {
                let idx = sig.index_of(a).ok_or_else(|| {
                    Error::SignatureMismatch(format!("atom `{a}` is not in {sig}"))
                })?;
                TruthTable::variable(width, idx)
            }
            Formula::Not(f) => TruthTable::of(f, sig)?.complement(),
            Formula::And(l, r) => TruthTable::of(l, sig)?.and(&TruthTable::of(r, sig)?),
            Formula::Or(l, r) => TruthTable::of(l, sig)?.or(&TruthTable::of(r, sig)?),
            Formula::Implies(l, r) => TruthTable::of(l, sig)?
                .complement()
                .or(&TruthTable::of(r, sig)?),
            Formula::Iff(l, r) => {
                let (a, b) = (TruthTable::of(l, sig)?, TruthTable::of(r, sig)?);
                a.xor(&b).complement()
            }
        })
    }

    /// Conjunction of the tables of several formulas.
    pub fn of_all<'a, I>(formulas: I, sig: &Signature) -> Result<TruthTable>
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut acc = TruthTable::full(sig.len());
        for f in formulas {
            acc = acc.and(&TruthTable::of(f, sig)?);
        }
        Ok(acc)
    }

    /// Table whose models are exactly the given assignment indices.
    pub fn from_indices<I: IntoIterator<Item = u64>>(width: usize, indices: I) -> TruthTable {
        let mut t = TruthTable::empty(width);
        for i in indices {
            t.words[(i >> 6) as usize] |= 1 << (i & 63);
        }
        t
    }

    /// Disjunctive normal form over `sig`; `True`/`False` for constant tables.
    pub fn to_dnf(&self, sig: &Signature) -> Formula {
        if self.is_full() {
            return Formula::True;
        }
        Formula::disjoin(self.models().map(|i| {
            Formula::conjoin(sig.iter().enumerate().map(|(j, a)| {
                let lit = Formula::Atom(a.clone());
                if (i >> j) & 1 == 1 {
                    lit
                } else {
                    lit.not()
                }
            }))
        }))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn zip(&self, other: &TruthTable, op: impl Fn(u64, u64) -> u64) -> TruthTable {
        debug_assert_eq!(self.width, other.width);
        TruthTable {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }

    pub fn and(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> TruthTable {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            *last &= Self::tail_mask(self.width);
        }
        TruthTable {
            width: self.width,
            words,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == TruthTable::full(self.width)
    }

    /// Every model of `self` is a model of `other`.
    pub fn implies(&self, other: &TruthTable) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Some assignment is a model of both.
    pub fn intersects(&self, other: &TruthTable) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn contains(&self, index: u64) -> bool {
        (self.words[(index >> 6) as usize] >> (index & 63)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the satisfying assignments, ascending.
    pub fn models(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(((wi as u64) << 6) | b)
            })
        })
    }
}

/// Maps assignment indices over `from` onto `to` (atoms absent from `from` get false).
pub(crate) fn project_index(index: u64, positions: &[Option<usize>]) -> u64 {
    let mut out = 0u64;
    for (target, source) in positions.iter().enumerate() {
        if let Some(s) = source {
            if (index >> s) & 1 == 1 {
                out |= 1 << target;
            }
        }
    }
    out
}

/// For each atom of `to`, its position in `from`.
pub(crate) fn positions(from: &Signature, to: &Signature) -> Vec<Option<usize>> {
    to.iter().map(|a| from.index_of(a)).collect()
}
