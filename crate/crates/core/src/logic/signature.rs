use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::logic::Atom;

/// Duplicate-free set of atoms that iterates in insertion order.
///
/// Equality is set equality; the order only fixes how truth tables index
/// assignments.
#[derive(Clone, Debug, Default)]
pub struct Signature(IndexSet<Atom>);

impl Signature {
    pub fn new() -> Signature {
        Signature(IndexSet::new())
    }

    /// Builds a signature from atom names that must all be valid.
    pub fn of(names: &[&str]) -> Signature {
        names
            .iter()
            .map(|n| Atom::new(n).unwrap_or_else(|e| panic!("{e}")))
            .collect()
    }

    /// Returns true if the atom was not present yet.
    pub fn insert(&mut self, atom: Atom) -> bool {
        self.0.insert(atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.0.get_index_of(atom)
    }

    pub fn get(&self, index: usize) -> Option<&Atom> {
        self.0.get_index(index)
    }

    pub fn union(&self, other: &Signature) -> Signature {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }

    pub fn intersection(&self, other: &Signature) -> Signature {
        self.iter().filter(|a| other.contains(a)).cloned().collect()
    }

    pub fn difference(&self, other: &Signature) -> Signature {
        self.iter()
            .filter(|a| !other.contains(a))
            .cloned()
            .collect()
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.iter().all(|a| other.contains(a))
    }

    pub fn is_disjoint(&self, other: &Signature) -> bool {
        self.iter().all(|a| !other.contains(a))
    }

    pub fn atoms(&self) -> Vec<Atom> {
        self.0.iter().cloned().collect()
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Signature) -> bool {
        self.0 == other.0
    }
}

impl Eq for Signature {}

impl FromIterator<Atom> for Signature {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Signature {
        Signature(iter.into_iter().collect())
    }
}

impl Extend<Atom> for Signature {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a Signature {
    type Item = &'a Atom;
    type IntoIter = indexmap::set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Signature, D::Error> {
        let atoms = Vec::<Atom>::deserialize(d)?;
        Ok(atoms.into_iter().collect())
    }
}
