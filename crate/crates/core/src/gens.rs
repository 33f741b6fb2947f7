//! Generator lists for numerical semigroups.
//!
//! A `GeneratorList` holds the generators of a numerical semigroup: the set
//! of all non-negative integer combinations of the entries. Every
//! constructor canonicalizes (sorts ascending, removes exact duplicates) and
//! validates that all entries are positive and that the gcd of the list is 1,
//! so the complement of the semigroup in the naturals is finite. Redundant
//! generators (expressible in terms of the others) are retained; only exact
//! duplicates are dropped.

use std::fmt;

use crate::arith::gcd_all;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorList {
    gens: Vec<u64>,
}

impl GeneratorList {
    /// Validate and canonicalize a raw list of integers.
    ///
    /// Errors: `EmptyInput` on an empty list, `NonPositiveEntry` naming the
    /// first entry < 1, `GcdNotOne` reporting the offending gcd.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut gens = Vec::with_capacity(raw.len());
        for &v in raw {
            if v < 1 {
                return Err(Error::NonPositiveEntry(v));
            }
            gens.push(v as u64);
        }
        Self::from_sorted_positive(gens)
    }

    /// Same validation for values that are already unsigned (used when
    /// generator lists are built programmatically from family parameters).
    pub fn from_unsigned(raw: &[u64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        for &v in raw {
            if v < 1 {
                return Err(Error::NonPositiveEntry(0));
            }
        }
        Self::from_sorted_positive(raw.to_vec())
    }

    fn from_sorted_positive(mut gens: Vec<u64>) -> Result<Self> {
        gens.sort_unstable();
        gens.dedup();
        let g = gcd_all(&gens);
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        Ok(GeneratorList { gens })
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    /// Smallest generator; the default Apéry modulus.
    pub fn first(&self) -> u64 {
        self.gens[0]
    }

    pub fn largest(&self) -> u64 {
        *self.gens.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a validated list always has at least one entry
    }

    pub fn contains_generator(&self, g: u64) -> bool {
        self.gens.binary_search(&g).is_ok()
    }
}

impl fmt::Display for GeneratorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`GeneratorList::new`].
pub fn validate_generators(raw: &[i64]) -> Result<GeneratorList> {
    GeneratorList::new(raw)
}
