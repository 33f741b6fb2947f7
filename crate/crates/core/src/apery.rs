//! Apéry sets and the invariants read off them.
//!
//! Fix a numerical semigroup S and a member `a >= 1`. For each residue
//! `r mod a` there is a least member of S congruent to `r`; the table of
//! those minima is the Apéry set of `a`. It determines the two headline
//! invariants directly:
//!
//! * frobenius = (max entry) - a, the largest integer outside S
//!   (-1 when S is all of the naturals);
//! * genus = (sum of entries) / a - (a - 1) / 2, the number of gaps.
//!
//! The table is computed by round-robin relaxation over residue classes:
//! treat each residue as a node and each generator `g` as an arc
//! `r -> (r + g) mod a` with weight `g`, then sweep all nodes repeatedly
//! until a full pass improves nothing. All weights are positive, so the
//! sweep converges to the shortest-path values, which are exactly the
//! Apéry entries.

use crate::arith::{gcd_all, narrow};
use crate::error::{Error, Result};
use crate::gens::GeneratorList;

/// Frobenius number and genus of one semigroup. The two degenerate together:
/// a semigroup with no gaps has frobenius -1 and genus 0, and any other
/// combination of "no gaps" signals a bug in the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvariantPair {
    frobenius: i64,
    genus: u64,
}

impl InvariantPair {
    pub fn new(frobenius: i64, genus: u64) -> Result<Self> {
        if frobenius < -1 {
            return Err(Error::InternalBound(format!(
                "frobenius {frobenius} below -1"
            )));
        }
        if (frobenius == -1) != (genus == 0) {
            return Err(Error::InternalBound(format!(
                "frobenius {frobenius} and genus {genus} are inconsistent"
            )));
        }
        Ok(InvariantPair { frobenius, genus })
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }
}

/// Apéry table: `entries[r]` is the least member congruent to `r` modulo
/// `modulus`. Always `entries[0] == 0` and `entries[r] % modulus == r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyTable {
    modulus: u64,
    entries: Vec<u64>,
}

impl AperyTable {
    /// Wrap precomputed entries, checking the shape invariants (length,
    /// zero entry, residues). Membership minimality cannot be checked here;
    /// it is the producer's contract.
    pub fn from_entries(modulus: u64, entries: Vec<u64>) -> Result<Self> {
        if modulus == 0 || entries.len() as u64 != modulus {
            return Err(Error::InternalBound(format!(
                "Apéry table for modulus {modulus} has {} entries",
                entries.len()
            )));
        }
        if entries[0] != 0 {
            return Err(Error::InternalBound(format!(
                "Apéry entry for residue 0 is {}, expected 0",
                entries[0]
            )));
        }
        for (r, &v) in entries.iter().enumerate() {
            if v % modulus != r as u64 {
                return Err(Error::InternalBound(format!(
                    "Apéry entry {v} not congruent to its residue {r}"
                )));
            }
        }
        Ok(AperyTable { modulus, entries })
    }

    #[cfg(test)]
    pub(crate) fn from_entries_unchecked(modulus: u64, entries: Vec<u64>) -> Self {
        AperyTable { modulus, entries }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Largest integer not in the semigroup: max entry minus the modulus.
    pub fn frobenius(&self) -> i64 {
        let max = *self.entries.iter().max().unwrap() as i128;
        // Entries are bounded by u64 and the modulus is positive, so the
        // difference always fits i64 when it is a real frobenius number;
        // saturate defensively rather than wrap.
        (max - self.modulus as i128).clamp(i64::MIN as i128, i64::MAX as i128) as i64
    }

    /// Number of gaps: (sum of entries)/modulus - (modulus - 1)/2, computed
    /// as one exact division. A table whose entries came from a genuine
    /// semigroup always divides evenly; `NonIntegerResult` means the table
    /// was corrupted.
    pub fn genus(&self) -> Result<u64> {
        let m = self.modulus as u128;
        let sum: u128 = self.entries.iter().map(|&v| v as u128).sum();
        let num = (2 * sum).checked_sub(m * (m - 1));
        let num = match num {
            Some(n) => n,
            None => return Err(Error::NonIntegerResult("genus from Apéry table")),
        };
        if num % (2 * m) != 0 {
            return Err(Error::NonIntegerResult("genus from Apéry table"));
        }
        narrow(num / (2 * m), "genus")
    }

    pub fn invariants(&self) -> Result<InvariantPair> {
        InvariantPair::new(self.frobenius(), self.genus()?)
    }

    /// Membership test: `x` is a member exactly when it is non-negative and
    /// at least the table entry of its residue class.
    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        let x = x as u64;
        x >= self.entries[(x % self.modulus) as usize]
    }
}

/// Compute the Apéry set of `modulus` in the semigroup generated by `a`.
/// `modulus` must itself be one of the generators.
pub fn apery_set(a: &GeneratorList, modulus: u64) -> Result<AperyTable> {
    if !a.contains_generator(modulus) {
        return Err(Error::NotAGenerator(modulus));
    }
    let m = modulus as usize;
    let mut entries = vec![u64::MAX; m];
    entries[0] = 0;
    let mut improved = true;
    while improved {
        improved = false;
        for r in 0..m {
            let base = entries[r];
            if base == u64::MAX {
                continue;
            }
            for &g in a.gens() {
                if g % modulus == 0 {
                    continue; // lands on the same residue, strictly larger
                }
                let cand = base
                    .checked_add(g)
                    .ok_or_else(|| Error::overflow(format!("{base} + {g}")))?;
                let target = ((r as u64 + g % modulus) % modulus) as usize;
                if cand < entries[target] {
                    entries[target] = cand;
                    improved = true;
                }
            }
        }
    }
    if entries.contains(&u64::MAX) {
        // Unreachable for gcd-1 generator lists; a residue with no member
        // would mean the complement is infinite.
        return Err(Error::InternalBound(
            "residue class with no reachable member".to_string(),
        ));
    }
    AperyTable::from_entries(modulus, entries)
}

/// Membership in the semigroup generated by `a`, via the Apéry table of the
/// smallest generator. One-off convenience; batch callers should build the
/// table once and use [`AperyTable::contains`].
pub fn is_member(a: &GeneratorList, x: i64) -> Result<bool> {
    Ok(apery_set(a, a.first())?.contains(x))
}

/// Frobenius number and genus of a two-generator semigroup in closed form:
/// `a1*a2 - a1 - a2` and `(a1 - 1)(a2 - 1)/2` for coprime generators.
pub fn sylvester_two(a1: u64, a2: u64) -> Result<InvariantPair> {
    if a1 == 0 || a2 == 0 {
        return Err(Error::NonPositiveEntry(0));
    }
    if gcd_all(&[a1, a2]) != 1 {
        return Err(Error::NotCoprime(a1, a2));
    }
    if a1 == 1 || a2 == 1 {
        return InvariantPair::new(-1, 0);
    }
    let (x, y) = (a1 as u128, a2 as u128);
    let f = x * y - x - y;
    let frobenius = i64::try_from(f)
        .map_err(|_| Error::overflow(format!("frobenius of ({a1}, {a2})")))?;
    let genus = narrow((x - 1) * (y - 1) / 2, "genus")?;
    InvariantPair::new(frobenius, genus)
}
