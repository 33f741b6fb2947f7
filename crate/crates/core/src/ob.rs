//! Minimal representation counts: the least number of parts drawn from a
//! fixed list (repetition allowed) that sum to a target exactly. Infeasible
//! targets are a value, not an error; they are ordinary and expected
//! whenever the parts share a common factor the target lacks.
//!
//! The table is filled bottom-up: `value[0] = 0` and
//! `value[m] = 1 + min over parts b <= m of value[m - b]`, with infeasible
//! absorbing. Values are memoized and the table grows on demand, so one
//! `ObTable` can serve a whole scan cheaply; it is the only mutable state in
//! the crate and is confined to whichever computation owns it.

use crate::error::{Error, Result};

const INFEASIBLE: u32 = u32::MAX;

/// Hard ceiling on table length, entries. Guards callers that ask for an
/// absurd target rather than letting the allocation take the process down.
const TABLE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct ObTable {
    parts: Vec<u64>,
    values: Vec<u32>,
}

impl ObTable {
    /// Parts must be non-empty and positive. Order is kept as given; the
    /// witness tie-break below depends on it.
    pub fn new(parts: &[u64]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyInput);
        }
        if parts.contains(&0) {
            return Err(Error::NonPositiveEntry(0));
        }
        Ok(ObTable {
            parts: parts.to_vec(),
            values: vec![0],
        })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Least number of parts summing to `m`, or `None` when unreachable.
    pub fn value(&mut self, m: u64) -> Result<Option<u64>> {
        self.grow_to(m)?;
        match self.values[m as usize] {
            INFEASIBLE => Ok(None),
            v => Ok(Some(v as u64)),
        }
    }

    /// One optimal multiset of parts for `m`, or `None` when unreachable.
    /// Deterministic: each step takes the largest part that stays optimal,
    /// breaking ties between equal parts by the largest index.
    pub fn witness(&mut self, m: u64) -> Result<Option<Vec<u64>>> {
        let Some(mut remaining_count) = self.value(m)? else {
            return Ok(None);
        };
        let mut remaining = m;
        let mut picks = Vec::with_capacity(remaining_count as usize);
        while remaining_count > 0 {
            let mut chosen: Option<usize> = None;
            for (i, &b) in self.parts.iter().enumerate() {
                if b > remaining {
                    continue;
                }
                let sub = self.values[(remaining - b) as usize];
                if sub != INFEASIBLE && sub as u64 == remaining_count - 1 {
                    match chosen {
                        // >= keeps the later index on equal part values
                        Some(prev) if b < self.parts[prev] => {}
                        _ => chosen = Some(i),
                    }
                }
            }
            let idx = chosen.ok_or_else(|| {
                Error::InternalBound("optimal representation lost its trail".to_string())
            })?;
            let b = self.parts[idx];
            picks.push(b);
            remaining -= b;
            remaining_count -= 1;
        }
        Ok(Some(picks))
    }

    fn grow_to(&mut self, m: u64) -> Result<()> {
        if m >= TABLE_CAP {
            return Err(Error::overflow(format!(
                "min-coins table for target {m} exceeds the {TABLE_CAP}-entry cap"
            )));
        }
        let m = m as usize;
        if m < self.values.len() {
            return Ok(());
        }
        self.values.reserve(m + 1 - self.values.len());
        for t in self.values.len()..=m {
            let mut best = INFEASIBLE;
            for &b in &self.parts {
                if (b as usize) > t {
                    continue;
                }
                let sub = self.values[t - b as usize];
                if sub != INFEASIBLE && sub + 1 < best {
                    best = sub + 1;
                }
            }
            self.values.push(best);
        }
        Ok(())
    }
}

/// One-shot form: least number of parts from `parts` summing to `m`.
pub fn ob_solve(parts: &[u64], m: u64) -> Result<Option<u64>> {
    ObTable::new(parts)?.value(m)
}
