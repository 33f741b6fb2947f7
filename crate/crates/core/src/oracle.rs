//! Brute-force reference implementations used to cross-check every fast path
//! in this crate. Nothing here calls the Apéry-set routine or the min-coins
//! table: membership comes from a plain bitmap sieve, and minimal coin counts
//! come from an exhaustive layered search over the number of parts. Slow and
//! obvious on purpose.

use crate::apery::InvariantPair;
use crate::arith::narrow;
use crate::error::{Error, Result};
use crate::gens::GeneratorList;

/// Default ceiling on sieve size, in bits.
pub const DEFAULT_SIEVE_CAP_BITS: u64 = 100_000_000;

/// Membership bitmap for a numerical semigroup on `0..=bound`:
/// `bits[0] = true`, and `bits[x]` is set when `x - g` is a member for some
/// generator `g <= x`.
#[derive(Debug)]
pub struct SemigroupSieve {
    bound: u64,
    words: Vec<u64>,
}

impl SemigroupSieve {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Membership of `x`; panics if `x` is beyond the sieved range, since a
    /// silent wrong answer from the oracle would defeat its purpose.
    pub fn contains(&self, x: u64) -> bool {
        assert!(x <= self.bound, "sieve queried at {x} beyond bound {}", self.bound);
        self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    fn set(&mut self, x: u64) {
        self.words[(x / 64) as usize] |= 1 << (x % 64);
    }
}

/// Smallest bound that provably covers every gap: past
/// `(a_1 - 1) * (a_n - 1)` everything is a member, and the extra `a_n`
/// leaves room to read off Apéry elements as well.
fn auto_bound(a: &GeneratorList) -> Result<u64> {
    let lo = a.first() as u128;
    let hi = a.largest() as u128;
    narrow((lo - 1) * (hi - 1) + hi, "sieve bound")
}

/// Build the membership sieve up to `limit` (or the automatic bound).
/// Errors with `Overflow` when the requested bitmap would exceed `cap_bits`.
pub fn build_sieve_capped(
    a: &GeneratorList,
    limit: Option<u64>,
    cap_bits: u64,
) -> Result<SemigroupSieve> {
    let bound = match limit {
        Some(l) => l,
        None => auto_bound(a)?,
    };
    let bits_needed = bound
        .checked_add(1)
        .ok_or_else(|| Error::overflow("sieve bound + 1".to_string()))?;
    if bits_needed > cap_bits {
        return Err(Error::overflow(format!(
            "sieve needs {bits_needed} bits, over the cap of {cap_bits} \
             (raise the cap to proceed)"
        )));
    }
    let mut sieve = SemigroupSieve {
        bound,
        words: vec![0; bits_needed.div_ceil(64) as usize],
    };
    sieve.set(0);
    for x in 1..=bound {
        for &g in a.gens() {
            if g > x {
                break; // generators are sorted
            }
            if sieve.contains(x - g) {
                sieve.set(x);
                break;
            }
        }
    }
    Ok(sieve)
}

/// [`build_sieve_capped`] with the default memory cap.
pub fn build_sieve(a: &GeneratorList, limit: Option<u64>) -> Result<SemigroupSieve> {
    build_sieve_capped(a, limit, DEFAULT_SIEVE_CAP_BITS)
}

/// Frobenius number and genus straight off the sieve.
pub fn brute_invariants(a: &GeneratorList) -> Result<InvariantPair> {
    brute_quotient_invariants_capped(a, 1, DEFAULT_SIEVE_CAP_BITS)
}

/// Invariants of the quotient by `p`: the semigroup of all `x` with
/// `p * x` a member. Works for every positive `p`, divisor of a generator
/// or not; this is the only path that covers the non-divisor regime.
pub fn brute_quotient_invariants(a: &GeneratorList, p: u64) -> Result<InvariantPair> {
    brute_quotient_invariants_capped(a, p, DEFAULT_SIEVE_CAP_BITS)
}

pub fn brute_quotient_invariants_capped(
    a: &GeneratorList,
    p: u64,
    cap_bits: u64,
) -> Result<InvariantPair> {
    if p == 0 {
        return Err(Error::constraint("p must be a positive integer"));
    }
    let sieve = build_sieve_capped(a, None, cap_bits)?;
    // Gaps x of the quotient satisfy p*x <= frobenius of the base semigroup,
    // and the auto bound strictly exceeds that, so scanning to bound/p sees
    // every gap.
    let mut frobenius: i64 = -1;
    let mut genus: u64 = 0;
    for x in 1..=sieve.bound() / p {
        if !sieve.contains(p * x) {
            frobenius = i64::try_from(x)
                .map_err(|_| Error::overflow(format!("frobenius candidate {x}")))?;
            genus += 1;
        }
    }
    InvariantPair::new(frobenius, genus)
}

/// Exhaustive minimal-representation search: the least number of parts from
/// `b` (repetition allowed) summing to exactly `m`, or `None` when no such
/// representation exists. Computed by expanding sum-sets layer by layer,
/// which enumerates, for each count `j`, exactly the sums writable with `j`
/// parts; independent of the dynamic-programming recurrence it checks.
pub fn brute_ob(b: &[u64], m: u64) -> Result<Option<u64>> {
    Ok(brute_ob_all(b, m)?.pop().unwrap())
}

/// First-hit table for all targets `0..=m_max`: entry `m` is the minimal
/// part count for `m`, or `None` if unreachable.
pub fn brute_ob_all(b: &[u64], m_max: u64) -> Result<Vec<Option<u64>>> {
    if b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if b.contains(&0) {
        return Err(Error::NonPositiveEntry(0));
    }
    let m_max_us = usize::try_from(m_max)
        .map_err(|_| Error::overflow(format!("search bound {m_max}")))?;
    let words = (m_max_us + 1).div_ceil(64);
    let mut first_hit: Vec<Option<u64>> = vec![None; m_max_us + 1];
    first_hit[0] = Some(0);

    let mut layer = vec![0u64; words];
    layer[0] = 1; // sums of zero parts: {0}
    // Every part is >= 1, so a reachable m <= m_max is reached within m_max
    // layers; an empty layer means all sums have escaped the window.
    for count in 1..=m_max as u64 {
        let mut next = vec![0u64; words];
        for &part in b {
            shl_or(&mut next, &layer, part, m_max_us);
        }
        if next.iter().all(|&w| w == 0) {
            break;
        }
        for (m, slot) in first_hit.iter_mut().enumerate() {
            if slot.is_none() && next[m / 64] >> (m % 64) & 1 == 1 {
                *slot = Some(count);
            }
        }
        layer = next;
    }
    Ok(first_hit)
}

/// dst |= src << shift, truncated to bits 0..=m_max.
fn shl_or(dst: &mut [u64], src: &[u64], shift: u64, m_max: usize) {
    if shift as usize > m_max {
        return;
    }
    let word_shift = (shift / 64) as usize;
    let bit_shift = (shift % 64) as u32;
    for i in (word_shift..dst.len()).rev() {
        let mut v = src[i - word_shift] << bit_shift;
        if bit_shift > 0 && i > word_shift {
            v |= src[i - word_shift - 1] >> (64 - bit_shift);
        }
        dst[i] |= v;
    }
    // Mask stray bits above m_max so emptiness checks stay meaningful.
    let top = dst.len() - 1;
    let used = m_max % 64 + 1;
    if used < 64 {
        dst[top] &= (1u64 << used) - 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(raw: &[i64]) -> GeneratorList {
        GeneratorList::new(raw).unwrap()
    }

    #[test]
    fn sieve_of_3_5_marks_the_classic_gaps() {
        let s = build_sieve(&gl(&[3, 5]), None).unwrap();
        assert_eq!(s.bound(), 13); // (3-1)*(5-1) + 5
        let gaps: Vec<u64> = (0..=s.bound()).filter(|&x| !s.contains(x)).collect();
        assert_eq!(gaps, vec![1, 2, 4, 7]);
    }

    #[test]
    fn invariants_of_small_semigroups() {
        let p = brute_invariants(&gl(&[3, 5])).unwrap();
        assert_eq!((p.frobenius(), p.genus()), (7, 4));
        let p = brute_invariants(&gl(&[2, 3])).unwrap();
        assert_eq!((p.frobenius(), p.genus()), (1, 1));
        let p = brute_invariants(&gl(&[1, 7])).unwrap();
        assert_eq!((p.frobenius(), p.genus()), (-1, 0));
        let p = brute_invariants(&gl(&[9, 11, 15])).unwrap();
        assert_eq!(p.frobenius(), 43);
    }

    #[test]
    fn quotient_by_member_is_the_naturals() {
        let p = brute_quotient_invariants(&gl(&[3, 5]), 3).unwrap();
        assert_eq!((p.frobenius(), p.genus()), (-1, 0));
        let p = brute_quotient_invariants(&gl(&[3, 5]), 8).unwrap();
        assert_eq!((p.frobenius(), p.genus()), (-1, 0));
    }

    #[test]
    fn quotient_by_non_divisor_works() {
        // x with 7x in <10, 17>: no closed form covers p = 7, the sieve does.
        let p = brute_quotient_invariants(&gl(&[10, 17]), 7).unwrap();
        assert!(p.frobenius() >= -1);
    }

    #[test]
    fn two_generator_quotient_example() {
        let p = brute_quotient_invariants(&gl(&[15, 4]), 5).unwrap();
        assert_eq!((p.frobenius(), p.genus()), (5, 3));
    }

    #[test]
    fn cap_is_enforced() {
        let err = build_sieve_capped(&gl(&[3, 5]), None, 8).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn minimal_representations_by_layered_search() {
        let t = brute_ob_all(&[1, 2, 3, 4], 10).unwrap();
        assert_eq!(t[7], Some(2)); // 3 + 4
        assert_eq!(t[10], Some(3));
        assert_eq!(t[0], Some(0));
        assert_eq!(brute_ob(&[2, 4], 5).unwrap(), None);
        assert_eq!(brute_ob(&[5], 20).unwrap(), Some(4));
        assert_eq!(brute_ob(&[5], 21).unwrap(), None);
        assert_eq!(brute_ob(&[3, 5], 1).unwrap(), None);
    }

    #[test]
    fn wide_parts_beyond_window_are_ignored() {
        let t = brute_ob_all(&[100], 50).unwrap();
        assert!(t[1..].iter().all(|v| v.is_none()));
    }
}
