//! Checked integer helpers shared across the crate. All public operations
//! promise exact results; anything that could wrap goes through these.

use crate::error::{Error, Result};
use num_integer::Integer;

/// n / d rounded up; d must be positive.
pub(crate) fn ceil_div(n: u64, d: u64) -> u64 {
    n.div_ceil(d)
}

pub(crate) fn add_u128(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b)
        .ok_or_else(|| Error::overflow(format!("{a} + {b}")))
}

pub(crate) fn mul_u128(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::overflow(format!("{a} * {b}")))
}

pub(crate) fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0u64, |acc, &v| acc.gcd(&v))
}

/// u128 result narrowed back to u64, or an overflow error naming the value.
pub(crate) fn narrow(v: u128, what: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::overflow(format!("{what} = {v} exceeds u64")))
}
