//! Closed forms for the quotient invariants of five structured generator
//! families. Every evaluator validates the full hypothesis list of its
//! formula before computing anything, and the error names the first clause
//! that fails; inputs outside the hypotheses belong on the generic scan or
//! the brute-force oracle instead. All formulas are checked against both of
//! those paths by the test suite, so a disagreement here is a bug, not a
//! rounding question.
//!
//! The families, by the shape of their generator lists:
//!
//! * scaled: `(a, d*b_1, ..., d*b_k)`, reduced to the unscaled
//!   `(a, b_1, ..., b_k)` whose invariants the caller supplies;
//! * aap: `(a, ha+d, ha+2d, ..., ha+kd)`, an almost arithmetic progression;
//! * gap-aap: `(a, ha+(K+1)d, ..., ha+kd)`, a progression with its first
//!   `K` steps omitted (`K` is called `skip` in code);
//! * plus-minus: `(a, ha-d, ha+d)`, one step down and one step up;
//! * odd-aap: `(a, ha+d, ha+3d, ..., ha+(2k+1)d)`, odd steps only. Only the
//!   frobenius number has a closed form, and only when the remainder
//!   `t' = (a-p) - (2k+1) * floor((a-p-1)/(2k+1))` is even; odd `t'`
//!   reports `TPrimeOdd` and the caller falls back to the generic path.

use std::fmt;

use crate::apery::InvariantPair;
use crate::arith::{add_u128, gcd_all, mul_u128, narrow};
use crate::error::{Error, Result};
use crate::gens::GeneratorList;
use crate::quotient::{quotient_invariants, QuotientSpec, StructuredFamily};

/// Guard for explicit generator-list expansion of a family; lists beyond
/// this are almost certainly a mistyped parameter.
const MAX_EXPANDED_GENERATORS: u64 = 1 << 24;

fn require(cond: bool, clause: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::constraint(clause.to_string()))
    }
}

fn require_divides(p: u64, a: u64) -> Result<()> {
    if p == 0 || a % p != 0 {
        return Err(Error::DivisorMismatch { p, a });
    }
    Ok(())
}

fn require_coprime_step(a: u64, d: u64) -> Result<()> {
    let g = gcd_all(&[a, d]);
    if g != 1 {
        return Err(Error::constraint(format!(
            "a and d must be coprime, gcd({a}, {d}) = {g}"
        )));
    }
    Ok(())
}

/// Exact `n / 2` for genus terms; in-hypothesis inputs always divide.
fn half(n: u128, what: &'static str) -> Result<u128> {
    if n % 2 != 0 {
        return Err(Error::NonIntegerResult(what));
    }
    Ok(n / 2)
}

fn validate_scaled(a: u64, d: u64, b: &[u64], p: u64) -> Result<()> {
    require(a >= 1, "a must be a positive integer")?;
    require(d >= 1, "d must be a positive integer")?;
    require(!b.is_empty(), "pattern list b must be non-empty")?;
    require(
        b.first() != Some(&0) && b.windows(2).all(|w| w[0] < w[1]),
        "pattern list b must be strictly increasing and positive",
    )?;
    let g_b = gcd_all(b);
    let scaled_gcd = d
        .checked_mul(g_b)
        .ok_or_else(|| Error::overflow(format!("{d} * {g_b}")))?;
    let full_gcd = gcd_all(&[a, scaled_gcd]);
    require(
        full_gcd == 1,
        &format!("generator list must have gcd 1, found {full_gcd}"),
    )?;
    require_divides(p, a)
}

/// Invariants of the quotient of `(a, d*b_1, ..., d*b_k)` by `p`, given the
/// invariants of the quotient of `(a, b_1, ..., b_k)` by the same `p`:
///
///   frobenius = d * frobenius(baseline) + a(d-1)/p
///   genus     = d * genus(baseline) + (a-p)(d-1)/(2p)
pub fn scaled_quotient(
    a: u64,
    d: u64,
    b: &[u64],
    p: u64,
    baseline: InvariantPair,
) -> Result<InvariantPair> {
    validate_scaled(a, d, b, p)?;
    let q = (a / p) as u128;
    let spread = mul_u128(q, (d - 1) as u128)?;
    let scaled = (baseline.frobenius() as i128)
        .checked_mul(d as i128)
        .and_then(|v| v.checked_add(spread as i128))
        .ok_or_else(|| Error::overflow("scaled frobenius".to_string()))?;
    let frobenius = i64::try_from(scaled)
        .map_err(|_| Error::overflow(format!("scaled frobenius {scaled}")))?;
    let genus = add_u128(
        mul_u128(baseline.genus() as u128, d as u128)?,
        half(mul_u128(q - 1, (d - 1) as u128)?, "scaled genus")?,
    )?;
    InvariantPair::new(frobenius, narrow(genus, "scaled genus")?)
}

/// Invariants of the quotient of the progression `(a, ha+d, ..., ha+kd)`
/// by a divisor `p` of `a`:
///
///   frobenius = ceil((a-p)/k) * ha/p + a(d-1)/p - d
///   genus     = h * sum over 0 < r < a/p of ceil(rp/k) + (a-p)(d-1)/(2p)
pub fn aap_quotient(a: u64, h: u64, d: u64, k: u64, p: u64) -> Result<InvariantPair> {
    require(a >= 1, "a must be a positive integer")?;
    require(
        h >= 1,
        "h must be a positive integer (for h = 0 use the scaled family)",
    )?;
    require(d >= 1, "d must be a positive integer")?;
    require(k >= 1, "k must be a positive integer")?;
    require(k <= a - 1, "k must be at most a - 1")?;
    require_coprime_step(a, d)?;
    require_divides(p, a)?;
    progression_invariants(a, h, d, k, p, 0)
}

/// Invariants of the quotient of `(a, ha+(skip+1)d, ..., ha+kd)` by a
/// divisor `p` of `a`; `skip` is the count of omitted leading steps. Two
/// branches: `p > skip` keeps the plain progression formulas, while
/// `p <= skip` shifts the extreme class to `c = floor(skip/p)`:
///
///   frobenius = ceil((a+cp)/k) * ha/p + a(d-1)/p + cd
///   genus     = h * (sum_{0 < r <= c} ceil((a+rp)/k)
///               + sum_{c < r < a/p} ceil(rp/k)) + (a-p)(d-1)/(2p) + cd
///
/// The shifted class label `c` must name a real residue class, so
/// `floor(skip/p) < a/p` is required on that branch; the formulas produce
/// wrong values past it (the genus sum counts classes that do not exist).
pub fn gap_aap_quotient(
    a: u64,
    h: u64,
    d: u64,
    skip: u64,
    k: u64,
    p: u64,
) -> Result<InvariantPair> {
    require(a >= 2, "a must be at least 2")?;
    require(
        h >= 1,
        "h must be a positive integer (for h = 0 use the scaled family)",
    )?;
    require(d >= 1, "d must be a positive integer")?;
    require(skip >= 1, "skip (K) must be a positive integer")?;
    require(k >= 1, "k must be a positive integer")?;
    let doubled = skip
        .checked_mul(2)
        .ok_or_else(|| Error::overflow(format!("2 * {skip}")))?;
    require(doubled <= k - 1, "skip (K) must be at most (k - 1)/2")?;
    require_coprime_step(a, d)?;
    require_divides(p, a)?;

    if p > skip {
        return progression_invariants(a, h, d, k, p, 0);
    }
    let c = skip / p;
    let q = a / p;
    require(
        c < q,
        &format!("floor(skip/p) = {c} must be below a/p = {q} so the extreme residue class exists"),
    )?;
    progression_invariants(a, h, d, k, p, c)
}

/// Shared body of the progression formulas. `c = 0` is the plain
/// progression; `c >= 1` wraps the first `c` residue classes once around
/// the modulus, which replaces the trailing `-d` with `+cd` and switches
/// those classes' ceiling terms from `rp/k` to `(a+rp)/k`.
fn progression_invariants(
    a: u64,
    h: u64,
    d: u64,
    k: u64,
    p: u64,
    c: u64,
) -> Result<InvariantPair> {
    let q = (a / p) as u128;
    let (a128, h128, d128, k128, p128, c128) = (
        a as u128, h as u128, d as u128, k as u128, p as u128, c as u128,
    );

    let steps = if c == 0 {
        (a128 - p128).div_ceil(k128)
    } else {
        add_u128(a128, mul_u128(c128, p128)?)?.div_ceil(k128)
    };
    let body = add_u128(
        mul_u128(mul_u128(steps, h128)?, q)?,
        mul_u128(q, d128 - 1)?,
    )?;
    let body = i128::try_from(body)
        .map_err(|_| Error::overflow(format!("frobenius body {body}")))?;
    let value = if c == 0 {
        body - d as i128
    } else {
        body.checked_add((c128 * d128) as i128)
            .ok_or_else(|| Error::overflow("frobenius".to_string()))?
    };
    let frobenius =
        i64::try_from(value).map_err(|_| Error::overflow(format!("frobenius {value}")))?;

    let wrapped = step_sum(1, c as u64 + 1, p, k, a)?;
    let plain = step_sum(c as u64 + 1, a / p, p, k, 0)?;
    let genus = add_u128(
        mul_u128(h128, add_u128(wrapped, plain)?)?,
        half(mul_u128(q - 1, d128 - 1)?, "progression genus")?,
    )?;
    let genus = add_u128(genus, mul_u128(c128, d128)?)?;
    InvariantPair::new(frobenius, narrow(genus, "progression genus")?)
}

/// `sum over lo <= r < hi of ceil((base + r*p)/k)`, exact in u128.
fn step_sum(lo: u64, hi: u64, p: u64, k: u64, base: u64) -> Result<u128> {
    let mut total: u128 = 0;
    for r in lo..hi {
        let term = (base as u128 + r as u128 * p as u128).div_ceil(k as u128);
        total = add_u128(total, term)?;
    }
    Ok(total)
}

/// Invariants of the quotient of `(a, ha-d, ha+d)` by a divisor `p` of `a`,
/// with `s = floor((ha-d)/(2hp))`:
///
///   frobenius = max( s(ha+d) - a/p, (a/p - ceil((ha-d)/(2hp)))(ha-d) - a/p )
///   genus     = (ha+d) p s(s+1)/(2a) + (ha-d)(a-sp)(a-sp-p)/(2pa) - (a-p)/(2p)
///
/// The genus terms are individually fractional; they are summed over the
/// common denominator `2pa` and divided exactly once. A remainder there
/// means a hypothesis was violated. The unrounded ratio `(ha-d)/(2hp)` is
/// provably inside `(0, a/p)` under the hypotheses, so that check failing
/// is an internal inconsistency, not bad input; the floored `s` itself may
/// legitimately be 0.
pub fn plus_minus_quotient(a: u64, h: u64, d: u64, p: u64) -> Result<InvariantPair> {
    require(a >= 1, "a must be a positive integer")?;
    require(h >= 1, "h must be a positive integer")?;
    require(d >= 1, "d must be a positive integer")?;
    let ha = h
        .checked_mul(a)
        .ok_or_else(|| Error::overflow(format!("{h} * {a}")))?;
    require(ha > d && ha - d > 1, "ha - d must exceed 1")?;
    require_coprime_step(a, d)?;
    require_divides(p, a)?;

    let down = (ha - d) as u128;
    let up = (ha + d) as u128;
    let denom = 2 * (h as u128) * (p as u128);
    let (a128, p128) = (a as u128, p as u128);
    if down * p128 >= denom * a128 {
        return Err(Error::InternalBound(format!(
            "(ha-d)/(2hp) escaped (0, a/p) for a={a} h={h} d={d} p={p}"
        )));
    }
    let s = down / denom;
    let s_ceil = down.div_ceil(denom);
    let q = a128 / p128;

    let t_up = mul_u128(s, up)? as i128 - q as i128;
    let t_down = mul_u128(q - s_ceil, down)? as i128 - q as i128;
    let frobenius = i64::try_from(t_up.max(t_down))
        .map_err(|_| Error::overflow(format!("frobenius {}", t_up.max(t_down))))?;

    let reach = a128 - s * p128;
    let term_up = mul_u128(mul_u128(up, p128 * p128)?, mul_u128(s, s + 1)?)?;
    let term_down = mul_u128(mul_u128(down, reach)?, reach - p128)?;
    let num = i128::try_from(add_u128(term_up, term_down)?)
        .map_err(|_| Error::overflow("genus numerator".to_string()))?
        - ((a128 - p128) * a128) as i128;
    let den = (2 * p128 * a128) as i128;
    if num < 0 || num % den != 0 {
        return Err(Error::NonIntegerResult("plus-minus genus"));
    }
    let genus = narrow((num / den) as u128, "plus-minus genus")?;
    InvariantPair::new(frobenius, genus)
}

/// Frobenius number (only) of the quotient of the odd-step progression
/// `(a, ha+d, ha+3d, ..., ha+(2k+1)d)` by a divisor `p` of `a`:
///
///   frobenius = ( ha*(floor((a-p-1)/(2k+1)) + 2) + (a-p)d - a ) / p
///
/// valid when the remainder `t'` of `a-p = (2k+1)s' + t'`, `1 <= t' <= 2k+1`,
/// is even; odd `t'` raises `TPrimeOdd` and has no known closed form. The
/// genus of this family has no closed form at all, so none is offered.
pub fn odd_aap_quotient_frobenius(a: u64, h: u64, d: u64, k: u64, p: u64) -> Result<i64> {
    require(a > 2, "a must exceed 2")?;
    require(h >= 1, "h must be a positive integer")?;
    require(d >= 1, "d must be a positive integer")?;
    require(k >= 1, "k must be a positive integer")?;
    let span = k
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::overflow(format!("2 * {k} + 1")))?;
    require(span <= a - 1, "2k + 1 must be at most a - 1")?;
    require_coprime_step(a, d)?;
    require_divides(p, a)?;
    require(
        p < a,
        "p must be below a; the remainder decomposition of a - p needs a positive value",
    )?;

    let s_prime = (a - p - 1) / span;
    let t_prime = (a - p) - span * s_prime;
    if t_prime % 2 != 0 {
        return Err(Error::TPrimeOdd(t_prime));
    }
    let num = add_u128(
        mul_u128(mul_u128(h as u128, a as u128)?, s_prime as u128 + 2)?,
        mul_u128((a - p) as u128, d as u128)?,
    )?;
    let num = i128::try_from(num)
        .map_err(|_| Error::overflow(format!("frobenius numerator {num}")))?
        - a as i128;
    let p = p as i128;
    if num % p != 0 {
        return Err(Error::NonIntegerResult("odd-step frobenius"));
    }
    i64::try_from(num / p).map_err(|_| Error::overflow(format!("frobenius {}", num / p)))
}

/// One family instance, as named on the command line and in sweep plans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVariant {
    Scaled { a: u64, d: u64, b: Vec<u64> },
    Aap { a: u64, h: u64, d: u64, k: u64 },
    GapAap { a: u64, h: u64, d: u64, skip: u64, k: u64 },
    PlusMinus { a: u64, h: u64, d: u64 },
    OddAap { a: u64, h: u64, d: u64, k: u64 },
}

/// A family instance plus the divisor to quotient by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub variant: FamilyVariant,
    pub p: u64,
}

/// Closed-form result. `genus` is `None` exactly when the family's theory
/// only pins down the frobenius number (the odd-step family).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyOutcome {
    pub frobenius: i64,
    pub genus: Option<u64>,
}

impl FamilyVariant {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyVariant::Scaled { .. } => "scaled",
            FamilyVariant::Aap { .. } => "aap",
            FamilyVariant::GapAap { .. } => "gap-aap",
            FamilyVariant::PlusMinus { .. } => "plus-minus",
            FamilyVariant::OddAap { .. } => "odd-aap",
        }
    }
}

impl fmt::Display for FamilyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyVariant::Scaled { a, d, b } => {
                let pattern: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                write!(f, "scaled(a={a}, d={d}, b=[{}])", pattern.join(","))
            }
            FamilyVariant::Aap { a, h, d, k } => {
                write!(f, "aap(a={a}, h={h}, d={d}, k={k})")
            }
            FamilyVariant::GapAap { a, h, d, skip, k } => {
                write!(f, "gap-aap(a={a}, h={h}, d={d}, K={skip}, k={k})")
            }
            FamilyVariant::PlusMinus { a, h, d } => {
                write!(f, "plus-minus(a={a}, h={h}, d={d})")
            }
            FamilyVariant::OddAap { a, h, d, k } => {
                write!(f, "odd-aap(a={a}, h={h}, d={d}, k={k})")
            }
        }
    }
}

impl FamilySpec {
    /// Evaluate the closed form for this family and divisor.
    pub fn evaluate(&self) -> Result<FamilyOutcome> {
        match &self.variant {
            FamilyVariant::Scaled { a, d, b } => {
                // Validate before touching the baseline so errors speak the
                // family's language and bad parameters never start a scan.
                validate_scaled(*a, *d, b, self.p)?;
                let mut base = Vec::with_capacity(b.len() + 1);
                base.push(*a);
                base.extend_from_slice(b);
                let baseline = quotient_invariants(&QuotientSpec::new(
                    GeneratorList::from_unsigned(&base)?,
                    self.p,
                )?)?;
                let pair = scaled_quotient(*a, *d, b, self.p, baseline)?;
                Ok(FamilyOutcome {
                    frobenius: pair.frobenius(),
                    genus: Some(pair.genus()),
                })
            }
            FamilyVariant::Aap { a, h, d, k } => {
                let pair = aap_quotient(*a, *h, *d, *k, self.p)?;
                Ok(FamilyOutcome {
                    frobenius: pair.frobenius(),
                    genus: Some(pair.genus()),
                })
            }
            FamilyVariant::GapAap { a, h, d, skip, k } => {
                let pair = gap_aap_quotient(*a, *h, *d, *skip, *k, self.p)?;
                Ok(FamilyOutcome {
                    frobenius: pair.frobenius(),
                    genus: Some(pair.genus()),
                })
            }
            FamilyVariant::PlusMinus { a, h, d } => {
                let pair = plus_minus_quotient(*a, *h, *d, self.p)?;
                Ok(FamilyOutcome {
                    frobenius: pair.frobenius(),
                    genus: Some(pair.genus()),
                })
            }
            FamilyVariant::OddAap { a, h, d, k } => {
                let frobenius = odd_aap_quotient_frobenius(*a, *h, *d, *k, self.p)?;
                Ok(FamilyOutcome {
                    frobenius,
                    genus: None,
                })
            }
        }
    }

    /// The explicit generator list of the family, for cross-checking the
    /// closed form against the generic and oracle paths.
    pub fn generator_list(&self) -> Result<GeneratorList> {
        let raw = self.raw_generators()?;
        GeneratorList::from_unsigned(&raw)
    }

    /// The family as a structured pattern `(a, h, d, B)` for the min-coins
    /// reduction. The plus-minus family steps below `ha`, so it has no
    /// non-negative pattern and is not expressible here.
    pub fn structured(&self) -> Result<StructuredFamily> {
        match &self.variant {
            FamilyVariant::Scaled { a, d, b } => StructuredFamily::new(*a, 0, *d, b),
            FamilyVariant::Aap { a, h, d, k } => {
                let b: Vec<u64> = (1..=*k).collect();
                StructuredFamily::new(*a, *h, *d, &b)
            }
            FamilyVariant::GapAap { a, h, d, skip, k } => {
                let b: Vec<u64> = (*skip + 1..=*k).collect();
                StructuredFamily::new(*a, *h, *d, &b)
            }
            FamilyVariant::OddAap { a, h, d, k } => {
                let b: Vec<u64> = (0..=*k).map(|i| 2 * i + 1).collect();
                StructuredFamily::new(*a, *h, *d, &b)
            }
            FamilyVariant::PlusMinus { .. } => Err(Error::constraint(
                "the plus-minus family has no non-negative pattern form",
            )),
        }
    }

    fn raw_generators(&self) -> Result<Vec<u64>> {
        match &self.variant {
            FamilyVariant::Scaled { a, d, b } => {
                require(
                    (b.len() as u64) < MAX_EXPANDED_GENERATORS,
                    "family too wide to expand explicitly",
                )?;
                expand_pattern(*a, 0, *d, b.iter().copied())
            }
            FamilyVariant::Aap { a, h, d, k } => {
                require(
                    *k < MAX_EXPANDED_GENERATORS,
                    "family too wide to expand explicitly",
                )?;
                expand_pattern(*a, *h, *d, 1..=*k)
            }
            FamilyVariant::GapAap { a, h, d, skip, k } => {
                require(
                    *k < MAX_EXPANDED_GENERATORS,
                    "family too wide to expand explicitly",
                )?;
                expand_pattern(*a, *h, *d, *skip + 1..=*k)
            }
            FamilyVariant::PlusMinus { a, h, d } => {
                let ha = h
                    .checked_mul(*a)
                    .ok_or_else(|| Error::overflow(format!("{h} * {a}")))?;
                require(ha > *d, "ha must exceed d")?;
                let up = ha
                    .checked_add(*d)
                    .ok_or_else(|| Error::overflow(format!("{ha} + {d}")))?;
                Ok(vec![*a, ha - d, up])
            }
            FamilyVariant::OddAap { a, h, d, k } => {
                require(
                    *k < MAX_EXPANDED_GENERATORS / 2,
                    "family too wide to expand explicitly",
                )?;
                expand_pattern(*a, *h, *d, (0..=*k).map(|i| 2 * i + 1))
            }
        }
    }
}

fn expand_pattern(
    a: u64,
    h: u64,
    d: u64,
    steps: impl Iterator<Item = u64>,
) -> Result<Vec<u64>> {
    let ha = h
        .checked_mul(a)
        .ok_or_else(|| Error::overflow(format!("{h} * {a}")))?;
    let mut out = vec![a];
    for s in steps {
        let g = d
            .checked_mul(s)
            .and_then(|v| v.checked_add(ha))
            .ok_or_else(|| Error::overflow(format!("{h}*{a} + {d}*{s}")))?;
        out.push(g);
    }
    Ok(out)
}
