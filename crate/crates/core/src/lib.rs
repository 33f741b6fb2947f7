//! Exact invariants of numerical semigroups and their quotients.
//!
//! A numerical semigroup is the set of non-negative integer combinations of
//! a generator list with gcd 1; its quotient by a positive integer `p` is
//! the set of `x` with `p*x` in the semigroup. This crate computes the two
//! classical invariants of both objects, exactly and in checked integer
//! arithmetic throughout:
//!
//! * the frobenius number, the largest integer outside the set (`-1` when
//!   nothing is missing), and
//! * the genus, the count of missing non-negative integers;
//!
//! together with the Apéry set bookkeeping both derive from.
//!
//! Three independent computation paths cover every input, from fastest and
//! narrowest to slowest and fully general:
//!
//! 1. closed forms for five structured generator families ([`families`]);
//! 2. a reduction of structured quotients to bounded min-coins problems
//!    ([`quotient`], [`ob`]);
//! 3. membership sieves and exhaustive search ([`oracle`]), deliberately
//!    naive, used to validate the other two.
//!
//! The [`sweep`] module drives randomized cross-validation of all three
//! paths over parameter grids described in TOML plans.

pub mod apery;
mod arith;
pub mod error;
pub mod families;
pub mod gens;
pub mod ob;
pub mod oracle;
pub mod quotient;
pub mod sweep;

pub use apery::{apery_set, is_member, sylvester_two, AperyTable, InvariantPair};
pub use error::{Error, Result};
pub use families::{
    aap_quotient, gap_aap_quotient, odd_aap_quotient_frobenius, plus_minus_quotient,
    scaled_quotient, FamilyOutcome, FamilySpec, FamilyVariant,
};
pub use gens::GeneratorList;
pub use ob::{ob_solve, ObTable};
pub use oracle::{
    brute_invariants, brute_ob, brute_ob_all, brute_quotient_invariants,
    brute_quotient_invariants_capped, SemigroupSieve,
};
pub use quotient::{
    n_drp, quotient_apery, quotient_invariants, quotient_member, structured_apery,
    structured_invariants, two_gen_quotient, QuotientSpec, StructuredFamily,
};
pub use sweep::{SweepPlan, SweepReport};
