//! Randomized cross-validation sweeps described by TOML plans.
//!
//! A plan holds a seed and a list of sweep sections. Each section names a
//! generator family, a check to run, and axes for the family parameters;
//! the section expands to a grid of candidate instances, keeps the ones
//! inside the family's hypotheses, optionally samples that pool down, and
//! runs the check on every survivor in parallel. Results come back as a
//! serializable report; `SweepReport::check` turns any mismatch, or an
//! undershot instance count, into a hard error so callers can gate on it.
//!
//! The same plan and seed always produce the same instances, so a mismatch
//! report is enough to reproduce a failure.
//!
//! Axes accept four shapes in TOML:
//!
//! ```toml
//! a = 84                      # one value
//! d = [1, 5, 9]               # explicit list
//! h = { min = 1, max = 4 }    # inclusive range, optional step
//! p = "divisors"              # every divisor of the instance's a
//! k = "all"                   # every k the family's hypotheses allow
//! ```
//!
//! `"all"` is defined only where the family's hypotheses bound k (`aap`: `1..=a-1`;
//! `odd-aap`: `2k+1 <= a-1`); other families need an explicit axis.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apery::InvariantPair;
use crate::error::{Error, Result};
use crate::families::{FamilySpec, FamilyVariant};
use crate::gens::GeneratorList;
use crate::oracle::brute_quotient_invariants;
use crate::quotient::{quotient_apery, quotient_invariants, two_gen_quotient, QuotientSpec};
use crate::quotient::structured_apery;

/// Retry budget per requested random instance before the draw gives up.
const DRAW_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPlan {
    pub seed: u64,
    #[serde(rename = "sweep")]
    pub sections: Vec<SweepSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub name: String,
    pub family: FamilyKind,
    pub check: CheckKind,
    /// The check fails unless at least this many instances actually ran.
    pub min_instances: usize,
    /// Cap on instances to run, drawn uniformly from the valid pool.
    #[serde(default)]
    pub sample: Option<usize>,
    #[serde(default)]
    pub a: Option<Axis>,
    /// Second generator, two-gen family only.
    #[serde(default)]
    pub a2: Option<Axis>,
    #[serde(default)]
    pub h: Option<Axis>,
    #[serde(default)]
    pub d: Option<Axis>,
    #[serde(default)]
    pub k: Option<Axis>,
    /// Leading steps omitted from the progression (gap-aap only).
    #[serde(default)]
    pub skip: Option<Axis>,
    #[serde(default)]
    pub p: Option<Axis>,
    /// Branch pinning for gap-aap: tie p to skip instead of an axis.
    #[serde(default)]
    pub filter: Option<BranchFilter>,
    /// Random pattern shape for the scaled family.
    #[serde(default)]
    pub b: Option<PatternSpec>,
    /// Frozen expected values; any instance disagreeing is a mismatch.
    #[serde(default)]
    pub expect: Option<Expected>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Scaled,
    Aap,
    GapAap,
    PlusMinus,
    OddAap,
    TwoGen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Closed form against the brute-force sieve oracle.
    ClosedVsOracle,
    /// Closed form against the generic Apéry scan.
    ClosedVsApery,
    /// Min-coins reduction table against the generic Apéry table.
    TableVsApery,
    /// Scale formula against direct computation on the scaled list.
    ScalingIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchFilter {
    PEqualsK,
    PEqualsKPlusOne,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSpec {
    pub max_len: usize,
    pub max_value: u64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub frobenius: i64,
    #[serde(default)]
    pub genus: Option<u64>,
}

/// One TOML axis: a value, a list, an inclusive range, or a keyword.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    One(u64),
    List(Vec<u64>),
    Range {
        min: u64,
        max: u64,
        #[serde(default = "default_step")]
        step: u64,
    },
    Keyword(String),
}

fn default_step() -> u64 {
    1
}

impl Axis {
    /// Concrete values of an explicit axis; keywords are rejected here and
    /// handled by the expansion sites that define them.
    fn values(&self, what: &str) -> Result<Vec<u64>> {
        match self {
            Axis::One(v) => Ok(vec![*v]),
            Axis::List(vs) => Ok(vs.clone()),
            Axis::Range { min, max, step } => {
                if *step == 0 {
                    return Err(Error::constraint(format!("axis {what}: step must be positive")));
                }
                Ok((*min..=*max).step_by(*step as usize).collect())
            }
            Axis::Keyword(word) => Err(Error::constraint(format!(
                "axis {what}: keyword \"{word}\" is not defined here"
            ))),
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self, Axis::Keyword(w) if w == word)
    }
}

fn required(axis: &Option<Axis>, what: &str, section: &str) -> Result<Vec<u64>> {
    axis.as_ref()
        .ok_or_else(|| Error::constraint(format!("sweep \"{section}\": axis {what} is required")))?
        .values(what)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Resolved p values for one grid point.
fn p_choices(axis: &Option<Axis>, a: u64, section: &str) -> Result<Vec<u64>> {
    match axis {
        Some(ax) if ax.is_keyword("divisors") => Ok(divisors(a)),
        Some(ax) => Ok(ax.values("p")?.into_iter().filter(|p| *p > 0 && a % p == 0).collect()),
        None => Err(Error::constraint(format!(
            "sweep \"{section}\": axis p is required (use \"divisors\" for every divisor)"
        ))),
    }
}

/// One runnable instance of a section.
#[derive(Debug, Clone)]
enum Instance {
    Family(FamilySpec),
    TwoGen { a1: u64, a2: u64, p: u64 },
}

impl Instance {
    fn p(&self) -> u64 {
        match self {
            Instance::Family(spec) => spec.p,
            Instance::TwoGen { p, .. } => *p,
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Family(spec) => write!(f, "{}", spec.variant),
            Instance::TwoGen { a1, a2, .. } => write!(f, "two-gen(a1={a1}, a2={a2})"),
        }
    }
}

/// Is this error a hypothesis miss (skip the instance) or a real failure?
/// Grid axes are swept rectangularly, so points that fail a family's
/// validation (gcd, divisibility, degenerate shapes) are expected and
/// dropped; arithmetic and internal errors stay loud.
fn out_of_hypotheses(err: &Error) -> bool {
    matches!(
        err,
        Error::ConstraintViolation(_)
            | Error::DivisorMismatch { .. }
            | Error::GcdNotOne(_)
            | Error::NotCoprime(_, _)
            | Error::TPrimeOdd(_)
            | Error::EmptyInput
            | Error::NonPositiveEntry(_)
    )
}

/// Closed-form value of an instance, or None when out of hypotheses.
fn closed_value(inst: &Instance) -> Result<Option<(i64, Option<u64>)>> {
    let outcome = match inst {
        Instance::Family(spec) => spec.evaluate().map(|o| (o.frobenius, o.genus)),
        Instance::TwoGen { a1, a2, p } => {
            two_gen_quotient(*a1, *a2, *p).map(|pair| (pair.frobenius(), Some(pair.genus())))
        }
    };
    match outcome {
        Ok(v) => Ok(Some(v)),
        Err(e) if out_of_hypotheses(&e) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The table check needs a structured form and a dividing p, nothing more;
/// closed-form hypotheses do not apply to the reduction.
fn table_instance_valid(inst: &Instance) -> Result<bool> {
    let Instance::Family(spec) = inst else {
        return Ok(false);
    };
    match spec.structured() {
        Ok(fam) => Ok(spec.p > 0 && fam.a() % spec.p == 0),
        Err(e) if out_of_hypotheses(&e) => Ok(false),
        Err(e) => Err(e),
    }
}

fn instance_generators(inst: &Instance) -> Result<GeneratorList> {
    match inst {
        Instance::Family(spec) => spec.generator_list(),
        Instance::TwoGen { a1, a2, .. } => GeneratorList::from_unsigned(&[*a1, *a2]),
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    pub instance: String,
    pub p: u64,
    pub left_label: &'static str,
    pub left_frobenius: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_genus: Option<u64>,
    pub right_label: &'static str,
    pub right_frobenius: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_genus: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionReport {
    pub name: String,
    pub family: FamilyKind,
    pub check: CheckKind,
    pub min_instances: usize,
    pub instances: usize,
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub sections: Vec<SectionReport>,
}

impl SweepReport {
    pub fn total_instances(&self) -> usize {
        self.sections.iter().map(|s| s.instances).sum()
    }

    pub fn total_mismatches(&self) -> usize {
        self.sections.iter().map(|s| s.mismatches.len()).sum()
    }

    /// Hard gate: every section ran enough instances and found nothing.
    pub fn check(&self) -> Result<()> {
        for section in &self.sections {
            if let Some(m) = section.mismatches.first() {
                return Err(Error::MismatchFound(format!(
                    "sweep \"{}\": {} mismatches, first at {} p={}: {}=F {}{} vs {}=F {}{}",
                    section.name,
                    section.mismatches.len(),
                    m.instance,
                    m.p,
                    m.left_label,
                    m.left_frobenius,
                    m.left_genus.map(|g| format!(" g {g}")).unwrap_or_default(),
                    m.right_label,
                    m.right_frobenius,
                    m.right_genus.map(|g| format!(" g {g}")).unwrap_or_default(),
                )));
            }
            if section.instances < section.min_instances {
                return Err(Error::MismatchFound(format!(
                    "sweep \"{}\": only {} instances ran, plan requires at least {}",
                    section.name, section.instances, section.min_instances
                )));
            }
        }
        Ok(())
    }
}

impl SweepPlan {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text)
            .map_err(|e| Error::constraint(format!("sweep plan does not parse: {e}")))
    }

    /// Expand, sample and run every section. Instances run in parallel on
    /// the ambient rayon pool.
    pub fn run(&self) -> Result<SweepReport> {
        let mut sections = Vec::with_capacity(self.sections.len());
        for (index, section) in self.sections.iter().enumerate() {
            // Distinct, reproducible stream per section.
            let seed = self
                .seed
                .wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sections.push(section.run(&mut rng)?);
        }
        Ok(SweepReport {
            seed: self.seed,
            sections,
        })
    }
}

impl SweepSection {
    fn run(&self, rng: &mut ChaCha8Rng) -> Result<SectionReport> {
        let mut pool = self.expand(rng)?;
        if let Some(sample) = self.sample {
            if pool.len() > sample {
                pool.shuffle(rng);
                pool.truncate(sample);
            }
        }

        let outcomes: Vec<Result<Outcome>> = pool
            .par_iter()
            .map(|inst| self.run_instance(inst))
            .collect();

        let mut instances = 0usize;
        let mut skipped = 0usize;
        let mut mismatches = Vec::new();
        for outcome in outcomes {
            match outcome? {
                Outcome::Checked => instances += 1,
                Outcome::Skipped => skipped += 1,
                Outcome::Mismatch(m) => {
                    instances += 1;
                    mismatches.push(m);
                }
            }
        }
        mismatches.sort_by(|x, y| x.instance.cmp(&y.instance).then(x.p.cmp(&y.p)));
        Ok(SectionReport {
            name: self.name.clone(),
            family: self.family,
            check: self.check,
            min_instances: self.min_instances,
            instances,
            skipped,
            mismatches,
        })
    }

    /// All in-hypothesis instances of this section's grid.
    fn expand(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Instance>> {
        if self.check == CheckKind::ScalingIdentity && self.family != FamilyKind::Scaled {
            return Err(Error::constraint(format!(
                "sweep \"{}\": scaling-identity only applies to the scaled family",
                self.name
            )));
        }
        if self.filter.is_some() && self.family != FamilyKind::GapAap {
            return Err(Error::constraint(format!(
                "sweep \"{}\": branch filters only apply to the gap-aap family",
                self.name
            )));
        }
        let mut out = Vec::new();
        match self.family {
            FamilyKind::TwoGen => {
                for a1 in required(&self.a, "a", &self.name)? {
                    let second = required(&self.a2, "a2", &self.name)?;
                    for a2 in second {
                        for p in p_choices(&self.p, a1, &self.name)? {
                            let inst = Instance::TwoGen { a1, a2, p };
                            if self.instance_valid(&inst)? {
                                out.push(inst);
                            }
                        }
                    }
                }
            }
            FamilyKind::Scaled => {
                self.expand_scaled(rng, &mut out)?;
            }
            FamilyKind::Aap | FamilyKind::GapAap | FamilyKind::PlusMinus | FamilyKind::OddAap => {
                self.expand_grid(&mut out)?;
            }
        }
        Ok(out)
    }

    fn expand_grid(&self, out: &mut Vec<Instance>) -> Result<()> {
        for a in required(&self.a, "a", &self.name)? {
            for h in required(&self.h, "h", &self.name)? {
                for d in required(&self.d, "d", &self.name)? {
                    match self.family {
                        FamilyKind::PlusMinus => {
                            for p in p_choices(&self.p, a, &self.name)? {
                                self.push_if_valid(
                                    out,
                                    FamilyVariant::PlusMinus { a, h, d },
                                    p,
                                )?;
                            }
                        }
                        FamilyKind::Aap => {
                            for k in self.k_values(a)? {
                                for p in p_choices(&self.p, a, &self.name)? {
                                    self.push_if_valid(
                                        out,
                                        FamilyVariant::Aap { a, h, d, k },
                                        p,
                                    )?;
                                }
                            }
                        }
                        FamilyKind::OddAap => {
                            for k in self.k_values(a)? {
                                for p in p_choices(&self.p, a, &self.name)? {
                                    self.push_if_valid(
                                        out,
                                        FamilyVariant::OddAap { a, h, d, k },
                                        p,
                                    )?;
                                }
                            }
                        }
                        FamilyKind::GapAap => {
                            for skip in required(&self.skip, "skip", &self.name)? {
                                for k in self.k_values(a)? {
                                    for p in self.gap_p_choices(a, skip)? {
                                        self.push_if_valid(
                                            out,
                                            FamilyVariant::GapAap { a, h, d, skip, k },
                                            p,
                                        )?;
                                    }
                                }
                            }
                        }
                        _ => unreachable!("expand_grid is only called for grid families"),
                    }
                }
            }
        }
        Ok(())
    }

    fn push_if_valid(
        &self,
        out: &mut Vec<Instance>,
        variant: FamilyVariant,
        p: u64,
    ) -> Result<()> {
        let inst = Instance::Family(FamilySpec { variant, p });
        if self.instance_valid(&inst)? {
            out.push(inst);
        }
        Ok(())
    }

    fn instance_valid(&self, inst: &Instance) -> Result<bool> {
        if self.check == CheckKind::TableVsApery {
            table_instance_valid(inst)
        } else {
            Ok(closed_value(inst)?.is_some())
        }
    }

    fn k_values(&self, a: u64) -> Result<Vec<u64>> {
        match &self.k {
            Some(ax) if ax.is_keyword("all") => match self.family {
                FamilyKind::Aap => Ok((1..a).collect()),
                FamilyKind::OddAap => Ok((1..=a.saturating_sub(2) / 2).collect()),
                _ => Err(Error::constraint(format!(
                    "sweep \"{}\": k = \"all\" is undefined for this family; give a range",
                    self.name
                ))),
            },
            Some(ax) => ax.values("k"),
            None => Err(Error::constraint(format!(
                "sweep \"{}\": axis k is required",
                self.name
            ))),
        }
    }

    fn gap_p_choices(&self, a: u64, skip: u64) -> Result<Vec<u64>> {
        match self.filter {
            Some(BranchFilter::PEqualsK) => {
                Ok(if skip > 0 && a % skip == 0 { vec![skip] } else { vec![] })
            }
            Some(BranchFilter::PEqualsKPlusOne) => {
                let p = skip + 1;
                Ok(if a % p == 0 { vec![p] } else { vec![] })
            }
            None => p_choices(&self.p, a, &self.name),
        }
    }

    fn expand_scaled(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Instance>) -> Result<()> {
        let want = self.sample.ok_or_else(|| {
            Error::constraint(format!(
                "sweep \"{}\": the scaled family draws random patterns; sample is required",
                self.name
            ))
        })?;
        let shape = self.b.ok_or_else(|| {
            Error::constraint(format!(
                "sweep \"{}\": the scaled family needs b = {{ max_len, max_value }}",
                self.name
            ))
        })?;
        if shape.max_len == 0 || shape.max_value == 0 {
            return Err(Error::constraint(format!(
                "sweep \"{}\": pattern shape must be positive",
                self.name
            )));
        }
        let a_values = required(&self.a, "a", &self.name)?;
        let d_values = required(&self.d, "d", &self.name)?;
        if a_values.is_empty() || d_values.is_empty() {
            return Err(Error::constraint(format!(
                "sweep \"{}\": empty a or d axis",
                self.name
            )));
        }

        let mut attempts = want.saturating_mul(DRAW_ATTEMPTS);
        while out.len() < want && attempts > 0 {
            attempts -= 1;
            let a = a_values[rng.gen_range(0..a_values.len())];
            let d = d_values[rng.gen_range(0..d_values.len())];
            let divs = divisors(a);
            let p = divs[rng.gen_range(0..divs.len())];
            let len = rng.gen_range(1..=shape.max_len.min(shape.max_value as usize));
            let mut b: Vec<u64> = Vec::with_capacity(len);
            while b.len() < len {
                let v = rng.gen_range(1..=shape.max_value);
                if !b.contains(&v) {
                    b.push(v);
                }
            }
            b.sort_unstable();
            let inst = Instance::Family(FamilySpec {
                variant: FamilyVariant::Scaled { a, d, b },
                p,
            });
            if self.instance_valid(&inst)? {
                out.push(inst);
            }
        }
        Ok(())
    }

    fn run_instance(&self, inst: &Instance) -> Result<Outcome> {
        if self.check == CheckKind::TableVsApery {
            // The table check never consults the closed forms, so it must not
            // be gated on their hypotheses.
            return self.run_table_instance(inst);
        }

        let Some((closed_f, closed_g)) = closed_value(inst)? else {
            return Ok(Outcome::Skipped);
        };

        if let Some(expect) = &self.expect {
            if expect.frobenius != closed_f
                || (expect.genus.is_some() && expect.genus != closed_g)
            {
                return Ok(Outcome::Mismatch(self.mismatch(
                    inst,
                    ("closed-form", closed_f, closed_g),
                    ("expected", expect.frobenius, expect.genus),
                )));
            }
        }

        match self.check {
            CheckKind::ClosedVsOracle => {
                let gens = instance_generators(inst)?;
                let want = brute_quotient_invariants(&gens, inst.p())?;
                Ok(self.compare(inst, closed_f, closed_g, &want, "oracle"))
            }
            CheckKind::ClosedVsApery | CheckKind::ScalingIdentity => {
                let gens = instance_generators(inst)?;
                let want = quotient_invariants(&QuotientSpec::new(gens, inst.p())?)?;
                Ok(self.compare(inst, closed_f, closed_g, &want, "apery-scan"))
            }
            CheckKind::TableVsApery => unreachable!("handled above"),
        }
    }

    fn run_table_instance(&self, inst: &Instance) -> Result<Outcome> {
        let Instance::Family(spec) = inst else {
            return Err(Error::constraint(format!(
                "sweep \"{}\": table-vs-apery needs a structured family",
                self.name
            )));
        };
        let fam = spec.structured()?;
        let reduced = structured_apery(&fam, spec.p)?;
        let scanned = quotient_apery(&QuotientSpec::new(spec.generator_list()?, spec.p)?)?;
        if reduced.modulus() != scanned.modulus() {
            // The scan keyed off a different generator; the tables
            // are not comparable entry by entry.
            return Ok(Outcome::Skipped);
        }
        if reduced.entries() != scanned.entries() {
            let left = reduced.invariants()?;
            let right = scanned.invariants()?;
            return Ok(Outcome::Mismatch(self.mismatch(
                inst,
                ("min-coins", left.frobenius(), Some(left.genus())),
                ("apery-scan", right.frobenius(), Some(right.genus())),
            )));
        }
        Ok(Outcome::Checked)
    }

    fn compare(
        &self,
        inst: &Instance,
        closed_f: i64,
        closed_g: Option<u64>,
        want: &InvariantPair,
        label: &'static str,
    ) -> Outcome {
        let frob_ok = closed_f == want.frobenius();
        let genus_ok = closed_g.map_or(true, |g| g == want.genus());
        if frob_ok && genus_ok {
            Outcome::Checked
        } else {
            Outcome::Mismatch(self.mismatch(
                inst,
                ("closed-form", closed_f, closed_g),
                (label, want.frobenius(), Some(want.genus())),
            ))
        }
    }

    fn mismatch(
        &self,
        inst: &Instance,
        left: (&'static str, i64, Option<u64>),
        right: (&'static str, i64, Option<u64>),
    ) -> Mismatch {
        Mismatch {
            instance: inst.to_string(),
            p: inst.p(),
            left_label: left.0,
            left_frobenius: left.1,
            left_genus: left.2,
            right_label: right.0,
            right_frobenius: right.1,
            right_genus: right.2,
        }
    }
}

enum Outcome {
    Checked,
    Skipped,
    Mismatch(Mismatch),
}
