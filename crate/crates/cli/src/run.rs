//! Command dispatch, path selection and the exit-code contract:
//! 0 success, 2 input or constraint error, 3 verification mismatch.

use std::io::Write;

use semiq_core::oracle::DEFAULT_SIEVE_CAP_BITS;
use semiq_core::{
    apery_set, brute_quotient_invariants_capped, quotient_apery, sylvester_two, two_gen_quotient,
    AperyTable, FamilySpec, FamilyVariant, GeneratorList, QuotientSpec, SweepPlan,
};

use crate::args::{
    AapArgs, Cli, Command, FamilyCommand, FamilyOpts, GapAapArgs, MethodChoice, OddAapArgs,
    PlusMinusArgs, ScaledArgs, TableOpts,
};
use crate::output;
use crate::record::{AperyListing, Method, ObRecord, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Refuse to materialize larger Apéry tables without `--force`.
const TABLE_GUARD: u64 = 1_000_000;

/// Run a parsed command line, writing payload to `sink` and complaints to
/// stderr. Returns the process exit code.
pub fn execute(cli: &Cli, sink: &mut dyn Write) -> i32 {
    match dispatch(cli, sink) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cli: &Cli, sink: &mut dyn Write) -> Result<i32, String> {
    match &cli.command {
        Command::Invariants { gens, method, table } => {
            let list = parse_gens(gens)?;
            let record = invariants_record(&list, *method, table)?;
            emit_records(cli, sink, &[record])?;
            Ok(EXIT_OK)
        }
        Command::Quotient { gens, p, method, table } => {
            let list = parse_gens(gens)?;
            let record = quotient_record(&list, *p, *method, table)?;
            emit_records(cli, sink, &[record])?;
            Ok(EXIT_OK)
        }
        Command::Family(variant) => {
            let (spec, opts) = family_spec(variant)?;
            let mut record = family_record(&spec, opts)?;
            let mut code = EXIT_OK;
            if opts.verify {
                let agreed = verify_against_oracle(&spec, &record)?;
                record.verified = Some(agreed);
                if !agreed {
                    code = EXIT_MISMATCH;
                }
            }
            emit_records(cli, sink, &[record])?;
            Ok(code)
        }
        Command::Apery { gens, p, modulus, force } => {
            let list = parse_gens(gens)?;
            let record = apery_record(&list, *p, *modulus, *force)?;
            emit_records(cli, sink, &[record])?;
            Ok(EXIT_OK)
        }
        Command::Ob { parts, m, witness } => {
            if cli.csv {
                return Err("--csv applies to invariant records; ob output has \
                            a different shape"
                    .into());
            }
            let parts = parse_numbers(parts)?;
            let record = ob_record(&parts, *m, *witness)?;
            let text = if cli.json {
                output::ob_json(&record)?
            } else {
                output::ob_text(&record)
            };
            write_payload(cli, sink, &text)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { plan, jobs } => {
            if cli.csv {
                return Err("--csv applies to invariant records; sweep reports \
                            are JSON"
                    .into());
            }
            run_sweep(cli, sink, plan, *jobs)
        }
    }
}

/// Oracle memory cap in bits: SEMIQ_MEMORY_CAP when set, else the default.
fn sieve_cap() -> Result<u64, String> {
    match std::env::var("SEMIQ_MEMORY_CAP") {
        Ok(text) => text.trim().parse().map_err(|_| {
            format!("SEMIQ_MEMORY_CAP must be a bit count, got {text:?}")
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SIEVE_CAP_BITS),
        Err(e) => Err(format!("SEMIQ_MEMORY_CAP is unreadable: {e}")),
    }
}

fn parse_numbers(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| format!("cannot parse {t:?} as a positive integer"))
        })
        .collect()
}

fn parse_gens(text: &str) -> Result<GeneratorList, String> {
    let values = parse_numbers(text)?;
    GeneratorList::from_unsigned(&values).map_err(|e| e.to_string())
}

fn echo_gens(list: &GeneratorList) -> String {
    let parts: Vec<String> = list.gens().iter().map(|g| g.to_string()).collect();
    parts.join(",")
}

/// Materializing a table of this modulus is a deliberate act above the
/// guard size.
fn check_table_guard(modulus: u64, force: bool) -> Result<(), String> {
    if modulus > TABLE_GUARD && !force {
        return Err(format!(
            "the table would hold {modulus} entries; pass --force to compute it anyway"
        ));
    }
    Ok(())
}

fn listing_if(requested: bool, table: &AperyTable) -> Option<AperyListing> {
    requested.then(|| AperyListing::from(table))
}

fn invariants_record(
    list: &GeneratorList,
    method: MethodChoice,
    table: &TableOpts,
) -> Result<OutputRecord, String> {
    let (method, pair, listing) = match method {
        MethodChoice::Auto | MethodChoice::Generic => {
            check_table_guard(list.first(), table.force)?;
            let apery = apery_set(list, list.first()).map_err(|e| e.to_string())?;
            let pair = apery.invariants().map_err(|e| e.to_string())?;
            (Method::Generic, pair, listing_if(table.apery, &apery))
        }
        MethodChoice::ClosedForm => {
            if list.len() != 2 {
                return Err(format!(
                    "the closed form covers exactly two generators, this list has {}",
                    list.len()
                ));
            }
            if table.apery {
                return Err("the closed form carries no table; drop --apery or \
                            use --method generic"
                    .into());
            }
            let pair =
                sylvester_two(list.first(), list.largest()).map_err(|e| e.to_string())?;
            (Method::ClosedForm, pair, None)
        }
        MethodChoice::Oracle => {
            if table.apery {
                return Err("the oracle path carries no table; drop --apery or \
                            use --method generic"
                    .into());
            }
            let pair = brute_quotient_invariants_capped(list, 1, sieve_cap()?)
                .map_err(|e| e.to_string())?;
            (Method::Oracle, pair, None)
        }
        MethodChoice::MinCoins => {
            return Err("min-coins applies to structured quotients; use the \
                        family command"
                .into())
        }
    };
    Ok(OutputRecord {
        input: echo_gens(list),
        p: 1,
        method,
        frobenius: pair.frobenius(),
        genus: Some(pair.genus()),
        apery: listing,
        verified: None,
    })
}

fn quotient_record(
    list: &GeneratorList,
    p: u64,
    method: MethodChoice,
    table: &TableOpts,
) -> Result<OutputRecord, String> {
    if p == 0 {
        return Err("p must be a positive integer".into());
    }
    let divisible = list.gens().iter().any(|&g| g % p == 0);
    let two_gen_ready = list.len() == 2 && list.first() % p == 0;

    let choice = match method {
        MethodChoice::Auto => {
            if two_gen_ready {
                MethodChoice::ClosedForm
            } else if divisible {
                MethodChoice::Generic
            } else {
                return Err(format!(
                    "p = {p} divides no generator, so no table-backed path \
                     applies; rerun with --method oracle"
                ));
            }
        }
        MethodChoice::MinCoins => {
            return Err("min-coins needs a family description; use the family \
                        command"
                .into())
        }
        other => other,
    };

    let (method, pair, listing) = match choice {
        MethodChoice::ClosedForm => {
            if !two_gen_ready {
                return Err(format!(
                    "the closed form needs two generators with p dividing the \
                     smallest; got {} generators with p = {p}",
                    list.len()
                ));
            }
            if table.apery {
                return Err("the closed form carries no table; drop --apery or \
                            use --method generic"
                    .into());
            }
            let pair =
                two_gen_quotient(list.first(), list.largest(), p).map_err(|e| e.to_string())?;
            (Method::ClosedForm, pair, None)
        }
        MethodChoice::Generic => {
            let spec = QuotientSpec::new(list.clone(), p).map_err(|e| e.to_string())?;
            let apery = quotient_apery(&spec).map_err(|e| e.to_string())?;
            check_table_guard(apery.modulus(), table.force)?;
            let pair = apery.invariants().map_err(|e| e.to_string())?;
            (Method::Generic, pair, listing_if(table.apery, &apery))
        }
        MethodChoice::Oracle => {
            if table.apery {
                return Err("the oracle path carries no table; drop --apery or \
                            use --method generic"
                    .into());
            }
            let pair = brute_quotient_invariants_capped(list, p, sieve_cap()?)
                .map_err(|e| e.to_string())?;
            (Method::Oracle, pair, None)
        }
        MethodChoice::Auto | MethodChoice::MinCoins => unreachable!("resolved above"),
    };
    Ok(OutputRecord {
        input: echo_gens(list),
        p,
        method,
        frobenius: pair.frobenius(),
        genus: Some(pair.genus()),
        apery: listing,
        verified: None,
    })
}

fn family_spec(command: &FamilyCommand) -> Result<(FamilySpec, &FamilyOpts), String> {
    Ok(match command {
        FamilyCommand::Aap(AapArgs { a, h, d, k, p, opts }) => (
            FamilySpec {
                variant: FamilyVariant::Aap { a: *a, h: *h, d: *d, k: *k },
                p: *p,
            },
            opts,
        ),
        FamilyCommand::GapAap(GapAapArgs { a, h, d, skip, k, p, opts }) => (
            FamilySpec {
                variant: FamilyVariant::GapAap {
                    a: *a,
                    h: *h,
                    d: *d,
                    skip: *skip,
                    k: *k,
                },
                p: *p,
            },
            opts,
        ),
        FamilyCommand::PlusMinus(PlusMinusArgs { a, h, d, p, opts }) => (
            FamilySpec {
                variant: FamilyVariant::PlusMinus { a: *a, h: *h, d: *d },
                p: *p,
            },
            opts,
        ),
        FamilyCommand::OddAap(OddAapArgs { a, h, d, k, p, opts }) => (
            FamilySpec {
                variant: FamilyVariant::OddAap { a: *a, h: *h, d: *d, k: *k },
                p: *p,
            },
            opts,
        ),
        FamilyCommand::Scaled(ScaledArgs { a, d, b, p, opts }) => {
            let b = parse_numbers(b)?;
            (
                FamilySpec {
                    variant: FamilyVariant::Scaled { a: *a, d: *d, b },
                    p: *p,
                },
                opts,
            )
        }
    })
}

fn family_record(spec: &FamilySpec, opts: &FamilyOpts) -> Result<OutputRecord, String> {
    let (method, frobenius, genus, listing) = match opts.method {
        MethodChoice::Auto | MethodChoice::ClosedForm => {
            if opts.table.apery {
                return Err("the closed form carries no table; drop --apery or \
                            use --method min-coins"
                    .into());
            }
            let outcome = spec.evaluate().map_err(|e| e.to_string())?;
            (Method::ClosedForm, outcome.frobenius, outcome.genus, None)
        }
        MethodChoice::MinCoins => {
            let fam = spec.structured().map_err(|e| e.to_string())?;
            let table =
                semiq_core::structured_apery(&fam, spec.p).map_err(|e| e.to_string())?;
            check_table_guard(table.modulus(), opts.table.force)?;
            let pair = table.invariants().map_err(|e| e.to_string())?;
            (
                Method::MinCoins,
                pair.frobenius(),
                Some(pair.genus()),
                listing_if(opts.table.apery, &table),
            )
        }
        MethodChoice::Generic => {
            let gens = spec.generator_list().map_err(|e| e.to_string())?;
            let q = QuotientSpec::new(gens, spec.p).map_err(|e| e.to_string())?;
            let table = quotient_apery(&q).map_err(|e| e.to_string())?;
            check_table_guard(table.modulus(), opts.table.force)?;
            let pair = table.invariants().map_err(|e| e.to_string())?;
            (
                Method::Generic,
                pair.frobenius(),
                Some(pair.genus()),
                listing_if(opts.table.apery, &table),
            )
        }
        MethodChoice::Oracle => {
            if opts.table.apery {
                return Err("the oracle path carries no table; drop --apery or \
                            use --method min-coins"
                    .into());
            }
            let gens = spec.generator_list().map_err(|e| e.to_string())?;
            let pair = brute_quotient_invariants_capped(&gens, spec.p, sieve_cap()?)
                .map_err(|e| e.to_string())?;
            (Method::Oracle, pair.frobenius(), Some(pair.genus()), None)
        }
    };
    Ok(OutputRecord {
        input: spec.variant.to_string(),
        p: spec.p,
        method,
        frobenius,
        genus,
        apery: listing,
        verified: None,
    })
}

/// True when the oracle reproduces the record (genus compared only when the
/// record has one).
fn verify_against_oracle(spec: &FamilySpec, record: &OutputRecord) -> Result<bool, String> {
    let gens = spec.generator_list().map_err(|e| e.to_string())?;
    let oracle = brute_quotient_invariants_capped(&gens, spec.p, sieve_cap()?)
        .map_err(|e| e.to_string())?;
    let frobenius_ok = oracle.frobenius() == record.frobenius;
    let genus_ok = record.genus.map_or(true, |g| g == oracle.genus());
    if !(frobenius_ok && genus_ok) {
        eprintln!(
            "verification failed for {} p={}: {} gives F {}{}, oracle gives F {} g {}",
            record.input,
            record.p,
            record.method,
            record.frobenius,
            record.genus.map(|g| format!(" g {g}")).unwrap_or_default(),
            oracle.frobenius(),
            oracle.genus(),
        );
    }
    Ok(frobenius_ok && genus_ok)
}

fn apery_record(
    list: &GeneratorList,
    p: u64,
    modulus: Option<u64>,
    force: bool,
) -> Result<OutputRecord, String> {
    let table = if p <= 1 {
        let m = modulus.unwrap_or(list.first());
        check_table_guard(m, force)?;
        apery_set(list, m).map_err(|e| e.to_string())?
    } else {
        if modulus.is_some() {
            return Err("--modulus applies to the base table only; the quotient \
                        scan picks its own modulus"
                .into());
        }
        let spec = QuotientSpec::new(list.clone(), p).map_err(|e| e.to_string())?;
        let table = quotient_apery(&spec).map_err(|e| e.to_string())?;
        check_table_guard(table.modulus(), force)?;
        table
    };
    let pair = table.invariants().map_err(|e| e.to_string())?;
    Ok(OutputRecord {
        input: echo_gens(list),
        p: p.max(1),
        method: Method::Generic,
        frobenius: pair.frobenius(),
        genus: Some(pair.genus()),
        apery: Some(AperyListing::from(&table)),
        verified: None,
    })
}

fn ob_record(parts: &[u64], m: u64, want_witness: bool) -> Result<ObRecord, String> {
    let mut table = semiq_core::ObTable::new(parts).map_err(|e| e.to_string())?;
    let value = table.value(m).map_err(|e| e.to_string())?;
    let witness = if want_witness && value.is_some() {
        table.witness(m).map_err(|e| e.to_string())?
    } else {
        None
    };
    Ok(ObRecord {
        parts: parts.to_vec(),
        target: m,
        value,
        witness,
    })
}

fn run_sweep(
    cli: &Cli,
    sink: &mut dyn Write,
    plan_path: &std::path::Path,
    jobs: Option<usize>,
) -> Result<i32, String> {
    let text = std::fs::read_to_string(plan_path)
        .map_err(|e| format!("cannot read {}: {e}", plan_path.display()))?;
    let plan = SweepPlan::from_toml_str(&text).map_err(|e| e.to_string())?;

    let report = match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| format!("cannot build a {n}-thread pool: {e}"))?;
            pool.install(|| plan.run())
        }
        None => plan.run(),
    }
    .map_err(|e| e.to_string())?;

    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| format!("cannot serialize the report: {e}"))?;
    write_payload(cli, sink, &(json + "\n"))?;

    if report.total_mismatches() > 0 {
        // check() formats the first counterexample.
        let message = report.check().unwrap_err().to_string();
        eprintln!("{message}");
        return Ok(EXIT_MISMATCH);
    }
    report.check().map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn emit_records(cli: &Cli, sink: &mut dyn Write, records: &[OutputRecord]) -> Result<(), String> {
    let text = if cli.json {
        output::records_json(records)?
    } else if cli.csv {
        output::records_csv(records)?
    } else {
        output::records_text(records)
    };
    write_payload(cli, sink, &text)
}

fn write_payload(cli: &Cli, sink: &mut dyn Write, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => sink
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    }
}
