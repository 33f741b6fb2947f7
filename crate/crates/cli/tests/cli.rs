//! End-to-end tests of the `semiq` binary: worked examples, output formats
//! and the exit-code contract (0 ok, 2 input error, 3 mismatch).

use std::path::Path;
use std::process::Output;

use semiq_cli::record::{Method, ObRecord, OutputRecord};
use semiq_core::{quotient_invariants, sylvester_two, GeneratorList, QuotientSpec};

fn semiq(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_semiq"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn semiq_env(args: &[&str], key: &str, value: &str) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_semiq"))
        .args(args)
        .env(key, value)
        .output()
        .expect("the binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn record(out: &Output) -> OutputRecord {
    let text = stdout(out);
    let line = text.lines().next().expect("one record line");
    serde_json::from_str(line).expect("record parses")
}

#[test]
fn invariants_of_a_small_pair() {
    let out = semiq(&["invariants", "3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("frobenius  7"));
    assert!(text.contains("genus      4"));
}

#[test]
fn bad_gcd_is_an_input_error_naming_the_gcd() {
    let out = semiq(&["invariants", "4,6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gcd 2"));
}

#[test]
fn unparsable_generators_are_an_input_error() {
    let out = semiq(&["invariants", "3,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot parse"));
}

#[test]
fn quotient_worked_example_through_json() {
    let out = semiq(&["quotient", "84,353,454,555,656", "--p", "14", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!((r.frobenius, r.genus), (823, Some(412)));
    assert_eq!(r.method, Method::Generic);
    assert_eq!(r.p, 14);
}

#[test]
fn two_generator_quotient_takes_the_closed_form() {
    let out = semiq(&["quotient", "3,5", "--p", "3", "--json"]);
    let r = record(&out);
    assert_eq!((r.frobenius, r.genus), (-1, Some(0)));
    assert_eq!(r.method, Method::ClosedForm);
}

#[test]
fn non_divisor_p_needs_an_explicit_oracle_request() {
    let refused = semiq(&["quotient", "4,7", "--p", "11"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(stderr(&refused).contains("--method oracle"));

    let forced = semiq(&["quotient", "4,7", "--p", "11", "--method", "oracle", "--json"]);
    assert_eq!(forced.status.code(), Some(0));
    let r = record(&forced);
    assert_eq!((r.frobenius, r.genus), (-1, Some(0)));
    assert_eq!(r.method, Method::Oracle);
}

#[test]
fn family_closed_forms_reproduce_pinned_values() {
    let gap = record(&semiq(&[
        "family", "gap-aap", "--a", "300", "--h", "4", "--d", "7", "--K", "6", "--k", "13",
        "--p", "5", "--json",
    ]));
    assert_eq!((gap.frobenius, gap.genus), (6127, Some(3108)));

    let pm = record(&semiq(&[
        "family", "plus-minus", "--a", "1120", "--h", "7", "--d", "9", "--p", "28", "--json",
    ]));
    assert_eq!((pm.frobenius, pm.genus), (156580, Some(78376)));
}

#[test]
fn all_methods_agree_on_one_family() {
    let mut seen = Vec::new();
    for method in ["closed-form", "min-coins", "generic", "oracle"] {
        let r = record(&semiq(&[
            "family", "gap-aap", "--a", "86", "--h", "5", "--d", "9", "--K", "2", "--k", "6",
            "--p", "43", "--method", method, "--json",
        ]));
        assert_eq!((r.frobenius, r.genus), (87, Some(44)), "method {method}");
        seen.push(r.method);
    }
    assert_eq!(
        seen,
        [Method::ClosedForm, Method::MinCoins, Method::Generic, Method::Oracle]
    );
}

#[test]
fn scaled_family_matches_direct_computation() {
    let r = record(&semiq(&[
        "family", "scaled", "--a", "6", "--d", "5", "--b", "4,9", "--p", "3", "--json",
    ]));
    let direct = quotient_invariants(
        &QuotientSpec::new(GeneratorList::from_unsigned(&[6, 20, 45]).unwrap(), 3).unwrap(),
    )
    .unwrap();
    assert_eq!(r.frobenius, direct.frobenius());
    assert_eq!(r.genus, Some(direct.genus()));
}

#[test]
fn verify_confirms_a_worked_example() {
    let out = semiq(&[
        "family", "aap", "--a", "84", "--h", "3", "--d", "101", "--k", "4", "--p", "21",
        "--verify", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!((r.frobenius, r.genus, r.verified), (491, Some(249), Some(true)));
}

#[test]
fn odd_family_json_omits_the_genus() {
    let out = semiq(&[
        "family", "odd-aap", "--a", "33", "--h", "4", "--d", "5", "--k", "2", "--p", "11",
        "--json",
    ]);
    let line = stdout(&out);
    assert!(!line.contains("genus"));
    let r = record(&out);
    assert_eq!((r.frobenius, r.genus), (79, None));
}

#[test]
fn family_out_of_hypotheses_is_an_input_error() {
    let out = semiq(&[
        "family", "odd-aap", "--a", "9", "--h", "1", "--d", "2", "--k", "1", "--p", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("t'"));
}

#[test]
fn csv_row_shape() {
    let out = semiq(&["quotient", "3,5", "--p", "3", "--csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "input,p,method,frobenius,genus");
    assert_eq!(lines[1], "\"3,5\",3,closed-form,-1,0");
}

#[test]
fn apery_lists_every_residue_class() {
    let out = semiq(&["apery", "9,11,15", "--json"]);
    let r = record(&out);
    let listing = r.apery.expect("table included");
    assert_eq!(listing.modulus, 9);
    assert_eq!(listing.entries.len(), 9);
    assert_eq!(listing.entries[0], 0);
    assert_eq!(r.frobenius, 43);
}

#[test]
fn quotient_apery_table_comes_from_the_scan() {
    let out = semiq(&["apery", "84,353,454,555,656", "--p", "14", "--json"]);
    let r = record(&out);
    let listing = r.apery.expect("table included");
    assert_eq!(listing.modulus, 6);
    assert_eq!(r.frobenius, 823);
}

#[test]
fn table_guard_refuses_then_yields_to_force() {
    let refused = semiq(&["invariants", "1000003,1000033"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(stderr(&refused).contains("--force"));

    let forced = semiq(&["invariants", "1000003,1000033", "--force", "--json"]);
    assert_eq!(forced.status.code(), Some(0));
    let expected = sylvester_two(1000003, 1000033).unwrap();
    assert_eq!(record(&forced).frobenius, expected.frobenius());

    let apery_refused = semiq(&["apery", "1000003,1000033"]);
    assert_eq!(apery_refused.status.code(), Some(2));
}

#[test]
fn ob_reports_value_and_witness() {
    let out = semiq(&["ob", "4,9", "--m", "30", "--witness", "--json"]);
    let r: ObRecord = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(r.value, Some(5));
    let witness = r.witness.expect("witness included");
    assert_eq!(witness.iter().sum::<u64>(), 30);
    assert_eq!(witness.len(), 5);

    let unreachable = semiq(&["ob", "4,9", "--m", "5", "--json"]);
    let r: ObRecord = serde_json::from_str(stdout(&unreachable).lines().next().unwrap()).unwrap();
    assert_eq!(r.value, None);
}

#[test]
fn memory_cap_env_limits_the_oracle() {
    let capped = semiq_env(
        &["quotient", "84,353,454,555,656", "--p", "14", "--method", "oracle"],
        "SEMIQ_MEMORY_CAP",
        "100",
    );
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr(&capped).contains("cap"));

    let garbled = semiq_env(
        &["invariants", "3,5", "--method", "oracle"],
        "SEMIQ_MEMORY_CAP",
        "banana",
    );
    assert_eq!(garbled.status.code(), Some(2));
    assert!(stderr(&garbled).contains("SEMIQ_MEMORY_CAP"));
}

#[test]
fn out_flag_writes_the_payload_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("record.json");
    let out = semiq(&[
        "invariants", "3,5", "--json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let r: OutputRecord =
        serde_json::from_str(std::fs::read_to_string(&path).unwrap().trim()).unwrap();
    assert_eq!((r.frobenius, r.genus), (7, Some(4)));
}

fn bundled(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../sweeps")
        .join(name)
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn sweep_regression_bundle_is_clean() {
    let out = semiq(&["sweep", &bundled("regression.toml"), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["sections"].as_array().unwrap().len(), 6);
}

#[test]
fn sweep_mismatch_exits_three_with_the_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.toml");
    std::fs::write(
        &path,
        r#"
seed = 1
[[sweep]]
name = "wrong pin"
family = "aap"
check = "closed-vs-oracle"
min_instances = 1
a = 84
h = 3
d = 101
k = 4
p = 21
[sweep.expect]
frobenius = 492
"#,
    )
    .unwrap();
    let out = semiq(&["sweep", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("mismatch"));
    assert!(stderr(&out).contains("aap(a=84"));
}

#[test]
fn sweep_rejects_a_malformed_plan() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, "not toml [").unwrap();
    let out = semiq(&["sweep", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
