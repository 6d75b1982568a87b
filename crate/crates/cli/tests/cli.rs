use std::path::PathBuf;
use std::process::{Command, Output};

use kei_cli::{
    CheckReport, EnumerateReport, EnvelopeReport, HomcountReport, IsoReport, LaurentJson,
    OrbitsReport, ProbeJson, ReduceReport,
};
use serde::de::DeserializeOwned;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn kei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kei"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Runs with `--json`, parses the report and checks it serialises back to
/// the same document.
fn json_report<T: DeserializeOwned + serde::Serialize>(args: &[&str]) -> (i32, T) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = kei(&all);
    let text = stdout(&out);
    let report: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let again: serde_json::Value = serde_json::to_value(&report).unwrap();
    let original: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(again, original);
    (code(&out), report)
}

#[test]
fn check_exit_codes() {
    assert_eq!(
        code(&kei(&["check", &data("dihedral5.qdl"), "--involutory"])),
        0
    );

    let out = kei(&["check", &data("bad.qdl")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("row 0 is not a permutation"));

    let out = kei(&["check", "missing.qdl"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("missing.qdl"));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let out = kei(&["check", &data("range.qdl")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("range.qdl:3:5:"), "{}", stderr(&out));
}

#[test]
fn check_report_round_trips() {
    let (c, r): (_, CheckReport) = json_report(&["check", "conj-s3", "--involutory"]);
    assert_eq!(c, 1);
    assert_eq!(r.quandle, Some(true));
    assert_eq!(r.involutory, Some(false));
    assert!(r.involutory_witness.is_some());

    let (c, r): (_, CheckReport) = json_report(&["check", &data("xyz.json"), "--involutory"]);
    assert_eq!((c, r.order, r.ok), (0, 3, true));
}

#[test]
fn laurent_reports() {
    let out = kei(&["laurent", "--n", "5", "--group", "z2", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["theorem"], "laurent");
    assert_eq!(v["n"], 5);
    assert_eq!(v["group"], "z2");
    assert_eq!(v["iso_verified"], true);
    assert_eq!(v["pairs_checked"], 25);

    let (c, r): (_, LaurentJson) = json_report(&["laurent", "--n", "3", "--group", "s3"]);
    assert_eq!((c, r.pairs_checked, r.iso_verified), (0, 81, true));
    assert_eq!(r.iso.len(), 9);

    let (c, r): (_, LaurentJson) =
        json_report(&["laurent", "--n", "7", "--group", &data("z2.grp")]);
    assert_eq!((c, r.pairs_checked), (0, 49));

    let out = kei(&["laurent", "--n", "4"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("2a = 0"));

    let out = kei(&["laurent", "--n", "5", "--group", "z2", "--character", "++"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn freeprobe_reports() {
    let (c, r): (_, ProbeJson) = json_report(&["freeprobe", "--model", "ev"]);
    assert_eq!(c, 1);
    let rel = r.relation.unwrap();
    assert_eq!((rel.expression.as_str(), rel.depth), ("ρ▷σ = τ", 1));

    let (c, r): (_, ProbeJson) = json_report(&[
        "freeprobe",
        "--file",
        &data("dihedral3.qdl"),
        "--gens",
        "0,1",
        "--depth",
        "3",
    ]);
    assert_eq!(c, 1);
    assert!(r.relation.unwrap().replayed);

    let out = kei(&[
        "freeprobe",
        "--file",
        "dihedral3",
        "--gens",
        "0",
        "--depth",
        "0",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("no relation within depth 0"));

    assert_eq!(code(&kei(&["freeprobe", "--model", "nope"])), 2);
    assert_eq!(
        code(&kei(&["freeprobe", "--file", "conj-s3", "--gens", "1"])),
        2
    );
}

#[test]
fn orbits_homcount_iso() {
    let (_, r): (_, OrbitsReport) = json_report(&["orbits", "conj-s3"]);
    assert_eq!(r.count, 3);
    assert_eq!(r.classes[0], vec![0]);

    let (_, r): (_, HomcountReport) =
        json_report(&["homcount", "dihedral3", "dihedral3", "--list", "2"]);
    assert_eq!(r.count, 9);
    assert_eq!(r.maps.unwrap().len(), 2);
    let (_, r): (_, HomcountReport) = json_report(&["homcount", "singleton", "conj-s4"]);
    assert_eq!(r.count, 24);

    let (c, r): (_, IsoReport) = json_report(&["iso", "dihedral3", "inv-s3"]);
    assert!(c == 0 && r.isomorphic);
    let (c, r): (_, IsoReport) = json_report(&["iso", "dihedral4", "trivial4"]);
    assert!(c == 1 && r.map.is_none());
}

#[test]
fn enumerate_balls() {
    let (_, r): (_, EnumerateReport) = json_report(&[
        "enumerate",
        "--kind",
        "coxeter",
        "--rank",
        "2",
        "--radius",
        "7",
        "--involutions",
    ]);
    assert_eq!(r.count, 8);
    let (_, r): (_, EnumerateReport) = json_report(&[
        "enumerate",
        "--kind",
        "free",
        "--rank",
        "2",
        "--radius",
        "2",
    ]);
    assert_eq!(r.count, 1 + 4 + 12);
    let (_, r): (_, EnumerateReport) =
        json_report(&["enumerate", "--kind", "fiq", "--rank", "3", "--radius", "3"]);
    assert_eq!(r.elements[..4], ["s", "t", "u", "s t s"]);

    let out = Command::new(env!("CARGO_BIN_EXE_kei"))
        .args([
            "enumerate",
            "--kind",
            "free",
            "--rank",
            "3",
            "--radius",
            "20",
        ])
        .env("KEI_MAX_BALL", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("1000"));
}

#[test]
fn envelope_search_and_verify() {
    let args = [
        "envelope", "swap3", "--labels", "x,y,z", "--equate", "y,z", "--depth", "4",
    ];
    let (c, r): (_, EnvelopeReport) = json_report(&args);
    assert!(c == 0 && r.certified);
    assert_eq!(r.trace.first().unwrap(), "y z^-1");
    assert_eq!(r.trace.last().unwrap(), "e");

    let path = std::env::temp_dir().join(format!("kei-cert-{}.json", std::process::id()));
    std::fs::write(
        &path,
        serde_json::to_string(&r.certificate.unwrap()).unwrap(),
    )
    .unwrap();
    let p = path.to_string_lossy().into_owned();
    let out = kei(&["envelope", "swap3", "--verify", &p]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("accepted"));

    let mut cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let flipped = !cert["steps"][0]["inverse"].as_bool().unwrap();
    cert["steps"][0]["inverse"] = flipped.into();
    std::fs::write(&path, cert.to_string()).unwrap();
    assert_eq!(code(&kei(&["envelope", "swap3", "--verify", &p])), 1);
    std::fs::remove_file(&path).unwrap();

    let out = kei(&[
        "envelope",
        "dihedral3",
        "--equate",
        "0,1",
        "--depth",
        "3",
        "--max-len",
        "6",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("no derivation"));

    let out = kei(&["envelope", "swap3", "--labels", "x,y,z", "--presentation"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("rel "))
            .count(),
        9
    );
}

#[test]
fn reduce_words() {
    let (_, r): (_, ReduceReport) = json_report(&["reduce", "s t s^-1 s t^-1"]);
    assert_eq!((r.reduced.as_str(), r.length), ("s", 1));
    let (_, r): (_, ReduceReport) = json_report(&["reduce", "--mode", "coxeter", "s t u u t"]);
    assert!(r.involution);
    let out = kei(&["reduce", "s q"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("1:3"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&kei(&[])), 2);
    assert_eq!(code(&kei(&["laurent"])), 2);
    assert_eq!(code(&kei(&["frobnicate"])), 2);
}
