//! End-to-end checks of the `hodge` binary: exit codes, report files,
//! and output determinism.

mod common;

use std::path::PathBuf;
use std::process::Command;

use hodge_cli::schema::{serialize_document, Document, Payload};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/{}.json", name))
}

fn hodge() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hodge"))
}

#[test]
fn validate_fixtures_exits_zero() {
    for name in ["bloch", "srinivas"] {
        let out = hodge().arg("validate").arg(fixture(name)).output().unwrap();
        assert!(out.status.success(), "{}: {}", name, String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stdout).contains("OK"));
    }
}

#[test]
fn motive_without_degree_is_a_validation_error() {
    let out = hodge()
        .args(["motive", "-p", "2"])
        .arg(fixture("srinivas"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unsupported_command_kind_exits_three() {
    // hodge-numbers is undefined for one-motive documents
    let mut rng = common::Rng::new(3);
    let abelian = common::random_abelian(&mut rng, 1, 1, 1);
    let values = common::random_values(&mut rng, 1, 2, 1);
    let doc = Document {
        d: 1,
        payload: Payload::OneMotive(hodge_cli::schema::OneMotiveDoc { p: 1, abelian, values }),
    };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("motive.json");
    std::fs::write(&path, serialize_document(&doc)).unwrap();
    let out = hodge().arg("hodge-numbers").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    // while realize accepts it
    let out = hodge().args(["realize", "-p", "1"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn garbage_input_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ definitely not a document").unwrap();
    let out = hodge().arg("validate").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    let missing = dir.path().join("nope.json");
    let out = hodge().arg("validate").arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn machine_reports_are_byte_identical_across_runs() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    for dir in [&dir1, &dir2] {
        let out = hodge()
            .args(["motive", "-p", "2", "-n", "4"])
            .arg(fixture("srinivas"))
            .env("HODGE_OUTPUT_DIR", dir.path())
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(dir1.path().join("motive-report.json")).unwrap();
    let b = std::fs::read(dir2.path().join("motive-report.json")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn square_check_reports_commuting_square() {
    let out = hodge()
        .args(["square-check", "-p", "2"])
        .arg(fixture("srinivas"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("commutes"), "{}", text);
    assert!(text.contains("kernel rank 2"), "{}", text);
}
