use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use coltrs::format::{self, ReportFile};
use coltrs_core::certify::parity_closed_form;
use coltrs_core::codec::encode;
use coltrs_core::construct::{five_step, gen_rs};
use coltrs_core::reference::reference;
use coltrs_core::{Elem, Field, FiveStepChoices};
use tempfile::TempDir;

fn coltrs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coltrs"))
        .current_dir(dir)
        .env_remove("COLTRS_JOBS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(out: &Output) -> ReportFile {
    serde_json::from_str(&stdout(out)).expect("report JSON on stdout")
}

fn gf29_spec_json() -> String {
    format::spec_to_json(&reference(1).unwrap().spec)
}

#[test]
fn construct_matches_library_and_reference() {
    let dir = TempDir::new().unwrap();
    let out = coltrs(
        dir.path(),
        &["construct", "--q", "29", "--k", "7", "--n", "16", "--b", "12", "--c", "7", "--l1", "15", "--l2", "21", "--extended"],
    );
    assert_eq!(status(&out), 0);
    assert!(stdout(&out).contains("13 points + 2 twisted + 1 at infinity -> n = 16, k = 7"));
    let g = format::matrix_from_csv(&fs::read_to_string(dir.path().join("code.gen.csv")).unwrap()).unwrap();
    assert_eq!(g, reference(1).unwrap().spec.generator());

    let f = Field::prime(29).unwrap();
    let e = Elem::from_index;
    let choices = FiveStepChoices {
        b: Some(e(12)),
        c: Some(e(7)),
        lambdas: [Some(e(15)), Some(e(21))],
        extended: Some(true),
        ..FiveStepChoices::default()
    };
    let direct = five_step(&f, 16, 7, &choices).unwrap();
    let spec_text = fs::read_to_string(dir.path().join("code.spec.json")).unwrap();
    assert_eq!(spec_text, format::spec_to_json(&direct));
}

#[test]
fn construct_defaults_then_certify() {
    let dir = TempDir::new().unwrap();
    assert_eq!(status(&coltrs(dir.path(), &["construct", "--q", "29", "--k", "7", "--n", "16", "--format", "json"])), 0);
    let out = coltrs(dir.path(), &["certify", "--spec", "code.spec.json"]);
    assert_eq!(status(&out), 0);
    let r = report(&out);
    assert!(r.is_mds);
    assert_eq!((r.n, r.k, r.d, r.schur_dim), (16, 7, Some(10), 14));
    assert_eq!(r.non_grs.as_deref(), Some("not-equivalent"));
    let g = format::matrix_from_json(&fs::read_to_string(dir.path().join("code.gen.json")).unwrap()).unwrap();
    let out = coltrs(dir.path(), &["certify", "--matrix", "code.gen.json"]);
    assert_eq!(report(&out).schur_dim, 14);
    assert_eq!(g.shape(), (7, 16));
}

#[test]
fn odd_squares_rejects_even_order() {
    let dir = TempDir::new().unwrap();
    let out = coltrs(dir.path(), &["construct", "--q", "8", "--k", "3", "--variant", "odd-squares"]);
    assert_eq!(status(&out), 2);
    assert!(!dir.path().join("code.spec.json").exists());
}

#[test]
fn extension_field_output_has_both_forms() {
    let dir = TempDir::new().unwrap();
    let out = coltrs(dir.path(), &["construct", "--q", "64", "--k", "4", "--variant", "even-cubics"]);
    assert_eq!(status(&out), 0);
    assert!(stdout(&out).contains("w^1 (0,1,0,0,0,0)"));
    let spec = fs::read_to_string(dir.path().join("code.spec.json")).unwrap();
    assert!(spec.contains("\"exp\"") && spec.contains("\"coeffs\""));
}

#[test]
fn rs_baseline_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let f = Field::prime(13).unwrap();
    let pts: Vec<Elem> = (0..10).map(Elem::from_index).collect();
    fs::write(dir.path().join("rs.csv"), format::matrix_to_csv(&gen_rs(&f, &pts, 4, false).unwrap())).unwrap();
    let out = coltrs(dir.path(), &["certify", "--matrix", "rs.csv"]);
    assert_eq!(status(&out), 0);
    let r = report(&out);
    assert_eq!((r.schur_dim, r.non_grs.as_deref(), r.d), (7, Some("inconclusive"), Some(7)));
    let out = coltrs(dir.path(), &["certify", "--matrix", "rs.csv", "--mode", "criterion"]);
    assert_eq!(status(&out), 2);
}

#[test]
fn counterexample_exits_one_with_witness() {
    let dir = TempDir::new().unwrap();
    let spec = reference(1).unwrap().spec;
    let mus = spec.mus();
    let forced = spec.field().product(mus[..6].iter().copied());
    let bad = spec.with_lambdas(vec![spec.lambdas()[0], forced]).unwrap();
    fs::write(dir.path().join("bad.json"), format::spec_to_json(&bad)).unwrap();
    for mode in ["oracle", "criterion", "both"] {
        let out = coltrs(dir.path(), &["certify", "--spec", "bad.json", "--mode", mode]);
        assert_eq!(status(&out), 1, "mode {mode}");
        let r = report(&out);
        assert!(!r.is_mds);
        assert_eq!(r.witness.len(), 7);
    }
}

#[test]
fn oversize_oracle_needs_criterion_only() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("ex1.json"), gf29_spec_json()).unwrap();
    let out = coltrs(dir.path(), &["certify", "--spec", "ex1.json", "--budget", "100"]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--criterion-only"));
    let out = coltrs(dir.path(), &["certify", "--spec", "ex1.json", "--budget", "100", "--criterion-only"]);
    assert_eq!(status(&out), 0);
    let r = report(&out);
    assert_eq!(r.mode, "criterion-only");
    assert!(r.is_mds);
}

#[test]
fn jobs_do_not_change_the_report() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("ex1.json"), gf29_spec_json()).unwrap();
    let one = stdout(&coltrs(dir.path(), &["certify", "--spec", "ex1.json", "--jobs", "1"]));
    let many = Command::new(env!("CARGO_BIN_EXE_coltrs"))
        .current_dir(dir.path())
        .env("COLTRS_JOBS", "4")
        .args(["certify", "--spec", "ex1.json"])
        .output()
        .unwrap();
    assert_eq!(one, stdout(&many));
}

#[test]
fn reproduce_reference_codes() {
    let dir = TempDir::new().unwrap();
    for id in ["1", "2", "3"] {
        let out = coltrs(dir.path(), &["reproduce", id]);
        assert_eq!(status(&out), 0, "reference {id}: {}", stdout(&out));
        assert!(stdout(&out).ends_with("PASS\n"));
    }
    let out = coltrs(dir.path(), &["reproduce", "1"]);
    assert!(stdout(&out).contains("[16,7,10] expected [16,7,10]"));
    assert!(stdout(&out).contains("[16,14,2] expected [16,14,2]"));
    assert!(stdout(&out).contains("generator   entry-exact"));
    assert_eq!(status(&coltrs(dir.path(), &["reproduce", "7"])), 2);
}

#[test]
fn strict_modulus_compares_entries() {
    let dir = TempDir::new().unwrap();
    let canonical = coltrs(dir.path(), &["reproduce", "2", "--strict-modulus", "1,2,0,1"]);
    assert_eq!(status(&canonical), 0);
    let other = coltrs(dir.path(), &["reproduce", "2", "--strict-modulus", "1,0,2,1"]);
    assert_eq!(status(&other), 1);
    assert!(stdout(&other).contains("  generator ("));
    assert!(String::from_utf8_lossy(&other.stderr).contains("warning: modulus"));
    let loose = coltrs(dir.path(), &["reproduce", "2", "--modulus", "1,0,2,1"]);
    assert_eq!(status(&loose), 0);
}

#[test]
fn codec_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let spec = reference(1).unwrap().spec;
    fs::write(dir.path().join("ex1.json"), format::spec_to_json(&spec)).unwrap();
    let f = spec.field();
    let msgs: Vec<Vec<Elem>> = (0..5u32).map(|i| (0..7).map(|j| Elem::from_index((i * 7 + j * 3) % 29)).collect()).collect();
    let input = format::Stream {
        field: f.clone(),
        n: 16,
        k: 7,
        kind: format::StreamKind::Message,
        words: msgs.iter().map(|m| m.iter().copied().map(Some).collect()).collect(),
    };
    fs::write(dir.path().join("msg.txt"), format::stream_to_text(&input)).unwrap();
    assert_eq!(status(&coltrs(dir.path(), &["encode", "--spec", "ex1.json", "--input", "msg.txt", "--out", "cw.txt"])), 0);

    let mut coded = format::stream_from_text(&fs::read_to_string(dir.path().join("cw.txt")).unwrap()).unwrap();
    let g = spec.generator();
    for (word, m) in coded.words.iter_mut().zip(&msgs) {
        assert_eq!(*word, encode(m, &g).unwrap().symbols);
        for slot in word.iter_mut().step_by(2).take(9) {
            *slot = None;
        }
    }
    fs::write(dir.path().join("lossy.txt"), format::stream_to_text(&coded)).unwrap();
    let out = coltrs(dir.path(), &["decode", "--spec", "ex1.json", "--input", "lossy.txt", "--out", "back.txt"]);
    assert_eq!(status(&out), 0);
    let back = format::stream_from_text(&fs::read_to_string(dir.path().join("back.txt")).unwrap()).unwrap();
    assert_eq!(back, input);

    for slot in coded.words[0].iter_mut().take(10) {
        *slot = None;
    }
    fs::write(dir.path().join("worse.txt"), format::stream_to_text(&coded)).unwrap();
    let out = coltrs(dir.path(), &["decode", "--spec", "ex1.json", "--input", "worse.txt"]);
    assert_eq!(status(&out), 1);
}

#[test]
fn dual_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let spec = reference(1).unwrap().spec;
    fs::write(dir.path().join("ex1.json"), format::spec_to_json(&spec)).unwrap();
    let out = coltrs(dir.path(), &["dual", "--spec", "ex1.json", "--out", "h.csv"]);
    assert_eq!(status(&out), 0);
    let h = format::matrix_from_csv(&fs::read_to_string(dir.path().join("h.csv")).unwrap()).unwrap();
    assert_eq!(h, parity_closed_form(&spec).unwrap());
}

#[test]
fn manifest_and_io_errors() {
    let dir = TempDir::new().unwrap();
    let out = coltrs(dir.path(), &["reproduce", "3", "--manifest", "run.json"]);
    assert_eq!(status(&out), 0);
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "reproduce");
    assert_eq!(manifest["exit_status"], 0);
    assert_eq!(manifest["verdict"], "PASS");

    assert_eq!(status(&coltrs(dir.path(), &["certify", "--spec", "missing.json"])), 3);
    fs::write(dir.path().join("junk.csv"), "not a matrix").unwrap();
    assert_eq!(status(&coltrs(dir.path(), &["certify", "--matrix", "junk.csv"])), 3);
    assert_eq!(status(&coltrs(dir.path(), &["certify"])), 2);
}
