// End-to-end checks of the command-line surface.

use std::collections::BTreeSet;
use std::process::Command;

fn run(dir: &std::path::Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cqca"))
        .args(["--out", dir.to_str().unwrap()])
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn classify_table_covers_six_iswap_classes() {
    let dir = std::env::temp_dir().join("cqca-cli-classify");
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&dir, &["classify", "--all-square"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("classify.csv")).unwrap();
    let classes: BTreeSet<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(text.lines().count(), 37, "header plus 36 specs");
    assert_eq!(classes.len(), 6, "six classes of iSWAP automata: {classes:?}");
    assert!(std::fs::metadata(dir.join("classify.manifest.json")).is_ok());
}

#[test]
fn recurrence_matches_the_linear_law_and_reruns_identically() {
    let dir = std::env::temp_dir().join("cqca-cli-recurrence");
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&dir, &["recurrence", "--class", "bare-iswap", "--m", "1..12"]);
    assert!(out.status.success());
    let first = std::fs::read(dir.join("recurrence.csv")).unwrap();
    for line in String::from_utf8_lossy(&first).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], fields[1], "tau(m) = m");
    }
    let out = run(&dir, &["recurrence", "--class", "bare-iswap", "--m", "1..12"]);
    assert!(out.status.success());
    assert_eq!(first, std::fs::read(dir.join("recurrence.csv")).unwrap());
}

#[test]
fn spread_emits_a_valid_ppm() {
    let dir = std::env::temp_dir().join("cqca-cli-spread");
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&dir, &["spread", "--class", "dense", "--op", "Z1", "--t", "32"]);
    assert!(out.status.success());
    let bytes = std::fs::read(dir.join("spread.ppm")).unwrap();
    assert!(bytes.starts_with(b"P6\n"));
    let header = String::from_utf8_lossy(&bytes[..20.min(bytes.len())]);
    let dims: Vec<&str> = header.lines().nth(1).unwrap().split(' ').collect();
    let (w, h): (usize, usize) = (dims[0].parse().unwrap(), dims[1].parse().unwrap());
    assert_eq!(h, 33);
    assert!(bytes.ends_with(&vec![0u8; 0][..]) && bytes.len() > w * h);
}

#[test]
fn invalid_inputs_exit_with_code_two() {
    let dir = std::env::temp_dir().join("cqca-cli-invalid");
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&dir, &["classify", "--class", "nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"lattice\":\"square\"}").unwrap();
    let out = run(&dir, &["charpoly", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_with_code_three() {
    let dir = std::env::temp_dir().join("cqca-cli-budget");
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cqca"))
        .args(["--out", dir.to_str().unwrap()])
        .args(["recurrence", "--class", "dense", "--m", "19"])
        .env("CQCA_BUDGET", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let text = std::fs::read_to_string(dir.join("recurrence.csv")).unwrap();
    assert!(text.contains(">8"), "lower bound emitted: {text}");
}
