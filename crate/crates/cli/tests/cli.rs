use std::path::PathBuf;
use std::process::{Command, Output};

use lefgroups::export::parse_matrices;
use lefgroups::pipeline::{build_level, parse_chain};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefgroups"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknown_subcommand_exits_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.chain");
    std::fs::write(&bad, "p 4\nn 3\n").unwrap();
    assert_eq!(run(&["run-chain", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.chain");
    assert_eq!(run(&["density", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify-identities", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["irreducible", "--size", "7", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn verify_identities_lists_both_suites() {
    let o = run(&["verify-identities", "--p", "3", "--n", "3", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("check=order2-word:F3 status=pass"));
    assert!(text.contains("check=sharp-commutator:Mat2(F3) status=pass"));
    assert!(text.contains("check=beta-conjugation:F3[Sym3] status=pass"));
}

#[test]
fn run_chain_reports_level_zero_group() {
    let o = run(&["run-chain", data("trivial.chain").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let build = text.lines().find(|l| l.contains("check=build")).unwrap();
    assert!(build.starts_with("level=0 ") && build.contains("G=SL(30,3)"), "{build}");
}

#[test]
fn every_report_carries_the_conventions() {
    let chain = data("trivial.chain");
    let chain = chain.to_str().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.txt");
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify-identities", "--samples", "5"],
        vec!["run-chain", chain],
        vec!["agreement", "--cyclic", "4,8"],
        vec!["density", chain],
        vec!["irreducible", "--size", "6"],
        vec!["wreath", chain, "--k", "8", "--pairs", "3"],
        vec!["spectral", "--sizes", "5,6"],
        vec!["export", chain, "--out", out.to_str().unwrap()],
    ];
    for args in runs {
        let text = stdout(&run(&args));
        for key in ["# meta seed=", "# meta word-length-bound=", "# meta composition=", "# meta semidirect=", "# meta inputs="] {
            assert!(text.contains(key), "{args:?} lacks {key}");
        }
        let digest = text.lines().find_map(|l| l.strip_prefix("# meta inputs=")).unwrap();
        for line in text.lines().filter(|l| !l.starts_with('#')) {
            assert!(line.starts_with("level="), "{line}");
            assert!(line.ends_with(&format!("inputs={digest}")), "{line}");
        }
    }
}

#[test]
fn failing_check_exits_1_and_is_named() {
    // pipeline levels have far more projective points than the vertex cap
    let o = run(&["spectral", data("trivial.chain").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert!(err.contains("check=series-complete"), "{err}");
    assert!(stdout(&o).contains("cap=yes"));
}

#[test]
fn seed_and_inputs_change_the_digest() {
    let a = stdout(&run(&["verify-identities", "--samples", "5"]));
    let b = stdout(&run(&["verify-identities", "--samples", "5", "--seed", "2"]));
    let c = stdout(&run(&["verify-identities", "--samples", "6"]));
    let digest = |t: &str| t.lines().find_map(|l| l.strip_prefix("# meta inputs=")).unwrap().to_string();
    assert_ne!(digest(&a), digest(&b));
    assert_ne!(digest(&a), digest(&c));
}

#[test]
fn export_round_trips_the_nine_marking() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nine.txt");
    let chain = data("trivial.chain");
    let o = run(&["export", chain.to_str().unwrap(), "--what", "nine", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mats = parse_matrices(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(mats.len(), 9);
    let spec = parse_chain(&std::fs::read_to_string(&chain).unwrap()).unwrap();
    assert_eq!(mats, build_level(&spec, 0).unwrap().nine.elements);
}

#[test]
fn output_flag_writes_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.txt");
    let direct = stdout(&run(&["agreement", "--cyclic", "4,8"]));
    let o = run(&["agreement", "--cyclic", "4,8", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), direct);
}

#[test]
fn left_convention_is_recorded() {
    let chain = data("trivial.chain");
    let text = stdout(&run(&["wreath", chain.to_str().unwrap(), "--k", "8", "--pairs", "3", "--convention", "left"]));
    assert!(text.contains("# meta semidirect=left"));
}
