use std::process::{Command, Output};

fn gasp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gasp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn rate_sweep_file_matches_stdout_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let args = ["rate-sweep", "--k", "4", "--l", "3", "--t-max", "8"];
    let to_file = gasp(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();

    let first = gasp(&args);
    let second = gasp(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(written, first.stdout);
    assert!(written.is_ascii());
    assert!(!written.contains(&b'\r'));
    let text = String::from_utf8(written).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("T,n_small,n_big,n_gasp,rate_gasp,rate_r1,rate_r2")
    );
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn grouped_sweep_csv() {
    let out = gasp(&["grouped-sweep", "--k", "6", "--out", "-"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "G,N,rate\n1,83,0.434\n2,73,0.493\n3,74,0.486\n4,84,0.429\n5,87,0.414\n6,87,0.414\n"
    );
}

#[test]
fn table_reports_server_count() {
    let out = gasp(&[
        "table", "--k", "4", "--l", "4", "--t", "4", "--scheme", "grouped", "--g", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("N=39\n"));
    let out = gasp(&[
        "table", "--k", "4", "--l", "4", "--t", "4", "--scheme", "small",
    ]);
    assert!(stdout(&out).ends_with("N=41\n"));
}

#[test]
fn demo_is_reproducible() {
    let args = ["demo", "--k", "2", "--l", "3", "--t", "2", "--seed", "9"];
    let a = gasp(&args);
    let b = gasp(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("AB verified\n"));
}

#[test]
fn optimize_output() {
    let out = gasp(&["optimize", "--n", "50", "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("gasp: K=6 L=6 n_used=48 rate=0.750"));
    assert_eq!(
        gasp(&["optimize", "--n", "4", "--t", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn audit_exit_codes() {
    let ok = gasp(&[
        "audit",
        "--k",
        "3",
        "--l",
        "3",
        "--t",
        "2",
        "--p",
        "29",
        "--points",
        "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let leak = gasp(&[
        "audit",
        "--k",
        "1",
        "--l",
        "1",
        "--t",
        "1",
        "--p",
        "5",
        "--exhaustive",
        "--zero-masks",
    ]);
    assert_eq!(leak.status.code(), Some(1));
    assert!(stdout(&leak).contains("exhaustive_private=false"));
    let too_big = gasp(&["audit", "--k", "2", "--l", "2", "--t", "2", "--exhaustive"]);
    assert_eq!(too_big.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["demo", "--k", "3", "--l", "3", "--t", "2", "--r", "4"][..],
        &["table", "--k", "3"],
        &[
            "table", "--k", "3", "--l", "3", "--t", "2", "--scheme", "huge",
        ],
        &[
            "audit", "--k", "1", "--l", "1", "--t", "1", "--points", "1,2,3",
        ],
        &["demo", "--k", "1", "--l", "1", "--t", "1", "--p", "8"],
    ] {
        let out = gasp(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
