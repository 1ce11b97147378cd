use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudofactor"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bound_prints_integer() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["bound", "--alpha", "10", "--delta", "2", "-b", "5"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8\n");
    let o = run(
        &["bound", "--alpha", "2", "--delta", "5", "-b", "4"],
        dir.path(),
    );
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn parse_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.txt"), "n 3\n0 x\n").unwrap();
    let o = run(&["solve", "bad.txt", "-b", "4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    fs::write(dir.path().join("m.txt"), "gnp n=5 p=2 seed=1\n").unwrap();
    let o = run(&["verify", "m.txt", "-b", "4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_manifest_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.txt"), "# nothing\n").unwrap();
    let o = run(
        &["verify", "m.txt", "-b", "4", "--report", "r.jsonl"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("r.jsonl")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("\"schema\""));
    assert!(lines[1].starts_with("{\"summary\""));
    assert!(lines[1].contains("\"reports\":0"));
}

#[test]
fn oversized_instance_is_capacity_skipped() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.txt"), "cycle n=30\ncycle n=5\n").unwrap();
    let o = run(
        &["verify", "m.txt", "-b", "4", "--csv", "r.csv"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert!(csv.contains("\"cycle n=30\",30,4,2,15,13,,,false,false,false,capacity_skipped"));
    assert!(csv.contains("\"cycle n=5\",5,4,2,2,0,0,,false,false,true,ok"));

    let o = run(&["verify", "m.txt", "-b", "4", "--strict"], dir.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn generate_then_verify_directory() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("m.txt"),
        "join h=K1 p=3\npendant h=C3\ngnp n=6 p=1/2 seed=1\n",
    )
    .unwrap();
    let o = run(&["generate", "m.txt", "-o", "graphs"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let gnp = fs::read_to_string(dir.path().join("graphs/gnp_n-6_p-1o2_seed-1.edges")).unwrap();
    assert!(gnp.starts_with("# gnp n=6 p=1/2 seed=1\nn 6\n"));

    let o = run(
        &["verify", "graphs", "-b", "4,5", "--mode", "both"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let summary = stdout(&o);
    assert!(summary.contains("\"reports\":6"), "{summary}");
    assert!(summary.contains("\"violations\":0"));
}

#[test]
fn solve_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p3.txt"), "p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
    let o = run(
        &["solve", "p3.txt", "-b", "4", "--mode", "oracle"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# oracle optimum 2\n"));
    assert!(text.contains("class=edge"));
    assert!(text.contains("class=vertex"));

    let o = run(&["solve", "p3.txt", "-b", "4", "--json"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["oracle"]["small_count"], 2);
    assert_eq!(v["heuristic"]["small_count"], 2);
}

#[test]
fn invalid_b_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k3.txt"), "n 3\n0 1\n1 2\n0 2\n").unwrap();
    let o = run(&["solve", "k3.txt", "-b", "1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn both_mode_runs_heuristic_beyond_oracle_limit() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.txt"), "cycle n=18\n").unwrap();
    let o = run(
        &[
            "verify", "m.txt", "-b", "4", "--mode", "both", "--csv", "r.csv",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert!(
        csv.contains("\"cycle n=18\",18,4,2,9,7,,0,false,false,false,capacity_skipped"),
        "{csv}"
    );

    let o = run(&["verify", "m.txt", "-b", "1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}
