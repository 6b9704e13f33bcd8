use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_augame"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(s) = stdin {
        pipe.write_all(s.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_code_follows_from_vertex() {
    assert_eq!(code(&run(&["solve", &fixture("grant.game"), "--from", "w"], None)), 0);
    assert_eq!(code(&run(&["solve", &fixture("grant-noassume.game"), "--from", "w"], None)), 1);
    assert_eq!(code(&run(&["oracle", &fixture("double-grant.game"), "--from", "w1"], None)), 1);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.game");
    std::fs::write(&bad, "vertex a 0 0\nedge a b\n").unwrap();
    let o = run(&["solve", bad.to_str().unwrap()], None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(code(&run(&["solve", &fixture("nope.game")], None)), 2);
    assert_eq!(code(&run(&["solve", &fixture("grant.game"), "--from", "zz"], None)), 2);
}

#[test]
fn oracle_bound_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("big.cnf");
    std::fs::write(&cnf, "p cnf 5 5\n1 2 3 0\n-1 4 5 0\n-2 -4 0\n3 -5 0\n-3 1 0\n").unwrap();
    let game = run(&["gen", "--3sat", cnf.to_str().unwrap()], None);
    assert_eq!(code(&game), 0);
    let o = run(&["oracle", "-"], Some(&stdout(&game)));
    assert_eq!(code(&o), 3);
}

#[test]
fn sat_pipe() {
    let game = run(&["gen", "--3sat", &fixture("sat3.cnf")], None);
    assert_eq!(code(&game), 0);
    assert_eq!(code(&run(&["solve", "-", "--from", "v0"], Some(&stdout(&game)))), 0);
    let game = run(&["gen", "--3sat", &fixture("unsat.cnf")], None);
    assert_eq!(code(&run(&["solve", "-", "--from", "v0"], Some(&stdout(&game)))), 1);
}

#[test]
fn gen_is_deterministic() {
    for class in ["none", "live", "colive", "group", "single-group", "pers", "cnf"] {
        let args = ["gen", "--random", "--vertices", "7", "--edges", "14", "--assumption", class, "--seed", "9"];
        let a = run(&args, None);
        let b = run(&args, None);
        assert_eq!(code(&a), 0, "{class}");
        assert_eq!(stdout(&a), stdout(&b), "{class}");
        assert_eq!(code(&run(&["solve", "-"], Some(&stdout(&a)))), 0, "{class}");
    }
    let a = run(&["gen", "--random", "--seed", "1"], None);
    let b = run(&["gen", "--random", "--seed", "2"], None);
    assert_ne!(stdout(&a), stdout(&b));
}

#[test]
fn strategy_out_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let strat = dir.path().join("grant.strategy");
    let o = run(&["solve", &fixture("grant.game"), "--strategy-out", strat.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    let v = run(&["verify", &fixture("grant.game"), "--strategy", strat.to_str().unwrap(), "--claim", "w", "r", "g"], None);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout(&v).trim(), "ok");
    let v = run(
        &["verify", &fixture("grant-noassume.game"), "--strategy", strat.to_str().unwrap(), "--claim", "w"],
        None,
    );
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).starts_with("counterexample"));
}

#[test]
fn witness_output_matches_golden() {
    let o = run(&["solve", &fixture("grant-noassume.game"), "--witness"], None);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("golden/grant-noassume.result")).unwrap());
}

#[test]
fn stats_reports_counters() {
    let o = run(&["stats", &fixture("pers1.game"), "--algo", "qsolve-pers"], None);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("qsolve-calls"), "{s}");
    assert!(s.contains("qsolve-within-bound true"), "{s}");
    let o = run(&["stats", &fixture("grant-colive.game"), "--algo", "colive"], None);
    assert!(stdout(&o).contains("colive-rounds"));
}

#[test]
fn reduce_to_live_groups() {
    let o = run(&["reduce", &fixture("grant.game"), "--to", "live-groups"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("golden/grant-live-groups.game")).unwrap());
    assert_eq!(code(&run(&["solve", "-", "--from", "w"], Some(&stdout(&o)))), 0);
}

#[test]
fn decompose_then_product() {
    let dir = tempfile::tempdir().unwrap();
    let game = run(&["gen", "--random", "--alternating", "--assumption", "group", "--vertices", "5", "--edges", "9", "--seed", "3"], None);
    assert_eq!(code(&game), 0);
    let g = dir.path().join("g.game");
    std::fs::write(&g, stdout(&game)).unwrap();
    let (spec, plant) = (dir.path().join("s.game"), dir.path().join("p.game"));
    let d = run(
        &["decompose", g.to_str().unwrap(), "--spec-out", spec.to_str().unwrap(), "--plant-out", plant.to_str().unwrap()],
        None,
    );
    assert_eq!(code(&d), 0, "{}", String::from_utf8_lossy(&d.stderr));
    let p = run(&["product", spec.to_str().unwrap(), plant.to_str().unwrap()], None);
    assert_eq!(code(&p), 0, "{}", String::from_utf8_lossy(&p.stderr));
    assert_eq!(code(&run(&["solve", "-"], Some(&stdout(&p)))), 0);
}
