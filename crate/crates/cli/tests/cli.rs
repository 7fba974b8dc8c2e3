use std::path::Path;
use std::process::{Command, Output};

const FIXTURE: &str = "laurent-poljak-counterexample";

fn metpoly(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metpoly"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn facets_of_m9() {
    let dir = tempfile::tempdir().unwrap();
    let o = metpoly(&["facets", "9"], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 336);
    assert!(out.lines().any(|l| l.contains("T 2 3 / 1")));
    assert!(out.lines().any(|l| l.contains("P 2 6 7")));
}

#[test]
fn cuts_of_m4() {
    let dir = tempfile::tempdir().unwrap();
    let o = metpoly(&["cuts", "4"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn verify_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let o = metpoly(&["verify", "--fixture", FIXTURE], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("tight facets: 37"));
    assert!(out.contains("rays: 37"));
    assert!(out.contains("neighbors: 37 (0 integral, 37 fractional)"));
    assert!(out.contains("cut-adjacent: NO"));
}

#[test]
fn verify_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = metpoly(&["--json", "verify", "--fixture", FIXTURE], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rays"], 37);
    assert_eq!(v["tight"].as_array().unwrap().len(), 37);
    assert_eq!(v["cut_adjacent"], false);
}

#[test]
fn verify_cut_of_m5() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cut.txt", "5\n1 1 0 0 0 1 1 1 1 0\n");
    let o = metpoly(&["verify", &f], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("vertex: yes"));
    assert!(out.contains("cut-adjacent: YES"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = metpoly(&["--threads", "1", "verify", "--fixture", FIXTURE], dir.path());
    let b = metpoly(&["--threads", "3", "verify", "--fixture", FIXTURE], dir.path());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_in_whole_milliseconds() {
    let dir = tempfile::tempdir().unwrap();
    let o = metpoly(&["--timing", "cuts", "3"], dir.path());
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.starts_with("time: ") && last.ends_with(" ms") && !last.contains('.'));
}

#[test]
fn canon_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let o = metpoly(&["canon", "--fixture", FIXTURE], dir.path());
    let line = stdout(&o).lines().next().unwrap().trim_start_matches("canonical: ").to_string();
    let f = write(dir.path(), "c.txt", &format!("9\n{line}\n"));
    let again = metpoly(&["canon", &f], dir.path());
    assert_eq!(stdout(&again).lines().next().unwrap(), format!("canonical: {line}"));
}

#[test]
fn half_point_is_not_a_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "half.txt", "4\n1/2 1/2 1/2 1/2 1/2 1/2\n");
    let o = metpoly(&["verify", &f], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not a vertex (0 tight facets)"));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "4\n1/2 1/2 oops\n");
    assert_eq!(metpoly(&["verify", &f], dir.path()).status.code(), Some(2));
    assert_eq!(metpoly(&["verify"], dir.path()).status.code(), Some(2));
    assert_eq!(metpoly(&["facets", "2"], dir.path()).status.code(), Some(2));
    assert_eq!(metpoly(&["enumerate", "7"], dir.path()).status.code(), Some(2));
    assert_eq!(metpoly(&["nonsense"], dir.path()).status.code(), Some(2));
}

#[test]
fn infeasible_point_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "far.txt", "3\n1 0 0\n");
    let o = metpoly(&["incidence", &f], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("T 1 2 / 3"));
}

#[test]
fn enumerate_small() {
    let dir = tempfile::tempdir().unwrap();
    let o = metpoly(&["enumerate", "5"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("32 vertices (16 cuts), diameter 2, domination holds"));
    let set = dir.path().join("m5-vertices.txt");
    assert!(set.exists());

    let set = set.display().to_string();
    let o = metpoly(&["diameter", &set], dir.path());
    assert_eq!(stdout(&o).trim(), "diameter: 2");
    let o = metpoly(&["check-lp", "--vertex-set", &set], dir.path());
    assert_eq!(o.status.code(), Some(0));

    let o = metpoly(&["enumerate", "4", "-o", "four.txt"], dir.path());
    assert!(stdout(&o).starts_with("8 vertices (8 cuts), diameter 1"));
    assert!(dir.path().join("four.txt").exists());
}

#[test]
fn neighbors_and_adjacency() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "4\n0 0 0 0 0 0\n");
    let b = write(dir.path(), "b.txt", "4\n1 1 1 0 0 0\n");
    let o = metpoly(&["neighbors", &a], dir.path());
    assert!(stdout(&o).starts_with("n 4 count 7"));
    let o = metpoly(&["adjacent", &a, &b], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "adjacent: yes");
}

#[test]
fn canon_and_check_lp_on_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let cut = write(dir.path(), "cut.txt", "5\n1 0 1 1 1 0 0 1 1 0\n");
    let o = metpoly(&["canon", &cut], dir.path());
    assert!(stdout(&o).starts_with("canonical: 0 0 0 0 0 0 0 0 0 0"));

    let o = metpoly(&["canon", "--fixture", FIXTURE], dir.path());
    assert!(stdout(&o).starts_with("canonical: 2/9 2/9 1/3 1/3 4/9"));

    let o = metpoly(&["check-lp", "--fixture", FIXTURE], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cut-adjacent: NO"));
}
