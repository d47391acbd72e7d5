use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2erp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2erp-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// Report lines without the leading title comment.
fn verdicts(out: &str) -> Vec<String> {
    out.lines().filter(|l| !l.starts_with("# ") || l.contains("checks")).map(String::from).collect()
}

#[test]
fn verify_m1_is_green() {
    let o = run(&["verify", "catalog:M1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("erp=pass"));
    assert!(!out.contains("=fail"));
}

#[test]
fn mutation_breaks_normalization() {
    let o = run(&["verify", "catalog:J", "--mutate", "A(3,3)=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("structure.ricci.i=fail"));
}

#[test]
fn missing_file_is_input_error() {
    assert_eq!(run(&["verify", "missing.file"]).status.code(), Some(2));
}

#[test]
fn malformed_file_reports_line() {
    let dir = scratch("malformed");
    let path = dir.join("bad.quad");
    fs::write(&path, "[A1]\n0 0\n0 x\n").unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn deform_b_is_only_rigid() {
    let o = run(&["deform", "catalog:B"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("T̄=2, u·μ=0, 𝔡=2, rigid=yes, equivariantly_rigid=no"));
}

#[test]
fn flow_m2_stays_erp() {
    let o = run(&["flow", "catalog:M2", "--t", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("flow[t=0].erp=pass") && out.contains("flow[t=1].erp=pass"));
}

#[test]
fn flow_accepts_negative_times() {
    let o = run(&["flow", "catalog:J", "--t", "-3,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("flow[t=-3].erp=pass"));
}

#[test]
fn catalog_list() {
    let o = run(&["catalog", "list"]);
    assert_eq!(stdout(&o), "J\nM2\nM3\nB\nM1\n");
}

#[test]
fn catalog_show_round_trips_through_verify() {
    let dir = scratch("roundtrip");
    for name in ["J", "M2", "M3", "B", "M1"] {
        let shown = run(&["catalog", "show", name]);
        let path = dir.join(format!("{name}.quad"));
        fs::write(&path, &shown.stdout).unwrap();
        let a = stdout(&run(&["verify", &format!("catalog:{name}")]));
        let b = stdout(&run(&["verify", path.to_str().unwrap()]));
        assert_eq!(verdicts(&a), verdicts(&b), "{name}");
    }
}

#[test]
fn bracket_files_are_accepted() {
    let dir = scratch("bracket");
    let path = dir.join("abelian.txt");
    fs::write(&path, "# abelian except one constant\n1 2 3 1\n").unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("closed=fail"));
}

#[test]
fn search_writes_parseable_hits() {
    let dir = scratch("search");
    let o = run(&["search", "--near", "catalog:M3", "--restarts", "2", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let hit = dir.join("hit_0.quad");
    assert!(hit.exists());
    assert_eq!(run(&["verify", hit.to_str().unwrap()]).status.code(), Some(0));
}
