use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plcat")).current_dir(fixtures()).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hh_of_e6_is_one_dimensional() {
    let o = run(&["hh", "ade_e6.qcat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "HH^0 = 1\n");
}

#[test]
fn topology_of_the_genus_two_cover() {
    let o = run(&["zerodim", "topology", "a_g2.zconf"]);
    assert_eq!(stdout(&o), "connected, chi=-3, boundary=1, genus=2\n");
}

#[test]
fn mutation_keeps_hh() {
    let o = run(&["mutate", "cp2.qcat", "--script", "c", "--check", "hh"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("HH invariant: yes"));
}

#[test]
fn random_sweep_is_thread_independent() {
    let a = run(&["mutate", "cp2.qcat", "--random", "6", "--seed", "7", "--threads", "1", "--json"]);
    let b = run(&["mutate", "cp2.qcat", "--random", "6", "--seed", "7", "--threads", "3", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn json_reports_are_stable() {
    let a = run(&["--json", "check", "cp2.qcat"]);
    let b = run(&["--json", "check", "cp2.qcat"]);
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["command"], "check");
    assert_eq!(v["verdict"], true);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(v.get("wall_ms").is_none());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["morse", "cellular", "rp2.flow", "--expect", "1,1,1"]).status.code(), Some(1));
    assert_eq!(run(&["hh", "missing.qcat"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["spherical", "a_g2.qcat", "X1", "--dim", "1"]).status.code(), Some(1));
    let o = run(&["spherical", "a_g2.qcat", "c0.tw", "--dim", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["--grading", "z2", "spherical", "a_g2.qcat", "c0.tw", "--dim", "1"]).status.code(), Some(0));
}

#[test]
fn fixture_directory_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_plcat"))
        .env("PLCAT_FIXTURES", fixtures())
        .current_dir(std::env::temp_dir())
        .args(["hh", "fixtures/cp2.qcat"])
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "HH^0 = 1\nHH^1 = 4\nHH^2 = 2\n");
}

#[test]
fn fukaya_output_parses_back() {
    let o = run(&["zerodim", "fukaya", "a_g2.zconf"]);
    let path = std::env::temp_dir().join(format!("plcat_fukaya_{}.qcat", std::process::id()));
    std::fs::write(&path, stdout(&o)).unwrap();
    let c = run(&["check", path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    let h = run(&["hh", path.to_str().unwrap()]);
    assert_eq!(stdout(&h), stdout(&run(&["hh", "a_g2.qcat"])));
    std::fs::remove_file(path).ok();
}

#[test]
fn morse_commands() {
    let o = run(&["morse", "fundamental", "rp2.flow", "--expect", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Hom*(B,B): 0:1 1:1 2:1"));
    let o = run(&["morse", "verdier", "rp2.flow"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("nondegenerate").count(), 3);
    assert_eq!(run(&["morse", "verdier", "cellular_a2.flow"]).status.code(), Some(2));
    assert_eq!(run(&["morse", "cellular", "cellular_a2.flow", "--expect", "1"]).status.code(), Some(0));
}

#[test]
fn spherical_commands() {
    let o = run(&["braid", "a_g2.qcat", "c1.tw", "X2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["matching", "a_g2.qcat", "--index", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("matching pair of dimension 0"));
    let o = run(&["track", "a_g2.qcat", "c1.tw", "--script", "c c!"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn orbit_search() {
    let o = run(&["zerodim", "orbit", "seven_vertex.zconf", "seven_vertex.zconf"]);
    assert_eq!(o.status.code(), Some(0));
}
