use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const E1: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/e1.json");

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pointsep")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_instance(name: &str, body: &str) -> PathBuf {
    let p = tmp(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn solve_exact_e1() {
    let rep = tmp("e1_exact.json");
    let svg = tmp("e1_exact.svg");
    let o = bin(&["solve", "--algo", "exact", "--in", E1, "--report", rep.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&rep);
    assert_eq!(r["size"], 3);
    assert_eq!(r["set"], serde_json::json!([2, 3, 4]));
    assert_eq!(r["guarantee"], "exact");
    assert_eq!(r["feasible"], true);
    let text = std::fs::read_to_string(&svg).unwrap();
    roxmltree::Document::parse(&text).expect("well-formed svg");
}

#[test]
fn solve_multadd_e1_within_bound() {
    let rep = tmp("e1_multadd.json");
    let o = bin(&["solve", "--algo", "multadd", "--epsilon", "0.5", "--in", E1, "--report", rep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let size = report(&rep)["size"].as_u64().unwrap();
    assert!(size <= 5, "size {size}");
}

#[test]
fn every_algorithm_solves_e1() {
    for algo in ["plus1", "plusk"] {
        let o = bin(&["solve", "--algo", algo, "--in", E1]);
        assert_eq!(o.status.code(), Some(0), "{algo}");
        assert!(stdout(&o).contains("size 3"), "{algo}: {}", stdout(&o));
    }
}

#[test]
fn check_verdicts() {
    let o = bin(&["check", "--in", E1, "--subset", "3,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("not separating"));
    assert!(stdout(&o).contains("flood fill agrees"));
    let o = bin(&["check", "--in", E1, "--subset", "2,3,4"]);
    assert!(stdout(&o).starts_with("separating"));
    let o = bin(&["check", "--in", E1, "--subset", ""]);
    assert!(stdout(&o).starts_with("not separating"));
    let o = bin(&["check", "--in", E1, "--subset", "9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let infeasible =
        write_instance("inf.json", r#"{"s":[0,0],"t":[10,0],"objects":[{"type":"disk","center":[5,5],"radius":1}]}"#);
    assert_eq!(bin(&["solve", "--in", infeasible.to_str().unwrap()]).status.code(), Some(2));
    let degenerate =
        write_instance("deg.json", r#"{"s":[0,0],"t":[10,0],"objects":[{"type":"disk","center":[0,1],"radius":1}]}"#);
    assert_eq!(bin(&["solve", "--in", degenerate.to_str().unwrap()]).status.code(), Some(4));
    let bad = write_instance("bad.json", r#"{"s":[0,0],"t":[10,0],"objects":[{"type":"disk","center":[5,5],"radius":-1}]}"#);
    let o = bin(&["solve", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(bin(&["solve", "--in", "/no/such/file.json"]).status.code(), Some(3));
    assert_eq!(bin(&["solve", "--unknown-flag"]).status.code(), Some(3));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn trivial_separator_is_reported_in_file_numbering() {
    let p = write_instance(
        "triv.json",
        r#"{"s":[0,0],"t":[10,0],"objects":[{"type":"disk","center":[5,5],"radius":1},{"type":"disk","center":[0,1],"radius":2}]}"#,
    );
    let rep = tmp("triv_report.json");
    let o = bin(&["solve", "--in", p.to_str().unwrap(), "--report", rep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&rep)["set"], serde_json::json!([1]));
}

#[test]
fn gen_is_deterministic() {
    let a = bin(&["gen", "mixed", "--n", "12", "--seed", "5"]);
    let b = bin(&["gen", "mixed", "--n", "12", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, bin(&["gen", "mixed", "--n", "12", "--seed", "6"]).stdout);
    assert_eq!(bin(&["gen", "hexagons", "--n", "3"]).status.code(), Some(3));
}

#[test]
fn auto_oracle_does_not_change_the_size() {
    for (family, forced) in [("disks", "diskgrid"), ("rectilinear", "rectilinear")] {
        let path = tmp(&format!("auto_{family}.json"));
        bin(&["gen", family, "--n", "30", "--seed", "2", "--out", path.to_str().unwrap()]);
        let sizes: Vec<String> = ["auto", "explicit", forced]
            .iter()
            .map(|oracle| {
                let o = bin(&["solve", "--in", path.to_str().unwrap(), "--oracle", oracle]);
                stdout(&o).split(" set ").next().unwrap().split("size").nth(1).unwrap_or("none").to_string()
            })
            .collect();
        assert!(sizes.windows(2).all(|w| w[0] == w[1]), "{family}: {sizes:?}");
    }
}

#[test]
fn reports_repeat_modulo_timings() {
    let args = |rep: &Path| {
        vec![
            "solve".to_string(),
            "--algo".into(),
            "plus1".into(),
            "--seed".into(),
            "7".into(),
            "--in".into(),
            E1.into(),
            "--report".into(),
            rep.to_str().unwrap().into(),
        ]
    };
    let (ra, rb) = (tmp("rep_a.json"), tmp("rep_b.json"));
    let run = |rep: &Path| {
        let a = args(rep);
        bin(&a.iter().map(String::as_str).collect::<Vec<_>>());
        let mut v = report(rep);
        v.as_object_mut().unwrap().remove("timings");
        v.as_object_mut().unwrap().remove("command");
        v
    };
    assert_eq!(run(&ra), run(&rb));
}

#[test]
fn bench_writes_csv() {
    let out = tmp("bench.csv");
    let o = bin(&["bench", "--family", "disks", "--sizes", "8,16", "--seeds", "2", "--algo", "plusk", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,n,seed,algo,oracle,size,opt_known,time_ms"));
    assert_eq!(lines.count(), 4);
}
