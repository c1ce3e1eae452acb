use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nuobdd_cli::format::{read_program, ProgramFile};
use nuobdd_cli::report::ReportFile;

fn nuobdd(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nuobdd")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", name]);
    let o = nuobdd(&all, dir);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    dir.join(name)
}

#[test]
fn build_writes_valid_programs() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "mod.json", &["mod", "--n", "6", "--p", "3"]);
    let p = read_program(&m).unwrap();
    assert_eq!((p.width(), p.semantics().to_string().as_str()), (3, "reversible"));
    assert!(nuobdd::validate(&p).is_empty());
    let np = build(dir.path(), "np.json", &["notperm", "--m", "2"]);
    assert_eq!(read_program(&np).unwrap().width(), 2);
    let text = std::fs::read_to_string(&np).unwrap();
    assert!(text.ends_with('\n'));
    assert!(text.contains("\"rot2\""));
}

#[test]
fn build_without_output_prints_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = nuobdd(&["build", "exact-d", "--n", "5", "--k", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let p = ProgramFile::from_json(&stdout(&o)).unwrap().to_program().unwrap();
    assert_eq!(p.width(), 4);
}

#[test]
fn bad_parameters_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = nuobdd(&["build", "exact-u", "--n", "4", "--k", "5"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k <= n required"));
    assert_eq!(nuobdd(&["build", "mod", "--n", "4"], dir.path()).status.code(), Some(2));
    assert_eq!(nuobdd(&["build", "nosuch"], dir.path()).status.code(), Some(2));
    assert_eq!(nuobdd(&["eval", "missing.json", "01"], dir.path()).status.code(), Some(2));
}

#[test]
fn eval_prints_exact_probabilities() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, "np.json", &["notperm", "--m", "2"]);
    build(d, "mod.json", &["mod", "--n", "6", "--p", "3"]);
    build(d, "ne.json", &["notexact", "--n", "4", "--k", "2"]);
    assert_eq!(stdout(&nuobdd(&["eval", "np.json", "1001"], d)), "0 (exactly); reject\n");
    assert_eq!(stdout(&nuobdd(&["eval", "mod.json", "111000"], d)), "1; accept\n");
    assert_eq!(stdout(&nuobdd(&["eval", "ne.json", "1111"], d)), "sin^2(2*pi/5) = 0.904508497187; accept\n");
    assert_eq!(stdout(&nuobdd(&["eval", "ne.json", "1100"], d)), "0 (exactly); reject\n");
    let f = stdout(&nuobdd(&["eval", "ne.json", "1111", "--float"], d));
    assert!(f.contains("(float, uncertified)"), "{f}");
    assert_eq!(nuobdd(&["eval", "ne.json", "111"], d).status.code(), Some(2));
}

#[test]
fn verify_passes_and_fails_with_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, "np3.json", &["notperm", "--m", "3"]);
    build(d, "mod.json", &["mod", "--n", "6", "--p", "3"]);
    build(d, "and.json", &["and-nobdd", "--n", "4"]);
    let o = nuobdd(&["verify", "np3.json", "notperm", "--m", "3", "--mode", "nondeterministic"], d);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = nuobdd(&["verify", "mod.json", "mod", "--n", "6", "--p", "2", "--mode", "exact"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("input 000011"), "{}", stdout(&o));
    assert_eq!(nuobdd(&["verify", "and.json", "and", "--n", "4"], d).status.code(), Some(0));
    assert_eq!(nuobdd(&["verify", "and.json", "and", "--n", "5"], d).status.code(), Some(2));
}

#[test]
fn literal_parameters_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, "lit.json", &["notexact", "--n", "4", "--k", "4", "--literal"]);
    let o = nuobdd(&["verify", "lit.json", "notexact", "--n", "4", "--k", "4"], d);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn compose_reports_width_accounting() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, "m2.json", &["mod", "--n", "12", "--p", "2"]);
    build(d, "m3.json", &["mod", "--n", "12", "--p", "3"]);
    let o = nuobdd(&["compose", "intersect", "m2.json", "m3.json", "-o", "m6.json"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("widths 2, 3 -> 6"));
    assert_eq!(read_program(&d.join("m6.json")).unwrap().width(), 6);
    let v = nuobdd(&["verify", "m6.json", "mod", "--n", "12", "--p", "6", "--mode", "exact"], d);
    assert_eq!(v.status.code(), Some(0));

    build(d, "a.json", &["notexact", "--n", "6", "--k", "2"]);
    build(d, "b.json", &["notexact", "--n", "6", "--k", "4"]);
    let o = nuobdd(&["compose", "union", "a.json", "b.json", "-o", "u.json"], d);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_program(&d.join("u.json")).unwrap().width(), 4);

    build(d, "small.json", &["mod", "--n", "4", "--p", "2"]);
    assert_eq!(nuobdd(&["compose", "intersect", "small.json", "m2.json"], d).status.code(), Some(2));
}

#[test]
fn bound_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = nuobdd(&["bound", "mod", "--n", "6", "--p", "3", "-o", "b.json"], d);
    assert_eq!(o.status.code(), Some(0));
    let r: ReportFile = serde_json::from_str(&std::fs::read_to_string(d.join("b.json")).unwrap()).unwrap();
    assert!(r.certificates.iter().any(|c| c.bound == "lower" && c.value == 3 && c.evidence_kind == "fooling" && c.verified == "yes"));
    assert!(r.certificates.iter().any(|c| c.bound == "upper" && c.value == 3 && c.verified == "yes"));

    let o = nuobdd(&["bound", "and", "--n", "4"], d);
    let s = stdout(&o);
    assert!(s.contains("AND_4: NOBDD upper 2 (construction, verified: yes)"), "{s}");
    assert!(s.contains("AND_4: NUOBDD lower 5"), "{s}");
    assert!(s.contains("AND_4: exact-UOBDD upper 5 (construction, verified: yes)"), "{s}");

    let s = stdout(&nuobdd(&["bound", "exact", "--n", "6", "--k", "3"], d));
    assert!(s.contains("exact-UOBDD upper 4 (construction, verified: yes)"), "{s}");
    assert!(s.contains("lower 4 (span, verified: yes)"), "{s}");

    let o = nuobdd(&["bound", "table", "--bits", "0110", "--orders", "all"], d);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn report_rows() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = nuobdd(&["report", "--n", "6", "--d", "2..6", "-o", "r.json"], d);
    assert_eq!(o.status.code(), Some(0));
    let r: ReportFile = serde_json::from_str(&std::fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(r.rows.len(), 5);
    assert!(r.rows.iter().all(|row| row.upper.verified == "yes" && row.separates));

    let o = nuobdd(&["report", "--n", "4", "--d", "2..4"], d);
    let s = stdout(&o);
    assert!(s.contains("MOD^2_4 upper 2 (yes) lower 2 separates"), "{s}");

    let o = nuobdd(&["report", "--n", "2", "--d", "2..2", "-o", "one.json"], d);
    assert_eq!(o.status.code(), Some(0));
    let r: ReportFile = serde_json::from_str(&std::fs::read_to_string(d.join("one.json")).unwrap()).unwrap();
    assert_eq!(r.rows.len(), 1);
}

#[test]
fn enumeration_cap_is_configurable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, "mod.json", &["mod", "--n", "6", "--p", "3"]);
    let o = Command::new(env!("CARGO_BIN_EXE_nuobdd"))
        .args(["verify", "mod.json", "mod", "--n", "6", "--p", "3", "--mode", "exact"])
        .env("NUOBDD_ENUM_CAP", "4")
        .current_dir(d)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}
