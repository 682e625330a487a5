use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use weakhopf::Report;

fn shipped(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/instances").join(file)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakhopf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_passes_on_every_shipped_instance() {
    for name in ["g2", "k2", "z2", "sl", "nz"] {
        let o = run(&["check", path(&shipped(&format!("{name}.instance")))]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("axioms hold"));
    }
}

#[test]
fn check_fails_with_code_one_on_a_broken_counit() {
    let dir = tempfile::tempdir().unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&fs::read_to_string(shipped("z2.instance")).unwrap()).unwrap();
    json["eps"] = serde_json::json!([[0, "2"], [1, "2"]]);
    json.as_object_mut().unwrap().remove("expected");
    let bad = dir.path().join("bad.instance");
    fs::write(&bad, json.to_string()).unwrap();
    let o = run(&["check", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL coalg.counit_left"), "{}", stdout(&o));
}

#[test]
fn derive_reports_base_dimension_and_splitting() {
    let o = run(&["derive", path(&shipped("g2.instance"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("r = 2\nseparable Frobenius: pass\nπ-splitting: pass\n"), "{out}");
}

#[test]
fn antipode_lists_inversion_on_the_pair_groupoid() {
    let o = run(&["antipode", path(&shipped("g2.instance"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "weak antipode (from_galois)\n  S(b0) = b0\n  S(b1) = b2\n  S(b2) = b1\n  S(b3) = b3\nγ rank 8/8\nboth constructions agree: yes\n"
    );
}

#[test]
fn antipode_is_negation_on_the_odd_line() {
    let o = run(&["antipode", path(&shipped("sl.instance"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  S(b1) = -b1\n"));
}

#[test]
fn antipode_absent_on_the_idempotent_monoid() {
    let o = run(&["antipode", path(&shipped("nz.instance"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no weak antipode (linear system inconsistent); γ rank 3/4\n");
}

#[test]
fn galois_summary_lines() {
    let o = run(&["galois", path(&shipped("g2.instance"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "t = 8; c = 8\nγ: 8×8 invertible; γ′: 8×8 invertible\n");

    let o = run(&["galois", path(&shipped("nz.instance"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("γ: 4×4 rank 3, not invertible"));
}

#[test]
fn float_mode_agrees_with_exact_mode() {
    for cmd in ["antipode", "galois"] {
        for name in ["g2", "nz"] {
            let file = shipped(&format!("{name}.instance"));
            let exact = run(&[cmd, path(&file)]);
            let float = run(&["--float", cmd, path(&file)]);
            assert_eq!(exact.status.code(), float.status.code(), "{cmd} {name}");
            assert_eq!(stdout(&exact), stdout(&float), "{cmd} {name}");
        }
    }
}

#[test]
fn hopfmod_round_trips() {
    let cases = [
        ("g2", "g2_komega1.module", "round trip: 4 -> 2 -> 4"),
        ("g2", "g2_komega2.module", "round trip: 8 -> 4 -> 8"),
        ("g2", "g2_point.module", "round trip: 2 -> 1 -> 2"),
        ("z2", "z2_komega1.module", "round trip: 2 -> 1 -> 2"),
    ];
    for (inst, module, expect) in cases {
        let o = run(&["hopfmod", path(&shipped(&format!("{inst}.instance"))), path(&shipped(module))]);
        assert_eq!(o.status.code(), Some(0), "{module}: {}", stderr(&o));
        assert!(stdout(&o).contains(expect), "{module}: {}", stdout(&o));
    }
}

#[test]
fn hopfmod_rejects_a_module_for_another_instance() {
    let o = run(&["hopfmod", path(&shipped("z2.instance")), path(&shipped("g2_komega2.module"))]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn eval_prints_the_matrix() {
    let o = run(&["eval", path(&shipped("z2.instance")), "m ∘ (id^1 ⊗ id^1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[2, 2] -> [2]  (2×4)\n  1 0 0 1\n  0 1 1 0\n");
}

#[test]
fn eval_input_errors_exit_two() {
    let file = shipped("g2.instance");
    for expr in ["m ∘ ∘ delta", "nope", "m ∘ m"] {
        let o = run(&["eval", path(&file), expr]);
        assert_eq!(o.status.code(), Some(2), "{expr}");
        assert!(stderr(&o).starts_with("error: "), "{expr}");
    }
}

#[test]
fn input_problems_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.instance");
    fs::write(&bad, "{\"name\": 1}").unwrap();
    assert_eq!(run(&["check", path(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["check", "/definitely/missing.instance"]).status.code(), Some(2));
    assert_eq!(run(&["--max-dim", "3", "check", path(&shipped("g2.instance"))]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "groupoid", "--objects", "2"]).status.code(), Some(2));
}

#[test]
fn generated_files_match_the_shipped_ones() {
    let cases: [(&[&str], &str); 6] = [
        (&["gen", "groupoid", "--objects", "2", "--full"], "g2.instance"),
        (&["gen", "groupoid", "--objects", "2", "--discrete"], "k2.instance"),
        (&["gen", "group", "--cyclic", "2"], "z2.instance"),
        (&["gen", "superline"], "sl.instance"),
        (&["gen", "monoid", "--table", "0,1;1,1", "--name", "nz"], "nz.instance"),
        (&["gen", "komega", "--instance", "PLACEHOLDER", "--dim", "2"], "g2_komega2.module"),
    ];
    let g2 = shipped("g2.instance");
    for (args, file) in cases {
        let args: Vec<&str> = args.iter().map(|a| if *a == "PLACEHOLDER" { path(&g2) } else { a }).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&o), fs::read_to_string(shipped(file)).unwrap(), "{file}");
    }
}

#[test]
fn arrows_spec_reproduces_the_full_groupoid() {
    let full = run(&["gen", "groupoid", "--objects", "2", "--full"]);
    let listed = run(&["gen", "groupoid", "--objects", "2", "--arrows", "0-0,0-1,1-0,1-1"]);
    assert_eq!(listed.status.code(), Some(0));
    assert_eq!(stdout(&full), stdout(&listed));
}

#[test]
fn generated_instances_pass_their_own_pins() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = dir.path().join("z3.instance");
    let o = run(&["--out", path(&z3), "gen", "group", "--cyclic", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = run(&["--out", path(&dir.path().join("r.json")), "antipode", path(&z3)]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    let expected = report.section("expected").expect("pinned expectations checked");
    assert!(expected.all_hold());

    let dual = dir.path().join("dual.instance");
    assert_eq!(run(&["--out", path(&dual), "gen", "dual", "--from", path(&shipped("g2.instance"))]).status.code(), Some(0));
    assert_eq!(run(&["check", path(&dual)]).status.code(), Some(0));
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["--out", path(&out), "--timing", "galois", path(&shipped("g2.instance"))]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.instance, "g2");
    assert_eq!((report.dims.n, report.dims.t, report.dims.c), (4, Some(8), Some(8)));
    assert!(report.timing.is_some());
    assert_eq!(report.to_json(), text);
}

#[test]
fn verbose_prints_the_full_report() {
    let o = run(&["-v", "galois", path(&shipped("g2.instance"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS"), "{out}");
    assert!(out.ends_with("t = 8; c = 8\nγ: 8×8 invertible; γ′: 8×8 invertible\n"));
}
