use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use splice_core::invariants::{alexander_polynomial, conway_polynomial_factors, potential_factors};
use splice_core::{parse, seifert_example, serialize, OutputEnvelope};

const TREFOIL: &str = "\
vertex c
arrow a1 +1
vertex l2
vertex l3
edge c a1
edge c l2 2
edge c l3 3
";

const HOPF: &str = "\
vertex c
arrow a1 +1
arrow a2 +1
edge c a1
edge c a2
";

const SPLIT: &str = "\
vertex c
arrow a1 +1
arrow a2 +1
vertex l
edge c a1
edge c a2
edge c l 0
";

const UNKNOT: &str = "\
vertex c
arrow a1 +1
vertex l2
edge c a1
edge c l2
";

fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("splice-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn splice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splice"))
        .args(args)
        .env_remove("SPLICE_SEED")
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = splice(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = fixture("validate-ok.splice", TREFOIL);
    let (code, stdout, _) = run(&["validate", path_str(&ok)]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("ok"));

    let bad = fixture(
        "validate-coprime.splice",
        "vertex c\narrow a1 +1\nvertex l2\nvertex l3\nedge c a1\nedge c l2 2\nedge c l3 4\n",
    );
    let (code, _, stderr) = run(&["validate", path_str(&bad)]);
    assert_eq!(code, 1);
    assert!(stderr.contains("`c`"), "{stderr}");

    let empty = fixture("validate-empty.splice", "");
    let (code, _, stderr) = run(&["validate", path_str(&empty)]);
    assert_eq!(code, 3);
    assert!(stderr.contains(":1:1:"), "{stderr}");

    let (code, _, _) = run(&["validate", "/nonexistent/file.splice"]);
    assert_eq!(code, 1);
}

#[test]
fn trefoil_invariants() {
    let f = fixture("inv-trefoil.splice", TREFOIL);
    let (code, stdout, _) = run(&["invariants", path_str(&f), "--conway", "--expand"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "t^2 - 1 + t^-2\n");

    let (code, stdout, _) = run(&["invariants", path_str(&f), "--alexander"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "t^2 - t + 1\n");

    let (code, stdout, _) = run(&["invariants", path_str(&f), "--fibered", "--signs"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "fibered: true\nsigns: k- = 0, j- = 0, det(-A) = +1, milnor parity = 0\n"
    );

    let (code, stdout, _) = run(&["invariants", path_str(&f)]);
    assert_eq!(code, 0);
    for key in ["potential:", "alexander:", "conway:", "fibered:", "signs:"] {
        assert!(stdout.contains(key), "{stdout}");
    }
}

#[test]
fn split_potential_is_zero() {
    let f = fixture("inv-split.splice", SPLIT);
    let (code, stdout, _) = run(&["invariants", path_str(&f), "--potential"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0\n");
}

#[test]
fn knot_potential_is_factored_not_expanded() {
    let f = fixture("inv-unknot.splice", UNKNOT);
    let (code, stdout, _) = run(&["invariants", path_str(&f), "--potential"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "(-1)^0 * (t - t^-1)^-1\n");

    let (code, stdout, stderr) = run(&["invariants", path_str(&f), "--potential", "--expand"]);
    assert_eq!(code, 2);
    assert_eq!(stdout, "INDETERMINATE\n");
    assert!(stderr.contains("not exact"), "{stderr}");
}

#[test]
fn json_results_round_trip() {
    let f = fixture("json-trefoil.splice", TREFOIL);
    let d = parse(TREFOIL).unwrap();
    let (code, stdout, _) = run(&["invariants", path_str(&f), "--json"]);
    assert_eq!(code, 0);
    let env = OutputEnvelope::from_json(&stdout).unwrap();
    assert_eq!(env.tool, "splice");
    assert_eq!(
        env.requested,
        ["potential", "alexander", "conway", "fibered", "signs"]
    );
    assert_eq!(
        env.factored("potential").unwrap().unwrap(),
        potential_factors(&d)
    );
    assert_eq!(
        env.factored("conway").unwrap().unwrap(),
        conway_polynomial_factors(&d)
    );
    assert_eq!(
        env.expanded("alexander").unwrap().unwrap(),
        alexander_polynomial(&d).unwrap()
    );
    assert_eq!(env.results["fibered"], serde_json::Value::Bool(true));
    assert_eq!(env.results["signs"]["seifert_determinant_sign"], 1);
    assert_eq!(env.to_json().trim_end(), stdout.trim_end());

    // identical input, identical bytes
    let (_, again, _) = run(&["invariants", path_str(&f), "--json"]);
    assert_eq!(again, stdout);

    let (code, stdout, _) = run(&["invariants", path_str(&f), "--conway", "--expand", "--json"]);
    assert_eq!(code, 0);
    let env = OutputEnvelope::from_json(&stdout).unwrap();
    assert_eq!(
        env.expanded("conway").unwrap().unwrap().to_string(),
        "t^2 - 1 + t^-2"
    );
}

#[test]
fn indeterminate_json_has_diagnostics() {
    let f = fixture("json-unknot.splice", UNKNOT);
    let (code, stdout, _) = run(&[
        "invariants",
        path_str(&f),
        "--potential",
        "--expand",
        "--json",
    ]);
    assert_eq!(code, 2);
    let env = OutputEnvelope::from_json(&stdout).unwrap();
    assert!(env.results["potential"].is_null());
    assert_eq!(env.diagnostics.len(), 1);
}

#[test]
fn linking_table_and_pairs() {
    let t = fixture("lk-trefoil.splice", TREFOIL);
    let (code, stdout, _) = run(&["linking", path_str(&t), "--pair", "a1", "c"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "6\n");

    let h = fixture("lk-hopf.splice", HOPF);
    let (code, stdout, _) = run(&["linking", path_str(&h)]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "lk(a1, a2) = 1\nl(c) = (1,1), total 2\n");

    let (code, stdout, _) = run(&["linking", path_str(&h), "--json"]);
    assert_eq!(code, 0);
    let env = OutputEnvelope::from_json(&stdout).unwrap();
    assert_eq!(env.results["pairs"][0][1], 1);

    let (code, _, stderr) = run(&["linking", path_str(&t), "--pair", "a1", "nowhere"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("nowhere"));
    let (code, _, _) = run(&["linking", path_str(&t), "--pair", "c", "c"]);
    assert_eq!(code, 1);
}

#[test]
fn check_file_and_random() {
    let t = fixture("check-trefoil.splice", TREFOIL);
    let (code, stdout, _) = run(&["check", path_str(&t)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("symmetry seed=- idx=0 PASS"));
    assert!(!stdout.contains("FAIL"));

    let (code, stdout, _) = run(&["check", "--random", "0"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "pass=0 fail=0 skip=0 indet=0\n");

    let (code, stdout, _) = run(&["check", "--random", "1000", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().last().unwrap().contains("fail=0"));

    let (code, _, _) = run(&["check", "--random", "3", "--max-weight", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn check_seed_from_environment() {
    let args = ["check", "--random", "5", "--json"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_splice"))
        .args(args)
        .env("SPLICE_SEED", "42")
        .output()
        .unwrap();
    let explicit = splice(&["check", "--random", "5", "--json", "--seed", "42"]);
    assert_eq!(with_env.stdout, explicit.stdout);
    let env = OutputEnvelope::from_json(&String::from_utf8(explicit.stdout).unwrap()).unwrap();
    let reports = env.results["reports"].as_array().unwrap();
    assert!(reports.iter().all(|r| r["seed"] == 42));
}

#[test]
fn examples() {
    let (code, stdout, _) = run(&["example", "--alphas", "1,2,3", "--arrows", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, TREFOIL);
    assert_eq!(stdout, serialize(&seifert_example(&[1, 2, 3], 1).unwrap()));

    let (code, stdout, _) = run(&["example", "--alphas", "1,1", "--arrows", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, HOPF);

    let (code, _, stderr) = run(&["example", "--alphas", "2,4"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("coprime"));

    let (code, _, _) = run(&["example", "--alphas", "1,2", "--arrows", "3"]);
    assert_eq!(code, 1);

    let out = std::env::temp_dir().join(format!("splice-example-{}.splice", std::process::id()));
    let (code, stdout, _) = run(&[
        "example",
        "--alphas",
        "2,3,5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    assert_eq!(
        parse(&written).unwrap(),
        seifert_example(&[2, 3, 5], 1).unwrap()
    );
}
