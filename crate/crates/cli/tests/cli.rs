//! End-to-end coverage of the qci binary: exit codes, file inputs, JSON
//! report shapes, and the coproduct export/reimport loop.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qci_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qci"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_spec(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const A23_QMINUS1: &str = r#"
field = "Q"
a = [2, 3]
q = [["-1", "-1"], ["-1", "-1"]]
"#;

#[test]
fn verify_passes_on_the_commutative_spec() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "a23_qminus1.toml", A23_QMINUS1);
    let out = qci(&["verify", "--spec", &spec, "--coproduct", "paper31", "--g", "auto"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn verify_fails_with_the_unit_witness_on_the_signed_coproduct() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "a23_qminus1.toml", A23_QMINUS1);
    let out = qci(&["verify", "--spec", &spec, "--coproduct", "signed62"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("s-anti-algebra: FAIL at S(1): 1 + x2^2 != 1"), "{text}");
    assert!(text.contains("overall: FAIL"));
}

#[test]
fn invalid_spec_files_exit_64() {
    let dir = TempDir::new().unwrap();
    // q_{12} q_{21} = 4 != 1.
    let bad = write_spec(
        &dir,
        "bad.toml",
        r#"
field = "Fp:5"
a = [2, 2]
q = [["-1", "2"], ["2", "-1"]]
"#,
    );
    let out = qci(&["verify", "--spec", &bad]);
    assert_eq!(code(&out), 64, "stderr: {}", stderr(&out));

    let out = qci(&["verify", "--spec", "/nonexistent/spec.toml"]);
    assert_eq!(code(&out), 64);

    let garbled = write_spec(&dir, "garbled.toml", "not [ valid");
    let out = qci(&["verify", "--spec", &garbled]);
    assert_eq!(code(&out), 64);

    // Composite modulus.
    let out = qci(&["verify", "--field", "Fp:6", "--a", "2,2", "--q", "1"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn violated_preconditions_exit_2() {
    // q = 2 over F_5 does not square to 1, so the g-solver refuses.
    let out = qci(&["verify", "--field", "Fp:5", "--a", "2,3", "--q", "2"]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("square"));

    // q = 1 over Q needs a square root of -1.
    let out = qci(&["verify", "--field", "Q", "--a", "2,2", "--q", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_64_and_help_exits_0() {
    let out = qci(&["verify", "--coproduct", "nonsense", "--field", "Q", "--a", "2,2", "--q", "-1"]);
    assert_eq!(code(&out), 64);

    let out = qci(&["frobnicate"]);
    assert_eq!(code(&out), 64);

    let out = qci(&["--help"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn json_report_shape_for_verify() {
    let out = qci(&[
        "verify", "--field", "Fp:5", "--a", "2,2", "--q", "1", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "verify");
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["spec"]["field"], "Fp:5");
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for expected in [
        "coassociativity",
        "counit-identities",
        "counit-is-algebra-map",
        "unit-grouplike",
        "frobenius-algebra",
        "frobenius-coalgebra",
        "s-anti-algebra",
        "s-anti-coalgebra",
        "t-right-integral",
        "phi-right-cointegral",
        "s4-identity",
    ] {
        assert!(names.contains(&expected), "missing check {expected}");
    }
    for check in v["checks"].as_array().unwrap() {
        assert_eq!(check["status"], "pass");
    }
}

#[test]
fn failing_json_reports_carry_witnesses() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "a23.toml", A23_QMINUS1);
    let out = qci(&[
        "verify", "--spec", &spec, "--coproduct", "signed62", "--format", "json",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["overall"], "fail");
    let anti_algebra = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "s-anti-algebra")
        .unwrap();
    assert_eq!(anti_algebra["status"], "fail");
    assert_eq!(anti_algebra["witness"]["location"], "S(1)");
    assert_eq!(anti_algebra["witness"]["lhs"], "1 + x2^2");
    assert_eq!(anti_algebra["witness"]["rhs"], "1");
}

#[test]
fn primitives_reports_dimension() {
    let out = qci(&[
        "primitives", "--field", "Q", "--a", "2,3", "--q", "-1",
        "--coproduct", "path61", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 2);

    let out = qci(&[
        "primitives", "--field", "Q", "--a", "2,3", "--q", "-1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 4);
}

#[test]
fn compare_distinguishes_and_stays_silent_as_expected() {
    let out = qci(&[
        "compare", "--field", "Q", "--a", "2,3", "--q", "-1",
        "--coproduct", "paper31", "--against", "path61", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "distinguished");

    let out = qci(&[
        "compare", "--field", "Q", "--a", "2,2", "--q", "-1",
        "--coproduct", "paper31", "--against", "path61", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
}

#[test]
fn obstruction_verdicts_over_the_cli() {
    let out = qci(&["obstruction", "--a", "2,3", "--char", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "no-bialgebra");

    let out = qci(&["obstruction", "--a", "2,2", "--char", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "hopf-exists");

    let out = qci(&["obstruction", "--a", "9,3", "--char", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "not-obstructed");

    // A composite characteristic is rejected as unparseable input.
    let out = qci(&["obstruction", "--a", "2,2", "--char", "4"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn search_cij_solution_sets() {
    let out = qci(&["search-cij", "--q", "1", "--field", "Fp:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["solutions"].as_array().unwrap().len(), 0);

    let out = qci(&["search-cij", "--q", "1", "--field", "Fp:5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!v["solutions"].as_array().unwrap().is_empty());
    assert!(v["scope"].as_str().unwrap().contains("necessary conditions"));
}

#[test]
fn search_g_respects_bounds_and_env() {
    let out = qci(&[
        "search-g", "--field", "Fp:5", "--a", "2,2", "--q", "1", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["examined"], 16);
    assert_eq!(v["passing_count"], 2);

    let out = qci(&[
        "search-g", "--field", "Fp:5", "--a", "2,2", "--q", "1", "--bound", "10",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("exceeding"));

    // The environment variable sets the default bound; the flag wins.
    let low_env = Command::new(env!("CARGO_BIN_EXE_qci"))
        .env("QCI_SEARCH_BOUND", "10")
        .args(["search-g", "--field", "Fp:5", "--a", "2,2", "--q", "1"])
        .output()
        .unwrap();
    assert_eq!(low_env.status.code(), Some(2));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_qci"))
        .env("QCI_SEARCH_BOUND", "10")
        .args([
            "search-g", "--field", "Fp:5", "--a", "2,2", "--q", "1", "--bound", "100",
        ])
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn exported_coproducts_feed_back_through_files() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "a22.toml", "field = \"Fp:5\"\na = [2, 2]\nq = [[\"-1\", \"1\"], [\"1\", \"-1\"]]\n");
    let out = qci_in(dir.path(), &["export-coproduct", "--spec", &spec]);
    assert_eq!(code(&out), 0);
    let table_json = stdout(&out);
    std::fs::write(dir.path().join("table.json"), table_json.trim_end()).unwrap();

    let table_arg = format!("file:{}", dir.path().join("table.json").display());
    let out = qci(&["verify", "--spec", &spec, "--coproduct", &table_arg]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn reverifying_an_exported_table_reproduces_the_check_results() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "a22.toml",
        "field = \"Fp:5\"\na = [2, 2]\nq = [[\"-1\", \"1\"], [\"1\", \"-1\"]]\n",
    );
    let built_in = qci(&["verify", "--spec", &spec, "--format", "json"]);
    assert_eq!(code(&built_in), 0);

    let exported = qci(&["export-coproduct", "--spec", &spec]);
    let table_path = dir.path().join("table.json");
    std::fs::write(&table_path, stdout(&exported).trim_end()).unwrap();
    let table_arg = format!("file:{}", table_path.display());
    let from_file = qci(&[
        "verify", "--spec", &spec, "--coproduct", &table_arg, "--format", "json",
    ]);
    assert_eq!(code(&from_file), 0);

    let a: serde_json::Value = serde_json::from_str(&stdout(&built_in)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    // The config echo names different coproduct sources, but the spec,
    // verdict, and every check result must coincide.
    assert_eq!(a["checks"], b["checks"]);
    assert_eq!(a["overall"], b["overall"]);
    assert_eq!(a["spec"], b["spec"]);
}

#[test]
fn file_sourced_tables_are_validated_before_use() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "a22.toml", "field = \"Fp:5\"\na = [2, 2]\nq = [[\"-1\", \"-1\"], [\"-1\", \"-1\"]]\n");
    // A parseable table that is not coassociative: delta(x_v) = x_v (x) x_v
    // everywhere fails the counit identities immediately.
    let bogus = r#"[
        {"v": [0,0], "image": [{"v1": [0,0], "v2": [0,0], "coeff": "1"}]},
        {"v": [0,1], "image": [{"v1": [0,1], "v2": [0,1], "coeff": "1"}]},
        {"v": [1,0], "image": [{"v1": [1,0], "v2": [1,0], "coeff": "1"}]},
        {"v": [1,1], "image": [{"v1": [1,1], "v2": [1,1], "coeff": "1"}]}
    ]"#;
    std::fs::write(dir.path().join("bogus.json"), bogus).unwrap();
    let table_arg = format!("file:{}", dir.path().join("bogus.json").display());
    let out = qci(&["verify", "--spec", &spec, "--coproduct", &table_arg]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("invalid"));

    // Structurally broken JSON exits 64.
    std::fs::write(dir.path().join("broken.json"), "{ not json").unwrap();
    let table_arg = format!("file:{}", dir.path().join("broken.json").display());
    let out = qci(&["verify", "--spec", &spec, "--coproduct", &table_arg]);
    assert_eq!(code(&out), 64);
}

#[test]
fn g_assignments_load_from_files() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "a22.toml", "field = \"Fp:5\"\na = [2, 2]\nq = [[\"-1\", \"1\"], [\"1\", \"-1\"]]\n");
    // The two passing assignments over F_5 with q = 1 assign {2,3} to the
    // middle slots; feed one in explicitly.
    let g = r#"[
        {"v": [0,0], "g": "1"}, {"v": [0,1], "g": "2"},
        {"v": [1,0], "g": "3"}, {"v": [1,1], "g": "1"}
    ]"#;
    std::fs::write(dir.path().join("g.json"), g).unwrap();
    let g_arg = format!("file:{}", dir.path().join("g.json").display());
    let out = qci(&["verify", "--spec", &spec, "--g", &g_arg]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    // An all-ones assignment fails the axioms (exit 1, not a precondition).
    let g = r#"[
        {"v": [0,0], "g": "1"}, {"v": [0,1], "g": "1"},
        {"v": [1,0], "g": "1"}, {"v": [1,1], "g": "1"}
    ]"#;
    std::fs::write(dir.path().join("g_ones.json"), g).unwrap();
    let g_arg = format!("file:{}", dir.path().join("g_ones.json").display());
    let out = qci(&["verify", "--spec", &spec, "--g", &g_arg]);
    assert_eq!(code(&out), 1);

    // g files only make sense for the paper31 coproduct.
    let out = qci(&[
        "verify", "--spec", &spec, "--coproduct", "path61", "--g", &g_arg,
    ]);
    assert_eq!(code(&out), 2);
}
