use std::process::{Command, Output};

fn wavset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavset")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

#[test]
fn classify_shannon_set() {
    let out = wavset(&["classify", "--set", "[-2,-1) [1,2)"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "class"), Some("Minf"));
}

#[test]
fn run_fixture_em1() {
    let out = wavset(&["run-fixture", "EM1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(field(&stdout(&out), "class"), Some("M1"));
}

#[test]
fn printed_em2_w2_is_rejected() {
    let out = wavset(&["verify-set", "--fixture", "EM2", "--variant", "printed"]);
    assert_ne!(out.status.code(), Some(0));
    let text = stdout(&out);
    let measure: wavset::sets::RatPi = field(&text, "w2.measure").unwrap().parse().unwrap();
    assert_eq!(measure, wavset::sets::RatPi::new(58, 30));
    assert_eq!(field(&text, "w2.gaps"), Some("[1,16/15)"));
}

#[test]
fn run_fixture_em2_corrected() {
    let out = wavset(&["run-fixture", "EM2", "--variant", "corrected"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(field(&stdout(&out), "class"), Some("M2"));
}

#[test]
fn run_fixture_em2_printed_fails_stagewise() {
    let out = wavset(&["run-fixture", "EM2", "--variant", "printed"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("stages[1].stage: verify_w2\nstages[1].pass: false"));
}

#[test]
fn json_output_is_structured_and_deterministic() {
    let a = wavset(&["--json", "run-fixture", "EM3"]);
    let b = wavset(&["run-fixture", "EM3", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["class"], "M3");
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["stages"].as_array().unwrap().iter().map(|s| s["stage"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        [
            "verify_w1",
            "verify_w2",
            "build_sigma",
            "printed_sigma",
            "involutive",
            "unitary",
            "build_spectrum",
            "periodization",
            "classify",
            "residual_oracle"
        ]
    );
}

#[test]
fn parse_errors_carry_position() {
    let out = wavset(&["verify-set", "--set", "[0,1) [2,x)"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position"), "{err}");
}

#[test]
fn fixture_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mine.fix");
    std::fs::write(
        &path,
        "name: Mine\nexpected_class: Minf\n@W1\n[-2,-1) [1,2)\n@W2\n[-2,-1) [1,2)\n@h1\nW1&W2 | 1\n@sigma\nW1&W2 | 0\n",
    )
    .unwrap();
    let out = wavset(&["run-fixture", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let bad = dir.path().join("bad.fix");
    std::fs::write(&bad, "name: Bad\nexpected_class: M1\n@W1\n[1,2\n").unwrap();
    let out = wavset(&["run-fixture", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn single_operation_commands() {
    let out = wavset(&["congruence", "--set", "[-8/7,-4/7) [4/7,6/7) [24/7,32/7)"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "congruent"), Some("true"));

    let out = wavset(&["congruence", "--set", "[0,1)"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(field(&stdout(&out), "gaps"), Some("[1,2)"));

    let out = wavset(&["representative", "--fixture", "EM1"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "measure"), Some("2"));

    let out = wavset(&["involutive", "--fixture", "EM0"]);
    assert!(out.status.success());
    let out = wavset(&["involutive", "--w1", "[-2,-1) [1,2)", "--w2", "[-2,-3/2) [1,2) [5/2,3)"]);
    assert_eq!(out.status.code(), Some(1));

    let out = wavset(&["unitary", "--fixture", "EM1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[[1/2*sqrt2, -1/2*sqrt2], [1/2*sqrt2, 1/2*sqrt2]]"));

    let out = wavset(&["periodize", "--set", "[0,1)"]);
    assert_eq!(out.status.code(), Some(1));

    let out = wavset(&["gram", "--set", "[-2,-1) [1,2)"]);
    assert!(out.status.success());
    let out = wavset(&["gram", "--set", "[0,1)", "--scales", "1", "--shifts", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = wavset(&["residual", "--fixture", "EM1", "--n", "1", "--witness"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "seed"), Some("7"));

    let out = wavset(&["list-fixtures"]);
    assert!(stdout(&out).contains("fixtures[2].variants: printed, corrected"));
}

#[test]
fn emit_samples_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let out = wavset(&["interpolate", "--fixture", "EM1", "--emit-samples", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("xi,psi_hat,x,re_psi,im_psi"));
    assert!(lines.all(|l| l.split(',').count() == 5 && l.split(',').all(|v| v.parse::<f64>().is_ok())));
}
