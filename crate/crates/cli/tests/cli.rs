use metadual_cli::report::*;
use metadual_cli::run;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn metadual(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("metadual").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = metadual(&full);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.out.ends_with('\n'));
    serde_json::from_str(&o.out).unwrap_or_else(|e| panic!("{e}: {}", o.out))
}

fn error_report(args: &[&str]) -> (i32, ErrorReport) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = metadual(&full);
    let r: ErrorReport = serde_json::from_str(&o.out).unwrap();
    assert_eq!(r.error.exit_code, o.code);
    assert!(!o.err.is_empty());
    (o.code, r)
}

#[test]
fn documented_examples() {
    let o = metadual(&["dual", "--group", "SL2", "--form", r#"{"diag":["1/2"]}"#]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("(SL2-type)"), "{}", o.out);
    assert!(o.out.contains("epsilon: nontrivial"), "{}", o.out);

    let o = metadual(&["validate", "--group", "G2"]);
    assert_eq!((o.code, o.out.as_str()), (0, "valid, |W| = 12\n"));

    let o = metadual(&["census", "--group", "PGL2", "--coeff", "2", "--genus", "1"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.out.lines().next(), Some("|π₀| = 4, |π₁| = 4, |π₂| = 2"));
}

#[test]
fn json_reports() {
    let r: DualReport = json(&["dual", "--group", "SL2", "--form", r#"{"diag":["1/2"]}"#]);
    assert!(r.epsilon_nontrivial);
    assert_eq!(r.h_invariants.matches.as_deref(), Some("SL2"));
    assert_eq!(r.form.diag, vec!["1/2"]);
    assert_eq!(r.orders, vec![Int::Small(2)]);

    let r: DualReport = json(&["dual", "--group", "SL2", "--form", r#"{"diag":["1/4"]}"#, "--gerbe-label", "G0"]);
    assert!(!r.epsilon_nontrivial);
    assert_eq!(r.gerbe_label.as_deref(), Some("G0"));

    let r: ValidateReport = json(&["validate", "--group", "SO7"]);
    assert_eq!(r.weyl_order, Some(48));

    let r: CensusJson = json(&["census", "--group", "Torus1", "--coeff", "3", "--genus", "0"]);
    assert_eq!((r.pi0_order, r.pi1_order, r.pi2_order), (Int::Small(9), Int::Small(1), Int::Small(3)));
    assert!(!r.divisibility_caveat);

    let r: EnumerateReport = json(&["enumerate", "--group", "SL2xTorus1", "--coeff", "2"]);
    assert_eq!(r.count, 4);
    assert_eq!(r.forms.len(), 4);

    let r: ParityReport = json(&["parity", "--group", "PGL2"]);
    assert!(r.nontrivial && r.subset.is_none());
    let r: ParityReport = json(&["parity", "--group", "SL3", "--subset", "1"]);
    assert_eq!(r.subset, Some(vec![1]));

    let r: LeviReport = json(&["levi", "--group", "Sp4", "--subset", "0", "--form", r#"{"diag":["1/2","1/2"]}"#]);
    assert!(r.compat.unwrap().failures.is_empty());
}

#[test]
fn reports_feed_back_as_input() {
    let r: DualReport = json(&["dual", "--group", "Sp4", "--form", r#"{"diag":["1/4","1/4"]}"#]);
    let group = serde_json::to_string(&r.group).unwrap();
    let form = serde_json::to_string(&r.form).unwrap();
    let again: DualReport = json(&["dual", "--group", &group, "--form", &form]);
    assert_eq!(again, r);

    let h = serde_json::to_string(&r.h).unwrap();
    let v: ValidateReport = json(&["validate", "--group", &h]);
    assert!(v.valid);

    let e: EnumerateReport = json(&["enumerate", "--group", "Sp4", "--coeff", "4"]);
    for f in &e.forms {
        let form = serde_json::to_string(f).unwrap();
        let d: DualReport = json(&["dual", "--group", "Sp4", "--form", &form]);
        assert_eq!(&d.form, f);
    }
}

#[test]
fn file_arguments() {
    let dir = std::env::temp_dir().join(format!("metadual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g = dir.join("g.json");
    let f = dir.join("f.json");
    std::fs::write(&g, r#"{"rank": 1, "simple_coroots": [[2]], "simple_roots": [[1]]}"#).unwrap();
    std::fs::write(&f, r#"{"diag": ["1/2"]}"#).unwrap();
    let ga = format!("@{}", g.display());
    let fa = format!("@{}", f.display());
    let r: DualReport = json(&["dual", "--group", &ga, "--form", &fa]);
    assert_eq!(r.group.simple_coroots, vec![vec![Int::Small(2)]]);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn deterministic_and_jobs_independent() {
    let base = metadual(&["--json", "enumerate", "--group", "SL2xSL2", "--coeff", "4"]);
    assert_eq!(base.code, 0);
    for jobs in ["1", "2", "3", "8"] {
        let o = metadual(&["--json", "--jobs", jobs, "enumerate", "--group", "SL2xSL2", "--coeff", "4"]);
        assert_eq!(o.out, base.out);
    }
    let c1 = metadual(&["census", "--group", "GL2", "--coeff", "4", "--genus", "2"]);
    let c2 = metadual(&["--jobs", "4", "census", "--group", "GL2", "--coeff", "4", "--genus", "2"]);
    assert_eq!(c1.out, c2.out);
}

#[test]
fn no_floats_in_output() {
    let o = metadual(&["--json", "dual", "--group", "SO5", "--form", r#"{"diag":["1/4","1/4"]}"#]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    fn walk(v: &serde_json::Value) {
        match v {
            serde_json::Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "{n}"),
            serde_json::Value::Array(a) => a.iter().for_each(walk),
            serde_json::Value::Object(m) => m.values().for_each(walk),
            _ => {}
        }
    }
    walk(&v);
}

#[test]
fn exit_code_invalid_input() {
    for args in [
        &["validate", "--group", "E9"][..],
        &["validate", "--group", r#"{"rank": 1, "simple_coroots": [[1]], "simple_roots": [[3]]}"#],
        &["validate", "--group", r#"{"rank": 1, "simple_coroots": [[1]]}"#],
        &["dual", "--group", "SL2", "--form", r#"{"diag":["1/0"]}"#],
        &["dual", "--group", "SL2", "--form", r#"{"diag":["1/2","0"]}"#],
        &["dual", "--group", "SL2", "--form", r#"{"diag":[0.5]}"#],
        &["levi", "--group", "SL3", "--subset", "0,5"],
        &["census", "--group", "SL2", "--coeff", "0", "--genus", "1"],
        &["census", "--group", "SL2", "--coeff", "-2", "--genus", "1"],
        &["dual", "--group", "@/nonexistent/file.json"],
    ] {
        let (code, r) = error_report(args);
        assert_eq!((code, r.error.class.as_str()), (1, "invalid_input"), "{args:?}");
    }
    let (_, r) = error_report(&["validate", "--group", r#"{"rank": 1, "simple_coroots": [[1]], "simple_roots": [[3]]}"#]);
    assert!(r.error.witness.unwrap()["violations"].as_array().is_some());

    let o = metadual(&["frobnicate"]);
    assert_eq!(o.code, 1);
    let o = metadual(&["census", "--group", "SL2", "--coeff", "two", "--genus", "1"]);
    assert_eq!(o.code, 1);
    assert!(o.out.is_empty());
}

#[test]
fn exit_code_precondition_with_witness() {
    let (code, r) = error_report(&[
        "dual",
        "--group",
        "SL2xTorus1",
        "--form",
        r#"{"diag":["0","1/2"],"offdiag":[{"i":0,"j":1,"value":"1/4"}]}"#,
    ]);
    assert_eq!((code, r.error.class.as_str()), (2, "precondition"));
    let w = r.error.witness.unwrap();
    assert_eq!((w["generator"].as_u64(), w["j"].as_u64(), w["k"].as_u64()), (Some(0), Some(0), Some(1)));

    let (code, r) = error_report(&[
        "dual",
        "--group",
        "SL2xTorus1",
        "--form",
        r#"{"diag":["1/2","0"],"offdiag":[{"i":0,"j":1,"value":"1/2"}]}"#,
    ]);
    assert_eq!(code, 2);
    let w = r.error.witness.unwrap();
    assert_eq!((w["coroot"].as_u64(), w["basis"].as_u64()), (Some(0), Some(1)));
    assert_eq!((w["lhs"].as_str(), w["rhs"].as_str()), (Some("1/2"), Some("0/1")));

    let (code, _) = error_report(&[
        "levi",
        "--group",
        "SL2xTorus1",
        "--subset",
        "0",
        "--form",
        r#"{"diag":["1/2","0"],"offdiag":[{"i":0,"j":1,"value":"1/2"}]}"#,
    ]);
    assert_eq!(code, 2);
}

#[test]
fn exit_code_resource_cap() {
    for args in [
        &["--weyl-cap", "3", "validate", "--group", "SL3"][..],
        &["--enum-cap", "3", "enumerate", "--group", "SL3", "--coeff", "2"],
        &["--enum-cap", "10", "census", "--group", "Torus2", "--coeff", "3", "--genus", "1"],
    ] {
        let (code, r) = error_report(args);
        assert_eq!((code, r.error.class.as_str()), (3, "resource"), "{args:?}");
    }
}

#[test]
fn help_and_version() {
    let o = metadual(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("census"));
    let o = metadual(&["--version"]);
    assert_eq!(o.code, 0);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_metadual");
    let s = std::process::Command::new(bin)
        .args(["validate", "--group", "G2"])
        .output()
        .unwrap();
    assert_eq!(s.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&s.stdout), "valid, |W| = 12\n");
    let s = std::process::Command::new(bin)
        .args(["census", "--group", "SL2", "--coeff", "0", "--genus", "0"])
        .output()
        .unwrap();
    assert_eq!(s.status.code(), Some(1));
}
