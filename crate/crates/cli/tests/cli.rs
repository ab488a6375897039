use std::process::Command;

use serde_json::Value;

fn jl(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["jl"];
    argv.extend_from_slice(args);
    let (code, out) = jl_cli::run(argv);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("output {out:?} is not JSON: {e}"));
    (code, v)
}

#[test]
fn transfer_check_example_is_byte_exact() {
    let (code, out) = jl_cli::run(["jl", "transfer", "check", "--poly", "[1,0,1]", "--d", "2", "--places", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, r#"{"place":2,"degrees":[2],"compatible":true}"#);
}

#[test]
fn satake_trace_of_t1_on_trivial_parameters() {
    let (code, v) = jl(&["satake", "trace", "--n", "2", "--q", "3", "--params", "1.7320508,0;0.5773503,0", "--word", "T1"]);
    assert_eq!(code, 0);
    let re = v["trace"][0].as_f64().unwrap();
    let im = v["trace"][1].as_f64().unwrap();
    assert!((re - 4.0).abs() < 1e-6 && im.abs() < 1e-12, "{v}");
}

#[test]
fn help_exits_zero_through_the_binary() {
    let out = Command::new(env!("CARGO_BIN_EXE_jl")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Usage"));
    for sub in ["padic", "poly", "quat", "transfer", "satake", "tracefinite", "adele"] {
        assert!(text.contains(sub), "help lists {sub}");
    }
}

#[test]
fn error_envelopes_and_exit_codes() {
    let (code, v) = jl(&["nonsense"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "UnknownCommand");

    let (code, v) = jl(&["poly", "factor-degrees", "--poly", "[1,0,", "--place", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SchemaViolation");

    let (code, v) = jl(&["transfer", "check", "--poly", "[0,0,1]", "--d", "2", "--places", "2"]);
    assert_eq!(code, 1);
    assert!(v["error"]["detail"].is_string());

    let (code, v) = jl(&["transfer", "check", "--poly", "[1,0,1]", "--d", "2", "--places", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SchemaViolation");
}

#[test]
fn outputs_are_deterministic_and_reparse() {
    let args = ["jl", "tracefinite", "verify", "--model", "builtin:SL(2,3)/unipotent", "--function", r#"{"support":[[0,[1,2]],[5,"1/3"]]}"#];
    let (c1, a) = jl_cli::run(args);
    let (c2, b) = jl_cli::run(args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn each_module_is_reachable() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["padic", "norm", "--x", "50/3", "--p", "5"],
        vec!["padic", "hensel", "--poly", "[-2,0,1]", "--root", "3", "--p", "7"],
        vec!["padic", "unit-square", "--x", "2", "--p", "7"],
        vec!["poly", "newton", "--poly", "[-7,0,1]", "--p", "7"],
        vec!["poly", "compatible", "--poly", "[1,0,1]", "--u", "2", "--place", "3"],
        vec!["poly", "etale", "--poly", "[-2,0,1]", "--p", "2"],
        vec!["quat", "hilbert", "--a", "-1", "--b", "-1", "--place", "2"],
        vec!["quat", "ramification", "--a", "-1", "--b", "-1"],
        vec!["quat", "charpoly", "--a", "-1", "--b", "-1", "--element", "[1,2,0,0]"],
        vec!["quat", "regular", "--a", "-1", "--b", "-1", "--element", "[1,2,0,0]"],
        vec!["quat", "matrix-charpoly", "--a", "-1", "--b", "3", "--matrix", "[[[0,1,0,0]]]", "--place", "3"],
        vec!["transfer", "class", "--matrix", "[[0,-1],[1,0]]"],
        vec!["transfer", "shape", "--poly", "[1,0,1]", "--d", "2", "--place", "3"],
        vec!["transfer", "companion", "--poly", "[1,-1,1]"],
        vec!["transfer", "levi", "--shape", "4,2", "--d", "2", "--direction", "to-prime"],
        vec!["transfer", "global", "--poly", "[1,0,1]", "--ramification", "2,3"],
        vec!["satake", "generator", "--n", "3", "--q", "4", "--k", "1"],
        vec!["satake", "unitary", "--q", "5", "--params", "1,0;1,0"],
        vec!["satake", "separate", "--q", "5", "--first", "1,0;1,0", "--second", "2,0;0.5,0"],
        vec!["tracefinite", "models"],
        vec!["tracefinite", "average", "--model", "builtin:Z4/sign", "--function", r#"{"support":[[1,1]]}"#],
        vec!["tracefinite", "decompose", "--model", "builtin:S3/A3", "--function", r#"{"support":[[0,1]]}"#],
        vec!["adele", "norm", "--idele", r#"{"inf":"1","finite":{"2":"8"}}"#],
        vec!["adele", "character", "--character", r#"{"s":"1,0"}"#, "--idele", r#"{"inf":6,"finite":{"2":6,"3":6},"default_value":6}"#],
        vec!["adele", "decompose", "--idele", r#"{"inf":"-6","finite":{"2":4,"3":1}}"#],
        vec!["adele", "integrate", "--function", r#"{"inf":{"scale":3,"lo":0,"hi":2},"finite":{"2":[[1,0,0]]}}"#],
    ];
    for args in cases {
        let (code, v) = jl(&args);
        assert_eq!(code, 0, "{args:?} -> {v}");
    }
    let (_, v) = jl(&["adele", "norm", "--idele", r#"{"inf":"1","finite":{"2":"8"}}"#]);
    assert_eq!(v["norm"], "1/8");
    let (_, v) = jl(&["adele", "integrate", "--function", r#"{"inf":{"scale":3,"lo":0,"hi":2},"finite":{"2":[[1,0,0]]}}"#]);
    assert_eq!(v["integral"], 6);
}

#[test]
fn compare_reports_unmatched_orbit() {
    let (code, v) = jl(&[
        "tracefinite",
        "compare",
        "--left",
        "builtin:S3/A3",
        "--right",
        "builtin:S3/A3",
        "--match",
        "[[0,0]]",
        "--f",
        r#"{"support":[[[1,2,0],1]]}"#,
        "--fprime",
        r#"{"support":[]}"#,
    ]);
    assert_eq!(code, 1, "{v}");
    assert_eq!(v["error"]["kind"], "NonVanishingUnmatched");
}

#[test]
fn json_indent_pretty_prints() {
    let (code, out) = jl_cli::run(["jl", "--json-indent", "2", "quat", "ramification", "--a", "-1", "--b", "-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\n  \"places\""));
}
