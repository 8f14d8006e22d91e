use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const S1: &str = r#"{"points":["a","b"],"tau":[{"set":["a"],"degree":"1"}]}"#;
const S2: &str =
    r#"{"points":["a","b"],"tau":[{"set":["a"],"degree":"3/4"},{"set":["b"],"degree":"1/2"}]}"#;
const BROKEN: &str = r#"{"points":["a","b"],"tau":[{"set":["a","b"],"degree":"1/2"}]}"#;

fn file(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fuzzitop"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn t2p_of_sierpinski() {
    let s1 = file("s1.json", S1);
    let o = run(&["degree", "t2p", s1.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0/1");
}

#[test]
fn generated_spaces_validate() {
    let g = run(
        &["gen", "--points", "3", "--grid", "4", "--seed", "9"],
        None,
    );
    assert_eq!(g.status.code(), Some(0));
    let v = run(&["validate", "-"], Some(&stdout(&g)));
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v).trim(), "valid");
}

#[test]
fn check_all_on_two_level_space() {
    let o = run(&["check", "-", "--theorem", "all"], Some(S2));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["--json", "check", "-", "--theorem", "T3.3"], Some(S2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["tight"]["args"]["A"], "{a}");
    assert_eq!(v[0]["tight"]["slack"], "0/1");
}

#[test]
fn invalid_spaces_exit_one() {
    assert_eq!(run(&["validate", "-"], Some(BROKEN)).status.code(), Some(1));
    assert_eq!(
        run(&["degree", "t2p", "-"], Some(BROKEN)).status.code(),
        Some(1)
    );
    let o = run(&["degree", "t2p", "-", "--allow-invalid"], Some(BROKEN));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(
        run(&["degree", "t2p", "-"], Some("{not json"))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "-", "--theorem", "T9.9"], Some(S2))
            .status
            .code(),
        Some(2)
    );
    let o = run(&["eval", "-", "-e", "open(A)"], Some(S2));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:6"));
}

#[test]
fn degree_subcommands() {
    let cases: &[(&[&str], &str)] = &[
        (&["degree", "t4p", "-"], "1/1"),
        (&["degree", "tau_p", "-", "--set", "{b}"], "1/2"),
        (&["degree", "f_p", "-", "--set", "{b}"], "3/4"),
        (&["degree", "cl_p", "-", "--set", "{b}"], "a 1/4\nb 1/1"),
        (
            &["degree", "nbhd_p", "-", "--point", "a", "--set", "{a}"],
            "3/4",
        ),
        (
            &[
                "degree", "preconv", "-", "--kernel", "[\"a\"]", "--point", "b",
            ],
            "1/2",
        ),
        (&["degree", "gamma_p", "-", "--generic"], "1/1"),
        (
            &["degree", "beta5", "-", "--generic", "--grid-refine", "2"],
            "1/1",
        ),
        (&["degree", "prebase", "-"], "1/1"),
    ];
    for (args, want) in cases {
        let o = run(args, Some(S2));
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o).trim(), *want, "{args:?}");
    }
}

#[test]
fn map_degrees() {
    let s1 = file("map_s1.json", S1);
    let m = file("swap.json", r#"{"map":{"a":"b","b":"a"}}"#);
    let args = [
        "degree",
        "op",
        "-",
        "--map",
        m.to_str().unwrap(),
        "--target",
        s1.to_str().unwrap(),
    ];
    let o = run(&args, Some(S2));
    assert_eq!(o.status.code(), Some(0));
    // {a} (degree 3/4) maps to {b}, which is not pre-open in the target.
    assert_eq!(stdout(&o).trim(), "1/4");
}

#[test]
fn eval_with_bindings() {
    let o = run(&["eval", "-", "-e", "~ open({b})"], Some(S2));
    assert_eq!(stdout(&o).trim(), "1/2");
    let o = run(
        &[
            "eval",
            "-",
            "-e",
            "pnbhd(x, A)",
            "--bind",
            "x=a",
            "--bind",
            "A={a}",
        ],
        Some(S2),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3/4");
}

#[test]
fn search_is_deterministic_and_finds_converse() {
    let args = [
        "--json",
        "search",
        "L3.3",
        "--points",
        "3",
        "--samples",
        "30",
        "--seed",
        "5",
    ];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let o = run(
        &[
            "--json",
            "search",
            "L3.4",
            "--points",
            "2",
            "--grid",
            "2",
            "--exhaustive",
            "--converse",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["spaces_tried"], 9);
    assert!(!v["converse"].as_array().unwrap().is_empty());
}

#[test]
fn product_and_subspace() {
    let s1 = file("prod_s1.json", S1);
    let s2 = file("prod_s2.json", S2);
    let o = run(
        &["product", s1.to_str().unwrap(), s2.to_str().unwrap()],
        None,
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    assert_eq!(v["points"][1], "a|b");

    let o = run(&["subspace", "-", "--set", "{b}"], Some(S2));
    let v = run(&["validate", "-"], Some(&stdout(&o)));
    assert_eq!(v.status.code(), Some(0));
}
