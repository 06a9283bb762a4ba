use std::io::Write;
use std::process::{Command, Stdio};

use stf::cli::{run, REGISTRY};

const TREE3: &str = include_str!("data/tree3.cp");
const CYCLIC: &str = include_str!("data/cyclic.cp");
const CHAIN: &str = include_str!("data/chain2.poset");

fn call(args: &[&str], stdin: &str) -> (i32, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("stf").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn binary(args: &[&str], stdin: &str, envs: &[(&str, &str)]) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stf"))
        .args(args)
        .envs(envs.iter().copied())
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn goldens() {
    let cases: &[(&[&str], &str, &str)] = &[
        (&["hf", "rank", "{{{}}}"], "", "2\n"),
        (&["hf", "key", "{{},{{}}}"], "", "3\n"),
        (&["hf", "pair", "{}", "{{}}"], "", "{{{}},{{},{{}}}}\n"),
        (&["hf", "contains", "{{}}", "{}"], "", "true\n"),
        (&["hf", "ordinal", "2"], "", "{{},{{}}}\n"),
        (&["code", "decode"], TREE3, "{{},{{}},{{},{{}}}}\n"),
        (&["code", "validate"], TREE3, "ok\n"),
        (&["code", "level", "0'''"], TREE3, "3\n"),
        (
            &["code", "iso", "tests/data/tree3.cp", "tests/data/tree3.cp"],
            "",
            "true\n",
        ),
        (&["adcode", "code", "01"], "", "5\n"),
        (
            &["adcode", "leq", "001:0", ":0", "--indices", "2", "--horizon", "8"],
            "",
            "false\n",
        ),
        (
            &["adcode", "decode", "--x", "", "--indices", "2", "--horizon", "64"],
            "",
            "{0,1}\n",
        ),
        (
            &["force", "interpret", "--bound", "2", "--at", "10", "[(check({}), 1)]"],
            "",
            "{{}}\n",
        ),
        (
            &["force", "dense", "--poset", "-", "--set", "b"],
            CHAIN,
            "dense true\ndense-below true\npredense-below true\n",
        ),
        (
            &["force", "dense", "--poset", "-", "--set", "t"],
            CHAIN,
            "dense false\ndense-below false\npredense-below true\n",
        ),
    ];
    for (args, stdin, expected) in cases {
        let (code, out) = call(args, stdin);
        assert_eq!((code, out.as_str()), (0, *expected), "{args:?}");
    }
}

#[test]
fn registry_entries_through_the_binary() {
    for e in REGISTRY {
        let (code, _, err) = binary(&e.args[1..], e.stdin, &[]);
        assert_eq!(code, e.exit, "{}: {err}", e.op);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["code", "validate"], CYCLIC).0, 1);
    assert_eq!(call(&["force", "grid", "--bound", "2", "--rank", "1"], "").0, 0);
    assert_eq!(call(&["hf", "eval", "{"], "").0, 2);
    assert_eq!(call(&["code", "decode"], CYCLIC).0, 1);
    assert_eq!(call(&["force", "dense", "--poset", "-", "--set", "zz"], CHAIN).0, 2);
    assert_eq!(
        call(
            &[
                "adcode",
                "simulate",
                "--target",
                "9",
                "--indices",
                "2",
                "--horizon",
                "32"
            ],
            ""
        )
        .0,
        2
    );
    let (code, out, _) = binary(
        &[
            "adcode",
            "simulate",
            "--target",
            "0,1",
            "--indices",
            "2",
            "--horizon",
            "32",
        ],
        "",
        &[],
    );
    assert_eq!(code, 0);
    assert!(out.ends_with("match true\n"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("stf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.txt");
    let p = path.to_str().unwrap();
    let (code, out, _) = binary(&["-o", p, "hf", "cumulative", "2"], "", &[]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "{}\n{{}}\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budget_from_environment() {
    let (code, _, err) = binary(&["hf", "ordinal", "10"], "", &[("STF_BUDGET", "5")]);
    assert_eq!(code, 1);
    assert!(err.contains("budget"));
    let (code, _, _) = binary(&["--budget", "50", "hf", "ordinal", "10"], "", &[("STF_BUDGET", "5")]);
    assert_eq!(code, 0);
}
