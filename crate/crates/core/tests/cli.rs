use std::io::Write;
use std::process::{Command, Output};

use liaison::error::Error;
use liaison::script::exit_code;
use tempfile::NamedTempFile;

const CUSP: &str = "ring R = GF(32003)[x,y]/(x^2-y^3) weights(3,2) local\nideal m = (x,y)\n";

fn script(src: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(src.as_bytes()).unwrap();
    f
}

fn liaison(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liaison")).args(args).output().unwrap()
}

fn run(src: &str, extra: &[&str]) -> Output {
    let f = script(src);
    let mut args = vec!["run", f.path().to_str().unwrap()];
    args.extend_from_slice(extra);
    liaison(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn prints_ci_link() {
    let o = run(&format!("{CUSP}print ci_link(m;[x])\n"), &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(x, y^2)\n");
}

#[test]
fn empty_script_is_silent() {
    let o = run("", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn failures_exit_with_one_and_a_line_number() {
    for (src, line) in [
        (format!("{CUSP}assert length(R/m) == 2\n"), 3),
        (format!("{CUSP}print nu(q)\n"), 3),
        ("ring R = QQ[x\n".to_string(), 1),
        (format!("{CUSP}ideal m = (x)\n"), 3),
    ] {
        let o = run(&src, &[]);
        assert_eq!(o.status.code(), Some(1), "{src}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains(&format!("line {line}")), "{src}: {err}");
    }
}

#[test]
fn invariant_violations_map_to_two() {
    assert_eq!(exit_code(&Error::Invariant("x".into())), 2);
    assert_eq!(exit_code(&Error::Parse { line: 1, msg: "x".into() }), 1);
}

#[test]
fn json_has_one_record_per_statement() {
    let src = format!("{CUSP}print [nu(m/(y^2)), type(m/(y^2)), length(m/(y^2))]\nassert colon((x),(x,y)) == (x, y^2)\n");
    let o = run(&src, &["--json"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[2]["output"], "[2, 1, 3]");
    assert!(recs.iter().all(|r| r.get("millis").is_none()));
    let timed = run(&src, &["--json", "--timing"]);
    assert!(stdout(&timed).lines().all(|l| serde_json::from_str::<serde_json::Value>(l).unwrap().get("millis").is_some()));
}

#[test]
fn output_is_deterministic() {
    let src = format!(
        "{CUSP}let f = perfect_morphism(m/(x^2))\nprint perfect_link(f)\nprint double_link(f)\nprint regular_sequence_in(m, 1)\n"
    );
    for seed in ["0", "7"] {
        let a = run(&src, &["--seed", seed, "--json"]);
        let b = run(&src, &["--seed", seed, "--json"]);
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn printed_ideals_reparse_to_themselves() {
    for gens in ["(y^3, x)", "(x*y+y^2, x^2)", "(x^2-y^3, x*y)", "(y^2, x+y)"] {
        let first = stdout(&run(&format!("{CUSP}print {gens}\n"), &[]));
        let again = stdout(&run(&format!("{CUSP}print {}\n", first.trim()), &[]));
        assert_eq!(first, again, "{gens}");
    }
}

#[test]
fn reproduce_passes() {
    let o = liaison(&["reproduce"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = liaison(&["reproduce", "--json"]);
    for l in stdout(&o).lines() {
        serde_json::from_str::<serde_json::Value>(l).unwrap();
    }
}
