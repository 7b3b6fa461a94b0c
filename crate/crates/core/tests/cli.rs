mod common;

use common::{golden_path, render, run_binary, CASES};

// Set WREATHKIT_BLESS=1 to rewrite the golden files.
#[test]
fn golden_outputs() {
    let bless = std::env::var_os("WREATHKIT_BLESS").is_some();
    for case in CASES {
        let run = run_binary(case.args);
        assert_eq!(run.status, case.status, "{}: {}", case.name, run.stderr);
        let got = render(&run);
        let path = golden_path(case.name);
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(got, want, "{} differs from golden", case.name);
    }
}

#[test]
fn reports_are_stable_across_runs() {
    for case in CASES {
        let first = render(&run_binary(case.args));
        for _ in 0..2 {
            assert_eq!(render(&run_binary(case.args)), first, "{}", case.name);
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    let run = run_binary(&["split", "--group", "tests/fixtures/two_blocks.grp"]);
    assert_eq!(run.status, 2);
    let run = run_binary(&["components", "--group", "tests/fixtures/missing.grp"]);
    assert_eq!(run.status, 2);
    assert!(run.stderr.contains("cannot read"));
}

#[test]
fn bad_fix_point_is_an_input_error() {
    let run = run_binary(&[
        "normalize",
        "--group",
        "tests/fixtures/twisted.grp",
        "--fix",
        "0,3,1",
    ]);
    assert_eq!(run.status, 2, "{}", run.stdout);
}

#[test]
fn split_rejects_non_invariant_set() {
    let run = run_binary(&[
        "split",
        "--group",
        "tests/fixtures/diagonal_swap.grp",
        "--delta0",
        "0",
    ]);
    assert_ne!(run.status, 0);
}

#[test]
fn cap_is_enforced() {
    let out = wreathkit::cli::run(
        [
            "wreathkit",
            "--cap",
            "3",
            "split",
            "--group",
            "tests/fixtures/two_blocks.grp",
            "--delta0",
            "0,1",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>(),
    );
    // The library call runs from the test's working directory, the crate root.
    assert_eq!(out.status, 2, "{}", out.stdout);
    assert!(out.stderr.contains("cap"), "{}", out.stderr);
}
