//! Shared CLI golden cases. Each case is run from the crate root so fixture
//! paths stay relative and reports contain no absolute paths.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub status: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "components_diagonal_swap",
        args: &["components", "--group", "tests/fixtures/diagonal_swap.grp"],
        status: 0,
    },
    Case {
        name: "components_twisted",
        args: &["components", "--group", "tests/fixtures/twisted.grp"],
        status: 0,
    },
    Case {
        name: "normalize_twisted_fix",
        args: &[
            "normalize",
            "--group",
            "tests/fixtures/twisted.grp",
            "--fix",
            "0,1,2",
        ],
        status: 0,
    },
    Case {
        name: "embed_diagonal_swap",
        args: &["embed", "--group", "tests/fixtures/diagonal_swap.grp"],
        status: 0,
    },
    Case {
        name: "normalize_intransitive_component",
        args: &[
            "normalize",
            "--group",
            "tests/fixtures/intransitive_component.grp",
            "--fix",
            "0,2",
        ],
        status: 1,
    },
    Case {
        name: "embed_twisted",
        args: &["embed", "--group", "tests/fixtures/twisted.grp"],
        status: 0,
    },
    Case {
        name: "embed_intransitive_component",
        args: &[
            "embed",
            "--group",
            "tests/fixtures/intransitive_component.grp",
            "--fix",
            "0,0",
        ],
        status: 1,
    },
    Case {
        name: "split_two_blocks",
        args: &[
            "split",
            "--group",
            "tests/fixtures/two_blocks.grp",
            "--delta0",
            "0,1",
        ],
        status: 0,
    },
    Case {
        name: "code_canon_repetition",
        args: &[
            "code-canon",
            "--code",
            "tests/fixtures/repetition.code",
            "--group",
            "tests/fixtures/repetition_aut.grp",
            "--gamma",
            "0",
            "--nu",
            "1",
        ],
        status: 0,
    },
    Case {
        name: "code_canon_even_weight",
        args: &[
            "code-canon",
            "--code",
            "tests/fixtures/even_weight.code",
            "--group",
            "tests/fixtures/even_weight_aut.grp",
            "--gamma",
            "0",
            "--nu",
            "1",
        ],
        status: 0,
    },
    Case {
        name: "parse_error",
        args: &["components", "--group", "tests/fixtures/bad_line.grp"],
        status: 2,
    },
    Case {
        name: "verify_2_2",
        args: &[
            "verify",
            "--q",
            "2",
            "--m",
            "2",
            "--samples",
            "100",
            "--seed",
            "7",
        ],
        status: 0,
    },
    Case {
        name: "verify_3_2",
        args: &["verify", "--q", "3", "--m", "2"],
        status: 0,
    },
];

pub struct Run {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn crate_root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_root()
        .join("tests/golden")
        .join(format!("{name}.out"))
}

pub fn run_binary(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wreathkit"))
        .args(args)
        .current_dir(crate_root())
        .env_remove("WREATHKIT_CAP")
        .output()
        .expect("spawn wreathkit");
    Run {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Golden content: the exit status followed by stdout, and stderr when present.
pub fn render(run: &Run) -> String {
    let mut s = format!("exit: {}\n{}", run.status, run.stdout);
    if !run.stderr.is_empty() {
        s.push_str("--- stderr\n");
        s.push_str(&run.stderr);
    }
    s
}
