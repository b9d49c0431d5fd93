#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_thetacalc")
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_in(dir: &Path, args: &[&str], env_budget: Option<&str>) -> Outcome {
    let mut cmd = Command::new(bin());
    cmd.args(args)
        .current_dir(dir)
        .env_remove("THETACALC_TERM_BUDGET");
    if let Some(b) = env_budget {
        cmd.env("THETACALC_TERM_BUDGET", b);
    }
    let out = cmd.output().expect("spawn thetacalc");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn run(args: &[&str]) -> Outcome {
    run_in(&crate_dir(), args, None)
}

/// A recorded invocation. `export` names a file the command writes into a
/// scratch directory; its contents become part of the golden text.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
    pub export: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str], code: i32) -> Case {
    Case {
        name,
        args,
        code,
        export: None,
    }
}

pub const CASES: &[Case] = &[
    case("verlinde_2_1_2", &["verlinde", "2", "1", "2"], 0),
    case(
        "verlinde_2_2_2_full",
        &[
            "verlinde",
            "2",
            "2",
            "2",
            "--modified",
            "--check-symmetry",
            "--float-oracle",
        ],
        0,
    ),
    case(
        "verlinde_3_2_3_modified",
        &["verlinde", "3", "2", "3", "--modified"],
        0,
    ),
    case(
        "verlinde_budget",
        &["verlinde", "10", "10", "2", "--term-budget", "1000"],
        3,
    ),
    case("verlinde_range", &["verlinde", "0", "1", "2"], 2),
    case(
        "verlinde_low_precision",
        &[
            "verlinde",
            "2",
            "2",
            "2",
            "--float-oracle",
            "--precision",
            "5",
        ],
        2,
    ),
    case(
        "mukai_pair",
        &[
            "--lattice",
            "k3_genus5",
            "mukai",
            "pair",
            "--v",
            "2,1,2",
            "--w",
            "1,0,-1",
        ],
        0,
    ),
    case(
        "mukai_chi_k3",
        &[
            "--lattice",
            "k3_genus5",
            "mukai",
            "chi-k3",
            "--v",
            "2,1,2",
            "--w",
            "1,0,-1",
        ],
        0,
    ),
    case(
        "mukai_chi_abelian_s2",
        &[
            "--lattice",
            "abelian_pp",
            "mukai",
            "chi-abelian",
            "--v",
            "1,1,0",
            "--w",
            "1,2,4",
            "--variant",
            "s2",
        ],
        0,
    ),
    case(
        "mukai_chi_abelian_s3",
        &[
            "--lattice",
            "abelian_pp",
            "mukai",
            "chi-abelian",
            "--v",
            "1,1,0",
            "--w",
            "1,2,4",
            "--variant",
            "s3",
        ],
        0,
    ),
    case(
        "mukai_chi_abelian_s4",
        &[
            "--lattice",
            "abelian_pp",
            "mukai",
            "chi-abelian",
            "--v",
            "1,1,0",
            "--w",
            "1,-1,0",
            "--variant",
            "s4",
        ],
        0,
    ),
    case(
        "mukai_chi_abelian_not_integral",
        &[
            "--lattice",
            "abelian_pp",
            "mukai",
            "chi-abelian",
            "--v",
            "1,1,-1",
            "--w",
            "1,0,-2",
        ],
        1,
    ),
    case(
        "mukai_chi_abelian_on_k3",
        &["mukai", "chi-abelian", "--v", "1,1,0,0", "--w", "1,1,0,0"],
        2,
    ),
    case(
        "mukai_fm",
        &["--lattice", "abelian_pp", "mukai", "fm", "--v", "2,-1,3"],
        0,
    ),
    case(
        "mukai_conjecture",
        &[
            "--lattice",
            "k3_genus5",
            "mukai",
            "conjecture",
            "--v",
            "2,1,2",
            "--w",
            "1,0,-1",
            "--H",
            "1",
        ],
        0,
    ),
    case(
        "mukai_bad_vector",
        &["mukai", "pair", "--v", "1,2", "--w", "1,0,0,0"],
        2,
    ),
    case("duality_wedge_3_1", &["duality", "wedge", "3", "1"], 0),
    Case {
        name: "duality_wedge_3_1_export",
        args: &["duality", "wedge", "3", "1", "--export", "m.json"],
        code: 0,
        export: Some("m.json"),
    },
    case("duality_wedge_4_2", &["duality", "wedge", "4", "2"], 0),
    case("duality_wedge_bad_k", &["duality", "wedge", "3", "4"], 2),
    case("duality_sym_3_2", &["duality", "sym", "3", "2"], 0),
    case(
        "duality_theta_collinear",
        &[
            "duality",
            "theta-vanishes",
            "--points",
            "tests/fixtures/points_collinear.json",
        ],
        0,
    ),
    case(
        "duality_theta_generic",
        &[
            "duality",
            "theta-vanishes",
            "--points",
            "tests/fixtures/points_generic.json",
        ],
        0,
    ),
    case(
        "elliptic_normalize_2_2_0",
        &["elliptic", "normalize", "2", "2", "0"],
        0,
    ),
    case(
        "elliptic_normalize_2_3_-1",
        &["elliptic", "normalize", "2", "3", "-1"],
        0,
    ),
    case(
        "elliptic_nu_2_3_12_15",
        &["elliptic", "nu", "2", "3", "12", "15"],
        0,
    ),
    case(
        "elliptic_nu_2_2_10_10",
        &["elliptic", "nu", "2", "2", "10", "10"],
        2,
    ),
    case(
        "elliptic_theta_class_2_3_12_15",
        &["elliptic", "theta-class", "2", "3", "12", "15"],
        0,
    ),
    case(
        "elliptic_theta_class_2_2_9_9",
        &["elliptic", "theta-class", "2", "2", "9", "9"],
        0,
    ),
    case(
        "elliptic_dims_2_3_12_15",
        &["elliptic", "dims", "2", "3", "12", "15"],
        0,
    ),
    case(
        "elliptic_dims_2_2_5_5",
        &["elliptic", "dims", "2", "2", "5", "5"],
        2,
    ),
    case(
        "format_markdown",
        &[
            "--format", "markdown", "elliptic", "dims", "2", "3", "12", "15",
        ],
        0,
    ),
    case(
        "format_csv",
        &["--format", "csv", "verlinde", "2", "2", "2", "--modified"],
        0,
    ),
    case(
        "config_file",
        &[
            "--config",
            "tests/fixtures/config.toml",
            "mukai",
            "chi-k3",
            "--v",
            "1,1,1",
            "--w",
            "1,0,-1",
        ],
        0,
    ),
    case("unknown_subcommand", &["frobnicate"], 64),
];

/// The golden text: exit code, stdout, stderr and any exported file.
pub fn transcript(c: &Case) -> String {
    let scratch = tempfile::tempdir().expect("scratch dir");
    let dir = if c.export.is_some() {
        scratch.path().to_path_buf()
    } else {
        crate_dir()
    };
    let out = run_in(&dir, c.args, None);
    let mut text = format!(
        "$ thetacalc {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        c.args.join(" "),
        out.code,
        out.stdout,
        out.stderr
    );
    if let Some(file) = c.export {
        let body = std::fs::read_to_string(scratch.path().join(file)).unwrap_or_default();
        text.push_str(&format!("--- {file}\n{body}"));
    }
    text
}

pub fn golden_path(c: &Case) -> PathBuf {
    crate_dir()
        .join("tests/golden")
        .join(format!("{}.txt", c.name))
}

/// Compares against the stored golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_case(c: &Case) -> Result<(), String> {
    let actual = transcript(c);
    let path = golden_path(c);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if actual != expected {
        return Err(format!("{}: output differs from golden\n{actual}", c.name));
    }
    let code_line = format!("exit: {}\n", c.code);
    if !actual.contains(&code_line) {
        return Err(format!("{}: expected exit {}", c.name, c.code));
    }
    Ok(())
}
