use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn prym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prym"))
        .args(args)
        .env_remove("PRYM_MAX_GROUP_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// Compares against `tests/golden/<name>`; `PRYM_BLESS=1` rewrites the file.
fn golden(name: &str, args: &[&str]) {
    let out = prym(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("PRYM_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(stdout(&out), expected, "golden {name} differs");
}

#[test]
fn golden_outputs() {
    golden("catalog_list.txt", &["catalog", "list"]);
    golden(
        "z2_decompose.json",
        &["decompose", "--catalog", "Z2_genus3"],
    );
    golden(
        "z2_decompose.txt",
        &["decompose", "--catalog", "Z2_genus3", "--format", "text"],
    );
    golden(
        "d4_decompose.json",
        &["decompose", "--catalog", "D4_genus4"],
    );
    golden(
        "d4_decompose.txt",
        &["decompose", "--catalog", "D4_genus4", "--format", "text"],
    );
    golden("z2_bounds.json", &["bounds", "--catalog", "Z2_genus3"]);
    golden(
        "dp5_bounds.json",
        &["bounds", "--catalog", "Dp_scenario", "--p", "5"],
    );
    golden(
        "q8_bounds.txt",
        &["bounds", "--catalog", "Q8_scenario", "--format", "text"],
    );
    golden(
        "q8_bounds_flags.txt",
        &[
            "bounds",
            "--catalog",
            "Q8_scenario",
            "--assume-pullback-embedding",
            "--assume-two-point-or-unramified",
            "--format",
            "text",
        ],
    );
    golden("z2_export.json", &["catalog", "export", "Z2_genus3"]);
    golden(
        "z3_decompose.txt",
        &["decompose", &data("z3_genus1.json"), "--format", "text"],
    );
}

#[test]
fn output_is_deterministic() {
    let a = prym(&["decompose", "--catalog", "D4_genus4"]);
    let b = prym(&["decompose", "--catalog", "D4_genus4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_round_trip() {
    let cases: [(&str, &[&str]); 5] = [
        ("Z2_genus3", &[]),
        ("D4_genus4", &[]),
        ("Dp_scenario", &["--p", "7"]),
        ("Q8_scenario", &[]),
        (
            "Q8_scenario",
            &["--assume-two-point-or-unramified", "--apply-divisor-rule"],
        ),
    ];
    for (i, (name, extra)) in cases.iter().enumerate() {
        let mut export = vec!["catalog", "export", name];
        export.extend_from_slice(extra);
        let doc = prym(&export);
        assert!(doc.status.success(), "{}", stderr(&doc));
        let path = scratch(&format!("round_trip_{i}.json"));
        std::fs::write(&path, &doc.stdout).unwrap();
        let path = path.to_string_lossy().into_owned();

        let mut from_catalog = vec!["decompose", "--catalog", name];
        from_catalog.extend_from_slice(extra);
        let direct = prym(&from_catalog);
        let via_file = prym(&["decompose", &path]);
        assert!(via_file.status.success(), "{}", stderr(&via_file));
        assert_eq!(stdout(&direct), stdout(&via_file), "round trip of {name}");
        assert!(prym(&["validate", &path]).status.success());
    }
}

#[test]
fn validate_exit_codes() {
    let export = prym(&["catalog", "export", "Z2_genus3"]);
    let path = scratch("z2.json");
    std::fs::write(&path, &export.stdout).unwrap();
    let ok = prym(&["validate", &path.to_string_lossy()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("ok:"));

    let bad = prym(&["validate", &data("not_symplectic.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("NotSymplectic"), "{}", stderr(&bad));

    let malformed = prym(&["validate", &data("malformed.json")]);
    assert_eq!(malformed.status.code(), Some(2));

    let missing = prym(&["validate", &data("no_such_file.json")]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(prym(&["bounds", "--catalog", "S5"]).status.code(), Some(2));
    assert_eq!(
        prym(&["bounds", "--catalog", "Dp_scenario"]).status.code(),
        Some(2)
    );
    assert_eq!(
        prym(&["bounds", "--catalog", "Dp_scenario", "--p", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        prym(&["bounds", "--catalog", "Z2_genus3", "--p", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(prym(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(prym(&["decompose"]).status.code(), Some(2));
}

#[test]
fn group_order_cap_from_environment() {
    let file = data("z3_genus1.json");
    let capped = Command::new(env!("CARGO_BIN_EXE_prym"))
        .args(["validate", &file])
        .env("PRYM_MAX_GROUP_ORDER", "2")
        .output()
        .unwrap();
    assert_ne!(capped.status.code(), Some(0));
    assert!(
        stderr(&capped).contains("ClosureTooLarge"),
        "{}",
        stderr(&capped)
    );

    let garbage = Command::new(env!("CARGO_BIN_EXE_prym"))
        .args(["validate", &file])
        .env("PRYM_MAX_GROUP_ORDER", "lots")
        .output()
        .unwrap();
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn catalog_bounds() {
    let z2 = stdout(&prym(&[
        "bounds",
        "--catalog",
        "Z2_genus3",
        "--format",
        "text",
    ]));
    assert!(z2.contains("component A0\n  degree: lower 2, upper -, exact -"));
    assert!(z2.contains("component A1\n  degree: lower 1, upper 2, exact 2"));

    let dp = stdout(&prym(&[
        "bounds",
        "--catalog",
        "Dp_scenario",
        "--p",
        "5",
        "--format",
        "text",
    ]));
    assert!(dp.contains("scenario A0\n  degree: lower 10, upper 10, exact 10"));
    assert!(dp.contains("scenario A1\n  degree: lower 5, upper 10, exact -"));

    let q8 = stdout(&prym(&[
        "bounds",
        "--catalog",
        "Q8_scenario",
        "--format",
        "text",
    ]));
    assert!(q8.contains("scenario A0\n  degree: lower 8, upper -, exact -"));
    for a in ["A1", "A2", "A3"] {
        assert!(q8.contains(&format!(
            "scenario {a}\n  degree: lower 4, upper -, exact -"
        )));
    }
    let q8 = stdout(&prym(&[
        "bounds",
        "--catalog",
        "Q8_scenario",
        "--assume-pullback-embedding",
        "--assume-two-point-or-unramified",
        "--format",
        "text",
    ]));
    assert!(q8.contains("scenario A0\n  degree: lower 8, upper 8, exact 8"));
    for a in ["A1", "A2", "A3"] {
        assert!(q8.contains(&format!(
            "scenario {a}\n  degree: lower 4, upper 8, exact -"
        )));
    }
    assert!(q8.contains("scenario A4\n  degree: lower 1, upper 2, exact -"));
}

#[test]
fn flags_apply_to_file_scenarios() {
    let export = prym(&["catalog", "export", "D4_genus4"]);
    let path = scratch("d4.json");
    std::fs::write(&path, &export.stdout).unwrap();
    let out = stdout(&prym(&[
        "bounds",
        &path.to_string_lossy(),
        "--apply-divisor-rule",
        "--format",
        "text",
    ]));
    assert!(
        out.starts_with("instance: D4_genus4\nassumptions: divisor_rule\n"),
        "{out}"
    );
    assert!(out.contains("R=-4"), "{out}");
}
