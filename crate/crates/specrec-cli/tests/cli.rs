use specrec_cli::{
    run, CommandOutcome, EXIT_CAP, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE,
};
use std::path::PathBuf;
use std::process::Command;

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../specrec/data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn cli(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("specrec").chain(args.iter().copied()))
}

#[test]
fn gk_example() {
    let out = cli(&["gk", "--mu", "8,10,11,12"]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert!(out.stderr.is_empty());
    assert!(out.stdout.contains("PI1 {2,3,5}\n"), "{}", out.stdout);
    assert!(out.stdout.contains("PI2 {11}\n"), "{}", out.stdout);
    let json: serde_json::Value =
        serde_json::from_str(&cli(&["gk", "--mu", "8,10,11,12", "--format", "json"]).stdout)
            .unwrap();
    assert_eq!(json["components"], serde_json::json!([[2, 3, 5], [11]]));
}

#[test]
fn recognize_expectations() {
    assert_eq!(
        cli(&["recognize", "--target", "aut-j2", "--expect", "J2,A8"]).exit_code,
        EXIT_OK
    );
    assert_eq!(
        cli(&["recognize", "--target", "aut-j2", "--expect", "A8,J2"]).exit_code,
        EXIT_OK
    );
    let wrong = cli(&["recognize", "--target", "aut-j2", "--expect", "J2"]);
    assert_eq!(wrong.exit_code, EXIT_MISMATCH);
    assert!(!wrong.stderr.is_empty());
    assert_eq!(
        cli(&["recognize", "--target", "aut-mcl", "--expect", "McL"]).exit_code,
        EXIT_OK
    );
    assert_eq!(cli(&["recognize", "--mu", "1"]).exit_code, EXIT_INVALID);
    assert_eq!(
        cli(&["recognize", "--target", "aut-xyz"]).exit_code,
        EXIT_INVALID
    );
    let small = cli(&["recognize", "--mu", "4,5,6"]);
    assert_eq!(small.exit_code, EXIT_OK);
    assert!(small
        .stdout
        .lines()
        .last()
        .unwrap()
        .starts_with("SURVIVORS: "));
}

#[test]
fn recognize_matches_library_golden() {
    for key in ["aut-mcl", "aut-j2"] {
        for (fmt, ext) in [("text", "txt"), ("json", "json")] {
            let out = cli(&["recognize", "--target", key, "--format", fmt]);
            assert_eq!(out.exit_code, EXIT_OK);
            let golden = std::fs::read_to_string(
                PathBuf::from(env!("CARGO_MANIFEST_DIR"))
                    .join(format!("../specrec/tests/golden/{key}.{ext}")),
            )
            .unwrap();
            assert_eq!(out.stdout.trim_end(), golden.trim_end(), "{key} {fmt}");
        }
    }
    let out = cli(&["recognize", "--target", "aut-j2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(json["survivors"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["spectrum"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["bogus"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&[]).exit_code, EXIT_USAGE);
    assert_eq!(
        cli(&["gk", "--mu", "8,10", "--format", "xml"]).exit_code,
        EXIT_USAGE
    );
    let a5 = data("generators/a5.gens");
    // Sampling without a seed is refused.
    assert_eq!(
        cli(&[
            "spectrum",
            "--generators",
            &a5,
            "--method",
            "sample",
            "--samples",
            "10"
        ])
        .exit_code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["gk", "--mu", "4,2"]).exit_code, EXIT_INVALID);
    assert_eq!(
        cli(&["spectrum", "--generators", "/nonexistent.gens"]).exit_code,
        EXIT_INVALID
    );
}

#[test]
fn spectrum_subcommand() {
    let a5 = data("generators/a5.gens");
    let out = cli(&["spectrum", "--generators", &a5]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert!(out.stdout.contains("ORDER 60\n"));
    assert!(out.stdout.contains("MU {2,3,5}\n"));
    assert!(out.stdout.contains("CLASS ORDER 5: 24\n"));
    let capped = cli(&["spectrum", "--generators", &a5, "--cap", "10"]);
    assert_eq!(capped.exit_code, EXIT_CAP);
    let sampled = |seed: &str| {
        cli(&[
            "spectrum",
            "--generators",
            &a5,
            "--method",
            "sample",
            "--samples",
            "500",
            "--seed",
            seed,
        ])
    };
    let s1 = sampled("1");
    assert_eq!(s1.exit_code, EXIT_OK);
    assert!(s1.stdout.contains("MU {2,3,5}\n"));
    assert_eq!(s1.stdout, sampled("1").stdout);
}

#[test]
fn coset_order_subcommand() {
    let mat = data("modules/l2_7_gf5_dim6_ord4.mat");
    let out = cli(&["coset-order", "--matrix", &mat, "--m", "4"]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert!(out.stdout.contains("UNIFORM false\n"));
    assert!(out.stdout.contains("COSET ORDER 20: 15000\n"));
    assert_eq!(
        cli(&["coset-order", "--matrix", &mat, "--m", "3"]).exit_code,
        EXIT_INVALID
    );
}

#[test]
fn catalog_subcommand() {
    let list = cli(&["catalog", "list"]);
    assert_eq!(list.exit_code, EXIT_OK);
    assert!(list.stdout.contains("McL"));
    let sub = cli(&["catalog", "sub", "7", "--require", "7"]);
    assert!(sub.stdout.starts_with("COUNT 15\n"), "{}", sub.stdout);
    assert_eq!(cli(&["catalog", "show", "J2"]).exit_code, EXIT_OK);
    assert_eq!(cli(&["catalog", "show", "J9"]).exit_code, EXIT_INVALID);
    assert_eq!(cli(&["catalog", "targets"]).stdout.lines().count(), 7);
    let bad = std::env::temp_dir().join("specrec-cli-bad-catalog.json");
    std::fs::write(&bad, "{\"simple_groups\": []}").unwrap();
    assert_eq!(
        cli(&["catalog", "--catalog", bad.to_str().unwrap(), "list"]).exit_code,
        EXIT_INVALID
    );
}

#[test]
fn binary_is_byte_stable() {
    let exe = env!("CARGO_BIN_EXE_specrec");
    let args = [
        "recognize",
        "--target",
        "aut-mcl",
        "--all-rules",
        "--format",
        "json",
    ];
    let a = Command::new(exe).args(args).output().unwrap();
    let b = Command::new(exe).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
    let bad = Command::new(exe).arg("bogus").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
