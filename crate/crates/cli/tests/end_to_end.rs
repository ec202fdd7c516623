//! End-to-end checks of the `ncdiff` binary: documented invocations,
//! exit codes, JSON output, and a full catalog run.

use std::process::Command;

fn ncdiff(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncdiff"))
        .args(args)
        .env_remove("NCDIFF_SEED")
        .output()
        .expect("spawn ncdiff");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn applying_a_del_to_the_commutator_prints_one() {
    let (code, stdout, _) = ncdiff(&["--n", "2", "apply", "del[(1,2);(1,1)]", "x1*x2 - x2*x1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1");
}

#[test]
fn left_and_right_multiplication_differ_with_a_witness() {
    let (code, stdout, _) = ncdiff(&["--n", "2", "equal", "lam[x1]", "rho[x1]"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("witness"), "got: {stdout}");
}

#[test]
fn equal_operators_exit_zero() {
    let (code, stdout, _) = ncdiff(&[
        "equal",
        "del[(1);(x2)]*del[(2);(1)]",
        "del[(1,2);(x2,1)] + del[(2,1);(1,x2)] + del[(2);(del[(1);(x2)]*x2 - x2*del[(1);(x2)])]",
    ]);
    // the last summand is an operator expression, so this must be a
    // parse error, not a silent wrong answer
    assert_eq!(code, 2, "stdout: {stdout}");
    let (code, _, _) = ncdiff(&[
        "equal",
        "del[(1);(x2)]*del[(2);(1)]",
        "del[(1,2);(x2,1)] + del[(2,1);(1,x2)]",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn named_identity_and_full_catalog_pass() {
    let (code, stdout, stderr) = ncdiff(&["--n", "2", "check-identity", "product-dels-two-by-two"]);
    assert_eq!(code, 0, "stdout: {stdout} stderr: {stderr}");
    assert!(stdout.contains("pass product-dels-two-by-two"));

    let (code, stdout, stderr) = ncdiff(&["--n", "2", "check-identity", "all", "--trials", "4"]);
    assert_eq!(code, 0, "stdout: {stdout} stderr: {stderr}");
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn json_reports_are_machine_readable() {
    let (code, stdout, _) = ncdiff(&[
        "--json",
        "check-identity",
        "quantum-q-integers",
        "--trials",
        "2",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(doc["name"], "quantum-q-integers");
    assert_eq!(doc["pass"], true);

    let (code, stdout, _) = ncdiff(&["--json", "apply", "lam[x1]", "x2"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(doc["element"][0]["word"], serde_json::json!([1, 2]));
}

#[test]
fn usage_and_mode_errors_exit_two() {
    let (code, _, stderr) = ncdiff(&["--n", "2", "order", "qdel[(1);((0,1));(1)]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("mode"), "stderr: {stderr}");

    let (code, _, _) = ncdiff(&["--n", "17", "list-identities"]);
    assert_eq!(code, 2);

    let (code, _, stderr) = ncdiff(&["apply", "del[(1,2);", "x1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("syntax"), "stderr: {stderr}");
}

#[test]
fn seed_env_var_overrides_the_flag() {
    let with_flag = Command::new(env!("CARGO_BIN_EXE_ncdiff"))
        .args(["--json", "--seed", "5", "check-identity", "order-one-product", "--trials", "2"])
        .env_remove("NCDIFF_SEED")
        .output()
        .unwrap();
    let with_env = Command::new(env!("CARGO_BIN_EXE_ncdiff"))
        .args(["--json", "--seed", "9", "check-identity", "order-one-product", "--trials", "2"])
        .env("NCDIFF_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
    let doc: serde_json::Value =
        serde_json::from_slice(&with_flag.stdout).unwrap();
    assert_eq!(doc["seed"], 5);
}

#[test]
fn numeric_bicharacter_gives_rational_q_integers() {
    // the graded derivation with q = 2 yields 1 + 2 + 4 = 7 on x1^3
    let (code, stdout, stderr) = ncdiff(&[
        "--mode",
        "quantum",
        "--q",
        "2",
        "1",
        "2",
        "apply",
        "qdel[(1);((0,1));(1)]",
        "x1*x1*x1",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert_eq!(stdout.trim(), "7*x1*x1");
}

#[test]
fn normalize_compose_order_and_reduction_commands() {
    let (code, stdout, _) = ncdiff(&["compose", "lam[x1]", "del[(2);(1)]"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("del["), "got: {stdout}");

    let (code, stdout, _) = ncdiff(&[
        "normalize",
        "del[(1,2);(x2*x1,1)] - del[(1,2);(x1*x2,1)] - lam[x2]*del[(2);(1)] + del[(2);(x2)]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "0");

    let (code, stdout, _) = ncdiff(&["order", "del[(1,2);(1,1)] + lam[x1]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "2");

    let (code, stdout, _) = ncdiff(&["reduce-element", "x1*x2 - x2*x1 + 2*x1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("->"), "got: {stdout}");

    let (code, stdout, _) = ncdiff(&["simplify-demo", "del[(1,2);(1,1)]"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("scalar:"), "got: {stdout}");

    let (code, stdout, _) = ncdiff(&["psform", "del[(1);(x2)]", "--max-order", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("bound: 3"), "got: {stdout}");

    let (code, stdout, _) = ncdiff(&["list-identities"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().count() >= 30, "got: {stdout}");
}
