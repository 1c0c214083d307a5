use fo_cli::{run, Response, EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_PRECONDITION};
use fo_poisson::fixtures::random_poly;
use fo_poisson::rng::SplitMix64;
use serde_json::Value;

const SUM: &str = "x1^2+x2^2+x3^2+x4^2";
const DIAG: &str = "x1^2+2*x2^2+3*x3^2+4*x4^2";

fn fo(args: &[&str]) -> Response {
    run(std::iter::once("fo").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = fo(&full);
    let v: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout));
    assert_eq!(v["schema"], "fo-poisson/1");
    (v, r.exit_code)
}

#[test]
fn verify_d_golden() {
    let (v, code) = json(&["verify-d", "x1^2", "x1*x2", "x1*x3", "x1*x4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["lhs"], "8*x1^4");
    assert_eq!(v["rhs"], "8*x1^4");
    assert_eq!(v["equal"], true);
}

#[test]
fn compatible_golden_pair_is_incompatible() {
    let (v, code) = json(&["compatible", "--pencils", "x1^2,x1*x2;x1*x3,x1*x4"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(v["classification"], "incompatible");
    assert_eq!(v["witness"], serde_json::json!([0, 1]));
    assert_eq!(v["pairs"][0]["bracket_vanishes"], false);
}

#[test]
fn phi_repeated_quadric() {
    let (v, code) = json(&["phi", "x1^2", "x1^2", "x1*x3", "x1*x4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["quartic"], "0");
}

#[test]
fn bracket_chart_output() {
    let (v, code) = json(&["bracket", "x1*x3", "x1*x4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["chart"], 1);
    assert_eq!(
        v["affine"],
        serde_json::json!([
            {"indices": [2, 3], "coeff": "2*y3"},
            {"indices": [2, 4], "coeff": "2*y4"}
        ])
    );
    let (_, code) = json(&["bracket", "x1*x3", "x1*x4", "--chart", "5"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn exit_codes() {
    let two = format!("{SUM},{DIAG};x1*x2,x3*x4");
    let one = format!("{SUM},{DIAG}");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["schouten", "x1^2", "x1*x2", "x1*x3", "x1*x4"], EXIT_OK),
        (vec!["jacobi", SUM, DIAG], EXIT_OK),
        (
            vec![
                "classify",
                "--pencils",
                "x1^2+x2^2,x2^2+x3^2;x1^2-x3^2,x1^2+2*x2^2+3*x3^2",
            ],
            EXIT_OK,
        ),
        (
            vec!["classify", "--pencils", "x1^2,x1*x2;x1*x3,x1*x4"],
            EXIT_FAIL,
        ),
        (vec!["classify", "--pencils", "x1^2,x1*x2"], EXIT_INPUT),
        (vec!["polar", SUM, DIAG, "--point", "1,1,1,1"], EXIT_OK),
        (
            vec!["polar", SUM, DIAG, "--point", "1,0,0,0"],
            EXIT_PRECONDITION,
        ),
        (vec!["polar", SUM, DIAG, "--point", "0,0,0,0"], EXIT_INPUT),
        (vec!["quartic-surface", "--pencils", &two], EXIT_OK),
        (vec!["quartic-surface", "--pencils", &one], EXIT_INPUT),
        (vec!["vanish", SUM, DIAG], EXIT_OK),
        (
            vec!["linearize", "x1^2-x2^2", "x3^2-x4^2", "--point", "1,1,1,1"],
            EXIT_OK,
        ),
        (
            vec!["linearize", SUM, DIAG, "--point", "1,1,1,1"],
            EXIT_PRECONDITION,
        ),
        (vec!["discriminant", "x1^2", "x1*x2"], EXIT_OK),
        (
            vec!["harmonic", SUM, DIAG, "--point", "0.3,-1.1,0.7,0.45"],
            EXIT_OK,
        ),
        (
            vec!["harmonic", "x1^2-x2^2", "x3^2-x4^2", "--point", "1,1,1,1"],
            EXIT_PRECONDITION,
        ),
        (vec!["harmonic", SUM, DIAG, "--point", "1,2,3"], EXIT_INPUT),
        (vec!["selftest", "--trials", "1", "--seed", "1"], EXIT_OK),
        (vec!["selftest", "--trials", "0"], EXIT_INPUT),
        (vec!["phi", "x1^2", "x1", "x1*x3", "x1*x4"], EXIT_INPUT),
        (vec!["jacobi", "x1^2", "2*x1^2"], EXIT_OK),
        (vec!["nonsense"], EXIT_INPUT),
    ];
    for (args, expected) in cases {
        let r = fo(&args);
        assert_eq!(r.exit_code, expected, "{args:?}: {}{}", r.stdout, r.stderr);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let r = fo(&["phi", "x1^2", "x1*x2", "x1*x3", "x1*x5"]);
    assert_eq!(r.exit_code, EXIT_INPUT);
    assert!(
        r.stderr.contains("argument Q4") && r.stderr.contains("position"),
        "{}",
        r.stderr
    );
    let (v, code) = json(&["phi", "x1^2", "x1*x2", "x1**x3", "x1*x4"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(v["error"]["kind"], "input");
    assert!(v["error"]["message"].as_str().unwrap().contains("position"));
}

#[test]
fn negative_leading_coefficients_are_not_flags() {
    let r = fo(&["phi", "-x1^2", "x1*x2", "x1*x3", "x1*x4"]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.stderr);
    assert_eq!(r.stdout.trim(), "phi: -2*x1^4");
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(fo(&["--help"]).exit_code, EXIT_OK);
    assert!(fo(&["--version"]).stdout.contains("fo"));
}

#[test]
fn selftest_is_deterministic() {
    let a = fo(&[
        "--format", "json", "selftest", "--trials", "2", "--seed", "42",
    ]);
    let b = fo(&[
        "--format", "json", "selftest", "--trials", "2", "--seed", "42",
    ]);
    assert_eq!(a, b);
    assert_eq!(a.exit_code, EXIT_OK);
}

#[test]
fn printed_polynomials_round_trip_through_the_cli() {
    let mut rng = SplitMix64::new(3);
    for _ in 0..20 {
        let p = random_poly(&mut rng, 4, 3, 5);
        let q = fo_poisson::MultiPoly::parse(&p.to_string(), 4).unwrap();
        assert_eq!(p, q);
    }
    let (v, _) = json(&["discriminant", SUM, DIAG]);
    assert_eq!(v["discriminant"], "l^4+10*l^3*m+35*l^2*m^2+50*l*m^3+24*m^4");
    let (v, _) = json(&["verify-d", "x1^2-1/2*x2*x3", "x3^2", "x1*x4", "x2^2+x4^2"]);
    let lhs = v["lhs"].as_str().unwrap();
    assert_eq!(
        fo_poisson::MultiPoly::parse(lhs, 4).unwrap().to_string(),
        lhs
    );
    assert_eq!(v["equal"], true);
}

#[test]
fn binary_exit_code_matches_library() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_fo"))
        .args(["compatible", "--pencils", "x1^2,x1*x2;x1*x3,x1*x4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_FAIL));
    assert!(String::from_utf8_lossy(&out.stdout).contains("incompatible"));
}
