//! The command-line front end, driven in-process.

mod common;

use std::io::Write;

use invfield::cli::report::{AnalysisReport, Command};
use invfield::cli::{outcome, run_cli, EXIT_ERROR, EXIT_OK, EXIT_VIOLATED};

fn invoke(args: &[&str]) -> invfield::cli::Outcome {
    let mut v = vec!["invfield"];
    v.extend_from_slice(args);
    run_cli(v)
}

fn json_report(args: &[&str]) -> (AnalysisReport, String, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = invoke(&a);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (AnalysisReport::from_json(&out.stdout).unwrap(), out.stdout, out.code)
}

#[test]
fn verify_quaternion() {
    let (r, _, code) = json_report(&["verify", "q8.json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.command, Command::Verify);
    assert_eq!(r.group_order, 8);
    let b = r.bounds.as_ref().unwrap();
    assert_eq!((b.d_span, b.d_i, b.beta_field_upper, b.main_bound), (3, Some(4), Some(6), 7));
    assert!(r.checks.iter().all(|c| c.holds));
    assert_eq!(r.orbit_ideal.as_ref().unwrap().standard_monomial_count, 8);
    let rows: Vec<(u32, usize)> = r.decomposition.iter().map(|d| (d.degree, d.dimension)).collect();
    assert_eq!(rows, [(0, 1), (1, 2), (2, 3), (3, 4)]);
}

#[test]
fn verify_trivial_is_degenerate() {
    let (r, _, code) = json_report(&["verify", "trivial"]);
    assert_eq!(code, EXIT_OK);
    let b = r.bounds.unwrap();
    assert_eq!((b.group_order, b.d_span, b.d_reg, b.d_i, b.beta_field_upper), (1, 0, 0, Some(1), Some(1)));
}

#[test]
fn dreg_of_the_alternating_group() {
    let (r, _, code) = json_report(&["dreg", "a4perm"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.d_reg, Some(2));
    assert!(r.span.is_none());
}

#[test]
fn dspan_and_decompose() {
    let (r, _, code) = json_report(&["dspan", "c7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.span.unwrap().d_span, 3);

    let (r, _, code) = json_report(&["decompose", "q8", "--max-degree", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.decomposition.len(), 5);
    let d4 = &r.decomposition[4];
    let mult: Vec<usize> = d4.components.iter().map(|c| c.multiplicity).collect();
    // 2 V_1 + V_i + V_j + V_k
    assert_eq!(mult, [2, 1, 1, 1, 0]);
}

#[test]
fn orbit_ideal_and_generators() {
    let (r, _, code) = json_report(&["orbit-ideal", "c3_1d"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.orbit_ideal.unwrap().groebner_basis, ["X^3 - x^3"]);
    assert!(r.generators.is_none());

    let (r, _, code) = json_report(&["generators", "q8"]);
    assert_eq!(code, EXIT_OK);
    let g = r.generators.unwrap();
    assert!(g.verdict.generates);
    assert_eq!(g.max_degree, 6);
}

#[test]
fn term_order_override() {
    let (r, _, _) = json_report(&["orbit-ideal", "q8", "--term-order", "grevlex"]);
    assert_eq!(r.term_order.to_string(), "grevlex");
    let oi = r.orbit_ideal.unwrap();
    assert_eq!(oi.standard_monomial_count, 8);
    assert_eq!(oi.d_i, 4);
}

#[test]
fn json_round_trip_and_determinism() {
    for name in ["trivial", "c2", "c3", "q8", "s3std"] {
        let (a, text, _) = json_report(&["verify", name]);
        let again = serde_json::to_string_pretty(&a).unwrap() + "\n";
        assert_eq!(again, text, "{name}");
        let (b, _, _) = json_report(&["verify", name]);
        assert_eq!(a.without_timings(), b.without_timings(), "{name}");
        assert_eq!(a.without_timings().to_json(), b.without_timings().to_json(), "{name}");

        let h1 = invoke(&["verify", name]).stdout;
        let h2 = invoke(&["verify", name]).stdout;
        assert_eq!(h1, h2, "{name}");
    }
}

#[test]
fn in_memory_report_matches_serialized() {
    let spec = invfield::cli::load_spec("c5").unwrap();
    let r = invfield::cli::run(Command::Verify, &spec, &Default::default()).unwrap();
    let back = AnalysisReport::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn human_tables() {
    let out = invoke(&["verify", "q8"]);
    assert_eq!(out.code, EXIT_OK);
    for needle in ["D_span = 3", "D_I = 4", "beta_field = 6", "<y^3, -x^3>", "all checks passed"] {
        assert!(out.stdout.contains(needle), "missing {needle}:\n{}", out.stdout);
    }
}

#[test]
fn groebner_utility() {
    let out = invoke(&["gb", "--vars", "x,y", "--term-order", "lex", "--json", "x^2 - y", "x*y - 1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!(["x - y^2", "y^3 - 1"]));
    assert_eq!(v["standard_monomial_count"], 3);

    let out = invoke(&["gb", "--vars", "x", "--cyclotomic-order", "4", "x^2 + 1", "x - z"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("x - z"), "{}", out.stdout);
}

#[test]
fn errors_exit_with_two() {
    let out = invoke(&["verify", "/nonexistent/group.json"]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("cannot read"));

    let out = invoke(&["verify", "q8", "--element-cap", "4"]);
    assert_eq!(out.code, EXIT_ERROR);

    let out = invoke(&["frobnicate"]);
    assert_eq!(out.code, EXIT_ERROR);

    let out = invoke(&["gb", "--vars", "x", "x +* 1"]);
    assert_eq!(out.code, EXIT_ERROR);

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{\"name\": \"broken\",\n \"cyclotomic_order\": }}").unwrap();
    let out = invoke(&["dspan", f.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
}

#[test]
fn violated_check_exits_with_one() {
    // Every fixture satisfies the bounds, so break one check by hand.
    let (mut r, _, code) = json_report(&["verify", "c5"]);
    assert_eq!(code, EXIT_OK);
    let i = r.checks.iter().position(|c| c.name.starts_with("beta_field")).unwrap();
    r.checks[i].lhs = 99;
    r.checks[i].holds = false;
    let out = outcome(&r, false);
    assert_eq!(out.code, EXIT_VIOLATED);
    assert!(out.stdout.contains("VIOLATED"));
    assert_eq!(outcome(&r, true).code, EXIT_VIOLATED);
}

#[test]
fn file_paths_are_accepted() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/c2.json");
    let (r, _, code) = json_report(&["dspan", path]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.name, "c2");
}

#[test]
fn orbit_budget_flags_a_skip() {
    let (r, _, code) = json_report(&["orbit-ideal", "a4perm", "--orbit-budget", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(r.orbit_ideal.is_none());
    assert!(r.orbit_ideal_skipped.unwrap().contains("budget"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_invfield");
    let ok = std::process::Command::new(bin).args(["verify", "c3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("all checks passed"));
    let bad = std::process::Command::new(bin).args(["dspan", "no-such-group"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_ERROR));
}
