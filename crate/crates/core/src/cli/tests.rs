use clap::Parser;

use super::*;

fn code(args: &[&str]) -> u8 {
    let mut all = vec!["p2h2"];
    all.extend_from_slice(args);
    match Cli::try_parse_from(all) {
        Ok(c) => run(c),
        Err(_) => 2,
    }
}

#[test]
fn unknown_target_is_a_usage_error() {
    assert_eq!(code(&["verify", "--target", "nonsense"]), 2);
    assert_eq!(code(&["verify", "--target", "symmetry", "--system", "eq1"]), 2);
    assert_eq!(code(&["ladder", "--from", "1", "--to", "3"]), 2);
}

#[test]
fn verdict_targets_pass() {
    for t in [Target::Symmetry, Target::Holomorphy, Target::FifthOrder, Target::Riccati, Target::Loci] {
        let r = verify_report(t, None, false).unwrap();
        assert!(r.pass, "{}", r.render(Format::Pretty));
    }
    let r = verify_report(Target::Pipeline, Some("p2h2_s5"), false).unwrap();
    assert!(r.pass && r.verdicts.iter().any(|v| v.payload["index"].is_object()));
}

#[test]
fn symmetry_report_carries_errata() {
    let r = verify_report(Target::Symmetry, Some("eq3"), false).unwrap();
    assert!(r.pass);
    assert!(r.errata.iter().any(|e| e["generator"] == "eq3:s1_printed"));
    let json = r.render(Format::Json);
    assert!(json.contains("\"errata\""));
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| verify_report(Target::Riccati, None, false).unwrap().render(Format::Json));
    let b = many.install(|| verify_report(Target::Riccati, None, false).unwrap().render(Format::Json));
    assert_eq!(a, b);
}

#[test]
fn failing_verdicts_carry_a_payload() {
    let v = Verdict::new("x", false, Value::Null);
    assert!(!v.payload.is_null());
}

#[test]
fn local_index_at_a_user_point() {
    let args = LocalIndexArgs {
        pipeline: None,
        step: None,
        system: Some("pii_raw".into()),
        chart: Some("x1=1/x, y1=y/x^2".into()),
        point: Some("x1=0, y1=1".into()),
        dist: None,
    };
    let r = cmd_local_index(&args).unwrap();
    assert_eq!(r.verdicts[0].payload["eigenvalues"], json!(["-1", "-4"]));
}

#[test]
fn catalogued_half_integer_point_needs_a_blow_down() {
    let args = LocalIndexArgs {
        pipeline: Some("p2h2_s5_alt2".into()),
        step: None,
        system: None,
        chart: None,
        point: None,
        dist: None,
    };
    let r = cmd_local_index(&args).unwrap();
    assert!(r.verdicts.iter().any(|v| v.payload["status"] == "blow-down required, out of scope"));
}

#[test]
fn crosscheck_needs_the_quartic() {
    assert_eq!(code(&["integrate", "--system", "eq3", "--y0", "0,0,0,0", "--crosscheck"]), 2);
}
