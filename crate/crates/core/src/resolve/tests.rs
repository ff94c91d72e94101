use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::symfield::rat;

fn exprs(list: &[&str]) -> Vec<RatFunc> {
    list.iter().map(|e| expr(e)).collect()
}

fn origin(n: usize) -> Vec<&'static str> {
    vec!["0"; n]
}

#[test]
fn accessible_points_of_the_first_charts() {
    let pii = chart_field("pii_s4", "Step 1").unwrap();
    assert!(verify_accessible(&pii, &SingularLocus::point(&["x1", "y1"], &["0", "1"])).unwrap());
    assert!(!verify_accessible(&pii, &SingularLocus::point(&["x1", "y1"], &["1", "1"])).unwrap());
    let five = chart_field("p2h2_s5", "Step 1").unwrap();
    let c = ["x1", "y1", "z1", "w1"];
    assert!(verify_accessible(&five, &SingularLocus::point(&c, &["0", "-1", "2", "-6"])).unwrap());
    assert!(!verify_accessible(&five, &SingularLocus::point(&c, &["0", "-1", "2", "6"])).unwrap());
    let wrong = SingularLocus::point(&["x2", "y2"], &["0", "0"]);
    assert!(matches!(verify_accessible(&pii, &wrong), Err(ResolveError::Shape { .. })));
}

#[test]
fn indices_at_the_recentred_points() {
    let pii = chart_field("pii_s4", "Step 2").unwrap();
    let idx = local_index(&pii, &SingularLocus::point(&["x2", "y2"], &origin(2))).unwrap();
    assert_eq!(idx.eigenvalues, exprs(&["-1", "-4"]));
    assert_eq!(idx.continued_ratio(), exprs(&["4"]));
    assert!(idx.integral && idx.same_sign());

    let five = chart_field("p2h2_s5_alt2", "Step 2").unwrap();
    let idx = local_index(&five, &SingularLocus::point(&["x2", "y2", "z2", "w2"], &origin(4))).unwrap();
    assert_eq!(idx.eigenvalues, exprs(&["-1/2", "3/2", "-3", "-4"]));
    assert_eq!(idx.continued_ratio(), exprs(&["-3", "6", "8"]));
    assert_eq!(idx.ratios[0], RatFunc::one());
    assert!(idx.integral && !idx.same_sign());
}

#[test]
fn symbolic_index_specialises() {
    let f = chart_field("eq5_s9", "Step 2").unwrap();
    let locus = SingularLocus::new(&["x2", "y2", "z2", "w2", "q2"], &origin(5), "w2");
    let idx = local_index(&f, &locus).unwrap();
    assert_eq!(idx.eigenvalues, exprs(&["0", "0", "0", "a2/2 - 1/4", "a2/2 - 1/4"]));
    assert_eq!(idx.continued_ratio(), exprs(&["0", "0", "0", "1"]));
    let at3 = idx.specialize(&[(v("a2"), RatFunc::int(3))]).unwrap();
    assert_eq!(at3.eigenvalues, exprs(&["0", "0", "0", "5/4", "5/4"]));
    let at_half = idx.specialize(&[(v("a2"), RatFunc::rational(1, 2))]).unwrap();
    assert!(at_half.ratios.is_empty() && !at_half.integral);
}

#[test]
fn alpha_test_matrices() {
    let pii = chart_field("pii_s4", "Step 2").unwrap();
    let a = alpha_test(&pii, &SingularLocus::point(&["x2", "y2"], &origin(2)), &rat(0, 1)).unwrap();
    assert_eq!(a, vec![vec![rat(-1, 1), rat(0, 1)], vec![rat(0, 1), rat(-4, 1)]]);

    let five = chart_field("p2h2_s5", "Step 2").unwrap();
    let locus = SingularLocus::point(&["x2", "y2", "z2", "w2"], &origin(4));
    let a = alpha_test(&five, &locus, &rat(1, 1)).unwrap();
    let m: Matrix = a.iter().map(|r| r.iter().cloned().map(RatFunc::constant).collect()).collect();
    let mut spec: Vec<BigRational> = eigenvalues(&m).unwrap().iter().map(|e| e.as_constant().unwrap()).collect();
    spec.sort();
    assert_eq!(spec, vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(6, 1)]);

    let zero = VectorField::zero(vec![v("x1"), v("y1")]);
    let a = alpha_test(&zero, &SingularLocus::point(&["x1", "y1"], &origin(2)), &rat(5, 1)).unwrap();
    assert!(a.iter().flatten().all(|x| *x == rat(0, 1)));

    // The fifth-order chart keeps a2 in its linear part until it is fixed.
    let f = chart_field("eq5_s9", "Step 2").unwrap();
    let locus = SingularLocus::new(&["x2", "y2", "z2", "w2", "q2"], &origin(5), "w2");
    assert!(matches!(alpha_test(&f, &locus, &rat(1, 1)), Err(ResolveError::NonConstant(_))));
    let fixed = [(v("t"), RatFunc::int(1)), (v("a2"), RatFunc::int(3))];
    assert_eq!(alpha_test_at(&f, &locus, &fixed).unwrap()[3][3], rat(5, 4));
}

#[test]
fn non_normal_form_is_rejected() {
    let f = VectorField::from_exprs(&[("x1", "1/x1^2"), ("y1", "y1")], &[]);
    let r = verify_accessible(&f, &SingularLocus::point(&["x1", "y1"], &origin(2)));
    assert!(matches!(r, Err(ResolveError::NotNormalForm { .. })));
}

#[test]
fn irrational_spectrum_is_reported() {
    let a = matrix_from_exprs(&[&["0", "1"], &["2", "0"]]);
    match index_of_matrix(&a, 0) {
        Err(ResolveError::Irrational(p)) => assert_eq!(expr(&p), expr("lam^2 - 2")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn every_pipeline_matches_its_reference() {
    for id in PIPELINE_IDS {
        let r = run_pipeline(id).unwrap();
        assert!(r.holds, "{id}: {:?}", r.first_failure());
    }
    let r = run_pipeline("p2h2_s5").unwrap();
    assert_eq!(r.final_index().unwrap(), vec!["1", "0", "0", "2"]);
    assert!(matches!(run_pipeline("nope"), Err(ResolveError::UnknownPipeline(_))));
}

#[test]
fn index_is_invariant_under_the_linear_change() {
    let r = run_pipeline("p2h2_s5").unwrap();
    let step2: Vec<_> = r.steps.iter().filter(|s| s.step == "Step 2" && s.index.is_some()).collect();
    assert_eq!(step2.len(), 2);
    let mut a = step2[0].index.as_ref().unwrap()["eigenvalues"].as_array().unwrap().clone();
    let b = step2[1].index.as_ref().unwrap()["eigenvalues"].as_array().unwrap().clone();
    a.sort_by_key(|x| x.as_str().unwrap().to_string());
    let mut bs = b.clone();
    bs.sort_by_key(|x| x.as_str().unwrap().to_string());
    assert_eq!(a, bs);
}

#[test]
fn report_json_has_the_step_fields() {
    let j = run_pipeline("pii_s4").unwrap().to_json();
    let step = &j["steps"][4];
    for key in ["chart", "locus", "index", "ratios", "matches_paper"] {
        assert!(step.get(key).is_some(), "{key}");
    }
}

proptest! {
    #[test]
    fn conjugation_preserves_the_spectrum(
        d in proptest::collection::vec(-6i64..7, 3),
        low in proptest::collection::vec(-4i64..5, 3),
        e in -3i64..4,
    ) {
        // Lower-triangular T, conjugated by the unimodular P = I + e*E_{12}.
        let t = [[d[0], 0, 0], [low[0], d[1], 0], [low[1], low[2], d[2]]];
        let p = [[1, e, 0], [0, 1, 0], [0, 0, 1]];
        let pinv = [[1, -e, 0], [0, 1, 0], [0, 0, 1]];
        let mul = |a: [[i64; 3]; 3], b: [[i64; 3]; 3]| {
            let mut c = [[0i64; 3]; 3];
            for i in 0..3 { for j in 0..3 { for k in 0..3 { c[i][j] += a[i][k] * b[k][j]; } } }
            c
        };
        let m = mul(mul(p, t), pinv);
        let a: Matrix = m.iter().map(|r| r.iter().map(|&x| RatFunc::int(x)).collect()).collect();
        let mut got: Vec<BigRational> = eigenvalues(&a).unwrap().iter().map(|x| x.as_constant().unwrap()).collect();
        let mut want: Vec<BigRational> = d.iter().map(|&x| rat(x, 1)).collect();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }
}
