use num_rational::BigRational;

use super::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn seed_row_is_tracked() {
    let cfg = IntegratorConfig::default();
    let tr = integrate("eq3", &q(0, 1), &[0.0, -0.5, 0.0, 0.0], 1.0, 2.0, &cfg).unwrap();
    let worst = tr
        .samples
        .iter()
        .map(|(t, y)| sup_distance(y, &[0.0, -t / 2.0, 0.0, 0.0]))
        .fold(0.0, f64::max);
    assert!(worst <= 1e-9, "{worst}");
    assert_eq!(tr.samples.first().unwrap().0, 1.0);
    assert!((tr.last().0 - 2.0).abs() < 1e-12);
    assert!(tr.samples.windows(2).all(|w| w[1].0 > w[0].0));
}

#[test]
fn first_ladder_row_is_tracked() {
    let cfg = IntegratorConfig::default();
    let start = ladder_state(1, 1.0).unwrap();
    assert_eq!(start, vec![-1.0, -0.5, 0.0, 0.0]);
    let tr = integrate("eq3", &q(1, 1), &start, 1.0, 2.0, &cfg).unwrap();
    let worst = tr
        .samples
        .iter()
        .map(|(t, y)| sup_distance(y, &[-1.0 / t, -t / 2.0, 0.0, 0.0]))
        .fold(0.0, f64::max);
    assert!(worst <= 1e-9, "{worst}");
}

#[test]
fn zero_length_interval_returns_the_initial_point() {
    let y0 = [0.3, 0.1, -0.2, 0.4];
    let tr = integrate("eq3", &q(1, 3), &y0, 0.5, 0.5, &IntegratorConfig::default()).unwrap();
    assert_eq!(tr.samples, vec![(0.5, y0.to_vec())]);
}

#[test]
fn pole_guard_stops_at_the_movable_pole() {
    let start = ladder_state(1, 1.0).unwrap();
    let cfg = IntegratorConfig { pole_guard: 1e4, ..IntegratorConfig::default() };
    let tr = integrate("eq3", &q(1, 1), &start, 1.0, -0.5, &cfg).unwrap();
    let t = tr.pole.expect("guard trips near t = 0");
    assert!(t > 0.0 && t < 1e-3, "{t}");
    assert!(tr.samples.iter().all(|(_, y)| y.iter().all(|c| c.abs() <= 1e4)));
}

#[test]
fn bad_inputs_are_rejected() {
    let cfg = IntegratorConfig::default();
    assert!(matches!(integrate("eq3", &q(0, 1), &[0.0; 3], 0.0, 1.0, &cfg), Err(NumError::Dimension { .. })));
    let neg = IntegratorConfig { rtol: -1.0, ..cfg.clone() };
    assert!(matches!(integrate("eq3", &q(0, 1), &[0.0; 4], 0.0, 1.0, &neg), Err(NumError::Config(_))));
    // The fifth-order system is singular where its denominator vanishes.
    let bad = integrate("eq5raw", &q(0, 1), &[0.0; 5], 0.0, 1.0, &cfg);
    assert!(matches!(bad, Err(NumError::NonFinite)));
}

#[test]
fn fourth_order_equation_and_coupled_system_agree() {
    let cfg = IntegratorConfig::default();
    let r = crosscheck_eq1_eq3(&[0.1, 0.2, 0.3, 0.4], &q(0, 1), 0.0, 1.0, &cfg).unwrap();
    assert!(r.sup_error <= 1e-7, "{r:?}");
    assert!(r.round_trip <= 1e-10, "{r:?}");
    let r = crosscheck_eq1_eq3(&[-0.2, 0.1, 0.0, 0.3], &q(1, 3), 0.0, 1.0, &cfg).unwrap();
    assert!(r.sup_error <= 1e-7, "{r:?}");
}

#[test]
fn fifth_order_equation_holds_along_runs() {
    let cfg = IntegratorConfig::default();
    let seed = integrate("eq3", &q(0, 1), &[0.0, -0.5, 0.0, 0.0], 1.0, 2.0, &cfg).unwrap();
    let r = numeric_fifth_order(&seed).unwrap();
    assert!(r.max_residual <= 1e-8, "{r:?}");
    let generic = integrate("eq3", &q(1, 3), &[0.2, -0.1, 0.3, 0.1], 0.0, 1.0, &cfg).unwrap();
    let r = numeric_fifth_order(&generic).unwrap();
    assert!(r.checked > 0 && r.max_residual <= 1e-6, "{r:?}");
}

#[test]
fn energy_and_backlund_shadows() {
    let cfg = IntegratorConfig { samples: 1000, ..IntegratorConfig::default() };
    let tr = integrate("eq3", &q(1, 3), &[0.2, -0.1, 0.3, 0.1], 0.0, 1.0, &cfg).unwrap();
    let e = energy_balance(&tr).unwrap();
    assert!(e <= 1e-8, "{e}");
    let b = backlund_residual(&tr, "s0").unwrap();
    assert!(b <= 1e-5, "{b}");
}

#[test]
fn fixed_step_order_is_at_least_four() {
    let c = convergence_order(&[0.2, 0.1, 0.05]).unwrap();
    assert!(c.order >= 4.0, "{c:?}");
    assert!(c.runs.windows(2).all(|w| w[1].1 < w[0].1));
}

#[test]
fn parameters_parse_exactly() {
    assert_eq!(parse_rational("1/3"), Some(q(1, 3)));
    assert_eq!(parse_rational("-2"), Some(q(-2, 1)));
    assert_eq!(parse_rational("0.1"), Some(q(1, 10)));
    assert_eq!(parse_rational("-.25"), Some(q(-1, 4)));
    assert_eq!(parse_rational("x"), None);
}
