use proptest::prelude::*;

use super::catalog::{chart, hamiltonian, system};
use super::*;
use crate::symfield::{expr, v, RatFunc};

#[test]
fn first_order_form_goes_to_the_coupled_system() {
    let pushed = pushforward(&system("eq1").unwrap(), &chart("eq2").unwrap()).unwrap();
    assert!(pushed.same_system(&system("eq3").unwrap()));
}

#[test]
fn first_holomorphy_chart_gives_the_companion_system() {
    let m = chart("holo_A").unwrap();
    let pushed = pushforward(&system("eq3").unwrap(), &m).unwrap();
    let renamed = pushed.rename(&[
        (v("x1"), v("q1")),
        (v("y1"), v("p1")),
        (v("z1"), v("q2")),
        (v("w1"), v("p2")),
    ]);
    assert!(renamed.same_system(&system("eq10").unwrap()));
}

#[test]
fn identity_pushforward_is_trivial() {
    let f = system("eq3").unwrap();
    let id = BirationalMap::identity(f.vars());
    assert!(pushforward(&f, &id).unwrap().same_system(&f));
}

#[test]
fn triangular_inverses() {
    let r1 = chart("holo_A").unwrap();
    let want = [("q1", "1/x1"), ("p1", "(-y1*x1 - 1/2 + a2)*x1"), ("q2", "z1"), ("p2", "w1")];
    for (src, img) in want {
        assert_eq!(r1.inverse_of(v(src)).unwrap(), &expr(img), "{src}");
    }
    let step1 = BirationalMap::from_exprs(
        "blowup",
        &["x", "y", "z", "w"],
        &[("x1", "1/x"), ("y1", "y/x^2"), ("z1", "z/x^3"), ("w1", "w/x^4")],
    );
    let inv = invert_triangular(&step1).unwrap();
    assert_eq!(inv.inverse_of(v("w")).unwrap(), &expr("w1/x1^4"));
    let id = invert_triangular(&BirationalMap::identity(&[v("x"), v("y")])).unwrap();
    assert_eq!(id.inverse_of(v("y")).unwrap(), &expr("y"));
}

#[test]
fn non_triangular_map_is_reported() {
    let m = BirationalMap::from_exprs("swap_sum", &["x", "y"], &[("x1", "x + y"), ("y1", "x*y")]);
    assert!(matches!(invert_triangular(&m), Err(DynError::NonTriangular { .. })));
}

#[test]
fn pushforward_and_back_is_the_identity() {
    let f = system("eq3").unwrap();
    let m = chart("holo_B").unwrap();
    let there = pushforward(&f, &m).unwrap();
    let back = pushforward(&there, &inverse_of(&m)).unwrap();
    assert!(back.same_system(&f));
}

#[test]
fn direct_sum_of_the_pieces() {
    let k = hamiltonian_field(&hamiltonian("K").unwrap()).unwrap();
    let hi = hamiltonian_field(&hamiltonian("H_I").unwrap()).unwrap();
    let sum = k.direct_sum(&hi).unwrap();
    let decoupled = HamiltonianSpec::new(
        &hamiltonian("H").unwrap().h - &expr("p1*p2"),
        &[("q1", "p1"), ("q2", "p2")],
        &["a2"],
    );
    assert!(sum.same_system(&hamiltonian_field(&decoupled).unwrap()));
    // K is its own first integral.
    assert!(k.total_derivative(&hamiltonian("K").unwrap().h).is_zero());
}

#[test]
fn hamiltonian_derivative_is_half_p2() {
    let f = system("eq3").unwrap();
    assert_eq!(f.total_derivative(&hamiltonian("H").unwrap().h), expr("p2/2"));
    assert_eq!(f.total_derivative(&expr("p2")), expr("q2"));
}

fn inverse_of(m: &BirationalMap) -> BirationalMap {
    let rows: Vec<(String, String)> = m
        .src_vars
        .iter()
        .map(|&s| (s.to_string(), crate::symfield::render(m.inverse_of(s).unwrap())))
        .collect();
    let dst: Vec<String> = m.dst_vars.iter().map(|d| d.to_string()).collect();
    let dst: Vec<&str> = dst.iter().map(String::as_str).collect();
    let rows: Vec<(&str, &str)> = rows.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    invert_triangular(&BirationalMap::from_exprs("inverse", &dst, &rows)).unwrap()
}

fn small_poly() -> impl Strategy<Value = RatFunc> {
    let atoms = ["q1", "p1", "q2", "p2", "t", "1", "2", "-3"];
    proptest::collection::vec((0..atoms.len(), 0..atoms.len(), -3i64..4), 1..4).prop_map(move |terms| {
        let text: Vec<String> =
            terms.iter().map(|&(a, b, c)| format!("({c})*{}*{}", atoms[a], atoms[b])).collect();
        expr(&text.join(" + "))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn total_derivative_is_a_derivation(f in small_poly(), g in small_poly()) {
        let field = system("eq3").unwrap();
        let lhs = field.total_derivative(&(&f * &g));
        let rhs = &(&f * &field.total_derivative(&g)) + &(&g * &field.total_derivative(&f));
        prop_assert_eq!(lhs, rhs);
    }
}
