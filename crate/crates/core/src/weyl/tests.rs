use super::*;
use crate::dynsys::catalog::system;
use crate::symfield::expr;

fn g(name: &str, sys: &str) -> Generator {
    generator(name, sys).unwrap()
}

#[test]
fn bracket_normalisation() {
    assert_eq!(poisson_bracket(&expr("p1"), &expr("q1")), RatFunc::one());
    assert_eq!(poisson_bracket(&expr("p2"), &expr("q2")), RatFunc::one());
    assert!(poisson_bracket(&expr("p1"), &expr("p2")).is_zero());
    let f1 = expr("p1 + t - 2*p2^2 + 4*q1*(q2 + q1*p2)");
    assert_eq!(poisson_bracket(&f1, &expr("q1")), RatFunc::one());
}

#[test]
fn series_reproduces_s0() {
    let roots = RootVars::default();
    let s0 = g("s0", "eq3");
    for name in ["q1", "p1", "q2", "p2"] {
        let got = backlund_series(&expr("p1"), &roots.alpha0, &expr(name), 10).unwrap();
        assert_eq!(&got, &s0.forward_of(v(name)).unwrap(), "{name}");
    }
}

#[test]
fn series_along_f1_gives_canonical_s1() {
    let roots = RootVars::default();
    let f1 = expr("p1 + t - 2*p2^2 + 4*q1*(q2 + q1*p2)");
    let s1 = g("s1", "eq3");
    for name in ["q1", "p1", "q2", "p2"] {
        let got = backlund_series(&f1, &roots.alpha1, &expr(name), 10).unwrap();
        assert_eq!(&got, &s1.forward_of(v(name)).unwrap(), "{name}");
    }
}

#[test]
fn catalogue_entries_match_printed_lines() {
    let pi = g("pi", "eq3");
    assert_eq!(pi.forward_of(v("q1")).unwrap(), expr("-q1"));
    assert_eq!(pi.forward_of(v("p2")).unwrap(), expr("-(p2 + 2*q1^2)"));
    assert_eq!(pi.param_action(), &expr("-a2"));
    let s0 = g("s0", "eq3");
    assert_eq!(s0.forward_of(v("q1")).unwrap(), expr("q1 + (1/2 - a2)/p1"));
    assert_eq!(s0.param_action(), &expr("1 - a2"));
    assert!(matches!(generator("s7", "eq3"), Err(WeylError::UnknownGenerator(..))));
    assert!(matches!(generator("s0", "eq99"), Err(WeylError::UnknownSystem(_))));
}

#[test]
fn translation_shifts() {
    let (s0, pi) = (g("s0", "eq3"), g("pi", "eq3"));
    let t1 = compose(&[pi.clone(), s0.clone()]).unwrap();
    let t2 = compose(&[s0.clone(), pi.clone()]).unwrap();
    assert_eq!(t1.param_action(), &expr("a2 + 1"));
    assert_eq!(t2.param_action(), &expr("a2 - 1"));
    assert!(compose(&[t1.clone(), t2]).unwrap().is_identity().unwrap());
    for n in 1..=5 {
        assert_eq!(t1.power(n).unwrap().param_action(), &expr(&format!("a2 + {n}")));
    }
    let mixed = compose(&[s0, g("s0", "eq6")]);
    assert!(matches!(mixed, Err(WeylError::MixedSystems(..))));
}

#[test]
fn involutions() {
    for sys in SYSTEMS {
        for name in canonical_names(sys).unwrap() {
            let sq = g(name, sys).power(2).unwrap();
            assert!(sq.is_identity().unwrap(), "{sys}:{name}");
        }
    }
}

#[test]
fn canonical_generators_are_symmetries() {
    for sys in SYSTEMS {
        for r in verify_system(sys).unwrap() {
            assert!(r.holds, "{r:?}");
        }
    }
}

#[test]
fn printed_s1_fails_on_coupled_system() {
    let r = verify_generator(&g("s1_printed", "eq3"), &system("eq3").unwrap()).unwrap();
    assert!(!r.holds);
    let r6 = verify_generator(&g("s1_printed", "eq6"), &system("eq6").unwrap()).unwrap();
    assert!(r6.holds);
}

#[test]
fn root_actions() {
    let s0 = root_action(&g("s0", "eq3")).unwrap();
    let s1 = root_action(&g("s1", "eq3")).unwrap();
    let pi = root_action(&g("pi", "eq3")).unwrap();
    let r = |n: i64| BigRational::from_integer(n.into());
    assert_eq!(s0.matrix, [[r(-1), r(0)], [r(2), r(1)]]);
    assert_eq!(s1.matrix, [[r(1), r(2)], [r(0), r(-1)]]);
    assert_eq!(pi.matrix, [[r(0), r(1)], [r(1), r(0)]]);
    assert!(pi.then(&pi).is_identity());
    let t1 = pi.then(&s0);
    assert_eq!(t1.apply(&[r(1), r(0)]), [r(0), r(1)]);
    let t1g = root_action(&g("T1", "eq3")).unwrap();
    assert_eq!(t1g, t1);
    for a in [s0, s1, pi, t1] {
        assert!(a.preserves_sum());
    }
    let roots = RootVars::default();
    assert_eq!(roots.sum(), RatFunc::one());
    assert_eq!(roots.transformed(&g("pi", "eq3")).unwrap().alpha0, roots.alpha1);
}

#[test]
fn errata_are_itemised() {
    let items = errata("eq3").unwrap();
    assert!(items.iter().any(|e| e.generator == "eq3:s1_printed" && e.component == "p2"));
    assert!(items.iter().any(|e| e.generator == "eq3:T1_printed" && e.component == "q1"));
    assert!(items.iter().all(|e| e.canonical_verified && e.residual != "0"));
    assert!(errata("eq6").unwrap().is_empty());
    let ten = errata("eq10").unwrap();
    assert!(ten.iter().any(|e| e.generator == "eq10:s0_printed"));
    assert!(ten.iter().any(|e| e.generator == "eq10:s1_printed" && e.component == "p1"));
}

#[test]
fn relations_hold_on_every_system() {
    for sys in SYSTEMS {
        let rels = group_relations(sys, 5).unwrap();
        assert_eq!(rels.len(), 3 + 1 + 5 + 5);
        assert!(rels.iter().all(|r| r.holds), "{sys}: {rels:?}");
    }
}
