use super::*;

fn row(rows: &[RationalSolution], a2: i64) -> &RationalSolution {
    rows.iter().find(|r| r.param == BigRational::from_integer(a2.into())).unwrap()
}

#[test]
fn seeds() {
    let s = seed("eq3").unwrap();
    assert_eq!(s.components, vec![RatFunc::zero(), expr("-t/2"), RatFunc::zero(), RatFunc::zero()]);
    assert!(verify_solution(&s).unwrap().holds);
    let fixed = apply_generator(&s, &generator("pi", "eq3").unwrap()).unwrap();
    assert_eq!(fixed, s);
    let s6 = seed_with("eq6", &BigRational::new(7.into(), 3.into())).unwrap();
    assert!(verify_solution(&s6).unwrap().holds);
    assert!(matches!(seed("eq10"), Err(LadderError::NoSeed(_))));
}

#[test]
fn first_translations() {
    let s = seed("eq3").unwrap();
    let t1 = generator("T1", "eq3").unwrap();
    let t2 = generator("T2", "eq3").unwrap();
    let up = apply_generator(&s, &t1).unwrap();
    assert_eq!(up, published_row(1).unwrap());
    let up2 = apply_generator(&up, &t1).unwrap();
    assert_eq!(up2, published_row(2).unwrap());
    let down = apply_generator(&s, &t2).unwrap();
    assert_eq!(down, published_row(-1).unwrap());
}

#[test]
fn table_reproduced() {
    let rows = ladder("eq3", -3, 3).unwrap();
    assert_eq!(rows.len(), 7);
    for (a, hit) in compare_with_table(&rows) {
        assert_eq!(hit, Some(true), "row {a}");
    }
    assert_eq!(row(&rows, 0), &seed("eq3").unwrap());
    assert!(matches!(ladder("eq3", 1, 3), Err(LadderError::Range)));
}

#[test]
fn rows_mirror_under_pi() {
    let rows = ladder("eq3", -3, 3).unwrap();
    let pi = generator("pi", "eq3").unwrap();
    for n in 1..=3 {
        let image = apply_generator(row(&rows, n), &pi).unwrap();
        assert_eq!(&image, row(&rows, -n));
    }
}

#[test]
fn involution_returns_solution() {
    let r = published_row(2).unwrap();
    let s0 = generator("s0", "eq3").unwrap();
    let once = apply_generator(&r, &s0).unwrap();
    assert_eq!(apply_generator(&once, &s0).unwrap(), r);
}

#[test]
fn perturbed_row_is_rejected() {
    let mut r = published_row(1).unwrap();
    r.components[0] = &r.components[0] + &RatFunc::one();
    let rep = verify_solution(&r).unwrap();
    assert!(!rep.holds);
}

#[test]
fn pole_divisor_is_reported() {
    // s0 divides by p1; a solution with p1 = 0 sits on its pole divisor.
    let sol = RationalSolution {
        system_id: "eq3".into(),
        vars: ["q1", "p1", "q2", "p2"].iter().map(|n| v(n)).collect(),
        components: vec![RatFunc::zero(); 4],
        param: BigRational::zero(),
    };
    let err = apply_generator(&sol, &generator("s0", "eq3").unwrap()).unwrap_err();
    assert!(matches!(err, LadderError::PoleDivisor { .. }));
}

#[test]
fn five_dimensional_ladder_verifies() {
    let rows = ladder("eq6", -2, 2).unwrap();
    assert_eq!(rows.len(), 5);
}

#[test]
fn painleve_one_loci() {
    for sys in ["eq3", "eq6"] {
        let r = painleve_one_locus(sys).unwrap();
        assert!(r.invariant && r.matches_paper, "{r:?}");
    }
}

#[test]
fn tsv_layout() {
    let rows = ladder("eq3", 0, 1).unwrap();
    let tsv = to_tsv(&rows);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines[0], "a2\tq1\tp1\tq2\tp2");
    assert_eq!(lines[2], "1\t-1/t\t-1/2*t\t0\t0");
}
