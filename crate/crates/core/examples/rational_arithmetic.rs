//! Exact rational-function arithmetic: parse, combine, differentiate, print.

use p2h2::symfield::{expr, gcd, parse_poly, render, v};

fn main() {
    let f = expr("(q1^2 - 1)/(q1 - 1)");
    println!("(q1^2 - 1)/(q1 - 1) = {}", render(&f));

    let g = expr("1/q1 + 1/(q1 + t)");
    println!("1/q1 + 1/(q1 + t) = {}", render(&g));
    println!("d/dq1 = {}", render(&g.derivative(v("q1"))));

    let a = parse_poly("(x + y)^3*(x - t)").unwrap();
    let b = parse_poly("(x + y)^2*(x + t)").unwrap();
    println!("gcd = {}", p2h2::symfield::render_poly(&gcd(&a, &b)));

    let s = expr("q1 + (1/2 - a2)/p1").substitute(&[(v("a2"), expr("1/2"))]).unwrap();
    println!("s0 image of q1 at a2 = 1/2: {}", render(&s));
}
