//! Exact multivariate polynomial gcd over the rationals.
//!
//! Monomial factors, variables present on one side only and exact
//! divisibility are peeled off first since they cover most calls made by
//! the engine. The general case goes to the modular algorithm; inputs it
//! cannot pack fall back to a recursive content / primitive-part scheme
//! with a primitive pseudo-remainder sequence.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::modgcd::modular_gcd;
use super::poly::Poly;
use super::vars::Var;

/// Greatest common divisor, normalised to coprime integer coefficients with a
/// positive leading coefficient. `gcd(0, 0) == 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma).expect("monomial content divides");
    let b1 = b.div_monomial(&mb).expect("monomial content divides");
    let g = gcd_no_monomial(&a1, &b1);
    g.mul_monomial(&m, &BigRational::one()).primitive().1
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.primitive().1;
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.difference(&vb).next() {
        return gcd_with_coefficients(a, v, b);
    }
    if let Some(&v) = vb.difference(&va).next() {
        return gcd_with_coefficients(b, v, a);
    }
    // Exact divisibility covers the frequent "denominator divides numerator" case.
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.primitive().1;
        }
    } else if a.div_exact(b).is_some() {
        return b.primitive().1;
    }
    if let Some(g) = modular_gcd(a, b) {
        return g;
    }
    if va.len() == 1 {
        let v = *va.iter().next().unwrap();
        return univariate_gcd(a, b, v);
    }
    let main = va
        .iter()
        .copied()
        .min_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), a.degree_in(v).min(b.degree_in(v))))
        .unwrap();
    recursive_gcd(a, b, main)
}

/// `gcd(a, b)` where `v` occurs in `a` but not in `b`: the answer divides
/// every coefficient of `a` with respect to `v`.
fn gcd_with_coefficients(a: &Poly, v: Var, b: &Poly) -> Poly {
    let mut coeffs: Vec<Poly> = a
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| (c.len(), c.total_degree()));
    let mut g = b.clone();
    for c in coeffs {
        g = gcd(&c, &g);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g.primitive().1
}

fn univariate_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let mut r0: Vec<BigRational> = dense(a, v);
    let mut r1: Vec<BigRational> = dense(b, v);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let r = dense_rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    let coeffs: Vec<Poly> = r0.into_iter().map(Poly::constant).collect();
    Poly::from_coefficients(v, &coeffs).primitive().1
}

fn dense(p: &Poly, v: Var) -> Vec<BigRational> {
    p.coefficients_in(v)
        .into_iter()
        .map(|c| c.as_constant().expect("univariate coefficient"))
        .collect()
}

fn dense_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb_inv = b[db].recip();
    while r.len() > db {
        let top = r.len() - 1;
        let f = &r[top] * &lb_inv;
        if !f.is_zero() {
            let shift = top - db;
            for (k, c) in b.iter().enumerate() {
                r[shift + k] -= &f * c;
            }
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

type Upoly = Vec<Poly>;

fn trim(p: &mut Upoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// gcd of all coefficients.
fn content(p: &Upoly) -> Poly {
    let mut coeffs: Vec<&Poly> = p.iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| (c.len(), c.total_degree()));
    let mut g = Poly::zero();
    for c in coeffs {
        g = gcd(c, &g);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn divide_all(p: &Upoly, d: &Poly) -> Upoly {
    p.iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn primitive_part(p: &Upoly) -> Upoly {
    let c = content(p);
    if c.is_one() {
        p.clone()
    } else {
        divide_all(p, &c)
    }
}

/// Pseudo-remainder of `a` by `b` (coefficients multiplied by powers of `lc(b)`).
fn pseudo_rem(a: &Upoly, b: &Upoly) -> Upoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&lr * c);
        }
        debug_assert!(r[top].is_zero());
        r.pop();
        trim(&mut r);
    }
    r
}

fn recursive_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let ua: Upoly = a.coefficients_in(v);
    let ub: Upoly = b.coefficients_in(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd(&ca, &cb);
    let mut r0 = if ca.is_one() { ua } else { divide_all(&ua, &ca) };
    let mut r1 = if cb.is_one() { ub } else { divide_all(&ub, &cb) };
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    let g = loop {
        let r = pseudo_rem(&r0, &r1);
        if r.is_empty() {
            break r1;
        }
        if r.len() == 1 {
            break vec![Poly::one()];
        }
        r0 = r1;
        r1 = primitive_part(&r);
    };
    let g = primitive_part(&g);
    (&Poly::from_coefficients(v, &g) * &c).primitive().1
}

/// Least common multiple up to a rational factor.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    (&a.div_exact(&g).expect("gcd divides") * b).primitive().1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn univariate_common_factor() {
        let a = p("q1^2 - 1");
        let b = p("q1^2 + 2*q1 + 1");
        assert_eq!(gcd(&a, &b), p("q1 + 1"));
    }

    #[test]
    fn coprime_inputs_give_one() {
        assert_eq!(gcd(&p("q1 + p1"), &p("q1 - p1")), Poly::one());
        assert_eq!(gcd(&p("q1"), &p("p1")), Poly::one());
    }

    #[test]
    fn shared_multivariate_factor_is_found() {
        let f = p("p1 + t - 2*p2^2 + 4*q1*(q2 + q1*p2)");
        let a = &(&f * &f) * &p("q1 - a2");
        let b = &f * &p("3*p1^2 + t*q2 + 1");
        assert_eq!(gcd(&a, &b), f.primitive().1);
        let a2 = &f.pow(3) * &p("q2 + 1");
        let b2 = &f.pow(2) * &p("q2 - 1");
        assert_eq!(gcd(&a2, &b2), f.pow(2).primitive().1);
    }

    #[test]
    fn monomial_factors_are_kept() {
        let a = p("q1^3*p1 + q1^2*p1^2");
        let b = p("q1^2*t + q1^2*p1*t");
        assert_eq!(gcd(&a, &b), p("q1^2"));
    }

    #[test]
    fn zero_handling() {
        assert!(gcd(&Poly::zero(), &Poly::zero()).is_zero());
        assert_eq!(gcd(&Poly::zero(), &p("-2*q1 - 4")), p("q1 + 2"));
    }
}
