//! Canonical text rendering. The output always reparses to an equal value.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::{Monomial, Poly};
use super::ratfunc::RatFunc;

fn coeff_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn monomial_text(m: &Monomial) -> String {
    m.powers()
        .iter()
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&coeff_text(&abs));
        } else if abs.is_one() {
            out.push_str(&monomial_text(m));
        } else {
            out.push_str(&coeff_text(&abs));
            out.push('*');
            out.push_str(&monomial_text(m));
        }
    }
    out
}

pub fn render(f: &RatFunc) -> String {
    if f.is_polynomial() {
        return render_poly(f.numer());
    }
    // Clear rational coefficients from the numerator into the denominator.
    let l = f
        .numer()
        .terms()
        .iter()
        .fold(num_bigint::BigInt::one(), |l, (_, c)| num_integer::Integer::lcm(&l, c.denom()));
    let l = BigRational::from_integer(l);
    let (n, d) = (&f.numer().scale(&l), &f.denom().scale(&l));
    let num = if n.len() == 1 { render_poly(n) } else { format!("({})", render_poly(n)) };
    // A bare power binds tighter than the division; anything else is wrapped.
    let bare = d.len() == 1 && d.terms()[0].1.is_one() && d.terms()[0].0.powers().len() == 1;
    let den = if bare { render_poly(d) } else { format!("({})", render_poly(d)) };
    format!("{num}/{den}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::parse::parse;

    #[test]
    fn rendering_uses_explicit_operators() {
        let f = parse("q1^2*p1 + (1/2 - a2)*q1 - p2^3").unwrap();
        assert_eq!(render(&f), "q1^2*p1 - p2^3 - q1*a2 + 1/2*q1");
        let g = parse("1/(2*q1 + 1)").unwrap();
        assert_eq!(render(&g), "1/(2*q1 + 1)");
        assert_eq!(render(&parse("-1/t").unwrap()), "-1/t");
        assert_eq!(render(&parse("3/(2*t^2)").unwrap()), "3/(2*t^2)");
        assert_eq!(render(&parse("(t + 1)/t^4").unwrap()), "(t + 1)/t^4");
        for s in ["-1/t", "3/(2*t^2)", "(t + 1)/(q1*t^4)", "-5*q1/(p1^3)"] {
            let f = parse(s).unwrap();
            assert_eq!(parse(&render(&f)).unwrap(), f);
        }
        assert_eq!(render(&parse("-3/4").unwrap()), "-3/4");
    }
}
