//! Exact multivariate polynomial and rational-function arithmetic.
//!
//! Values are immutable and canonical: a [`RatFunc`] is always stored in
//! lowest terms with a primitive, positively-led denominator, so equality is
//! structural. Everything here is `Send + Sync`.

mod gcd;
mod modgcd;
mod packed;
mod parse;
mod poly;
mod ratfunc;
mod render;
mod vars;
#[cfg(test)]
mod props;

use thiserror::Error;

pub use gcd::{gcd, lcm};
pub use parse::{expr, parse, parse_poly};
pub use poly::{rat, Exp, Monomial, Poly};
pub use ratfunc::RatFunc;
pub use render::{render, render_poly};
pub use vars::{v, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("division by zero at {pos}")]
    DivisionByZero { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish identically")]
    ZeroDenominator,
}

/// Binary operators exposed for table-driven use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arithmetic(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc, SymError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

pub fn differentiate(f: &RatFunc, var: Var) -> RatFunc {
    f.derivative(var)
}

pub fn substitute(f: &RatFunc, bindings: &[(Var, RatFunc)]) -> Result<RatFunc, SymError> {
    f.substitute(bindings)
}

pub fn equals(a: &RatFunc, b: &RatFunc) -> bool {
    a == b
}

/// Convenience for catalogue code: `bind(&[("q1", "1/x1"), ...])`.
pub fn bind(pairs: &[(&str, &str)]) -> Vec<(Var, RatFunc)> {
    pairs.iter().map(|(n, e)| (v(n), expr(e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        let q1 = expr("q1");
        assert!(arithmetic(&q1, &-&q1, ArithOp::Add).unwrap().is_zero());
        let inv = expr("1/q1");
        assert_eq!(arithmetic(&inv, &q1, ArithOp::Mul).unwrap(), RatFunc::one());
        let quo = arithmetic(&expr("q1^2 - 1"), &expr("q1 - 1"), ArithOp::Div).unwrap();
        assert_eq!(quo, expr("q1 + 1"));
        assert_eq!(arithmetic(&q1, &RatFunc::zero(), ArithOp::Div), Err(SymError::DivisionByZero));
    }

    #[test]
    fn differentiate_examples() {
        assert_eq!(differentiate(&expr("t*p2/2"), v("t")), expr("p2/2"));
        let h = expr("q1^2*p1 + (1/2 - a2)*q1 - p2^3 + (t/2)*p2 - q2^2/2 + p1*p2");
        assert_eq!(differentiate(&h, v("p2")), expr("-3*p2^2 + t/2 + p1"));
        assert_eq!(differentiate(&expr("1/q1"), v("q1")), expr("-1/q1^2"));
        assert_eq!(
            differentiate(&expr("(q1 + t)/(q1^2 - t)^3"), v("q1")),
            expr("((q1^2 - t) - 6*q1*(q1 + t))/(q1^2 - t)^4")
        );
    }

    #[test]
    fn substitute_examples() {
        let f = expr("q1^2");
        assert_eq!(substitute(&f, &bind(&[("q1", "1/x1")])).unwrap(), expr("1/x1^2"));
        let h = expr("q1^2*p1 + (1/2 - a2)*q1 - p2^3 + (t/2)*p2 - q2^2/2 + p1*p2");
        let seed = bind(&[("q1", "0"), ("p1", "-t/2"), ("q2", "0"), ("p2", "0"), ("a2", "0")]);
        // Every term carries q1, p2 or q2, so the Hamiltonian vanishes on the seed.
        assert!(substitute(&h, &seed).unwrap().is_zero());
        assert_eq!(
            substitute(&expr("1/(q1 - p1)"), &bind(&[("q1", "p1")])),
            Err(SymError::ZeroDenominator)
        );
    }

    #[test]
    fn equality_examples() {
        assert!(equals(&expr("q1/q1"), &RatFunc::one()));
        let f = expr("(q1^2 - p1)/(3*t + a2) - 1/(2*q1)");
        assert!(equals(&parse(&render(&f)).unwrap(), &f));
    }
}
