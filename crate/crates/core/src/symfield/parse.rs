//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | VAR | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::vars::Var;
use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().collect();
            out.push((start, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                let rhs = self.unary()?;
                acc = acc
                    .checked_div(&rhs)
                    .map_err(|_| ParseError::DivisionByZero { pos })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let e: i32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e).expect("nonnegative exponent"));
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "exponent must be a nonnegative integer literal".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(RatFunc::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Var::lookup(&name)
                    .map(RatFunc::var)
                    .ok_or(ParseError::UnknownVariable { pos, name })
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::Syntax { pos: self.pos(), msg: "expected `)`".into() });
                }
                Ok(inner)
            }
            Some(tok) => Err(ParseError::Syntax { pos, msg: format!("unexpected token {tok:?}") }),
            None => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses an expression into its canonical rational function.
pub fn parse(text: &str) -> Result<RatFunc, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count() };
    let value = p.expr()?;
    if p.at != p.toks.len() {
        return Err(ParseError::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(value)
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let f = parse(text)?;
    match f.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(ParseError::Syntax { pos: 0, msg: "expected a polynomial".into() }),
    }
}

/// Panicking parse for built-in catalogue formulas.
pub fn expr(text: &str) -> RatFunc {
    parse(text).unwrap_or_else(|e| panic!("bad built-in expression `{text}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::vars::v;

    #[test]
    fn zero_and_gcd_normalisation() {
        assert!(parse("0").unwrap().is_zero());
        let f = parse("(2*q1)/(2)").unwrap();
        assert_eq!(f, RatFunc::var(v("q1")));
        assert!(f.denom().is_one());
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse("-q1^2").unwrap(), -(RatFunc::var(v("q1")).pow(2).unwrap()));
        assert_eq!(parse("1 - 2*3").unwrap(), RatFunc::int(-5));
        assert_eq!(parse("12/4/3").unwrap(), RatFunc::int(1));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("q1 + "), Err(ParseError::Syntax { pos: 5, msg: "unexpected end of input".into() }));
        assert_eq!(
            parse("q1 * bogus"),
            Err(ParseError::UnknownVariable { pos: 5, name: "bogus".into() })
        );
        assert_eq!(parse("q1/(t - t)"), Err(ParseError::DivisionByZero { pos: 2 }));
        assert!(matches!(parse("q1^t"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("q1 $"), Err(ParseError::Syntax { pos: 3, .. })));
    }
}
