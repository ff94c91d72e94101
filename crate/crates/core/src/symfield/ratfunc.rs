//! Canonical rational functions over the rationals.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Exp, Poly};
use super::vars::Var;
use super::SymError;

/// `num / den` with `gcd(num, den) = 1`, `den` a primitive integer polynomial
/// with positive leading coefficient (so `den == 1` for polynomials). Two
/// values are equal exactly when their canonical forms coincide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::int(1)
    }

    pub fn int(n: i64) -> Self {
        Poly::int(n).into()
    }

    pub fn rational(n: i64, d: i64) -> Self {
        RatFunc::constant(super::poly::rat(n, d))
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::constant(c).into()
    }

    pub fn var(v: Var) -> Self {
        Poly::var(v).into()
    }

    /// `num / den`, reduced to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFunc { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        RatFunc::scaled(num, den)
    }

    /// Fixes the scalar normalisation of an already coprime pair.
    fn scaled(num: Poly, den: Poly) -> Self {
        if let Some(c) = den.as_constant() {
            return RatFunc { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let (c, den) = den.primitive();
        let num = if c.is_one() { num } else { num.scale(&c.recip()) };
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the denominator is a unit.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn recip(&self) -> Result<RatFunc, SymError> {
        if self.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(RatFunc::scaled(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, SymError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, SymError> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let e = e as u32;
        // Powers of a coprime pair stay coprime.
        Ok(RatFunc { num: self.num.pow(e), den: self.den.pow(e) })
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return dn.into();
        }
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            // d/dv may share factors with a denominator free of v.
            return RatFunc::reduce(dn, self.den.clone());
        }
        // With g = gcd(d, d'), d = g e and d' = g e':
        //   (n/d)' = (n' e - n e') / (g e^2),
        // and the numerator is already coprime to e.
        let g = gcd(&self.den, &dd);
        let e = self.den.div_exact(&g).expect("gcd divides");
        let de = dd.div_exact(&g).expect("gcd divides");
        let num = &(&dn * &e) - &(&self.num * &de);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        RatFunc::scaled(num, &g * &(&e * &e))
    }

    /// Simultaneous substitution `v -> value` for every binding.
    pub fn substitute(&self, bindings: &[(Var, RatFunc)]) -> Result<RatFunc, SymError> {
        let relevant: Vec<(Var, RatFunc)> = bindings
            .iter()
            .filter(|(v, _)| self.contains_var(*v))
            .cloned()
            .collect();
        if relevant.is_empty() {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.num, &relevant);
        if self.den.is_one() {
            return Ok(num);
        }
        let den = substitute_poly(&self.den, &relevant);
        if den.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        num.checked_div(&den)
    }

    pub fn eval_f64(&self, point: &dyn Fn(Var) -> f64) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Exact value at a rational point; `None` when the denominator vanishes.
    pub fn eval_rational(&self, point: &[(Var, BigRational)]) -> Option<BigRational> {
        let bindings: Vec<(Var, RatFunc)> =
            point.iter().map(|(v, c)| (*v, RatFunc::constant(c.clone()))).collect();
        self.substitute(&bindings).ok()?.as_constant()
    }
}

/// Substitutes rational functions into a polynomial with one common
/// denominator per distinct binding denominator, then reduces once.
fn substitute_poly(p: &Poly, bindings: &[(Var, RatFunc)]) -> RatFunc {
    if bindings.iter().all(|(_, r)| r.is_polynomial()) {
        let polys: Vec<(Var, Poly)> = bindings.iter().map(|(v, r)| (*v, r.num.clone())).collect();
        return p.compose(&polys).into();
    }
    // Distinct denominators act as a factor base.
    let mut bases: Vec<Poly> = Vec::new();
    let mut base_of: Vec<Option<usize>> = Vec::with_capacity(bindings.len());
    for (_, r) in bindings {
        if r.den.is_one() {
            base_of.push(None);
        } else if let Some(k) = bases.iter().position(|b| *b == r.den) {
            base_of.push(Some(k));
        } else {
            bases.push(r.den.clone());
            base_of.push(Some(bases.len() - 1));
        }
    }
    let term_base_exps = |m: &super::poly::Monomial| -> Vec<Exp> {
        let mut exps = vec![0; bases.len()];
        for (k, (v, _)) in bindings.iter().enumerate() {
            if let Some(b) = base_of[k] {
                exps[b] += m.exp(*v);
            }
        }
        exps
    };
    let mut max_exps = vec![0; bases.len()];
    for (m, _) in p.terms() {
        for (k, e) in term_base_exps(m).into_iter().enumerate() {
            max_exps[k] = max_exps[k].max(e);
        }
    }
    let mut num_bindings: Vec<(Var, Poly)> = Vec::new();
    let mut pow_cache: Vec<Vec<Poly>> = bases.iter().map(|b| vec![Poly::one(), b.clone()]).collect();
    for (v, r) in bindings {
        num_bindings.push((*v, r.num.clone()));
    }
    let mut num = Poly::zero();
    for (m, c) in p.terms() {
        let single = Poly::term(m.clone(), c.clone());
        let mut piece = single.compose(&num_bindings);
        for (k, e) in term_base_exps(m).into_iter().enumerate() {
            let need = (max_exps[k] - e) as usize;
            if need > 0 {
                let cache = &mut pow_cache[k];
                while cache.len() <= need {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                piece = &piece * &cache[need];
            }
        }
        num = &num + &piece;
    }
    let mut den = Poly::one();
    for (k, &e) in max_exps.iter().enumerate() {
        if e > 0 {
            den = &den * &bases[k].pow(e);
        }
    }
    // Strip whole base factors first; the final gcd then works on smaller inputs.
    let mut num = num;
    let mut den_exps = max_exps.clone();
    for (k, b) in bases.iter().enumerate() {
        while den_exps[k] > 0 {
            match num.div_exact(b) {
                Some(q) => {
                    num = q;
                    den_exps[k] -= 1;
                }
                None => break,
            }
        }
    }
    if den_exps != max_exps {
        den = Poly::one();
        for (k, &e) in den_exps.iter().enumerate() {
            if e > 0 {
                den = &den * &bases[k].pow(e);
            }
        }
    }
    RatFunc::reduce(num, den)
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::int(n)
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> Self {
        RatFunc::var(v)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        add_sub(self, rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        add_sub(self, rhs, true)
    }
}

fn add_sub(a: &RatFunc, b: &RatFunc, negate: bool) -> RatFunc {
    let combine = |x: &Poly, y: &Poly| if negate { x - y } else { x + y };
    if a.den.is_one() && b.den.is_one() {
        return combine(&a.num, &b.num).into();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den.is_one() {
        // gcd(a d + c, d) = gcd(c, d) = 1
        let num = combine(&(&a.num * &b.den), &b.num);
        return RatFunc { num, den: b.den.clone() };
    }
    if b.den.is_one() {
        let num = combine(&a.num, &(&b.num * &a.den));
        return RatFunc { num, den: a.den.clone() };
    }
    if a.den == b.den {
        return RatFunc::reduce(combine(&a.num, &b.num), a.den.clone());
    }
    // a/b + c/d with g = gcd(b, d): the numerator can only share factors with g.
    let g = gcd(&a.den, &b.den);
    let bq = a.den.div_exact(&g).expect("gcd divides");
    let dq = b.den.div_exact(&g).expect("gcd divides");
    let num = combine(&(&a.num * &dq), &(&b.num * &bq));
    if num.is_zero() {
        return RatFunc::zero();
    }
    if g.is_one() {
        return RatFunc::scaled(num, &bq * &b.den);
    }
    let h = gcd(&num, &g);
    let (num, g) = if h.is_one() {
        (num, g)
    } else {
        (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
    };
    RatFunc::scaled(num, &(&bq * &dq) * &g)
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let quot = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.div_exact(g).unwrap() };
        let num = &quot(&self.num, &g1) * &quot(&rhs.num, &g2);
        let den = &quot(&self.den, &g2) * &quot(&rhs.den, &g1);
        RatFunc::scaled(num, den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] to handle it.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render(self))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}
