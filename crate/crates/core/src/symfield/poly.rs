//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::vars::Var;

pub type Exp = u32;

/// A power product, stored as `(var, exponent)` pairs sorted by variable with
/// no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: SmallVec<[(Var, Exp); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::pow_of(v, 1)
    }

    pub fn pow_of(v: Var, e: Exp) -> Self {
        let mut powers = SmallVec::new();
        if e > 0 {
            powers.push((v, e));
        }
        Monomial { powers }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Exp)>) -> Self {
        pairs
            .into_iter()
            .fold(Monomial::one(), |m, (v, e)| m.mul(&Monomial::pow_of(v, e)))
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn degree(&self) -> Exp {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: Var) -> Exp {
        self.powers
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn powers(&self) -> &[(Var, Exp)] {
        &self.powers
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.powers, &other.powers);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { powers: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.powers.len());
        let mut j = 0;
        for &(v, e) in &self.powers {
            if j < other.powers.len() && other.powers[j].0 < v {
                return None;
            }
            if j < other.powers.len() && other.powers[j].0 == v {
                let f = other.powers[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.powers.len() {
            return None;
        }
        Some(Monomial { powers: out })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let powers = self
            .powers
            .iter()
            .filter_map(|&(v, e)| {
                let f = other.exp(v);
                (f > 0).then(|| (v, e.min(f)))
            })
            .collect();
        Monomial { powers }
    }

    /// Drops variable `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: Var) -> (Exp, Monomial) {
        let mut e = 0;
        let powers = self
            .powers
            .iter()
            .filter(|&&(w, f)| {
                if w == v {
                    e = f;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Monomial { powers })
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest alphabet variable where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.powers, &other.powers);
        for k in 0..a.len().min(b.len()) {
            let (va, ea) = a[k];
            let (vb, eb) = b[k];
            if va != vb {
                // The side holding the earlier variable has the larger exponent there.
                return if va < vb { Ordering::Greater } else { Ordering::Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .powers
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial over the rationals. Terms are kept sorted by descending
/// graded-lex order with no zero coefficients, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

/// Builds `n/d` (with `d > 0`) in lowest terms. The gcd is taken against
/// `n mod d`, which keeps the cost linear when `d` is small.
fn q_reduce(n: BigInt, d: BigInt) -> BigRational {
    if d.is_one() || n.is_zero() {
        return if n.is_zero() { BigRational::zero() } else { BigRational::new_raw(n, d) };
    }
    let g = d.gcd(&n.mod_floor(&d));
    if g.is_one() {
        BigRational::new_raw(n, d)
    } else {
        BigRational::new_raw(n / &g, d / g)
    }
}

pub(crate) fn q_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.denom().is_one() && b.denom().is_one() {
        return BigRational::new_raw(a.numer() + b.numer(), BigInt::one());
    }
    if a.denom() == b.denom() {
        return q_reduce(a.numer() + b.numer(), a.denom().clone());
    }
    q_reduce(a.numer() * b.denom() + b.numer() * a.denom(), a.denom() * b.denom())
}

pub(crate) fn q_sub(a: &BigRational, b: &BigRational) -> BigRational {
    if a.denom().is_one() && b.denom().is_one() {
        return BigRational::new_raw(a.numer() - b.numer(), BigInt::one());
    }
    if a.denom() == b.denom() {
        return q_reduce(a.numer() - b.numer(), a.denom().clone());
    }
    q_reduce(a.numer() * b.denom() - b.numer() * a.denom(), a.denom() * b.denom())
}

pub(crate) fn q_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.denom().is_one() && b.denom().is_one() {
        return BigRational::new_raw(a.numer() * b.numer(), BigInt::one());
    }
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    // Cross-cancel so each reduction only meets one small denominator.
    let g1 = a.numer().gcd(b.denom());
    let g2 = b.numer().gcd(a.denom());
    let n = (a.numer() / &g1) * (b.numer() / &g2);
    let d = (a.denom() / &g2) * (b.denom() / &g1);
    BigRational::new_raw(n, d)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms(mut terms: Vec<(Monomial, BigRational)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = q_add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map_or_else(BigRational::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> Exp {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> Exp {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> Exp {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.powers().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, (m, _)| g.gcd(m))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), q_mul(k, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), q_mul(k, c)))
                .collect(),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, mono: &Monomial) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.div(mono)?, c.clone()));
        }
        Some(Poly { terms })
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { q_sub(&a[i].1, &b[j].1) } else { q_add(&a[i].1, &b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Poly { terms: out }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let (e, rest) = m.split_off(v);
                (e > 0).then(|| {
                    let m2 = rest.mul(&Monomial::pow_of(v, e - 1));
                    (m2, c * BigRational::from_integer(e.into()))
                })
            })
            .collect();
        // Differentiation can reorder terms, so re-sort.
        Poly::from_terms(terms)
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        // Removing one variable keeps the relative grlex order only within a
        // fixed exponent of that variable, so each bucket is re-sorted.
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients(v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let vm = Monomial::pow_of(v, k as Exp);
            for (m, k) in &c.terms {
                terms.push((m.mul(&vm), k.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes polynomials for variables simultaneously.
    pub fn compose(&self, bindings: &[(Var, Poly)]) -> Poly {
        let mut cache: Vec<Vec<Poly>> = bindings.iter().map(|(_, p)| vec![Poly::one(), p.clone()]).collect();
        let mut acc: Vec<(Monomial, BigRational)> = Vec::new();
        let mut pieces: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in m.powers() {
                match bindings.iter().position(|(w, _)| *w == v) {
                    Some(k) => {
                        let powers = &mut cache[k];
                        while powers.len() <= e as usize {
                            let next = &powers[powers.len() - 1] * &powers[1];
                            powers.push(next);
                        }
                        factor = &factor * &powers[e as usize];
                    }
                    None => kept = kept.mul(&Monomial::pow_of(v, e)),
                }
            }
            if factor.is_constant() {
                acc.push((kept, factor.leading_coeff()));
            } else {
                pieces.push(factor.mul_monomial(&kept, &BigRational::one()));
            }
        }
        let mut out = Poly::from_terms(acc);
        for p in pieces {
            out = &out + &p;
        }
        out
    }

    /// Rational content: the positive rational `c` such that `self / c` has
    /// coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Primitive integer form with positive leading coefficient, and the
    /// factor removed (`self == factor * result`).
    pub fn primitive(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::one(), Poly::zero());
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if divisor.is_monomial() {
            let (m, c) = &divisor.terms[0];
            return self.div_monomial(m).map(|p| p.scale(&c.recip()));
        }
        // Cheap necessary conditions before the full division loop.
        if self.total_degree() < divisor.total_degree() {
            return None;
        }
        for v in divisor.vars() {
            if self.degree_in(v) < divisor.degree_in(v) {
                return None;
            }
        }
        if let Some(pk) = super::packed::Packing::covering(&[self, divisor]) {
            let (ca, za) = pk.pack(self);
            let (cb, zb) = pk.pack(divisor);
            let q = super::packed::z_div_exact(&za, &zb)?;
            return Some(pk.unpack(&q, &(ca / cb)));
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = m.div(&lm)?;
            let qc = q_mul(c, &lc_inv);
            rem = rem.merge(&divisor.mul_monomial(&qm, &qc), true);
            quotient.push((qm, qc));
        }
        Some(Poly { terms: quotient })
    }

    pub fn eval_f64(&self, point: &dyn Fn(Var) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let cf = c.to_f64().unwrap_or(f64::NAN);
                m.powers()
                    .iter()
                    .fold(cf, |acc, &(v, e)| acc * point(v).powi(e as i32))
            })
            .sum()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_monomial(m, c);
        }
        // Each row `a_i * large` stays sorted, so rows merge pairwise.
        let mut rows: Vec<Poly> = small
            .terms
            .iter()
            .map(|(m, c)| large.mul_monomial(m, c))
            .collect();
        while rows.len() > 1 {
            let mut next = Vec::with_capacity(rows.len().div_ceil(2));
            let mut it = rows.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(&a + &b),
                    None => next.push(a),
                }
            }
            rows = next;
        }
        rows.pop().unwrap_or_default()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::render::render_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::vars::v;

    fn x() -> Poly {
        Poly::var(v("q1"))
    }
    fn y() -> Poly {
        Poly::var(v("p1"))
    }

    #[test]
    fn grlex_orders_by_degree_then_alphabet() {
        let a = Monomial::from_pairs([(v("q1"), 1)]);
        let b = Monomial::from_pairs([(v("p1"), 1)]);
        let c = Monomial::from_pairs([(v("p1"), 2)]);
        assert!(a > b);
        assert!(c > a);
        let d = Monomial::from_pairs([(v("q1"), 1), (v("t"), 1)]);
        let e = Monomial::from_pairs([(v("p1"), 1), (v("q2"), 1)]);
        assert!(d > e);
    }

    #[test]
    fn monomial_division() {
        let a = Monomial::from_pairs([(v("q1"), 3), (v("t"), 1)]);
        let b = Monomial::from_pairs([(v("q1"), 1)]);
        assert_eq!(a.div(&b), Some(Monomial::from_pairs([(v("q1"), 2), (v("t"), 1)])));
        assert_eq!(b.div(&a), None);
    }

    #[test]
    fn products_cancel_to_zero() {
        let p = &(&x() + &y()) * &(&x() - &y());
        let q = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn exact_division_and_failure() {
        let p = &(&x() * &x()) - &Poly::one();
        let d = &x() - &Poly::one();
        assert_eq!(p.div_exact(&d), Some(&x() + &Poly::one()));
        assert_eq!(p.div_exact(&y()), None);
        assert_eq!((&p + &Poly::one()).div_exact(&d), None);
    }

    #[test]
    fn coefficient_round_trip() {
        let p = &(&x().pow(3) * &y()) + &(&x() * &Poly::int(5));
        let cs = p.coefficients_in(v("q1"));
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coefficients(v("q1"), &cs), p);
    }

    #[test]
    fn composition_is_simultaneous() {
        // q1 -> p1, p1 -> q1 swaps rather than collapsing.
        let p = &x() - &(&y() * &Poly::int(2));
        let swapped = p.compose(&[(v("q1"), y()), (v("p1"), x())]);
        assert_eq!(swapped, &y() - &(&x() * &Poly::int(2)));
    }
}
