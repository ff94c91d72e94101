//! Integer polynomials with exponents packed into a `u64`, eight bits per
//! variable, first variable in the top byte. Integer order on keys is then
//! lexicographic order on monomials, which is all exact division needs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::{Monomial, Poly};
use super::vars::Var;

pub(super) const BITS: u32 = 8;
pub(super) const MAX_VARS: usize = 8;
pub(super) const MAX_EXP: u32 = (1 << BITS) - 1;

/// Terms sorted by decreasing key, coefficients nonzero.
pub(super) type ZPoly = Vec<(u64, BigInt)>;

pub(super) fn shift(k: usize) -> u32 {
    BITS * (MAX_VARS - 1 - k) as u32
}

pub(super) fn exp_of(key: u64, k: usize) -> u32 {
    ((key >> shift(k)) & MAX_EXP as u64) as u32
}

pub(super) fn key_div(a: u64, b: u64) -> Option<u64> {
    (0..MAX_VARS).all(|k| exp_of(a, k) >= exp_of(b, k)).then(|| a - b)
}

/// Variable order used for packing.
pub(super) struct Packing {
    pub vars: Vec<Var>,
}

impl Packing {
    /// Fails when there are too many variables or a degree leaves no room
    /// for products of two inputs.
    pub fn new(vars: Vec<Var>, polys: &[&Poly]) -> Option<Packing> {
        if vars.len() > MAX_VARS {
            return None;
        }
        let fits = vars
            .iter()
            .all(|&v| polys.iter().map(|p| p.degree_in(v)).max().unwrap_or(0) < MAX_EXP / 2);
        fits.then_some(Packing { vars })
    }

    pub fn covering(polys: &[&Poly]) -> Option<Packing> {
        let mut all = std::collections::BTreeSet::new();
        for p in polys {
            all.extend(p.vars());
        }
        Packing::new(all.into_iter().collect(), polys)
    }

    /// `p = c * z` with `z` primitive over the integers.
    pub fn pack(&self, p: &Poly) -> (BigRational, ZPoly) {
        let (c, prim) = p.primitive();
        let mut terms: ZPoly = prim
            .terms()
            .iter()
            .map(|(m, c)| {
                let key = self
                    .vars
                    .iter()
                    .enumerate()
                    .fold(0u64, |key, (k, v)| key | ((m.exp(*v) as u64) << shift(k)));
                (key, c.numer().clone())
            })
            .collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        (c, terms)
    }

    pub fn unpack(&self, z: &ZPoly, scale: &BigRational) -> Poly {
        let terms = z
            .iter()
            .map(|(key, c)| {
                let pairs = self
                    .vars
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (*v, exp_of(*key, k)))
                    .filter(|(_, e)| *e > 0);
                (Monomial::from_pairs(pairs), scale * BigRational::from_integer(c.clone()))
            })
            .collect();
        Poly::from_terms(terms)
    }
}

/// Exact quotient `a / d` over the integers, or `None` on a remainder.
pub(super) fn z_div_exact(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let (dk, dc) = (d[0].0, &d[0].1);
    let room: Vec<u32> = (0..MAX_VARS)
        .map(|k| MAX_EXP - d.iter().map(|(t, _)| exp_of(*t, k)).max().unwrap_or(0))
        .collect();
    let mut rem: BTreeMap<u64, BigInt> = a.iter().cloned().collect();
    let mut quot: ZPoly = Vec::new();
    while let Some((&rk, rc)) = rem.iter().next_back() {
        let qk = key_div(rk, dk)?;
        if (0..MAX_VARS).any(|k| exp_of(qk, k) > room[k]) {
            return None;
        }
        let (qc, r) = rc.div_rem(dc);
        if !r.is_zero() {
            return None;
        }
        for (t, c) in d {
            let key = t + qk;
            let slot = rem.entry(key).or_insert_with(BigInt::zero);
            *slot -= &qc * c;
            if slot.is_zero() {
                rem.remove(&key);
            }
        }
        quot.push((qk, qc));
    }
    Some(quot)
}

pub(super) fn z_primitive(a: ZPoly) -> ZPoly {
    let mut g = BigInt::zero();
    for (_, c) in &a {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            break;
        }
    }
    if a.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    a.into_iter().map(|(k, c)| (k, c / &g)).collect()
}
