//! Dense modular multivariate gcd over the integers.
//!
//! Images modulo word-sized primes are computed by recursive evaluation
//! and Newton interpolation, one variable at a time; images are combined
//! by Chinese remaindering and the candidate is accepted only after exact
//! division over the integers. Exponents are packed into a `u64`, eight
//! bits per variable, first variable in the top byte, so integer order on
//! keys is lexicographic order on monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::packed::{exp_of, key_div, shift, z_div_exact, z_primitive, Packing, ZPoly, MAX_EXP, MAX_VARS};
use super::poly::Poly;
use super::vars::Var;

const MAX_PRIMES: usize = 24;

fn clear(key: u64, k: usize) -> u64 {
    key & !((MAX_EXP as u64) << shift(k))
}

// ---------------------------------------------------------------- Z_p scalars

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 61) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

/// Deterministic stream of evaluation points in `1..p`.
struct Points(u64);

impl Points {
    fn next(&mut self, p: u64) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        1 + self.0 % (p - 1)
    }
}

// ------------------------------------------------- dense univariate over Z_p

type Dense = Vec<u64>;

fn trim(mut a: Dense) -> Dense {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn d_eval(a: &Dense, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn d_scale(a: &Dense, s: u64, p: u64) -> Dense {
    trim(a.iter().map(|&c| mul_mod(c, s, p)).collect())
}

fn d_monic(a: &Dense, p: u64) -> Dense {
    match a.last() {
        Some(&l) => d_scale(a, inv_mod(l, p), p),
        None => Vec::new(),
    }
}

fn d_divrem(a: &Dense, b: &Dense, p: u64) -> (Dense, Dense) {
    let mut r = a.clone();
    if b.is_empty() || r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0; r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + b.len() - 1], inv, p);
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = sub_mod(r[i + j], mul_mod(c, bj, p), p);
            }
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

fn d_gcd(a: &Dense, b: &Dense, p: u64) -> Dense {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = d_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    d_monic(&x, p)
}

fn d_mul_linear(a: &Dense, root: u64, p: u64) -> Dense {
    // a * (x - root)
    let mut out = vec![0; a.len() + 1];
    for (i, &c) in a.iter().enumerate() {
        out[i + 1] = add_mod(out[i + 1], c, p);
        out[i] = sub_mod(out[i], mul_mod(c, root, p), p);
    }
    trim(out)
}

fn d_deg(a: &Dense) -> usize {
    a.len().saturating_sub(1)
}

// --------------------------------------------- sparse multivariate over Z_p

/// Terms sorted by decreasing key, coefficients nonzero.
type MPoly = Vec<(u64, u64)>;

fn m_from_map(map: BTreeMap<u64, u64>) -> MPoly {
    map.into_iter().rev().filter(|&(_, c)| c != 0).collect()
}

fn m_monic(a: &MPoly, p: u64) -> MPoly {
    let inv = inv_mod(a[0].1, p);
    a.iter().map(|&(k, c)| (k, mul_mod(c, inv, p))).collect()
}

/// Substitutes `x = value` for variable `k`.
fn m_eval(a: &MPoly, k: usize, value: u64, p: u64) -> MPoly {
    let mut map: BTreeMap<u64, u64> = BTreeMap::new();
    for &(key, c) in a {
        let e = exp_of(key, k) as u64;
        let t = mul_mod(c, pow_mod(value, e, p), p);
        let slot = map.entry(clear(key, k)).or_insert(0);
        *slot = add_mod(*slot, t, p);
    }
    m_from_map(map)
}

/// Groups terms by the monomial in the variables other than `k`; values
/// are dense polynomials in variable `k`.
fn m_split(a: &MPoly, k: usize) -> BTreeMap<u64, Dense> {
    let mut out: BTreeMap<u64, Dense> = BTreeMap::new();
    for &(key, c) in a {
        let e = exp_of(key, k) as usize;
        let d = out.entry(clear(key, k)).or_default();
        if d.len() <= e {
            d.resize(e + 1, 0);
        }
        d[e] = c;
    }
    out
}

fn m_join(parts: &BTreeMap<u64, Dense>, k: usize) -> MPoly {
    let mut map = BTreeMap::new();
    for (&rest, d) in parts {
        for (e, &c) in d.iter().enumerate() {
            if c != 0 {
                map.insert(rest | ((e as u64) << shift(k)), c);
            }
        }
    }
    m_from_map(map)
}

fn m_divides(d: &MPoly, a: &MPoly, p: u64) -> bool {
    let (dk, dc) = d[0];
    let inv = inv_mod(dc, p);
    let room: Vec<u32> = (0..MAX_VARS)
        .map(|k| MAX_EXP - d.iter().map(|&(t, _)| exp_of(t, k)).max().unwrap_or(0))
        .collect();
    let mut rem: BTreeMap<u64, u64> = a.iter().copied().collect();
    while let Some((&rk, &rc)) = rem.iter().next_back() {
        let Some(qk) = key_div(rk, dk) else { return false };
        if (0..MAX_VARS).any(|k| exp_of(qk, k) > room[k]) {
            return false;
        }
        let qc = mul_mod(rc, inv, p);
        for &(t, c) in d {
            let key = t + qk;
            let slot = rem.entry(key).or_insert(0);
            *slot = sub_mod(*slot, mul_mod(qc, c, p), p);
            if *slot == 0 {
                rem.remove(&key);
            }
        }
    }
    true
}

/// Monic gcd of `a` and `b` (nonzero, variables `0..n`) modulo `p`;
/// `None` when too many evaluation points turn out unlucky.
fn mgcd(a: &MPoly, b: &MPoly, n: usize, p: u64, pts: &mut Points) -> Option<MPoly> {
    if n == 1 {
        let da = m_split(a, 0).remove(&0).unwrap_or_default();
        let db = m_split(b, 0).remove(&0).unwrap_or_default();
        let g = d_gcd(&da, &db, p);
        return Some(m_join(&BTreeMap::from([(0, g)]), 0));
    }
    let k = n - 1;
    let (sa, sb) = (m_split(a, k), m_split(b, k));
    let content = |s: &BTreeMap<u64, Dense>| {
        s.values().fold(Vec::new(), |g, d| if g.len() == 1 { g } else { d_gcd(&g, d, p) })
    };
    let (ca, cb) = (content(&sa), content(&sb));
    let c = d_gcd(&ca, &cb, p);
    let prim = |s: &BTreeMap<u64, Dense>, cont: &Dense| -> BTreeMap<u64, Dense> {
        s.iter().map(|(&m, d)| (m, d_divrem(d, cont, p).0)).collect()
    };
    let (pa, pb) = (prim(&sa, &ca), prim(&sb, &cb));
    let la = pa.values().next_back()?.clone();
    let lb = pb.values().next_back()?.clone();
    let gamma = d_gcd(&la, &lb, p);
    let deg_k = |s: &BTreeMap<u64, Dense>| s.values().map(d_deg).max().unwrap_or(0);
    let bound = d_deg(&gamma) + deg_k(&pa).min(deg_k(&pb)) + 1;
    let (ma, mb) = (m_join(&pa, k), m_join(&pb, k));

    let finish = |h: &BTreeMap<u64, Dense>| -> Option<MPoly> {
        let hc = content(h);
        let pp: BTreeMap<u64, Dense> = h.iter().map(|(&m, d)| (m, d_divrem(d, &hc, p).0)).collect();
        let pp = m_join(&pp, k);
        if !(m_divides(&pp, &ma, p) && m_divides(&pp, &mb, p)) {
            return None;
        }
        let cpoly = m_join(&BTreeMap::from([(0, c.clone())]), k);
        Some(m_monic(&m_mul(&pp, &cpoly, p), p))
    };

    let mut lead: Option<u64> = None;
    let mut h: BTreeMap<u64, Dense> = BTreeMap::new();
    let mut q: Dense = vec![1];
    let mut used: Vec<u64> = Vec::new();
    let mut misses = 0;
    while misses < 64 {
        let alpha = pts.next(p);
        if used.contains(&alpha) || d_eval(&la, alpha, p) == 0 || d_eval(&lb, alpha, p) == 0 {
            misses += 1;
            continue;
        }
        let ea = m_eval(&ma, k, alpha, p);
        let eb = m_eval(&mb, k, alpha, p);
        let Some(g) = mgcd(&ea, &eb, k, p, pts) else {
            misses += 1;
            continue;
        };
        let gk = g[0].0;
        if gk == 0 {
            // Images are coprime: only the content survives.
            let cpoly = m_join(&BTreeMap::from([(0, c.clone())]), k);
            return Some(m_monic(&cpoly, p));
        }
        match lead {
            Some(l) if gk > l => {
                misses += 1;
                continue;
            }
            Some(l) if gk == l => {}
            _ => {
                lead = Some(gk);
                h.clear();
                q = vec![1];
                used.clear();
            }
        }
        let scale = d_eval(&gamma, alpha, p);
        let qa = d_eval(&q, alpha, p);
        let qinv = inv_mod(qa, p);
        let mut changed = false;
        let gmap: BTreeMap<u64, u64> = g.iter().map(|&(m, c)| (m, mul_mod(c, scale, p))).collect();
        let keys: Vec<u64> = h.keys().copied().chain(gmap.keys().copied()).collect();
        for m in keys {
            let cur = h.get(&m).map(|d| d_eval(d, alpha, p)).unwrap_or(0);
            let want = gmap.get(&m).copied().unwrap_or(0);
            let delta = mul_mod(sub_mod(want, cur, p), qinv, p);
            if delta != 0 {
                changed = true;
                let upd = d_scale(&q, delta, p);
                let d = h.entry(m).or_default();
                if d.len() < upd.len() {
                    d.resize(upd.len(), 0);
                }
                for (i, u) in upd.into_iter().enumerate() {
                    d[i] = add_mod(d[i], u, p);
                }
                *d = trim(std::mem::take(d));
            }
        }
        h.retain(|_, d| !d.is_empty());
        q = d_mul_linear(&q, alpha, p);
        used.push(alpha);
        if (!changed && used.len() > 1) || used.len() >= bound {
            if let Some(r) = finish(&h) {
                return Some(r);
            }
            if used.len() >= bound {
                return None;
            }
        }
    }
    None
}

fn m_mul(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let mut map: BTreeMap<u64, u64> = BTreeMap::new();
    for &(ka, ca) in a {
        for &(kb, cb) in b {
            let slot = map.entry(ka + kb).or_insert(0);
            *slot = add_mod(*slot, mul_mod(ca, cb, p), p);
        }
    }
    m_from_map(map)
}

// ---------------------------------------------------------- integer level

fn z_reduce(a: &ZPoly, p: u64) -> MPoly {
    let bp = BigInt::from(p);
    a.iter()
        .map(|(k, c)| (*k, c.mod_floor(&bp).to_u64().expect("reduced")))
        .filter(|&(_, c)| c != 0)
        .collect()
}

/// Symmetric Chinese remaindering of `acc` (modulo `m`) with `img` (modulo `p`).
fn crt(acc: &BTreeMap<u64, BigInt>, m: &BigInt, img: &MPoly, p: u64) -> BTreeMap<u64, BigInt> {
    let bp = BigInt::from(p);
    let m_mod_p = m.mod_floor(&bp).to_u64().expect("reduced");
    let inv = BigInt::from(inv_mod(m_mod_p, p));
    let img: BTreeMap<u64, u64> = img.iter().copied().collect();
    let keys: Vec<u64> = acc.keys().chain(img.keys()).copied().collect();
    let mut out = BTreeMap::new();
    for k in keys {
        let r = acc.get(&k).cloned().unwrap_or_else(BigInt::zero);
        let v = BigInt::from(img.get(&k).copied().unwrap_or(0));
        let t = ((v - &r) * &inv).mod_floor(&bp);
        let x = r + m * t;
        if !x.is_zero() {
            out.insert(k, x);
        }
    }
    out
}

fn symmetric(acc: &BTreeMap<u64, BigInt>, m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    let mut out: ZPoly = acc
        .iter()
        .map(|(&k, c)| {
            let c = c.mod_floor(m);
            (k, if c > half { c - m } else { c })
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    out.sort_by_key(|t| std::cmp::Reverse(t.0));
    out
}

/// Gcd normalised like [`super::gcd`], or `None` when the inputs fall
/// outside the packed range or every prime fails.
pub(super) fn modular_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut vars: Vec<Var> = a.vars().union(&b.vars()).copied().collect();
    if vars.is_empty() {
        return None;
    }
    // Highest degree first: it is handled by the univariate base case.
    vars.sort_by_key(|&v| std::cmp::Reverse(a.degree_in(v).max(b.degree_in(v))));
    let n = vars.len();
    let pk = Packing::new(vars, &[a, b])?;
    let (za, zb) = (pk.pack(a).1, pk.pack(b).1);
    let gamma = za[0].1.gcd(&zb[0].1);
    let mut pts = Points(0x9e37_79b9_7f4a_7c15);
    let mut lead: Option<u64> = None;
    let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
    let mut modulus = BigInt::one();
    let mut last: Option<ZPoly> = None;
    for p in primes().take(MAX_PRIMES) {
        let bp = BigInt::from(p);
        if (&za[0].1 % &bp).is_zero() || (&zb[0].1 % &bp).is_zero() {
            continue;
        }
        let Some(g) = mgcd(&z_reduce(&za, p), &z_reduce(&zb, p), n, p, &mut pts) else { continue };
        if g[0].0 == 0 {
            return Some(Poly::one());
        }
        match lead {
            Some(l) if g[0].0 > l => continue,
            Some(l) if g[0].0 == l => {}
            _ => {
                lead = Some(g[0].0);
                acc.clear();
                modulus = BigInt::one();
                last = None;
            }
        }
        let s = gamma.mod_floor(&bp).to_u64().expect("reduced");
        let g: MPoly = g.iter().map(|&(k, c)| (k, mul_mod(c, s, p))).collect();
        acc = crt(&acc, &modulus, &g, p);
        modulus *= &bp;
        let cand = z_primitive(symmetric(&acc, &modulus));
        if (last.as_ref() == Some(&cand) || modulus.bits() > 2 * max_bits(&za, &zb) + 64)
            && z_div_exact(&za, &cand).is_some()
            && z_div_exact(&zb, &cand).is_some()
        {
            return Some(pk.unpack(&cand, &BigRational::one()));
        }
        last = Some(cand);
    }
    None
}

fn max_bits(a: &ZPoly, b: &ZPoly) -> u64 {
    a.iter().chain(b).map(|(_, c)| c.bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn finds_shared_factor() {
        let f = p("p1 + t - 2*p2^2 + 4*q1*(q2 + q1*p2)");
        let a = &(&f * &f) * &p("q1 - a2");
        let b = &f * &p("3*p1^2 + t*q2 + 1");
        assert_eq!(modular_gcd(&a, &b).unwrap(), f.primitive().1);
    }

    #[test]
    fn repeated_and_content_factors() {
        let f = p("2*q1*p1 - a2 + 1");
        let g = p("t^2 + 3");
        let a = &(&f * &f) * &(&g * &p("q2 - 5"));
        let b = &(&f * &f) * &(&f * &g);
        let want = (&(&f * &f) * &g).primitive().1;
        assert_eq!(modular_gcd(&a, &b).unwrap(), want);
    }

    #[test]
    fn coprime_gives_one() {
        assert!(modular_gcd(&p("q1^2 + p1"), &p("q1 - p1^3 + 2")).unwrap().is_one());
    }

    #[test]
    fn large_coefficients() {
        let f = p("123456789012345678901*q1^3 - 98765432109876543210*p1*t + 7");
        let a = &f * &p("q1 + 1");
        let b = &f * &p("q1 - 1");
        assert_eq!(modular_gcd(&a, &b).unwrap(), f.primitive().1);
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert_eq!(ps[0], (1u64 << 61) - 1);
        assert!(ps.iter().all(|&q| is_prime(q)));
        assert!(!is_prime(561));
    }
}
