//! Accessible singularities, local indices and the blow-up pipelines that
//! turn the rational systems into polynomial Hamiltonian ones.

mod pipeline;
#[cfg(test)]
mod tests;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dynsys::{DynError, VectorField};
use crate::symfield::{expr, render, v, RatFunc, SymError, Var};

pub use pipeline::{chart_field, pipeline, run_pipeline, Check, Pipeline, PipelineReport, Step, StepReport, PIPELINE_IDS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("locus is written in {locus:?} but the field lives in {field:?}")]
    Shape { locus: Vec<Var>, field: Vec<Var> },
    #[error("{var}-component times {dist} is not polynomial in the chart: {expr}")]
    NotNormalForm { var: Var, dist: Var, expr: String },
    #[error("irrational eigenvalues remain in characteristic polynomial {0}")]
    Irrational(String),
    #[error("matrix entry {0} is not a constant")]
    NonConstant(String),
    #[error("unknown pipeline `{0}`")]
    UnknownPipeline(String),
    #[error(transparent)]
    Dyn(#[from] DynError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// A point or a parametrised family on the divisor `dist = 0` of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub vars: Vec<Var>,
    /// The coordinate whose vanishing cuts out the divisor.
    pub dist: Var,
    /// Aligned with `vars`, written in `free_vars`, `t` and the parameters.
    pub point: Vec<RatFunc>,
    pub free_vars: Vec<Var>,
}

impl SingularLocus {
    /// `images[k]` is the value of `vars[k]`; a coordinate mapped to itself
    /// stays free along the locus.
    pub fn new(vars: &[&str], images: &[&str], dist: &str) -> Self {
        let vars: Vec<Var> = vars.iter().map(|n| v(n)).collect();
        let point: Vec<RatFunc> = images.iter().map(|e| expr(e)).collect();
        let free_vars = vars
            .iter()
            .zip(&point)
            .filter(|(w, p)| **p == RatFunc::var(**w))
            .map(|(w, _)| *w)
            .collect();
        SingularLocus { vars, dist: v(dist), point, free_vars }
    }

    /// Distinguished coordinate defaults to the first one.
    pub fn point(vars: &[&str], images: &[&str]) -> Self {
        SingularLocus::new(vars, images, vars[0])
    }

    pub fn dist_index(&self) -> usize {
        self.vars.iter().position(|&w| w == self.dist).expect("distinguished variable in chart")
    }

    fn bindings(&self) -> Vec<(Var, RatFunc)> {
        self.vars.iter().copied().zip(self.point.iter().cloned()).collect()
    }

    pub fn describe(&self) -> String {
        let body: Vec<String> = self.point.iter().map(render).collect();
        let names: Vec<String> = self.vars.iter().map(|w| w.to_string()).collect();
        format!("({}) = ({})", names.join(","), body.join(", "))
    }
}

/// Ordered eigenvalues of the linear part at a locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIndex {
    pub eigenvalues: Vec<RatFunc>,
    /// Position of the eigenvalue attached to the distinguished coordinate.
    pub anchor: usize,
    /// Every eigenvalue over the anchor; empty when the anchor vanishes.
    pub ratios: Vec<RatFunc>,
    /// All ratios other than the anchor's own are integers.
    pub integral: bool,
}

impl LocalIndex {
    fn build(eigenvalues: Vec<RatFunc>, anchor: usize) -> Self {
        let a = &eigenvalues[anchor];
        let ratios: Vec<RatFunc> = if a.is_zero() {
            Vec::new()
        } else {
            eigenvalues.iter().map(|e| e.checked_div(a).expect("nonzero anchor")).collect()
        };
        let integral = !ratios.is_empty()
            && ratios
                .iter()
                .all(|r| r.as_constant().is_some_and(|c| c.is_integer()));
        LocalIndex { eigenvalues, anchor, ratios, integral }
    }

    /// The continued ratio: ratios with the anchor's own entry dropped.
    pub fn continued_ratio(&self) -> Vec<RatFunc> {
        self.ratios
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != self.anchor)
            .map(|(_, r)| r.clone())
            .collect()
    }

    /// True when every ratio shares the anchor's sign (the blow-up-only case).
    pub fn same_sign(&self) -> bool {
        self.continued_ratio()
            .iter()
            .all(|r| r.as_constant().is_some_and(|c| !c.is_negative()))
    }

    /// What the index says about resolving the point.
    pub fn status(&self) -> &'static str {
        if self.ratios.is_empty() {
            "degenerate anchor"
        } else if !self.integral {
            "non-integral ratios"
        } else if self.same_sign() {
            "blow-ups suffice"
        } else {
            "blow-down required, out of scope"
        }
    }

    pub fn specialize(&self, bindings: &[(Var, RatFunc)]) -> Result<LocalIndex, ResolveError> {
        let e = self
            .eigenvalues
            .iter()
            .map(|x| x.substitute(bindings))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LocalIndex::build(e, self.anchor))
    }

    pub fn rendered(&self) -> Vec<String> {
        self.eigenvalues.iter().map(render).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out {
            eigenvalues: Vec<String>,
            ratios: Vec<String>,
            continued_ratio: Vec<String>,
            integral: bool,
            same_sign: bool,
            status: &'static str,
        }
        serde_json::to_value(Out {
            eigenvalues: self.rendered(),
            ratios: self.ratios.iter().map(render).collect(),
            continued_ratio: self.continued_ratio().iter().map(render).collect(),
            integral: self.integral,
            same_sign: self.same_sign(),
            status: self.status(),
        })
        .expect("serialisable")
    }
}

pub type Matrix = Vec<Vec<RatFunc>>;

fn check_shape(field: &VectorField, locus: &SingularLocus) -> Result<(), ResolveError> {
    if field.vars() != locus.vars.as_slice() {
        return Err(ResolveError::Shape { locus: locus.vars.clone(), field: field.vars().to_vec() });
    }
    Ok(())
}

/// `dist * rhs`, componentwise, required to be polynomial in the chart.
pub fn normal_form(field: &VectorField, dist: Var) -> Result<Vec<RatFunc>, ResolveError> {
    let x = RatFunc::var(dist);
    field
        .components()
        .map(|(var, r)| {
            let f = &x * r;
            if field.vars().iter().any(|&w| f.denom().contains_var(w)) {
                return Err(ResolveError::NotNormalForm { var, dist, expr: render(&f) });
            }
            Ok(f)
        })
        .collect()
}

pub fn verify_accessible(field: &VectorField, locus: &SingularLocus) -> Result<bool, ResolveError> {
    check_shape(field, locus)?;
    let d = locus.dist_index();
    if !locus.point[d].is_zero() {
        return Ok(false);
    }
    let f = normal_form(field, locus.dist)?;
    let at = locus.bindings();
    for (k, g) in f.iter().enumerate() {
        if k != d && !g.substitute(&at)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Jacobian of the normal form, evaluated along the locus.
pub fn linear_part(field: &VectorField, locus: &SingularLocus) -> Result<Matrix, ResolveError> {
    check_shape(field, locus)?;
    let f = normal_form(field, locus.dist)?;
    let at = locus.bindings();
    f.iter()
        .map(|g| {
            field
                .vars()
                .iter()
                .map(|&w| Ok(g.derivative(w).substitute(&at)?))
                .collect::<Result<Vec<_>, ResolveError>>()
        })
        .collect()
}

pub fn local_index(field: &VectorField, locus: &SingularLocus) -> Result<LocalIndex, ResolveError> {
    let a = linear_part(field, locus)?;
    index_of_matrix(&a, locus.dist_index())
}

/// Constant matrix of the reduced linear system at `t = t0`.
pub fn alpha_test(field: &VectorField, locus: &SingularLocus, t0: &BigRational) -> Result<Vec<Vec<BigRational>>, ResolveError> {
    alpha_test_at(field, locus, &[(v("t"), RatFunc::constant(t0.clone()))])
}

/// As [`alpha_test`], with extra bindings (for instance a value of `a2`).
pub fn alpha_test_at(
    field: &VectorField,
    locus: &SingularLocus,
    bindings: &[(Var, RatFunc)],
) -> Result<Vec<Vec<BigRational>>, ResolveError> {
    let a = linear_part(field, locus)?;
    a.iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let s = e.substitute(bindings)?;
                    s.as_constant().ok_or_else(|| ResolveError::NonConstant(render(&s)))
                })
                .collect()
        })
        .collect()
}

fn is_triangular(a: &Matrix) -> bool {
    let n = a.len();
    let lower = (0..n).all(|i| (i + 1..n).all(|j| a[i][j].is_zero()));
    let upper = (0..n).all(|i| (0..i).all(|j| a[i][j].is_zero()));
    lower || upper
}

/// Eigenvalues of `a` ordered as the normal form lists them: the diagonal
/// when `a` is triangular, otherwise the anchor first and the rest by size.
pub fn index_of_matrix(a: &Matrix, dist: usize) -> Result<LocalIndex, ResolveError> {
    let n = a.len();
    if is_triangular(a) {
        return Ok(LocalIndex::build((0..n).map(|i| a[i][i].clone()).collect(), dist));
    }
    let mut roots = eigenvalues(a)?;
    let decoupled = (0..n).all(|j| j == dist || a[dist][j].is_zero())
        || (0..n).all(|i| i == dist || a[i][dist].is_zero());
    let head = if decoupled {
        let k = roots.iter().position(|r| *r == a[dist][dist]).expect("decoupled entry is a root");
        roots.remove(k)
    } else {
        roots.remove(0)
    };
    if roots.iter().all(|r| r.as_constant().is_some()) {
        roots.sort_by(|x, y| {
            let (x, y) = (x.as_constant().expect("constant"), y.as_constant().expect("constant"));
            x.abs().cmp(&y.abs()).then(x.cmp(&y))
        });
    }
    let mut all = vec![head];
    all.extend(roots);
    Ok(LocalIndex::build(all, 0))
}

/// Coefficients `c[0..=n]` of `det(lam I - a)` by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &Matrix) -> Vec<RatFunc> {
    let n = a.len();
    let mul = |x: &Matrix, y: &Matrix| -> Matrix {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(RatFunc::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut c = vec![RatFunc::zero(); n + 1];
    c[n] = RatFunc::one();
    let mut m: Matrix = vec![vec![RatFunc::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c[n - k + 1];
        }
        let am = mul(a, &next);
        let tr = (0..n).fold(RatFunc::zero(), |s, i| s + &am[i][i]);
        c[n - k] = -tr.scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
        m = next;
    }
    c
}

fn render_charpoly(c: &[RatFunc]) -> String {
    let lam = RatFunc::var(v("lam"));
    let p = c
        .iter()
        .enumerate()
        .fold(RatFunc::zero(), |s, (k, ck)| s + ck * &lam.pow(k as i32).expect("power"));
    render(&p)
}

fn horner(c: &[RatFunc], x: &RatFunc) -> RatFunc {
    c.iter().rev().fold(RatFunc::zero(), |s, ck| &(&s * x) + ck)
}

fn deflate(c: &[RatFunc], r: &RatFunc) -> Vec<RatFunc> {
    let n = c.len() - 1;
    let mut q = vec![RatFunc::zero(); n];
    let mut carry = RatFunc::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + &(&carry * r);
        q[k - 1] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial with constant coefficients.
fn rational_root_candidates(c: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let qs: Vec<BigRational> = c.iter().map(|x| x.as_constant()).collect::<Option<_>>()?;
    let l = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    let lo = ints.iter().position(|x| !x.is_zero())?;
    let hi = ints.len() - 1;
    let (ps, qd) = (divisors(&ints[lo])?, divisors(&ints[hi])?);
    let mut out = Vec::new();
    for p in &ps {
        for q in &qd {
            let r = BigRational::new(p.clone(), q.clone());
            out.push(RatFunc::constant(r.clone()));
            out.push(RatFunc::constant(-r));
        }
    }
    Some(out)
}

/// Roots of the characteristic polynomial, with multiplicity.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<RatFunc>, ResolveError> {
    let full = characteristic_polynomial(a);
    let mut c = full.clone();
    let mut roots = Vec::new();
    let diag: Vec<RatFunc> = (0..a.len()).map(|i| a[i][i].clone()).collect();
    while c.len() > 1 {
        if c.len() == 2 {
            roots.push(-c[0].checked_div(&c[1])?);
            break;
        }
        let mut pool = vec![RatFunc::zero()];
        pool.extend(diag.iter().cloned());
        pool.extend(rational_root_candidates(&c).unwrap_or_default());
        match pool.into_iter().find(|r| horner(&c, r).is_zero()) {
            Some(r) => {
                c = deflate(&c, &r);
                roots.push(r);
            }
            None => return Err(ResolveError::Irrational(render_charpoly(&full))),
        }
    }
    Ok(roots)
}

pub fn matrix_from_exprs(rows: &[&[&str]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|e| expr(e)).collect()).collect()
}

pub fn render_matrix(a: &Matrix) -> Vec<Vec<String>> {
    a.iter().map(|r| r.iter().map(render).collect()).collect()
}
