//! The extended affine Weyl group of type A1 acting on the coupled system,
//! its companion form and the five-dimensional polynomial system.
//!
//! Generators are stored as words in elementary maps. Realising a word
//! folds it one factor at a time, so cancellations such as `pi.pi` are
//! reduced before the next factor is substituted.

mod catalog;
mod errata;
mod relations;

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dynsys::identities::IdentityReport;
use crate::dynsys::{BirationalMap, DynError, VectorField};
use crate::symfield::{render, v, RatFunc, SymError, Var};

pub use catalog::{canonical_names, generator, names, printed_pairs, SYSTEMS};
pub use errata::{errata, errata_all, Erratum};
pub use relations::{group_relations, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("unknown system `{0}` for generators")]
    UnknownSystem(String),
    #[error("no generator `{0}` on `{1}`")]
    UnknownGenerator(String, String),
    #[error("cannot compose generators of `{0}` and `{1}`")]
    MixedSystems(String, String),
    #[error("empty word")]
    EmptyWord,
    #[error("series not terminated after {cap} brackets; last term {last}")]
    SeriesCap { cap: usize, last: String },
    #[error("parameter action `{0}` is not affine")]
    NotAffine(String),
    #[error(transparent)]
    Dyn(#[from] DynError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// A Bäcklund transformation of one catalogue system.
#[derive(Clone)]
pub struct Generator {
    pub name: String,
    pub system_id: String,
    factors: Vec<BirationalMap>,
    param_action: RatFunc,
    realized: OnceLock<BirationalMap>,
}

impl Generator {
    pub fn elementary(name: &str, system_id: &str, map: BirationalMap) -> Self {
        let param_action = map.a2_image();
        Generator {
            name: name.into(),
            system_id: system_id.into(),
            factors: vec![map],
            param_action,
            realized: OnceLock::new(),
        }
    }

    /// Image of `a2`.
    pub fn param_action(&self) -> &RatFunc {
        &self.param_action
    }

    pub fn vars(&self) -> &[Var] {
        &self.factors[0].src_vars
    }

    /// Elementary maps in application order.
    pub fn factors(&self) -> &[BirationalMap] {
        &self.factors
    }

    /// The composite as a single rational map (computed once).
    pub fn map(&self) -> Result<&BirationalMap, WeylError> {
        if let Some(m) = self.realized.get() {
            return Ok(m);
        }
        // Substituting the small elementary rows into the accumulated map
        // is far cheaper than the other way round.
        let (last, rest) = self.factors.split_last().expect("nonempty word");
        let mut acc = last.clone();
        for f in rest.iter().rev() {
            acc = f.then(&acc)?;
        }
        acc.name = format!("{}:{}", self.system_id, self.name);
        let _ = self.realized.set(acc);
        Ok(self.realized.get().expect("just set"))
    }

    pub fn forward_of(&self, var: Var) -> Result<RatFunc, WeylError> {
        let m = self.map()?;
        m.forward_of(var)
            .cloned()
            .ok_or(WeylError::Dyn(DynError::MissingComponent(var)))
    }

    /// True when the realised map and its parameter action are the identity.
    pub fn is_identity(&self) -> Result<bool, WeylError> {
        if self.param_action != RatFunc::var(v("a2")) {
            return Ok(false);
        }
        let m = self.map()?;
        Ok(m.dst_vars.iter().zip(&m.forward).all(|(w, f)| *f == RatFunc::var(*w)))
    }

    /// Applies the word to `k` copies of itself.
    pub fn power(&self, k: usize) -> Result<Generator, WeylError> {
        if k == 0 {
            let id = BirationalMap::identity(self.vars());
            return Ok(Generator::elementary("id", &self.system_id, id));
        }
        let word = vec![self.clone(); k];
        let mut g = compose(&word)?;
        g.name = format!("{}^{k}", self.name);
        Ok(g)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<&str> = self.factors.iter().map(|m| m.name.as_str()).collect();
        write!(f, "{}[{}] a2 -> {}", self.name, word.join(" "), render(&self.param_action))
    }
}

/// Left-to-right composition: the first generator listed acts first.
pub fn compose(word: &[Generator]) -> Result<Generator, WeylError> {
    let first = word.first().ok_or(WeylError::EmptyWord)?;
    let a2 = v("a2");
    let mut factors = Vec::new();
    let mut param = RatFunc::var(a2);
    for g in word {
        if g.system_id != first.system_id {
            return Err(WeylError::MixedSystems(first.system_id.clone(), g.system_id.clone()));
        }
        factors.extend(g.factors.iter().cloned());
        param = g.param_action.substitute(&[(a2, param)])?;
    }
    let name = word.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(".");
    Ok(Generator {
        name,
        system_id: first.system_id.clone(),
        factors,
        param_action: param,
        realized: OnceLock::new(),
    })
}

/// Canonical pairs of the coupled system.
pub const CANONICAL_PAIRS: [(&str, &str); 2] = [("q1", "p1"), ("q2", "p2")];

/// `{f,g} = sum_i (df/dp_i dg/dq_i - df/dq_i dg/dp_i)`, so `{p1,q1} = 1`.
pub fn poisson_bracket(f: &RatFunc, g: &RatFunc) -> RatFunc {
    poisson_bracket_in(f, g, &CANONICAL_PAIRS)
}

pub fn poisson_bracket_in(f: &RatFunc, g: &RatFunc, pairs: &[(&str, &str)]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (q, p) in pairs {
        let (q, p) = (v(q), v(p));
        let a = &f.derivative(p) * &g.derivative(q);
        let b = &f.derivative(q) * &g.derivative(p);
        acc = &acc + &(&a - &b);
    }
    acc
}

/// `g + (alpha/f){f,g} + (alpha/f)^2/2! {f,{f,g}} + ...`, summed until the
/// iterated bracket vanishes.
pub fn backlund_series(f: &RatFunc, alpha: &RatFunc, g: &RatFunc, cap: usize) -> Result<RatFunc, WeylError> {
    let ratio = alpha.checked_div(f)?;
    let mut sum = g.clone();
    let mut term = g.clone();
    let mut weight = RatFunc::one();
    for k in 1..=cap {
        term = poisson_bracket(f, &term);
        if term.is_zero() {
            return Ok(sum);
        }
        weight = (&weight * &ratio).scale(&BigRational::new(1.into(), (k as i64).into()));
        sum = &sum + &(&weight * &term);
    }
    if poisson_bracket(f, &term).is_zero() {
        return Ok(sum);
    }
    Err(WeylError::SeriesCap { cap, last: render(&term) })
}

/// Simple-root variables `alpha0 = 1/2 - a2`, `alpha1 = 1/2 + a2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVars {
    pub alpha0: RatFunc,
    pub alpha1: RatFunc,
}

impl Default for RootVars {
    fn default() -> Self {
        RootVars {
            alpha0: crate::symfield::expr("1/2 - a2"),
            alpha1: crate::symfield::expr("1/2 + a2"),
        }
    }
}

impl RootVars {
    pub fn sum(&self) -> RatFunc {
        &self.alpha0 + &self.alpha1
    }

    /// Root variables after the parameter moves under `gen`.
    pub fn transformed(&self, gen: &Generator) -> Result<RootVars, WeylError> {
        let b = [(v("a2"), gen.param_action.clone())];
        Ok(RootVars { alpha0: self.alpha0.substitute(&b)?, alpha1: self.alpha1.substitute(&b)? })
    }
}

/// Linear action on `(alpha0, alpha1)`, written homogeneously using
/// `alpha0 + alpha1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootAction {
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: [[BigRational; 2]; 2],
}

fn ser_matrix<S: serde::Serializer>(m: &[[BigRational; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    rows.serialize(s)
}

impl RootAction {
    pub fn apply(&self, a: &[BigRational; 2]) -> [BigRational; 2] {
        let m = &self.matrix;
        [&m[0][0] * &a[0] + &m[0][1] * &a[1], &m[1][0] * &a[0] + &m[1][1] * &a[1]]
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &RootAction) -> RootAction {
        let (a, b) = (&next.matrix, &self.matrix);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        RootAction { matrix: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn is_identity(&self) -> bool {
        let m = &self.matrix;
        m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero() && m[1][0].is_zero()
    }

    /// Column sums equal one exactly when `alpha0 + alpha1` is fixed.
    pub fn preserves_sum(&self) -> bool {
        let m = &self.matrix;
        (&m[0][0] + &m[1][0]).is_one() && (&m[0][1] + &m[1][1]).is_one()
    }
}

pub fn root_action(gen: &Generator) -> Result<RootAction, WeylError> {
    let a2 = v("a2");
    let act = gen.param_action();
    let not_affine = || WeylError::NotAffine(render(act));
    let k = act.derivative(a2).as_constant().ok_or_else(not_affine)?;
    let c = act.substitute(&[(a2, RatFunc::zero())])?.as_constant().ok_or_else(not_affine)?;
    let half = BigRational::new(1.into(), 2.into());
    let khalf = &k * &half;
    let lo = &half - &c;
    let hi = &half + &c;
    Ok(RootAction {
        matrix: [[&lo + &khalf, &lo - &khalf], [&hi - &khalf, &hi + &khalf]],
    })
}

/// Residual of `D(g(v)) - rhs(v)(g, g(a2))` for every variable `v`.
pub fn verify_generator(gen: &Generator, field: &VectorField) -> Result<IdentityReport, WeylError> {
    let m = gen.map()?;
    let mut b = m.forward_bindings();
    b.push((v("a2"), gen.param_action.clone()));
    let rows = field
        .components()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(var, rhs)| -> Result<(String, RatFunc), WeylError> {
            let image = m.forward_of(var).ok_or(DynError::MissingComponent(var))?;
            let lhs = field.total_derivative(image);
            let moved = rhs.substitute(&b)?;
            Ok((format!("d{var}/dt"), &lhs - &moved))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdentityReport::new(&format!("{}:{}", gen.system_id, gen.name), rows))
}

/// Symmetry reports for the canonical generators of a system, in catalogue order.
pub fn verify_system(system_id: &str) -> Result<Vec<IdentityReport>, WeylError> {
    let field = crate::dynsys::catalog::system(system_id)?;
    canonical_names(system_id)?
        .par_iter()
        .map(|n| verify_generator(&generator(n, system_id)?, &field))
        .collect()
}

#[cfg(test)]
mod tests;
