//! Rational functions flattened to slot-indexed term lists for fast `f64`
//! evaluation. Coefficients stay exact until this conversion.

use num_traits::ToPrimitive;

use crate::symfield::{render, Poly, RatFunc, Var};

use super::NumError;

#[derive(Clone, Debug)]
struct Terms(Vec<(f64, Vec<(usize, i32)>)>);

impl Terms {
    fn new(p: &Poly, slots: &[Var]) -> Option<Self> {
        let mut out = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let powers = m
                .powers()
                .iter()
                .map(|&(w, e)| slots.iter().position(|&s| s == w).map(|k| (k, e as i32)))
                .collect::<Option<Vec<_>>>()?;
            out.push((c.to_f64().unwrap_or(f64::NAN), powers));
        }
        Some(Terms(out))
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .map(|(c, ps)| ps.iter().fold(*c, |acc, &(k, e)| acc * x[k].powi(e)))
            .sum()
    }
}

/// A rational function over a fixed slot layout.
#[derive(Clone, Debug)]
pub struct Compiled {
    num: Terms,
    den: Option<Terms>,
}

impl Compiled {
    pub fn new(f: &RatFunc, slots: &[Var]) -> Result<Self, NumError> {
        let unbound = || NumError::Unbound(render(f));
        let num = Terms::new(f.numer(), slots).ok_or_else(unbound)?;
        let den = if f.denom().is_one() {
            None
        } else {
            Some(Terms::new(f.denom(), slots).ok_or_else(unbound)?)
        };
        Ok(Compiled { num, den })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let n = self.num.eval(x);
        match &self.den {
            Some(d) => n / d.eval(x),
            None => n,
        }
    }

    /// The denominator alone (1 for polynomials).
    pub fn denominator(&self, x: &[f64]) -> f64 {
        self.den.as_ref().map_or(1.0, |d| d.eval(x))
    }
}

/// A list of compiled functions sharing one slot layout.
#[derive(Clone, Debug)]
pub struct CompiledMap {
    pub slots: Vec<Var>,
    parts: Vec<Compiled>,
}

impl CompiledMap {
    pub fn new(fs: &[RatFunc], slots: &[Var]) -> Result<Self, NumError> {
        let parts = fs.iter().map(|f| Compiled::new(f, slots)).collect::<Result<_, _>>()?;
        Ok(CompiledMap { slots: slots.to_vec(), parts })
    }

    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        for (o, p) in out.iter_mut().zip(&self.parts) {
            *o = p.eval(x);
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.parts.iter().map(|p| p.eval(x)).collect()
    }

    pub fn part(&self, k: usize) -> &Compiled {
        &self.parts[k]
    }
}
