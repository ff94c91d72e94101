use std::fmt;

use num_traits::Zero;

use crate::symfield::{expr, render, v, Poly, RatFunc, Var};

use super::{DynError, VectorField};

/// A birational change of variables `dst = forward(src)`, with an optional
/// explicit inverse `src = inverse(dst)` and an action on the parameter.
#[derive(Clone, PartialEq, Eq)]
pub struct BirationalMap {
    pub name: String,
    pub src_vars: Vec<Var>,
    pub dst_vars: Vec<Var>,
    /// Aligned with `dst_vars`, written in `src_vars`.
    pub forward: Vec<RatFunc>,
    /// Aligned with `src_vars`, written in `dst_vars` and the image parameter.
    pub inverse: Option<Vec<RatFunc>>,
    /// Image of `a2`; `None` means the parameter is fixed.
    pub param_action: Option<RatFunc>,
}

fn names(list: &[&str]) -> Vec<Var> {
    list.iter().map(|n| v(n)).collect()
}

impl BirationalMap {
    pub fn new(
        name: &str,
        src_vars: Vec<Var>,
        dst_vars: Vec<Var>,
        forward: Vec<RatFunc>,
    ) -> Result<Self, DynError> {
        if forward.len() != dst_vars.len() || src_vars.len() != dst_vars.len() {
            return Err(DynError::Shape(format!("map `{name}` is not square")));
        }
        Ok(BirationalMap {
            name: name.into(),
            src_vars,
            dst_vars,
            forward,
            inverse: None,
            param_action: None,
        })
    }

    /// Catalogue constructor: `dst = expr` rows, source variables listed separately.
    pub fn from_exprs(name: &str, src: &[&str], rows: &[(&str, &str)]) -> Self {
        let dst = rows.iter().map(|(n, _)| v(n)).collect();
        let fwd = rows.iter().map(|(_, e)| expr(e)).collect();
        BirationalMap::new(name, names(src), dst, fwd).expect("catalogue map")
    }

    /// A map from a variable list to itself (generators, symmetries).
    pub fn endo(name: &str, vars: &[&str], images: &[&str]) -> Self {
        let vars_v = names(vars);
        let fwd = images.iter().map(|e| expr(e)).collect();
        BirationalMap::new(name, vars_v.clone(), vars_v, fwd).expect("catalogue map")
    }

    pub fn identity(vars: &[Var]) -> Self {
        let fwd = vars.iter().map(|&w| RatFunc::var(w)).collect();
        let mut m = BirationalMap::new("id", vars.to_vec(), vars.to_vec(), fwd).expect("square");
        m.inverse = Some(vars.iter().map(|&w| RatFunc::var(w)).collect());
        m
    }

    pub fn with_param_action(mut self, a2_image: &str) -> Self {
        self.param_action = Some(expr(a2_image));
        self
    }

    pub fn with_inverse(mut self, inverse: Vec<RatFunc>) -> Self {
        self.inverse = Some(inverse);
        self
    }

    pub fn forward_of(&self, dst: Var) -> Option<&RatFunc> {
        self.dst_vars.iter().position(|&w| w == dst).map(|k| &self.forward[k])
    }

    pub fn inverse_of(&self, src: Var) -> Option<&RatFunc> {
        let inv = self.inverse.as_ref()?;
        self.src_vars.iter().position(|&w| w == src).map(|k| &inv[k])
    }

    /// Bindings `src_var -> forward` suitable for substitution when the
    /// map is an endomorphism (same variable list on both sides).
    pub fn forward_bindings(&self) -> Vec<(Var, RatFunc)> {
        self.dst_vars.iter().copied().zip(self.forward.iter().cloned()).collect()
    }

    pub fn inverse_bindings(&self) -> Option<Vec<(Var, RatFunc)>> {
        let inv = self.inverse.as_ref()?;
        Some(self.src_vars.iter().copied().zip(inv.iter().cloned()).collect())
    }

    /// Image of `a2` (identity when the map fixes the parameter).
    pub fn a2_image(&self) -> RatFunc {
        self.param_action.clone().unwrap_or_else(|| RatFunc::var(v("a2")))
    }

    /// Writes `f(src)` in destination coordinates using the inverse.
    pub fn push_function(&self, f: &RatFunc) -> Result<RatFunc, DynError> {
        let mut b = self
            .inverse_bindings()
            .ok_or_else(|| DynError::InverseUnavailable(self.name.clone()))?;
        if let Some(a) = self.inverse_param()? {
            b.push((v("a2"), a));
        }
        Ok(f.substitute(&b)?)
    }

    /// Writes `g(dst)` in source coordinates using the forward map.
    pub fn pull_function(&self, g: &RatFunc) -> Result<RatFunc, DynError> {
        let mut b: Vec<(Var, RatFunc)> =
            self.dst_vars.iter().copied().zip(self.forward.iter().cloned()).collect();
        if let Some(a) = &self.param_action {
            b.push((v("a2"), a.clone()));
        }
        Ok(g.substitute(&b)?)
    }

    /// Inverse of an affine parameter action `a2 -> c + s*a2`.
    pub fn inverse_param(&self) -> Result<Option<RatFunc>, DynError> {
        let Some(act) = &self.param_action else { return Ok(None) };
        let a2 = v("a2");
        let slope = act.derivative(a2);
        let Some(s) = slope.as_constant().filter(|s| !s.is_zero()) else {
            return Err(DynError::Shape(format!("parameter action of `{}` is not affine", self.name)));
        };
        let c = act.substitute(&[(a2, RatFunc::zero())])?;
        if c.contains_var(a2) {
            return Err(DynError::Shape(format!("parameter action of `{}` is not affine", self.name)));
        }
        let inv = (&RatFunc::var(a2) - &c).scale(&s.recip());
        Ok(Some(inv))
    }

    /// Checks `forward(inverse(dst)) = dst` and `inverse(forward(src)) = src` exactly.
    pub fn check_round_trip(&self) -> Result<(), DynError> {
        let inv = self
            .inverse
            .as_ref()
            .ok_or_else(|| DynError::InverseUnavailable(self.name.clone()))?;
        for (dst, f) in self.dst_vars.iter().zip(&self.forward) {
            if self.push_function(f)? != RatFunc::var(*dst) {
                return Err(DynError::RoundTrip { map: self.name.clone(), var: *dst });
            }
        }
        for (src, g) in self.src_vars.iter().zip(inv) {
            if self.pull_function(g)? != RatFunc::var(*src) {
                return Err(DynError::RoundTrip { map: self.name.clone(), var: *src });
            }
        }
        Ok(())
    }

    /// Composite `other ∘ self`: first this map, then `other`.
    pub fn then(&self, other: &BirationalMap) -> Result<BirationalMap, DynError> {
        if other.src_vars.len() != self.dst_vars.len()
            || !other.src_vars.iter().all(|w| self.dst_vars.contains(w))
        {
            return Err(DynError::Shape(format!(
                "cannot follow `{}` by `{}`",
                self.name, other.name
            )));
        }
        let fwd = other
            .forward
            .iter()
            .map(|f| self.pull_function(f))
            .collect::<Result<Vec<_>, _>>()?;
        let inverse = match (&self.inverse, &other.inverse) {
            (Some(_), Some(_)) => Some(
                self.inverse
                    .as_ref()
                    .expect("checked")
                    .iter()
                    .map(|g| other.push_function(g))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            _ => None,
        };
        let param_action = match (&self.param_action, &other.param_action) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(b.substitute(&[(v("a2"), a.clone())])?),
        };
        Ok(BirationalMap {
            name: format!("{}.{}", self.name, other.name),
            src_vars: self.src_vars.clone(),
            dst_vars: other.dst_vars.clone(),
            forward: fwd,
            inverse,
            param_action,
        })
    }
}

impl fmt::Display for BirationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.name)?;
        for (d, e) in self.dst_vars.iter().zip(&self.forward) {
            writeln!(f, "  {d} = {}", render(e))?;
        }
        if let Some(a) = &self.param_action {
            writeln!(f, "  a2 -> {}", render(a))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BirationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Solves `u = (A s + B)/(C s + D)` for `s`, when the right side is Möbius in `s`.
fn solve_mobius(f: &RatFunc, s: Var, u: &RatFunc) -> Option<RatFunc> {
    let (n, d) = (f.numer(), f.denom());
    if n.degree_in(s) > 1 || d.degree_in(s) > 1 {
        return None;
    }
    let split = |p: &Poly| -> (RatFunc, RatFunc) {
        let cs = p.coefficients_in(s);
        let get = |k: usize| {
            cs.get(k).map_or_else(RatFunc::zero, |c| RatFunc::new(c.clone(), Poly::one()).expect("unit"))
        };
        (get(1), get(0))
    };
    let (a, b) = split(n);
    let (c, dd) = split(d);
    if (&(&a * &dd) - &(&b * &c)).is_zero() {
        return None;
    }
    // s = (B - D u)/(C u - A)
    let num = &b - &(&dd * u);
    let den = &(&c * u) - &a;
    num.checked_div(&den).ok()
}

/// Installs the inverse of a map that can be undone one variable at a time.
pub fn invert_triangular(m: &BirationalMap) -> Result<BirationalMap, DynError> {
    let mut solved: Vec<Option<RatFunc>> = vec![None; m.src_vars.len()];
    let mut used = vec![false; m.dst_vars.len()];
    loop {
        let known: Vec<(Var, RatFunc)> = m
            .src_vars
            .iter()
            .zip(&solved)
            .filter_map(|(w, s)| s.clone().map(|e| (*w, e)))
            .collect();
        if known.len() == m.src_vars.len() {
            break;
        }
        let mut progress = false;
        for (k, f) in m.forward.iter().enumerate() {
            if used[k] {
                continue;
            }
            let g = f.substitute(&known)?;
            let unknown: Vec<usize> = (0..m.src_vars.len())
                .filter(|&j| solved[j].is_none() && g.contains_var(m.src_vars[j]))
                .collect();
            if unknown.len() != 1 {
                continue;
            }
            let j = unknown[0];
            if let Some(sol) = solve_mobius(&g, m.src_vars[j], &RatFunc::var(m.dst_vars[k])) {
                solved[j] = Some(sol);
                used[k] = true;
                progress = true;
                break;
            }
        }
        if !progress {
            let stuck = m
                .src_vars
                .iter()
                .zip(&solved)
                .find(|(_, s)| s.is_none())
                .map(|(w, _)| *w)
                .expect("some variable unsolved");
            return Err(DynError::NonTriangular { map: m.name.clone(), var: stuck });
        }
    }
    let mut rows: Vec<RatFunc> = solved.into_iter().map(|s| s.expect("all solved")).collect();
    if let Some(a) = m.inverse_param()? {
        let b = [(v("a2"), a)];
        rows = rows.iter().map(|r| r.substitute(&b)).collect::<Result<_, _>>()?;
    }
    let mut out = m.clone();
    out.inverse = Some(rows);
    out.check_round_trip()?;
    Ok(out)
}

/// Transports `field` through `m`: for each destination variable `u`,
/// `du/dt = D(forward(u))` rewritten in destination coordinates.
pub fn pushforward(field: &VectorField, m: &BirationalMap) -> Result<VectorField, DynError> {
    if m.inverse.is_none() {
        return Err(DynError::InverseUnavailable(m.name.clone()));
    }
    let rhs = m
        .forward
        .iter()
        .map(|f| m.push_function(&field.total_derivative(f)))
        .collect::<Result<Vec<_>, _>>()?;
    VectorField::new(m.dst_vars.clone(), rhs, field.params().to_vec())
}
