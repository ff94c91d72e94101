use std::fmt;

use serde::Serialize;

use crate::symfield::{render, v, RatFunc, Var};

use super::DynError;

/// A first-order system `d(var)/dt = rhs(var)`; right-hand sides may involve
/// the time variable and the parameters.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    vars: Vec<Var>,
    rhs: Vec<RatFunc>,
    time: Var,
    params: Vec<Var>,
}

impl VectorField {
    pub fn new(vars: Vec<Var>, rhs: Vec<RatFunc>, params: Vec<Var>) -> Result<Self, DynError> {
        if vars.len() != rhs.len() {
            return Err(DynError::Shape(format!(
                "{} variables but {} right-hand sides",
                vars.len(),
                rhs.len()
            )));
        }
        for (k, a) in vars.iter().enumerate() {
            if vars[..k].contains(a) {
                return Err(DynError::DuplicateVariable(*a));
            }
        }
        Ok(VectorField { vars, rhs, time: v("t"), params })
    }

    /// Catalogue constructor from `(name, expression)` pairs.
    pub fn from_exprs(pairs: &[(&str, &str)], params: &[&str]) -> Self {
        let vars = pairs.iter().map(|(n, _)| v(n)).collect();
        let rhs = pairs.iter().map(|(_, e)| crate::symfield::expr(e)).collect();
        VectorField::new(vars, rhs, params.iter().map(|p| v(p)).collect()).expect("catalogue system")
    }

    pub fn zero(vars: Vec<Var>) -> Self {
        let rhs = vec![RatFunc::zero(); vars.len()];
        VectorField::new(vars, rhs, Vec::new()).expect("distinct variables")
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn rhs(&self) -> &[RatFunc] {
        &self.rhs
    }

    pub fn time(&self) -> Var {
        self.time
    }

    pub fn params(&self) -> &[Var] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn rhs_of(&self, var: Var) -> Option<&RatFunc> {
        self.vars.iter().position(|&w| w == var).map(|k| &self.rhs[k])
    }

    pub fn components(&self) -> impl Iterator<Item = (Var, &RatFunc)> {
        self.vars.iter().copied().zip(self.rhs.iter())
    }

    /// `D f = df/dt + sum_v rhs(v) * df/dv`.
    pub fn total_derivative(&self, f: &RatFunc) -> RatFunc {
        let mut acc = f.derivative(self.time);
        for (var, r) in self.components() {
            if f.contains_var(var) && !r.is_zero() {
                acc = &acc + &(r * &f.derivative(var));
            }
        }
        acc
    }

    /// Substitutes into every right-hand side (used for parameter specialisation).
    pub fn substitute(&self, bindings: &[(Var, RatFunc)]) -> Result<VectorField, DynError> {
        let rhs = self
            .rhs
            .iter()
            .map(|r| r.substitute(bindings))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorField { rhs, ..self.clone() })
    }

    /// Renames state variables (and their occurrences) through `renaming`.
    pub fn rename(&self, renaming: &[(Var, Var)]) -> VectorField {
        let bindings: Vec<(Var, RatFunc)> =
            renaming.iter().map(|&(a, b)| (a, RatFunc::var(b))).collect();
        let vars = self
            .vars
            .iter()
            .map(|w| renaming.iter().find(|(a, _)| a == w).map_or(*w, |&(_, b)| b))
            .collect();
        let rhs = self
            .rhs
            .iter()
            .map(|r| r.substitute(&bindings).expect("renaming keeps denominators"))
            .collect();
        VectorField { vars, rhs, ..self.clone() }
    }

    /// Direct sum of two fields in disjoint variables.
    pub fn direct_sum(&self, other: &VectorField) -> Result<VectorField, DynError> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        let mut rhs = self.rhs.clone();
        rhs.extend(other.rhs.iter().cloned());
        let mut params = self.params.clone();
        params.extend(other.params.iter().filter(|p| !self.params.contains(p)));
        VectorField::new(vars, rhs, params)
    }

    /// Component-wise difference against another field on the same variables,
    /// taken in this field's variable order.
    pub fn residuals(&self, other: &VectorField) -> Result<Vec<(Var, RatFunc)>, DynError> {
        let mut out = Vec::with_capacity(self.dim());
        for (var, r) in self.components() {
            let o = other.rhs_of(var).ok_or(DynError::MissingComponent(var))?;
            out.push((var, r - o));
        }
        if other.dim() != self.dim() {
            return Err(DynError::Shape("fields have different dimensions".into()));
        }
        Ok(out)
    }

    /// Same system up to the order in which variables are listed.
    pub fn same_system(&self, other: &VectorField) -> bool {
        self.residuals(other).is_ok_and(|r| r.iter().all(|(_, d)| d.is_zero()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Row {
            var: String,
            rhs: String,
        }
        let rows: Vec<Row> = self
            .components()
            .map(|(var, r)| Row { var: var.to_string(), rhs: render(r) })
            .collect();
        serde_json::to_value(rows).expect("serialisable")
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (var, r) in self.components() {
            writeln!(f, "d{var}/dt = {r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Hamiltonian with its canonical `(position, momentum)` pairs.
#[derive(Clone, Debug)]
pub struct HamiltonianSpec {
    pub h: RatFunc,
    pub pairs: Vec<(Var, Var)>,
    pub params: Vec<Var>,
}

impl HamiltonianSpec {
    pub fn new(h: RatFunc, pairs: &[(&str, &str)], params: &[&str]) -> Self {
        HamiltonianSpec {
            h,
            pairs: pairs.iter().map(|(q, p)| (v(q), v(p))).collect(),
            params: params.iter().map(|p| v(p)).collect(),
        }
    }
}

/// Hamilton's equations `dq/dt = dH/dp`, `dp/dt = -dH/dq`, listed pair by pair.
pub fn hamiltonian_field(spec: &HamiltonianSpec) -> Result<VectorField, DynError> {
    let mut vars = Vec::with_capacity(2 * spec.pairs.len());
    let mut rhs = Vec::with_capacity(2 * spec.pairs.len());
    for &(q, p) in &spec.pairs {
        for w in [q, p] {
            if vars.contains(&w) {
                return Err(DynError::DuplicateVariable(w));
            }
        }
        vars.push(q);
        rhs.push(spec.h.derivative(p));
        vars.push(p);
        rhs.push(-spec.h.derivative(q));
    }
    VectorField::new(vars, rhs, spec.params.clone())
}

/// `D f` along `field`.
pub fn total_derivative(f: &RatFunc, field: &VectorField) -> RatFunc {
    field.total_derivative(f)
}

/// Outcome of a polynomiality check.
#[derive(Clone, Debug, Serialize)]
pub struct PolynomialityReport {
    pub polynomial: bool,
    /// `(component, denominator)` for every non-polynomial entry.
    pub offending: Vec<(String, String)>,
}

pub fn is_polynomial(f: &RatFunc) -> PolynomialityReport {
    let polynomial = f.is_polynomial();
    let offending = if polynomial {
        Vec::new()
    } else {
        vec![("expression".into(), crate::symfield::render_poly(f.denom()))]
    };
    PolynomialityReport { polynomial, offending }
}

pub fn is_polynomial_field(field: &VectorField) -> PolynomialityReport {
    let offending: Vec<(String, String)> = field
        .components()
        .filter(|(_, r)| !r.is_polynomial())
        .map(|(var, r)| (var.to_string(), crate::symfield::render_poly(r.denom())))
        .collect();
    PolynomialityReport { polynomial: offending.is_empty(), offending }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::expr;

    fn h_eq4() -> HamiltonianSpec {
        HamiltonianSpec::new(
            expr("q1^2*p1 + (1/2 - a2)*q1 - p2^3 + (t/2)*p2 - q2^2/2 + p1*p2"),
            &[("q1", "p1"), ("q2", "p2")],
            &["a2"],
        )
    }

    #[test]
    fn hamilton_equations_of_the_coupled_system() {
        let f = hamiltonian_field(&h_eq4()).unwrap();
        assert_eq!(f.rhs_of(v("q1")).unwrap(), &expr("q1^2 + p2"));
        assert_eq!(f.rhs_of(v("p1")).unwrap(), &expr("-2*q1*p1 + a2 - 1/2"));
        assert_eq!(f.rhs_of(v("q2")).unwrap(), &expr("-3*p2^2 + p1 + t/2"));
        assert_eq!(f.rhs_of(v("p2")).unwrap(), &expr("q2"));
    }

    #[test]
    fn zero_hamiltonian_gives_zero_field() {
        let spec = HamiltonianSpec::new(RatFunc::zero(), &[("q1", "p1")], &[]);
        let f = hamiltonian_field(&spec).unwrap();
        assert!(f.rhs().iter().all(|r| r.is_zero()));
    }

    #[test]
    fn repeated_variable_is_rejected() {
        let spec = HamiltonianSpec::new(expr("q1*p1"), &[("q1", "p1"), ("p1", "q2")], &[]);
        assert_eq!(hamiltonian_field(&spec), Err(DynError::DuplicateVariable(v("p1"))));
    }

    #[test]
    fn total_derivative_examples() {
        let spec = h_eq4();
        let f = hamiltonian_field(&spec).unwrap();
        assert_eq!(total_derivative(&expr("p2"), &f), expr("q2"));
        assert_eq!(total_derivative(&spec.h, &f), expr("p2/2"));
        let k = HamiltonianSpec::new(expr("q1^2*p1 + (1/2 - a2)*q1"), &[("q1", "p1")], &["a2"]);
        let kf = hamiltonian_field(&k).unwrap();
        assert!(total_derivative(&k.h, &kf).is_zero());
    }

    #[test]
    fn polynomiality_reports_offenders() {
        assert!(!is_polynomial(&expr("1/q1")).polynomial);
        assert!(is_polynomial(&expr("q1^2 - t")).polynomial);
    }
}
