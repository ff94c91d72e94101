//! Exact identity checks tying the catalogue systems together.

use serde::Serialize;

use crate::symfield::{expr, render, v, RatFunc};

use super::catalog::{chart, hamiltonian, system, EQ5_DEN, EQ5_NUM};
use super::{pushforward, DynError};

/// One named component of an identity check.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentCheck {
    pub component: String,
    pub residual: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub holds: bool,
    pub components: Vec<ComponentCheck>,
}

impl IdentityReport {
    pub fn new(name: &str, rows: Vec<(String, RatFunc)>) -> Self {
        let components: Vec<ComponentCheck> = rows
            .into_iter()
            .map(|(component, r)| ComponentCheck { component, holds: r.is_zero(), residual: render(&r) })
            .collect();
        IdentityReport {
            name: name.into(),
            holds: components.iter().all(|c| c.holds),
            components,
        }
    }
}

/// Derivatives `H, DH, ..., D^5 H` along the coupled Hamiltonian system.
pub fn hamiltonian_derivatives() -> Result<Vec<RatFunc>, DynError> {
    let field = system("eq3")?;
    let mut out = vec![hamiltonian("H")?.h];
    for _ in 0..5 {
        let next = field.total_derivative(out.last().expect("nonempty"));
        out.push(next);
    }
    Ok(out)
}

/// Checks that `u := H` satisfies the fifth-order equation, with the
/// equation cleared of its denominator. `a2` may be specialised.
pub fn fifth_order_identity_at(a2: Option<&RatFunc>) -> Result<IdentityReport, DynError> {
    let mut ders = hamiltonian_derivatives()?;
    if let Some(a) = a2 {
        let fix = [(v("a2"), a.clone())];
        ders = ders.iter().map(|d| d.substitute(&fix)).collect::<Result<_, _>>()?;
    }
    let mut b: Vec<_> = (1..=4).map(|k| (v(&format!("u{k}")), ders[k].clone())).collect();
    if let Some(a) = a2 {
        b.push((v("a2"), a.clone()));
    }
    let num = expr(EQ5_NUM).substitute(&b)?;
    let den = expr(EQ5_DEN).substitute(&b)?;
    let lhs = ders[5].clone();
    let residual = &(&lhs * &den) - &num;
    let first = &ders[1] - &expr("p2/2");
    Ok(IdentityReport::new(
        "fifth_order_identity",
        vec![("u5*den - num".into(), residual), ("DH - p2/2".into(), first)],
    ))
}

pub fn fifth_order_identity() -> Result<IdentityReport, DynError> {
    fifth_order_identity_at(None)
}

/// Checks that `(q1,p1,q2,p2) = (-q/2, 2w, 2z, 2y)` carries the
/// five-dimensional polynomial system onto the coupled system, with the
/// remaining coordinate obeying the quadrature `dx/dt = y`.
pub fn riccati_correspondence() -> Result<IdentityReport, DynError> {
    let six = system("eq6")?;
    let pushed = pushforward(&six, &chart("riccati")?)?;
    let three = system("eq3")?;
    let mut rows = Vec::new();
    for (var, r) in three.components() {
        let got = pushed.rhs_of(var).ok_or(DynError::MissingComponent(var))?;
        rows.push((format!("d{var}/dt"), got - r));
    }
    let quad = pushed.rhs_of(v("u0")).ok_or(DynError::MissingComponent(v("u0")))?;
    rows.push(("du0/dt - p2/2".into(), quad - &expr("p2/2")));
    let x = v("x");
    let coupled = six
        .components()
        .filter(|&(w, _)| w != x)
        .any(|(_, r)| r.contains_var(x));
    rows.push(("x decoupled".into(), if coupled { RatFunc::one() } else { RatFunc::zero() }));
    Ok(IdentityReport::new("riccati_correspondence", rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifth_order_identity_holds() {
        let r = fifth_order_identity().unwrap();
        assert!(r.holds, "{r:?}");
        let r0 = fifth_order_identity_at(Some(&RatFunc::zero())).unwrap();
        assert!(r0.holds);
    }

    #[test]
    fn riccati_extension() {
        let r = riccati_correspondence().unwrap();
        assert!(r.holds, "{r:?}");
    }
}
