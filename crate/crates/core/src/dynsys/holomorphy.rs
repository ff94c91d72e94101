//! Polynomiality of each system and its Hamiltonian in the holomorphy charts.

use serde::Serialize;

use crate::symfield::expr;

use super::catalog::{chart, hamiltonian, system};
use super::{is_polynomial, is_polynomial_field, pushforward, DynError, PolynomialityReport};

/// Systems with a catalogued chart cover.
pub const HOLOMORPHY_SYSTEMS: [&str; 3] = ["eq3", "eq10", "eq6"];

#[derive(Clone, Debug, Serialize)]
pub struct HolomorphyCheck {
    pub system: String,
    pub chart: String,
    /// `"field"` or the Hamiltonian combination pushed into the chart.
    pub subject: String,
    pub polynomial: bool,
    pub offending: Vec<(String, String)>,
}

impl HolomorphyCheck {
    fn new(system: &str, chart: &str, subject: &str, r: PolynomialityReport) -> Self {
        HolomorphyCheck {
            system: system.into(),
            chart: chart.into(),
            subject: subject.into(),
            polynomial: r.polynomial,
            offending: r.offending,
        }
    }
}

/// `(chart, Hamiltonian id, correction)` triples; the correction is
/// subtracted from the Hamiltonian before pushing it into the chart.
type Cover = &'static [(&'static str, Option<(&'static str, &'static str)>)];

fn cover(system_id: &str) -> Result<Cover, DynError> {
    Ok(match system_id {
        "eq3" => &[("holo_A", Some(("H", "0"))), ("holo_B", Some(("H", "q1")))],
        "eq10" => &[("tilde_A", Some(("H_tilde", "0"))), ("tilde_B", Some(("H_tilde", "1/q1")))],
        "eq6" => &[("eq6_r1", None), ("eq6_r2", None), ("eq6_r3", None)],
        _ => return Err(DynError::Unknown(system_id.into())),
    })
}

/// Every field and Hamiltonian check for one system, in catalogue order.
pub fn holomorphy(system_id: &str) -> Result<Vec<HolomorphyCheck>, DynError> {
    let field = system(system_id)?;
    let mut out = Vec::new();
    for &(chart_id, ham) in cover(system_id)? {
        let m = chart(chart_id)?;
        let pushed = pushforward(&field, &m)?;
        out.push(HolomorphyCheck::new(system_id, chart_id, "field", is_polynomial_field(&pushed)));
        if let Some((h_id, shift)) = ham {
            let h = &hamiltonian(h_id)?.h - &expr(shift);
            let subject = if shift == "0" { h_id.to_string() } else { format!("{h_id} - {shift}") };
            out.push(HolomorphyCheck::new(system_id, chart_id, &subject, is_polynomial(&m.push_function(&h)?)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_chart_is_polynomial() {
        for id in HOLOMORPHY_SYSTEMS {
            for c in holomorphy(id).unwrap() {
                assert!(c.polynomial, "{c:?}");
            }
        }
    }

    #[test]
    fn printed_tilde_chart_is_not() {
        let pushed = pushforward(&system("eq10").unwrap(), &chart("tilde_r1_printed").unwrap()).unwrap();
        let r = is_polynomial_field(&pushed);
        assert!(!r.polynomial && !r.offending.is_empty());
    }
}
