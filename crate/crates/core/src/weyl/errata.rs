//! Printed formulas compared against their canonical constructions.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynsys::catalog::{chart, chart_forward, system};
use crate::dynsys::{is_polynomial_field, pushforward};
use crate::symfield::{render, RatFunc};

use super::{generator, printed_pairs, verify_generator, WeylError, SYSTEMS};

#[derive(Clone, Debug, Serialize)]
pub struct Erratum {
    pub generator: String,
    pub component: String,
    pub printed_expression: String,
    pub canonical_expression: String,
    pub residual: String,
    /// Whether the canonical replacement passes its own exact check.
    pub canonical_verified: bool,
}

fn compare(
    label: &str,
    rows: impl Iterator<Item = (String, RatFunc, RatFunc)>,
    verified: bool,
) -> Vec<Erratum> {
    rows.filter_map(|(component, printed, canonical)| {
        let residual = &printed - &canonical;
        (!residual.is_zero()).then(|| Erratum {
            generator: label.into(),
            component,
            printed_expression: render(&printed),
            canonical_expression: render(&canonical),
            residual: render(&residual),
            canonical_verified: verified,
        })
    })
    .collect()
}

/// Mismatches between printed and canonical generators of one system.
pub fn errata(system_id: &str) -> Result<Vec<Erratum>, WeylError> {
    let field = system(system_id)?;
    let per_pair = printed_pairs(system_id)
        .par_iter()
        .map(|&(printed, canonical)| -> Result<Vec<Erratum>, WeylError> {
            let p = generator(printed, system_id)?;
            let c = generator(canonical, system_id)?;
            let verified = verify_generator(&c, &field)?.holds;
            let (pm, cm) = (p.map()?, c.map()?);
            let mut rows: Vec<(String, RatFunc, RatFunc)> = pm
                .dst_vars
                .iter()
                .zip(pm.forward.iter().zip(&cm.forward))
                .map(|(w, (a, b))| (w.to_string(), a.clone(), b.clone()))
                .collect();
            rows.push(("a2".into(), p.param_action().clone(), c.param_action().clone()));
            Ok(compare(&format!("{system_id}:{printed}"), rows.into_iter(), verified))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(per_pair.into_iter().flatten().collect())
}

fn chart_errata(printed: &str, canonical: &str, target: &str) -> Result<Vec<Erratum>, WeylError> {
    let p = chart_forward(printed)?;
    let c = chart(canonical)?;
    let verified = is_polynomial_field(&pushforward(&system(target)?, &c)?).polynomial;
    let rows = p
        .dst_vars
        .iter()
        .zip(p.forward.iter().zip(&c.forward))
        .map(|(w, (a, b))| (w.to_string(), a.clone(), b.clone()));
    Ok(compare(printed, rows, verified))
}

/// Every catalogued printed formula that disagrees with its canonical form.
pub fn errata_all() -> Result<Vec<Erratum>, WeylError> {
    let mut out = Vec::new();
    for s in SYSTEMS {
        out.extend(errata(s)?);
    }
    out.extend(chart_errata("tilde_r1_printed", "tilde_A", "eq10")?);
    out.extend(chart_errata("tilde_r2_printed", "tilde_B", "eq10")?);
    // The printed map names a derivative of an undefined Hamiltonian where
    // the derivative of u is meant; the reading used here reproduces the
    // five-dimensional system exactly.
    out.push(Erratum {
        generator: "thm91".into(),
        component: "q".into(),
        printed_expression: "(dH_III/dt - (a2 - 24*u1*u2)/2)/(u3 - (t - 24*u1^2)/4)".into(),
        canonical_expression: "(u4 - (a2 - 24*u1*u2)/2)/(u3 - (t - 24*u1^2)/4)".into(),
        residual: "(dH_III/dt - u4)/(u3 - (t - 24*u1^2)/4)".into(),
        canonical_verified: pushforward(&system("eq5raw")?, &chart("thm91")?)?.same_system(&system("eq6")?),
    });
    Ok(out)
}
