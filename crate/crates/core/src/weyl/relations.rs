//! Defining relations of the extended affine Weyl group, checked exactly.

use rayon::prelude::*;
use serde::Serialize;

use crate::symfield::{expr, render};

use super::{canonical_names, compose, generator, root_action, WeylError};

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub system: String,
    pub relation: String,
    pub holds: bool,
    pub detail: String,
}

fn rel(system: &str, relation: String, holds: bool, detail: String) -> Relation {
    Relation { system: system.into(), relation, holds, detail }
}

/// Involutions, `T1 T2 = id`, the shifts `T1^n` for `n <= max_power`, and
/// preservation of `alpha0 + alpha1 = 1` by every root action.
pub fn group_relations(system_id: &str, max_power: usize) -> Result<Vec<Relation>, WeylError> {
    let names = canonical_names(system_id)?;
    let mut out: Vec<Relation> = names
        .par_iter()
        .map(|n| {
            let sq = generator(n, system_id)?.power(2)?;
            let holds = sq.is_identity()?;
            Ok(rel(system_id, format!("{n}^2 = id"), holds, format!("a2 -> {}", render(sq.param_action()))))
        })
        .collect::<Result<_, WeylError>>()?;
    let (t1, t2) = (generator("T1", system_id)?, generator("T2", system_id)?);
    let both = compose(&[t1.clone(), t2])?;
    out.push(rel(system_id, "T1 T2 = id".into(), both.is_identity()?, format!("a2 -> {}", render(both.param_action()))));
    for n in 1..=max_power {
        let act = t1.power(n)?.param_action().clone();
        let holds = act == expr(&format!("a2 + {n}"));
        out.push(rel(system_id, format!("T1^{n}: a2 -> a2 + {n}"), holds, format!("a2 -> {}", render(&act))));
    }
    for n in names.iter().chain(&["T1", "T2"]) {
        let a = root_action(&generator(n, system_id)?)?;
        let m: Vec<Vec<String>> = a.matrix.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        out.push(rel(system_id, format!("{n} fixes alpha0 + alpha1"), a.preserves_sum(), format!("{m:?}")));
    }
    Ok(out)
}
