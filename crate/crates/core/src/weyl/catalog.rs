//! Generator formulas for the three systems carrying the symmetry.

use crate::dynsys::BirationalMap;

use super::{Generator, WeylError};

const QP: [&str; 4] = ["q1", "p1", "q2", "p2"];
const XYZWQ: [&str; 5] = ["x", "y", "z", "w", "q"];

pub const SYSTEMS: [&str; 3] = ["eq3", "eq10", "eq6"];

/// Canonical names first, then the printed variants kept for comparison.
pub fn names(system_id: &str) -> Result<&'static [&'static str], WeylError> {
    Ok(match system_id {
        "eq3" => &["s0", "pi", "s1", "T1", "T2", "s1_printed", "T1_printed", "T2_printed"],
        "eq10" => &["s0", "pi", "s1", "T1", "T2", "s0_printed", "s1_printed"],
        "eq6" => &["s0", "pi", "s1", "T1", "T2", "s1_printed"],
        _ => return Err(WeylError::UnknownSystem(system_id.into())),
    })
}

/// Canonical generators that the symmetry check must pass on.
pub fn canonical_names(system_id: &str) -> Result<&'static [&'static str], WeylError> {
    Ok(match system_id {
        "eq3" => &["s0", "pi", "s1"],
        "eq10" => &["s0", "pi", "s1"],
        "eq6" => &["s0", "pi", "s1"],
        _ => return Err(WeylError::UnknownSystem(system_id.into())),
    })
}

/// Printed generator paired with the canonical construction it claims to be.
pub fn printed_pairs(system_id: &str) -> &'static [(&'static str, &'static str)] {
    match system_id {
        "eq3" => &[("s1_printed", "s1"), ("T1_printed", "T1"), ("T2_printed", "T2")],
        "eq10" => &[("s0_printed", "s0"), ("s1_printed", "pi")],
        "eq6" => &[("s1_printed", "s1")],
        _ => &[],
    }
}

const F1: &str = "(p1 + t - 2*p2^2 + 4*q1*(q2 + q1*p2))";
const F6: &str = "(t + 2*w + 2*y*q^2 - 8*y^2 - 4*z*q)";

fn endo(system_id: &str, vars: &[&str], name: &str, rows: &[String], a2: &str) -> BirationalMap {
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    BirationalMap::endo(&format!("{system_id}:{name}"), vars, &rows).with_param_action(a2)
}

fn elementary(system_id: &str, name: &str) -> Option<BirationalMap> {
    let s = |x: &str| x.to_string();
    let m = match (system_id, name) {
        ("eq3", "s0") => endo(system_id, &QP, name, &[s("q1 + (1/2 - a2)/p1"), s("p1"), s("q2"), s("p2")], "1 - a2"),
        ("eq3", "pi") => endo(
            system_id,
            &QP,
            name,
            &[s("-q1"), format!("-{F1}"), s("-(q2 + 4*q1*(q1^2 + p2))"), s("-(p2 + 2*q1^2)")],
            "-a2",
        ),
        ("eq3", "s1_printed") => {
            let (f, c) = (F1, "(2*a2 + 1)");
            endo(
                system_id,
                &QP,
                name,
                &[
                    format!("q1 + {c}/(2*{f})"),
                    format!("p1 - 2*{c}*(q2 + 2*q1*p2)/{f} + {c}^2*(p2 + 2*q1^2)/{f}^2"),
                    format!("q2 - 2*{c}*(p2 - q1^2)/{f} + 3*{c}^2*q1/{f}^2 + {c}^3/(2*{f}^3)"),
                    format!("p2 - 2*{c}*q1/{f} - {c}^2/{f}^2"),
                ],
                "-1 - a2",
            )
        }
        ("eq3", "T1_printed") => endo(
            system_id,
            &QP,
            name,
            &[
                format!("-q1 - (2*a2 + 1)/(2*{F1}^2)"),
                format!("-{F1}"),
                s("-q2 - 4*q1*(q1^2 + p2)"),
                s("-p2 - 2*q1^2"),
            ],
            "a2 + 1",
        ),
        ("eq3", "T2_printed") => {
            let g = "(2*q1*p1 + 1 - 2*a2)";
            endo(
                system_id,
                &QP,
                name,
                &[
                    s("-q1 + (2*a2 - 1)/(2*p1)"),
                    s("-p1 - t + 2*p2^2 - (2*q1*p1 - 2*a2 + 1)*(p2 + 2*q1*p1*p2 + 2*p1*q2 - 2*a2*p2)/p1^2"),
                    format!("-q2 - 2*{g}*p2/p1 - {g}^3/(2*p1^3)"),
                    format!("-p2 - {g}^2/(2*p1^2)"),
                ],
                "a2 - 1",
            )
        }
        ("eq10", "s0") => endo(system_id, &QP, name, &[s("q1 + (1/2 - a2)/p1"), s("p1"), s("q2"), s("p2")], "1 - a2"),
        ("eq10", "s0_printed") => {
            endo(system_id, &QP, name, &[s("q1 + (a2 - 1/2)/p1"), s("p1"), s("q2"), s("p2")], "1 - a2")
        }
        ("eq10", "pi") | ("eq10", "s1_printed") => {
            let sign = if name == "pi" { "+" } else { "-" };
            endo(
                system_id,
                &QP,
                name,
                &[
                    s("-q1"),
                    format!("-p1 {sign} 2*a2/q1 - (2*p2^2 - t)/q1^2 + 4*q2/q1^3 + 4*p2/q1^4"),
                    s("-q2 - 4*p2/q1 - 4/q1^3"),
                    s("-p2 - 2/q1^2"),
                ],
                "-a2",
            )
        }
        ("eq6", "s0") => endo(
            system_id,
            &XYZWQ,
            name,
            &[s("x"), s("y"), s("z"), s("w"), s("q + (a2 - 1/2)/w")],
            "1 - a2",
        ),
        ("eq6", "pi") => endo(
            system_id,
            &XYZWQ,
            name,
            &[
                s("x + q/2"),
                s("-(y + q^2/4)"),
                s("-(z - q*(q^2 + 8*y)/4)"),
                s("-(w + y*q^2 - 4*y^2 - 2*z*q + t/2)"),
                s("-q"),
            ],
            "-a2",
        ),
        ("eq6", "s1_printed") => {
            let (d, c) = (F6, "(2*a2 + 1)");
            endo(
                system_id,
                &XYZWQ,
                name,
                &[
                    format!("x + {c}/(2*{d})"),
                    format!("y + {c}*q/(2*{d}) - {c}^2/(4*{d}^2)"),
                    format!("z + {c}*(q^2 - 8*y)/(4*{d}) - 3*{c}^2*q/(4*{d}^2) + {c}^3/(4*{d}^3)"),
                    format!("w + 2*{c}*(y*q - z)/{d} + {c}^2*(q^2 + 4*y)/(4*{d}^2)"),
                    format!("q - {c}/{d}"),
                ],
                "-1 - a2",
            )
        }
        _ => return None,
    };
    Some(m)
}

/// Looks up a generator; composite canonical entries are built as words.
pub fn generator(name: &str, system_id: &str) -> Result<Generator, WeylError> {
    names(system_id)?;
    let word: &[&str] = match name {
        "s1" => &["pi", "s0", "pi"],
        "T1" => &["pi", "s0"],
        "T2" => &["s0", "pi"],
        _ => {
            let m = elementary(system_id, name)
                .ok_or_else(|| WeylError::UnknownGenerator(name.into(), system_id.into()))?;
            return Ok(Generator::elementary(name, system_id, m));
        }
    };
    let parts = word
        .iter()
        .map(|n| generator(n, system_id))
        .collect::<Result<Vec<_>, _>>()?;
    let mut g = super::compose(&parts)?;
    g.name = name.into();
    Ok(g)
}
