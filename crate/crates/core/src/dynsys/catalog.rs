//! Named systems, Hamiltonians and charts.
//!
//! Identifiers are stable strings so the command line and the tests can
//! address entries directly.

use crate::symfield::expr;

use super::{hamiltonian_field, invert_triangular, BirationalMap, DynError, HamiltonianSpec, VectorField};

const QP: [&str; 4] = ["q1", "p1", "q2", "p2"];
const XYZWQ: [&str; 5] = ["x", "y", "z", "w", "q"];
const U4: [&str; 4] = ["u0", "u1", "u2", "u3"];
const U5: [&str; 5] = ["u0", "u1", "u2", "u3", "u4"];

pub const SYSTEM_IDS: [&str; 7] = ["eq1", "pii", "pii_raw", "eq3", "eq10", "eq5raw", "eq6"];

pub const HAMILTONIAN_IDS: [&str; 5] = ["H", "K", "H_I", "H_tilde", "H_II"];

pub const CHART_IDS: [&str; 12] = [
    "eq2",
    "holo_A",
    "holo_B",
    "tilde_A",
    "tilde_B",
    "tilde_r1_printed",
    "tilde_r2_printed",
    "eq6_r1",
    "eq6_r2",
    "eq6_r3",
    "thm91",
    "riccati",
];

const H_EQ4: &str = "q1^2*p1 + (1/2 - a2)*q1 - p2^3 + (t/2)*p2 - q2^2/2 + p1*p2";
const H_TILDE: &str = "-p1 - q2^2/2 - p2^3 + (t/2)*p2 - (q1*p1 + (1 - 2*a2)/2)*q1*p2";

/// Numerator and denominator of the fifth-order equation, in `u1..u4`
/// standing for the first four derivatives of `u`.
pub const EQ5_NUM: &str = "(1 - a2)*a2 - 2*u1*(24*u1^2 - t)^2 - 24*u2*(u1 - t*u2) \
     + 8*u3*(5*u1*(t - 24*u1^2) - 12*u2^2 - 16*u1*u3) + 2*u4*(48*u1*u2 + 2*u4 - 1)";
pub const EQ5_DEN: &str = "48*u1^2 + 8*u3 - 2*t";

pub fn hamiltonian(id: &str) -> Result<HamiltonianSpec, DynError> {
    let qp = [("q1", "p1"), ("q2", "p2")];
    Ok(match id {
        "H" => HamiltonianSpec::new(expr(H_EQ4), &qp, &["a2"]),
        "K" => HamiltonianSpec::new(expr("q1^2*p1 + (1/2 - a2)*q1"), &[("q1", "p1")], &["a2"]),
        "H_I" => HamiltonianSpec::new(expr("-p2^3 + (t/2)*p2 - q2^2/2"), &[("q2", "p2")], &[]),
        "H_tilde" => HamiltonianSpec::new(expr(H_TILDE), &qp, &["a2"]),
        "H_II" => HamiltonianSpec::new(
            expr("q^2*p + p^2/2 + (t/2)*p - (alpha - 1/2)*q"),
            &[("q", "p")],
            &["alpha"],
        ),
        _ => return Err(DynError::Unknown(id.into())),
    })
}

pub fn system(id: &str) -> Result<VectorField, DynError> {
    Ok(match id {
        "eq1" => VectorField::from_exprs(
            &[
                ("u0", "u1"),
                ("u1", "u2"),
                ("u2", "u3"),
                ("u3", "10*u0*u1^2 + 10*u0^2*u2 - 6*u0^5 + t*u0 + a2"),
            ],
            &["a2"],
        ),
        "pii_raw" => VectorField::from_exprs(
            &[("x", "y"), ("y", "2*x^3 + t*x + alpha")],
            &["alpha"],
        ),
        "pii" => hamiltonian_field(&hamiltonian("H_II")?)?,
        "eq3" => hamiltonian_field(&hamiltonian("H")?)?,
        "eq10" => hamiltonian_field(&hamiltonian("H_tilde")?)?,
        "eq5raw" => {
            let top = format!("({EQ5_NUM})/({EQ5_DEN})");
            VectorField::from_exprs(
                &[("u0", "u1"), ("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", &top)],
                &["a2"],
            )
        }
        "eq6" => VectorField::from_exprs(
            &[
                ("x", "y"),
                ("y", "z"),
                ("z", "-6*y^2 + w + t/4"),
                ("w", "w*q + (2*a2 - 1)/4"),
                ("q", "-q^2/2 - 4*y"),
            ],
            &["a2"],
        ),
        _ => return Err(DynError::Unknown(id.into())),
    })
}

fn raw_chart(id: &str) -> Result<BirationalMap, DynError> {
    Ok(match id {
        "eq2" => BirationalMap::from_exprs(
            id,
            &U4,
            &[
                ("q1", "u0"),
                ("p1", "u3 + u1^2 - t/2 + (3*u0^3 - 6*u0*u1 - 2*u2)*u0"),
                ("q2", "u2 - 2*u0*u1"),
                ("p2", "u1 - u0^2"),
            ],
        ),
        "holo_A" => BirationalMap::from_exprs(
            id,
            &QP,
            &[
                ("x1", "1/q1"),
                ("y1", "-(q1*p1 + 1/2 - a2)*q1"),
                ("z1", "q2"),
                ("w1", "p2"),
            ],
        ),
        "holo_B" => BirationalMap::from_exprs(
            id,
            &QP,
            &[
                ("x2", "1/q1"),
                ("y2", "-((p1 - 2*p2^2 + t + 4*q1*(q1*p2 + q2))*q1 + 1/2 + a2)*q1"),
                ("z2", "q2 + 4*q1*(q1^2 + p2)"),
                ("w2", "p2 + 2*q1^2"),
            ],
        ),
        // Images of the two charts above under holo_A, which carries the
        // coupled system to its companion form.
        "tilde_A" => BirationalMap::from_exprs(
            id,
            &QP,
            &[
                ("x1", "1/q1"),
                ("y1", "-(q1*p1 + 1/2 - a2)*q1"),
                ("z1", "q2"),
                ("w1", "p2"),
            ],
        ),
        "tilde_B" => BirationalMap::from_exprs(
            id,
            &QP,
            &[
                ("x2", "q1"),
                ("y2", "p1 - 2*a2/q1 + (2*p2^2 - t)/q1^2 - 4*q2/q1^3 - 4*p2/q1^4"),
                ("z2", "q2 + 4*p2/q1 + 4/q1^3"),
                ("w2", "p2 + 2/q1^2"),
            ],
        ),
        "tilde_r1_printed" => BirationalMap::from_exprs(
            id,
            &QP,
            &[
                ("x1", "1/q1"),
                ("y1", "-(q1*p1 - 1/2 + a2)*q1"),
                ("z1", "q2"),
                ("w1", "p2"),
            ],
        ),
        "tilde_r2_printed" => BirationalMap::from_exprs(
            id,
            &QP,
            &[
                ("x2", "q1"),
                ("y2", "p1 + 2*a2/q1 + (2*p2^2 - t)/q1^2 - 4*q2/q1^3 - 4*p2/q1^4"),
                ("z2", "q2 + 4*p2/q1 + 4/q1^3"),
                ("w2", "p2 + 2/q1^2"),
            ],
        ),
        "eq6_r1" => BirationalMap::from_exprs(
            id,
            &XYZWQ,
            &[
                ("x1", "x"),
                ("y1", "y"),
                ("z1", "z"),
                ("w1", "-(w*q + (2*a2 - 1)/2)*q"),
                ("q1", "1/q"),
            ],
        ),
        "eq6_r2" => BirationalMap::from_exprs(
            id,
            &XYZWQ,
            &[
                ("x2", "x + q/2"),
                ("y2", "y + q^2/4"),
                ("z2", "z - q*(q^2 + 8*y)/4"),
                ("w2", "-((w + t/2 - 4*y^2 + q*(y*q - 2*z))*q - 1/2 - a2)*q"),
                ("q2", "1/q"),
            ],
        ),
        "eq6_r3" => BirationalMap::from_exprs(
            id,
            &XYZWQ,
            &[
                ("x3", "1/x"),
                ("y3", "y/x + x"),
                (
                    "z3",
                    "-x^3*z - y*(4*t + 5*w - 35*y^2)/64 - x*(4*w*q + 2*a2 + 1)/16 \
                     + 3*y*(y^2 - w)^2/(128*x^4) - 105*x^4*y/128 - 7*x^6/128 \
                     - 3*x^2*(4*t + 15*w - 35*y^2)/64 + (w - 21*y^2)*(w - y^2)/(128*x^2)",
                ),
                ("w3", "w/x^2"),
                ("q3", "q*x^2 + 3*x*(x^2 - 2*y)/4 + (w - y^2)/(4*x)"),
            ],
        ),
        "thm91" => BirationalMap::from_exprs(
            id,
            &U5,
            &[
                ("x", "u0"),
                ("y", "u1"),
                ("z", "u2"),
                ("w", "u3 - (t - 24*u1^2)/4"),
                ("q", "(u4 - (a2 - 24*u1*u2)/2)/(u3 - (t - 24*u1^2)/4)"),
            ],
        ),
        "riccati" => BirationalMap::from_exprs(
            id,
            &XYZWQ,
            &[
                ("q1", "-q/2"),
                ("p1", "2*w"),
                ("q2", "2*z"),
                ("p2", "2*y"),
                ("u0", "x"),
            ],
        ),
        _ => return Err(DynError::Unknown(id.into())),
    })
}

/// A catalogue chart with its inverse installed and round-trip checked.
pub fn chart(id: &str) -> Result<BirationalMap, DynError> {
    invert_triangular(&raw_chart(id)?)
}

/// A catalogue chart without an inverse (for charts that are not birational
/// as printed).
pub fn chart_forward(id: &str) -> Result<BirationalMap, DynError> {
    raw_chart(id)
}
