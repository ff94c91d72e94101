//! Replays of the blow-up sequences, one chart at a time.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynsys::catalog::{chart, system};
use crate::dynsys::{invert_triangular, pushforward, BirationalMap, VectorField};
use crate::symfield::{expr, render, v, RatFunc, Var};

use super::{
    linear_part, local_index, matrix_from_exprs, render_matrix, verify_accessible, LocalIndex, Matrix,
    ResolveError, SingularLocus,
};

pub const PIPELINE_IDS: [&str; 7] =
    ["pii_s4", "p2h2_s5", "p2h2_s5_alt1", "p2h2_s5_alt2", "p2h2_s5_alt3", "eq5_s9", "eq5_s9_alt"];

/// Expected facts about the chart reached by a step.
#[derive(Clone, Debug)]
pub enum Check {
    Accessible { locus: SingularLocus, expected: bool },
    /// Printed linear part of the normal form.
    LinearPart { locus: SingularLocus, expected: Matrix },
    /// Printed local index; `ordered` compares positions, otherwise multisets.
    Index { locus: SingularLocus, expected: Vec<RatFunc>, ordered: bool },
    /// Index after a linear change of the chart coordinates.
    IndexAfter { transform: BirationalMap, locus: SingularLocus, expected: Vec<RatFunc>, matrix: Matrix },
    /// The composite of all steps so far, written in the Step 0 coordinates.
    Relation { expected: Vec<(Var, RatFunc)> },
    /// The composite of all steps, written in the source coordinates.
    Composite { expected: BirationalMap },
    /// The current field equals a known system.
    System { expected: VectorField, label: String },
}

#[derive(Clone, Debug)]
pub struct Step {
    pub name: String,
    pub map: BirationalMap,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub id: String,
    pub source_id: String,
    /// Source catalogue coordinates to Step 0 coordinates.
    pub step0: BirationalMap,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub step: String,
    pub check: String,
    pub chart: Vec<String>,
    pub locus: Option<String>,
    pub index: Option<serde_json::Value>,
    pub ratios: Option<Vec<String>>,
    pub matches_paper: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub pipeline: String,
    pub holds: bool,
    pub steps: Vec<StepReport>,
}

impl PipelineReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable")
    }

    /// The index reported by the last index check, if any.
    pub fn final_index(&self) -> Option<Vec<String>> {
        self.steps.iter().rev().find_map(|s| {
            s.index.as_ref().map(|j| {
                j["eigenvalues"]
                    .as_array()
                    .expect("eigenvalue list")
                    .iter()
                    .map(|e| e.as_str().expect("string").to_string())
                    .collect()
            })
        })
    }

    pub fn first_failure(&self) -> Option<&StepReport> {
        self.steps.iter().find(|s| !s.matches_paper)
    }
}

/// `src = m * dst`, with the forward rows found by Gauss–Jordan elimination.
fn linear_change(name: &str, src: &[&str], dst: &[&str], m: &[&[i64]]) -> BirationalMap {
    let n = m.len();
    let q = |x: i64| BigRational::from_integer(x.into());
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..2 * n).map(|j| if j < n { q(m[i][j]) } else { q((j - n == i) as i64) }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible linear change");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        a[col].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                a[r].iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= &f * p);
            }
        }
    }
    let comb = |coeffs: &mut dyn Iterator<Item = BigRational>, names: &[&str]| -> RatFunc {
        coeffs.zip(names).fold(RatFunc::zero(), |s, (c, w)| s + RatFunc::var(v(w)).scale(&c))
    };
    let inverse = (0..n).map(|i| comb(&mut m[i].iter().map(|&x| q(x)), dst)).collect();
    let forward = (0..n).map(|i| comb(&mut a[i][n..].iter().cloned(), src)).collect();
    BirationalMap::new(name, vars(src), vars(dst), forward).expect("square").with_inverse(inverse)
}

fn as_rows(r: &[(String, String)]) -> Vec<(&str, &str)> {
    r.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| v(n)).collect()
}

fn step(name: &str, src: &[&str], rows: &[(&str, &str)], checks: Vec<Check>) -> Step {
    let map = BirationalMap::from_exprs(name, src, rows);
    Step { name: name.into(), map, checks }
}

fn values(list: &[&str]) -> Vec<RatFunc> {
    list.iter().map(|e| expr(e)).collect()
}

fn accessible(chart: &[&str], point: &[&str]) -> Check {
    Check::Accessible { locus: SingularLocus::point(chart, point), expected: true }
}

fn index(chart: &[&str], point: &[&str], expected: &[&str], ordered: bool) -> Check {
    Check::Index { locus: SingularLocus::point(chart, point), expected: values(expected), ordered }
}

fn linear(chart: &[&str], point: &[&str], rows: &[&[&str]]) -> Check {
    Check::LinearPart { locus: SingularLocus::point(chart, point), expected: matrix_from_exprs(rows) }
}

fn relation(rows: &[(&str, &str)]) -> Check {
    Check::Relation { expected: rows.iter().map(|(n, e)| (v(n), expr(e))).collect() }
}

fn rename(name: &str, from: &[&str], to: &[&str]) -> BirationalMap {
    let rows: Vec<(&str, &str)> = to.iter().copied().zip(from.iter().copied()).collect();
    BirationalMap::from_exprs(name, from, &rows)
}

const C2: [&str; 2] = ["x", "y"];
const C4: [&str; 4] = ["x", "y", "z", "w"];
const C5: [&str; 5] = ["x", "y", "z", "w", "q"];

fn chart_names(level: u8, n: usize) -> Vec<&'static str> {
    ["x", "y", "z", "w", "q"][..n]
        .iter()
        .map(|p| crate::symfield::Var::chart(p, level).name())
        .collect()
}

fn pii_s4() -> Pipeline {
    let c = |k| chart_names(k, 2);
    let origin = ["0", "0"];
    let steps = vec![
        step(
            "Step 1",
            &C2,
            &[("x1", "1/x"), ("y1", "y/x^2")],
            vec![
                accessible(&c(1), &["0", "1"]),
                accessible(&c(1), &["0", "-1"]),
                Check::Accessible { locus: SingularLocus::point(&c(1), &["0", "0"]), expected: false },
            ],
        ),
        step(
            "Step 2",
            &c(1),
            &[("x2", "x1"), ("y2", "y1 - 1")],
            vec![
                linear(&c(2), &origin, &[&["-1", "0"], &["0", "-4"]]),
                index(&c(2), &origin, &["-1", "-4"], true),
            ],
        ),
        step("Step 3", &c(2), &[("x3", "x2"), ("y3", "y2/x2")], vec![]),
        step("Step 4", &c(3), &[("x4", "x3"), ("y4", "y3/x3")], vec![accessible(&c(4), &["0", "t/2"])]),
        step(
            "Step 5",
            &c(4),
            &[("x5", "x4"), ("y5", "y4 - t/2")],
            vec![
                linear(&c(5), &origin, &[&["-1", "0"], &["alpha - 1/2", "-2"]]),
                index(&c(5), &origin, &["-1", "-2"], true),
                relation(&[("x5", "1/x"), ("y5", "y - x^2 - t/2")]),
            ],
        ),
        step(
            "Step 9",
            &c(5),
            &[("q", "1/x5"), ("p", "y5")],
            vec![Check::System { expected: system("pii").expect("catalogued"), label: "H_II system".into() }],
        ),
    ];
    Pipeline { id: "pii_s4".into(), source_id: "pii_raw".into(), step0: BirationalMap::identity(&vars(&C2)), steps }
}

/// Steps 0–2 of the fifth-order pipeline around one of the four points.
fn p2h2_head(shift: [&str; 3]) -> Vec<Step> {
    let c1 = chart_names(1, 4);
    let y2 = format!("y1 - ({})", shift[0]);
    let z2 = format!("z1 - ({})", shift[1]);
    let w2 = format!("w1 - ({})", shift[2]);
    let mut head = vec![step(
        "Step 1",
        &C4,
        &[("x1", "1/x"), ("y1", "y/x^2"), ("z1", "z/x^3"), ("w1", "w/x^4")],
        vec![
            accessible(&c1, &["0", "1", "2", "6"]),
            accessible(&c1, &["0", "-1", "2", "-6"]),
            accessible(&c1, &["0", "1/2", "1/2", "3/4"]),
            accessible(&c1, &["0", "-1/2", "1/2", "-3/4"]),
            Check::Accessible { locus: SingularLocus::point(&c1, &["0", "0", "0", "0"]), expected: false },
        ],
    )];
    head.push(step(
        "Step 2",
        &c1,
        &[("x2", "x1"), ("y2", &y2), ("z2", &z2), ("w2", &w2)],
        vec![],
    ));
    head
}

fn p2h2_alt(id: &str, shift: [&str; 3], matrix: &[&[&str]], expected: &[&str]) -> Pipeline {
    let mut steps = p2h2_head(shift);
    let c2 = chart_names(2, 4);
    let origin = ["0", "0", "0", "0"];
    steps[1].checks = vec![linear(&c2, &origin, matrix), index(&c2, &origin, expected, true)];
    Pipeline { id: id.into(), source_id: "eq1".into(), step0: rename("Step 0", &["u0", "u1", "u2", "u3"], &C4), steps }
}

fn p2h2_s5() -> Pipeline {
    let mut steps = p2h2_head(["-1", "2", "-6"]);
    let c = |k| chart_names(k, 4);
    let origin = ["0", "0", "0", "0"];
    let lin = linear_change(
        "Step 2 linear change",
        &c(2),
        &["X2", "Y2", "Z2", "W2"],
        &[&[1, 0, 0, 0], &[0, 1, 1, 1], &[0, -2, -1, 2], &[0, 8, 6, 12]],
    );
    steps[1].checks = vec![
        linear(&c(2), &origin, &[&["1", "0", "0", "0"], &["0", "4", "1", "0"], &["0", "-6", "3", "1"], &["0", "4", "10", "4"]]),
        index(&c(2), &origin, &["1", "2", "3", "6"], false),
        Check::IndexAfter {
            transform: lin,
            locus: SingularLocus::point(&["X2", "Y2", "Z2", "W2"], &origin),
            expected: values(&["1", "2", "3", "6"]),
            matrix: matrix_from_exprs(&[&["1", "0", "0", "0"], &["0", "2", "0", "0"], &["0", "0", "3", "0"], &["0", "0", "0", "6"]]),
        },
    ];
    let blow = |k: u8| {
        let (a, b) = (c(k - 1), c(k));
        let rows: Vec<(String, String)> = (0..4)
            .map(|i| (b[i].to_string(), if i == 0 { a[0].to_string() } else { format!("{}/{}", a[i], a[0]) }))
            .collect();
        rows
    };
    let s3 = blow(3);
    steps.push(step("Step 3", &c(2), &as_rows(&s3), vec![]));
    let s4 = blow(4);
    steps.push(step(
        "Step 4",
        &c(3),
        &as_rows(&s4),
        vec![Check::Accessible { locus: SingularLocus::new(&c(4), &["0", "y4", "-2*y4", "8*y4"], "x4"), expected: true }],
    ));
    steps.push(step(
        "Step 5",
        &c(4),
        &[("x5", "x4"), ("y5", "y4"), ("z5", "(z4 + 2*y4)/x4"), ("w5", "(w4 - 8*y4)/x4")],
        vec![Check::Accessible { locus: SingularLocus::new(&c(5), &["0", "y5", "z5", "-2*z5"], "x5"), expected: true }],
    ));
    steps.push(step(
        "Step 6",
        &c(5),
        &[("x6", "x5"), ("y6", "y5"), ("z6", "z5"), ("w6", "(w5 + 2*z5)/x5")],
        vec![Check::Accessible {
            locus: SingularLocus::new(&c(6), &["0", "y6", "z6", "y6^2 - t/2"], "x6"),
            expected: true,
        }],
    ));
    let l7 = SingularLocus::new(&c(7), &["0", "y7", "z7", "0"], "x7");
    steps.push(step(
        "Step 7",
        &c(6),
        &[("x7", "x6"), ("y7", "y6"), ("z7", "z6"), ("w7", "w6 - y6^2 + t/2")],
        vec![
            Check::LinearPart {
                locus: SingularLocus::point(&c(7), &["0", "0", "0", "0"]),
                expected: matrix_from_exprs(&[
                    &["1", "0", "0", "0"],
                    &["0", "0", "0", "0"],
                    &["-t/2", "0", "0", "0"],
                    &["a2 + 1/2", "0", "0", "2"],
                ]),
            },
            Check::Index { locus: l7, expected: values(&["1", "0", "0", "2"]), ordered: true },
            relation(&[
                ("x7", "1/x"),
                ("y7", "x^2 + y"),
                ("z7", "z + 2*x*y"),
                ("w7", "w + t/2 - 3*x^4 - 6*x^2*y - y^2 + 2*x*z"),
            ]),
        ],
    ));
    let step8 = VectorField::from_exprs(
        &[("x8", "-x8^2 + y8"), ("y8", "z8"), ("z8", "3*y8^2 + w8 - t/2"), ("w8", "2*x8*w8 + a2 + 1/2")],
        &["a2"],
    );
    steps.push(step(
        "Step 8",
        &c(7),
        &[("x8", "1/x7"), ("y8", "y7"), ("z8", "z7"), ("w8", "w7")],
        vec![Check::System { expected: step8, label: "Step 8 system".into() }],
    ));
    steps.push(step(
        "Step 9",
        &c(8),
        &[("q1", "-x8"), ("p1", "-w8"), ("q2", "-z8"), ("p2", "-y8")],
        vec![
            Check::System { expected: eq3_reflected(), label: "coupled system with a2 -> -a2".into() },
            Check::Composite { expected: eq2_reflected() },
        ],
    ));
    Pipeline { id: "p2h2_s5".into(), source_id: "eq1".into(), step0: rename("Step 0", &["u0", "u1", "u2", "u3"], &C4), steps }
}

/// The coupled system under `a2 -> -a2`, which is what the printed Step 9
/// produces from the fourth-order equation as written.
fn eq3_reflected() -> VectorField {
    system("eq3").expect("catalogued").substitute(&[(v("a2"), expr("-a2"))]).expect("polynomial")
}

/// The closed-form transformation composed with `u -> -u`, `a2 -> -a2`.
fn eq2_reflected() -> BirationalMap {
    let m = chart("eq2").expect("catalogued");
    let flip: Vec<(Var, RatFunc)> = ["u0", "u1", "u2", "u3"].iter().map(|n| (v(n), expr(&format!("-{n}")))).collect();
    let forward = m.forward.iter().map(|f| f.substitute(&flip).expect("polynomial")).collect();
    BirationalMap::new("eq2 reflected", m.src_vars.clone(), m.dst_vars.clone(), forward).expect("square")
}

fn eq5_s9(id: &str, shift: &str) -> Pipeline {
    let c = |k| chart_names(k, 5);
    let l1 = format!("-12*y1*z1 + {shift}");
    let q2 = format!("q1 + 12*y1*z1 - ({shift})");
    let steps = vec![
        step(
            "Step 1",
            &C5,
            &[("x1", "x"), ("y1", "y"), ("z1", "z"), ("w1", "w + 6*y^2 - t/4"), ("q1", "q")],
            vec![Check::Accessible { locus: SingularLocus::new(&c(1), &["x1", "y1", "z1", "0", &l1], "w1"), expected: true }],
        ),
        step(
            "Step 2",
            &c(1),
            &[("x2", "x1"), ("y2", "y1"), ("z2", "z1"), ("w2", "w1"), ("q2", &q2)],
            eq5_index_checks(id),
        ),
        step(
            "Step 3",
            &c(2),
            &[("x", "x2"), ("y", "y2"), ("z", "z2"), ("w", "w2"), ("q", "q2/w2")],
            eq5_final_checks(id),
        ),
    ];
    Pipeline {
        id: id.into(),
        source_id: "eq5raw".into(),
        step0: rename("Step 0", &["u0", "u1", "u2", "u3", "u4"], &C5),
        steps,
    }
}

fn eq5_index_checks(id: &str) -> Vec<Check> {
    let c2 = chart_names(2, 5);
    let origin = SingularLocus::new(&c2, &["0", "0", "0", "0", "0"], "w2");
    let h = if id == "eq5_s9" { "a2/2 - 1/4" } else { "1/4 - a2/2" };
    let mut checks = vec![Check::Index { locus: origin.clone(), expected: values(&["0", "0", "0", h, h]), ordered: true }];
    if id == "eq5_s9" {
        checks.insert(
            0,
            Check::LinearPart {
                locus: origin,
                expected: matrix_from_exprs(&[
                    &["0", "0", "0", "0", "0"],
                    &["0", "0", "0", "0", "0"],
                    &["0", "0", "0", "t/4", "0"],
                    &["0", "0", "0", "a2/2 - 1/4", "0"],
                    &["0", "0", "0", "0", "a2/2 - 1/4"],
                ]),
            },
        );
    }
    checks
}

fn eq5_final_checks(id: &str) -> Vec<Check> {
    let six = system("eq6").expect("catalogued");
    if id == "eq5_s9" {
        vec![
            Check::System { expected: six, label: "five-dimensional polynomial system".into() },
            Check::Composite { expected: chart("thm91").expect("catalogued") },
        ]
    } else {
        let mirrored = six.substitute(&[(v("a2"), expr("1 - a2"))]).expect("polynomial");
        vec![Check::System { expected: mirrored, label: "polynomial system with a2 -> 1 - a2".into() }]
    }
}

pub fn pipeline(id: &str) -> Result<Pipeline, ResolveError> {
    Ok(match id {
        "pii_s4" => pii_s4(),
        "p2h2_s5" => p2h2_s5(),
        "p2h2_s5_alt1" => p2h2_alt(
            id,
            ["1", "2", "6"],
            &[&["-1", "0", "0", "0"], &["0", "-4", "1", "0"], &["0", "-6", "-3", "1"], &["0", "-4", "10", "-4"]],
            &["-1", "-2", "-3", "-6"],
        ),
        "p2h2_s5_alt2" => p2h2_alt(
            id,
            ["1/2", "1/2", "3/4"],
            &[&["-1/2", "0", "0", "0"], &["0", "-2", "1", "0"], &["0", "-3/2", "-3/2", "1"], &["0", "7", "10", "-2"]],
            &["-1/2", "3/2", "-3", "-4"],
        ),
        "p2h2_s5_alt3" => p2h2_alt(
            id,
            ["-1/2", "1/2", "-3/4"],
            &[&["1/2", "0", "0", "0"], &["0", "2", "1", "0"], &["0", "-3/2", "3/2", "1"], &["0", "-7", "10", "2"]],
            &["1/2", "-3/2", "3", "4"],
        ),
        "eq5_s9" => eq5_s9(id, "a2/2"),
        "eq5_s9_alt" => eq5_s9(id, "(1 - a2)/2"),
        _ => return Err(ResolveError::UnknownPipeline(id.into())),
    })
}

fn same_multiset(a: &[RatFunc], b: &[RatFunc]) -> bool {
    let mut rest = b.to_vec();
    a.len() == b.len()
        && a.iter().all(|x| match rest.iter().position(|y| y == x) {
            Some(k) => {
                rest.remove(k);
                true
            }
            None => false,
        })
}

fn report(step: &str, check: &str, field: &VectorField) -> StepReport {
    StepReport {
        step: step.into(),
        check: check.into(),
        chart: field.vars().iter().map(|w| w.to_string()).collect(),
        locus: None,
        index: None,
        ratios: None,
        matches_paper: false,
        detail: None,
    }
}

fn index_report(mut r: StepReport, locus: &SingularLocus, idx: &LocalIndex, ok: bool) -> StepReport {
    r.locus = Some(locus.describe());
    r.index = Some(idx.to_json());
    r.ratios = Some(idx.continued_ratio().iter().map(render).collect());
    r.matches_paper = ok;
    r
}

fn run_check(
    name: &str,
    check: &Check,
    field: &VectorField,
    cum: &[(Var, RatFunc)],
    step0: &BirationalMap,
) -> Result<StepReport, ResolveError> {
    let mut r;
    match check {
        Check::Accessible { locus, expected } => {
            r = report(name, "accessible", field);
            let got = verify_accessible(field, locus)?;
            r.locus = Some(locus.describe());
            r.matches_paper = got == *expected;
            r.detail = Some(format!("accessible = {got}"));
        }
        Check::LinearPart { locus, expected } => {
            r = report(name, "linear part", field);
            let a = linear_part(field, locus)?;
            r.locus = Some(locus.describe());
            r.matches_paper = a == *expected;
            r.detail = Some(serde_json::to_string(&render_matrix(&a)).expect("serialisable"));
        }
        Check::Index { locus, expected, ordered } => {
            let idx = local_index(field, locus)?;
            let ok = if *ordered { idx.eigenvalues == *expected } else { same_multiset(&idx.eigenvalues, expected) };
            r = index_report(report(name, "local index", field), locus, &idx, ok);
        }
        Check::IndexAfter { transform, locus, expected, matrix } => {
            let moved = pushforward(field, transform)?;
            let idx = local_index(&moved, locus)?;
            let a = linear_part(&moved, locus)?;
            let ok = idx.eigenvalues == *expected && a == *matrix;
            r = index_report(report(name, "local index after linear change", &moved), locus, &idx, ok);
            r.detail = Some(serde_json::to_string(&render_matrix(&a)).expect("serialisable"));
        }
        Check::Relation { expected } => {
            r = report(name, "relation to Step 0 coordinates", field);
            let mut bad = Vec::new();
            for (var, e) in expected {
                let got = cum.iter().find(|(w, _)| w == var).map(|(_, g)| g).ok_or(crate::dynsys::DynError::MissingComponent(*var))?;
                let d = got - e;
                if !d.is_zero() {
                    bad.push(format!("{var}: {}", render(&d)));
                }
            }
            r.matches_paper = bad.is_empty();
            r.detail = (!bad.is_empty()).then(|| bad.join("; "));
        }
        Check::Composite { expected } => {
            r = report(name, &format!("composite equals {}", expected.name), field);
            let mut bad = Vec::new();
            for (var, g) in cum {
                let got = step0.pull_function(g)?;
                let e = expected.forward_of(*var).ok_or(crate::dynsys::DynError::MissingComponent(*var))?;
                let d = &got - e;
                if !d.is_zero() {
                    bad.push(format!("{var}: {}", render(&d)));
                }
            }
            r.matches_paper = bad.is_empty();
            r.detail = (!bad.is_empty()).then(|| bad.join("; "));
        }
        Check::System { expected, label } => {
            r = report(name, &format!("system equals {label}"), field);
            let res = field.residuals(expected)?;
            let bad: Vec<String> =
                res.iter().filter(|(_, d)| !d.is_zero()).map(|(w, d)| format!("d{w}/dt: {}", render(d))).collect();
            r.matches_paper = bad.is_empty();
            r.detail = (!bad.is_empty()).then(|| bad.join("; "));
        }
    }
    Ok(r)
}

/// The field in the chart reached after the named step.
pub fn chart_field(id: &str, step_name: &str) -> Result<VectorField, ResolveError> {
    let p = pipeline(id)?;
    let mut field = pushforward(&system(&p.source_id)?, &invert_triangular(&p.step0)?)?;
    if step_name == "Step 0" {
        return Ok(field);
    }
    for s in &p.steps {
        field = pushforward(&field, &invert_triangular(&s.map)?)?;
        if s.name == step_name {
            return Ok(field);
        }
    }
    Err(ResolveError::UnknownPipeline(format!("{id}: {step_name}")))
}

pub fn run_pipeline(id: &str) -> Result<PipelineReport, ResolveError> {
    let p = pipeline(id)?;
    let source = system(&p.source_id)?;
    let mut field = pushforward(&source, &invert_triangular(&p.step0)?)?;
    let mut cum: Vec<(Var, RatFunc)> = field.vars().iter().map(|&w| (w, RatFunc::var(w))).collect();
    let mut out = Vec::new();
    for s in &p.steps {
        let map = invert_triangular(&s.map)?;
        field = pushforward(&field, &map)?;
        let b: Vec<(Var, RatFunc)> = cum.clone();
        cum = map
            .dst_vars
            .iter()
            .zip(&map.forward)
            .map(|(&w, f)| Ok((w, f.substitute(&b)?)))
            .collect::<Result<_, ResolveError>>()?;
        if s.checks.is_empty() {
            let mut r = report(&s.name, "chart", &field);
            r.matches_paper = true;
            out.push(r);
            continue;
        }
        let rows = s
            .checks
            .par_iter()
            .map(|c| run_check(&s.name, c, &field, &cum, &p.step0))
            .collect::<Result<Vec<_>, _>>()?;
        out.extend(rows);
    }
    Ok(PipelineReport { pipeline: p.id, holds: out.iter().all(|s| s.matches_paper), steps: out })
}
