//! Floating-point integration of the catalogued systems, used to shadow the
//! exact identities numerically.
//!
//! The stepper is the Dormand–Prince 5(4) pair from `ode_solvers`; the right
//! hand sides are compiled from the exact catalogue with the parameter fixed
//! before conversion to `f64`.

mod eval;
#[cfg(test)]
mod tests;

use std::cell::Cell;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use ode_solvers::{DVector, Dopri5, OutputType, System};
use serde::Serialize;
use thiserror::Error;

use crate::dynsys::catalog::{chart, system, EQ5_DEN, EQ5_NUM};
use crate::dynsys::identities::hamiltonian_derivatives;
use crate::dynsys::{DynError, VectorField};
use crate::ladder::{ladder, LadderError};
use crate::symfield::{expr, v, RatFunc, SymError, Var};
use crate::weyl::{generator, WeylError};

pub use eval::{Compiled, CompiledMap};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("expression {0} uses a symbol outside the state, t and the parameter")]
    Unbound(String),
    #[error("right-hand side is not finite at the initial point")]
    NonFinite,
    #[error("state has {got} components, system `{system}` needs {want}")]
    Dimension { system: String, got: usize, want: usize },
    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("integration needed too many steps (stopped at t = {0})")]
    TooManySteps(f64),
    #[error("pole guard triggered at t = {0}")]
    Pole(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Dyn(#[from] DynError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    /// Largest step; `None` lets the controller use the whole interval.
    pub max_step: Option<f64>,
    /// Abort once any component exceeds this in modulus.
    pub pole_guard: f64,
    /// Number of equal dense-output intervals.
    pub samples: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig { rtol: 1e-12, atol: 1e-12, max_step: None, pole_guard: 1e8, samples: 200 }
    }
}

impl IntegratorConfig {
    fn validate(&self) -> Result<(), NumError> {
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(NumError::Config("tolerances must be positive".into()));
        }
        if self.samples == 0 || self.pole_guard.is_nan() || self.pole_guard <= 0.0 {
            return Err(NumError::Config("need at least one sample and a positive pole guard".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub system_id: String,
    pub param: String,
    pub vars: Vec<String>,
    pub samples: Vec<(f64, Vec<f64>)>,
    pub rtol: f64,
    pub atol: f64,
    /// Time at which the pole guard stopped the run.
    pub pole: Option<f64>,
    pub steps: u32,
}

impl Trajectory {
    pub fn last(&self) -> &(f64, Vec<f64>) {
        self.samples.last().expect("trajectories are nonempty")
    }

    /// One JSON object per line: `{"t": .., "state": [..]}`.
    pub fn to_json_lines(&self) -> String {
        self.samples
            .iter()
            .map(|(t, y)| serde_json::json!({ "t": t, "state": y }).to_string() + "\n")
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("t\t{}\n", self.vars.join("\t"));
        for (t, y) in &self.samples {
            let cells: Vec<String> = y.iter().map(|x| format!("{x:.16e}")).collect();
            out.push_str(&format!("{t:.16e}\t{}\n", cells.join("\t")));
        }
        out
    }
}

/// Right-hand side of a catalogue system with its parameter fixed.
#[derive(Clone, Debug)]
pub struct NumericField {
    pub system_id: String,
    pub vars: Vec<Var>,
    rhs: CompiledMap,
}

/// Slot layout shared by every compiled expression: state, then `t`.
fn slots(vars: &[Var]) -> Vec<Var> {
    let mut s = vars.to_vec();
    s.push(v("t"));
    s
}

fn fix_params(field: &VectorField, a2: &BigRational) -> Vec<(Var, RatFunc)> {
    let c = RatFunc::constant(a2.clone());
    let mut b: Vec<(Var, RatFunc)> = field.params().iter().map(|&p| (p, c.clone())).collect();
    if !b.iter().any(|(p, _)| *p == v("a2")) {
        b.push((v("a2"), c));
    }
    b
}

impl NumericField {
    pub fn new(system_id: &str, a2: &BigRational) -> Result<Self, NumError> {
        let field = system(system_id)?;
        let fixed = field.substitute(&fix_params(&field, a2))?;
        let vars = fixed.vars().to_vec();
        let rhs = CompiledMap::new(fixed.rhs(), &slots(&vars))?;
        Ok(NumericField { system_id: system_id.into(), vars, rhs })
    }

    pub fn eval(&self, t: f64, y: &[f64]) -> Vec<f64> {
        let mut x = y.to_vec();
        x.push(t);
        self.rhs.eval(&x)
    }
}

/// The stepper's dense output assumes a nonnegative, increasing clock, so
/// it runs in `s = dir * (t - t0)`.
struct Rhs<'a> {
    field: &'a NumericField,
    t0: f64,
    dir: f64,
    guard: f64,
    hit: &'a Cell<Option<f64>>,
}

impl System<f64, DVector<f64>> for Rhs<'_> {
    fn system(&self, s: f64, y: &DVector<f64>, dy: &mut DVector<f64>) {
        let mut x: Vec<f64> = y.iter().copied().collect();
        x.push(self.t0 + self.dir * s);
        self.field.rhs.eval_into(&x, dy.as_mut_slice());
        if self.dir < 0.0 {
            dy.iter_mut().for_each(|d| *d = -*d);
        }
    }

    fn solout(&mut self, s: f64, y: &DVector<f64>, _dy: &DVector<f64>) -> bool {
        let blown = y.iter().any(|c| !c.is_finite() || c.abs() > self.guard);
        if blown && self.hit.get().is_none() {
            self.hit.set(Some(self.t0 + self.dir * s));
        }
        blown
    }
}

fn run(
    field: &NumericField,
    param: &BigRational,
    y0: &[f64],
    t0: f64,
    t1: f64,
    cfg: &IntegratorConfig,
    fixed_step: Option<f64>,
) -> Result<Trajectory, NumError> {
    cfg.validate()?;
    if y0.len() != field.vars.len() {
        return Err(NumError::Dimension { system: field.system_id.clone(), got: y0.len(), want: field.vars.len() });
    }
    if field.eval(t0, y0).iter().any(|d| !d.is_finite()) {
        return Err(NumError::NonFinite);
    }
    let mut traj = Trajectory {
        system_id: field.system_id.clone(),
        param: param.to_string(),
        vars: field.vars.iter().map(|w| w.to_string()).collect(),
        samples: vec![(t0, y0.to_vec())],
        rtol: cfg.rtol,
        atol: cfg.atol,
        pole: None,
        steps: 0,
    };
    if t1 == t0 {
        return Ok(traj);
    }
    let hit = Cell::new(None);
    let dir = (t1 - t0).signum();
    let rhs = Rhs { field, t0, dir, guard: cfg.pole_guard, hit: &hit };
    let span = (t1 - t0).abs();
    let dx = span / cfg.samples as f64;
    let (rtol, atol, h_max, h) = match fixed_step {
        // Tolerances this loose accept every step at the cap.
        Some(h) => (1e6, 1e6, h, h),
        None => (cfg.rtol, cfg.atol, cfg.max_step.unwrap_or(span), 0.0),
    };
    let mut stepper = Dopri5::from_param(
        rhs,
        0.0,
        span,
        dx,
        DVector::from_vec(y0.to_vec()),
        rtol,
        atol,
        0.9,
        0.04,
        0.2,
        10.0,
        h_max,
        h,
        1_000_000,
        1000,
        // Dense interpolation is unreliable at these tolerances.
        if fixed_step.is_some() { OutputType::Sparse } else { OutputType::Dense },
    );
    use ode_solvers::dop_shared::IntegrationError as E;
    match stepper.integrate() {
        Ok(stats) => traj.steps = stats.accepted_steps,
        // The step collapses onto a movable pole before the guard trips.
        Err(E::StepSizeUnderflow { x }) if fixed_step.is_none() => {
            hit.set(hit.get().or(Some(t0 + dir * x)));
            traj.pole = hit.get();
        }
        Err(E::StepSizeUnderflow { x } | E::StiffnessDetected { x }) => {
            return Err(NumError::StepUnderflow(t0 + dir * x))
        }
        Err(E::MaxNumStepReached { x, .. }) => return Err(NumError::TooManySteps(t0 + dir * x)),
    }
    let (ts, ys) = stepper.results().get();
    let mut samples = Vec::with_capacity(ts.len());
    for (s, y) in ts.iter().zip(ys) {
        let t = t0 + dir * s;
        if y.iter().any(|c| !c.is_finite() || c.abs() > cfg.pole_guard) {
            traj.pole = Some(hit.get().unwrap_or(t));
            break;
        }
        if samples.last().is_some_and(|(u, _): &(f64, Vec<f64>)| (t - u) * dir <= 0.0) {
            continue;
        }
        samples.push((t, y.iter().copied().collect()));
    }
    if traj.pole.is_none() {
        traj.pole = hit.get();
    }
    traj.samples = samples;
    Ok(traj)
}

/// Adaptive Dormand–Prince integration of a catalogue system.
pub fn integrate(
    system_id: &str,
    a2: &BigRational,
    y0: &[f64],
    t0: f64,
    t1: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory, NumError> {
    let field = NumericField::new(system_id, a2)?;
    run(&field, a2, y0, t0, t1, cfg, None)
}

/// Same pair with every step of length `h` (for convergence studies).
pub fn integrate_fixed(
    system_id: &str,
    a2: &BigRational,
    y0: &[f64],
    t0: f64,
    t1: f64,
    h: f64,
) -> Result<Trajectory, NumError> {
    let field = NumericField::new(system_id, a2)?;
    let cfg = IntegratorConfig { samples: 1, ..IntegratorConfig::default() };
    run(&field, a2, y0, t0, t1, &cfg, Some(h))
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    /// Sup-norm gap between the mapped fourth-order run and the Hamiltonian run.
    pub sup_error: f64,
    /// `inverse(forward(u0)) - u0` at the initial time.
    pub round_trip: f64,
    pub samples: usize,
    pub steps: (u32, u32),
}

/// Integrates the fourth-order equation, maps it through the closed-form
/// transformation and compares against a direct run of the coupled system.
pub fn crosscheck_eq1_eq3(
    u0: &[f64; 4],
    a2: &BigRational,
    t0: f64,
    t1: f64,
    cfg: &IntegratorConfig,
) -> Result<CrossCheck, NumError> {
    let m = chart("eq2")?;
    let fix = [(v("a2"), RatFunc::constant(a2.clone()))];
    let fwd: Vec<RatFunc> = m.forward.iter().map(|f| f.substitute(&fix)).collect::<Result<_, _>>()?;
    let inv: Vec<RatFunc> = m
        .inverse
        .as_ref()
        .ok_or_else(|| DynError::InverseUnavailable(m.name.clone()))?
        .iter()
        .map(|f| f.substitute(&fix))
        .collect::<Result<_, _>>()?;
    let forward = CompiledMap::new(&fwd, &slots(&m.src_vars))?;
    let inverse = CompiledMap::new(&inv, &slots(&m.dst_vars))?;
    let with_t = |y: &[f64], t: f64| {
        let mut x = y.to_vec();
        x.push(t);
        x
    };

    let (one, three) = rayon::join(
        || integrate("eq1", a2, u0, t0, t1, cfg),
        || {
            let start = forward.eval(&with_t(u0, t0));
            integrate("eq3", a2, &start, t0, t1, cfg)
        },
    );
    let (one, three) = (one?, three?);
    if let Some(t) = one.pole.or(three.pole) {
        return Err(NumError::Pole(t));
    }
    let mut sup: f64 = 0.0;
    for ((ta, ya), (tb, yb)) in one.samples.iter().zip(&three.samples) {
        debug_assert!((ta - tb).abs() < 1e-12);
        sup = sup.max(sup_distance(&forward.eval(&with_t(ya, *ta)), yb));
    }
    let mapped = forward.eval(&with_t(u0, t0));
    let back = inverse.eval(&with_t(&mapped, t0));
    Ok(CrossCheck {
        sup_error: sup,
        round_trip: sup_distance(&back, u0),
        samples: one.samples.len().min(three.samples.len()),
        steps: (one.steps, three.steps),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FifthOrderCheck {
    pub max_residual: f64,
    pub checked: usize,
    /// Samples where the denominator of the equation came within 1e-6 of zero.
    pub skipped: usize,
}

/// Evaluates `H` and its first five derivatives along an eq3 trajectory and
/// checks the fifth-order equation at every sample.
pub fn numeric_fifth_order(traj: &Trajectory) -> Result<FifthOrderCheck, NumError> {
    if traj.system_id != "eq3" {
        return Err(NumError::Config(format!("expected an eq3 trajectory, got {}", traj.system_id)));
    }
    let a2: BigRational = traj.param.parse().map_err(|_| NumError::Config("bad parameter".into()))?;
    let fix = [(v("a2"), RatFunc::constant(a2))];
    let ders: Vec<RatFunc> =
        hamiltonian_derivatives()?.iter().map(|d| d.substitute(&fix)).collect::<Result<_, _>>()?;
    let qp: Vec<Var> = ["q1", "p1", "q2", "p2"].iter().map(|n| v(n)).collect();
    let ders = CompiledMap::new(&ders, &slots(&qp))?;
    let us: Vec<Var> = ["u1", "u2", "u3", "u4", "t"].iter().map(|n| v(n)).collect();
    let num = Compiled::new(&expr(EQ5_NUM).substitute(&fix)?, &us)?;
    let den = Compiled::new(&expr(EQ5_DEN).substitute(&fix)?, &us)?;
    let mut out = FifthOrderCheck { max_residual: 0.0, checked: 0, skipped: 0 };
    for (t, y) in &traj.samples {
        let mut x = y.clone();
        x.push(*t);
        let d = ders.eval(&x);
        let u = [d[1], d[2], d[3], d[4], *t];
        let dv = den.eval(&u);
        if dv.abs() < 1e-6 {
            out.skipped += 1;
            continue;
        }
        out.checked += 1;
        out.max_residual = out.max_residual.max((d[5] - num.eval(&u) / dv).abs());
    }
    Ok(out)
}

/// Fourth-order central difference of a uniformly sampled series.
fn central_derivative(values: &[Vec<f64>], k: usize, h: f64) -> Vec<f64> {
    (0..values[k].len())
        .map(|i| {
            (values[k - 2][i] - 8.0 * values[k - 1][i] + 8.0 * values[k + 1][i] - values[k + 2][i]) / (12.0 * h)
        })
        .collect()
}

fn uniform_step(traj: &Trajectory) -> Result<f64, NumError> {
    if traj.samples.len() < 5 {
        return Err(NumError::Config("need at least five samples".into()));
    }
    Ok(traj.samples[1].0 - traj.samples[0].0)
}

/// `dH/dt - p2/2` along an eq3 run, with `dH/dt` by finite differences.
pub fn energy_balance(traj: &Trajectory) -> Result<f64, NumError> {
    let a2: BigRational = traj.param.parse().map_err(|_| NumError::Config("bad parameter".into()))?;
    let fix = [(v("a2"), RatFunc::constant(a2))];
    let h = crate::dynsys::catalog::hamiltonian("H")?.h.substitute(&fix)?;
    let qp: Vec<Var> = ["q1", "p1", "q2", "p2"].iter().map(|n| v(n)).collect();
    let hc = Compiled::new(&h, &slots(&qp))?;
    let dt = uniform_step(traj)?;
    let hs: Vec<Vec<f64>> = traj
        .samples
        .iter()
        .map(|(t, y)| {
            let mut x = y.clone();
            x.push(*t);
            vec![hc.eval(&x)]
        })
        .collect();
    let mut worst: f64 = 0.0;
    for k in 2..hs.len() - 2 {
        let dh = central_derivative(&hs, k, dt)[0];
        worst = worst.max((dh - traj.samples[k].1[3] / 2.0).abs());
    }
    Ok(worst)
}

/// Applies a Bäcklund generator pointwise to an eq3 run and measures how
/// well the image solves eq3 at the transformed parameter.
pub fn backlund_residual(traj: &Trajectory, generator_name: &str) -> Result<f64, NumError> {
    let a2: BigRational = traj.param.parse().map_err(|_| NumError::Config("bad parameter".into()))?;
    let g = generator(generator_name, &traj.system_id)?;
    let fix = [(v("a2"), RatFunc::constant(a2))];
    let image_param = g
        .param_action()
        .substitute(&fix)?
        .as_constant()
        .ok_or_else(|| NumError::Config("parameter action is not constant".into()))?;
    let m = g.map()?;
    let rows: Vec<RatFunc> = m.forward.iter().map(|f| f.substitute(&fix)).collect::<Result<_, _>>()?;
    let map = CompiledMap::new(&rows, &slots(&m.src_vars))?;
    let target = NumericField::new(&traj.system_id, &image_param)?;
    let dt = uniform_step(traj)?;
    let images: Vec<Vec<f64>> = traj
        .samples
        .iter()
        .map(|(t, y)| {
            let mut x = y.clone();
            x.push(*t);
            map.eval(&x)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for k in 2..images.len() - 2 {
        let d = central_derivative(&images, k, dt);
        let f = target.eval(traj.samples[k].0, &images[k]);
        worst = worst.max(sup_distance(&d, &f));
    }
    Ok(worst)
}

/// Exact eq3 ladder row evaluated at `t`.
pub fn ladder_state(a2: i64, t: f64) -> Result<Vec<f64>, NumError> {
    let rows = ladder("eq3", a2.min(0), a2.max(0))?;
    let row = rows
        .iter()
        .find(|r| r.param == BigRational::from_integer(a2.into()))
        .expect("row in range");
    let tv = [v("t")];
    row.components
        .iter()
        .map(|c| Ok(Compiled::new(c, &tv)?.eval(&[t])))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Convergence {
    /// `(h, endpoint error)` pairs, largest step first.
    pub runs: Vec<(f64, f64)>,
    /// Smallest observed order between consecutive halvings.
    pub order: f64,
}

/// Endpoint error against the exact `a2 = 1` row on `[1, 2]` for a sequence
/// of halved fixed steps.
pub fn convergence_order(steps: &[f64]) -> Result<Convergence, NumError> {
    let a2 = BigRational::from_integer(1.into());
    let start = ladder_state(1, 1.0)?;
    let exact = ladder_state(1, 2.0)?;
    let mut runs = Vec::new();
    for &h in steps {
        let tr = integrate_fixed("eq3", &a2, &start, 1.0, 2.0, h)?;
        let (t, y) = tr.last();
        if (t - 2.0).abs() > 1e-12 {
            return Err(NumError::Config(format!("run with h = {h} stopped at {t}")));
        }
        runs.push((h, sup_distance(y, &exact)));
    }
    let order = runs
        .windows(2)
        .map(|w| (w[0].1 / w[1].1).ln() / (w[0].0 / w[1].0).ln())
        .fold(f64::INFINITY, f64::min);
    Ok(Convergence { runs, order })
}

/// Parses `"1/3"`, `"-2"` or a decimal like `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Ok(q) = s.trim().parse::<BigRational>() {
        return Some(q);
    }
    // Decimals are read exactly, digit by digit.
    let s = s.trim();
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return None;
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let q = BigRational::new(digits, scale);
    Some(if neg { -q } else { q })
}

/// Lossy view of an exact rational.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
