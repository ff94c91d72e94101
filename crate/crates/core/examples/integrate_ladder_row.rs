//! Integrates the a2 = 1 rational row numerically, compares with the exact
//! values, then runs into the pole at t = 0.

use p2h2::numint::{integrate, ladder_state, parse_rational, IntegratorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a2 = parse_rational("1").ok_or("a2")?;
    let start = ladder_state(1, 1.0)?;
    let tr = integrate("eq3", &a2, &start, 1.0, 2.0, &IntegratorConfig::default())?;
    let (t, y) = tr.last();
    let exact = ladder_state(1, *t)?;
    let err = y.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("t = {t}: endpoint error {err:.3e} after {} steps", tr.steps);

    let cfg = IntegratorConfig { pole_guard: 1e6, ..IntegratorConfig::default() };
    let back = integrate("eq3", &a2, &start, 1.0, -1.0, &cfg)?;
    println!("backward run stopped at t = {:?}", back.pole);
    Ok(())
}
