//! The quartic and the Hamiltonian system integrated side by side, and the
//! observed order of the fixed-step scheme.

use p2h2::numint::{convergence_order, crosscheck_eq1_eq3, parse_rational, IntegratorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a2 = parse_rational("1/3").ok_or("a2")?;
    let c = crosscheck_eq1_eq3(&[0.2, -0.1, 0.3, 0.1], &a2, 0.0, 1.0, &IntegratorConfig::default())?;
    println!("sup error {:.3e} over {} samples", c.sup_error, c.samples);
    let conv = convergence_order(&[0.2, 0.1, 0.05, 0.025])?;
    for (h, e) in &conv.runs {
        println!("h = {h:<6} endpoint error {e:.3e}");
    }
    println!("observed order {:.2}", conv.order);
    Ok(())
}
