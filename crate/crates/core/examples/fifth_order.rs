//! The Hamiltonian satisfies the fifth-order equation along the flow, and
//! the five-dimensional system extends the coupled one by a quadrature.

use p2h2::dynsys::identities::{fifth_order_identity, hamiltonian_derivatives, riccati_correspondence};
use p2h2::symfield::render;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ders = hamiltonian_derivatives()?;
    println!("DH = {}", render(&ders[1]));
    let r = fifth_order_identity()?;
    println!("fifth-order identity holds: {}", r.holds);
    for c in &r.components {
        println!("  {}: residual {}", c.component, c.residual);
    }
    let r = riccati_correspondence()?;
    println!("Riccati extension holds: {}", r.holds);
    Ok(())
}
