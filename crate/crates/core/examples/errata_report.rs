//! Printed formulas that disagree with their canonical constructions.

use p2h2::weyl::errata_all;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for e in errata_all()? {
        println!("{} [{}]", e.generator, e.component);
        println!("  printed   {}", e.printed_expression);
        println!("  canonical {}", e.canonical_expression);
        println!("  residual  {}  (canonical verified: {})", e.residual, e.canonical_verified);
    }
    Ok(())
}
