//! Invariant divisors at a2 = 1/2, where the flow reduces to the first
//! Painleve equation, and the seeds of the ladder.

use p2h2::ladder::{painleve_one_locus, seed, verify_solution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for id in ["eq3", "eq6"] {
        let l = painleve_one_locus(id)?;
        println!("{}: {} invariant {}", id, l.divisor, l.invariant);
        for (w, r) in &l.reduced {
            println!("  d{w}/dt = {r}");
        }
        println!("  seed verifies: {}", verify_solution(&seed(id)?)?.holds);
    }
    Ok(())
}
