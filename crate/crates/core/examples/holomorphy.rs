//! Each system stays polynomial in every chart of its cover.

use p2h2::dynsys::{holomorphy, HOLOMORPHY_SYSTEMS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for id in HOLOMORPHY_SYSTEMS {
        for c in holomorphy(id)? {
            let verdict = if c.polynomial { "polynomial" } else { "NOT polynomial" };
            println!("{:5} {:8} {:14} {verdict}", c.system, c.chart, c.subject);
        }
    }
    Ok(())
}
