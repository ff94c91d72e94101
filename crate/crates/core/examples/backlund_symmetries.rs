//! Backlund transformations: exact symmetry residuals, group relations and
//! the action on the simple roots.

use p2h2::weyl::{generator, group_relations, root_action, verify_system, SYSTEMS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for id in SYSTEMS {
        for r in verify_system(id)? {
            println!("{:10} symmetry: {}", r.name, r.holds);
        }
        for rel in group_relations(id, 5)? {
            println!("{:5} {:28} {}", rel.system, rel.relation, rel.holds);
        }
    }
    let t1 = root_action(&generator("T1", "eq3")?)?;
    println!("T1 on (alpha0, alpha1): {:?}", t1.matrix.map(|r| r.map(|c| c.to_string())));
    Ok(())
}
