//! Local index at an accessible point, from a chart given as expressions.

use p2h2::dynsys::catalog::system;
use p2h2::dynsys::{invert_triangular, pushforward, BirationalMap};
use p2h2::resolve::{alpha_test, local_index, verify_accessible, SingularLocus};
use p2h2::symfield::render;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chart = invert_triangular(&BirationalMap::from_exprs("inf", &["x", "y"], &[("x1", "1/x"), ("y1", "y/x^2")]))?;
    let field = pushforward(&system("pii_raw")?, &chart)?;
    for y1 in ["1", "-1"] {
        let locus = SingularLocus::point(&["x1", "y1"], &["0", y1]);
        println!("{}: accessible {}", locus.describe(), verify_accessible(&field, &locus)?);
        let idx = local_index(&field, &locus)?;
        let ev: Vec<String> = idx.eigenvalues.iter().map(render).collect();
        println!("  index ({})  status: {}", ev.join(", "), idx.status());
        let reduced = alpha_test(&field, &locus, &num_rational::BigRational::from_integer(1.into()))?;
        println!("  alpha-test matrix {:?}", reduced.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    Ok(())
}
