//! Rational solutions from the seed by repeated translations, checked
//! against the published table.

use p2h2::ladder::{compare_with_table, ladder, to_tsv, verify_solution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = ladder("eq3", -3, 3)?;
    print!("{}", to_tsv(&rows));
    for ((a2, hit), row) in compare_with_table(&rows).iter().zip(&rows) {
        println!("a2 = {a2}: verified {}, table {:?}", verify_solution(row)?.holds, hit);
    }
    Ok(())
}
