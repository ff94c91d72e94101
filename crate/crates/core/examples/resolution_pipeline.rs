//! Replays a catalogued blow-up sequence and prints the per-step checks.

use p2h2::resolve::{run_pipeline, PIPELINE_IDS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "p2h2_s5".into());
    if !PIPELINE_IDS.contains(&id.as_str()) {
        return Err(format!("pipelines: {}", PIPELINE_IDS.join(", ")).into());
    }
    let r = run_pipeline(&id)?;
    for s in &r.steps {
        let ev = s.index.as_ref().map(|j| j["eigenvalues"].to_string()).unwrap_or_default();
        println!("{:8} {:34} {:5} {ev}", s.step, s.check, s.matches_paper);
    }
    println!("{}: {}", r.pipeline, if r.holds { "all steps match" } else { "mismatch" });
    Ok(())
}
