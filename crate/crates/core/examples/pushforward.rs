//! The quartic equation as a first-order system, carried by the birational
//! map onto the coupled Hamiltonian system, then onto its companion form.

use p2h2::dynsys::catalog::{chart, system};
use p2h2::dynsys::pushforward;
use p2h2::symfield::{render, v};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pushed = pushforward(&system("eq1")?, &chart("eq2")?)?;
    for (w, r) in pushed.components() {
        println!("d{w}/dt = {}", render(r));
    }
    println!("equals the coupled system: {}", pushed.same_system(&system("eq3")?));

    let ren = [("x1", "q1"), ("y1", "p1"), ("z1", "q2"), ("w1", "p2")].map(|(a, b)| (v(a), v(b)));
    let companion = pushforward(&system("eq3")?, &chart("holo_A")?)?.rename(&ren);
    println!("holo_A gives the companion system: {}", companion.same_system(&system("eq10")?));
    Ok(())
}
