//! Bob plays the n-th rational of an enumeration whenever it is legal, so no
//! enumerated point can be the limit. Prints the exclusion certificate.
//!
//! `cargo run -p realgame --example countable_bob -- 12`

use realgame::certificate::exclusion_report;
use realgame::strategy::{BobEnumeration, SeededRandomStrategy};
use realgame::{play, CountableEnumeration, SetDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rounds = std::env::args().nth(1).map_or(Ok(12), |a| a.parse())?;
    let farey = CountableEnumeration::Farey;
    let set = SetDescription::Countable(farey.clone());
    let trace = play(&SeededRandomStrategy::new(7), &BobEnumeration::new(farey.clone()), rounds, &set)?;
    for n in 1..=trace.rounds {
        println!("round {n:>3}: a = {:<24} b = {}", trace.alice(n).unwrap(), trace.bob(n).unwrap());
    }
    print!("\n{}", exclusion_report(&trace, &farey).to_text());
    Ok(())
}
