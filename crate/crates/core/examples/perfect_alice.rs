//! Alice keeps every move in S+ of a perfect set, so the limit stays in S.
//!
//! `cargo run -p realgame --example perfect_alice -- cantor 10`

use realgame::certificate::membership_report;
use realgame::strategy::{AlicePerfect, MidpointStrategy};
use realgame::{play, SetDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let set = SetDescription::parse_spec(&args.next().unwrap_or_else(|| "cantor".into()))?;
    let rounds = args.next().map_or(Ok(10), |a| a.parse())?;
    let alice = AlicePerfect::new(set.clone())?;
    let trace = play(&alice, &MidpointStrategy, rounds, &set)?;
    for n in 1..=trace.rounds {
        println!("round {n:>3}: a = {:<24} b = {}", trace.alice(n).unwrap(), trace.bob(n).unwrap());
    }
    print!("\n{}", membership_report(&trace, &set).to_text());
    Ok(())
}
