//! Bartek wins the Banach–Mazur game on a meagre set by dodging its
//! nowhere-dense pieces one at a time.
//!
//! `cargo run -p realgame --example banach_mazur -- 8`

use realgame::related::banach_mazur::{bm_play, bm_report, BartekMeagre, MeagrePresentation, RandomIntervals};
use realgame::{CountableEnumeration, SetDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rounds = std::env::args().nth(1).map_or(Ok(8), |a| a.parse())?;
    // The rationals of (0, 1) together with the Cantor set: F_1 = {1/2},
    // F_2 = C, F_3 = {1/3}, F_4 = C, ...
    let set = SetDescription::Union(vec![
        SetDescription::Countable(CountableEnumeration::Farey),
        SetDescription::Cantor,
    ]);
    let bartek = BartekMeagre::new(MeagrePresentation::from_set(&set)?);
    let trace = bm_play(&RandomIntervals::new(1), &bartek, &set, rounds)?;
    for m in &trace.moves {
        println!("{:<7} {}", m.player.to_string(), m.interval);
    }
    print!("\n{}", bm_report(&trace, rounds).to_text());
    Ok(())
}
