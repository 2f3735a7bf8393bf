//! Writes a trace file, reads it back and re-checks it with no access to the
//! strategies that produced it.
//!
//! `cargo run -p realgame --example replay_verify`

use realgame::certificate::{legality_report, membership_report};
use realgame::strategy::{AlicePerfect, SeededRandomStrategy};
use realgame::{play, AnyTrace, SetDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let set = SetDescription::Cantor;
    let trace = play(&AlicePerfect::new(set.clone())?, &SeededRandomStrategy::new(4), 6, &set)?;
    let path = std::env::temp_dir().join("realgame-replay.json");
    std::fs::write(&path, trace.to_json())?;
    println!("wrote {}", path.display());

    let AnyTrace::Baker(loaded) = AnyTrace::from_json(&std::fs::read_to_string(&path)?)? else {
        return Err("expected a baker trace".into());
    };
    print!("{}", legality_report(&loaded).to_text());
    print!("{}", membership_report(&loaded, &loaded.set).to_text());

    let mut forged = loaded.clone();
    forged.moves[2].value = "1/2".parse()?;
    print!("\nafter editing a_2:\n{}", legality_report(&forged).to_text());
    Ok(())
}
