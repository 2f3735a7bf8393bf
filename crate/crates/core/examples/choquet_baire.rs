//! Paul's shrinking strategy on [0, 1] against Pierre's dodging strategy on
//! the rationals, side by side.
//!
//! `cargo run -p realgame --example choquet_baire -- 20`

use realgame::related::choquet::baire_demo;
use realgame::CountableEnumeration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rounds = std::env::args().nth(1).map_or(Ok(20), |a| a.parse())?;
    let demo = baire_demo(&[CountableEnumeration::Farey, CountableEnumeration::Dyadic], rounds)?;
    print!("{}", demo.to_text());
    Ok(())
}
