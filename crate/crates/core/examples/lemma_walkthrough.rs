//! Step by step: the infimum of a perfect set is right-approachable, and
//! every right-approachable point has another one arbitrarily close above.
//!
//! `cargo run -p realgame --example lemma_walkthrough`

use realgame::{Rational, SetDescription};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sets = [
        ("Cantor set", SetDescription::Cantor),
        ("[0,1/3] ∪ [2/3,1]", SetDescription::parse_spec(r#"{"type":"intervals","items":[["0","1/3"],["2/3","1"]]}"#)?),
    ];
    for (name, set) in sets {
        let inf = set.inf()?;
        println!("{name}: inf = {inf}, class {:?}", set.classify(&inf));
        let mut a = inf;
        for eps in [Rational::new(1, 3), Rational::new(1, 27), Rational::new(1, 729)] {
            let w = set.lemma2_select(&a, &eps)?;
            println!(
                "  a = {a}, eps = {eps}: z = {}, y = {}, x = {}, gamma = inf((x, z) ∩ S) = {}",
                w.z, w.y, w.x, w.gamma
            );
            a = w.gamma;
        }
        println!();
    }
    Ok(())
}
